#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "casplit/sim.hpp"

namespace casplit {

enum class CarrierKind { Pcc, Scc };
enum class FadingFamily { Gamma, LogNormal };
enum class PathLossModel { UmaNlos, Fixed };

struct CarrierConfig {
  CarrierKind kind = CarrierKind::Scc;
  double frequency_ghz = 28.0;
  double bandwidth_mhz = 100.0;
  double tx_power_dbm = 35.0;
  double rho = 1.0;
  double sigma2 = 0.27;
  double n_th = 2.0;
  FadingFamily fading = FadingFamily::Gamma;
  PathLossModel path_loss = PathLossModel::UmaNlos;
  double fixed_loss_db = 0.0;  // used by PathLossModel::Fixed
  // Receiver side of the link budget. With link_budget on, the normalized
  // loss is PL - antenna gain + thermal noise floor (dBm) + noise figure.
  bool link_budget = false;
  double noise_figure_db = 0.0;
  double antenna_gain_db = 0.0;
};

struct ChannelState {
  std::vector<double> alpha;
  std::vector<double> h;
  std::vector<double> gamma_db;
  std::vector<int> capacity;
  double distance_p = 0.0;
  double distance_s = 0.0;

  void resize(std::size_t carriers);
};

std::string to_string(FadingFamily f);
std::string to_string(PathLossModel m);
FadingFamily parse_fading(const std::string& s);
PathLossModel parse_path_loss(const std::string& s);

// Unit-mean draw with variance sigma2; sigma2 == 0 gives exactly 1.
double sample_fading(const CarrierConfig& cfg, RngStream& rng);

// PL in dB for the configured model; throws std::domain_error for d < 1 m.
double path_loss_db(double distance_m, double frequency_ghz, PathLossModel model,
                    double fixed_loss_db = 0.0);
// Linear form 10^(PL/10).
double path_loss(double distance_m, double frequency_ghz, PathLossModel model,
                 double fixed_loss_db = 0.0);

double thermal_noise_dbm(double bandwidth_mhz);
// Path loss of cfg at distance, with the receiver link budget folded in when enabled. Linear.
double normalized_loss(const CarrierConfig& cfg, double distance_m);

double sinr_db(const CarrierConfig& cfg, double h, double alpha);

// rho_s is the SCC normalization factor; the PCC level is floor(rho_p / rho_s).
int mac_capacity(const CarrierConfig& cfg, double gamma_db, double rho_s);

class CapacityModel {
 public:
  virtual ~CapacityModel() = default;
  virtual std::size_t carriers() const = 0;
  virtual void sample(Slot t, ChannelState& out) = 0;
};

// UE distance to (primary, secondary) gNB at slot t.
using DistanceFn = std::function<std::pair<double, double>(Slot)>;

// carriers[0] is the PCC. Every carrier draws from its own stream on every
// slot regardless of run mode.
class RadioChannel : public CapacityModel {
 public:
  RadioChannel(std::vector<CarrierConfig> carriers, DistanceFn distance, std::uint64_t seed);

  std::size_t carriers() const override { return cfg_.size(); }
  void sample(Slot t, ChannelState& out) override;

 private:
  std::vector<CarrierConfig> cfg_;
  DistanceFn distance_;
  std::vector<RngStream> rng_;
  double rho_s_;
};

// Deterministic per-slot capacities; the last column is held past the end.
class ScheduledCapacity : public CapacityModel {
 public:
  explicit ScheduledCapacity(std::vector<std::vector<int>> per_carrier);
  static ScheduledCapacity constant(std::vector<int> caps);

  std::size_t carriers() const override { return caps_.size(); }
  void sample(Slot t, ChannelState& out) override;

 private:
  std::vector<std::vector<int>> caps_;
};

}  // namespace casplit
