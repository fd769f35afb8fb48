#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "casplit/baselines.hpp"
#include "casplit/channel.hpp"
#include "casplit/fuzzy_pid.hpp"
#include "casplit/simulation.hpp"

namespace casplit {

enum class TrajectoryKind { Static, OutAndBack };

struct Trajectory {
  TrajectoryKind kind = TrajectoryKind::Static;
  double distance_m = 100.0;  // d0
  double speed_mps = 10.0;
  double turn_s = 10.0;
  double secondary_offset_m = 0.0;  // secondary gNB is co-located by default
};

struct TrajectorySample {
  Slot t = 0;
  double distance_p = 0;
  double distance_s = 0;
};

TrajectorySample ue_distance(const Trajectory& traj, Slot t, double slot_duration);

enum class Policy { FuzzyPid, NoFuzzyPid, Bwa, Ltr, QLearning };

std::string to_string(Policy p);
Policy parse_policy(const std::string& s);
std::string to_string(TrajectoryKind k);
TrajectoryKind parse_trajectory(const std::string& s);
std::string to_string(ArrivalMode m);
ArrivalMode parse_arrival(const std::string& s);
std::string to_string(Variant v);
Variant parse_variant(const std::string& s);
std::string to_string(SecondSegment s);
SecondSegment parse_second_segment(const std::string& s);

struct ControllerConfig {
  Policy policy = Policy::FuzzyPid;
  int horizon = 16;
  double b_max = 0;  // 0 selects 2 N max(floor(rho_p/rho_s), n_scc)
  PidGains k0{};
  FuzzyConfig fuzzy{};  // b_max inside is ignored, see b_max above
  Variant variant = Variant::Windowed;
  SecondSegment second_segment = SecondSegment::Window;
  double u0 = -1.0;
  int q_bins = 16;
  double q_epsilon = 0.1;
  double q_learn_rate = 0.1;
  double q_discount = 0.9;
  LtrConfig ltr{};
};

struct ScenarioConfig {
  std::string name = "static";
  Workload workload{};
  int quantum = 3;  // packets per active carrier per slot
  std::size_t n_scc = 3;
  CarrierConfig pcc{};
  std::vector<CarrierConfig> scc;  // one entry per SCC
  int d_xn = 2;
  Trajectory trajectory{};
  Slot max_slots = 200000;
  std::uint64_t seed = 1;
  double slot_duration = 1e-3;
  ControllerConfig controller{};
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& msg)
      : std::runtime_error(key + ": " + msg), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

CarrierConfig default_pcc();
CarrierConfig default_scc();

// Static user 100 m from the gNB, burst of 10^4 packets.
ScenarioConfig static_scenario(std::size_t n_scc);
// Out-and-back at 10 m/s for 20 s, saturated source, 20000-slot window.
ScenarioConfig mobile_scenario(std::size_t n_scc);
// sigma2 = 0 and fixed 0 dB loss so capacities are constant (2 on the PCC, 1 per SCC).
ScenarioConfig flat_scenario(std::size_t n_scc);

// Throws ConfigError naming the offending key.
void validate(const ScenarioConfig& cfg);

int pcc_ratio(const ScenarioConfig& cfg);
double effective_b_max(const ScenarioConfig& cfg);
std::vector<CarrierConfig> carriers(const ScenarioConfig& cfg);

std::unique_ptr<Splitter> make_splitter(const ScenarioConfig& cfg, std::uint64_t seed);

// Standalone runs use this: per-slot arrivals that always cover every carrier.
ScenarioConfig saturated(const ScenarioConfig& cfg, Slot window);

std::unique_ptr<Simulation> build_run(const ScenarioConfig& cfg, RunMode mode, std::uint64_t seed,
                                      bool record_trace = true);

// INI-style text with sections [workload] [carriers.pcc] [carriers.scc]
// [carriers.sccN] [channel] [controller] [trajectory] [run].
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);
std::string to_ini(const ScenarioConfig& cfg);

}  // namespace casplit
