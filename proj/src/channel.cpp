#include "casplit/channel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace casplit {

void ChannelState::resize(std::size_t carriers) {
  alpha.assign(carriers, 1.0);
  h.assign(carriers, 1.0);
  gamma_db.assign(carriers, 0.0);
  capacity.assign(carriers, 0);
}

std::string to_string(FadingFamily f) {
  return f == FadingFamily::Gamma ? "gamma" : "lognormal";
}

std::string to_string(PathLossModel m) {
  return m == PathLossModel::UmaNlos ? "uma_nlos" : "fixed";
}

FadingFamily parse_fading(const std::string& s) {
  if (s == "gamma") return FadingFamily::Gamma;
  if (s == "lognormal") return FadingFamily::LogNormal;
  throw std::invalid_argument("unknown fading family '" + s + "'");
}

PathLossModel parse_path_loss(const std::string& s) {
  if (s == "uma_nlos") return PathLossModel::UmaNlos;
  if (s == "fixed") return PathLossModel::Fixed;
  throw std::invalid_argument("unknown path loss model '" + s + "'");
}

double sample_fading(const CarrierConfig& cfg, RngStream& rng) {
  const double v = cfg.sigma2;
  if (v <= 0.0) return 1.0;
  double a = 0.0;
  if (cfg.fading == FadingFamily::Gamma) {
    a = rng.gamma(1.0 / v, v);
  } else {
    const double s2 = std::log1p(v);
    a = std::exp(rng.normal(-0.5 * s2, std::sqrt(s2)));
  }
  // gamma draws with tiny shape can underflow to 0; alpha must stay positive
  return a > 0.0 ? a : std::numeric_limits<double>::min();
}

double path_loss_db(double distance_m, double frequency_ghz, PathLossModel model,
                    double fixed_loss_db) {
  if (!(distance_m >= 1.0)) throw std::domain_error("distance below 1 m");
  if (model == PathLossModel::Fixed) return fixed_loss_db;
  return 32.4 + 30.0 * std::log10(distance_m) + 20.0 * std::log10(frequency_ghz);
}

double path_loss(double distance_m, double frequency_ghz, PathLossModel model,
                 double fixed_loss_db) {
  return std::pow(10.0, path_loss_db(distance_m, frequency_ghz, model, fixed_loss_db) / 10.0);
}

double thermal_noise_dbm(double bandwidth_mhz) {
  return -174.0 + 10.0 * std::log10(bandwidth_mhz * 1e6);
}

double normalized_loss(const CarrierConfig& cfg, double distance_m) {
  double db = path_loss_db(distance_m, cfg.frequency_ghz, cfg.path_loss, cfg.fixed_loss_db);
  if (cfg.link_budget)
    db += thermal_noise_dbm(cfg.bandwidth_mhz) + cfg.noise_figure_db - cfg.antenna_gain_db;
  return std::pow(10.0, db / 10.0);
}

double sinr_db(const CarrierConfig& cfg, double h, double alpha) {
  return cfg.tx_power_dbm - 10.0 * std::log10(h * alpha);
}

int mac_capacity(const CarrierConfig& cfg, double gamma_db, double rho_s) {
  const double lin = std::pow(10.0, gamma_db / 10.0);
  const bool ok = rho_s * std::log2(1.0 + lin) >= cfg.n_th;
  if (!ok) return 0;
  if (cfg.kind == CarrierKind::Scc) return 1;
  return static_cast<int>(std::floor(cfg.rho / rho_s + 1e-9));
}

RadioChannel::RadioChannel(std::vector<CarrierConfig> carriers, DistanceFn distance,
                           std::uint64_t seed)
    : cfg_(std::move(carriers)), distance_(std::move(distance)) {
  if (cfg_.empty()) throw std::invalid_argument("no carriers");
  for (std::size_t i = 0; i < cfg_.size(); ++i) rng_.emplace_back(seed, i);
  rho_s_ = cfg_.size() > 1 ? cfg_[1].rho : 1.0;
}

void RadioChannel::sample(Slot t, ChannelState& out) {
  out.resize(cfg_.size());
  auto [dp, ds] = distance_(t);
  out.distance_p = dp;
  out.distance_s = ds;
  for (std::size_t i = 0; i < cfg_.size(); ++i) {
    const auto& c = cfg_[i];
    const double d = c.kind == CarrierKind::Pcc ? dp : ds;
    out.alpha[i] = sample_fading(c, rng_[i]);
    out.h[i] = normalized_loss(c, d);
    out.gamma_db[i] = sinr_db(c, out.h[i], out.alpha[i]);
    out.capacity[i] = mac_capacity(c, out.gamma_db[i], rho_s_);
  }
}

ScheduledCapacity::ScheduledCapacity(std::vector<std::vector<int>> per_carrier)
    : caps_(std::move(per_carrier)) {
  for (const auto& c : caps_)
    if (c.empty()) throw std::invalid_argument("empty capacity schedule");
}

ScheduledCapacity ScheduledCapacity::constant(std::vector<int> caps) {
  std::vector<std::vector<int>> v;
  for (int c : caps) v.push_back({c});
  return ScheduledCapacity(std::move(v));
}

void ScheduledCapacity::sample(Slot t, ChannelState& out) {
  out.resize(caps_.size());
  for (std::size_t i = 0; i < caps_.size(); ++i) {
    const auto& c = caps_[i];
    out.capacity[i] = c[t < c.size() ? t : c.size() - 1];
  }
}

}  // namespace casplit
