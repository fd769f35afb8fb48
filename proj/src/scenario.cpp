#include "casplit/scenario.hpp"

#include <cmath>

namespace casplit {

TrajectorySample ue_distance(const Trajectory& traj, Slot t, double slot_duration) {
  TrajectorySample s;
  s.t = t;
  double d = traj.distance_m;
  if (traj.kind == TrajectoryKind::OutAndBack) {
    const double x = static_cast<double>(t) * slot_duration;
    if (x <= traj.turn_s)
      d += traj.speed_mps * x;
    else if (x <= 2 * traj.turn_s)
      d += traj.speed_mps * (2 * traj.turn_s - x);
  }
  s.distance_p = d;
  s.distance_s = d + traj.secondary_offset_m;
  return s;
}

std::string to_string(Policy p) {
  switch (p) {
    case Policy::FuzzyPid: return "fuzzy_pid";
    case Policy::NoFuzzyPid: return "nofuzzy_pid";
    case Policy::Bwa: return "bwa";
    case Policy::Ltr: return "ltr";
    case Policy::QLearning: return "qlearning";
  }
  return "?";
}

Policy parse_policy(const std::string& s) {
  if (s == "fuzzy_pid") return Policy::FuzzyPid;
  if (s == "nofuzzy_pid") return Policy::NoFuzzyPid;
  if (s == "bwa") return Policy::Bwa;
  if (s == "ltr") return Policy::Ltr;
  if (s == "qlearning") return Policy::QLearning;
  throw std::invalid_argument("unknown policy '" + s + "'");
}

std::string to_string(TrajectoryKind k) {
  return k == TrajectoryKind::Static ? "static" : "out_and_back";
}

TrajectoryKind parse_trajectory(const std::string& s) {
  if (s == "static") return TrajectoryKind::Static;
  if (s == "out_and_back") return TrajectoryKind::OutAndBack;
  throw std::invalid_argument("unknown trajectory '" + s + "'");
}

std::string to_string(ArrivalMode m) { return m == ArrivalMode::Burst ? "burst" : "per_slot"; }

ArrivalMode parse_arrival(const std::string& s) {
  if (s == "burst") return ArrivalMode::Burst;
  if (s == "per_slot") return ArrivalMode::PerSlot;
  throw std::invalid_argument("unknown arrival mode '" + s + "'");
}

std::string to_string(Variant v) { return v == Variant::Literal ? "literal" : "windowed"; }

Variant parse_variant(const std::string& s) {
  if (s == "literal") return Variant::Literal;
  if (s == "windowed") return Variant::Windowed;
  throw std::invalid_argument("unknown controller variant '" + s + "'");
}

std::string to_string(SecondSegment s) { return s == SecondSegment::Window ? "window" : "offset"; }

SecondSegment parse_second_segment(const std::string& s) {
  if (s == "window") return SecondSegment::Window;
  if (s == "offset") return SecondSegment::Offset;
  throw std::invalid_argument("unknown second segment anchor '" + s + "'");
}

CarrierConfig default_pcc() {
  CarrierConfig c;
  c.kind = CarrierKind::Pcc;
  c.frequency_ghz = 4.9;
  c.bandwidth_mhz = 100;
  c.tx_power_dbm = 28;
  c.rho = 2;
  c.sigma2 = 0.0004;
  c.n_th = 2;
  c.link_budget = true;
  c.noise_figure_db = 7;
  c.antenna_gain_db = 3;
  return c;
}

CarrierConfig default_scc() {
  CarrierConfig c;
  c.kind = CarrierKind::Scc;
  c.frequency_ghz = 28;
  c.bandwidth_mhz = 100;
  c.tx_power_dbm = 35;
  c.rho = 1;
  c.sigma2 = 0.27;
  c.n_th = 2;
  c.link_budget = true;
  c.noise_figure_db = 10;
  c.antenna_gain_db = 12;
  return c;
}

ScenarioConfig static_scenario(std::size_t n_scc) {
  ScenarioConfig c;
  c.name = "static";
  c.n_scc = n_scc;
  c.pcc = default_pcc();
  c.scc.assign(n_scc, default_scc());
  c.workload = {ArrivalMode::Burst, 10000, 0};
  c.max_slots = 200000;
  return c;
}

ScenarioConfig mobile_scenario(std::size_t n_scc) {
  ScenarioConfig c = static_scenario(n_scc);
  c.name = "mobile";
  c.trajectory.kind = TrajectoryKind::OutAndBack;
  c.workload = {ArrivalMode::PerSlot, 0, static_cast<std::uint64_t>(c.quantum) * (n_scc + 1)};
  c.max_slots = 20000;
  return c;
}

ScenarioConfig flat_scenario(std::size_t n_scc) {
  ScenarioConfig c = static_scenario(n_scc);
  c.name = "flat";
  for (auto* cc : {&c.pcc}) {
    cc->sigma2 = 0;
    cc->path_loss = PathLossModel::Fixed;
    cc->fixed_loss_db = 0;
    cc->link_budget = false;
  }
  for (auto& s : c.scc) {
    s.sigma2 = 0;
    s.path_loss = PathLossModel::Fixed;
    s.fixed_loss_db = 0;
    s.link_budget = false;
  }
  c.workload = {ArrivalMode::PerSlot, 0, static_cast<std::uint64_t>(c.quantum) * (n_scc + 1)};
  c.max_slots = 1600;
  return c;
}

int pcc_ratio(const ScenarioConfig& cfg) {
  const double rho_s = cfg.scc.empty() ? 1.0 : cfg.scc[0].rho;
  return static_cast<int>(std::floor(cfg.pcc.rho / rho_s + 1e-9));
}

double effective_b_max(const ScenarioConfig& cfg) {
  if (cfg.controller.b_max > 0) return cfg.controller.b_max;
  return default_b_max(cfg.controller.horizon, pcc_ratio(cfg), cfg.n_scc);
}

std::vector<CarrierConfig> carriers(const ScenarioConfig& cfg) {
  std::vector<CarrierConfig> v{cfg.pcc};
  v.front().kind = CarrierKind::Pcc;
  for (auto s : cfg.scc) {
    s.kind = CarrierKind::Scc;
    v.push_back(s);
  }
  return v;
}

namespace {
void check_carrier(const CarrierConfig& c, const std::string& sec) {
  if (!(c.frequency_ghz > 0)) throw ConfigError(sec + ".frequency_ghz", "must be positive");
  if (!(c.bandwidth_mhz > 0)) throw ConfigError(sec + ".bandwidth_mhz", "must be positive");
  if (!(c.rho > 0)) throw ConfigError(sec + ".rho", "must be positive");
  if (!(c.sigma2 >= 0)) throw ConfigError(sec + ".sigma2", "must be non-negative");
  if (!(c.n_th > 0)) throw ConfigError(sec + ".n_th", "must be positive");
}
}  // namespace

void validate(const ScenarioConfig& cfg) {
  if (cfg.n_scc < 1) throw ConfigError("channel.n_scc", "must be >= 1");
  if (cfg.scc.size() != cfg.n_scc) throw ConfigError("carriers.scc", "need one SCC entry per carrier");
  check_carrier(cfg.pcc, "carriers.pcc");
  for (std::size_t i = 0; i < cfg.scc.size(); ++i) {
    check_carrier(cfg.scc[i], "carriers.scc" + std::to_string(i + 1));
    if (cfg.pcc.rho < cfg.scc[i].rho) throw ConfigError("carriers.pcc.rho", "must be >= every SCC rho");
  }
  if (cfg.d_xn < 0) throw ConfigError("channel.d_xn", "must be >= 0");
  if (cfg.quantum < 1) throw ConfigError("workload.quantum", "must be >= 1");
  if (cfg.workload.mode == ArrivalMode::Burst && cfg.workload.packets < 1)
    throw ConfigError("workload.packets", "burst workload needs at least one packet");
  if (cfg.max_slots < 1) throw ConfigError("run.max_slots", "must be >= 1");
  if (!(cfg.slot_duration > 0)) throw ConfigError("run.slot_duration_s", "must be positive");
  const auto& t = cfg.trajectory;
  if (!(t.distance_m >= 1)) throw ConfigError("trajectory.distance_m", "must be >= 1 m");
  if (!(t.distance_m + t.secondary_offset_m >= 1))
    throw ConfigError("channel.secondary_offset_m", "secondary distance must stay >= 1 m");
  if (t.kind == TrajectoryKind::OutAndBack) {
    if (!(t.speed_mps >= 0)) throw ConfigError("trajectory.speed_mps", "must be >= 0");
    if (!(t.turn_s > 0)) throw ConfigError("trajectory.turn_s", "must be positive");
  }
  const auto& k = cfg.controller;
  if (k.horizon < 2) throw ConfigError("controller.horizon", "must be >= 2");
  if (k.b_max < 0) throw ConfigError("controller.b_max", "must be >= 0 (0 = default)");
  if (k.fuzzy.k_min > k.fuzzy.k_max) throw ConfigError("controller.k_min", "exceeds k_max");
  if (!(k.fuzzy.membership_width > 0)) throw ConfigError("controller.membership_width", "must be positive");
  if (k.q_bins < 1) throw ConfigError("controller.q_bins", "must be >= 1");
  if (k.q_epsilon < 0 || k.q_epsilon > 1) throw ConfigError("controller.q_epsilon", "must be in [0,1]");
  if (k.q_discount < 0 || k.q_discount >= 1) throw ConfigError("controller.q_discount", "must be in [0,1)");
}

std::unique_ptr<Splitter> make_splitter(const ScenarioConfig& cfg, std::uint64_t seed) {
  const auto& k = cfg.controller;
  switch (k.policy) {
    case Policy::FuzzyPid:
    case Policy::NoFuzzyPid: {
      FuzzyPidConfig f;
      f.horizon = k.horizon;
      f.n_scc = cfg.n_scc;
      f.k0 = k.k0;
      f.fuzzy = k.fuzzy;
      f.fuzzy.b_max = effective_b_max(cfg);
      f.adapt = k.policy == Policy::FuzzyPid;
      f.variant = k.variant;
      f.second_segment = k.second_segment;
      f.u0 = k.u0;
      return std::make_unique<FuzzyPidController>(f);
    }
    case Policy::Bwa: {
      std::vector<double> bw;
      for (const auto& s : cfg.scc) bw.push_back(s.bandwidth_mhz);
      return std::make_unique<BwaSplitter>(cfg.pcc.bandwidth_mhz, bw);
    }
    case Policy::Ltr:
      return std::make_unique<LtrSplitter>(cfg.n_scc, k.ltr);
    case Policy::QLearning: {
      QConfig q;
      q.bins = k.q_bins;
      q.b_max = effective_b_max(cfg);
      q.epsilon = k.q_epsilon;
      q.learn_rate = k.q_learn_rate;
      q.discount = k.q_discount;
      q.seed = seed;
      return std::make_unique<QLearningSplitter>(q);
    }
  }
  throw std::logic_error("unhandled policy");
}

ScenarioConfig saturated(const ScenarioConfig& cfg, Slot window) {
  ScenarioConfig c = cfg;
  c.workload = {ArrivalMode::PerSlot, 0, static_cast<std::uint64_t>(c.quantum) * (c.n_scc + 1)};
  c.max_slots = window;
  return c;
}

std::unique_ptr<Simulation> build_run(const ScenarioConfig& cfg, RunMode mode, std::uint64_t seed,
                                      bool record_trace) {
  validate(cfg);
  SimSetup s;
  s.n_scc = cfg.n_scc;
  s.d_xn = cfg.d_xn;
  s.quanta = {cfg.quantum, cfg.quantum};
  s.workload = cfg.workload;
  s.max_slots = cfg.max_slots;
  s.mode = mode;
  s.record_trace = record_trace;
  const Trajectory traj = cfg.trajectory;
  const double dt = cfg.slot_duration;
  auto dist = [traj, dt](Slot t) {
    auto d = ue_distance(traj, t, dt);
    return std::make_pair(d.distance_p, d.distance_s);
  };
  auto chan = std::make_unique<RadioChannel>(carriers(cfg), dist, seed);
  std::unique_ptr<Splitter> sp;
  switch (mode) {
    case RunMode::CA: sp = make_splitter(cfg, seed); break;
    case RunMode::PccOnly: sp = std::make_unique<FixedSplitter>(SplitAction{1, 0}); break;
    case RunMode::SccOnly: sp = std::make_unique<FixedSplitter>(SplitAction{0, 1}); break;
  }
  return std::make_unique<Simulation>(s, std::move(chan), std::move(sp));
}

}  // namespace casplit
