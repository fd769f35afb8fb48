#include "casplit/experiment.hpp"

#include <sys/resource.h>

#include <charconv>
#include <cmath>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace casplit {

std::string fmt_num(double v) {
  if (!std::isfinite(v)) return "nan";
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

TimedRun timed_run(const ScenarioConfig& cfg, RunMode mode, std::uint64_t seed, bool record_trace) {
  const auto t0 = std::chrono::steady_clock::now();
  auto sim = build_run(cfg, mode, seed, record_trace);
  TimedRun r;
  r.result = sim->run();
  r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

Slot eta_window(const ScenarioConfig& cfg, const RunSummary& ca) {
  return cfg.workload.mode == ArrivalMode::Burst ? ca.slots : cfg.max_slots;
}

SeedRuns eta_for_seed(const ScenarioConfig& cfg, std::uint64_t seed, bool record_trace) {
  SeedRuns r;
  r.ca = timed_run(cfg, RunMode::CA, seed, record_trace);
  const Slot w = eta_window(cfg, r.ca.result.summary);
  const ScenarioConfig sat = saturated(cfg, w);
  r.pcc = timed_run(sat, RunMode::PccOnly, seed, record_trace);
  r.scc = timed_run(sat, RunMode::SccOnly, seed, record_trace);
  r.eta = utilization_ratio(r.ca.result.summary, r.pcc.result.summary, r.scc.result.summary, w);
  r.eta.seed = seed;
  r.eta.scenario = cfg.name;
  return r;
}

long peak_rss_kb() {
  rusage ru{};
  if (getrusage(RUSAGE_SELF, &ru) != 0) return 0;
  return ru.ru_maxrss;
}

std::string trace_header(std::size_t n_scc) {
  std::string h = "t,B,A_P,A_s,rlc_pcc";
  for (std::size_t s = 1; s <= n_scc; ++s) h += ",rlc_scc" + std::to_string(s);
  h += ",cap_pcc";
  for (std::size_t s = 1; s <= n_scc; ++s) h += ",cap_scc" + std::to_string(s);
  h += ",delivered,Kp,Ki,Kd,G,k,stage,gain_update";
  return h;
}

void write_trace(std::ostream& os, const std::vector<SlotRecord>& trace, std::size_t n_scc) {
  os << trace_header(n_scc) << '\n';
  for (const auto& r : trace) {
    os << r.t << ',' << r.b << ',' << r.action.a_p << ',' << r.action.a_s;
    for (std::size_t c = 0; c <= n_scc; ++c) os << ',' << (c < r.rlc.size() ? r.rlc[c] : 0u);
    for (std::size_t c = 0; c <= n_scc; ++c) os << ',' << (c < r.capacity.size() ? r.capacity[c] : 0);
    os << ',' << r.delivered << ',' << fmt_num(r.probe.kp) << ',' << fmt_num(r.probe.ki) << ','
       << fmt_num(r.probe.kd) << ',' << fmt_num(r.probe.g) << ',' << r.probe.k << ','
       << static_cast<char>(r.probe.stage) << ',' << (r.probe.gains_updated ? 1 : 0) << '\n';
  }
}

std::string summary_header() {
  return "row,seed,mode,policy,slots,delivered,completed,mean_throughput,mean_abs_b,eta,ca_sum,pcc_sum,"
         "scc_sum,window";
}

void write_summary_row(std::ostream& os, std::uint64_t seed, const RunSummary& s) {
  os << "run," << seed << ',' << to_string(s.mode) << ',' << s.policy << ',' << s.slots << ','
     << s.total_delivered << ',' << (s.completed ? 1 : 0) << ',' << fmt_num(s.mean_throughput) << ','
     << fmt_num(s.mean_abs_b) << ",,,,,\n";
}

void write_eta_row(std::ostream& os, const std::string& policy, const EtaReport& e) {
  os << "eta," << e.seed << ",ca," << policy << ",,,,,," << (e.defined ? fmt_num(e.eta) : "undefined")
     << ',' << e.ca_sum << ',' << e.pcc_sum << ',' << e.scc_sum << ',' << e.window << '\n';
}

ConvergenceRun convergence_run(std::size_t n_scc, Policy policy, double tol) {
  ConvergenceRun r;
  ScenarioConfig cfg = flat_scenario(n_scc);
  cfg.controller.policy = policy;
  r.n_scc = n_scc;
  r.policy = policy;
  r.horizon = cfg.controller.horizon;
  const auto n = static_cast<Slot>(r.horizon);
  r.from = n + 1;
  r.deadline = n + 2 * n;
  r.window = 2 * static_cast<std::size_t>(n);
  auto sim = build_run(cfg, RunMode::CA, cfg.seed, true);
  auto res = sim->run();
  r.ratio = windowed_ratio(res.trace, r.window, n_scc, r.from);
  r.conv = convergence(r.ratio, r.from, tol, r.deadline);
  r.capacity_ratio = static_cast<double>(n_scc) / pcc_ratio(cfg);
  r.trace = std::move(res.trace);
  return r;
}

std::vector<SweepPoint> k_sweep(std::size_t n_scc, const std::vector<int>& ks, Slot slots) {
  std::vector<SweepPoint> out;
  ScenarioConfig cfg = flat_scenario(n_scc);
  cfg.max_slots = slots;
  validate(cfg);
  for (int k : ks) {
    SimSetup s;
    s.n_scc = n_scc;
    s.d_xn = cfg.d_xn;
    // Equal load per slot whichever side is active, enough to cover every carrier.
    const int cp = pcc_ratio(cfg);
    const int n = static_cast<int>(n_scc);
    const int qs = std::max(2, (cp + n + n - 1) / n);
    s.quanta = {n * qs, qs};
    s.workload = {ArrivalMode::PerSlot, 0, static_cast<std::uint64_t>(n * qs)};
    s.max_slots = slots;
    s.record_trace = true;
    std::vector<int> caps(n_scc + 1, 1);
    caps[0] = cp;
    Simulation sim(s, std::make_unique<ScheduledCapacity>(ScheduledCapacity::constant(caps)),
                   std::make_unique<StationaryK>(cfg.controller.horizon, k));
    auto res = sim.run();
    SweepPoint p;
    p.k = k;
    long ap = 0;
    for (const auto& rec : res.trace) ap += rec.action.a_p;
    p.pcc_share = static_cast<double>(ap) / static_cast<double>(res.trace.size());
    p.mean_throughput = res.summary.mean_throughput;
    p.mean_abs_b = res.summary.mean_abs_b;
    out.push_back(p);
  }
  return out;
}

const std::vector<Policy>& all_policies() {
  static const std::vector<Policy> p{Policy::FuzzyPid, Policy::NoFuzzyPid, Policy::Bwa, Policy::Ltr,
                                     Policy::QLearning};
  return p;
}

std::vector<EtaRow> eta_table(const ScenarioConfig& base, const std::vector<Policy>& policies,
                              const std::vector<std::uint64_t>& seeds) {
  std::vector<EtaRow> rows;
  for (Policy p : policies) {
    ScenarioConfig cfg = base;
    cfg.controller.policy = p;
    for (auto seed : seeds) {
      auto r = eta_for_seed(cfg, seed, false);
      EtaRow row;
      row.scenario = cfg.name;
      row.policy = p;
      row.n_scc = cfg.n_scc;
      row.seed = seed;
      row.eta = r.eta;
      row.ca_mean_throughput = r.ca.result.summary.mean_throughput;
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<std::string> suite_names() { return {"fig4", "fig5", "fig6", "fig7"}; }

namespace {

std::vector<std::uint64_t> seed_list(std::size_t n) {
  std::vector<std::uint64_t> s;
  for (std::size_t i = 1; i <= n; ++i) s.push_back(i);
  return s;
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream os(p);
  if (!os) throw std::runtime_error("cannot write " + p.string());
  return os;
}

void write_eta_rows(std::ostream& os, const std::vector<EtaRow>& rows) {
  os << "scenario,policy,n_scc,seed,eta,ca_sum,pcc_sum,scc_sum,window,ca_mean_throughput\n";
  for (const auto& r : rows)
    os << r.scenario << ',' << to_string(r.policy) << ',' << r.n_scc << ',' << r.seed << ','
       << (r.eta.defined ? fmt_num(r.eta.eta) : "undefined") << ',' << r.eta.ca_sum << ','
       << r.eta.pcc_sum << ',' << r.eta.scc_sum << ',' << r.eta.window << ','
       << fmt_num(r.ca_mean_throughput) << '\n';
}

}  // namespace

std::vector<std::string> run_suite(const std::string& name, const std::string& out_dir, std::size_t seeds) {
  namespace fs = std::filesystem;
  const fs::path dir(out_dir);
  fs::create_directories(dir);
  std::vector<std::string> files;

  if (name == "fig4") {
    const fs::path p = dir / "fig4_convergence.csv";
    auto os = open_out(p);
    os << "n_scc,policy,t,ratio,steady,B\n";
    for (std::size_t n : {2u, 3u})
      for (Policy pol : {Policy::FuzzyPid, Policy::NoFuzzyPid}) {
        auto r = convergence_run(n, pol);
        for (std::size_t i = 0; i < r.ratio.size(); ++i) {
          const Slot t = r.from + i;
          os << n << ',' << to_string(pol) << ',' << t << ',' << fmt_num(r.ratio[i]) << ','
             << fmt_num(r.conv.steady) << ',' << r.trace[t].b << '\n';
        }
      }
    files.push_back(p.string());
  } else if (name == "fig5") {
    const fs::path p = dir / "fig5_k_sweep.csv";
    auto os = open_out(p);
    os << "n_scc,k,pcc_share,mean_throughput,mean_abs_b\n";
    for (std::size_t n : {2u, 3u}) {
      auto pts = k_sweep(n, {1, 2, 3, 4, 5, 6, 7, 8});
      for (const auto& q : pts)
        os << n << ',' << q.k << ',' << fmt_num(q.pcc_share) << ',' << fmt_num(q.mean_throughput) << ','
           << fmt_num(q.mean_abs_b) << '\n';
    }
    files.push_back(p.string());
  } else if (name == "fig6") {
    const fs::path p = dir / "fig6_static_eta.csv";
    auto os = open_out(p);
    std::vector<EtaRow> all;
    for (std::size_t n : {1u, 2u, 3u}) {
      auto rows = eta_table(static_scenario(n), all_policies(), seed_list(seeds));
      all.insert(all.end(), rows.begin(), rows.end());
    }
    write_eta_rows(os, all);
    files.push_back(p.string());
  } else if (name == "fig7") {
    const fs::path pe = dir / "fig7_mobile_eta.csv";
    const fs::path pt = dir / "fig7_mobile_throughput.csv";
    auto oe = open_out(pe);
    auto ot = open_out(pt);
    const ScenarioConfig base = mobile_scenario(3);
    std::vector<EtaRow> rows;
    const Slot bin = 500;
    ot << "policy,t_start,mean_throughput\n";
    for (Policy pol : all_policies()) {
      ScenarioConfig cfg = base;
      cfg.controller.policy = pol;
      std::vector<double> acc(static_cast<std::size_t>((cfg.max_slots + bin - 1) / bin), 0.0);
      for (auto seed : seed_list(seeds)) {
        auto r = eta_for_seed(cfg, seed, false);
        EtaRow row{cfg.name, pol, cfg.n_scc, seed, r.eta, r.ca.result.summary.mean_throughput};
        rows.push_back(row);
        const auto& ps = r.ca.result.summary.per_slot;
        for (std::size_t t = 0; t < ps.size(); ++t) acc[t / bin] += static_cast<double>(ps[t]);
      }
      for (std::size_t b = 0; b < acc.size(); ++b)
        ot << to_string(pol) << ',' << b * bin << ','
           << fmt_num(acc[b] / (static_cast<double>(bin) * static_cast<double>(seeds))) << '\n';
    }
    write_eta_rows(oe, rows);
    files.push_back(pe.string());
    files.push_back(pt.string());
  } else {
    throw std::invalid_argument("unknown suite '" + name + "' (expected fig4|fig5|fig6|fig7)");
  }
  return files;
}

}  // namespace casplit
