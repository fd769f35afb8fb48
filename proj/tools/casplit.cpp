// casplit: batch runner for the carrier-aggregation splitting simulator.
//
//   casplit run --config scenario.ini --seeds 1,2,3 --mode ca,pcc,scc --out results/
//   casplit suite --name fig6 --out results/
//   casplit oracle --instance tiny.ini
//
// Exit codes: 0 ok, 1 config or usage error, 2 runtime failure.
// CASPLIT_LOG=error|warn|info|debug sets stderr verbosity (default warn).

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "casplit/experiment.hpp"
#include "casplit/oracle.hpp"
#include "casplit/scenario.hpp"

namespace fs = std::filesystem;
using namespace casplit;

namespace {

constexpr const char* kVersion = "0.3.0";

enum class Level { Error = 0, Warn = 1, Info = 2, Debug = 3 };

Level log_level() {
  static const Level lvl = [] {
    const char* v = std::getenv("CASPLIT_LOG");
    if (!v) return Level::Warn;
    const std::string s(v);
    if (s == "error") return Level::Error;
    if (s == "info") return Level::Info;
    if (s == "debug") return Level::Debug;
    return Level::Warn;
  }();
  return lvl;
}

void log(Level l, const std::string& msg) {
  static const char* names[] = {"error", "warn", "info", "debug"};
  if (l <= log_level()) std::cerr << "[" << names[static_cast<int>(l)] << "] " << msg << "\n";
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<std::uint64_t> parse_seeds(const std::string& s) {
  std::vector<std::uint64_t> v;
  for (const auto& x : split(s, ',')) {
    std::size_t pos = 0;
    unsigned long long n = 0;
    try {
      n = std::stoull(x, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != x.size() || x.empty() || x[0] == '-') throw UsageError("bad seed '" + x + "'");
    v.push_back(n);
  }
  if (v.empty()) throw UsageError("at least one seed is required");
  return v;
}

std::ofstream open_file(const fs::path& p) {
  std::ofstream os(p);
  if (!os) throw std::runtime_error("cannot write " + p.string());
  return os;
}

int cmd_run(const std::string& config, const std::string& seeds_arg, const std::string& modes_arg,
            const std::string& out) {
  const ScenarioConfig cfg = load_config(config);
  const auto seeds = parse_seeds(seeds_arg);
  std::vector<RunMode> modes;
  for (const auto& m : split(modes_arg, ',')) {
    try {
      modes.push_back(parse_run_mode(m));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (modes.empty()) throw UsageError("no mode given");
  auto has = [&](RunMode m) { return std::find(modes.begin(), modes.end(), m) != modes.end(); };

  const fs::path dir(out);
  fs::create_directories(dir);
  auto summary = open_file(dir / "summary.csv");
  auto timing = open_file(dir / "timing.csv");
  summary << summary_header() << "\n";
  timing << "seed,mode,wall_ms,peak_rss_kb\n";
  const std::string policy = to_string(cfg.controller.policy);

  for (auto seed : seeds) {
    log(Level::Info, "seed " + std::to_string(seed));
    std::optional<TimedRun> ca;
    Slot window = cfg.max_slots;
    if (has(RunMode::CA)) {
      ca = timed_run(cfg, RunMode::CA, seed, true);
      window = eta_window(cfg, ca->result.summary);
    }
    const ScenarioConfig sat = saturated(cfg, window);
    std::optional<TimedRun> pcc, scc;
    if (has(RunMode::PccOnly)) pcc = timed_run(sat, RunMode::PccOnly, seed, true);
    if (has(RunMode::SccOnly)) scc = timed_run(sat, RunMode::SccOnly, seed, true);

    for (auto* r : {&ca, &pcc, &scc}) {
      if (!*r) continue;
      const auto& s = (*r)->result.summary;
      const fs::path tp = dir / ("trace_seed" + std::to_string(seed) + "_" + to_string(s.mode) + ".csv");
      auto os = open_file(tp);
      write_trace(os, (*r)->result.trace, cfg.n_scc);
      write_summary_row(summary, seed, s);
      timing << seed << ',' << to_string(s.mode) << ',' << fmt_num((*r)->wall_ms) << ',' << peak_rss_kb()
             << '\n';
      log(Level::Debug, "wrote " + tp.string());
    }
    if (ca && pcc && scc) {
      auto e = utilization_ratio(ca->result.summary, pcc->result.summary, scc->result.summary, window);
      e.seed = seed;
      e.scenario = cfg.name;
      write_eta_row(summary, policy, e);
      if (!e.defined) log(Level::Warn, "eta undefined for seed " + std::to_string(seed) + " (total outage)");
      else log(Level::Info, "eta(seed " + std::to_string(seed) + ") = " + fmt_num(e.eta));
    }
  }

  nlohmann::json meta;
  meta["artifact"] = "casplit";
  meta["version"] = kVersion;
  meta["config_file"] = config;
  meta["config"] = to_ini(cfg);
  meta["seeds"] = seeds;
  std::vector<std::string> ms;
  for (auto m : modes) ms.push_back(to_string(m));
  meta["modes"] = ms;
  meta["eta_window"] = cfg.workload.mode == ArrivalMode::Burst
                           ? "slots until the CA run delivers its burst; standalone runs saturated"
                           : "max_slots; all runs saturated";
  meta["trace_columns"] = trace_header(cfg.n_scc);
  auto mf = open_file(dir / "metadata.json");
  mf << meta.dump(2) << "\n";
  return 0;
}

int cmd_suite(const std::string& name, const std::string& out, std::size_t seeds) {
  const auto names = suite_names();
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw UsageError("unknown suite '" + name + "' (expected fig4|fig5|fig6|fig7)");
  for (const auto& f : run_suite(name, out, seeds)) {
    log(Level::Info, "wrote " + f);
    std::cout << f << "\n";
  }
  return 0;
}

std::string actions_str(const std::vector<SplitAction>& a) {
  std::string s;
  for (const auto& x : a) s += std::to_string(x.a_p) + std::to_string(x.a_s) + " ";
  if (!s.empty()) s.pop_back();
  return s;
}

int cmd_oracle(const std::string& path) {
  const OracleFile f = load_oracle_file(path);
  const auto res = brute_force_min_T(f.instance);
  if (!res.feasible) {
    std::cout << "T* = none (no action sequence finishes within " << f.instance.max_slots << " slots)\n";
  } else {
    const auto rep = replay(f.instance, res.witness);
    std::cout << "T* = " << res.t_star << "\n"
              << "witness (A_P A_s per slot) = " << actions_str(res.witness) << "\n"
              << "replay T = " << rep.summary.slots << (rep.summary.slots == res.t_star ? " (match)" : " (MISMATCH)")
              << "\n"
              << "states expanded = " << res.states << "\n";
    if (rep.summary.slots != res.t_star) return 2;
  }
  if (f.has_identity) {
    std::vector<IdentityReport> reps;
    std::cout << "pcc:scc regime L throughput dH objective identity\n";
    for (const auto& st : f.strategies) {
      auto r = verify_nstep_identity(f.identity, st);
      std::cout << st.pcc << ":" << st.scc << " " << to_string(r.regime) << " " << r.packets << " " << r.throughput
                << " " << r.delta_h << " " << r.objective << " " << (r.identity_holds ? "holds" : "fails");
      if (!r.violation.empty()) std::cout << " (assumption: " << r.violation << ")";
      std::cout << "\n";
      reps.push_back(r);
    }
    std::cout << "ranking " << (ranking_consistent(reps) ? "consistent" : "inconsistent") << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Carrier-aggregation PDCP splitting simulator"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string config, seeds = "1", modes = "ca,pcc,scc", out = "results", suite, instance;
  std::size_t suite_seeds = 10;

  auto* run = app.add_subcommand("run", "Run one scenario for several seeds and modes");
  run->add_option("--config", config, "Scenario config file")->required();
  run->add_option("--seeds", seeds, "Comma-separated seeds");
  run->add_option("--mode", modes, "Comma-separated modes: ca, pcc, scc");
  run->add_option("--out", out, "Output directory");

  auto* su = app.add_subcommand("suite", "Run a figure preset");
  su->add_option("--name", suite, "fig4 | fig5 | fig6 | fig7")->required();
  su->add_option("--out", out, "Output directory");
  su->add_option("--seeds", suite_seeds, "Number of seeds for eta presets")->check(CLI::PositiveNumber);

  auto* orc = app.add_subcommand("oracle", "Brute-force optimum of a tiny instance");
  orc->add_option("--instance", instance, "Instance file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*run) return cmd_run(config, seeds, modes, out);
    if (*su) return cmd_suite(suite, out, suite_seeds);
    if (*orc) return cmd_oracle(instance);
  } catch (const ConfigError& e) {
    log(Level::Error, std::string("config error: ") + e.what());
    return 1;
  } catch (const UsageError& e) {
    log(Level::Error, e.what());
    return 1;
  } catch (const std::exception& e) {
    log(Level::Error, std::string("runtime failure: ") + e.what());
    return 2;
  }
  return 1;
}
