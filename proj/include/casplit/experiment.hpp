#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "casplit/metrics.hpp"
#include "casplit/scenario.hpp"

namespace casplit {

struct TimedRun {
  RunResult result;
  double wall_ms = 0;
};

struct SeedRuns {
  TimedRun ca, pcc, scc;
  EtaReport eta;
};

TimedRun timed_run(const ScenarioConfig& cfg, RunMode mode, std::uint64_t seed, bool record_trace);

// The common window: T of the CA run for burst workloads, max_slots otherwise.
Slot eta_window(const ScenarioConfig& cfg, const RunSummary& ca);

// CA run as configured, then saturated PCC-only and SCC-only runs over the CA window.
SeedRuns eta_for_seed(const ScenarioConfig& cfg, std::uint64_t seed, bool record_trace = false);

// Peak resident set size of this process in kB (0 where unavailable).
long peak_rss_kb();

std::string trace_header(std::size_t n_scc);
void write_trace(std::ostream& os, const std::vector<SlotRecord>& trace, std::size_t n_scc);

std::string summary_header();
void write_summary_row(std::ostream& os, std::uint64_t seed, const RunSummary& s);
void write_eta_row(std::ostream& os, const std::string& policy, const EtaReport& e);

std::string fmt_num(double v);

// Convergence of the split ratio on the flat channel, measured after Stage 1.
struct ConvergenceRun {
  std::size_t n_scc = 0;
  Policy policy = Policy::FuzzyPid;
  int horizon = 16;
  Slot from = 0;          // first slot after Stage 1
  Slot deadline = 0;      // Stage 1 end + 2N
  std::size_t window = 0; // ratio window length
  std::vector<double> ratio;
  Convergence conv;
  double capacity_ratio = 0;
  std::vector<SlotRecord> trace;
};

ConvergenceRun convergence_run(std::size_t n_scc, Policy policy, double tol = 0.10);

// Stationary k sweep on the flat channel: throughput against mean |B|.
struct SweepPoint {
  int k = 0;
  double pcc_share = 0;
  double mean_throughput = 0;
  double mean_abs_b = 0;
};

std::vector<SweepPoint> k_sweep(std::size_t n_scc, const std::vector<int>& ks, Slot slots = 2000);

struct EtaRow {
  std::string scenario;
  Policy policy = Policy::FuzzyPid;
  std::size_t n_scc = 0;
  std::uint64_t seed = 0;
  EtaReport eta;
  double ca_mean_throughput = 0;
};

std::vector<EtaRow> eta_table(const ScenarioConfig& base, const std::vector<Policy>& policies,
                              const std::vector<std::uint64_t>& seeds);

const std::vector<Policy>& all_policies();
std::vector<std::string> suite_names();

// Writes the tidy tables of one figure preset into out_dir and returns the files written.
// Throws std::invalid_argument for an unknown preset.
std::vector<std::string> run_suite(const std::string& name, const std::string& out_dir,
                                   std::size_t seeds = 10);

}  // namespace casplit
