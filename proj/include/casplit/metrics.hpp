#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "casplit/simulation.hpp"

namespace casplit {

struct EtaReport {
  bool defined = false;
  double eta = 0.0;
  std::uint64_t ca_sum = 0;
  std::uint64_t pcc_sum = 0;
  std::uint64_t scc_sum = 0;
  Slot window = 0;
  std::uint64_t seed = 0;
  std::string scenario;
};

// Sum of the first `window` per-slot deliveries.
std::uint64_t window_sum(const std::vector<std::uint64_t>& per_slot, Slot window);

EtaReport utilization_ratio(std::uint64_t ca, std::uint64_t pcc_only, std::uint64_t scc_only);
// Sums all three runs over the common window.
EtaReport utilization_ratio(const RunSummary& ca, const RunSummary& pcc_only,
                            const RunSummary& scc_only, Slot window);

// Empty when either series is constant or the sizes differ / are below 3.
std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y);
std::optional<double> buffer_throughput_correlation(const std::vector<double>& mean_abs_b,
                                                    const std::vector<double>& mean_throughput);

// Trailing-window ratio n_scc * sum(A_s) / sum(A_P) at every slot from `from`
// on; slots whose window holds no PCC action give NaN.
std::vector<double> windowed_ratio(const std::vector<SlotRecord>& trace, std::size_t window,
                                   std::size_t n_scc, Slot from = 0);

struct Convergence {
  double steady = 0.0;
  Slot settle_slot = 0;  // first slot from which the ratio stays inside the band
  bool settled = false;
  std::size_t violations_after_deadline = 0;
};

// Steady value is the mean ratio over the last half of the series (from `from`).
Convergence convergence(const std::vector<double>& ratio, Slot from, double tol, Slot deadline);

}  // namespace casplit
