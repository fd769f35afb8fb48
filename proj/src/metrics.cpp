#include "casplit/metrics.hpp"

#include <cmath>
#include <limits>

namespace casplit {

std::uint64_t window_sum(const std::vector<std::uint64_t>& per_slot, Slot window) {
  std::uint64_t s = 0;
  const std::size_t n = std::min<std::size_t>(per_slot.size(), window);
  for (std::size_t i = 0; i < n; ++i) s += per_slot[i];
  return s;
}

EtaReport utilization_ratio(std::uint64_t ca, std::uint64_t pcc_only, std::uint64_t scc_only) {
  EtaReport r;
  r.ca_sum = ca;
  r.pcc_sum = pcc_only;
  r.scc_sum = scc_only;
  const std::uint64_t den = pcc_only + scc_only;
  if (den == 0) return r;
  r.defined = true;
  r.eta = static_cast<double>(ca) / static_cast<double>(den);
  return r;
}

EtaReport utilization_ratio(const RunSummary& ca, const RunSummary& pcc_only,
                            const RunSummary& scc_only, Slot window) {
  auto r = utilization_ratio(window_sum(ca.per_slot, window), window_sum(pcc_only.per_slot, window),
                             window_sum(scc_only.per_slot, window));
  r.window = window;
  return r;
}

std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 3) return std::nullopt;
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0 || syy <= 0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

std::optional<double> buffer_throughput_correlation(const std::vector<double>& mean_abs_b,
                                                    const std::vector<double>& mean_throughput) {
  return pearson(mean_abs_b, mean_throughput);
}

std::vector<double> windowed_ratio(const std::vector<SlotRecord>& trace, std::size_t window,
                                   std::size_t n_scc, Slot from) {
  std::vector<double> out;
  long sp = 0, ss = 0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    sp += trace[i].action.a_p;
    ss += trace[i].action.a_s;
    if (i >= window) {
      sp -= trace[i - window].action.a_p;
      ss -= trace[i - window].action.a_s;
    }
    if (trace[i].t < from) continue;
    out.push_back(sp > 0 ? static_cast<double>(ss) * static_cast<double>(n_scc) / static_cast<double>(sp)
                         : std::numeric_limits<double>::quiet_NaN());
  }
  return out;
}

Convergence convergence(const std::vector<double>& ratio, Slot from, double tol, Slot deadline) {
  Convergence c;
  if (ratio.empty()) return c;
  const std::size_t half = ratio.size() / 2;
  double sum = 0;
  std::size_t cnt = 0;
  for (std::size_t i = half; i < ratio.size(); ++i)
    if (std::isfinite(ratio[i])) {
      sum += ratio[i];
      ++cnt;
    }
  if (cnt == 0) return c;
  c.steady = sum / static_cast<double>(cnt);
  auto inside = [&](double r) { return std::isfinite(r) && std::abs(r - c.steady) <= tol * std::abs(c.steady); };
  std::size_t last_bad = ratio.size();
  for (std::size_t i = ratio.size(); i-- > 0;)
    if (!inside(ratio[i])) {
      last_bad = i;
      break;
    }
  c.settled = last_bad + 1 < ratio.size() || last_bad == ratio.size();
  c.settle_slot = from + (last_bad == ratio.size() ? 0 : last_bad + 1);
  for (std::size_t i = 0; i < ratio.size(); ++i)
    if (from + i >= deadline && !inside(ratio[i])) ++c.violations_after_deadline;
  return c;
}

}  // namespace casplit
