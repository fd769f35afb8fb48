#include "casplit/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace casplit {

BwaSplitter::BwaSplitter(double bw_pcc, const std::vector<double>& bw_scc) {
  const double tot = bw_pcc + std::accumulate(bw_scc.begin(), bw_scc.end(), 0.0);
  if (!(tot > 0)) throw std::invalid_argument("bandwidths must be positive");
  share_ = bw_pcc / tot;
}

SplitAction BwaSplitter::decide(const Observation&) {
  acc_ += share_;
  if (acc_ >= 1.0 - 1e-9) {
    acc_ -= 1.0;
    return {1, 0};
  }
  return {0, 1};
}

SplitAction bwa_decide(double share, Slot t) {
  // closed form of the accumulator: PCC whenever floor((t+1) share) steps up
  const auto f = [&](Slot x) { return std::floor(static_cast<double>(x) * share + 1e-9); };
  return f(t + 1) > f(t) ? SplitAction{1, 0} : SplitAction{0, 1};
}

SplitAction ltr_decide(const DelayEstimate& est) {
  double best = std::numeric_limits<double>::infinity();
  for (double d : est.scc) best = std::min(best, d);
  return est.pcc <= best ? SplitAction{1, 0} : SplitAction{0, 1};
}

LtrSplitter::LtrSplitter(std::size_t n_scc, LtrConfig cfg)
    : cfg_(cfg), rate_(n_scc + 1, cfg.initial_rate) {
  est_.scc.assign(n_scc, 0.0);
}

SplitAction LtrSplitter::decide(const Observation& obs) {
  const double w = cfg_.ewma;
  for (std::size_t c = 0; c < rate_.size(); ++c) {
    const double s = c < obs.served.size() ? static_cast<double>(obs.served[c]) : 0.0;
    rate_[c] = (1.0 - w) * rate_[c] + w * s;
  }
  auto occ = [&](const std::vector<std::size_t>& v, std::size_t c) {
    return c < v.size() ? static_cast<double>(v[c]) : 0.0;
  };
  est_.pcc = occ(obs.rlc, 0) / std::max(rate_[0], cfg_.eps_rate);
  for (std::size_t s = 1; s < rate_.size(); ++s)
    est_.scc[s - 1] = (occ(obs.rlc, s) + occ(obs.inflight, s)) / std::max(rate_[s], cfg_.eps_rate) +
                      obs.d_xn;
  return ltr_decide(est_);
}

QTable::QTable(QConfig cfg) : cfg_(cfg), q_(static_cast<std::size_t>(cfg.bins), {0.0, 0.0}) {
  if (cfg_.bins < 1) throw std::invalid_argument("q-learning needs at least one bin");
  if (cfg_.epsilon < 0 || cfg_.epsilon > 1) throw std::invalid_argument("epsilon outside [0,1]");
}

int QTable::bucket(std::int64_t b) const {
  const double m = cfg_.b_max;
  const double x = std::clamp(static_cast<double>(b), -m, m);
  const int i = static_cast<int>((x + m) / (2 * m) * cfg_.bins);
  return std::min(cfg_.bins - 1, std::max(0, i));
}

int QTable::greedy(int s) const {
  return value(s, 0) >= value(s, 1) ? 0 : 1;
}

int QTable::choose(int s, RngStream& rng) const {
  if (cfg_.epsilon > 0 && rng.uniform() < cfg_.epsilon) return static_cast<int>(rng.below(2));
  return greedy(s);
}

void QTable::update(int s, int a, double reward, int s_next) {
  const double best = std::max(value(s_next, 0), value(s_next, 1));
  double& q = value(s, a);
  q += cfg_.learn_rate * (reward + cfg_.discount * best - q);
}

SplitAction qlearn_action(int a) {
  return a == 0 ? SplitAction{1, 0} : SplitAction{0, 1};
}

QLearningSplitter::QLearningSplitter(QConfig cfg)
    : table_(cfg), rng_(cfg.seed, 0x71ea4e) {}

SplitAction QLearningSplitter::decide(const Observation& obs) {
  const int s = table_.bucket(obs.b);
  if (last_s_ >= 0) table_.update(last_s_, last_a_, static_cast<double>(obs.delivered_last), s);
  const int a = table_.choose(s, rng_);
  last_s_ = s;
  last_a_ = a;
  return qlearn_action(a);
}

}  // namespace casplit
