#include "casplit/fuzzy_pid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace casplit {

double default_b_max(int horizon, int pcc_ratio, std::size_t n_scc) {
  return 2.0 * horizon * std::max<double>(pcc_ratio, static_cast<double>(n_scc));
}

int compute_k(const std::deque<SplitAction>& history, std::size_t n_scc) {
  long sp = 0, ss = 0;
  for (const auto& a : history) {
    sp += a.a_p;
    ss += a.a_s;
  }
  ss *= static_cast<long>(n_scc);
  const long k = ss / std::max(1L, sp);
  return static_cast<int>(std::max(1L, k));
}

double pid_increment(const PidGains& k, const std::array<double, 3>& b) {
  return k.kp * (b[0] - b[1]) + k.ki * b[0] + k.kd * (b[0] - 2.0 * b[1] + b[2]);
}

SplitAction schedule_action(Slot t, int horizon, int k, double g, SecondSegment mode) {
  if (k < 1) throw std::invalid_argument("schedule_action requires k >= 1");
  const long n = horizon;
  const long cap = (n - 1) / k;
  const long gi = std::clamp(static_cast<long>(std::lround(g)), 0L, cap);
  const long r = static_cast<long>(t % static_cast<Slot>(n));
  int ap = 0;
  if (r <= gi * k) {
    ap = (r >= k && r % k == 0 && r / k <= gi) ? 1 : 0;
  } else if (mode == SecondSegment::Window) {
    ap = (r % (k + 1) == 0 && r <= n - 1) ? 1 : 0;
  } else {
    const long off = r - gi * k;
    ap = (off % (k + 1) == 0 && r <= n - 1) ? 1 : 0;
  }
  return {ap, 1 - ap};
}

double membership(double x, double width) {
  return std::max(0.0, 1.0 - std::abs(x) / width);
}

std::pair<double, double> fuzzify(double b, double b_prev, const FuzzyConfig& cfg) {
  if (!(cfg.b_max > 0)) throw std::invalid_argument("b_max must be positive");
  const double xb = std::clamp(b / cfg.b_max, -1.0, 1.0);
  const double xe = std::clamp((b - b_prev) / (2.0 * cfg.b_max), -1.0, 1.0);
  return {membership(xb, cfg.membership_width), membership(xe, cfg.membership_width)};
}

double delta_gain(const RuleTable& t, double d_b, double d_e) {
  const double row[2] = {d_b, 1.0 - d_b};
  const double col[2] = {d_e, 1.0 - d_e};
  const double mid[2][2] = {{d_b * d_e, d_b * (1.0 - d_e)},
                            {(1.0 - d_b) * d_e, (1.0 - d_b) * (1.0 - d_e)}};
  double out = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      double tm = 0.0;
      for (int m = 0; m < 2; ++m) tm += t[i][m] * mid[m][j];
      out += row[i] * tm * col[j];
    }
  return out;
}

PidGains update_gains(const PidGains& k, double d_b, double d_e, const FuzzyConfig& cfg) {
  auto step = [&](double v, const RuleTable& t) {
    return std::clamp(v + delta_gain(t, d_b, d_e), cfg.k_min, cfg.k_max);
  };
  return {step(k.kp, cfg.tp), step(k.ki, cfg.ti), step(k.kd, cfg.td)};
}

FuzzyPidController::FuzzyPidController(FuzzyPidConfig cfg) : cfg_(std::move(cfg)), gains_(cfg_.k0) {
  if (cfg_.horizon < 2) throw std::invalid_argument("horizon must be >= 2");
  if (cfg_.n_scc < 1) throw std::invalid_argument("n_scc must be >= 1");
  u_ = cfg_.u0 < 0 ? (cfg_.horizon - 1) / 2.0 : cfg_.u0;
  b_window_.assign(2 * static_cast<std::size_t>(cfg_.horizon) + 1, 0.0);
}

void FuzzyPidController::remember(SplitAction a) {
  history_.push_back(a);
  while (history_.size() > static_cast<std::size_t>(cfg_.horizon)) history_.pop_front();
  prev_ = a;
}

SplitAction FuzzyPidController::decide(const Observation& obs) {
  probe_.gains_updated = false;
  const SplitAction a = cfg_.variant == Variant::Literal ? decide_literal(obs.t, obs.b)
                                                         : decide_windowed(obs.t, obs.b);
  remember(a);
  probe_.kp = gains_.kp;
  probe_.ki = gains_.ki;
  probe_.kd = gains_.kd;
  probe_.g = g_;
  probe_.k = k_;
  return a;
}

SplitAction FuzzyPidController::decide_literal(Slot t, std::int64_t b) {
  b_hist_ = {static_cast<double>(b), b_hist_[0], b_hist_[1]};
  const Slot n = static_cast<Slot>(cfg_.horizon);
  if (t <= n) {
    probe_.stage = Stage::Init;
    return {1, 1};
  }
  // Leaving Stage 1 always replans; otherwise (1,1) would repeat forever.
  const bool leaving_init = prev_ == SplitAction{1, 1};
  if (b_hist_[0] * b_hist_[1] > 0 && !leaving_init) {
    probe_.stage = Stage::Static;
    return prev_;
  }
  probe_.stage = Stage::Dynamic;
  if (t % n == 0 && cfg_.adapt) {
    auto [db, de] = fuzzify(b_hist_[0], b_hist_[1], cfg_.fuzzy);
    gains_ = update_gains(gains_, db, de, cfg_.fuzzy);
    probe_.gains_updated = true;
  }
  k_ = compute_k(history_, cfg_.n_scc);
  g_ = pid_increment(gains_, b_hist_);
  return schedule_action(t, cfg_.horizon, k_, g_, cfg_.second_segment);
}

SplitAction FuzzyPidController::decide_windowed(Slot t, std::int64_t b) {
  b_window_.push_front(static_cast<double>(b));
  b_window_.pop_back();
  const Slot n = static_cast<Slot>(cfg_.horizon);
  if (t <= n) {
    probe_.stage = Stage::Init;
    return {1, 1};
  }
  const bool boundary = t % n == 0;
  if (boundary || prev_ == SplitAction{1, 1}) {
    probe_.stage = Stage::Dynamic;
    const std::size_t w = static_cast<std::size_t>(cfg_.horizon);
    // Positive B means the PCC is backlogged, so PCC impulses must go down.
    const std::array<double, 3> e{-b_window_[0], -b_window_[w], -b_window_[2 * w]};
    if (boundary && cfg_.adapt) {
      auto [db, de] = fuzzify(e[0], e[1], cfg_.fuzzy);
      gains_ = update_gains(gains_, db, de, cfg_.fuzzy);
      probe_.gains_updated = true;
    }
    k_ = compute_k(history_, 1);
    const double s = cfg_.fuzzy.b_max;
    g_ = pid_increment(gains_, {e[0] / s, e[1] / s, e[2] / s});
    u_ = std::clamp(u_ + g_, 0.0, static_cast<double>(cfg_.horizon - 1));
  } else {
    probe_.stage = Stage::Static;
  }
  return schedule_action(t, cfg_.horizon, k_, u_, cfg_.second_segment);
}

SplitAction StationaryK::decide(const Observation& obs) {
  return schedule_action(obs.t, n_, k_, static_cast<double>((n_ - 1) / k_));
}

}  // namespace casplit
