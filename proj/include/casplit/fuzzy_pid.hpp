#pragma once

#include <array>
#include <deque>
#include <string>
#include <utility>

#include "casplit/controller.hpp"

namespace casplit {

using RuleTable = std::array<std::array<double, 2>, 2>;

struct PidGains {
  double kp = 0.5;
  double ki = 0.2;
  double kd = 0.1;

  bool operator==(const PidGains&) const = default;
};

struct FuzzyConfig {
  double b_max = 96;
  RuleTable tp{{{0.3, 0.1}, {-0.1, -0.3}}};
  RuleTable ti{{{0.06, 0.02}, {-0.02, -0.06}}};
  RuleTable td{{{0.1, 0.03}, {-0.03, -0.1}}};
  double k_min = 0.0;
  double k_max = 5.0;
  double membership_width = 1.0;  // half-width of the triangular membership
};

// Literal: raw B, per-slot history, static mode repeats the previous action.
// Windowed: replans on window boundaries from window-sampled, sign-corrected,
// B_max-normalized error and integrates G into an impulse budget.
enum class Variant { Literal, Windowed };

// Where the j*(k+1) impulses of the second segment are anchored.
enum class SecondSegment { Window, Offset };

struct FuzzyPidConfig {
  int horizon = 16;
  std::size_t n_scc = 1;
  PidGains k0{};
  FuzzyConfig fuzzy{};
  bool adapt = true;  // false gives the fixed-gain PID baseline
  Variant variant = Variant::Windowed;
  SecondSegment second_segment = SecondSegment::Window;
  double u0 = -1.0;  // initial impulse budget; negative means (N-1)/2
};

// Default B_max = 2 N max(floor(rho_p/rho_s), n_scc).
double default_b_max(int horizon, int pcc_ratio, std::size_t n_scc);

int compute_k(const std::deque<SplitAction>& history, std::size_t n_scc);

// b = (B(t'), B(t'-1), B(t'-2))
double pid_increment(const PidGains& k, const std::array<double, 3>& b);

SplitAction schedule_action(Slot t, int horizon, int k, double g,
                            SecondSegment mode = SecondSegment::Window);

double membership(double x, double width = 1.0);

// (D_B, D_E)
std::pair<double, double> fuzzify(double b, double b_prev, const FuzzyConfig& cfg);

// [D_B, 1-D_B] T Mid [D_E, 1-D_E]^T
double delta_gain(const RuleTable& t, double d_b, double d_e);

PidGains update_gains(const PidGains& k, double d_b, double d_e, const FuzzyConfig& cfg);

class FuzzyPidController : public Splitter {
 public:
  explicit FuzzyPidController(FuzzyPidConfig cfg);

  SplitAction decide(const Observation& obs) override;
  Probe probe() const override { return probe_; }
  std::string name() const override { return cfg_.adapt ? "fuzzy_pid" : "nofuzzy_pid"; }

  const PidGains& gains() const { return gains_; }
  const std::deque<SplitAction>& history() const { return history_; }
  const FuzzyPidConfig& config() const { return cfg_; }

 private:
  SplitAction decide_literal(Slot t, std::int64_t b);
  SplitAction decide_windowed(Slot t, std::int64_t b);
  void remember(SplitAction a);

  FuzzyPidConfig cfg_;
  PidGains gains_;
  std::deque<SplitAction> history_;
  std::array<double, 3> b_hist_{0, 0, 0};
  std::deque<double> b_window_;
  SplitAction prev_{1, 1};
  double u_ = 0;
  int k_ = 1;
  double g_ = 0;
  Probe probe_;
};

// Stationary strategy of the k-sweep: the fixed impulse train of schedule_action
// with the first segment filled, i.e. G_int = floor((N-1)/k).
class StationaryK : public Splitter {
 public:
  StationaryK(int horizon, int k) : n_(horizon), k_(k) {}
  SplitAction decide(const Observation& obs) override;
  std::string name() const override { return "stationary_k" + std::to_string(k_); }

 private:
  int n_;
  int k_;
};

}  // namespace casplit
