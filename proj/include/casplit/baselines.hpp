#pragma once

#include <array>
#include <string>
#include <vector>

#include "casplit/controller.hpp"
#include "casplit/fuzzy_pid.hpp"

namespace casplit {

// Bandwidth-weighted allocation: deterministic largest-remainder pattern that
// sends BW_P / (BW_P + sum BW_s) of the slots to the PCC.
class BwaSplitter : public Splitter {
 public:
  BwaSplitter(double bw_pcc, const std::vector<double>& bw_scc);
  SplitAction decide(const Observation& obs) override;
  std::string name() const override { return "bwa"; }
  double share() const { return share_; }

 private:
  double share_;
  double acc_ = 0.0;
};

SplitAction bwa_decide(double share, Slot t);

struct DelayEstimate {
  double pcc = 0.0;
  std::vector<double> scc;
};

// Ties go to the PCC.
SplitAction ltr_decide(const DelayEstimate& est);

struct LtrConfig {
  double ewma = 0.1;      // weight of the newest service sample
  double eps_rate = 0.01;
  double initial_rate = 1.0;
};

class LtrSplitter : public Splitter {
 public:
  LtrSplitter(std::size_t n_scc, LtrConfig cfg = {});
  SplitAction decide(const Observation& obs) override;
  std::string name() const override { return "ltr"; }
  const DelayEstimate& estimate() const { return est_; }

 private:
  LtrConfig cfg_;
  std::vector<double> rate_;
  DelayEstimate est_;
};

struct QConfig {
  int bins = 16;
  double b_max = 96;
  double epsilon = 0.1;
  double learn_rate = 0.1;
  double discount = 0.9;
  std::uint64_t seed = 0;
};

class QTable {
 public:
  explicit QTable(QConfig cfg);

  int bucket(std::int64_t b) const;
  // 0 = PCC, 1 = SCC group
  int greedy(int s) const;
  int choose(int s, RngStream& rng) const;
  void update(int s, int a, double reward, int s_next);

  double value(int s, int a) const { return q_[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)]; }
  double& value(int s, int a) { return q_[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)]; }
  const QConfig& config() const { return cfg_; }
  int states() const { return cfg_.bins; }

 private:
  QConfig cfg_;
  std::vector<std::array<double, 2>> q_;
};

SplitAction qlearn_action(int a);

// Reward of the previous step is the number of packets the UE received in that slot.
class QLearningSplitter : public Splitter {
 public:
  explicit QLearningSplitter(QConfig cfg);
  SplitAction decide(const Observation& obs) override;
  std::string name() const override { return "qlearning"; }
  const QTable& table() const { return table_; }

 private:
  QTable table_;
  RngStream rng_;
  int last_s_ = -1;
  int last_a_ = 0;
};

}  // namespace casplit
