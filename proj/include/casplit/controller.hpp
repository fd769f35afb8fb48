#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "casplit/sim.hpp"
#include "casplit/stack.hpp"

namespace casplit {

// What a splitter may look at: local RLC state at the PDCP host plus
// what it has itself observed being delivered last slot.
struct Observation {
  Slot t = 0;
  std::int64_t b = 0;
  std::vector<std::size_t> rlc;       // per carrier occupancy
  std::vector<std::size_t> inflight;  // per carrier Xn backlog (index 0 is 0)
  std::vector<std::size_t> served;    // per carrier deliveries in the previous slot
  std::uint64_t delivered_last = 0;
  int d_xn = 0;
};

enum class Stage : char { None = '-', Init = 'I', Static = 'S', Dynamic = 'D' };

// Controller internals exported to the trace.
struct Probe {
  double kp = 0, ki = 0, kd = 0;
  double g = 0;
  int k = 0;
  Stage stage = Stage::None;
  bool gains_updated = false;
};

class Splitter {
 public:
  virtual ~Splitter() = default;
  virtual SplitAction decide(const Observation& obs) = 0;
  virtual Probe probe() const { return {}; }
  virtual std::string name() const = 0;
};

// Same action every slot (PCC-only, SCC-only, stationary strategies).
class FixedSplitter : public Splitter {
 public:
  explicit FixedSplitter(SplitAction a) : a_(a) {}
  SplitAction decide(const Observation&) override { return a_; }
  std::string name() const override { return "fixed"; }

 private:
  SplitAction a_;
};

// Replays a recorded action sequence; past the end it holds (0,0).
class ScriptedSplitter : public Splitter {
 public:
  explicit ScriptedSplitter(std::vector<SplitAction> seq) : seq_(std::move(seq)) {}
  SplitAction decide(const Observation& obs) override {
    return obs.t < seq_.size() ? seq_[obs.t] : SplitAction{};
  }
  std::string name() const override { return "scripted"; }

 private:
  std::vector<SplitAction> seq_;
};

}  // namespace casplit
