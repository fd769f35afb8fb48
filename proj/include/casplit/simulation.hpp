#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "casplit/channel.hpp"
#include "casplit/controller.hpp"
#include "casplit/sim.hpp"
#include "casplit/stack.hpp"

namespace casplit {

enum class RunMode { CA, PccOnly, SccOnly };
enum class ArrivalMode { Burst, PerSlot };

std::string to_string(RunMode m);
RunMode parse_run_mode(const std::string& s);

struct Workload {
  ArrivalMode mode = ArrivalMode::Burst;
  std::uint64_t packets = 10000;  // L in burst mode
  std::uint64_t rate = 0;         // per-slot arrivals in per-slot mode
};

struct SimSetup {
  std::size_t n_scc = 1;
  int d_xn = 2;
  DispatchQuanta quanta{};
  Workload workload{};
  Slot max_slots = 100000;
  RunMode mode = RunMode::CA;
  PhaseOrder order = step_order();
  std::vector<std::uint64_t> preload;  // packets placed in each RLC buffer before slot 0
  bool record_trace = true;
  bool check_invariants = false;  // conservation check after every slot
};

struct SlotRecord {
  Slot t = 0;
  std::int64_t b = 0;
  SplitAction action{};
  std::vector<std::uint32_t> rlc;
  std::vector<int> capacity;
  std::uint64_t delivered = 0;
  Probe probe{};
};

struct RunSummary {
  RunMode mode = RunMode::CA;
  std::string policy;
  std::uint64_t total_delivered = 0;
  Slot slots = 0;  // T: slots simulated (completion slot + 1 when completed)
  bool completed = false;
  double mean_throughput = 0;
  double mean_abs_b = 0;
  std::vector<std::uint64_t> per_slot;
};

struct RunResult {
  std::vector<SlotRecord> trace;
  RunSummary summary;
};

class Simulation {
 public:
  Simulation(SimSetup setup, std::unique_ptr<CapacityModel> channel,
             std::unique_ptr<Splitter> splitter);

  // Runs one slot. Returns false once the run is finished.
  bool step();
  RunResult run();
  bool finished() const { return done_; }

  const SlotClock& clock() const { return clock_; }
  const PdcpState& pdcp() const { return pdcp_; }
  const RlcState& rlc() const { return rlc_; }
  const UeState& ue() const { return ue_; }
  const Splitter& splitter() const { return *splitter_; }
  const ChannelState& channel_state() const { return chan_; }
  const SimSetup& setup() const { return setup_; }
  std::uint64_t ingested() const { return pdcp_.n_max; }

  // ingested == PDCP + Xn + RLC + UE, by count and as a partition of seqs.
  // Returns an empty string when it holds, else a description.
  std::string conservation_error() const;

 private:
  void run_phase(Phase p);
  RunSummary summarize() const;

  SimSetup setup_;
  std::unique_ptr<CapacityModel> channel_;
  std::unique_ptr<Splitter> splitter_;
  SlotClock clock_{};
  PdcpState pdcp_;
  RlcState rlc_;
  UeState ue_;
  ChannelState chan_;
  SplitAction action_{};
  std::int64_t b_seen_ = 0;
  std::vector<std::size_t> served_;
  std::uint64_t delivered_now_ = 0;
  PerCarrier delivered_;
  std::vector<SlotRecord> trace_;
  double abs_b_sum_ = 0;
  bool done_ = false;
};

}  // namespace casplit
