#include <doctest.h>

#include <numeric>

#include "casplit/scenario.hpp"

using namespace casplit;

namespace {

SimSetup burst(std::uint64_t l, std::size_t n_scc, int d_xn) {
  SimSetup s;
  s.n_scc = n_scc;
  s.d_xn = d_xn;
  s.workload = {ArrivalMode::Burst, l, 0};
  s.max_slots = 1000;
  s.check_invariants = true;
  return s;
}

}  // namespace

TEST_CASE("run modes force the action") {
  auto cfg = flat_scenario(2);
  cfg.max_slots = 60;
  for (auto [mode, want] : {std::pair{RunMode::PccOnly, SplitAction{1, 0}}, {RunMode::SccOnly, SplitAction{0, 1}}}) {
    auto sim = build_run(cfg, mode, 1);
    const auto r = sim->run();
    CHECK(r.trace.size() == 60);
    for (const auto& s : r.trace) CHECK(s.action == want);
    CHECK(r.summary.policy == (mode == RunMode::PccOnly ? "pcc_only" : "scc_only"));
  }
}

TEST_CASE("bwa alternates with one equal-bandwidth SCC") {
  auto cfg = flat_scenario(1);
  cfg.controller.policy = Policy::Bwa;
  cfg.max_slots = 20;
  const auto r = build_run(cfg, RunMode::CA, 1)->run();
  for (std::size_t i = 0; i + 1 < r.trace.size(); ++i) CHECK(r.trace[i].action.a_p != r.trace[i + 1].action.a_p);
}

TEST_CASE("burst completes and T is the first slot meeting L") {
  // PCC only, 2 per slot, 7 packets: delivered 2,2,2,1 -> T = 4
  SimSetup s = burst(7, 1, 0);
  s.quanta = {2, 1};
  Simulation sim(s, std::make_unique<ScheduledCapacity>(ScheduledCapacity::constant({2, 1})),
                 std::make_unique<FixedSplitter>(SplitAction{1, 0}));
  const auto r = sim.run();
  CHECK(r.summary.completed);
  CHECK(r.summary.slots == 4);
  CHECK(r.summary.total_delivered == 7);
  CHECK(r.summary.mean_throughput == doctest::Approx(7.0 / 4));
  CHECK(sim.conservation_error().empty());
}

TEST_CASE("xn delay shows in completion time") {
  SimSetup s = burst(1, 1, 3);
  Simulation sim(s, std::make_unique<ScheduledCapacity>(ScheduledCapacity::constant({1, 1})),
                 std::make_unique<FixedSplitter>(SplitAction{0, 1}));
  CHECK(sim.run().summary.slots == 4);
}

TEST_CASE("zero capacity delivers nothing") {
  SimSetup s = burst(20, 2, 1);
  s.max_slots = 30;
  Simulation sim(s, std::make_unique<ScheduledCapacity>(ScheduledCapacity::constant({0, 0, 0})),
                 std::make_unique<FixedSplitter>(SplitAction{1, 1}));
  std::size_t prev = 0;
  while (sim.step()) {
    CHECK(sim.ue().total == 0);
    CHECK(sim.rlc().total_buffered() >= prev);
    prev = sim.rlc().total_buffered();
  }
  CHECK_FALSE(sim.run().summary.completed);
  CHECK(sim.clock().t == 30);
}

TEST_CASE("preload sits in the RLC before slot 0") {
  SimSetup s = burst(0, 1, 0);
  s.workload = {ArrivalMode::PerSlot, 0, 0};
  s.preload = {3, 1};
  s.max_slots = 5;
  Simulation sim(s, std::make_unique<ScheduledCapacity>(ScheduledCapacity::constant({1, 1})),
                 std::make_unique<FixedSplitter>(SplitAction{0, 0}));
  const auto r = sim.run();
  CHECK(r.trace[0].b == 2);
  CHECK(r.summary.total_delivered == 4);
  CHECK(sim.conservation_error().empty());
}

TEST_CASE("summary totals agree with the trace") {
  auto cfg = static_scenario(2);
  cfg.workload.packets = 500;
  for (auto p : {Policy::FuzzyPid, Policy::Ltr, Policy::QLearning}) {
    cfg.controller.policy = p;
    const auto r = build_run(cfg, RunMode::CA, 3)->run();
    std::uint64_t sum = 0;
    double abs_b = 0;
    for (const auto& s : r.trace) {
      sum += s.delivered;
      abs_b += std::abs(static_cast<double>(s.b));
    }
    CHECK(sum == r.summary.total_delivered);
    CHECK(r.summary.total_delivered == 500);
    CHECK(r.trace.size() == r.summary.slots);
    CHECK(std::accumulate(r.summary.per_slot.begin(), r.summary.per_slot.end(), std::uint64_t{0}) == sum);
    CHECK(r.summary.mean_abs_b == doctest::Approx(abs_b / static_cast<double>(r.trace.size())));
  }
}

TEST_CASE("run mode names") {
  CHECK(parse_run_mode("ca") == RunMode::CA);
  CHECK(parse_run_mode("pcc") == RunMode::PccOnly);
  CHECK(to_string(RunMode::SccOnly) == "scc");
  CHECK_THROWS(parse_run_mode("both"));
}
