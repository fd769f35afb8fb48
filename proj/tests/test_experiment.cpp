#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "casplit/experiment.hpp"

using namespace casplit;

TEST_CASE("trace header is stable") {
  CHECK(trace_header(3) ==
        "t,B,A_P,A_s,rlc_pcc,rlc_scc1,rlc_scc2,rlc_scc3,cap_pcc,cap_scc1,cap_scc2,cap_scc3,"
        "delivered,Kp,Ki,Kd,G,k,stage,gain_update");
  CHECK(trace_header(1) ==
        "t,B,A_P,A_s,rlc_pcc,rlc_scc1,cap_pcc,cap_scc1,delivered,Kp,Ki,Kd,G,k,stage,gain_update");
  CHECK(summary_header() ==
        "row,seed,mode,policy,slots,delivered,completed,mean_throughput,mean_abs_b,eta,ca_sum,pcc_sum,"
        "scc_sum,window");
}

TEST_CASE("trace rows") {
  auto cfg = flat_scenario(1);
  cfg.max_slots = 20;
  const auto r = build_run(cfg, RunMode::CA, 1)->run();
  std::ostringstream os;
  write_trace(os, r.trace, 1);
  std::istringstream is(os.str());
  std::string line;
  int rows = 0;
  std::getline(is, line);
  CHECK(line == trace_header(1));
  while (std::getline(is, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 15);
  }
  CHECK(rows == 20);
}

TEST_CASE("number formatting round-trips") {
  CHECK(fmt_num(0.5) == "0.5");
  CHECK(fmt_num(3) == "3");
  const double x = 0.1 + 0.2;
  CHECK(std::stod(fmt_num(x)) == x);
}

TEST_CASE("eta window convention") {
  auto s = static_scenario(1);
  RunSummary ca;
  ca.slots = 777;
  CHECK(eta_window(s, ca) == 777);
  auto m = mobile_scenario(1);
  CHECK(eta_window(m, ca) == m.max_slots);
}

TEST_CASE("eta stays inside [0,1] on a short static run") {
  auto cfg = static_scenario(2);
  cfg.workload.packets = 800;
  for (auto p : all_policies()) {
    cfg.controller.policy = p;
    const auto r = eta_for_seed(cfg, 5);
    REQUIRE(r.eta.defined);
    CHECK(r.eta.eta >= 0.0);
    CHECK(r.eta.eta <= 1.0);
    CHECK(r.eta.window == r.ca.result.summary.slots);
  }
}

TEST_CASE("k sweep shape") {
  const auto pts = k_sweep(2, {1, 2, 4}, 200);
  REQUIRE(pts.size() == 3);
  CHECK(pts[0].pcc_share > pts[1].pcc_share);
  CHECK(pts[1].pcc_share > pts[2].pcc_share);
  for (const auto& p : pts) CHECK(p.mean_throughput > 0);
}

TEST_CASE("convergence run bookkeeping") {
  const auto c = convergence_run(2, Policy::FuzzyPid);
  CHECK(c.from == 17);
  CHECK(c.deadline == 48);
  CHECK(c.window == 32);
  CHECK(c.capacity_ratio == doctest::Approx(1.0));
  CHECK(c.ratio.size() + c.from == c.trace.size());
}

TEST_CASE("suites") {
  CHECK(suite_names() == std::vector<std::string>{"fig4", "fig5", "fig6", "fig7"});
  CHECK_THROWS_AS(run_suite("fig9", "/tmp"), std::invalid_argument);
  const auto dir = std::filesystem::temp_directory_path() / "casplit_unit_fig5";
  const auto files = run_suite("fig5", dir.string());
  REQUIRE(files.size() == 1);
  std::ifstream f(files[0]);
  std::string head;
  std::getline(f, head);
  CHECK(head == "n_scc,k,pcc_share,mean_throughput,mean_abs_b");
}
