#include <doctest.h>

#include <cmath>
#include <sstream>

#include "casplit/experiment.hpp"
#include "casplit/scenario.hpp"

using namespace casplit;

TEST_CASE("trajectories") {
  Trajectory st;
  for (Slot t : {0, 5000, 123456}) CHECK(ue_distance(st, t, 1e-3).distance_p == 100.0);

  Trajectory ob;
  ob.kind = TrajectoryKind::OutAndBack;
  CHECK(ue_distance(ob, 5000, 1e-3).distance_p == doctest::Approx(150));
  CHECK(ue_distance(ob, 10000, 1e-3).distance_p == doctest::Approx(200));
  CHECK(ue_distance(ob, 15000, 1e-3).distance_p == doctest::Approx(150));
  CHECK(ue_distance(ob, 20000, 1e-3).distance_p == doctest::Approx(100));
  CHECK(ue_distance(ob, 30000, 1e-3).distance_p == doctest::Approx(100));

  ob.secondary_offset_m = 25;
  CHECK(ue_distance(ob, 0, 1e-3).distance_s == doctest::Approx(125));
}

TEST_CASE("presets validate") {
  for (std::size_t n : {1, 2, 3}) {
    CHECK_NOTHROW(validate(static_scenario(n)));
    CHECK_NOTHROW(validate(mobile_scenario(n)));
    CHECK_NOTHROW(validate(flat_scenario(n)));
  }
  CHECK(pcc_ratio(static_scenario(3)) == 2);
  CHECK(effective_b_max(static_scenario(3)) == 96);
  CHECK(carriers(static_scenario(3)).size() == 4);
  CHECK(carriers(static_scenario(3))[0].kind == CarrierKind::Pcc);
}

TEST_CASE("validation names the key") {
  auto c = static_scenario(2);
  c.controller.horizon = 1;
  try {
    validate(c);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "controller.horizon");
  }
  c = static_scenario(2);
  c.pcc.rho = 0.5;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = static_scenario(2);
  c.trajectory.distance_m = 0.2;
  CHECK_THROWS_AS(validate(c), ConfigError);
}

namespace {

std::string key_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "";
}

std::string trace_text(const ScenarioConfig& cfg) {
  std::ostringstream os;
  write_trace(os, build_run(cfg, RunMode::CA, cfg.seed)->run().trace, cfg.n_scc);
  return os.str();
}

const char* kMinimal =
    "[channel]\nn_scc = 2\n"
    "[carriers.pcc]\nrho = 2\nsigma2 = 0\npath_loss = fixed\n"
    "[carriers.scc]\nsigma2 = 0\npath_loss = fixed\n"
    "[run]\nmax_slots = 50\n";

}  // namespace

TEST_CASE("parse") {
  const auto c = parse_config(kMinimal);
  CHECK(c.n_scc == 2);
  CHECK(c.scc.size() == 2);
  CHECK(c.pcc.kind == CarrierKind::Pcc);
  CHECK(c.pcc.rho == 2);
  CHECK(c.scc[1].path_loss == PathLossModel::Fixed);
  CHECK(c.max_slots == 50);

  const auto o = parse_config(std::string(kMinimal) + "[carriers.scc2]\nsigma2 = 0.5\n");
  CHECK(o.scc[0].sigma2 == 0);
  CHECK(o.scc[1].sigma2 == 0.5);
}

TEST_CASE("parse errors") {
  CHECK(key_of("[channel]\nn_scc = 2\n[carriers.pcc]\nrho = 2\n") == "carriers.scc");
  CHECK(key_of("[carriers.scc]\nrho = 1\n") == "carriers.pcc");
  CHECK(key_of(std::string(kMinimal) + "[controller]\nhorizonn = 3\n") == "controller.horizonn");
  CHECK(key_of(std::string(kMinimal) + "[controller]\nhorizon = three\n") == "controller.horizon");
  CHECK(key_of(std::string(kMinimal) + "[controller]\npolicy = magic\n") == "controller.policy");
  CHECK(key_of(std::string(kMinimal) + "[weather]\nrain = 1\n") == "weather");
  CHECK(key_of(std::string(kMinimal) + "[carriers.scc7]\nrho = 1\n") == "carriers.scc7");
  CHECK_THROWS_AS(load_config("/nonexistent/cfg.ini"), ConfigError);
}

TEST_CASE("config round trip gives the same run") {
  for (auto cfg : {static_scenario(2), mobile_scenario(3), flat_scenario(1)}) {
    cfg.max_slots = 300;
    cfg.workload.packets = 400;
    cfg.controller.policy = Policy::Ltr;
    cfg.seed = 17;
    const auto back = parse_config(to_ini(cfg));
    CHECK(to_ini(back) == to_ini(cfg));
    CHECK(std::hash<std::string>{}(trace_text(back)) == std::hash<std::string>{}(trace_text(cfg)));
  }
}

TEST_CASE("saturated standalone config") {
  const auto s = saturated(static_scenario(3), 1234);
  CHECK(s.workload.mode == ArrivalMode::PerSlot);
  CHECK(s.max_slots == 1234);
  // enough arrivals to keep every carrier busy
  CHECK(s.workload.rate >= static_cast<std::uint64_t>(s.quantum * 4));
}

TEST_CASE("policy names") {
  for (auto p : all_policies()) CHECK(parse_policy(to_string(p)) == p);
  CHECK_THROWS(parse_policy("random"));
  CHECK(make_splitter(static_scenario(2), 1)->name() == "fuzzy_pid");
  auto c = static_scenario(2);
  c.controller.policy = Policy::QLearning;
  CHECK(make_splitter(c, 1)->name() == "qlearning");
}
