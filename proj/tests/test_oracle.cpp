#include <doctest.h>

#include "casplit/oracle.hpp"
#include "casplit/scenario.hpp"

using namespace casplit;

namespace {

TinyInstance inst(std::uint64_t l, std::vector<std::vector<int>> caps, int d_xn = 0) {
  TinyInstance i;
  i.packets = l;
  i.n_scc = caps.size() - 1;
  i.capacity = std::move(caps);
  i.d_xn = d_xn;
  return i;
}

}  // namespace

TEST_CASE("two packets over unit carriers") {
  const auto r = brute_force_min_T(inst(2, {{1}, {1}}));
  REQUIRE(r.feasible);
  CHECK(r.t_star == 2);
  CHECK(replay(inst(2, {{1}, {1}}), r.witness).summary.slots == 2);
  for (const auto& a : r.witness) CHECK(a.complementary());
}

TEST_CASE("single packet") {
  for (int d : {0, 2, 5}) {
    const auto r = brute_force_min_T(inst(1, {{1}, {3}}, d));
    CHECK(r.t_star == 1);
    CHECK(r.witness.front() == SplitAction{1, 0});
  }
  // PCC dead: the packet has to cross the Xn link
  CHECK(brute_force_min_T(inst(1, {{0}, {1}}, 2)).t_star == 3);
}

TEST_CASE("zero capacity is infeasible") {
  const auto r = brute_force_min_T(inst(3, {{0}, {0}, {0}}));
  CHECK_FALSE(r.feasible);
  CHECK(r.witness.empty());
}

TEST_CASE("unrestricted actions never do worse") {
  // both carriers at once halves the time here: one packet per slot vs two
  auto i = inst(4, {{1}, {1}});
  const auto restricted = brute_force_min_T(i);
  i.unrestricted = true;
  const auto free = brute_force_min_T(i);
  CHECK(free.t_star <= restricted.t_star);
  CHECK(free.t_star == 2);
  CHECK(restricted.t_star == 4);
}

TEST_CASE("bounds are enforced") {
  CHECK_THROWS_AS(validate(inst(15, {{1}, {1}})), std::invalid_argument);
  CHECK_THROWS_AS(validate(inst(2, {{1}, {1}, {1}, {1}})), std::invalid_argument);
  auto i = inst(2, {{1}, {1}});
  i.max_slots = 30;
  CHECK_THROWS_AS(validate(i), std::invalid_argument);
  CHECK_NOTHROW(validate(inst(14, {{1}, {1}, {1}})));
}

TEST_CASE("witness replay on a time-varying instance") {
  const auto i = inst(9, {{2, 0, 0, 2}, {1, 1, 0}, {0, 1}}, 1);
  const auto r = brute_force_min_T(i);
  REQUIRE(r.feasible);
  const auto rep = replay(i, r.witness);
  CHECK(rep.summary.slots == r.t_star);
  CHECK(rep.summary.completed);
  std::uint64_t sum = 0;
  for (auto x : r.throughput) sum += x;
  CHECK(sum == 9);
}

TEST_CASE("identity regimes") {
  IdentityInstance id;
  id.n_scc = 2;
  id.cap_p = 2;
  id.cap_s = 1;
  id.horizon = 6;

  SUBCASE("case 1, excess to the PCC") {
    const auto r = verify_nstep_identity(id, {4, 1});
    CHECK(r.regime == Regime::Case1);
    CHECK(r.identity_holds);
    CHECK(r.throughput == r.packets - std::llabs(r.delta_h));
  }
  SUBCASE("case 2, excess to the SCCs") {
    const auto r = verify_nstep_identity(id, {1, 3});
    CHECK(r.regime == Regime::Case2);
    CHECK(r.identity_holds);
    CHECK(r.throughput == r.packets - std::llabs(r.delta_h));
  }
  SUBCASE("balanced") {
    const auto r = verify_nstep_identity(id, {2, 1});
    CHECK(r.regime == Regime::Balanced);
    CHECK(r.delta_h == 0);
    CHECK(r.throughput == r.packets);
  }
  SUBCASE("backlog on both sides violates the assumptions") {
    const auto r = verify_nstep_identity(id, {3, 2});
    CHECK(r.regime == Regime::Violated);
    CHECK_FALSE(r.violation.empty());
  }
}

TEST_CASE("window objective") {
  CHECK(window_objective(0, 8, 2, 2, 2, 2) == 0);
  CHECK(window_objective(5, 8, 3, 2, 2, 2) == 14);
  CHECK(window_objective(-5, 8, 2, 3, 2, 2) == 14);
}

TEST_CASE("ranking") {
  IdentityInstance id;
  id.n_scc = 3;
  id.horizon = 8;
  id.preload = {5, 0, 0, 0};
  std::vector<IdentityReport> reps;
  for (int p = 0; p <= 9; ++p)
    for (int s = 0; s <= 3; ++s)
      if (p + 3 * s == 9) reps.push_back(verify_nstep_identity(id, {p, s}));
  REQUIRE(reps.size() == 4);
  CHECK(ranking_consistent(reps));
}

TEST_CASE("oracle file") {
  const auto f = parse_oracle_file(
      "[instance]\npackets = 3\nn_scc = 2\nd_xn = 1\ncap_pcc = 1,2\ncap_scc1 = 1\ncap_scc2 = 0,1\n"
      "[identity]\nhorizon = 4\nstrategies = 2:1, 1:1\n");
  CHECK(f.instance.packets == 3);
  CHECK(f.instance.capacity[0] == std::vector<int>{1, 2});
  CHECK(f.instance.capacity[2] == std::vector<int>{0, 1});
  CHECK(f.has_identity);
  CHECK(f.identity.horizon == 4);
  REQUIRE(f.strategies.size() == 2);
  CHECK(f.strategies[1].pcc == 1);
  CHECK_THROWS_AS(parse_oracle_file("[instance]\npackets = 3\nn_scc = 1\ncap_pcc = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_oracle_file("[instance]\npackets = 99\nn_scc = 1\ncap_pcc = 1\ncap_scc1 = 1\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_oracle_file("[instance]\npackets = 3\nbogus = 1\n"), ConfigError);
}
