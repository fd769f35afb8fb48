#include <doctest.h>

#include <cmath>

#include "casplit/metrics.hpp"

using namespace casplit;

TEST_CASE("eta arithmetic") {
  const auto e = utilization_ratio(1350, 500, 1000);
  CHECK(e.defined);
  CHECK(e.eta == doctest::Approx(0.90));
  CHECK(utilization_ratio(1500, 500, 1000).eta == 1.0);
  CHECK_FALSE(utilization_ratio(0, 0, 0).defined);
}

TEST_CASE("eta over a common window") {
  RunSummary ca, p, s;
  ca.per_slot = {3, 3, 3, 3};
  p.per_slot = {2, 2, 2, 2, 2, 2};
  s.per_slot = {1, 1, 2, 2, 2};
  const auto e = utilization_ratio(ca, p, s, 3);
  CHECK(e.ca_sum == 9);
  CHECK(e.pcc_sum == 6);
  CHECK(e.scc_sum == 4);
  CHECK(e.eta == doctest::Approx(0.9));
  CHECK(e.window == 3);
  CHECK(window_sum({1, 2}, 10) == 3);
}

TEST_CASE("pearson") {
  CHECK(*pearson({1, 2, 3, 4}, {8, 6, 4, 2}) == doctest::Approx(-1.0));
  CHECK(*pearson({1, 2, 3}, {1, 2, 3}) == doctest::Approx(1.0));
  CHECK_FALSE(buffer_throughput_correlation({1, 2, 3}, {5, 5, 5}).has_value());
  CHECK_FALSE(pearson({1, 2}, {2, 1}).has_value());
  CHECK_FALSE(pearson({1, 2, 3}, {2, 1}).has_value());
  // against a hand computation: x=(1,2,4), y=(3,1,1)
  // mx=7/3, my=5/3, sxy=-8/3, sxx=14/3, syy=8/3
  CHECK(*pearson({1, 2, 4}, {3, 1, 1}) == doctest::Approx(-8.0 / 3 / std::sqrt(14.0 / 3 * 8.0 / 3)));
}

namespace {

std::vector<SlotRecord> trace_of(const std::vector<SplitAction>& acts) {
  std::vector<SlotRecord> t;
  for (std::size_t i = 0; i < acts.size(); ++i) {
    SlotRecord r;
    r.t = i;
    r.action = acts[i];
    t.push_back(r);
  }
  return t;
}

}  // namespace

TEST_CASE("windowed ratio") {
  const auto tr = trace_of({{1, 0}, {0, 1}, {0, 1}, {1, 0}, {0, 1}, {0, 0}});
  const auto r = windowed_ratio(tr, 3, 2, 0);
  REQUIRE(r.size() == 6);
  CHECK(r[0] == 0.0);
  CHECK(r[2] == doctest::Approx(4.0));  // 2 SCC slots x 2 SCCs over 1 PCC slot
  CHECK(r[3] == doctest::Approx(4.0));
  CHECK(r[5] == doctest::Approx(2.0));  // (1,0),(0,1),(0,0)
  const auto late = windowed_ratio(tr, 3, 2, 4);
  CHECK(late.size() == 2);
  const auto none = windowed_ratio(trace_of({{0, 1}, {0, 1}}), 2, 1, 0);
  CHECK(std::isnan(none[1]));
}

TEST_CASE("convergence") {
  std::vector<double> r(40, 2.0);
  r[3] = 3.0;
  r[10] = 2.5;
  const auto c = convergence(r, 100, 0.1, 105);
  CHECK(c.steady == doctest::Approx(2.0));
  CHECK(c.settled);
  CHECK(c.settle_slot == 111);
  CHECK(c.violations_after_deadline == 1);
  CHECK(convergence(std::vector<double>(10, 1.0), 0, 0.1, 0).violations_after_deadline == 0);
  CHECK_FALSE(convergence({}, 0, 0.1, 0).settled);
}
