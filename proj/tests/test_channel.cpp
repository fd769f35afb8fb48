#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "casplit/channel.hpp"

using namespace casplit;

TEST_CASE("fading degenerate") {
  CarrierConfig c;
  c.sigma2 = 0;
  RngStream r(1, 0);
  for (int i = 0; i < 10; ++i) CHECK(sample_fading(c, r) == 1.0);
  c.fading = FadingFamily::LogNormal;
  CHECK(sample_fading(c, r) == 1.0);
}

TEST_CASE("path loss") {
  CHECK(path_loss(100, 28, PathLossModel::Fixed, 0.0) == 1.0);
  CHECK(path_loss(200, 28, PathLossModel::UmaNlos) > path_loss(100, 28, PathLossModel::UmaNlos));
  CHECK(path_loss(100, 28, PathLossModel::UmaNlos) > path_loss(100, 4.9, PathLossModel::UmaNlos));
  // frozen hand evaluations at 100 m
  CHECK(path_loss_db(100, 4.9, PathLossModel::UmaNlos) == doctest::Approx(106.20392).epsilon(1e-7));
  CHECK(path_loss_db(100, 28, PathLossModel::UmaNlos) == doctest::Approx(121.34316).epsilon(1e-7));
  CHECK(path_loss(100, 4.9, PathLossModel::UmaNlos) == doctest::Approx(std::pow(10.0, 10.620392)).epsilon(1e-6));
  CHECK_THROWS_AS(path_loss(0.5, 28, PathLossModel::UmaNlos), std::domain_error);
  CHECK_NOTHROW(path_loss(1.0, 28, PathLossModel::UmaNlos));
}

TEST_CASE("link budget") {
  CHECK(thermal_noise_dbm(100) == doctest::Approx(-94.0));
  CarrierConfig c;
  c.frequency_ghz = 4.9;
  c.link_budget = true;
  c.noise_figure_db = 7;
  c.antenna_gain_db = 3;
  // 106.20392 - 94 + 7 - 3
  CHECK(10 * std::log10(normalized_loss(c, 100)) == doctest::Approx(16.20392).epsilon(1e-6));
  c.link_budget = false;
  CHECK(10 * std::log10(normalized_loss(c, 100)) == doctest::Approx(106.20392).epsilon(1e-7));
}

TEST_CASE("sinr") {
  CarrierConfig c;
  c.tx_power_dbm = 28;
  CHECK(sinr_db(c, 1, 1) == doctest::Approx(28));
  CHECK(sinr_db(c, 1000, 2) == doctest::Approx(-5.0103).epsilon(1e-5));
  c.tx_power_dbm = 35;
  CHECK(sinr_db(c, 5, 2) == doctest::Approx(25));
}

TEST_CASE("mac capacity") {
  CarrierConfig s;
  s.kind = CarrierKind::Scc;
  s.n_th = 2;
  CHECK(mac_capacity(s, 10 * std::log10(3.0), 1.0) == 1);
  CHECK(mac_capacity(s, 10 * std::log10(2.0), 1.0) == 0);
  CarrierConfig p;
  p.kind = CarrierKind::Pcc;
  p.rho = 2;
  p.n_th = 2;
  CHECK(mac_capacity(p, 20, 1.0) == 2);
  CHECK(mac_capacity(p, -20, 1.0) == 0);
  p.rho = 3.5;
  CHECK(mac_capacity(p, 20, 1.0) == 3);

  // step function with two levels
  int prev = 0, levels = 1;
  for (double g = -30; g <= 30; g += 0.01) {
    const int c = mac_capacity(p, g, 1.0);
    CHECK(c >= prev);
    levels += c != prev;
    prev = c;
  }
  CHECK(levels == 2);
}

TEST_CASE("flat radio channel is constant") {
  CarrierConfig p;
  p.kind = CarrierKind::Pcc;
  p.rho = 2;
  p.sigma2 = 0;
  p.path_loss = PathLossModel::Fixed;
  p.tx_power_dbm = 28;
  CarrierConfig s = p;
  s.kind = CarrierKind::Scc;
  s.rho = 1;
  RadioChannel ch({p, s, s}, [](Slot) { return std::pair{100.0, 100.0}; }, 3);
  ChannelState st;
  for (Slot t = 0; t < 50; ++t) {
    ch.sample(t, st);
    CHECK(st.capacity == std::vector<int>{2, 1, 1});
    CHECK(st.gamma_db[0] == doctest::Approx(28));
  }
}

TEST_CASE("carrier streams do not depend on how many carriers exist") {
  CarrierConfig p;
  p.kind = CarrierKind::Pcc;
  p.sigma2 = 0.0004;
  CarrierConfig s;
  s.sigma2 = 0.27;
  auto d = [](Slot) { return std::pair{100.0, 100.0}; };
  RadioChannel two({p, s}, d, 11), four({p, s, s, s}, d, 11);
  ChannelState a, b;
  for (Slot t = 0; t < 100; ++t) {
    two.sample(t, a);
    four.sample(t, b);
    CHECK(a.alpha[0] == b.alpha[0]);
    CHECK(a.alpha[1] == b.alpha[1]);
  }
}

TEST_CASE("scheduled capacity holds the last column") {
  ScheduledCapacity c({{3, 1}, {0}});
  ChannelState st;
  c.sample(0, st);
  CHECK(st.capacity == std::vector<int>{3, 0});
  c.sample(5, st);
  CHECK(st.capacity == std::vector<int>{1, 0});
  CHECK_THROWS(ScheduledCapacity(std::vector<std::vector<int>>{{}}));
}

TEST_CASE("enum names") {
  CHECK(parse_fading(to_string(FadingFamily::LogNormal)) == FadingFamily::LogNormal);
  CHECK(parse_path_loss(to_string(PathLossModel::Fixed)) == PathLossModel::Fixed);
  CHECK_THROWS(parse_fading("rice"));
}
