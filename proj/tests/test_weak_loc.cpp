#include <cmath>

#include <doctest.h>

#include "spinflow/weak_loc.hpp"

using namespace spinflow;

namespace {

WLParams base_params(int dim, int twice_s) {
  WLParams p;
  p.dim = dim;
  p.D0 = 1.0;
  p.dos_nu = 1.0;
  p.ell_el = 1e-2;
  p.twice_s = twice_s;
  return p;
}

}  // namespace

TEST_SUITE("weak_loc") {

TEST_CASE("channel weights") {
  SUBCASE("electrons: w0 = -1/2, w1 = 3/2, sum = 1") {
    const auto w = channel_weights(TwiceJ(1));
    REQUIRE(w.size() == 2);
    CHECK(w[0] == -0.5);
    CHECK(w[1] == 1.5);
    CHECK(w[0] + w[1] == 1.0);
  }
  SUBCASE("spin 1: {1/3, -1, 5/3} with alternating signs") {
    const auto w = channel_weights(TwiceJ(2));
    REQUIRE(w.size() == 3);
    CHECK(w[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(w[1] == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(w[2] == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
    for (std::size_t k = 0; k + 1 < w.size(); ++k) CHECK(w[k] * w[k + 1] < 0);
  }
  SUBCASE("spin-less carriers have a single unit channel") {
    const auto w = channel_weights(TwiceJ(0));
    REQUIRE(w.size() == 1);
    CHECK(w[0] == 1.0);
  }
}

TEST_CASE("coherence times") {
  SUBCASE("electrons: tau_c = {tau_sf/2, 3 tau_sf/2} exactly") {
    const auto tc = coherence_times(TwiceJ(1), 2.0);
    REQUIRE(tc.size() == 2);
    CHECK(tc[0] == 1.0);
    CHECK(tc[1] == 3.0);
  }
  SUBCASE("no spin flips, no dephasing") {
    const auto tc = coherence_times(TwiceJ(2), kInfiniteTime);
    for (double t : tc) CHECK(std::isinf(t));
  }
  SUBCASE("the stretched channel K = 2s keeps a positive rate for all s") {
    for (int ts = 1; ts <= 40; ++ts) {
      const auto tc = coherence_times(TwiceJ(ts), 1.0);
      CHECK(tc.back() > 0.0);
      CHECK(std::isfinite(tc.back()));
      // 1/tau_c(2s) = 2(1 - 2s(2s+1)/(4s(s+1))) = 1/(s+1) in units of 1/tau_sf.
      const double s = 0.5 * ts;
      CHECK(1.0 / tc.back() == doctest::Approx(1.0 / (s + 1.0)).epsilon(1e-13));
    }
  }
}

TEST_CASE("closed form and quadrature agree over a wide parameter grid") {
  for (int dim : {1, 2, 3}) {
    for (double ell : {1e-3, 1.0, 1e3}) {
      for (double lphi_over_ell : {1e1, 1e3, 1e6}) {
        for (double tau_sf : {1e-3, 1.0, 1e3}) {
          WLParams p = base_params(dim, 1);
          p.ell_el = ell;
          p.L_phi = lphi_over_ell * ell;
          p.tau_sf = tau_sf;
          const WLResult r = wl_correction(p);
          CHECK(std::abs(r.delta_D_over_D0 - r.quadrature_total) <=
                1e-8 * std::abs(r.delta_D_over_D0));
          // Channel decomposition sums to the total exactly.
          double sum = 0.0;
          for (const auto& c : r.per_channel) sum += c.contribution;
          CHECK(std::abs(sum - r.delta_D_over_D0) <= 1e-14 * std::abs(sum));
        }
      }
    }
  }
}

TEST_CASE("pure weak localization is negative") {
  for (int dim : {1, 2, 3}) {
    WLParams p = base_params(dim, 0);
    p.L_phi = 10.0;
    const WLResult r = wl_correction(p);
    CHECK(r.delta_D_over_D0 < 0.0);
  }
}

TEST_CASE("d = 2 spin-less correction grows as ln(L_phi/ell)") {
  WLParams p = base_params(2, 0);
  auto total = [&](double lphi) {
    WLParams q = p;
    q.L_phi = lphi;
    return wl_correction(q).delta_D_over_D0;
  };
  const double f1 = total(1.0), f2 = total(10.0), f3 = total(100.0);
  const double slope12 = (f2 - f1) / std::log(10.0);
  const double slope23 = (f3 - f2) / std::log(10.0);
  CHECK(slope23 == doctest::Approx(slope12).epsilon(0.01));
  // Analytic slope -2/(4 pi^2 nu D0) per unit ln L_phi.
  CHECK(slope23 ==
        doctest::Approx(-2.0 / (4.0 * M_PI * M_PI * p.dos_nu * p.D0))
            .epsilon(0.01));
}

TEST_CASE("electron channels in d = 3 with spin-flip dephasing only") {
  WLParams p = base_params(3, 1);
  p.tau_sf = 5.0;
  const WLResult r = wl_correction(p);
  REQUIRE(r.per_channel.size() == 2);
  CHECK(r.per_channel[0].weight == -0.5);
  // The singlet enters with negative weight, so its contribution to Delta D
  // is positive (antilocalizing); the triplet dominates and the total stays
  // negative at weak dephasing.
  CHECK(r.per_channel[0].contribution > 0.0);
  CHECK(r.per_channel[1].contribution < 0.0);
  CHECK(std::isfinite(r.delta_D_over_D0));
  CHECK(r.delta_D_over_D0 < 0.0);
}

TEST_CASE("s = 0 with tau_sf -> infinity matches the spin-less formula") {
  WLParams p = base_params(2, 0);
  p.L_phi = 37.0;
  const WLResult r = wl_correction(p);
  // Single channel, w = 1, m = D0/L_phi^2:
  // -(1/(pi nu)) (1/(4 pi D0)) ln((D q_max^2 + m)/m).
  const double m = p.D0 / (p.L_phi * p.L_phi);
  const double qmax = 1.0 / p.ell_el;
  const double expected = -1.0 / (M_PI * p.dos_nu) / (4.0 * M_PI * p.D0) *
                          std::log((p.D0 * qmax * qmax + m) / m);
  CHECK(r.delta_D_over_D0 == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("stronger spin-flip dephasing suppresses the correction") {
  for (int dim : {2, 3}) {
    WLParams p = base_params(dim, 1);
    double previous = 0.0;
    bool first = true;
    // tau_sf decreasing: |Delta D| must decrease monotonically.
    for (double tau_sf : {1e3, 1e2, 1e1, 1.0, 1e-1, 1e-2}) {
      p.tau_sf = tau_sf;
      const double magnitude = std::abs(wl_correction(p).delta_D_over_D0);
      if (!first) CHECK(magnitude < previous);
      previous = magnitude;
      first = false;
    }
  }
}

TEST_CASE("system size regularizes the infrared in low dimensions") {
  WLParams p = base_params(2, 0);
  p.L_sys = 50.0;
  const WLResult r = wl_correction(p);
  CHECK(std::isfinite(r.delta_D_over_D0));
  // d = 3 needs no infrared cutoff at all.
  WLParams p3 = base_params(3, 0);
  CHECK(std::isfinite(wl_correction(p3).delta_D_over_D0));
}

TEST_CASE("divergent configurations are rejected with a named cutoff") {
  for (int dim : {1, 2}) {
    WLParams p = base_params(dim, 0);
    try {
      wl_correction(p);
      FAIL("expected divergence error");
    } catch (const InvalidInput& err) {
      const std::string msg = err.what();
      CHECK(msg.find("diverges") != std::string::npos);
      CHECK(msg.find("L_phi") != std::string::npos);
      CHECK(msg.find("L_sys") != std::string::npos);
    }
  }
}

TEST_CASE("parameter validation") {
  WLParams p = base_params(4, 0);
  CHECK_THROWS_AS(wl_correction(p), InvalidInput);
  p = base_params(2, 0);
  p.L_phi = p.ell_el / 2.0;
  CHECK_THROWS_AS(wl_correction(p), InvalidInput);
  p = base_params(2, 0);
  p.D0 = -1.0;
  CHECK_THROWS_AS(wl_correction(p), InvalidInput);
}

}  // TEST_SUITE
