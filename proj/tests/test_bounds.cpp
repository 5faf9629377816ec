#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "redblue/bounds.hpp"

using namespace redblue;

TEST_CASE("point count bound formulas") {
  const auto b1 = bounds::point_count_bound(1, 10.0);
  CHECK(b1.volume_ratio == doctest::Approx(33.8513750128653772).epsilon(1e-12));
  CHECK(b1.simplified == doctest::Approx(40.0).epsilon(1e-12));

  const auto b2 = bounds::point_count_bound(2, 4.0);
  CHECK(b2.simplified == doctest::Approx(512.0).epsilon(1e-12));

  for (int n = 1; n <= 20; ++n) {
    for (double period : {3.0, 10.0, 37.0, 100.0}) {
      const auto b = bounds::point_count_bound(n, period);
      CHECK(b.volume_ratio < b.simplified);
      CHECK(std::isfinite(b.simplified));
    }
  }
}

TEST_CASE("sign pattern bound") {
  CHECK(bounds::sign_pattern_bound(4.0, 2, 1) == doctest::Approx(10000.0).epsilon(1e-12));
  CHECK(bounds::sign_pattern_bound(2.0, 2, 1) == doctest::Approx(2500.0).epsilon(1e-12));
  CHECK_THROWS_AS(bounds::sign_pattern_bound(1.5, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(bounds::sign_pattern_bound(4.0, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(bounds::sign_pattern_bound(4.0, 2, 0), std::invalid_argument);
  CHECK(std::exp(bounds::log_sign_pattern_bound(4.0, 2, 1)) ==
        doctest::Approx(10000.0).epsilon(1e-9));
}

TEST_CASE("bad event count bound at the worked example") {
  // kprime = ceil(2e8 / 11^2)
  const double kprime = 1652893.0;
  const auto e = bounds::bad_event_count_bound(2, 4.0, kprime, 2);
  CHECK(e.log_relaxed ==
        doctest::Approx(145.840485194749445 + 93.2354002179514233).epsilon(1e-12));
  CHECK(e.log_intermediate == doctest::Approx(168.556357244157321).epsilon(1e-12));
  CHECK(e.log_intermediate <= e.log_relaxed);
}

TEST_CASE("intermediate sign-pattern form never exceeds the relaxed bound") {
  for (int n = 1; n <= 6; ++n) {
    for (double period : {2.5, 4.0, 16.0, 256.0}) {
      for (double kprime : {1.0, 10.0, 1e4, 1e8, 1e12}) {
        const auto e = bounds::bad_event_count_bound(n, period, kprime, n);
        CHECK(e.log_intermediate <= e.log_relaxed + 1e-9);
      }
    }
  }
}

TEST_CASE("bad event count bound is monotone in period and kprime") {
  double prev = -1e300;
  for (double kprime : {1.0, 5.0, 125.0, 3e6, 1e10}) {
    const auto e = bounds::bad_event_count_bound(3, 8.0, kprime, 3);
    CHECK(e.log_relaxed >= prev);
    prev = e.log_relaxed;
  }
  prev = -1e300;
  for (double period : {2.5, 3.0, 8.0, 64.0, 1e4}) {
    const auto e = bounds::bad_event_count_bound(3, period, 100.0, 3);
    CHECK(e.log_relaxed >= prev);
    prev = e.log_relaxed;
  }
}

TEST_CASE("feasibility at the worked example n=2 R=4 K=2e8") {
  const auto r = bounds::theorem_feasibility(2, 4.0, 2e8);
  CHECK(r.feasible);
  CHECK(r.sample_probability == doctest::Approx(0.0025).epsilon(1e-15));
  CHECK(r.kprime == 1652893.0);
  CHECK(r.variable_count == 6);
  CHECK(r.margin_a == doctest::Approx(887.217639805250554).epsilon(1e-9));
  CHECK(r.margin_b == doctest::Approx(939.822724782048576).epsilon(1e-9));
  CHECK(r.log_single_event_bound == doctest::Approx(-2066.11625).epsilon(1e-12));
  // union bound actually closes: event count bound + single event bound < 0
  CHECK(r.log_event_count_bound + r.log_single_event_bound < 0.0);
}

TEST_CASE("tiny K is infeasible") {
  const auto r = bounds::theorem_feasibility(2, 4.0, 1.0);
  CHECK_FALSE(r.feasible);
  CHECK(r.kprime == 1.0);
}

TEST_CASE("feasibility is monotone in K beyond the crossover") {
  for (int n = 1; n <= 3; ++n) {
    bool seen_feasible = false;
    for (double k = 1.0; k <= 1e12; k *= 2.0) {
      const bool f = bounds::theorem_feasibility(n, 4.0, k).feasible;
      if (seen_feasible) CHECK(f);
      seen_feasible = seen_feasible || f;
    }
    CHECK(seen_feasible);
  }
}

TEST_CASE("single event bound is conservative: (1-x/2)^k < exp(-xk/2)") {
  for (int n = 1; n <= 6; ++n) {
    const double x = std::pow(20.0, -n);
    for (double kprime : {1.0, 100.0, 1e6}) {
      CHECK(kprime * std::log1p(-x / 2.0) < -x * kprime / 2.0);
    }
  }
}

TEST_CASE("minimal feasible K for n=1 R=4") {
  const double k_star = bounds::min_k_for_feasibility(1, 4.0);
  CHECK(k_star == 20098.0);  // pinned by an exponential+binary search oracle
  CHECK(bounds::theorem_feasibility(1, 4.0, k_star).feasible);
  CHECK_FALSE(bounds::theorem_feasibility(1, 4.0, k_star - 1.0).feasible);
}

TEST_CASE("minimal feasible K is nondecreasing in period") {
  double prev = 0.0;
  for (double period : {2.5, 4.0, 16.0, 256.0}) {
    const double k = bounds::min_k_for_feasibility(1, period);
    CHECK(k >= prev);
    prev = k;
  }
}

TEST_CASE("collinear target set feasibility") {
  const auto big = bounds::ell_m_feasibility(2, 1e10);
  CHECK(big.hypothesis_holds);  // 1e10 > 1e8 * log2(1e10) ~ 3.32e9
  CHECK(big.report.feasible);

  const auto marginal = bounds::ell_m_feasibility(1, 1e5);
  CHECK_FALSE(marginal.hypothesis_holds);  // 1e5 < 1e4 * log2(1e5) ~ 1.66e5

  for (int n = 2; n <= 10; ++n) {
    const auto r = bounds::ell_m_feasibility(n, std::pow(10.0, 5.0 * n));
    CHECK(r.hypothesis_holds);
  }
  CHECK_FALSE(bounds::ell_m_feasibility(1, std::pow(10.0, 5.0)).hypothesis_holds);
}
