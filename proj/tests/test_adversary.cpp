#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>

#include "oracles.hpp"
#include "redblue/adversary.hpp"

using namespace redblue;

namespace {

std::shared_ptr<const SeparatedSet> certified(int dim, double period,
                                              std::uint64_t seed) {
  return std::make_shared<SeparatedSet>(
      build_maximal_separated(TorusSpec{dim, period}, 1.0 / 3.0, seed));
}

Coloring sampled(std::shared_ptr<const SeparatedSet> set, double x, std::uint64_t seed) {
  return Coloring::sample(std::move(set), {1.0 / 3.0, x, seed, kDistanceTol});
}

}  // namespace

TEST_CASE("certificate passes on default constructions") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto coloring = sampled(certified(1, 8.0, seed), 0.2, seed);
    const auto cert = red_pair_certificate(coloring);
    CHECK(cert.pass);
    CHECK(cert.failure.empty());
  }
  const auto coloring = sampled(certified(2, 4.0, 1), 0.125, 3);
  CHECK(red_pair_certificate(coloring).pass);
}

TEST_CASE("certificate rejects an S pair planted too close") {
  auto set = certified(1, 10.0, 12);
  // find a second member ~1.2 away from member 0: it exists because cells
  // have radius at most 1/3
  std::uint32_t partner = 0;
  double best = 1e9;
  for (std::uint32_t i = 1; i < set->size(); ++i) {
    const double d = torus_distance(set->point(0), set->point(i), set->spec());
    if (std::abs(d - 1.2) < best) {
      best = std::abs(d - 1.2);
      partner = i;
    }
  }
  std::vector<std::uint8_t> q(set->size(), 0), s(set->size(), 0);
  q[0] = q[partner] = 1;
  s[0] = s[partner] = 1;
  const auto coloring =
      Coloring::from_parts(set, {1.0 / 3.0, 0.5, 0, kDistanceTol}, q, s);
  const auto cert = red_pair_certificate(coloring);
  CHECK_FALSE(cert.pass);
  CHECK(cert.covering_ok);
  CHECK_FALSE(cert.s_separation_ok);
  CHECK(cert.failure.find("apart") != std::string::npos);
}

TEST_CASE("certificate rejects a period too small to separate images") {
  // R = 1.6 < 5/3: images of one cell across periods come closer than 1
  std::vector<std::vector<double>> pts = {{0.0}, {0.4}, {0.8}, {1.2}};
  auto set = std::make_shared<SeparatedSet>(
      SeparatedSet::from_points(TorusSpec{1, 1.6}, 1.0 / 3.0, pts));
  auto cert_cov = verify_covering(*set, 1.0 / 3.0, 1.0 / 12.0);
  REQUIRE(cert_cov.pass);
  set->set_certificate(cert_cov);
  const auto coloring = Coloring::from_parts(
      set, {1.0 / 3.0, 1.0, 0, kDistanceTol}, {1, 1, 1, 1});
  const auto cert = red_pair_certificate(coloring);
  CHECK_FALSE(cert.pass);
  CHECK(cert.covering_ok);
  CHECK_FALSE(cert.period_ok);
}

TEST_CASE("red pair search finds pairs in an everything-red coloring") {
  auto set = certified(1, 8.0, 3);
  std::vector<std::uint8_t> all(set->size(), 1);
  const auto broken =
      Coloring::from_parts(set, {1.0 / 3.0, 1.0, 0, kDistanceTol}, all, all);
  const auto hit = red_pair_search(broken, 10000, 5);
  REQUIRE(hit.has_value());
  CHECK(std::abs(hit->distance - 1.0) <= 1e-9);
  CHECK(broken.color(hit->a) == Color::Red);
  CHECK(broken.color(hit->b) == Color::Red);
}

TEST_CASE("red pair search is empty on an all-blue coloring") {
  const auto coloring = sampled(certified(1, 8.0, 4), 0.0, 1);
  CHECK_FALSE(red_pair_search(coloring, 5000, 2).has_value());
}

TEST_CASE("red pair search respects the certificate") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto coloring = sampled(certified(2, 4.0, 70 + seed), 0.125, seed);
    REQUIRE(red_pair_certificate(coloring).pass);
    CHECK_FALSE(red_pair_search(coloring, 100000, seed).has_value());
  }
}

TEST_CASE("red pair search is deterministic and worker independent") {
  auto set = certified(1, 8.0, 3);
  std::vector<std::uint8_t> all(set->size(), 1);
  const auto broken =
      Coloring::from_parts(set, {1.0 / 3.0, 1.0, 0, kDistanceTol}, all, all);
  const auto one = red_pair_search(broken, 4000, 11, 1);
  const auto four = red_pair_search(broken, 4000, 11, 4);
  REQUIRE(one.has_value());
  REQUIRE(four.has_value());
  CHECK(one->trial == four->trial);
  CHECK(one->a == four->a);
  CHECK(one->b == four->b);
}

TEST_CASE("blue line search finds short runs when red is sparse") {
  const auto coloring = sampled(certified(1, 8.0, 5), 0.2, 2);
  REQUIRE(red_density(coloring, 4000, 1) < 0.5);
  const auto line = blue_line_search(coloring, 2, 10000, 3);
  REQUIRE(line.has_value());
  // the found run re-validates under the color oracle
  for (int i = 0; i < 2; ++i) {
    CHECK(coloring.color(line->point(i)) == Color::Blue);
  }
  double norm = 0.0;
  for (double c : line->direction) norm += c * c;
  CHECK(std::sqrt(norm) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("blue line search succeeds instantly when S is empty") {
  const auto coloring = sampled(certified(1, 8.0, 6), 0.0, 1);
  const auto line = blue_line_search(coloring, 64, 50, 1);
  REQUIRE(line.has_value());
  CHECK(line->trial == 0);
}

TEST_CASE("longest blue run reports the sentinel for an empty S") {
  const auto coloring = sampled(certified(1, 8.0, 7), 0.0, 1);
  const auto run = longest_blue_run(coloring, 100, 1, 512);
  CHECK(run.max_m == 512);
  CHECK(run.unbounded);
}

TEST_CASE("longest blue run is deterministic") {
  const auto coloring = sampled(certified(1, 8.0, 8), 0.25, 9);
  const auto a = longest_blue_run(coloring, 500, 4, 256, 1);
  const auto b = longest_blue_run(coloring, 500, 4, 256, 3);
  CHECK(a.max_m == b.max_m);
  CHECK(a.unbounded == b.unbounded);
}

TEST_CASE("exact 1-D oracle on a single short arc is unbounded") {
  // one red cell [0, 0.4] on a circle of circumference 10: the ten shifted
  // copies cover measure 4 < 10, and integer shifts repeat with period 10
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < 25; ++i) pts.push_back({0.2 + 0.4 * i});
  auto set = std::make_shared<SeparatedSet>(
      SeparatedSet::from_points(TorusSpec{1, 10.0}, 1.0 / 3.0, pts));
  std::vector<std::uint8_t> q(25, 0), s(25, 0);
  q[0] = s[0] = 1;
  const auto coloring =
      Coloring::from_parts(set, {1.0 / 3.0, 0.04, 0, kDistanceTol}, q, s);
  const auto run = exact_blue_runs_1d(coloring);
  CHECK(run.unbounded);
}

TEST_CASE("exact 1-D oracle matches the hand-computed threshold") {
  // red arc [0, 0.6] on circumference 2.5: shifts cover the circle at m = 5,
  // and the complement (1.1, 1.5) still admits a blue run at m = 4
  auto set = std::make_shared<SeparatedSet>(SeparatedSet::from_points(
      TorusSpec{1, 2.5}, 0.5, {{0.3}, {0.9}, {1.5}, {2.2}}));
  std::vector<std::uint8_t> q = {1, 0, 0, 0};
  const auto coloring =
      Coloring::from_parts(set, {0.5, 0.25, 0, kDistanceTol}, q, q);
  const auto run = exact_blue_runs_1d(coloring);
  CHECK_FALSE(run.unbounded);
  CHECK(run.max_m == 4);
}

TEST_CASE("exact 1-D oracle degenerate cases") {
  auto lone = std::make_shared<SeparatedSet>(
      SeparatedSet::from_points(TorusSpec{1, 4.0}, 1.0, {{1.0}}));
  const auto all_red = Coloring::from_parts(lone, {1.0, 1.0, 0, kDistanceTol}, {1});
  const auto run = exact_blue_runs_1d(all_red);
  CHECK(run.max_m == 0);
  CHECK_FALSE(run.unbounded);

  const auto all_blue = Coloring::from_parts(lone, {1.0, 0.0, 0, kDistanceTol}, {0});
  CHECK(exact_blue_runs_1d(all_blue).unbounded);
}

TEST_CASE("Monte Carlo runs never beat the exact 1-D oracle") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto coloring = sampled(certified(1, 8.0, 80 + seed), 0.25, seed);
    const auto exact = exact_blue_runs_1d(coloring);
    const auto mc = longest_blue_run(coloring, 800, seed, 512);
    if (!exact.unbounded) {
      CHECK(mc.max_m <= exact.max_m);
    }
  }
}

TEST_CASE("target set validation") {
  const std::vector<std::vector<double>> too_close = {{0.0}, {0.5}};
  CHECK_THROWS_AS((void)KSet(too_close), std::invalid_argument);
  const auto line = KSet::line(5, 2);
  CHECK(line.size() == 5);
  CHECK(line.dim() == 2);
  CHECK(line.diameter() == doctest::Approx(4.0));
}

TEST_CASE("placement search finds blue copies and validates isometries") {
  const auto coloring = sampled(certified(2, 4.0, 90), 0.125, 7);
  const auto k2 = KSet::line(2, 2);
  const auto placement = blue_placement_search(coloring, k2, 20000, 3);
  const auto line = blue_line_search(coloring, 2, 20000, 3);
  REQUIRE(placement.has_value());
  REQUIRE(line.has_value());
  CHECK(placement->orthogonality_error() <= 1e-10);
  for (const auto& p : placement->apply(k2)) {
    CHECK(coloring.color(p) == Color::Blue);
  }
}

TEST_CASE("placement search succeeds instantly when S is empty") {
  const auto coloring = sampled(certified(2, 4.0, 91), 0.0, 1);
  const auto placement = blue_placement_search(coloring, KSet::line(3, 2), 100, 1);
  REQUIRE(placement.has_value());
  CHECK(placement->trial == 0);
}

TEST_CASE("placement search rejects oversized target sets") {
  const auto coloring = sampled(certified(2, 4.0, 92), 0.125, 1);
  // diameter 4 > R - 1 = 3
  CHECK_THROWS_AS(blue_placement_search(coloring, KSet::line(5, 2), 100, 1),
                  std::invalid_argument);
}
