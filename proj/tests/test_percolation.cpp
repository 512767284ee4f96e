#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "cutcap/percolation.hpp"
#include "cutcap/rng.hpp"
#include "oracle_helpers.hpp"

using namespace cutcap;
using perc::CrossingExperiment;

namespace {

std::vector<Vec2> random_cloud(Rng& rng, int n, double extent) {
  std::vector<Vec2> pts(n);
  for (auto& p : pts) p = {rng.uniform(-extent, extent), rng.uniform(-extent, extent)};
  return pts;
}

}  // namespace

TEST_CASE("grid-bucketed edges match the quadratic reference") {
  Rng rng(808);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 2 + static_cast<int>(rng.uniform() * 78);
    const double extent = rng.uniform(0.5, 8.0);
    const double x = rng.uniform(0.1, 3.0);
    const auto pts = random_cloud(rng, n, extent);
    auto got = perc::radius_edges(pts, x);
    auto want = oracle::brute_edges(pts, x);
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    REQUIRE(got.size() == want.size());
    CHECK(got == want);
  }
}

TEST_CASE("edge predicate uses the closed ball") {
  const std::vector<Vec2> pts{{0, 0}, {1, 0}, {2.0000001, 0}};
  const auto e = perc::radius_edges(pts, 1.0);
  REQUIRE(e.size() == 1);
  CHECK(e[0].first == 0);
  CHECK(e[0].second == 1);
  CHECK(perc::radius_edges({}, 1.0).empty());
  CHECK(perc::radius_edges({{3, 4}}, 1.0).empty());
  CHECK_THROWS_AS(perc::radius_edges(pts, 0.0), validation_error);
}

TEST_CASE("disjoint sets unite and find") {
  perc::DisjointSets ds(5);
  CHECK(ds.find(0) != ds.find(4));
  ds.unite(0, 1);
  ds.unite(3, 4);
  CHECK(ds.find(0) == ds.find(1));
  CHECK(ds.find(3) == ds.find(4));
  CHECK(ds.find(1) != ds.find(3));
  ds.unite(1, 3);
  CHECK(ds.find(0) == ds.find(4));
}

TEST_CASE("occupied crossing detection matches graph search") {
  Rng rng(909);
  for (int rep = 0; rep < 100; ++rep) {
    const double inner = rng.uniform(1.0, 3.0);
    const double outer = inner + rng.uniform(1.0, 4.0);
    const double x = rng.uniform(0.4, 1.6);
    const int n = 5 + static_cast<int>(rng.uniform() * 70);
    std::vector<Vec2> pts(n);
    for (auto& p : pts) {
      const double rho = rng.uniform(std::max(0.0, inner - x), outer + x);
      const double phi = rng.uniform(0.0, 2.0 * M_PI);
      p = {rho * std::cos(phi), rho * std::sin(phi)};
    }
    auto graph = perc::build_gilbert_graph(
        PointSet{pts, Region::annulus({0, 0}, std::max(0.0, inner - x), outer + x),
                 1.0},
        x);
    const bool got = perc::has_occupied_crossing(graph, inner, outer);

    std::vector<std::uint32_t> sources, targets;
    for (std::uint32_t i = 0; i < pts.size(); ++i) {
      const double rho = norm(pts[i]);
      if (std::fabs(rho - inner) <= x / 2) sources.push_back(i);
      if (std::fabs(rho - outer) <= x / 2) targets.push_back(i);
    }
    const bool want = oracle::bfs_reaches(static_cast<std::uint32_t>(pts.size()),
                                          graph.adjacency, sources, targets);
    CHECK(got == want);
  }
}

TEST_CASE("crossing requires inner below outer") {
  auto graph = perc::build_gilbert_graph(
      PointSet{{{1, 0}}, Region::disk({0, 0}, 2.0), 1.0}, 0.5);
  CHECK_THROWS_AS(perc::has_occupied_crossing(graph, 3.0, 2.0), validation_error);
  CHECK_THROWS_AS(perc::has_occupied_crossing(graph, -1.0, 2.0), validation_error);
}

TEST_CASE("box crossing is monotone in the connection distance") {
  // sampling ignores x, so the same seed gives nested graphs
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    bool prev = false;
    for (const double x : {0.8, 1.0, 1.2, 1.4}) {
      const bool cur = perc::box_crossing_trial(1.0, 25.0, x, seed);
      if (prev) CHECK(cur);
      prev = cur;
    }
  }
  CHECK_THROWS_AS(perc::box_crossing_trial(1.0, 25.0, 0.0, 1), validation_error);
  CHECK_THROWS_AS(perc::box_crossing_trial(1.0, 25.0, 30.0, 1), validation_error);
}

TEST_CASE("denser processes cross more often") {
  std::uint64_t bare = 0, dense = 0;
  const int trials = 100;
  for (int t = 0; t < trials; ++t) {
    if (perc::box_crossing_trial(0.6, 60.0, 1.2, 1000 + t)) ++bare;
    if (perc::box_crossing_trial(1.4, 60.0, 1.2, 2000 + t)) ++dense;
  }
  CHECK(dense > bare + 20);
  CHECK(dense >= 90);
  CHECK(bare <= 40);
}

TEST_CASE("annulus crossing probability at regime extremes") {
  CrossingExperiment exp;
  exp.nu = 1.0;
  exp.R = 20.0;
  exp.m = 10.0;
  exp.trials = 60;

  exp.x = 2.2;  // far supercritical
  const auto hi = perc::occupied_crossing_probability(exp, 4);
  CHECK(hi.value >= 0.95);
  CHECK(hi.trials == 60);

  exp.x = 0.5;  // far subcritical
  const auto lo = perc::occupied_crossing_probability(exp, 4);
  CHECK(lo.value <= 0.05);
}

TEST_CASE("vacant and occupied probabilities sum to one exactly") {
  CrossingExperiment exp;
  exp.nu = 1.0;
  exp.R = 15.0;
  exp.m = 8.0;
  exp.x = 1.1;
  exp.trials = 40;
  const auto occ = perc::occupied_crossing_probability(exp, 77);
  const auto vac = perc::vacant_loop_probability(exp, 77);
  CHECK(vac.value == 1.0 - occ.value);
  CHECK(occ.std_error == vac.std_error);
  CHECK(occ.trials == vac.trials);
}

TEST_CASE("origin connection probability decays with box size") {
  const double x = 0.9 * 1.198;
  const auto near = perc::origin_to_box_probability(1.0, x, 2.0, 300, 5);
  const auto far = perc::origin_to_box_probability(1.0, x, 10.0, 300, 5);
  CHECK_FALSE(near.supercritical_warning);
  CHECK(near.value > far.value + 3.0 * std::hypot(near.std_error, far.std_error));

  const auto sup = perc::origin_to_box_probability(1.0, 1.3, 4.0, 20, 5);
  CHECK(sup.supercritical_warning);

  CHECK_THROWS_AS(perc::origin_to_box_probability(1.0, 2.0, 1.5, 10, 1),
                  validation_error);
}

TEST_CASE("critical radius preconditions") {
  CHECK_THROWS_AS(perc::estimate_critical_radius(1.0, 30.0, 10, 0.05, 1),
                  validation_error);
  CHECK_THROWS_AS(perc::estimate_critical_radius(1.0, 200.0, 10, 0.0, 1),
                  validation_error);
  CHECK_THROWS_AS(perc::estimate_critical_radius(0.0, 200.0, 10, 0.05, 1),
                  validation_error);
}

TEST_CASE("critical radius estimate brackets the known threshold") {
  std::vector<perc::ThresholdScanPoint> scan;
  const double d100 = perc::estimate_critical_radius(1.0, 100.0, 150, 0.05, 21, &scan);
  CHECK(d100 > 1.0);
  CHECK(d100 < 1.4);
  CHECK(scan.size() >= 3);  // two bracket probes plus bisection steps
  for (const auto& p : scan) {
    CHECK(p.x_scaled >= 0.5);
    CHECK(p.x_scaled <= 2.0);
    CHECK(p.trials == 150);
  }
  // finite-size bias shrinks with the box
  const double d50 = perc::estimate_critical_radius(1.0, 50.0, 150, 0.05, 21);
  CHECK(std::fabs(d100 - 1.198) <= std::fabs(d50 - 1.198) + 0.05);
}

TEST_CASE("critical radius is scale invariant in x sqrt(nu)") {
  const double got = perc::estimate_critical_radius(4.0, 50.0, 100, 0.02, 13);
  CHECK(got > 1.0);
  CHECK(got < 1.4);
}

TEST_CASE("default loop width calibration") {
  CHECK(perc::default_loop_width(1.0, 200.0) ==
        doctest::Approx(14.0 * std::log(200.0)).epsilon(1e-14));
  CHECK(perc::default_loop_width(4.0, 100.0) ==
        doctest::Approx(7.0 * std::log(200.0)).epsilon(1e-14));
  CHECK_THROWS_AS(perc::default_loop_width(1.0, 1.0), validation_error);
  CHECK_THROWS_AS(perc::default_loop_width(1.0, 0.5), validation_error);
}
