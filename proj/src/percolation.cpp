#include "cutcap/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cutcap/rng.hpp"

namespace cutcap::perc {

std::vector<std::pair<std::uint32_t, std::uint32_t>> radius_edges(
    const std::vector<Vec2>& pts, double x) {
  if (!(x > 0.0)) throw validation_error("connection distance must be > 0");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  const std::uint32_t n = static_cast<std::uint32_t>(pts.size());
  if (n < 2) return edges;

  double minx = pts[0].x, miny = pts[0].y, maxx = pts[0].x, maxy = pts[0].y;
  for (const Vec2& p : pts) {
    minx = std::min(minx, p.x);
    miny = std::min(miny, p.y);
    maxx = std::max(maxx, p.x);
    maxy = std::max(maxy, p.y);
  }
  const std::uint32_t nx =
      std::max<std::uint32_t>(1, static_cast<std::uint32_t>((maxx - minx) / x) + 1);
  const std::uint32_t ny =
      std::max<std::uint32_t>(1, static_cast<std::uint32_t>((maxy - miny) / x) + 1);
  auto cell_of = [&](const Vec2& p) {
    std::uint32_t ix = static_cast<std::uint32_t>((p.x - minx) / x);
    std::uint32_t iy = static_cast<std::uint32_t>((p.y - miny) / x);
    ix = std::min(ix, nx - 1);
    iy = std::min(iy, ny - 1);
    return iy * nx + ix;
  };

  // Two-pass CSR bucketing by grid cell.
  std::vector<std::uint32_t> start(static_cast<std::size_t>(nx) * ny + 1, 0);
  for (const Vec2& p : pts) ++start[cell_of(p) + 1];
  for (std::size_t c = 1; c < start.size(); ++c) start[c] += start[c - 1];
  std::vector<std::uint32_t> bucket(n);
  {
    std::vector<std::uint32_t> cursor(start.begin(), start.end() - 1);
    for (std::uint32_t i = 0; i < n; ++i) bucket[cursor[cell_of(pts[i])]++] = i;
  }

  const double x2 = x * x;
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::uint32_t ci = cell_of(pts[i]);
    const std::uint32_t cx = ci % nx, cy = ci / nx;
    const std::uint32_t x_lo = cx == 0 ? 0 : cx - 1;
    const std::uint32_t x_hi = std::min(cx + 1, nx - 1);
    const std::uint32_t y_lo = cy == 0 ? 0 : cy - 1;
    const std::uint32_t y_hi = std::min(cy + 1, ny - 1);
    for (std::uint32_t gy = y_lo; gy <= y_hi; ++gy)
      for (std::uint32_t gx = x_lo; gx <= x_hi; ++gx) {
        const std::uint32_t c = gy * nx + gx;
        for (std::uint32_t s = start[c]; s < start[c + 1]; ++s) {
          const std::uint32_t j = bucket[s];
          if (j > i && dist2(pts[i], pts[j]) <= x2) edges.emplace_back(i, j);
        }
      }
  }
  return edges;
}

GilbertGraph build_gilbert_graph(PointSet points, double connection_distance) {
  auto edges = radius_edges(points.points, connection_distance);
  return GilbertGraph{std::move(points), connection_distance, std::move(edges)};
}

bool has_occupied_crossing(GilbertGraph& g, double inner_radius,
                           double outer_radius) {
  if (!(inner_radius >= 0.0) || !(outer_radius > inner_radius))
    throw validation_error("crossing requires 0 <= inner_radius < outer_radius");
  const std::uint32_t n = static_cast<std::uint32_t>(g.points.points.size());
  if (n == 0) return false;
  DisjointSets ds(n);
  for (const auto& [a, b] : g.adjacency) ds.unite(a, b);
  const Vec2 c = g.points.source_region.center();
  const double band = g.connection_distance / 2.0;
  std::vector<unsigned char> hits_inner(n, 0), hits_outer(n, 0);
  for (std::uint32_t i = 0; i < n; ++i) {
    const double rho = dist(g.points.points[i], c);
    const std::uint32_t root = ds.find(i);
    if (std::fabs(rho - inner_radius) <= band) hits_inner[root] = 1;
    if (std::fabs(rho - outer_radius) <= band) hits_outer[root] = 1;
  }
  for (std::uint32_t r = 0; r < n; ++r)
    if (hits_inner[r] && hits_outer[r]) return true;
  return false;
}

ProbEstimate occupied_crossing_probability(const CrossingExperiment& exp,
                                           std::uint64_t seed) {
  exp.validate();
  const Region sampling =
      Region::annulus({0.0, 0.0}, std::max(0.0, exp.R - exp.x),
                      exp.R + exp.m + exp.x);
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < exp.trials; ++t) {
    PointSet ps = sample_ppp(sampling, exp.nu, seed_for(seed, t));
    GilbertGraph g = build_gilbert_graph(std::move(ps), exp.x);
    if (has_occupied_crossing(g, exp.R, exp.R + exp.m)) ++hits;
  }
  return proportion_estimate(hits, exp.trials);
}

ProbEstimate vacant_loop_probability(const CrossingExperiment& exp,
                                     std::uint64_t seed) {
  ProbEstimate occ = occupied_crossing_probability(exp, seed);
  occ.value = 1.0 - occ.value;
  return occ;
}

ProbEstimate origin_to_box_probability(double nu, double x, double m,
                                       std::uint64_t trials, std::uint64_t seed,
                                       double d) {
  if (!(nu >= 0.0)) throw validation_error("nu must be >= 0");
  if (!(x > 0.0)) throw validation_error("x must be > 0");
  if (!(m > x)) throw validation_error("box half-side m must exceed x");
  if (trials < 1) throw validation_error("trials must be >= 1");
  const double half = m + x;  // sampling box dilated by x
  const double area = 4.0 * half * half;
  const double reach = m - x / 2.0;
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng(seed_for(seed, t));
    const std::uint64_t count = rng.poisson(nu * area);
    std::vector<Vec2> pts;
    pts.reserve(count + 1);
    pts.push_back({0.0, 0.0});
    for (std::uint64_t k = 0; k < count; ++k)
      pts.push_back({rng.uniform(-half, half), rng.uniform(-half, half)});
    const auto edges = radius_edges(pts, x);
    DisjointSets ds(static_cast<std::uint32_t>(pts.size()));
    for (const auto& [a, b] : edges) ds.unite(a, b);
    const std::uint32_t origin_root = ds.find(0);
    for (std::uint32_t i = 1; i < pts.size(); ++i) {
      if (ds.find(i) != origin_root) continue;
      if (std::max(std::fabs(pts[i].x), std::fabs(pts[i].y)) >= reach) {
        ++hits;
        break;
      }
    }
  }
  ProbEstimate est = proportion_estimate(hits, trials);
  est.supercritical_warning = x * std::sqrt(nu) >= d;
  return est;
}

bool box_crossing_trial(double nu, double side, double x, std::uint64_t seed) {
  if (!(nu >= 0.0)) throw validation_error("nu must be >= 0");
  if (!(side > x) || !(x > 0.0))
    throw validation_error("need 0 < x < side");
  Rng rng(seed);
  const std::uint64_t count = rng.poisson(nu * side * side);
  if (count < 2) return false;
  std::vector<Vec2> pts;
  pts.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k)
    pts.push_back({rng.uniform(0.0, side), rng.uniform(0.0, side)});
  const auto edges = radius_edges(pts, x);
  const std::uint32_t n = static_cast<std::uint32_t>(pts.size());
  DisjointSets ds(n);
  for (const auto& [a, b] : edges) ds.unite(a, b);
  const double band = x / 2.0;
  std::vector<unsigned char> left(n, 0), right(n, 0);
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::uint32_t root = ds.find(i);
    if (pts[i].x <= band) left[root] = 1;
    if (pts[i].x >= side - band) right[root] = 1;
  }
  for (std::uint32_t r = 0; r < n; ++r)
    if (left[r] && right[r]) return true;
  return false;
}

namespace {

ProbEstimate crossing_prob_at(double nu, double box_side, double x,
                              std::uint64_t trials, std::uint64_t eval_seed) {
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < trials; ++t)
    if (box_crossing_trial(nu, box_side, x, seed_for(eval_seed, t))) ++hits;
  return proportion_estimate(hits, trials);
}

}  // namespace

double estimate_critical_radius(double nu, double box_side, std::uint64_t trials,
                                double tol, std::uint64_t seed,
                                std::vector<ThresholdScanPoint>* scan) {
  if (!(nu > 0.0)) throw validation_error("nu must be > 0");
  if (!(box_side * std::sqrt(nu) >= 50.0))
    throw validation_error("box_side * sqrt(nu) must be >= 50");
  if (trials < 1) throw validation_error("trials must be >= 1");
  if (!(tol > 0.0)) throw validation_error("tol must be > 0");

  const double root_nu = std::sqrt(nu);
  double lo = 0.5 / root_nu, hi = 2.0 / root_nu;
  std::uint64_t eval_index = 0;
  auto eval = [&](double x) {
    const ProbEstimate p =
        crossing_prob_at(nu, box_side, x, trials, seed_for(seed, eval_index++));
    if (scan) scan->push_back({x * root_nu, p.value, p.std_error, trials});
    return p.value;
  };

  const double p_lo = eval(lo);
  const double p_hi = eval(hi);
  if (!(p_lo < 0.5) || !(p_hi > 0.5))
    throw validation_error(
        "bracket x*sqrt(nu) in [0.5, 2.0] does not straddle crossing "
        "probability 0.5 (got " +
        std::to_string(p_lo) + " and " + std::to_string(p_hi) + ")");

  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (eval(mid) < 0.5)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi) * root_nu;
}

double default_loop_width(double nu, double R) {
  if (!(nu > 0.0) || !(R > 0.0)) throw validation_error("need nu > 0 and R > 0");
  const double scaled = R * std::sqrt(nu);
  if (!(scaled > 1.0))
    throw validation_error("R * sqrt(nu) must exceed 1 for the default width");
  return 14.0 / std::sqrt(nu) * std::log(scaled);
}

}  // namespace cutcap::perc
