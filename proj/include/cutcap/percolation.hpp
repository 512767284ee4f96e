#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cutcap/errors.hpp"
#include "cutcap/ppp.hpp"
#include "cutcap/stats.hpp"

// Continuum (Gilbert/Boolean) percolation experiments: occupied crossings of
// annuli, vacant-loop probability, decay of the origin-to-box connection
// probability, and bisection estimation of the critical radius.
//
// Boundary-touching convention used throughout: a node "reaches" a curve if
// it is within x/2 of it, matching occupied disks of radius x/2 around each
// node. Point sampling is dilated by x beyond the experiment region so edges
// crossing the region boundary are kept.
namespace cutcap::perc {

struct GilbertGraph {
  PointSet points;
  double connection_distance = 1.0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> adjacency;  // i < j
};

// Grid-bucketed neighbor search; edge iff dist <= x (closed ball).
std::vector<std::pair<std::uint32_t, std::uint32_t>> radius_edges(
    const std::vector<Vec2>& pts, double x);

GilbertGraph build_gilbert_graph(PointSet points, double connection_distance);

struct DisjointSets {
  explicit DisjointSets(std::uint32_t n) : parent(n) {
    for (std::uint32_t i = 0; i < n; ++i) parent[i] = i;
  }
  std::uint32_t find(std::uint32_t a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[a] = b;
  }
  std::vector<std::uint32_t> parent;
};

// True iff one component touches both circles (centered on the point-set
// region center) within x/2.
bool has_occupied_crossing(GilbertGraph& g, double inner_radius,
                           double outer_radius);

struct CrossingExperiment {
  double nu = 1.0;  // nodes/m^2
  double R = 1.0;   // inner radius, m
  double m = 1.0;   // annulus width, m
  double x = 1.0;   // connection distance, m
  std::uint64_t trials = 1;

  void validate() const {
    if (!(nu >= 0.0)) throw validation_error("nu must be >= 0");
    if (!(R > 0.0)) throw validation_error("R must be > 0");
    if (!(m > 0.0)) throw validation_error("m must be > 0");
    if (!(x > 0.0)) throw validation_error("x must be > 0");
    if (trials < 1) throw validation_error("trials must be >= 1");
  }
};

ProbEstimate occupied_crossing_probability(const CrossingExperiment& exp,
                                           std::uint64_t seed);

// 1 - occupied_crossing_probability, exactly, per trial batch.
ProbEstimate vacant_loop_probability(const CrossingExperiment& exp,
                                     std::uint64_t seed);

// Probability that the component of a point planted at the origin reaches the
// boundary of [-m, m]^2 (some non-origin component member has
// L-infinity norm >= m - x/2). Supercritical x (x sqrt(nu) >= d) sets a
// warning flag instead of failing.
ProbEstimate origin_to_box_probability(double nu, double x, double m,
                                       std::uint64_t trials, std::uint64_t seed,
                                       double d = 1.198);

// Left-right occupied crossing of [0, side]^2 with points sampled inside the
// box and touch bands of width x/2 at both vertical edges.
bool box_crossing_trial(double nu, double side, double x, std::uint64_t seed);

struct ThresholdScanPoint {
  double x_scaled = 0.0;
  double crossing_prob = 0.0;
  double std_err = 0.0;
  std::uint64_t trials = 0;
};

// Bisection on the connection distance for crossing probability 0.5 inside
// the bracket x sqrt(nu) in [0.5, 2.0]; returns x_c * sqrt(nu). tol is in
// meters of connection distance. Scan points are appended when given.
double estimate_critical_radius(double nu, double box_side, std::uint64_t trials,
                                double tol, std::uint64_t seed,
                                std::vector<ThresholdScanPoint>* scan = nullptr);

// Calibrated default annulus width for vacant-loop runs:
// (delta / sqrt(nu)) * log(R sqrt(nu)) with delta = 14.
double default_loop_width(double nu, double R);

}  // namespace cutcap::perc
