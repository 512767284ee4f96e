#pragma once

#include <cmath>
#include <cstdint>
#include <ostream>
#include <vector>

#include "cutcap/errors.hpp"

namespace cutcap {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline double dist2(const Vec2& a, const Vec2& b) {
  const double dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double dist(const Vec2& a, const Vec2& b) { return std::sqrt(dist2(a, b)); }

inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }

// Planar region: disk or annulus (a disk is an annulus with inner radius 0).
class Region {
 public:
  enum class Kind { disk, annulus };

  static Region disk(Vec2 center, double radius);
  static Region annulus(Vec2 center, double inner_radius, double outer_radius);

  Kind kind() const { return kind_; }
  Vec2 center() const { return center_; }
  double inner_radius() const { return inner_; }
  double outer_radius() const { return outer_; }

  double area() const;
  bool contains(const Vec2& p) const;  // closed region

 private:
  Region(Kind kind, Vec2 center, double inner, double outer);

  Kind kind_;
  Vec2 center_;
  double inner_;
  double outer_;
};

struct PointSet {
  std::vector<Vec2> points;
  Region source_region;
  double intensity = 0.0;  // nodes per square meter
};

// Homogeneous Poisson point process: count ~ Poisson(intensity * area),
// positions uniform in the region. Deterministic for a fixed seed.
PointSet sample_ppp(const Region& region, double intensity, std::uint64_t seed);

// Removes points whose radial distance from the region center lies in
// (R - width, R]; everything else is untouched, order preserved.
PointSet enforce_empty_strip(const PointSet& ps, double R, double width);

// CSV dump: header "x,y", 17 significant digits.
void write_points_csv(const PointSet& ps, std::ostream& out);

}  // namespace cutcap
