#include "cutcap/ppp.hpp"

#include <cmath>

#include "cutcap/io.hpp"
#include "cutcap/rng.hpp"

namespace cutcap {

Region::Region(Kind kind, Vec2 center, double inner, double outer)
    : kind_(kind), center_(center), inner_(inner), outer_(outer) {
  if (!(inner >= 0.0) || !(outer >= 0.0))
    throw validation_error("region radii must be nonnegative");
  if (kind == Kind::annulus && !(inner < outer))
    throw validation_error("annulus requires inner_radius < outer_radius");
  if (!(area() > 0.0)) throw validation_error("region must have positive area");
}

Region Region::disk(Vec2 center, double radius) {
  return Region(Kind::disk, center, 0.0, radius);
}

Region Region::annulus(Vec2 center, double inner_radius, double outer_radius) {
  return Region(Kind::annulus, center, inner_radius, outer_radius);
}

double Region::area() const {
  return M_PI * (outer_ * outer_ - inner_ * inner_);
}

bool Region::contains(const Vec2& p) const {
  const double r = dist(p, center_);
  return r >= inner_ && r <= outer_;
}

PointSet sample_ppp(const Region& region, double intensity, std::uint64_t seed) {
  if (!(intensity >= 0.0)) throw validation_error("intensity must be >= 0");
  PointSet ps{{}, region, intensity};
  if (intensity == 0.0) return ps;

  Rng rng(seed);
  const std::uint64_t count = rng.poisson(intensity * region.area());
  ps.points.reserve(count);
  const double in2 = region.inner_radius() * region.inner_radius();
  const double out2 = region.outer_radius() * region.outer_radius();
  for (std::uint64_t i = 0; i < count; ++i) {
    // Uniform over the annulus: radius via the area transform.
    const double rho = std::sqrt(rng.uniform(in2, out2));
    const double theta = rng.uniform(0.0, 2.0 * M_PI);
    ps.points.push_back({region.center().x + rho * std::cos(theta),
                         region.center().y + rho * std::sin(theta)});
  }
  return ps;
}

PointSet enforce_empty_strip(const PointSet& ps, double R, double width) {
  if (!(width > 0.0) || !(width < R))
    throw validation_error("empty strip requires 0 < width < R");
  PointSet out{{}, ps.source_region, ps.intensity};
  out.points.reserve(ps.points.size());
  const Vec2 c = ps.source_region.center();
  for (const Vec2& p : ps.points) {
    const double rho = dist(p, c);
    if (rho <= R - width || rho > R) out.points.push_back(p);
  }
  return out;
}

void write_points_csv(const PointSet& ps, std::ostream& out) {
  out << "x,y\n";
  for (const Vec2& p : ps.points)
    out << fmt_g17(p.x) << ',' << fmt_g17(p.y) << '\n';
}

}  // namespace cutcap
