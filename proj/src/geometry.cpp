#include "isac/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace isac {

namespace {
constexpr double kSqrt3 = 1.7320508075688772;

double cross(const PlanarPoint& a, const PlanarPoint& b) { return a.x * b.y - a.y * b.x; }
double dot(const PlanarPoint& a, const PlanarPoint& b) { return a.x * b.x + a.y * b.y; }

// Signed circular-sector area spanned from a to b around the origin.
double sector_area(const PlanarPoint& a, const PlanarPoint& b, double r) {
  const double ang = std::atan2(cross(a, b), dot(a, b));
  return 0.5 * r * r * ang;
}

// Contribution of the directed segment a->b (relative to the circle center)
// to the area of circle-polygon intersection, via Green's theorem.
double segment_contribution(PlanarPoint a, PlanarPoint b, double r) {
  const double r2 = r * r;
  const bool a_in = dot(a, a) <= r2;
  const bool b_in = dot(b, b) <= r2;
  if (a_in && b_in) return 0.5 * cross(a, b);

  const PlanarPoint d{b.x - a.x, b.y - a.y};
  const double qa = dot(d, d);
  const double qb = 2.0 * dot(a, d);
  const double qc = dot(a, a) - r2;
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc <= 0.0 || qa == 0.0) return sector_area(a, b, r);

  const double sq = std::sqrt(disc);
  double t1 = (-qb - sq) / (2.0 * qa);
  double t2 = (-qb + sq) / (2.0 * qa);
  if (t2 < 0.0 || t1 > 1.0) return sector_area(a, b, r);

  const double c1 = std::clamp(t1, 0.0, 1.0);
  const double c2 = std::clamp(t2, 0.0, 1.0);
  const PlanarPoint p1{a.x + c1 * d.x, a.y + c1 * d.y};
  const PlanarPoint p2{a.x + c2 * d.x, a.y + c2 * d.y};

  double area = 0.5 * cross(p1, p2);
  if (t1 > 0.0) area += sector_area(a, p1, r);
  if (t2 < 1.0) area += sector_area(p2, b, r);
  return area;
}
}  // namespace

double dist(const PlanarPoint& a, const PlanarPoint& b) { return std::sqrt(dist2(a, b)); }

double HexRegion::area() const { return 1.5 * kSqrt3 * side * side; }

std::array<PlanarPoint, 6> HexRegion::vertices() const {
  std::array<PlanarPoint, 6> v{};
  for (int i = 0; i < 6; ++i) {
    const double ang = M_PI / 3.0 * i;
    v[i] = {center.x + side * std::cos(ang), center.y + side * std::sin(ang)};
  }
  return v;
}

bool point_in_hex(const PlanarPoint& p, const HexRegion& region) {
  if (region.side <= 0.0) throw std::invalid_argument("hex side must be positive");
  const double eps = 1e-9 * region.side;
  const double dx = std::abs(p.x - region.center.x);
  const double dy = std::abs(p.y - region.center.y);
  if (dy > 0.5 * kSqrt3 * region.side + eps) return false;
  return kSqrt3 * dx + dy <= kSqrt3 * region.side + eps;
}

void validate_pattern(const PointPattern& pattern) {
  for (const auto& p : pattern.points) {
    if (!point_in_hex(p, pattern.region)) {
      throw std::invalid_argument("point pattern contains a point outside its region");
    }
  }
}

double disk_hex_intersection_area(const PlanarPoint& c, double radius, const HexRegion& region) {
  if (radius <= 0.0) return 0.0;
  const auto verts = region.vertices();
  double area = 0.0;
  for (int i = 0; i < 6; ++i) {
    const PlanarPoint& a = verts[i];
    const PlanarPoint& b = verts[(i + 1) % 6];
    area += segment_contribution({a.x - c.x, a.y - c.y}, {b.x - c.x, b.y - c.y}, radius);
  }
  return std::abs(area);
}

double disk_disk_intersection_area(double d, double radius) {
  if (radius <= 0.0) return 0.0;
  if (d >= 2.0 * radius) return 0.0;
  if (d <= 0.0) return M_PI * radius * radius;
  const double half = 0.5 * d;
  return 2.0 * radius * radius * std::acos(half / radius) -
         half * std::sqrt(4.0 * radius * radius - d * d);
}

}  // namespace isac
