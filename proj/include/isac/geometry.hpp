#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace isac {

struct PlanarPoint {
  double x = 0.0;
  double y = 0.0;
};

inline double dist2(const PlanarPoint& a, const PlanarPoint& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

double dist(const PlanarPoint& a, const PlanarPoint& b);

// Regular hexagonal AP coverage area; `side` is both the edge length and the
// circumradius. Vertices sit at angles 0, 60, ..., 300 degrees.
struct HexRegion {
  PlanarPoint center;
  double side = 0.0;

  double area() const;  // 3*sqrt(3)/2 * side^2
  std::array<PlanarPoint, 6> vertices() const;
};

// Boundary counts as inside.
bool point_in_hex(const PlanarPoint& p, const HexRegion& region);

struct PointPattern {
  std::vector<PlanarPoint> points;
  HexRegion region;

  std::size_t size() const { return points.size(); }
};

// Throws if any point falls outside the region.
void validate_pattern(const PointPattern& pattern);

// Realized device and target locations for one collected sensing interval.
struct Snapshot {
  PointPattern devices;
  PointPattern targets;
  int window = 0;    // planning window index k >= 0
  int interval = 1;  // sensing interval index m in [1, M]
  int ap = 1;        // AP index l in [1, L]
};

// Area of the intersection of a disk with the hexagon.
double disk_hex_intersection_area(const PlanarPoint& c, double radius, const HexRegion& region);

// Lens area of two equal-radius disks with centers `d` apart.
double disk_disk_intersection_area(double d, double radius);

}  // namespace isac
