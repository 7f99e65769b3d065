#pragma once

#include <vector>

#include "isac/geometry.hpp"
#include "isac/rng.hpp"

namespace isac {

// Uniform draw inside the hexagon (rejection from the bounding box).
PlanarPoint uniform_in_hex(const HexRegion& region, RngStream& rng);

// Homogeneous Poisson point process over the hexagon.
// Throws std::invalid_argument for negative intensity.
PointPattern sample_ppp(double intensity, const HexRegion& region, RngStream& rng);

struct ThomasSample {
  PointPattern devices;
  PointPattern targets;
  std::vector<int> cluster_of;  // target index -> parent device index
};

// Thomas cluster process: device parents from a PPP, Poisson-many targets per
// device at isotropic normal offsets. Offsets landing outside the region are
// resampled until inside, so cluster counts stay exact.
ThomasSample sample_thomas(double lambda_I, double mu_U, double sigma_U, const HexRegion& region,
                           RngStream& rng);

struct NearestDevice {
  int index = -1;
  double distance = 0.0;
};

// Index of the device closest to `target`; ties break to the lowest index.
// Throws std::invalid_argument on an empty device pattern.
NearestDevice nearest_device(const PlanarPoint& target, const PointPattern& devices);

}  // namespace isac
