#pragma once

#include <span>
#include <variant>

#include "isac/geometry.hpp"

namespace isac {

// Two independent homogeneous PPPs for devices and targets. lambda_U is the
// target intensity over the observed region (the union of the RoIs), which is
// where the network actually collects target locations.
struct IndependentParams {
  double lambda_I = 0.0;  // devices per m^2
  double lambda_U = 0.0;  // targets per m^2 of observed area
};

// Thomas cluster model: device parents plus Poisson-many targets per device
// at isotropic zero-mean normal offsets.
struct JointParams {
  double lambda_I = 0.0;  // devices per m^2
  double mu_U = 0.0;      // mean targets per cluster
  double sigma_U = 0.0;   // offset standard deviation [m]
};

using SpatialModel = std::variant<IndependentParams, JointParams>;

// Area over which targets are observable in one snapshot: the union of the
// per-device RoI disks, clipped to the hexagon. Pairwise disk overlaps are
// subtracted; higher-order overlaps are negligible at the densities of
// interest and are ignored.
double observed_target_area(const Snapshot& snapshot, double D_hat);

// Pooled MLE over snapshots. Device intensity uses the full coverage area;
// target intensity uses the observed (RoI union) area.
// Throws std::invalid_argument on empty input.
IndependentParams fit_independent(std::span<const Snapshot> snapshots, double D_hat);

// Pooled MLE with nearest-device cluster membership: mu_U is targets per
// device, sigma_U^2 is the mean squared offset over both coordinates.
// Throws std::invalid_argument on empty input or a snapshot without devices.
JointParams fit_joint(std::span<const Snapshot> snapshots);

// CDF of the distance from a target to its closest device.
double contact_cdf(const SpatialModel& model, double d);

// Expected number of targets closer to a given device than to any other.
double expected_targets_nearest(const SpatialModel& model);

double lambda_of(const SpatialModel& model);
bool is_joint(const SpatialModel& model);

}  // namespace isac
