#include "isac/models.hpp"

#include <cmath>
#include <stdexcept>

#include "isac/sampling.hpp"

namespace isac {

double observed_target_area(const Snapshot& snapshot, double D_hat) {
  const auto& devices = snapshot.devices;
  double area = 0.0;
  for (const auto& d : devices.points) {
    area += disk_hex_intersection_area(d, D_hat, devices.region);
  }
  const double close2 = 4.0 * D_hat * D_hat;
  for (std::size_t i = 0; i < devices.points.size(); ++i) {
    for (std::size_t j = i + 1; j < devices.points.size(); ++j) {
      const double d2 = dist2(devices.points[i], devices.points[j]);
      if (d2 < close2) area -= disk_disk_intersection_area(std::sqrt(d2), D_hat);
    }
  }
  return area;
}

IndependentParams fit_independent(std::span<const Snapshot> snapshots, double D_hat) {
  if (snapshots.empty()) throw std::invalid_argument("fit_independent requires snapshots");
  double devices = 0.0;
  double targets = 0.0;
  double coverage_area = 0.0;
  double observed_area = 0.0;
  for (const auto& s : snapshots) {
    devices += static_cast<double>(s.devices.size());
    targets += static_cast<double>(s.targets.size());
    coverage_area += s.devices.region.area();
    observed_area += observed_target_area(s, D_hat);
  }
  IndependentParams p;
  p.lambda_I = devices / coverage_area;
  p.lambda_U = observed_area > 0.0 ? targets / observed_area : 0.0;
  return p;
}

JointParams fit_joint(std::span<const Snapshot> snapshots) {
  if (snapshots.empty()) throw std::invalid_argument("fit_joint requires snapshots");
  double devices = 0.0;
  double targets = 0.0;
  double coverage_area = 0.0;
  double sum_sq_offsets = 0.0;
  for (const auto& s : snapshots) {
    if (s.devices.points.empty()) {
      throw std::invalid_argument("fit_joint requires at least one device per snapshot");
    }
    devices += static_cast<double>(s.devices.size());
    targets += static_cast<double>(s.targets.size());
    coverage_area += s.devices.region.area();
    for (const auto& t : s.targets.points) {
      const auto nearest = nearest_device(t, s.devices);
      sum_sq_offsets += nearest.distance * nearest.distance;
    }
  }
  JointParams p;
  p.lambda_I = devices / coverage_area;
  p.mu_U = targets / devices;
  p.sigma_U = targets > 0.0 ? std::sqrt(sum_sq_offsets / (2.0 * targets)) : 0.0;
  return p;
}

double contact_cdf(const SpatialModel& model, double d) {
  if (d < 0.0) throw std::invalid_argument("contact_cdf requires d >= 0");
  return std::visit(
      [d](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, IndependentParams>) {
          return -std::expm1(-M_PI * m.lambda_I * d * d);
        } else {
          if (m.sigma_U == 0.0) return d > 0.0 ? 1.0 : 0.0;
          return -std::expm1(-d * d / (2.0 * m.sigma_U * m.sigma_U));
        }
      },
      model);
}

double expected_targets_nearest(const SpatialModel& model) {
  return std::visit(
      [](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, IndependentParams>) {
          if (!(m.lambda_I > 0.0)) {
            throw std::invalid_argument("independent model requires lambda_I > 0");
          }
          return m.lambda_U / m.lambda_I;
        } else {
          return m.mu_U;
        }
      },
      model);
}

double lambda_of(const SpatialModel& model) {
  return std::visit([](const auto& m) { return m.lambda_I; }, model);
}

bool is_joint(const SpatialModel& model) { return std::holds_alternative<JointParams>(model); }

}  // namespace isac
