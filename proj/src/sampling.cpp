#include "isac/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace isac {

namespace {
constexpr int kMaxRejectionTries = 100000;
}

PlanarPoint uniform_in_hex(const HexRegion& region, RngStream& rng) {
  const double s = region.side;
  const double hy = 0.5 * std::sqrt(3.0) * s;
  for (int tries = 0; tries < kMaxRejectionTries; ++tries) {
    PlanarPoint p{region.center.x + rng.uniform(-s, s), region.center.y + rng.uniform(-hy, hy)};
    if (point_in_hex(p, region)) return p;
  }
  throw std::runtime_error("uniform_in_hex: rejection sampling failed to terminate");
}

PointPattern sample_ppp(double intensity, const HexRegion& region, RngStream& rng) {
  if (intensity < 0.0) throw std::invalid_argument("PPP intensity must be nonnegative");
  PointPattern pattern;
  pattern.region = region;
  const long long n = rng.poisson(intensity * region.area());
  pattern.points.reserve(static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i) pattern.points.push_back(uniform_in_hex(region, rng));
  return pattern;
}

ThomasSample sample_thomas(double lambda_I, double mu_U, double sigma_U, const HexRegion& region,
                           RngStream& rng) {
  if (lambda_I < 0.0 || mu_U < 0.0 || sigma_U < 0.0) {
    throw std::invalid_argument("Thomas process parameters must be nonnegative");
  }
  ThomasSample out;
  out.devices = sample_ppp(lambda_I, region, rng);
  out.targets.region = region;
  for (std::size_t d = 0; d < out.devices.size(); ++d) {
    const PlanarPoint& parent = out.devices.points[d];
    const long long n_children = rng.poisson(mu_U);
    for (long long j = 0; j < n_children; ++j) {
      PlanarPoint child = parent;  // degenerate cluster when sigma_U == 0
      if (sigma_U > 0.0) {
        int tries = 0;
        do {
          child = {parent.x + rng.normal(0.0, sigma_U), parent.y + rng.normal(0.0, sigma_U)};
          if (++tries > kMaxRejectionTries) {
            throw std::runtime_error("sample_thomas: offset resampling failed to terminate");
          }
        } while (!point_in_hex(child, region));
      }
      out.targets.points.push_back(child);
      out.cluster_of.push_back(static_cast<int>(d));
    }
  }
  return out;
}

NearestDevice nearest_device(const PlanarPoint& target, const PointPattern& devices) {
  if (devices.points.empty()) {
    throw std::invalid_argument("nearest_device requires at least one device");
  }
  NearestDevice best{0, dist2(target, devices.points[0])};
  for (std::size_t i = 1; i < devices.points.size(); ++i) {
    const double d2 = dist2(target, devices.points[i]);
    if (d2 < best.distance) {
      best.index = static_cast<int>(i);
      best.distance = d2;
    }
  }
  best.distance = std::sqrt(best.distance);
  return best;
}

}  // namespace isac
