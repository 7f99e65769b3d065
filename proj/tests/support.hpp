#pragma once

// Shared helpers and independent oracles for the unit and acceptance suites.
// Everything here is test-only and deliberately implemented along different
// code paths than the library it checks.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "isac/constants.hpp"
#include "isac/geometry.hpp"
#include "isac/rng.hpp"

namespace testsup {

inline isac::HexRegion default_hex() { return {{0.0, 0.0}, 500.0}; }

inline double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

inline double variance(const std::vector<double>& v) {
  const double m = mean(v);
  double acc = 0.0;
  for (double x : v) acc += (x - m) * (x - m);
  return acc / static_cast<double>(v.size());
}

inline double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

// Kolmogorov-Smirnov distance between samples and a model CDF.
template <typename Cdf>
double ks_distance(std::vector<double> samples, Cdf cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, std::max(std::abs((i + 1) / n - f), std::abs(i / n - f)));
  }
  return d;
}

// Spearman rank correlation (average ranks on ties).
inline double spearman(const std::vector<double>& xs, const std::vector<double>& ys) {
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    std::size_t i = 0;
    while (i < idx.size()) {
      std::size_t j = i;
      while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
      const double avg = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
      for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
      i = j + 1;
    }
    return r;
  };
  const auto rx = ranks(xs);
  const auto ry = ranks(ys);
  const double mx = mean(rx), my = mean(ry);
  double num = 0, dx = 0, dy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    num += (rx[i] - mx) * (ry[i] - my);
    dx += (rx[i] - mx) * (rx[i] - mx);
    dy += (ry[i] - my) * (ry[i] - my);
  }
  return num / std::sqrt(dx * dy);
}

// Nearest-interferer Monte Carlo: realize the co-band thinned field over a
// disk large enough that an empty field is a <=1e-4 event, keep each point
// with the mutual in-beam probability, and return the strongest (nearest)
// interferer's received power. Returns 0 when no interferer survives.
inline double sample_strongest_interference(double lambda_I, double rho_c, long long X_s_I,
                                            const isac::SystemConstants& sc,
                                            isac::RngStream& rng) {
  const double beam2 = (sc.phi_I / (2.0 * M_PI)) * (sc.phi_I / (2.0 * M_PI));
  const double lam_eff = lambda_I * (1.0 - rho_c) / static_cast<double>(X_s_I) * beam2;
  if (lam_eff <= 0.0) return 0.0;
  const double R = std::sqrt(std::log(1e4) / (M_PI * lam_eff));
  const long long n = rng.poisson(lam_eff * M_PI * R * R);
  double nearest2 = std::numeric_limits<double>::infinity();
  for (long long i = 0; i < n; ++i) {
    // uniform in the disk of radius R
    const double r2 = rng.uniform01() * R * R;
    nearest2 = std::min(nearest2, r2);
  }
  if (!std::isfinite(nearest2)) return 0.0;
  const double r = std::sqrt(nearest2);
  const double gm = sc.Gm();
  const double denom = 4.0 * M_PI * sc.f_s * r;
  return sc.P_s * gm * gm * sc.c * sc.c / (denom * denom);
}

}  // namespace testsup

#include "isac/planner.hpp"

namespace testsup {

// Reduced-exhaustive planning oracle: scans a coarse rho grid and, per rho,
// every sensible integer band count. The per-AP compute reservation is tied
// to the track-beam count, and the subcarrier count is the smallest feasible
// integer (cost is strictly increasing in it, so nothing larger can win).
struct OraclePlan {
  double Z = std::numeric_limits<double>::infinity();
  isac::PlanningDecision best;
};

inline OraclePlan brute_force_plan(const isac::SpatialModel& model,
                                   const isac::SystemConstants& sc, double rho_step = 0.01) {
  using namespace isac;
  OraclePlan out;
  const double lambda = lambda_of(model);
  const double e_n = expected_devices(lambda, sc);
  const double demand = sensing_demand(model, sc);
  const double lo = std::max(rho_c_min(model, sc), rho_step);

  std::vector<double> grid;
  for (double rho = lo; rho < 1.0 - 0.5 * rho_step; rho += rho_step) grid.push_back(rho);
  grid.push_back(1.0);

  for (double rho : grid) {
    const double x_c_relaxed = (sc.R_hat / sc.R0) * (1.0 / rho + e_n - 1.0);
    const long long x_c = static_cast<long long>(std::ceil(x_c_relaxed - 1e-9));

    // the largest useful band count reaches the RoI boundary
    long long x_si_cap = 2;
    if (rho < 1.0) {
      const double th = vartheta(lambda, sc);
      x_si_cap = static_cast<long long>(
                     std::ceil(std::pow(sc.D_hat / th, 4.0) * (1.0 - rho))) + 2;
    }
    for (long long x_si = 0; x_si <= x_si_cap; ++x_si) {
      PlanningDecision d;
      d.rho_c = rho;
      d.X_c_A = x_c;
      d.X_s_I = x_si;
      d.D_max = d_max(static_cast<double>(x_si), rho, lambda, sc);
      const double dev_cap = std::min({contact_cdf(model, d.D_max) *
                                           expected_targets_nearest(model),
                                       (1.0 - rho) / sc.rho_s_hat, sc.device_compute_cap()});
      const double residual = std::max(demand - e_n * dev_cap, 0.0);
      d.X_s_A = static_cast<long long>(std::ceil(sc.rho_s_hat * residual - 1e-9));
      d.F_e_A = static_cast<double>(d.X_s_A) * sc.C0 / (sc.rho_s_hat * sc.tau * sc.T);
      if (!feasible(d, model, sc)) continue;
      const double z = cost(d, sc).Z;
      if (z < out.Z) {
        out.Z = z;
        out.best = d;
      }
    }
  }
  return out;
}

}  // namespace testsup
