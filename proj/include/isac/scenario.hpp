#pragma once

#include <cstdint>
#include <vector>

#include "isac/geometry.hpp"
#include "isac/rng.hpp"

namespace isac {

// Synthetic non-stationary ground truth: device intensity and mean cluster
// size follow rectified cosines across windows; the device-type mix nu
// switches according to the drift schedule.
struct ScenarioConfig {
  double device_density_km2 = 20.0;  // peak devices per km^2
  double mean_targets = 5.5;         // peak mean targets per RoI
  double angular_frequency = M_PI / 8.0;  // rad per window
  double p_min_frac = 0.3;           // floor fraction of the cosine dynamics
  double nu_low = 0.1;
  double nu_high = 0.7;
  int drift_frequency = 1;           // odd number of nu switches across the run
  int windows = 400;
  int runs = 5;
  std::uint64_t seed = 1;

  double peak_lambda_I() const { return device_density_km2 * 1e-6; }
};

struct WindowParams {
  double lambda_I = 0.0;      // devices per m^2
  double mean_targets = 0.0;  // mean targets per RoI
  double nu = 0.0;            // probability a device is type I
};

struct RunPhases {
  double lambda_phase = 0.0;
  double targets_phase = 0.0;
};

// Per-run cosine phases, drawn once from the seed.
RunPhases draw_phases(const ScenarioConfig& cfg, int run);

// Windows at which nu flips; the post-switch regime starts one window later.
// Throws std::invalid_argument for even or nonpositive frequency.
std::vector<int> drift_schedule(int frequency, int windows);

double nu_at(int k, const ScenarioConfig& cfg, const std::vector<int>& switches);

WindowParams params_at(int k, const ScenarioConfig& cfg, const RunPhases& phases,
                       const std::vector<int>& switches);

// Ground-truth Thomas-style statistics implied by the thinning rule, used by
// the ideal benchmarks: offsets of type-I/II targets have mean squared radius
// 0.6*D_hat^2 and 0.3*D_hat^2.
double true_sigma_U(double nu, double D_hat);
double true_lambda_U(double mean_targets, double D_hat);

// Devices from a PPP resampled until nonempty; per device a Poisson count of
// targets placed uniformly in the RoI and thinned by D/D_hat (type I) or
// 1 - D/D_hat (type II) until the drawn count is reached.
Snapshot generate_snapshot(const WindowParams& params, const HexRegion& region, double D_hat,
                           RngStream& rng, int window = 0, int interval = 1, int ap = 1);

}  // namespace isac
