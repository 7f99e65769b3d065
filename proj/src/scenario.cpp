#include "isac/scenario.hpp"

#include <cmath>
#include <stdexcept>

#include "isac/sampling.hpp"

namespace isac {

namespace {
constexpr int kMaxTries = 100000;

double cosine_value(int k, double peak, double frac, double freq, double phase) {
  const double p_min = frac * peak;
  return p_min + (peak - p_min) * std::abs(std::cos(freq * k + phase));
}
}  // namespace

RunPhases draw_phases(const ScenarioConfig& cfg, int run) {
  RngStream rng = RngStream::derive(cfg.seed, {0x70686173ULL, static_cast<std::uint64_t>(run)});
  return {rng.uniform(0.0, M_PI), rng.uniform(0.0, M_PI)};
}

std::vector<int> drift_schedule(int frequency, int windows) {
  if (frequency < 1 || frequency % 2 == 0) {
    throw std::invalid_argument("drift frequency must be a positive odd integer");
  }
  std::vector<int> switches;
  switches.reserve(static_cast<std::size_t>(frequency));
  for (int i = 1; i <= frequency; ++i) {
    const int s = static_cast<int>(
        std::ceil(static_cast<double>(windows) * i / (frequency + 1) - 1e-9));
    if (s <= 0 || s >= windows) throw std::invalid_argument("switch point outside the run");
    switches.push_back(s);
  }
  return switches;
}

double nu_at(int k, const ScenarioConfig& cfg, const std::vector<int>& switches) {
  int flips = 0;
  for (int s : switches) {
    if (k > s) ++flips;
  }
  return flips % 2 == 0 ? cfg.nu_low : cfg.nu_high;
}

WindowParams params_at(int k, const ScenarioConfig& cfg, const RunPhases& phases,
                       const std::vector<int>& switches) {
  if (k < 0) throw std::invalid_argument("window index must be nonnegative");
  WindowParams p;
  p.lambda_I = cosine_value(k, cfg.peak_lambda_I(), cfg.p_min_frac, cfg.angular_frequency,
                            phases.lambda_phase);
  p.mean_targets = cosine_value(k, cfg.mean_targets, cfg.p_min_frac, cfg.angular_frequency,
                                phases.targets_phase);
  p.nu = nu_at(k, cfg, switches);
  return p;
}

double true_sigma_U(double nu, double D_hat) {
  // E[r^2] is 0.6*D^2 for type I and 0.3*D^2 for type II; sigma^2 = E[r^2]/2.
  return D_hat * std::sqrt(0.15 * (1.0 + nu));
}

double true_lambda_U(double mean_targets, double D_hat) {
  return mean_targets / (M_PI * D_hat * D_hat);
}

Snapshot generate_snapshot(const WindowParams& params, const HexRegion& region, double D_hat,
                           RngStream& rng, int window, int interval, int ap) {
  Snapshot snap;
  snap.window = window;
  snap.interval = interval;
  snap.ap = ap;
  snap.targets.region = region;

  do {
    snap.devices = sample_ppp(params.lambda_I, region, rng);
  } while (snap.devices.points.empty());

  for (const auto& device : snap.devices.points) {
    const bool type_one = rng.uniform01() < params.nu;
    const long long count = rng.poisson(params.mean_targets);
    for (long long j = 0; j < count; ++j) {
      int tries = 0;
      for (;;) {
        if (++tries > kMaxTries) {
          throw std::runtime_error("target placement failed to terminate");
        }
        const double r = D_hat * std::sqrt(rng.uniform01());
        const double keep = type_one ? r / D_hat : 1.0 - r / D_hat;
        if (rng.uniform01() >= keep) continue;
        const double ang = rng.uniform(0.0, 2.0 * M_PI);
        const PlanarPoint t{device.x + r * std::cos(ang), device.y + r * std::sin(ang)};
        if (!point_in_hex(t, region)) continue;
        snap.targets.points.push_back(t);
        break;
      }
    }
  }
  return snap;
}

}  // namespace isac
