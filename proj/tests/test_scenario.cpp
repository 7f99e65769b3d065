#include <doctest.h>

#include <cmath>

#include "isac/scenario.hpp"
#include "isac/sampling.hpp"
#include "support.hpp"

using namespace isac;

TEST_SUITE_BEGIN("scenario");

TEST_CASE("cosine dynamics: peak, floor, and the switch schedule") {
  ScenarioConfig cfg;
  cfg.device_density_km2 = 20.0;
  const RunPhases zero{0.0, 0.0};
  const auto switches = drift_schedule(1, 400);
  REQUIRE(switches == std::vector<int>{200});

  const auto p0 = params_at(0, cfg, zero, switches);
  CHECK(p0.lambda_I == doctest::Approx(2e-5));        // |cos 0| = 1 -> peak
  CHECK(p0.mean_targets == doctest::Approx(5.5));
  const auto p4 = params_at(4, cfg, zero, switches);  // |cos(pi/2)| = 0 -> floor
  CHECK(p4.lambda_I == doctest::Approx(0.3 * 2e-5));
  CHECK(p4.mean_targets == doctest::Approx(0.3 * 5.5));

  CHECK(params_at(200, cfg, zero, switches).nu == doctest::Approx(0.1));
  CHECK(params_at(201, cfg, zero, switches).nu == doctest::Approx(0.7));
}

TEST_CASE("drift schedule placement and the odd-only rule") {
  CHECK(drift_schedule(3, 400) == std::vector<int>{100, 200, 300});
  CHECK(drift_schedule(7, 400) == std::vector<int>{50, 100, 150, 200, 250, 300, 350});
  CHECK_THROWS_AS(drift_schedule(2, 400), std::invalid_argument);
  CHECK_THROWS_AS(drift_schedule(0, 400), std::invalid_argument);
  CHECK_THROWS_AS(drift_schedule(-3, 400), std::invalid_argument);
}

TEST_CASE("snapshots always hold at least one device") {
  const HexRegion hex = testsup::default_hex();
  WindowParams params{2e-7, 2.0, 0.5};  // sparse enough that empty draws occur
  RngStream rng(61);
  for (int i = 0; i < 200; ++i) {
    const auto s = generate_snapshot(params, hex, 10.0, rng);
    CHECK(s.devices.size() >= 1);
  }
}

TEST_CASE("radial distance of retained targets matches the thinning laws") {
  const HexRegion hex = testsup::default_hex();
  const double D = 10.0;
  for (double nu : {0.0, 1.0}) {
    WindowParams params{2e-5, 5.5, nu};
    RngStream rng(62 + static_cast<unsigned>(nu));
    double acc = 0.0;
    long long n = 0;
    while (n < 100000) {
      const auto s = generate_snapshot(params, hex, D, rng);
      for (const auto& t : s.targets.points) {
        acc += nearest_device(t, s.devices).distance;
        ++n;
      }
    }
    // densities r^2 (type I) and r(1-r/D) (type II) give means 3D/4 and D/2
    const double want = nu > 0.5 ? 0.75 * D : 0.5 * D;
    CHECK(testsup::rel_err(acc / static_cast<double>(n), want) < 0.02);
  }
}

TEST_CASE("thinning keeps the drawn counts: cluster mean is nu-invariant") {
  const HexRegion hex = testsup::default_hex();
  for (double nu : {0.1, 0.7}) {
    WindowParams params{2e-5, 5.5, nu};
    RngStream rng(101 + static_cast<unsigned>(10 * nu));
    double targets = 0.0, devices = 0.0;
    for (int i = 0; i < 2000; ++i) {
      const auto s = generate_snapshot(params, hex, 10.0, rng);
      targets += static_cast<double>(s.targets.size());
      devices += static_cast<double>(s.devices.size());
    }
    CHECK(testsup::rel_err(targets / devices, 5.5) < 0.02);
  }
}

TEST_CASE("ground-truth statistics implied by the thinning") {
  CHECK(true_sigma_U(0.1, 10.0) == doctest::Approx(std::sqrt(16.5)));
  CHECK(true_sigma_U(0.7, 10.0) == doctest::Approx(std::sqrt(25.5)));
  CHECK(true_lambda_U(5.5, 10.0) == doctest::Approx(5.5 / (M_PI * 100.0)));
}

TEST_CASE("generation is bit-reproducible for a fixed seed") {
  const HexRegion hex = testsup::default_hex();
  WindowParams params{2e-5, 5.5, 0.4};
  RngStream a = RngStream::derive(77, {1, 2, 3});
  RngStream b = RngStream::derive(77, {1, 2, 3});
  const auto s1 = generate_snapshot(params, hex, 10.0, a);
  const auto s2 = generate_snapshot(params, hex, 10.0, b);
  REQUIRE(s1.devices.size() == s2.devices.size());
  REQUIRE(s1.targets.size() == s2.targets.size());
  for (std::size_t i = 0; i < s1.targets.points.size(); ++i) {
    CHECK(s1.targets.points[i].x == s2.targets.points[i].x);
    CHECK(s1.targets.points[i].y == s2.targets.points[i].y);
  }
}

TEST_SUITE_END();
