#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "isac/drift.hpp"

using namespace isac;

TEST_SUITE_BEGIN("drift");

TEST_CASE("mape: identical lists, worked value, zero-reference guard") {
  const std::vector<double> a{1.0, 2.0, 3.0};
  CHECK(mape(a, a) == 0.0);
  const std::vector<double> p{1.1}, r{1.0};
  CHECK(mape(p, r) == doctest::Approx(0.1));
  const std::vector<double> rz{0.0};
  CHECK(std::isfinite(mape(p, rz)));
  CHECK_THROWS_AS(mape(p, a), std::invalid_argument);
  CHECK_THROWS_AS(mape({}, {}), std::invalid_argument);
}

namespace {
MapeTracker tracker_with(const std::vector<double>& lI, const std::vector<double>& lU,
                         const std::vector<double>& mU, const std::vector<double>& sU) {
  MapeTracker t;
  for (double e : lI) t.push(Param::lambda_I, e);
  for (double e : lU) t.push(Param::lambda_U, e);
  for (double e : mU) t.push(Param::mu_U, e);
  for (double e : sU) t.push(Param::sigma_U, e);
  return t;
}
}  // namespace

TEST_CASE("detection: quiet errors, a joint-only spike, a shared spike") {
  const std::vector<double> quiet{0.02, 0.03, 0.02, 0.03, 0.02, 0.02};
  const std::vector<double> spike{0.02, 0.03, 0.02, 0.30, 0.28, 0.31};

  auto rep = detect_drift(tracker_with(quiet, quiet, quiet, quiet));
  CHECK_FALSE(rep.flags.H_S);
  CHECK_FALSE(rep.flags.H_D);

  rep = detect_drift(tracker_with(quiet, quiet, spike, quiet));
  CHECK_FALSE(rep.flags.H_S);
  CHECK(rep.flags.H_D);
  CHECK(rep.triggered == std::set<Param>{Param::mu_U});

  rep = detect_drift(tracker_with(spike, quiet, quiet, quiet));
  CHECK(rep.flags.H_S);
  CHECK(rep.flags.H_D);

  // short history never raises a flag
  rep = detect_drift(tracker_with({0.9}, {0.9}, {0.9}, {0.9}));
  CHECK_FALSE(rep.flags.H_S);
  CHECK_FALSE(rep.flags.H_D);
}

TEST_CASE("a calm window never flips a quiet verdict into drift") {
  std::vector<double> errs{0.02, 0.02, 0.03, 0.02, 0.05, 0.04};
  MapeTracker base;
  for (double e : errs) base.push(Param::sigma_U, e);
  REQUIRE_FALSE(base.degraded(Param::sigma_U));
  base.push(Param::sigma_U, 0.0);
  CHECK_FALSE(base.degraded(Param::sigma_U));
}

TEST_CASE("flag logic over all verdict combinations") {
  for (int mask = 0; mask < 16; ++mask) {
    std::map<Param, bool> verdicts{{Param::lambda_I, (mask & 1) != 0},
                                   {Param::lambda_U, (mask & 2) != 0},
                                   {Param::mu_U, (mask & 4) != 0},
                                   {Param::sigma_U, (mask & 8) != 0}};
    const auto rep = flags_from_verdicts(verdicts);
    const bool want_s = verdicts[Param::lambda_I] || verdicts[Param::lambda_U];
    const bool want_d =
        verdicts[Param::lambda_I] || verdicts[Param::mu_U] || verdicts[Param::sigma_U];
    CHECK(rep.flags.H_S == want_s);
    CHECK(rep.flags.H_D == want_d);
    for (Param p : kAllParams) {
      CHECK((rep.triggered.count(p) > 0) == verdicts[p]);
    }
  }
}

TEST_CASE("model selection follows the flags") {
  auto set = select_models({DriftFlags{false, false}, {}});
  CHECK(set.joint);
  CHECK_FALSE(set.independent);
  CHECK(set.retrain.empty());

  set = select_models({DriftFlags{false, true}, {Param::mu_U, Param::sigma_U}});
  CHECK(set.joint);
  CHECK(set.independent);
  CHECK(set.retrain == std::set<Param>{Param::mu_U, Param::sigma_U});

  set = select_models({DriftFlags{true, true}, {Param::lambda_I}});
  CHECK(set.independent);
  CHECK(set.retrain.count(Param::lambda_I) == 1);
}

TEST_CASE("controller keeps the ensemble until errors stay calm") {
  DriftConfig cfg;  // K1 = 3
  DriftController ctl(cfg);
  auto feed = [&](double s_err) {
    ctl.observe(Param::lambda_I, 0.02);
    ctl.observe(Param::lambda_U, 0.02);
    ctl.observe(Param::mu_U, 0.02);
    ctl.observe(Param::sigma_U, s_err);
    return ctl.update();
  };
  for (int i = 0; i < 10; ++i) {
    const auto set = feed(0.02);
    CHECK_FALSE(set.independent);
  }
  // three hot windows raise the flag
  feed(0.4);
  feed(0.4);
  auto set = feed(0.4);
  CHECK(set.independent);
  CHECK(set.retrain.count(Param::sigma_U) == 1);
  // needs K1 calm windows before the ensemble is dropped; the first two calm
  // updates still report drift because the trailing mean stays hot
  set = feed(0.02);
  CHECK(set.independent);
  set = feed(0.02);
  set = feed(0.02);
  set = feed(0.02);
  set = feed(0.02);
  CHECK_FALSE(set.independent);
}

TEST_SUITE_END();
