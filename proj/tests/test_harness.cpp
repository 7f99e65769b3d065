#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "isac/harness.hpp"
#include "support.hpp"

using namespace isac;

namespace {
std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  return std::string(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
}

HarnessConfig tiny_config() {
  HarnessConfig cfg;
  cfg.scen.windows = 30;
  cfg.scen.runs = 1;
  cfg.scen.drift_frequency = 1;
  cfg.pred.max_epochs = 120;
  cfg.retrain_epochs = 60;
  return cfg;
}
}  // namespace

TEST_SUITE_BEGIN("harness");

TEST_CASE("actual satisfaction: saturation, averaging, worked evaluation") {
  SystemConstants sc;
  const JointParams ref{2e-5, 5.5, 4.5};

  // generous decision satisfies everything
  PlanningDecision big;
  big.rho_c = 0.9;
  big.X_c_A = 2000;
  big.X_s_I = 40;
  big.D_max = 9.0;
  big.X_s_A = 10;
  big.F_e_A = 10.0 * sc.C0 / (sc.rho_s_hat * sc.tau * sc.T);
  const auto s1 = actual_satisfaction(big, ref, sc);
  CHECK(s1.comm == 1.0);
  CHECK(s1.sens == 1.0);
  CHECK(s1.avg == 1.0);

  // spreadsheet-style evaluation of a deliberately tight decision
  PlanningDecision d;
  d.rho_c = 0.9;
  d.X_c_A = 700;  // under-provisioned on purpose
  d.X_s_I = 5;
  d.D_max = d_max(5.0, 0.9, ref.lambda_I, sc);
  d.X_s_A = 1;
  d.F_e_A = 1.0 * sc.C0 / (sc.rho_s_hat * sc.tau * sc.T);

  const double e_n = expected_devices(ref.lambda_I, sc);
  const double r_bar = 0.9 * sc.R0 * 700.0 / (1.0 + (e_n - 1.0) * 0.9);
  const double want_comm = std::min(1.0, r_bar / sc.R_hat);
  const SpatialModel model = ref;
  const double dev = std::min({contact_cdf(model, d.D_max) * 5.5, 2.0, 20.0});
  const double cap = 20.0 + e_n * dev;
  const double demand = e_n * contact_cdf(model, sc.D_hat) * 5.5;
  const auto s2 = actual_satisfaction(d, ref, sc);
  CHECK(s2.comm == doctest::Approx(want_comm));
  CHECK(s2.sens == doctest::Approx(std::min(1.0, cap / demand)));
  CHECK(s2.avg == doctest::Approx(0.5 * (s2.comm + s2.sens)));

  // mixed ratios average as expected
  CHECK(actual_satisfaction(d, ref, sc).avg ==
        doctest::Approx(0.5 * (s2.comm + s2.sens)));

  // zero demand counts as satisfied
  const JointParams empty_ref{2e-5, 0.0, 0.0};
  CHECK(actual_satisfaction(d, empty_ref, sc).sens == 1.0);
}

TEST_CASE("case selection: no drift keeps the joint candidate, emulation picks the winner") {
  SystemConstants sc;
  HarnessConfig cfg = tiny_config();
  const ScenarioData data(cfg, 0, par::Exec::serial);
  const auto instances = build_instances(data.window_snapshots(5));

  const SpatialModel joint = JointParams{data.joint_ref(5).lambda_I, data.joint_ref(5).mu_U,
                                         data.joint_ref(5).sigma_U};
  const SpatialModel indep = IndependentParams{data.indep_ref(5).lambda_I,
                                               data.indep_ref(5).lambda_U};
  const PlanningDecision joint_cand = plan(joint, sc);
  const PlanningDecision indep_cand = plan(indep, sc);

  std::string chosen;
  const auto no_drift = pick_decision(false, joint_cand, indep_cand, instances, sc, &chosen);
  CHECK(chosen == "joint");
  CHECK(no_drift.X_c_A == joint_cand.X_c_A);

  const auto joint_eval = evaluate(joint_cand, instances, sc);
  const auto indep_eval = evaluate(indep_cand, instances, sc);
  const auto drift = pick_decision(true, joint_cand, indep_cand, instances, sc, &chosen);
  if (indep_eval.delta < joint_eval.delta) {
    CHECK(chosen == "independent");
    CHECK(drift.X_c_A == indep_cand.X_c_A);
  } else {
    CHECK(chosen == "joint");
  }

  // a hopeless joint candidate loses to the independent one
  PlanningDecision broken = joint_cand;
  broken.X_c_A = 1;
  broken.X_s_A = 0;
  broken.F_e_A = 0.0;
  broken.D_max = 0.0;
  const auto fixed = pick_decision(true, broken, indep_cand, instances, sc, &chosen);
  CHECK(chosen == "independent");
  CHECK(fixed.X_c_A == indep_cand.X_c_A);

  // ties keep the joint model
  const auto tie = pick_decision(true, joint_cand, joint_cand, instances, sc, &chosen);
  CHECK(chosen == "joint");
  CHECK(tie.X_c_A == joint_cand.X_c_A);
}

TEST_CASE("csv: header, empty file, round trip") {
  namespace fs = std::filesystem;
  const std::string path = (fs::temp_directory_path() / "isac_csv_test.csv").string();

  emit_csv({}, path);
  CHECK(slurp(path) == std::string(kWindowCsvHeader) + "\n");

  std::vector<WindowMetrics> rows(2);
  rows[0].run = 0;
  rows[0].window = 3;
  rows[0].scheme = "joint";
  rows[0].sat_comm = 0.987654321987654;
  rows[0].sat_sens = 1.0;
  rows[0].sat_avg = 0.5 * (rows[0].sat_comm + 1.0);
  rows[0].cost = {1.1e7, 2e6, 9e6, 6.6e9, 1.1e7 + 2e6 + 9e6 + 6.6e6};
  rows[0].mape_lI = 0.0123456789;
  rows[0].H_S = 1;
  rows[0].chosen_model = "joint";
  rows[0].decision = {5.4321, 0.876, 812, 7, 3, 6e9};
  rows[1] = rows[0];
  rows[1].window = 4;
  rows[1].scheme = "independent";
  rows[1].chosen_model = "independent";

  emit_csv(rows, path);
  const auto parsed = parse_csv(path);
  REQUIRE(parsed.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(parsed[i].run == rows[i].run);
    CHECK(parsed[i].window == rows[i].window);
    CHECK(parsed[i].scheme == rows[i].scheme);
    CHECK(parsed[i].sat_comm == rows[i].sat_comm);
    CHECK(parsed[i].cost.Z == rows[i].cost.Z);
    CHECK(parsed[i].mape_lI == rows[i].mape_lI);
    CHECK(parsed[i].H_S == rows[i].H_S);
    CHECK(parsed[i].decision.rho_c == rows[i].decision.rho_c);
    CHECK(parsed[i].decision.X_c_A == rows[i].decision.X_c_A);
    CHECK(parsed[i].decision.F_e_A == rows[i].decision.F_e_A);
    CHECK(parsed[i].decision.D_max == rows[i].decision.D_max);
  }
  CHECK_THROWS_AS(emit_csv(rows, "/nonexistent-dir/x.csv"), std::runtime_error);
  fs::remove(path);
}

TEST_CASE("sliding mean: window arithmetic") {
  std::vector<double> v(50, 0.0);
  for (int i = 0; i < 50; ++i) v[static_cast<std::size_t>(i)] = i;
  const auto s = sliding_mean(v, 20);
  CHECK(s.size() == 31);  // n - width + 1
  CHECK(s.front() == doctest::Approx(9.5));
  CHECK(s.back() == doctest::Approx(39.5));
}

TEST_CASE("experiment rows, determinism, and the serial reference") {
  HarnessConfig cfg = tiny_config();
  cfg.schemes = {SchemeKind::joint_ideal, SchemeKind::independent_ideal};
  cfg.scen.runs = 2;

  const auto r1 = run_experiment(cfg, par::Exec::parallel);
  CHECK(r1.rows.size() == 2u * 2u * 30u);

  const auto r2 = run_experiment(cfg, par::Exec::parallel);
  CHECK(format_csv(r1.rows) == format_csv(r2.rows));

  const auto r3 = run_experiment(cfg, par::Exec::serial);
  CHECK(format_csv(r1.rows) == format_csv(r3.rows));
}

TEST_CASE("without drift the adaptive scheme degenerates to the joint scheme") {
  HarnessConfig cfg = tiny_config();
  cfg.scen.windows = 28;
  cfg.drift.theta_abs = 10.0;  // no error ever counts as drastic
  cfg.drift.theta_rel = 1e9;
  cfg.schemes = {SchemeKind::dt_adaptive, SchemeKind::joint};

  const auto res = run_experiment(cfg, par::Exec::parallel);
  std::vector<WindowMetrics> dt_rows, joint_rows;
  for (const auto& r : res.rows) {
    (r.scheme == "dt_adaptive" ? dt_rows : joint_rows).push_back(r);
  }
  REQUIRE(dt_rows.size() == joint_rows.size());
  for (std::size_t i = 0; i < dt_rows.size(); ++i) {
    CHECK(dt_rows[i].H_S == 0);
    CHECK(dt_rows[i].H_D == 0);
    CHECK(dt_rows[i].chosen_model == "joint");
    CHECK(dt_rows[i].decision.rho_c == joint_rows[i].decision.rho_c);
    CHECK(dt_rows[i].decision.X_c_A == joint_rows[i].decision.X_c_A);
    CHECK(dt_rows[i].decision.X_s_I == joint_rows[i].decision.X_s_I);
    CHECK(dt_rows[i].decision.X_s_A == joint_rows[i].decision.X_s_A);
    CHECK(dt_rows[i].cost.Z == joint_rows[i].cost.Z);
  }
}

TEST_CASE("ideal schemes plan from the true generation parameters") {
  HarnessConfig cfg = tiny_config();
  cfg.scen.windows = 6;
  const ScenarioData data(cfg, 1, par::Exec::serial);
  std::vector<ParamRow> rows;
  run_scheme(cfg, data, SchemeKind::joint_ideal, &rows);
  REQUIRE_FALSE(rows.empty());
  for (const auto& r : rows) {
    const auto& truth = data.truth(r.window);
    if (r.parameter == "lambda_I") CHECK(r.predicted == truth.lambda_I);
    if (r.parameter == "mu_U") CHECK(r.predicted == truth.mean_targets);
    if (r.parameter == "sigma_U") {
      CHECK(r.predicted == true_sigma_U(truth.nu, cfg.sys.D_hat));
    }
  }
}

TEST_CASE("ideal schemes stay close to full satisfaction on model-matched scenarios") {
  // When the generator family matches the planning family, perfect parameter
  // knowledge must keep the satisfaction ratio at essentially one.
  HarnessConfig cfg = tiny_config();
  cfg.scen.windows = 20;
  cfg.schemes = {SchemeKind::joint_ideal, SchemeKind::independent_ideal};
  const auto res = run_experiment(cfg, par::Exec::parallel);
  double acc = 0.0;
  int n = 0;
  for (const auto& r : res.rows) {
    if (r.scheme == "joint_ideal") {
      acc += r.sat_avg;
      ++n;
    }
  }
  CHECK(acc / n >= 0.98);
}

TEST_SUITE_END();
