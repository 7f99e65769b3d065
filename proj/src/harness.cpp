#include "isac/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <stdexcept>

namespace isac {

namespace {
constexpr std::uint64_t kTagSnapshot = 0x736e6170ULL;
constexpr std::uint64_t kTagPredictor = 0x70726564ULL;
constexpr double kMapeEps = 1e-12;

double abs_pct_err(double predicted, double reference) {
  return std::abs(predicted - reference) / std::max(std::abs(reference), kMapeEps);
}

std::vector<Param> tracked_params(SchemeKind scheme) {
  switch (scheme) {
    case SchemeKind::independent:
    case SchemeKind::independent_ideal:
      return {Param::lambda_I, Param::lambda_U};
    case SchemeKind::joint:
    case SchemeKind::joint_ideal:
      return {Param::lambda_I, Param::mu_U, Param::sigma_U};
    case SchemeKind::dt_adaptive:
      return {Param::lambda_I, Param::lambda_U, Param::mu_U, Param::sigma_U};
  }
  return {};
}

bool is_ideal(SchemeKind scheme) {
  return scheme == SchemeKind::joint_ideal || scheme == SchemeKind::independent_ideal;
}

bool is_independent_family(SchemeKind scheme) {
  return scheme == SchemeKind::independent || scheme == SchemeKind::independent_ideal;
}
}  // namespace

int bootstrap_windows(const HarnessConfig& cfg) { return 2 * cfg.pred.lookback; }

Satisfaction actual_satisfaction(const PlanningDecision& decision, const JointParams& reference,
                                 const SystemConstants& sc) {
  Satisfaction s;
  const SpatialModel model = reference;
  const double r_bar =
      comm_capacity(decision.rho_c, static_cast<double>(decision.X_c_A), reference.lambda_I, sc);
  s.comm = sc.R_hat > 0.0 ? std::min(1.0, r_bar / sc.R_hat) : 1.0;
  const CapacityBreakdown cb = sensing_capacities(decision, model, sc);
  if (cb.E_N_U <= 0.0) {
    s.sens = 1.0;
  } else {
    s.sens = std::min(1.0, (cb.N_A_U + cb.E_N_I * cb.N_I_U) / cb.E_N_U);
  }
  s.avg = 0.5 * (s.comm + s.sens);
  return s;
}

ScenarioData::ScenarioData(const HarnessConfig& cfg, int run, par::Exec exec)
    : cfg_(cfg), run_(run) {
  phases_ = draw_phases(cfg.scen, run);
  switches_ = drift_schedule(cfg.scen.drift_frequency, cfg.scen.windows);
  const int n = cfg.scen.windows;
  joint_refs_.resize(n);
  indep_refs_.resize(n);
  truths_.resize(n);
  par::parallel_for(static_cast<std::size_t>(n), exec, [&](std::size_t k) {
    truths_[k] = params_at(static_cast<int>(k), cfg_.scen, phases_, switches_);
    const auto snaps = window_snapshots(static_cast<int>(k));
    joint_refs_[k] = fit_joint(snaps);
    indep_refs_[k] = fit_independent(snaps, cfg_.sys.D_hat);
  });
}

std::vector<Snapshot> ScenarioData::window_snapshots(int k) const {
  const HexRegion region{{0.0, 0.0}, cfg_.sys.r0};
  const WindowParams params = params_at(k, cfg_.scen, phases_, switches_);
  const int per_ap = cfg_.sys.M / cfg_.sys.M0;
  std::vector<Snapshot> snaps;
  snaps.reserve(static_cast<std::size_t>(per_ap) * cfg_.sys.L);
  for (int ap = 1; ap <= cfg_.sys.L; ++ap) {
    for (int i = 1; i <= per_ap; ++i) {
      RngStream rng = RngStream::derive(
          cfg_.scen.seed, {kTagSnapshot, static_cast<std::uint64_t>(run_),
                           static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(ap),
                           static_cast<std::uint64_t>(i)});
      snaps.push_back(
          generate_snapshot(params, region, cfg_.sys.D_hat, rng, k, i * cfg_.sys.M0, ap));
    }
  }
  return snaps;
}

PlanningDecision pick_decision(bool drift_active, const PlanningDecision& joint_candidate,
                               const std::optional<PlanningDecision>& indep_candidate,
                               std::span<const EmulationInstance> instances,
                               const SystemConstants& sc, std::string* chosen_model) {
  if (!drift_active || !indep_candidate.has_value()) {
    if (chosen_model != nullptr) *chosen_model = "joint";
    return joint_candidate;
  }
  const EvaluationResult joint_eval = evaluate(joint_candidate, instances, sc);
  const EvaluationResult indep_eval = evaluate(*indep_candidate, instances, sc);
  if (indep_eval.delta < joint_eval.delta) {
    if (chosen_model != nullptr) *chosen_model = "independent";
    return *indep_candidate;
  }
  if (chosen_model != nullptr) *chosen_model = "joint";
  return joint_candidate;
}

namespace {

struct SchemeState {
  std::map<Param, GruPredictor> predictors;
  std::map<Param, std::vector<double>> refs;   // references seen so far
  std::map<Param, double> last_pred;           // prediction made for window k
  std::map<Param, int> episode_anchor;         // first window of the active drift episode
  DriftController controller;

  explicit SchemeState(const DriftConfig& cfg) : controller(cfg) {}
};

double reference_value(const ScenarioData& data, Param p, int k) {
  switch (p) {
    case Param::lambda_I: return data.joint_ref(k).lambda_I;
    case Param::lambda_U: return data.indep_ref(k).lambda_U;
    case Param::mu_U: return data.joint_ref(k).mu_U;
    case Param::sigma_U: return data.joint_ref(k).sigma_U;
  }
  return 0.0;
}

double true_value(const ScenarioData& data, Param p, int k, double D_hat) {
  const WindowParams& t = data.truth(k);
  switch (p) {
    case Param::lambda_I: return t.lambda_I;
    case Param::lambda_U: return true_lambda_U(t.mean_targets, D_hat);
    case Param::mu_U: return t.mean_targets;
    case Param::sigma_U: return true_sigma_U(t.nu, D_hat);
  }
  return 0.0;
}

}  // namespace

std::vector<WindowMetrics> run_scheme(const HarnessConfig& cfg, const ScenarioData& data,
                                      SchemeKind scheme, std::vector<ParamRow>* param_rows) {
  const int n_windows = data.windows();
  const int boot = bootstrap_windows(cfg);
  const auto params = tracked_params(scheme);
  const bool ideal = is_ideal(scheme);
  const bool indep_family = is_independent_family(scheme);
  const bool adaptive = scheme == SchemeKind::dt_adaptive;

  SchemeState state(cfg.drift);
  for (Param p : kAllParams) state.refs[p] = {};

  std::vector<WindowMetrics> rows;
  rows.reserve(static_cast<std::size_t>(n_windows));

  for (int k = 0; k < n_windows; ++k) {
    // Feed the error of the previous window's prediction to the drift logic.
    if (adaptive && k >= 1 && k - 1 >= boot) {
      for (Param p : params) {
        state.controller.observe(p, abs_pct_err(state.last_pred[p], reference_value(data, p, k - 1)));
      }
    }

    ModelSet model_set;  // joint only by default
    if (adaptive) {
      model_set = state.controller.update();
      // Retrain on references collected since the episode began: the windows
      // whose errors raised the flag plus everything after them. Old-regime
      // history stays out so the refreshed model commits to the new level.
      for (Param p : kAllParams) {
        if (model_set.retrain.count(p) == 0) {
          state.episode_anchor.erase(p);
          continue;
        }
        if (state.episode_anchor.find(p) == state.episode_anchor.end()) {
          state.episode_anchor[p] = std::max(0, k - cfg.drift.K1);
        }
        const auto& refs = state.refs[p];
        int lo = state.episode_anchor[p];
        lo = std::max(lo, static_cast<int>(refs.size()) - cfg.retrain_window);
        const int available = static_cast<int>(refs.size()) - lo;
        if (k >= boot && available >= 2 * cfg.pred.lookback) {
          std::span<const double> tail(refs.data() + lo, static_cast<std::size_t>(available));
          PredictorConfig pc = cfg.pred;
          pc.seed = RngStream::derive(cfg.scen.seed,
                                      {kTagPredictor, static_cast<std::uint64_t>(data.run()),
                                       static_cast<std::uint64_t>(p),
                                       static_cast<std::uint64_t>(k)})
                        .next_u64();
          GruPredictor fresh(pc);
          fresh.fit(tail, cfg.retrain_epochs);
          state.predictors[p] = std::move(fresh);
        }
      }
    }

    // One-shot training once the bootstrap history is complete.
    if (!ideal && k == boot) {
      for (Param p : params) {
        PredictorConfig pc = cfg.pred;
        pc.seed = RngStream::derive(cfg.scen.seed,
                                    {kTagPredictor, static_cast<std::uint64_t>(data.run()),
                                     static_cast<std::uint64_t>(p), 0ULL})
                      .next_u64();
        state.predictors[p] = train_predictor(state.refs[p], pc);
      }
    }

    // Predictions for window k.
    std::map<Param, double> pred;
    for (Param p : kAllParams) {
      if (ideal) {
        pred[p] = true_value(data, p, k, cfg.sys.D_hat);
      } else if (k == 0) {
        pred[p] = reference_value(data, p, 0);  // cold start, excluded from aggregates
      } else if (k < boot || state.predictors.find(p) == state.predictors.end()) {
        pred[p] = state.refs[p].back();  // last-value fallback
      } else {
        pred[p] = predict_params(state.predictors.at(p), state.refs[p]);
      }
    }

    const JointParams joint_pred{pred[Param::lambda_I], pred[Param::mu_U], pred[Param::sigma_U]};
    const IndependentParams indep_pred{pred[Param::lambda_I], pred[Param::lambda_U]};

    const PlanOptions plan_opts{cfg.rho_grid_step, par::Exec::parallel};
    PlanningDecision decision;
    std::string chosen = "joint";
    const bool bootstrapping = !ideal && k < boot;
    if (bootstrapping) {
      decision = plan(joint_pred, cfg.sys, plan_opts);
    } else if (indep_family) {
      decision = plan(indep_pred, cfg.sys, plan_opts);
      chosen = "independent";
    } else if (!adaptive) {
      decision = plan(joint_pred, cfg.sys, plan_opts);
    } else {
      const bool drift_active = model_set.independent && k >= 1;
      const PlanningDecision joint_candidate = plan(joint_pred, cfg.sys, plan_opts);
      std::optional<PlanningDecision> indep_candidate;
      std::vector<EmulationInstance> instances;
      if (drift_active) {
        indep_candidate = plan(indep_pred, cfg.sys, plan_opts);
        instances = build_instances(data.window_snapshots(k - 1));
      }
      decision = pick_decision(drift_active, joint_candidate, indep_candidate, instances, cfg.sys,
                               &chosen);
    }

    // The window elapses; measure against its end-of-window reference fit.
    const JointParams& ref = data.joint_ref(k);
    const Satisfaction sat = actual_satisfaction(decision, ref, cfg.sys);

    WindowMetrics row;
    row.run = data.run();
    row.window = k;
    row.scheme = scheme_name(scheme);
    row.sat_comm = sat.comm;
    row.sat_sens = sat.sens;
    row.sat_avg = sat.avg;
    row.cost = cost(decision, cfg.sys);
    const DriftFlags flags = adaptive ? state.controller.active() : DriftFlags{};
    row.H_S = flags.H_S ? 1 : 0;
    row.H_D = flags.H_D ? 1 : 0;
    row.chosen_model = chosen;
    row.decision = decision;

    std::map<Param, double*> mape_field{{Param::lambda_I, &row.mape_lI},
                                        {Param::lambda_U, &row.mape_lU},
                                        {Param::mu_U, &row.mape_mU},
                                        {Param::sigma_U, &row.mape_sU}};
    for (Param p : params) {
      const double ref_val = reference_value(data, p, k);
      *mape_field[p] = abs_pct_err(pred[p], ref_val);
      if (param_rows != nullptr) {
        param_rows->push_back({k, param_name(p), ref_val, pred[p]});
      }
    }
    rows.push_back(std::move(row));

    // Book-keeping for the next window.
    for (Param p : kAllParams) {
      state.refs[p].push_back(reference_value(data, p, k));
      state.last_pred[p] = pred[p];
    }
  }
  return rows;
}

ExperimentResult run_experiment(const HarnessConfig& cfg, par::Exec exec) {
  cfg.sys.validate();
  const int runs = cfg.scen.runs;
  const int n_schemes = static_cast<int>(cfg.schemes.size());
  if (runs < 1 || n_schemes < 1) throw std::invalid_argument("need at least one run and scheme");

  std::vector<std::unique_ptr<ScenarioData>> scenarios(static_cast<std::size_t>(runs));
  par::parallel_for(static_cast<std::size_t>(runs), exec, [&](std::size_t r) {
    scenarios[r] = std::make_unique<ScenarioData>(cfg, static_cast<int>(r));
  });

  const std::size_t combos = static_cast<std::size_t>(runs) * n_schemes;
  std::vector<std::vector<WindowMetrics>> rows(combos);
  std::vector<std::vector<ParamRow>> param_rows(combos);
  par::parallel_for(combos, exec, [&](std::size_t i) {
    const int run = static_cast<int>(i) / n_schemes;
    const SchemeKind scheme = cfg.schemes[i % n_schemes];
    rows[i] = run_scheme(cfg, *scenarios[run], scheme, &param_rows[i]);
  });

  ExperimentResult result;
  result.param_rows = std::move(param_rows);
  for (auto& r : rows) {
    result.rows.insert(result.rows.end(), std::make_move_iterator(r.begin()),
                       std::make_move_iterator(r.end()));
  }
  return result;
}

std::vector<double> sliding_mean(std::span<const double> values, int width) {
  if (width < 1) throw std::invalid_argument("sliding width must be positive");
  if (static_cast<int>(values.size()) < width) return {};
  std::vector<double> out;
  out.reserve(values.size() - static_cast<std::size_t>(width) + 1);
  double acc = 0.0;
  for (int i = 0; i < width; ++i) acc += values[i];
  out.push_back(acc / width);
  for (std::size_t i = static_cast<std::size_t>(width); i < values.size(); ++i) {
    acc += values[i] - values[i - static_cast<std::size_t>(width)];
    out.push_back(acc / width);
  }
  return out;
}

void write_outputs(const ExperimentResult& result, const HarnessConfig& cfg) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out_dir);
  emit_csv(result.rows, cfg.out_dir + "/windows.csv");

  const int n_schemes = static_cast<int>(cfg.schemes.size());
  for (std::size_t i = 0; i < result.param_rows.size(); ++i) {
    const int run = static_cast<int>(i) / n_schemes;
    const SchemeKind scheme = cfg.schemes[i % n_schemes];
    emit_param_csv(result.param_rows[i], cfg.out_dir + "/params_r" + std::to_string(run) + "_" +
                                             scheme_name(scheme) + ".csv");
  }

  // Width-20 sliding mean of the per-window mean MAPE over tracked params.
  std::ofstream err_file(cfg.out_dir + "/modeling_error.csv", std::ios::binary);
  if (!err_file) throw std::runtime_error("cannot open modeling_error.csv for writing");
  err_file << "run,scheme,window,mape_sliding\n";
  std::ofstream summary(cfg.out_dir + "/summary.csv", std::ios::binary);
  if (!summary) throw std::runtime_error("cannot open summary.csv for writing");
  summary << "run,scheme,mean_sat_comm,mean_sat_sens,mean_sat_avg,mean_Z,post_sat_avg,post_Z,"
             "joint_utilization\n";

  const int boot = bootstrap_windows(cfg);
  const auto switches = drift_schedule(cfg.scen.drift_frequency, cfg.scen.windows);
  const int first_switch = switches.front();
  constexpr int kSlidingWidth = 20;

  for (int run = 0; run < cfg.scen.runs; ++run) {
    for (SchemeKind scheme : cfg.schemes) {
      std::vector<double> window_mape;
      double sat_c = 0, sat_s = 0, sat_a = 0, z = 0;
      double post_sat = 0, post_z = 0;
      int n = 0, n_post = 0, n_joint = 0, n_counted = 0;
      for (const auto& row : result.rows) {
        if (row.run != run || row.scheme != scheme_name(scheme)) continue;
        const auto tracked = tracked_params(scheme);
        double m = 0.0;
        for (Param p : tracked) {
          switch (p) {
            case Param::lambda_I: m += row.mape_lI; break;
            case Param::lambda_U: m += row.mape_lU; break;
            case Param::mu_U: m += row.mape_mU; break;
            case Param::sigma_U: m += row.mape_sU; break;
          }
        }
        window_mape.push_back(m / static_cast<double>(tracked.size()));
        if (row.window >= boot) {
          sat_c += row.sat_comm;
          sat_s += row.sat_sens;
          sat_a += row.sat_avg;
          z += row.cost.Z;
          ++n;
          if (row.chosen_model == "joint") ++n_joint;
          ++n_counted;
          if (row.window > first_switch) {
            post_sat += row.sat_avg;
            post_z += row.cost.Z;
            ++n_post;
          }
        }
      }
      if (n == 0) continue;
      const auto smooth = sliding_mean(window_mape, kSlidingWidth);
      for (std::size_t i = 0; i < smooth.size(); ++i) {
        err_file << run << ',' << scheme_name(scheme) << ','
                 << (static_cast<int>(i) + kSlidingWidth - 1) << ',';
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", smooth[i]);
        err_file << buf << '\n';
      }
      auto emitnum = [&](double v) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        summary << buf;
      };
      summary << run << ',' << scheme_name(scheme) << ',';
      emitnum(sat_c / n); summary << ',';
      emitnum(sat_s / n); summary << ',';
      emitnum(sat_a / n); summary << ',';
      emitnum(z / n); summary << ',';
      emitnum(n_post > 0 ? post_sat / n_post : 1.0); summary << ',';
      emitnum(n_post > 0 ? post_z / n_post : 0.0); summary << ',';
      emitnum(n_counted > 0 ? static_cast<double>(n_joint) / n_counted : 1.0);
      summary << '\n';
    }
  }
}

}  // namespace isac
