#pragma once

#include <optional>
#include <string>
#include <vector>

#include "isac/config.hpp"
#include "isac/csv.hpp"
#include "isac/drift.hpp"
#include "isac/emulator.hpp"
#include "isac/models.hpp"
#include "isac/planner.hpp"
#include "isac/predictor.hpp"
#include "isac/scenario.hpp"

namespace isac {

struct Satisfaction {
  double comm = 1.0;
  double sens = 1.0;
  double avg = 1.0;
};

// Actual per-window satisfaction of a deployed decision, measured against the
// end-of-window reference fit (joint form, since the reference fit carries the
// cluster structure). Zero demand counts as satisfied.
Satisfaction actual_satisfaction(const PlanningDecision& decision, const JointParams& reference,
                                 const SystemConstants& sc);

// One run's ground truth: per-window reference fits and true generation
// parameters. Snapshots are regenerated on demand from the same derived
// streams, so they never need to stay resident.
class ScenarioData {
 public:
  ScenarioData(const HarnessConfig& cfg, int run, par::Exec exec = par::Exec::parallel);

  int windows() const { return static_cast<int>(joint_refs_.size()); }
  int run() const { return run_; }
  const JointParams& joint_ref(int k) const { return joint_refs_.at(k); }
  const IndependentParams& indep_ref(int k) const { return indep_refs_.at(k); }
  const WindowParams& truth(int k) const { return truths_.at(k); }
  const std::vector<int>& switches() const { return switches_; }

  std::vector<Snapshot> window_snapshots(int k) const;

 private:
  HarnessConfig cfg_;
  int run_ = 0;
  RunPhases phases_;
  std::vector<int> switches_;
  std::vector<JointParams> joint_refs_;
  std::vector<IndependentParams> indep_refs_;
  std::vector<WindowParams> truths_;
};

// Case selection used in the per-window loop: no drift deploys the joint
// candidate, otherwise the emulator picks the smaller-gap candidate (ties go
// to the joint model).
PlanningDecision pick_decision(bool drift_active, const PlanningDecision& joint_candidate,
                               const std::optional<PlanningDecision>& indep_candidate,
                               std::span<const EmulationInstance> instances,
                               const SystemConstants& sc, std::string* chosen_model);

// Runs one scheme over one generated run. param_rows, when given, receives the
// per-window (reference, predicted) history of the scheme's tracked params.
std::vector<WindowMetrics> run_scheme(const HarnessConfig& cfg, const ScenarioData& data,
                                      SchemeKind scheme,
                                      std::vector<ParamRow>* param_rows = nullptr);

struct ExperimentResult {
  std::vector<WindowMetrics> rows;  // ordered by (run, scheme order, window)
  std::vector<std::vector<ParamRow>> param_rows;  // same (run, scheme) order
};

ExperimentResult run_experiment(const HarnessConfig& cfg, par::Exec exec = par::Exec::parallel);

// windows.csv, params_r<run>_<scheme>.csv, modeling_error.csv, summary.csv
void write_outputs(const ExperimentResult& result, const HarnessConfig& cfg);

// Sliding mean with the given width; output length is n - width + 1.
std::vector<double> sliding_mean(std::span<const double> values, int width);

// Windows excluded from aggregate metrics while predictors warm up.
int bootstrap_windows(const HarnessConfig& cfg);

}  // namespace isac
