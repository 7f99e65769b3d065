#pragma once

#include <span>
#include <vector>

#include "isac/planner.hpp"

namespace isac {

// Deterministic slice instance built from one historical snapshot.
struct EmulationInstance {
  PointPattern devices;
  PointPattern targets;
};

struct EvaluationResult {
  double delta_c = 0.0;  // communication demand-capacity gap
  double delta_s = 0.0;  // sensing demand-capacity gap
  double delta = 0.0;    // (delta_c + delta_s) / 2
};

// One instance per collected snapshot, point sets copied verbatim.
// Throws std::invalid_argument on empty input.
std::vector<EmulationInstance> build_instances(std::span<const Snapshot> snapshots);

// Pooled device-intensity MLE over all instances.
double pooled_device_intensity(std::span<const EmulationInstance> instances);

// |R_bar - R_hat| / R_hat with the pooled intensity replacing the predicted one.
double emulate_comm_gap(const PlanningDecision& decision,
                        std::span<const EmulationInstance> instances, const SystemConstants& sc);

// Counted sensing demand vs. decision-induced capacity across the instances.
// Zero total demand yields 0.
double emulate_sensing_gap(const PlanningDecision& decision,
                           std::span<const EmulationInstance> instances, const SystemConstants& sc,
                           par::Exec exec = par::Exec::parallel);

EvaluationResult evaluate(const PlanningDecision& decision,
                          std::span<const EmulationInstance> instances, const SystemConstants& sc,
                          par::Exec exec = par::Exec::parallel);

// Straight-loop reference, bit-identical to evaluate().
EvaluationResult evaluate_serial(const PlanningDecision& decision,
                                 std::span<const EmulationInstance> instances,
                                 const SystemConstants& sc);

}  // namespace isac
