#include "isac/emulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "isac/sampling.hpp"

namespace isac {

std::vector<EmulationInstance> build_instances(std::span<const Snapshot> snapshots) {
  if (snapshots.empty()) throw std::invalid_argument("build_instances requires snapshots");
  std::vector<EmulationInstance> instances;
  instances.reserve(snapshots.size());
  for (const auto& s : snapshots) instances.push_back({s.devices, s.targets});
  return instances;
}

double pooled_device_intensity(std::span<const EmulationInstance> instances) {
  if (instances.empty()) throw std::invalid_argument("pooled intensity requires instances");
  double devices = 0.0;
  double area = 0.0;
  for (const auto& inst : instances) {
    devices += static_cast<double>(inst.devices.size());
    area += inst.devices.region.area();
  }
  return devices / area;
}

double emulate_comm_gap(const PlanningDecision& decision,
                        std::span<const EmulationInstance> instances, const SystemConstants& sc) {
  const double lambda = pooled_device_intensity(instances);
  const double r_bar =
      comm_capacity(decision.rho_c, static_cast<double>(decision.X_c_A), lambda, sc);
  return std::abs(r_bar - sc.R_hat) / sc.R_hat;
}

namespace {

struct SensingTotals {
  double demand = 0.0;     // targets inside RoIs
  double monitored = 0.0;  // capped per-device monitored targets
  double devices = 0.0;
  long long instances = 0;

  SensingTotals& operator+=(const SensingTotals& o) {
    demand += o.demand;
    monitored += o.monitored;
    devices += o.devices;
    instances += o.instances;
    return *this;
  }
};

SensingTotals tally_instance(const EmulationInstance& inst, const PlanningDecision& decision,
                             const SystemConstants& sc) {
  SensingTotals t;
  t.instances = 1;
  t.devices = static_cast<double>(inst.devices.size());
  if (inst.devices.points.empty()) return t;
  std::vector<long long> assigned(inst.devices.size(), 0);
  for (const auto& target : inst.targets.points) {
    const auto nd = nearest_device(target, inst.devices);
    if (nd.distance <= sc.D_hat) t.demand += 1.0;
    if (nd.distance <= decision.D_max) assigned[static_cast<std::size_t>(nd.index)] += 1;
  }
  const double schedule_cap = (1.0 - decision.rho_c) / sc.rho_s_hat;
  const double compute_cap = sc.device_compute_cap();
  for (long long a : assigned) {
    t.monitored += std::min({static_cast<double>(a), schedule_cap, compute_cap});
  }
  return t;
}

}  // namespace

double emulate_sensing_gap(const PlanningDecision& decision,
                           std::span<const EmulationInstance> instances, const SystemConstants& sc,
                           par::Exec exec) {
  if (instances.empty()) throw std::invalid_argument("emulate_sensing_gap requires instances");
  const SensingTotals totals = par::blocked_reduce(
      instances.size(), 16, SensingTotals{},
      [&](std::size_t lo, std::size_t hi) {
        SensingTotals acc;
        for (std::size_t i = lo; i < hi; ++i) acc += tally_instance(instances[i], decision, sc);
        return acc;
      },
      [](SensingTotals a, const SensingTotals& b) {
        a += b;
        return a;
      },
      exec);

  const double n = static_cast<double>(totals.instances);
  const double demand_avg = totals.demand / n;
  if (demand_avg <= 0.0) return 0.0;
  const double e_n_i = totals.devices / n;
  const double n_i_u = totals.devices > 0.0 ? totals.monitored / totals.devices : 0.0;
  const double ap_slots = static_cast<double>(decision.X_s_A) / sc.rho_s_hat;
  const double ap_compute = sc.tau * sc.T * decision.F_e_A / sc.C0;
  const double n_a_u = std::min(ap_slots, ap_compute);
  const double capacity = n_a_u + e_n_i * n_i_u;
  return std::abs(demand_avg - capacity) / demand_avg;
}

EvaluationResult evaluate(const PlanningDecision& decision,
                          std::span<const EmulationInstance> instances, const SystemConstants& sc,
                          par::Exec exec) {
  EvaluationResult r;
  r.delta_c = emulate_comm_gap(decision, instances, sc);
  r.delta_s = emulate_sensing_gap(decision, instances, sc, exec);
  r.delta = 0.5 * (r.delta_c + r.delta_s);
  return r;
}

EvaluationResult evaluate_serial(const PlanningDecision& decision,
                                 std::span<const EmulationInstance> instances,
                                 const SystemConstants& sc) {
  return evaluate(decision, instances, sc, par::Exec::serial);
}

}  // namespace isac
