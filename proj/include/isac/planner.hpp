#pragma once

#include "isac/constants.hpp"
#include "isac/models.hpp"
#include "isac/par.hpp"

namespace isac {

// One network planning decision: RoI partition radius, communication active
// probability, and the reserved spectrum/compute amounts.
struct PlanningDecision {
  double D_max = 0.0;       // on-device sensing subregion radius [m]
  double rho_c = 1.0;       // communication active probability
  long long X_c_A = 0;      // communication subcarriers per AP
  long long X_s_I = 0;      // shared sensing bands for devices
  long long X_s_A = 0;      // track beams per AP
  double F_e_A = 0.0;       // edge compute per AP [cycles/s]
};

// Real-valued solution of the per-rho closed forms, before rounding.
struct RelaxedDecision {
  double x_c_A = 0.0;
  double x_s_I = 0.0;
  double x_s_A = 0.0;
  double f_e_A = 0.0;
};

struct CapacityBreakdown {
  double R_bar = 0.0;          // communication capacity [bits/slot]
  double E_N_I = 0.0;          // expected devices per AP
  double E_N_U = 0.0;          // expected targets in RoIs per AP
  double N_I_U = 0.0;          // per-device sensing capacity [targets]
  double N_A_U = 0.0;          // per-AP sensing capacity [targets]
  double t_proc_device = 0.0;  // device processing time per interval [s]
  double t_proc_ap = 0.0;      // AP processing time per interval [s]
};

struct CostBreakdown {
  double Z_c_A = 0.0;  // Hz
  double Z_s_I = 0.0;  // Hz
  double Z_s_A = 0.0;  // Hz
  double Z_e_A = 0.0;  // cycles/s
  double Z = 0.0;      // cost units
};

// E[N^I] conditioned on at least one device being present.
double expected_devices(double lambda_I, const SystemConstants& sc);

// Lower bound of the per-device expected transmission rate.
double comm_capacity(double rho_c, double x_c_A, double lambda_I, const SystemConstants& sc);

// Expected number of targets inside the RoIs per AP coverage area.
double sensing_demand(const SpatialModel& model, const SystemConstants& sc);

// Quarter-power range scale of the SIR constraint.
double vartheta(double lambda_I, const SystemConstants& sc);

// Maximum target distance for which the SIR requirement holds, uncapped and
// capped at the RoI radius. rho_c == 1 with bands reserved returns the cap.
double d_max_uncapped(double X_s_I, double rho_c, double lambda_I, const SystemConstants& sc);
double d_max(double X_s_I, double rho_c, double lambda_I, const SystemConstants& sc);

// Smallest admissible rho_c for the per-rho closed forms.
double rho_c_min(const SpatialModel& model, const SystemConstants& sc);

// Optimal real-valued reservations for a fixed rho_c. Throws std::domain_error
// when rho_c is below rho_c_min.
RelaxedDecision closed_form_given_rho(double rho_c, const SpatialModel& model,
                                      const SystemConstants& sc);

CapacityBreakdown sensing_capacities(const PlanningDecision& decision, const SpatialModel& model,
                                     const SystemConstants& sc);

CostBreakdown cost(const PlanningDecision& decision, const SystemConstants& sc);

// Rate and tracking feasibility of a rounded decision under the model.
bool feasible(const PlanningDecision& decision, const SpatialModel& model,
              const SystemConstants& sc);

struct PlanOptions {
  double grid_step = 1e-3;
  par::Exec exec = par::Exec::parallel;
};

// Grid search over rho_c; each candidate uses the closed forms, rounds the
// integer fields up, and is kept only if feasible. rho_c = 1 is always
// admissible, so the search cannot come back empty.
PlanningDecision plan(const SpatialModel& model, const SystemConstants& sc,
                      const PlanOptions& opts = {});

// Straight-loop reference implementation; bit-identical to plan().
PlanningDecision plan_serial(const SpatialModel& model, const SystemConstants& sc,
                             double grid_step = 1e-3);

// Conditioned slot-level sample used by the rate-bound Monte Carlo oracle.
struct CommSlotSample {
  long long n_devices = 1;  // N^I >= 1
  long long n_active = 1;   // devices scheduled for communication, >= 1
  double rate = 0.0;        // per-device rate [bits/slot]
};

}  // namespace isac
