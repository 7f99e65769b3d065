#include "isac/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace isac {

namespace {
constexpr double kFeasTol = 1e-9;

long long ceil_count(double x) {
  if (x <= 0.0) return 0;
  return static_cast<long long>(std::ceil(x - 1e-9));
}
}  // namespace

double expected_devices(double lambda_I, const SystemConstants& sc) {
  if (!(lambda_I > 0.0)) throw std::invalid_argument("expected_devices requires lambda_I > 0");
  const double mean = lambda_I * sc.A0();
  return mean / (-std::expm1(-mean));
}

double comm_capacity(double rho_c, double x_c_A, double lambda_I, const SystemConstants& sc) {
  if (!(rho_c > 0.0) || rho_c > 1.0) throw std::invalid_argument("rho_c must lie in (0, 1]");
  if (x_c_A < 0.0) throw std::invalid_argument("subcarrier count must be nonnegative");
  const double e_n = expected_devices(lambda_I, sc);
  return rho_c * sc.R0 * x_c_A / (1.0 + (e_n - 1.0) * rho_c);
}

double sensing_demand(const SpatialModel& model, const SystemConstants& sc) {
  const double e1 = expected_targets_nearest(model);
  if (e1 == 0.0) return 0.0;
  return expected_devices(lambda_of(model), sc) * contact_cdf(model, sc.D_hat) * e1;
}

double vartheta(double lambda_I, const SystemConstants& sc) {
  if (!(lambda_I > 0.0)) throw std::invalid_argument("vartheta requires lambda_I > 0");
  const double num = sc.sigma_bar * (-std::log(sc.P_hat));
  const double den = sc.gamma_s_hat * sc.phi_I * sc.phi_I * lambda_I;
  return std::pow(num / den, 0.25);
}

double d_max_uncapped(double X_s_I, double rho_c, double lambda_I, const SystemConstants& sc) {
  if (X_s_I < 0.0) throw std::invalid_argument("X_s_I must be nonnegative");
  if (!(rho_c > 0.0) || rho_c > 1.0) throw std::invalid_argument("rho_c must lie in (0, 1]");
  if (X_s_I == 0.0) return 0.0;
  if (rho_c == 1.0) return std::numeric_limits<double>::infinity();
  return vartheta(lambda_I, sc) * std::pow(X_s_I / (1.0 - rho_c), 0.25);
}

double d_max(double X_s_I, double rho_c, double lambda_I, const SystemConstants& sc) {
  return std::min(d_max_uncapped(X_s_I, rho_c, lambda_I, sc), sc.D_hat);
}

double rho_c_min(const SpatialModel& model, const SystemConstants& sc) {
  const double e1 = expected_targets_nearest(model);
  return 1.0 - sc.rho_s_hat * std::min(e1, sc.device_compute_cap());
}

RelaxedDecision closed_form_given_rho(double rho_c, const SpatialModel& model,
                                      const SystemConstants& sc) {
  if (!(rho_c > 0.0) || rho_c > 1.0) throw std::invalid_argument("rho_c must lie in (0, 1]");
  const double lambda = lambda_of(model);
  const double e_n = expected_devices(lambda, sc);
  const double demand = sensing_demand(model, sc);

  RelaxedDecision rd;
  rd.x_c_A = (sc.R_hat / sc.R0) * (1.0 / rho_c + e_n - 1.0);

  if (rho_c == 1.0) {
    rd.x_s_I = 0.0;
    rd.x_s_A = sc.rho_s_hat * demand;
    rd.f_e_A = rd.x_s_A * sc.C0 / (sc.rho_s_hat * sc.tau * sc.T);
    return rd;
  }

  if (rho_c < rho_c_min(model, sc) - kFeasTol) {
    throw std::domain_error("rho_c below the admissible minimum");
  }

  const double u = 1.0 - rho_c;
  const double theta4 = std::pow(vartheta(lambda, sc), 4.0);
  rd.x_s_I = std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, IndependentParams>) {
          if (!(m.lambda_U > 0.0)) return 0.0;
          const double arg = 1.0 - u * m.lambda_I / (sc.rho_s_hat * m.lambda_U);
          if (arg <= 0.0) throw std::domain_error("tracking load unservable at this rho_c");
          const double lg = std::log(arg);
          return u / (theta4 * M_PI * M_PI * m.lambda_I * m.lambda_I) * lg * lg;
        } else {
          if (!(m.mu_U > 0.0) || m.sigma_U == 0.0) return 0.0;
          const double arg = 1.0 - u / (sc.rho_s_hat * m.mu_U);
          if (arg <= 0.0) throw std::domain_error("tracking load unservable at this rho_c");
          const double lg = std::log(arg);
          const double s4 = std::pow(m.sigma_U, 4.0);
          return 4.0 * u * s4 / theta4 * lg * lg;
        }
      },
      model);

  rd.x_s_A = sc.rho_s_hat * std::max(demand - e_n * u / sc.rho_s_hat, 0.0);
  rd.f_e_A = rd.x_s_A * sc.C0 / (sc.rho_s_hat * sc.tau * sc.T);
  return rd;
}

CapacityBreakdown sensing_capacities(const PlanningDecision& decision, const SpatialModel& model,
                                     const SystemConstants& sc) {
  CapacityBreakdown cb;
  cb.E_N_I = expected_devices(lambda_of(model), sc);
  cb.E_N_U = sensing_demand(model, sc);
  cb.R_bar = comm_capacity(decision.rho_c, static_cast<double>(decision.X_c_A), lambda_of(model), sc);
  const double e1 = expected_targets_nearest(model);
  const double by_range = contact_cdf(model, decision.D_max) * e1;
  const double by_schedule = (1.0 - decision.rho_c) / sc.rho_s_hat;
  cb.N_I_U = std::min({by_range, by_schedule, sc.device_compute_cap()});
  const double ap_slots = static_cast<double>(decision.X_s_A) / sc.rho_s_hat;
  const double ap_compute = sc.tau * sc.T * decision.F_e_A / sc.C0;
  cb.N_A_U = std::min(ap_slots, ap_compute);
  cb.t_proc_device = cb.N_I_U * sc.C0 / sc.F_e_I;
  cb.t_proc_ap = decision.F_e_A > 0.0 ? cb.N_A_U * sc.C0 / decision.F_e_A : 0.0;
  return cb;
}

CostBreakdown cost(const PlanningDecision& decision, const SystemConstants& sc) {
  CostBreakdown c;
  c.Z_c_A = static_cast<double>(sc.L) * static_cast<double>(decision.X_c_A) * sc.B_c0;
  c.Z_s_I = static_cast<double>(decision.X_s_I) * sc.B_s0;
  c.Z_s_A = static_cast<double>(sc.L) *
            (static_cast<double>(sc.X_s_A_search) + static_cast<double>(decision.X_s_A)) * sc.B_s0;
  c.Z_e_A = static_cast<double>(sc.L) * decision.F_e_A;
  c.Z = sc.omega * (c.Z_c_A + c.Z_s_I + c.Z_s_A) + sc.xi * c.Z_e_A;
  return c;
}

bool feasible(const PlanningDecision& decision, const SpatialModel& model,
              const SystemConstants& sc) {
  const CapacityBreakdown cb = sensing_capacities(decision, model, sc);
  if (cb.R_bar < sc.R_hat * (1.0 - kFeasTol)) return false;
  const double capacity = cb.N_A_U + cb.E_N_I * cb.N_I_U;
  return capacity >= cb.E_N_U * (1.0 - kFeasTol);
}

namespace {

// Integerize the closed-form solution at one grid point and cost it.
struct Candidate {
  bool ok = false;
  double Z = std::numeric_limits<double>::infinity();
  PlanningDecision decision;
};

Candidate evaluate_rho(double rho, const SpatialModel& model, const SystemConstants& sc) {
  Candidate cand;
  RelaxedDecision rd;
  try {
    rd = closed_form_given_rho(rho, model, sc);
  } catch (const std::domain_error&) {
    return cand;
  }
  PlanningDecision d;
  d.rho_c = rho;
  d.X_c_A = ceil_count(rd.x_c_A);
  d.X_s_I = ceil_count(rd.x_s_I);
  d.X_s_A = ceil_count(rd.x_s_A);
  d.F_e_A = static_cast<double>(d.X_s_A) * sc.C0 / (sc.rho_s_hat * sc.tau * sc.T);
  d.D_max = d_max(static_cast<double>(d.X_s_I), rho, lambda_of(model), sc);
  if (!feasible(d, model, sc)) return cand;
  cand.ok = true;
  cand.decision = d;
  cand.Z = cost(d, sc).Z;
  return cand;
}

PlanningDecision plan_impl(const SpatialModel& model, const SystemConstants& sc, double grid_step,
                           par::Exec exec) {
  if (!(grid_step > 0.0) || grid_step >= 1.0) {
    throw std::invalid_argument("grid step must lie in (0, 1)");
  }
  if (!(lambda_of(model) > 0.0)) {
    throw std::invalid_argument("planning requires a positive device intensity");
  }
  const double lo = std::max(rho_c_min(model, sc), grid_step);
  std::vector<double> grid;
  for (double rho = lo; rho < 1.0 - 0.5 * grid_step; rho += grid_step) grid.push_back(rho);
  grid.push_back(1.0);

  std::vector<Candidate> cands(grid.size());
  par::parallel_for(grid.size(), exec,
                    [&](std::size_t i) { cands[i] = evaluate_rho(grid[i], model, sc); });

  const Candidate* best = nullptr;
  for (const Candidate& c : cands) {
    if (c.ok && (best == nullptr || c.Z < best->Z)) best = &c;
  }
  if (best == nullptr) throw std::runtime_error("no feasible planning decision found");
  return best->decision;
}

}  // namespace

PlanningDecision plan(const SpatialModel& model, const SystemConstants& sc,
                      const PlanOptions& opts) {
  return plan_impl(model, sc, opts.grid_step, opts.exec);
}

PlanningDecision plan_serial(const SpatialModel& model, const SystemConstants& sc,
                             double grid_step) {
  return plan_impl(model, sc, grid_step, par::Exec::serial);
}

}  // namespace isac
