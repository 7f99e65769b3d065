#pragma once

#include <array>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace isac {

// The four tracked model parameters.
enum class Param { lambda_I, lambda_U, mu_U, sigma_U };

constexpr std::array<Param, 4> kAllParams{Param::lambda_I, Param::lambda_U, Param::mu_U,
                                          Param::sigma_U};

std::string param_name(Param p);

// Mean absolute percentage error with an epsilon guard on the denominator.
// Throws std::invalid_argument on empty or mismatched inputs.
double mape(std::span<const double> predicted, std::span<const double> reference);

struct DriftConfig {
  int K1 = 3;              // detection window [planning windows]
  double theta_abs = 0.15; // absolute MAPE threshold
  double theta_rel = 3.0;  // multiple of the historical median MAPE
};

struct DriftFlags {
  bool H_S = false;  // independent spatial model drifted
  bool H_D = false;  // joint spatial model drifted
};

// Per-parameter prediction-error history.
class MapeTracker {
 public:
  explicit MapeTracker(DriftConfig cfg = {}) : cfg_(cfg) {}
  void push(Param p, double error);
  const std::vector<double>& errors(Param p) const { return errors_.at(p); }
  const DriftConfig& config() const { return cfg_; }
  // Drastic degradation rule: mean error over the last K1 windows exceeds
  // max(theta_abs, theta_rel * median of all earlier errors). False when
  // fewer than K1 errors exist.
  bool degraded(Param p) const;

 private:
  DriftConfig cfg_;
  std::map<Param, std::vector<double>> errors_{{Param::lambda_I, {}},
                                               {Param::lambda_U, {}},
                                               {Param::mu_U, {}},
                                               {Param::sigma_U, {}}};
};

struct DriftReport {
  DriftFlags flags;
  std::set<Param> triggered;
};

// Three-case rule: lambda_I degradation flags both models, lambda_U flags the
// independent model, mu_U or sigma_U flags the joint model.
DriftReport detect_drift(const MapeTracker& tracker);
DriftReport flags_from_verdicts(const std::map<Param, bool>& verdicts);

struct ModelSet {
  bool joint = true;
  bool independent = false;
  std::set<Param> retrain;
};

// No drift -> joint only; any drift -> ensemble of both models plus retrain
// directives for the triggering parameters.
ModelSet select_models(const DriftReport& report);

// Sticky wrapper: once a parameter triggers, the ensemble persists until that
// parameter's recent error stays under threshold for K1 consecutive windows.
class DriftController {
 public:
  explicit DriftController(DriftConfig cfg = {}) : tracker_(cfg), cfg_(cfg) {}

  void observe(Param p, double error) { tracker_.push(p, error); }
  // Call once per window after all observe() calls for that window.
  ModelSet update();

  DriftFlags raw() const { return raw_; }
  DriftFlags active() const;
  const MapeTracker& tracker() const { return tracker_; }

 private:
  MapeTracker tracker_;
  DriftConfig cfg_;
  DriftFlags raw_;
  std::map<Param, bool> sticky_;
  std::map<Param, int> calm_streak_;
};

}  // namespace isac
