#pragma once

#include <map>
#include <string>
#include <vector>

#include "isac/constants.hpp"
#include "isac/drift.hpp"
#include "isac/predictor.hpp"
#include "isac/scenario.hpp"

namespace isac {

enum class SchemeKind { dt_adaptive, joint, independent, joint_ideal, independent_ideal };

std::string scheme_name(SchemeKind s);
SchemeKind scheme_from_name(const std::string& name);  // throws on unknown names

struct HarnessConfig {
  SystemConstants sys;
  ScenarioConfig scen;
  PredictorConfig pred;
  DriftConfig drift;
  double rho_grid_step = 1e-3;
  int retrain_window = 120;   // cap on the per-episode history used when retraining
  int retrain_epochs = 150;
  std::vector<SchemeKind> schemes{SchemeKind::dt_adaptive, SchemeKind::joint,
                                  SchemeKind::independent, SchemeKind::joint_ideal,
                                  SchemeKind::independent_ideal};
  std::string out_dir = "out";
};

// Flat key = value document; '#' starts a comment. Unknown keys are an error.
std::map<std::string, std::string> load_kv_file(const std::string& path);

// Applies keys onto the config. dB-valued keys (P_s_dBm, gamma_s_hat_dB,
// G0_dBi) are converted to linear units here. Throws std::invalid_argument
// with the offending key on errors.
void apply_kv(HarnessConfig& cfg, const std::map<std::string, std::string>& kv);

std::string describe_config_keys();

}  // namespace isac
