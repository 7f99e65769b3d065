#include "isac/config.hpp"

#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace isac {

std::string scheme_name(SchemeKind s) {
  switch (s) {
    case SchemeKind::dt_adaptive: return "dt_adaptive";
    case SchemeKind::joint: return "joint";
    case SchemeKind::independent: return "independent";
    case SchemeKind::joint_ideal: return "joint_ideal";
    case SchemeKind::independent_ideal: return "independent_ideal";
  }
  return "?";
}

SchemeKind scheme_from_name(const std::string& name) {
  for (SchemeKind s : {SchemeKind::dt_adaptive, SchemeKind::joint, SchemeKind::independent,
                       SchemeKind::joint_ideal, SchemeKind::independent_ideal}) {
    if (scheme_name(s) == name) return s;
  }
  throw std::invalid_argument("unknown scheme: " + name);
}

namespace {
std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}
}  // namespace

std::map<std::string, std::string> load_kv_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(file, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  " is not key = value: " + line);
    }
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

void apply_kv(HarnessConfig& cfg, const std::map<std::string, std::string>& kv) {
  std::map<std::string, std::function<void(const std::string&)>> setters;
  auto dbl = [](double& slot) {
    return [&slot](const std::string& v) { slot = std::stod(v); };
  };
  auto integer = [](int& slot) {
    return [&slot](const std::string& v) { slot = std::stoi(v); };
  };

  auto& s = cfg.sys;
  setters["r0"] = dbl(s.r0);
  setters["L"] = integer(s.L);
  setters["D_hat"] = dbl(s.D_hat);
  setters["tau"] = dbl(s.tau);
  setters["T"] = integer(s.T);
  setters["M"] = integer(s.M);
  setters["M0"] = integer(s.M0);
  setters["B_c0"] = dbl(s.B_c0);
  setters["B_s0"] = dbl(s.B_s0);
  setters["R0"] = dbl(s.R0);
  setters["R_hat"] = dbl(s.R_hat);
  setters["rho_s_hat"] = dbl(s.rho_s_hat);
  setters["gamma_s_hat"] = dbl(s.gamma_s_hat);
  setters["gamma_s_hat_dB"] = [&s](const std::string& v) {
    s.gamma_s_hat = db_to_linear(std::stod(v));
  };
  setters["P_hat"] = dbl(s.P_hat);
  setters["C0"] = dbl(s.C0);
  setters["F_e_I"] = dbl(s.F_e_I);
  setters["X_s_A_search"] = integer(s.X_s_A_search);
  setters["P_s"] = dbl(s.P_s);
  setters["P_s_dBm"] = [&s](const std::string& v) { s.P_s = dbm_to_watts(std::stod(v)); };
  setters["phi_I"] = dbl(s.phi_I);
  setters["G0"] = dbl(s.G0);
  setters["G0_dBi"] = [&s](const std::string& v) { s.G0 = db_to_linear(std::stod(v)); };
  setters["f_s"] = dbl(s.f_s);
  setters["c"] = dbl(s.c);
  setters["sigma_bar"] = dbl(s.sigma_bar);
  setters["omega"] = dbl(s.omega);
  setters["xi"] = dbl(s.xi);

  auto& sc = cfg.scen;
  setters["device_density_km2"] = dbl(sc.device_density_km2);
  setters["mean_targets"] = dbl(sc.mean_targets);
  setters["angular_frequency"] = dbl(sc.angular_frequency);
  setters["p_min_frac"] = dbl(sc.p_min_frac);
  setters["nu_low"] = dbl(sc.nu_low);
  setters["nu_high"] = dbl(sc.nu_high);
  setters["drift_frequency"] = integer(sc.drift_frequency);
  setters["windows"] = integer(sc.windows);
  setters["runs"] = integer(sc.runs);
  setters["seed"] = [&sc](const std::string& v) { sc.seed = std::stoull(v); };

  auto& p = cfg.pred;
  setters["K0"] = integer(p.lookback);
  setters["hidden"] = integer(p.hidden);
  setters["max_epochs"] = integer(p.max_epochs);
  setters["lr"] = dbl(p.lr);
  setters["target_mape"] = dbl(p.target_mape);

  auto& d = cfg.drift;
  setters["K1"] = integer(d.K1);
  setters["theta_abs"] = dbl(d.theta_abs);
  setters["theta_rel"] = dbl(d.theta_rel);

  setters["rho_grid_step"] = dbl(cfg.rho_grid_step);
  setters["retrain_window"] = integer(cfg.retrain_window);
  setters["retrain_epochs"] = integer(cfg.retrain_epochs);
  setters["out_dir"] = [&cfg](const std::string& v) { cfg.out_dir = v; };
  setters["schemes"] = [&cfg](const std::string& v) {
    cfg.schemes.clear();
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) cfg.schemes.push_back(scheme_from_name(trim(item)));
  };

  for (const auto& [key, value] : kv) {
    auto it = setters.find(key);
    if (it == setters.end()) throw std::invalid_argument("unknown config key: " + key);
    try {
      it->second(value);
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("bad value for config key " + key + ": " + value);
    }
  }
  cfg.sys.validate();
}

std::string describe_config_keys() {
  return "system: r0 L D_hat tau T M M0 B_c0 B_s0 R0 R_hat rho_s_hat gamma_s_hat[_dB] P_hat C0 "
         "F_e_I X_s_A_search P_s[_dBm] phi_I G0[_dBi] f_s c sigma_bar omega xi\n"
         "scenario: device_density_km2 mean_targets angular_frequency p_min_frac nu_low nu_high "
         "drift_frequency windows runs seed\n"
         "predictor: K0 hidden max_epochs lr target_mape\n"
         "drift: K1 theta_abs theta_rel\n"
         "harness: rho_grid_step retrain_window retrain_epochs out_dir schemes";
}

}  // namespace isac
