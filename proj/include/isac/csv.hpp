#pragma once

#include <string>
#include <vector>

#include "isac/planner.hpp"

namespace isac {

// One row of the per-window experiment output.
struct WindowMetrics {
  int run = 0;
  int window = 0;
  std::string scheme;
  double sat_comm = 0.0;
  double sat_sens = 0.0;
  double sat_avg = 0.0;
  CostBreakdown cost;
  double mape_lI = 0.0;
  double mape_lU = 0.0;
  double mape_mU = 0.0;
  double mape_sU = 0.0;
  int H_S = 0;
  int H_D = 0;
  std::string chosen_model;  // "joint" or "independent"
  PlanningDecision decision;
};

extern const char* const kWindowCsvHeader;

// Writes rows with the fixed schema; throws std::runtime_error on I/O failure.
void emit_csv(const std::vector<WindowMetrics>& rows, const std::string& path);
std::string format_csv(const std::vector<WindowMetrics>& rows);

// Inverse of emit_csv; used by the round-trip tests and downstream tooling.
std::vector<WindowMetrics> parse_csv(const std::string& path);

// Parameter history rows: window, parameter, reference, predicted.
struct ParamRow {
  int window = 0;
  std::string parameter;
  double reference = 0.0;
  double predicted = 0.0;
};

void emit_param_csv(const std::vector<ParamRow>& rows, const std::string& path);

}  // namespace isac
