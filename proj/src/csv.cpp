#include "isac/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace isac {

const char* const kWindowCsvHeader =
    "run,window,scheme,sat_comm,sat_sens,sat_avg,Z,Z_cA,Z_sI,Z_sA,Z_eA,"
    "mape_lI,mape_lU,mape_mU,mape_sU,H_S,H_D,chosen_model,rho_c,X_cA,X_sI,X_sA,F_eA,D_max";

namespace {
// %.17g keeps doubles exact through a parse round trip.
std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
}  // namespace

std::string format_csv(const std::vector<WindowMetrics>& rows) {
  std::string out = kWindowCsvHeader;
  out += '\n';
  for (const auto& r : rows) {
    out += std::to_string(r.run);
    out += ',';
    out += std::to_string(r.window);
    out += ',';
    out += r.scheme;
    for (double v : {r.sat_comm, r.sat_sens, r.sat_avg, r.cost.Z, r.cost.Z_c_A, r.cost.Z_s_I,
                     r.cost.Z_s_A, r.cost.Z_e_A, r.mape_lI, r.mape_lU, r.mape_mU, r.mape_sU}) {
      out += ',';
      out += num(v);
    }
    out += ',';
    out += std::to_string(r.H_S);
    out += ',';
    out += std::to_string(r.H_D);
    out += ',';
    out += r.chosen_model;
    out += ',';
    out += num(r.decision.rho_c);
    out += ',';
    out += std::to_string(r.decision.X_c_A);
    out += ',';
    out += std::to_string(r.decision.X_s_I);
    out += ',';
    out += std::to_string(r.decision.X_s_A);
    out += ',';
    out += num(r.decision.F_e_A);
    out += ',';
    out += num(r.decision.D_max);
    out += '\n';
  }
  return out;
}

void emit_csv(const std::vector<WindowMetrics>& rows, const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open for writing: " + path);
  file << format_csv(rows);
  if (!file) throw std::runtime_error("write failed: " + path);
}

std::vector<WindowMetrics> parse_csv(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(file, line)) throw std::runtime_error("empty csv: " + path);
  if (line != kWindowCsvHeader) throw std::runtime_error("unexpected csv header in " + path);

  std::vector<WindowMetrics> rows;
  while (std::getline(file, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 24) throw std::runtime_error("malformed csv row in " + path);
    WindowMetrics r;
    int i = 0;
    r.run = std::stoi(fields[i++]);
    r.window = std::stoi(fields[i++]);
    r.scheme = fields[i++];
    r.sat_comm = std::stod(fields[i++]);
    r.sat_sens = std::stod(fields[i++]);
    r.sat_avg = std::stod(fields[i++]);
    r.cost.Z = std::stod(fields[i++]);
    r.cost.Z_c_A = std::stod(fields[i++]);
    r.cost.Z_s_I = std::stod(fields[i++]);
    r.cost.Z_s_A = std::stod(fields[i++]);
    r.cost.Z_e_A = std::stod(fields[i++]);
    r.mape_lI = std::stod(fields[i++]);
    r.mape_lU = std::stod(fields[i++]);
    r.mape_mU = std::stod(fields[i++]);
    r.mape_sU = std::stod(fields[i++]);
    r.H_S = std::stoi(fields[i++]);
    r.H_D = std::stoi(fields[i++]);
    r.chosen_model = fields[i++];
    r.decision.rho_c = std::stod(fields[i++]);
    r.decision.X_c_A = std::stoll(fields[i++]);
    r.decision.X_s_I = std::stoll(fields[i++]);
    r.decision.X_s_A = std::stoll(fields[i++]);
    r.decision.F_e_A = std::stod(fields[i++]);
    r.decision.D_max = std::stod(fields[i++]);
    rows.push_back(std::move(r));
  }
  return rows;
}

void emit_param_csv(const std::vector<ParamRow>& rows, const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open for writing: " + path);
  file << "window,parameter,reference,predicted\n";
  for (const auto& r : rows) {
    file << r.window << ',' << r.parameter << ',' << num(r.reference) << ',' << num(r.predicted)
         << '\n';
  }
  if (!file) throw std::runtime_error("write failed: " + path);
}

}  // namespace isac
