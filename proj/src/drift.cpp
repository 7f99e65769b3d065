#include "isac/drift.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace isac {

namespace {
constexpr double kEps = 1e-12;

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  double hi = v[mid];
  if (v.size() % 2 == 0) {
    const double lo = *std::max_element(v.begin(), v.begin() + mid);
    return 0.5 * (lo + hi);
  }
  return hi;
}
}  // namespace

std::string param_name(Param p) {
  switch (p) {
    case Param::lambda_I: return "lambda_I";
    case Param::lambda_U: return "lambda_U";
    case Param::mu_U: return "mu_U";
    case Param::sigma_U: return "sigma_U";
  }
  return "?";
}

double mape(std::span<const double> predicted, std::span<const double> reference) {
  if (predicted.empty() || predicted.size() != reference.size()) {
    throw std::invalid_argument("mape requires equal nonzero lengths");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    acc += std::abs(predicted[i] - reference[i]) / std::max(std::abs(reference[i]), kEps);
  }
  return acc / static_cast<double>(predicted.size());
}

void MapeTracker::push(Param p, double error) {
  if (error < 0.0) throw std::invalid_argument("MAPE entries are nonnegative");
  errors_[p].push_back(error);
}

bool MapeTracker::degraded(Param p) const {
  const auto& errs = errors_.at(p);
  const int k1 = cfg_.K1;
  if (static_cast<int>(errs.size()) < k1) return false;
  double recent = 0.0;
  for (int i = 0; i < k1; ++i) recent += errs[errs.size() - 1 - i];
  recent /= k1;
  std::vector<double> earlier(errs.begin(), errs.end() - k1);
  const double threshold = std::max(cfg_.theta_abs, cfg_.theta_rel * median(std::move(earlier)));
  return recent > threshold;
}

DriftReport flags_from_verdicts(const std::map<Param, bool>& verdicts) {
  DriftReport report;
  auto hit = [&](Param p) {
    auto it = verdicts.find(p);
    return it != verdicts.end() && it->second;
  };
  if (hit(Param::lambda_I)) {
    report.flags.H_S = true;
    report.flags.H_D = true;
    report.triggered.insert(Param::lambda_I);
  }
  if (hit(Param::lambda_U)) {
    report.flags.H_S = true;
    report.triggered.insert(Param::lambda_U);
  }
  if (hit(Param::mu_U)) {
    report.flags.H_D = true;
    report.triggered.insert(Param::mu_U);
  }
  if (hit(Param::sigma_U)) {
    report.flags.H_D = true;
    report.triggered.insert(Param::sigma_U);
  }
  return report;
}

DriftReport detect_drift(const MapeTracker& tracker) {
  std::map<Param, bool> verdicts;
  for (Param p : kAllParams) verdicts[p] = tracker.degraded(p);
  return flags_from_verdicts(verdicts);
}

ModelSet select_models(const DriftReport& report) {
  ModelSet set;
  set.joint = true;
  if (report.flags.H_S || report.flags.H_D) {
    set.independent = true;
    set.retrain = report.triggered;
  }
  return set;
}

ModelSet DriftController::update() {
  const DriftReport report = detect_drift(tracker_);
  raw_ = report.flags;
  for (Param p : kAllParams) {
    const bool hot = report.triggered.count(p) > 0;
    if (hot) {
      sticky_[p] = true;
      calm_streak_[p] = 0;
    } else if (sticky_[p]) {
      if (++calm_streak_[p] >= cfg_.K1) {
        sticky_[p] = false;
        calm_streak_[p] = 0;
      }
    }
  }
  std::map<Param, bool> active_verdicts;
  for (Param p : kAllParams) active_verdicts[p] = sticky_[p];
  return select_models(flags_from_verdicts(active_verdicts));
}

DriftFlags DriftController::active() const {
  std::map<Param, bool> v;
  for (Param p : kAllParams) {
    auto it = sticky_.find(p);
    v[p] = it != sticky_.end() && it->second;
  }
  return flags_from_verdicts(v).flags;
}

}  // namespace isac
