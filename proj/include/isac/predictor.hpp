#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace isac {

struct PredictorConfig {
  int lookback = 10;       // K0: windows of history fed to the model
  int hidden = 16;         // gated recurrent units
  int max_epochs = 400;
  double lr = 0.02;        // Adam step size
  double target_mape = 0.02;  // early-stop threshold on training MAPE
  std::uint64_t seed = 1;
};

// Single-layer gated recurrent sequence model with a linear head, one scalar
// per step in and one scalar out. Inputs are min-max normalized over the
// training span. Training is full-batch Adam with a fixed seed, so both
// training and prediction are deterministic.
class GruPredictor {
 public:
  GruPredictor() = default;
  explicit GruPredictor(const PredictorConfig& cfg);

  bool trained() const { return trained_; }
  int lookback() const { return cfg_.lookback; }

  // Fits on the series (requires size >= lookback + 1 training pair; callers
  // enforce the 2*lookback history contract). Returns the final train MAPE.
  double fit(std::span<const double> series, int epochs_override = 0);

  // One-step-ahead prediction from the last `lookback` values. Untrained
  // state falls back to the last reference value. Output is finite and
  // clamped below at kEpsClamp.
  double predict(std::span<const double> series) const;

  static constexpr double kEpsClamp = 1e-12;

 private:
  double forward(std::span<const double> window) const;

  PredictorConfig cfg_;
  bool trained_ = false;
  double in_lo_ = 0.0, in_hi_ = 1.0;  // normalization statistics
  // Gate parameter blocks: z (update), r (reset), g (candidate).
  std::vector<double> Wz_, Wr_, Wg_;  // input weights, size H
  std::vector<double> Uz_, Ur_, Ug_;  // recurrent weights, size H*H
  std::vector<double> bz_, br_, bg_;  // biases, size H
  std::vector<double> wo_;            // output weights, size H
  double bo_ = 0.0;

  friend class GruTrainer;
};

// Trains a fresh predictor on the series. Throws std::invalid_argument when
// fewer than 2*lookback reference values are available.
GruPredictor train_predictor(std::span<const double> series, const PredictorConfig& cfg);

// One-step-ahead prediction for the window following the series. Requires at
// least `lookback` reference values; untrained state uses the last-value
// fallback.
double predict_params(const GruPredictor& state, std::span<const double> series);

}  // namespace isac
