#include "isac/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "isac/rng.hpp"

namespace isac {

namespace {
double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }
}  // namespace

GruPredictor::GruPredictor(const PredictorConfig& cfg) : cfg_(cfg) {
  if (cfg.lookback < 1 || cfg.hidden < 1) {
    throw std::invalid_argument("predictor needs positive lookback and hidden size");
  }
}

// Gradient worksheets for one fit() call; kept out of the predictor so the
// inference object stays lean.
class GruTrainer {
 public:
  explicit GruTrainer(GruPredictor& p) : p_(p), H_(p.cfg_.hidden), K_(p.cfg_.lookback) {
    const std::size_t h = static_cast<std::size_t>(H_);
    auto init_vec = [&](std::vector<double>& v, std::size_t n) { v.assign(n, 0.0); };
    for (auto* v : {&gWz_, &gWr_, &gWg_, &gbz_, &gbr_, &gbg_, &gwo_}) init_vec(*v, h);
    for (auto* v : {&gUz_, &gUr_, &gUg_}) init_vec(*v, h * h);
    h_.assign(static_cast<std::size_t>(K_ + 1) * h, 0.0);
    z_.assign(static_cast<std::size_t>(K_) * h, 0.0);
    r_.assign(static_cast<std::size_t>(K_) * h, 0.0);
    g_.assign(static_cast<std::size_t>(K_) * h, 0.0);
    scratch_.assign(6 * h, 0.0);
    const std::size_t n_params = 3 * h + 3 * h * h + 3 * h + h + 1;
    m_.assign(n_params, 0.0);
    v_.assign(n_params, 0.0);
  }

  void init_weights(std::uint64_t seed) {
    RngStream rng = RngStream::derive(seed, {0x6772755f696e69ULL});
    const double scale = 1.0 / std::sqrt(static_cast<double>(H_));
    auto fill = [&](std::vector<double>& w, double s) {
      for (double& x : w) x = rng.uniform(-s, s);
    };
    fill(p_.Wz_, 0.5);
    fill(p_.Wr_, 0.5);
    fill(p_.Wg_, 0.5);
    fill(p_.Uz_, scale);
    fill(p_.Ur_, scale);
    fill(p_.Ug_, scale);
    std::fill(p_.bz_.begin(), p_.bz_.end(), 0.0);
    std::fill(p_.br_.begin(), p_.br_.end(), 0.0);
    std::fill(p_.bg_.begin(), p_.bg_.end(), 0.0);
    fill(p_.wo_, 0.5);
    p_.bo_ = 0.5;
  }

  // Forward one window, caching activations, then backpropagate the squared
  // error through time. Returns the normalized prediction.
  double forward_cached(const double* xs) {
    const int H = H_;
    double* h0 = h_.data();
    std::fill(h0, h0 + H, 0.0);
    for (int t = 0; t < K_; ++t) {
      const double x = xs[t];
      const double* hp = h_.data() + static_cast<std::size_t>(t) * H;
      double* hn = h_.data() + static_cast<std::size_t>(t + 1) * H;
      double* zt = z_.data() + static_cast<std::size_t>(t) * H;
      double* rt = r_.data() + static_cast<std::size_t>(t) * H;
      double* gt = g_.data() + static_cast<std::size_t>(t) * H;
      for (int i = 0; i < H; ++i) {
        double az = p_.Wz_[i] * x + p_.bz_[i];
        double ar = p_.Wr_[i] * x + p_.br_[i];
        const double* uz = p_.Uz_.data() + static_cast<std::size_t>(i) * H;
        const double* ur = p_.Ur_.data() + static_cast<std::size_t>(i) * H;
        for (int j = 0; j < H; ++j) {
          az += uz[j] * hp[j];
          ar += ur[j] * hp[j];
        }
        zt[i] = sigmoid(az);
        rt[i] = sigmoid(ar);
      }
      for (int i = 0; i < H; ++i) {
        double ag = p_.Wg_[i] * x + p_.bg_[i];
        const double* ug = p_.Ug_.data() + static_cast<std::size_t>(i) * H;
        for (int j = 0; j < H; ++j) ag += ug[j] * (rt[j] * hp[j]);
        gt[i] = std::tanh(ag);
        hn[i] = (1.0 - zt[i]) * hp[i] + zt[i] * gt[i];
      }
    }
    const double* hK = h_.data() + static_cast<std::size_t>(K_) * H;
    double y = p_.bo_;
    for (int i = 0; i < H; ++i) y += p_.wo_[i] * hK[i];
    return y;
  }

  void backward(const double* xs, double dy) {
    const int H = H_;
    double* dh = scratch_.data();
    double* dh_prev = scratch_.data() + H;
    double* daz = scratch_.data() + 2 * H;
    double* dar = scratch_.data() + 3 * H;
    double* dag = scratch_.data() + 4 * H;
    double* drh = scratch_.data() + 5 * H;

    const double* hK = h_.data() + static_cast<std::size_t>(K_) * H;
    for (int i = 0; i < H; ++i) {
      gwo_[i] += dy * hK[i];
      dh[i] = dy * p_.wo_[i];
    }
    gbo_ += dy;

    for (int t = K_ - 1; t >= 0; --t) {
      const double x = xs[t];
      const double* hp = h_.data() + static_cast<std::size_t>(t) * H;
      const double* zt = z_.data() + static_cast<std::size_t>(t) * H;
      const double* rt = r_.data() + static_cast<std::size_t>(t) * H;
      const double* gt = g_.data() + static_cast<std::size_t>(t) * H;
      for (int i = 0; i < H; ++i) {
        const double dz = dh[i] * (gt[i] - hp[i]);
        const double dg = dh[i] * zt[i];
        dh_prev[i] = dh[i] * (1.0 - zt[i]);
        dag[i] = dg * (1.0 - gt[i] * gt[i]);
        daz[i] = dz * zt[i] * (1.0 - zt[i]);
      }
      std::fill(drh, drh + H, 0.0);
      for (int i = 0; i < H; ++i) {
        const double* ug = p_.Ug_.data() + static_cast<std::size_t>(i) * H;
        for (int j = 0; j < H; ++j) drh[j] += ug[j] * dag[i];
      }
      for (int j = 0; j < H; ++j) {
        const double dr = drh[j] * hp[j];
        dar[j] = dr * rt[j] * (1.0 - rt[j]);
        dh_prev[j] += drh[j] * rt[j];
      }
      for (int i = 0; i < H; ++i) {
        gWz_[i] += daz[i] * x;
        gWr_[i] += dar[i] * x;
        gWg_[i] += dag[i] * x;
        gbz_[i] += daz[i];
        gbr_[i] += dar[i];
        gbg_[i] += dag[i];
        double* uz = gUz_.data() + static_cast<std::size_t>(i) * H;
        double* ur = gUr_.data() + static_cast<std::size_t>(i) * H;
        double* ug = gUg_.data() + static_cast<std::size_t>(i) * H;
        for (int j = 0; j < H; ++j) {
          uz[j] += daz[i] * hp[j];
          ur[j] += dar[i] * hp[j];
          ug[j] += dag[i] * (rt[j] * hp[j]);
        }
      }
      for (int i = 0; i < H; ++i) {
        const double* uzc = p_.Uz_.data();
        const double* urc = p_.Ur_.data();
        double acc = dh_prev[i];
        for (int k = 0; k < H; ++k) {
          acc += uzc[static_cast<std::size_t>(k) * H + i] * daz[k] +
                 urc[static_cast<std::size_t>(k) * H + i] * dar[k];
        }
        dh_prev[i] = acc;
      }
      std::copy(dh_prev, dh_prev + H, dh);
    }
  }

  void zero_grads() {
    for (auto* v : {&gWz_, &gWr_, &gWg_, &gUz_, &gUr_, &gUg_, &gbz_, &gbr_, &gbg_, &gwo_}) {
      std::fill(v->begin(), v->end(), 0.0);
    }
    gbo_ = 0.0;
  }

  void adam_step(double lr, int step) {
    constexpr double b1 = 0.9, b2 = 0.999, eps = 1e-8;
    const double bc1 = 1.0 - std::pow(b1, step);
    const double bc2 = 1.0 - std::pow(b2, step);
    std::size_t idx = 0;
    auto update = [&](std::vector<double>& w, const std::vector<double>& g) {
      for (std::size_t i = 0; i < w.size(); ++i, ++idx) {
        m_[idx] = b1 * m_[idx] + (1.0 - b1) * g[i];
        v_[idx] = b2 * v_[idx] + (1.0 - b2) * g[i] * g[i];
        w[i] -= lr * (m_[idx] / bc1) / (std::sqrt(v_[idx] / bc2) + eps);
      }
    };
    update(p_.Wz_, gWz_);
    update(p_.Wr_, gWr_);
    update(p_.Wg_, gWg_);
    update(p_.Uz_, gUz_);
    update(p_.Ur_, gUr_);
    update(p_.Ug_, gUg_);
    update(p_.bz_, gbz_);
    update(p_.br_, gbr_);
    update(p_.bg_, gbg_);
    update(p_.wo_, gwo_);
    m_[idx] = b1 * m_[idx] + (1.0 - b1) * gbo_;
    v_[idx] = b2 * v_[idx] + (1.0 - b2) * gbo_ * gbo_;
    p_.bo_ -= lr * (m_[idx] / bc1) / (std::sqrt(v_[idx] / bc2) + eps);
  }

 private:
  GruPredictor& p_;
  int H_, K_;
  std::vector<double> gWz_, gWr_, gWg_, gUz_, gUr_, gUg_, gbz_, gbr_, gbg_, gwo_;
  double gbo_ = 0.0;
  std::vector<double> h_, z_, r_, g_, scratch_;
  std::vector<double> m_, v_;  // Adam moments, flattened in update order
};

double GruPredictor::fit(std::span<const double> series, int epochs_override) {
  const int K = cfg_.lookback;
  const int n = static_cast<int>(series.size());
  if (n < K + 1) throw std::invalid_argument("series too short to form a training pair");

  in_lo_ = *std::min_element(series.begin(), series.end());
  in_hi_ = *std::max_element(series.begin(), series.end());
  const double span = std::max(in_hi_ - in_lo_, 1e-12);

  std::vector<double> norm(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) norm[i] = (series[i] - in_lo_) / span;

  const std::size_t h = static_cast<std::size_t>(cfg_.hidden);
  for (auto* v : {&Wz_, &Wr_, &Wg_, &bz_, &br_, &bg_, &wo_}) v->assign(h, 0.0);
  for (auto* v : {&Uz_, &Ur_, &Ug_}) v->assign(h * h, 0.0);

  GruTrainer trainer(*this);
  trainer.init_weights(cfg_.seed);

  const int n_pairs = n - K;
  const int epochs = epochs_override > 0 ? epochs_override : cfg_.max_epochs;
  double train_mape = 0.0;
  for (int epoch = 1; epoch <= epochs; ++epoch) {
    trainer.zero_grads();
    double abs_pct = 0.0;
    for (int p = 0; p < n_pairs; ++p) {
      const double* xs = norm.data() + p;
      const double target = norm[static_cast<std::size_t>(p + K)];
      const double y = trainer.forward_cached(xs);
      trainer.backward(xs, 2.0 * (y - target) / n_pairs);
      const double denorm = y * span + in_lo_;
      const double ref = series[static_cast<std::size_t>(p + K)];
      abs_pct += std::abs(denorm - ref) / std::max(std::abs(ref), 1e-12);
    }
    train_mape = abs_pct / n_pairs;
    if (train_mape < cfg_.target_mape) break;
    trainer.adam_step(cfg_.lr, epoch);
  }
  trained_ = true;
  return train_mape;
}

double GruPredictor::forward(std::span<const double> window) const {
  const int H = cfg_.hidden;
  const double span = std::max(in_hi_ - in_lo_, 1e-12);
  std::vector<double> hprev(static_cast<std::size_t>(H), 0.0);
  std::vector<double> hnext(static_cast<std::size_t>(H), 0.0);
  std::vector<double> rt(static_cast<std::size_t>(H), 0.0);
  std::vector<double> zt(static_cast<std::size_t>(H), 0.0);
  for (double raw : window) {
    const double x = (raw - in_lo_) / span;
    for (int i = 0; i < H; ++i) {
      double az = Wz_[i] * x + bz_[i];
      double ar = Wr_[i] * x + br_[i];
      const double* uz = Uz_.data() + static_cast<std::size_t>(i) * H;
      const double* ur = Ur_.data() + static_cast<std::size_t>(i) * H;
      for (int j = 0; j < H; ++j) {
        az += uz[j] * hprev[j];
        ar += ur[j] * hprev[j];
      }
      zt[i] = sigmoid(az);
      rt[i] = sigmoid(ar);
    }
    for (int i = 0; i < H; ++i) {
      double ag = Wg_[i] * x + bg_[i];
      const double* ug = Ug_.data() + static_cast<std::size_t>(i) * H;
      for (int j = 0; j < H; ++j) ag += ug[j] * (rt[j] * hprev[j]);
      const double g = std::tanh(ag);
      hnext[i] = (1.0 - zt[i]) * hprev[i] + zt[i] * g;
    }
    std::swap(hprev, hnext);
  }
  double y = bo_;
  for (int i = 0; i < H; ++i) y += wo_[i] * hprev[i];
  return y * span + in_lo_;
}

double GruPredictor::predict(std::span<const double> series) const {
  if (series.empty()) throw std::invalid_argument("predict requires history");
  if (!trained_ || static_cast<int>(series.size()) < cfg_.lookback) {
    return std::max(series.back(), kEpsClamp);
  }
  const double y = forward(series.subspan(series.size() - static_cast<std::size_t>(cfg_.lookback)));
  if (!std::isfinite(y)) return std::max(series.back(), kEpsClamp);
  return std::max(y, kEpsClamp);
}

GruPredictor train_predictor(std::span<const double> series, const PredictorConfig& cfg) {
  if (static_cast<int>(series.size()) < 2 * cfg.lookback) {
    throw std::invalid_argument("training requires at least 2*lookback reference values");
  }
  GruPredictor p(cfg);
  p.fit(series);
  return p;
}

double predict_params(const GruPredictor& state, std::span<const double> series) {
  if (static_cast<int>(series.size()) < state.lookback() && state.trained()) {
    throw std::invalid_argument("prediction requires lookback reference values");
  }
  return state.predict(series);
}

}  // namespace isac
