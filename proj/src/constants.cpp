#include "isac/constants.hpp"

#include <cmath>
#include <stdexcept>

namespace isac {

double SystemConstants::A0() const { return 1.5 * std::sqrt(3.0) * r0 * r0; }

double SystemConstants::Gm() const { return 2.0 * M_PI * G0 / phi_I; }

double SystemConstants::device_compute_cap() const {
  return tau * static_cast<double>(T) * F_e_I / C0;
}

void SystemConstants::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument(std::string("system constant must be positive: ") + name);
    }
  };
  positive(r0, "r0");
  positive(D_hat, "D_hat");
  positive(tau, "tau");
  positive(B_c0, "B_c0");
  positive(B_s0, "B_s0");
  positive(R0, "R0");
  positive(R_hat, "R_hat");
  positive(rho_s_hat, "rho_s_hat");
  positive(gamma_s_hat, "gamma_s_hat");
  positive(P_hat, "P_hat");
  positive(C0, "C0");
  positive(F_e_I, "F_e_I");
  positive(P_s, "P_s");
  positive(phi_I, "phi_I");
  positive(G0, "G0");
  positive(f_s, "f_s");
  positive(c, "c");
  positive(sigma_bar, "sigma_bar");
  if (L < 1 || T < 1 || M < 1 || M0 < 1) {
    throw std::invalid_argument("counts L, T, M, M0 must be at least 1");
  }
  if (M % M0 != 0) throw std::invalid_argument("M must be a multiple of M0");
  if (X_s_A_search < 0) throw std::invalid_argument("X_s_A_search must be nonnegative");
  if (P_hat >= 1.0) throw std::invalid_argument("P_hat must lie in (0, 1)");
  if (rho_s_hat > 1.0) throw std::invalid_argument("rho_s_hat must lie in (0, 1]");
  if (omega < 0.0 || xi < 0.0) throw std::invalid_argument("costs must be nonnegative");
}

}  // namespace isac
