#include "isac/physics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace isac {

double echo_power(double D, const SystemConstants& sc) {
  if (!(D > 0.0)) throw std::invalid_argument("echo_power requires D > 0");
  const double gm = sc.Gm();
  const double four_pi = 4.0 * M_PI;
  const double numerator = sc.P_s * gm * gm * sc.c * sc.c * sc.sigma_bar;
  const double denominator = four_pi * four_pi * four_pi * sc.f_s * sc.f_s * D * D * D * D;
  return numerator / denominator;
}

double interferer_power(double r, const SystemConstants& sc) {
  if (!(r > 0.0)) throw std::invalid_argument("interferer_power requires r > 0");
  const double gm = sc.Gm();
  const double denom = 4.0 * M_PI * sc.f_s * r;
  return sc.P_s * gm * gm * sc.c * sc.c / (denom * denom);
}

double interference_scale(double lambda_I, double rho_c, long long X_s_I,
                          const SystemConstants& sc) {
  if (X_s_I < 1) throw std::invalid_argument("interference requires at least one sensing band");
  if (!(rho_c > 0.0) || rho_c > 1.0) throw std::invalid_argument("rho_c must lie in (0, 1]");
  if (lambda_I < 0.0) throw std::invalid_argument("device intensity must be nonnegative");
  const double gm = sc.Gm();
  const double co_band = lambda_I * (1.0 - rho_c) / static_cast<double>(X_s_I);
  const double beam = sc.phi_I * sc.phi_I / (4.0 * M_PI);
  const double denom = 4.0 * M_PI * sc.f_s;
  const double one_way = sc.P_s * gm * gm * sc.c * sc.c / (denom * denom);
  return co_band * beam * one_way;
}

double interference_cdf(double i_s, double lambda_I, double rho_c, long long X_s_I,
                        const SystemConstants& sc) {
  if (!(i_s > 0.0)) throw std::invalid_argument("interference_cdf requires i_s > 0");
  return std::exp(-interference_scale(lambda_I, rho_c, X_s_I, sc) / i_s);
}

SensingLinkSample make_sensing_link_sample(double D, double interference,
                                           const SystemConstants& sc) {
  SensingLinkSample s;
  s.distance = D;
  s.echo_power = echo_power(D, sc);
  s.interference = interference;
  s.sir = interference > 0.0 ? s.echo_power / interference
                             : std::numeric_limits<double>::infinity();
  return s;
}

}  // namespace isac
