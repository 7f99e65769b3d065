#pragma once

#include "isac/constants.hpp"

namespace isac {

// One mono-static sensing link: echo from a target at distance D against the
// strongest co-band interferer.
struct SensingLinkSample {
  double distance = 0.0;      // D [m]
  double echo_power = 0.0;    // P_e [W]
  double interference = 0.0;  // I_s [W]
  double sir = 0.0;           // gamma_s = P_e / I_s
};

// Echo power received back at the device, proportional to D^-4.
// Throws std::invalid_argument for D <= 0.
double echo_power(double D, const SystemConstants& sc);

// One-way power received from an interferer at range r (isotropic path loss
// with in-beam gain on both ends).
double interferer_power(double r, const SystemConstants& sc);

// Closed-form CDF of the strongest co-band interference power:
//   P{I_s <= i_s} = exp(-scale / i_s).
// Throws for i_s <= 0 or X_s_I < 1.
double interference_cdf(double i_s, double lambda_I, double rho_c, long long X_s_I,
                        const SystemConstants& sc);

// The `scale` factor above; exposed so tests can cross-check the pieces.
double interference_scale(double lambda_I, double rho_c, long long X_s_I,
                          const SystemConstants& sc);

SensingLinkSample make_sensing_link_sample(double D, double interference,
                                           const SystemConstants& sc);

}  // namespace isac
