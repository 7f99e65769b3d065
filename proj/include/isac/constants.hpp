#pragma once

#include <cmath>

namespace isac {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double dbm_to_watts(double dbm) { return 1e-3 * db_to_linear(dbm); }

// System-wide constants. All fields are linear units; dB/dBm inputs are
// converted once at configuration load.
struct SystemConstants {
  double r0 = 500.0;          // hexagon side [m]
  int L = 3;                  // APs in the cluster
  double D_hat = 10.0;        // RoI radius [m]
  double tau = 1e-3;          // slot duration [s]
  int T = 1000;               // slots per sensing interval
  int M = 500;                // sensing intervals per planning window
  int M0 = 10;                // collection period [intervals]
  double B_c0 = 15e3;         // communication subcarrier bandwidth [Hz]
  double B_s0 = 1e6;          // sensing band bandwidth [Hz]
  double R0 = 15.0;           // rate per subcarrier [bits/slot]
  double R_hat = 1000.0;      // per-device rate demand [bits/slot]
  double rho_s_hat = 0.05;    // required per-slot tracking frequency
  double gamma_s_hat = 100.0; // SIR threshold (20 dB)
  double P_hat = 0.95;        // required SIR satisfaction probability
  double C0 = 1e8;            // CPU cycles per tracked target
  double F_e_I = 2e9;         // device CPU [cycles/s]
  int X_s_A_search = 1;       // search beams reserved per AP
  double P_s = 0.1;           // sensing transmit power [W] (20 dBm)
  double phi_I = 0.5235987755982988;  // device beamwidth [rad] (pi/6)
  double G0 = 5.623413251903491;      // antenna gain scale (7.5 dBi)
  double f_s = 3.5e9;         // sensing carrier frequency [Hz]
  double c = 3e8;             // propagation speed [m/s]
  double sigma_bar = 0.5;     // mean radar cross section [m^2]
  double omega = 1.0;         // cost per Hz reserved
  double xi = 1e-3;           // cost per cycle/s reserved

  double A0() const;                 // hexagon area [m^2]
  double Gm() const;                 // in-beam antenna gain, 2*pi*G0/phi_I
  double device_compute_cap() const; // tau*T*F_e_I/C0, targets per interval
  double slots_per_interval() const { return tau * static_cast<double>(T); }

  void validate() const;  // throws std::invalid_argument on bad values
};

}  // namespace isac
