#ifndef QGBAND_INTERVAL_HPP
#define QGBAND_INTERVAL_HPP

#include "qgband/potential.hpp"

namespace qgband {

// Fundamental system of -y'' + q y = lambda y on [0, a], evaluated at x = a:
//   C: y(0) = 1, y'(0) = 0        S: y(0) = 0, y'(0) = 1
// The Wronskian C*Sp - S*Cp equals 1 for exact solutions; lagrange_residual()
// measures how far a computed quadruple drifts from that.
struct IntervalData {
  double a = 0.0;
  double lambda = 0.0;
  double C = 1.0;
  double Cp = 0.0;
  double S = 0.0;
  double Sp = 1.0;

  double lagrange_residual() const { return C * Sp - S * Cp - 1.0; }
};

// Default spatial resolution of the fixed-step RK4 integrator, in steps per
// oscillation wavelength 2*pi/rho.  512 keeps the Wronskian drift of the RK4
// one-step matrix (~ rho*a * (2*pi/spw)^5 / 72) below 1e-9 for rho*a up to
// ~300, which the high-lambda diagnostics need.
inline constexpr int kDefaultStepsPerWavelength = 512;

// Classical fixed-step RK4 integration of the joint (C, C', S, S') system,
// parametrized directly by lambda (the rho = 0 point is not special).
// Step size h = a / max(64, ceil(spw * max(1, |rho|) * a / (2*pi))).
IntervalData solve_interval(const Potential& q, double a, double lambda,
                            int steps_per_wavelength = kDefaultStepsPerWavelength);

// Closed forms for Zero/Constant kinds (trig/hyperbolic in mu = lambda - c,
// polynomial at mu = 0); throws for kinds without a closed form.
IntervalData closed_form_interval(const Potential& q, double a, double lambda);

// Numerical evenness check q(x) = q(a-x) on a 1025-point probe grid.
// Zero/Constant return true without probing.
bool is_even(const Potential& q, double a, double tol = 1e-9);

}  // namespace qgband

#endif
