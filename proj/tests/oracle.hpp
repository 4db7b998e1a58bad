#ifndef QGBAND_TESTS_ORACLE_HPP
#define QGBAND_TESTS_ORACLE_HPP

// Test-side reference integrator, deliberately independent of the library's
// fixed-step RK4: embedded Cash-Karp 4(5) pair with proportional step
// control.  Used to cross-check interval data, Dirichlet roots and band
// edges computed by the library.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "qgband/interval.hpp"
#include "qgband/potential.hpp"

namespace qgtest {

// (C, C', S, S') of -y'' + q y = lambda y on [0, a], adaptive to `tol`
// (mixed absolute/relative, per component).
inline qgband::IntervalData ck45_interval(const qgband::Potential& q, double a,
                                          double lambda, double tol = 1e-11) {
  if (!(a > 0.0)) throw std::invalid_argument("oracle: a must be positive");

  // Cash-Karp tableau
  static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 3.0 / 5, c5 = 1.0, c6 = 7.0 / 8;
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 3.0 / 10, a42 = -9.0 / 10, a43 = 6.0 / 5;
  static const double a51 = -11.0 / 54, a52 = 5.0 / 2, a53 = -70.0 / 27, a54 = 35.0 / 27;
  static const double a61 = 1631.0 / 55296, a62 = 175.0 / 512, a63 = 575.0 / 13824,
                      a64 = 44275.0 / 110592, a65 = 253.0 / 4096;
  static const double b1 = 37.0 / 378, b3 = 250.0 / 621, b4 = 125.0 / 594,
                      b6 = 512.0 / 1771;
  static const double d1 = 2825.0 / 27648, d3 = 18575.0 / 48384, d4 = 13525.0 / 55296,
                      d5 = 277.0 / 14336, d6 = 1.0 / 4;

  using State = std::array<double, 4>;  // C, C', S, S'
  auto deriv = [&](double x, const State& y) -> State {
    const double w = q(x) - lambda;
    return {y[1], w * y[0], y[3], w * y[2]};
  };

  State y{1.0, 0.0, 0.0, 1.0};
  double x = 0.0;
  const double rho = std::sqrt(std::abs(lambda));
  double h = std::min(a, 0.1 / std::max(1.0, rho));
  const double hmin = a * 1e-14;
  long guard = 0;

  while (x < a) {
    if (++guard > 2000000) throw std::runtime_error("oracle: step count blown");
    if (x + h > a) h = a - x;

    const State k1 = deriv(x, y);
    State t;
    for (int i = 0; i < 4; ++i) t[i] = y[i] + h * a21 * k1[i];
    const State k2 = deriv(x + c2 * h, t);
    for (int i = 0; i < 4; ++i) t[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    const State k3 = deriv(x + c3 * h, t);
    for (int i = 0; i < 4; ++i) t[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    const State k4 = deriv(x + c4 * h, t);
    for (int i = 0; i < 4; ++i)
      t[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    const State k5 = deriv(x + c5 * h, t);
    for (int i = 0; i < 4; ++i)
      t[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    const State k6 = deriv(x + c6 * h, t);

    State y5, y4;
    double err = 0.0;
    for (int i = 0; i < 4; ++i) {
      y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b6 * k6[i]);
      y4[i] = y[i] + h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i]);
      const double sc = tol * (1.0 + std::max(std::abs(y[i]), std::abs(y5[i])));
      err = std::max(err, std::abs(y5[i] - y4[i]) / sc);
    }

    if (err <= 1.0 || h <= hmin) {
      x += h;
      y = y5;
    }
    const double fac = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
    h *= std::clamp(fac, 0.2, 5.0);
    h = std::max(h, hmin);
  }

  qgband::IntervalData d;
  d.a = a;
  d.lambda = lambda;
  d.C = y[0];
  d.Cp = y[1];
  d.S = y[2];
  d.Sp = y[3];
  return d;
}

// Plain bisection on [lo, hi] with f(lo) * f(hi) < 0; no reuse of the
// library's refinement code.
inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     double xtol) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (flo * fhi > 0.0) throw std::invalid_argument("oracle bisect: no sign change");
  for (int it = 0; it < 400 && hi - lo > xtol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (flo * fm < 0.0) {
      hi = mid;
      fhi = fm;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  return 0.5 * (lo + hi);
}

// Dirichlet eigenvalues below lambda_max: sign scan of S(a; lambda) on a
// fine uniform rho grid plus bisection, all through the oracle integrator.
inline std::vector<double> dirichlet_oracle(const qgband::Potential& q, double a,
                                            double lambda_max, double tol = 1e-11) {
  auto s_of = [&](double lam) { return ck45_interval(q, a, lam, tol).S; };
  const double lam_lo = q.min_on(a) - 1.0;
  const double rho_hi = std::sqrt(std::max(lambda_max, 1.0));
  const int cells = std::max(64, static_cast<int>(80.0 * rho_hi * a));
  std::vector<double> out;
  double prev_lam = lam_lo;
  double prev_s = s_of(prev_lam);
  for (int i = 1; i <= cells; ++i) {
    const double u = static_cast<double>(i) / cells;
    // quadratic ramp: uniform in rho for lambda > 0, stretched below
    const double lam = lam_lo + (lambda_max - lam_lo) * u * u;
    const double s = s_of(lam);
    if (prev_s == 0.0) out.push_back(prev_lam);
    else if (prev_s * s < 0.0)
      out.push_back(bisect(s_of, prev_lam, lam, 1e-12 * (1.0 + std::abs(lam))));
    prev_lam = lam;
    prev_s = s;
  }
  return out;
}

}  // namespace qgtest

#endif
