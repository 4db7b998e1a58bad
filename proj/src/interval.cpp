#include "qgband/interval.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qgband {

namespace {

void check_interval_args(const Potential& q, double a, double lambda) {
  if (!std::isfinite(a) || a <= 0.0)
    throw std::invalid_argument("interval length a must be positive and finite");
  if (!std::isfinite(lambda))
    throw std::invalid_argument("spectral parameter lambda must be finite");
  if (!q.domain_matches(a))
    throw std::invalid_argument("sampled potential domain does not end at a");
}

}  // namespace

IntervalData solve_interval(const Potential& q, double a, double lambda,
                            int steps_per_wavelength) {
  check_interval_args(q, a, lambda);
  if (steps_per_wavelength < 4)
    throw std::invalid_argument("steps_per_wavelength must be at least 4");

  const double rho = std::sqrt(std::abs(lambda));
  const double wanted =
      steps_per_wavelength * std::max(1.0, rho) * a / (2.0 * std::numbers::pi);
  if (wanted > 2e8)
    throw std::runtime_error("interval integration would need more than 2e8 steps");
  const long n = std::max(64L, static_cast<long>(std::ceil(wanted)));
  const double h = a / static_cast<double>(n);

  // State (C, C', S, S'); y'' = (q - lambda) y for both columns.
  double C = 1.0, Cp = 0.0, S = 0.0, Sp = 1.0;
  for (long k = 0; k < n; ++k) {
    const double x0 = a * static_cast<double>(k) / static_cast<double>(n);
    const double g1 = q(x0) - lambda;
    const double g2 = q(x0 + 0.5 * h) - lambda;
    const double g3 = q(std::min(a, x0 + h)) - lambda;

    // column C
    {
      const double k1y = Cp, k1p = g1 * C;
      const double k2y = Cp + 0.5 * h * k1p, k2p = g2 * (C + 0.5 * h * k1y);
      const double k3y = Cp + 0.5 * h * k2p, k3p = g2 * (C + 0.5 * h * k2y);
      const double k4y = Cp + h * k3p, k4p = g3 * (C + h * k3y);
      C += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
      Cp += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    }
    // column S
    {
      const double k1y = Sp, k1p = g1 * S;
      const double k2y = Sp + 0.5 * h * k1p, k2p = g2 * (S + 0.5 * h * k1y);
      const double k3y = Sp + 0.5 * h * k2p, k3p = g2 * (S + 0.5 * h * k2y);
      const double k4y = Sp + h * k3p, k4p = g3 * (S + h * k3y);
      S += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
      Sp += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    }
  }

  if (!std::isfinite(C) || !std::isfinite(Cp) || !std::isfinite(S) || !std::isfinite(Sp))
    throw std::runtime_error("interval integration produced non-finite values");
  return IntervalData{a, lambda, C, Cp, S, Sp};
}

IntervalData closed_form_interval(const Potential& q, double a, double lambda) {
  check_interval_args(q, a, lambda);
  double c;
  switch (q.kind()) {
    case Potential::Kind::Zero:
      c = 0.0;
      break;
    case Potential::Kind::Constant:
      c = q.constant_value();
      break;
    default:
      throw std::invalid_argument("closed_form_interval: only zero/constant kinds have closed forms");
  }

  const double mu = lambda - c;
  IntervalData d{a, lambda, 1.0, 0.0, a, 1.0};  // polynomial limit at mu = 0
  if (mu > 0.0) {
    const double w = std::sqrt(mu);
    d.C = std::cos(w * a);
    d.Cp = -w * std::sin(w * a);
    d.S = std::sin(w * a) / w;
    d.Sp = std::cos(w * a);
  } else if (mu < 0.0) {
    const double w = std::sqrt(-mu);
    d.C = std::cosh(w * a);
    d.Cp = w * std::sinh(w * a);
    d.S = std::sinh(w * a) / w;
    d.Sp = std::cosh(w * a);
  }
  return d;
}

bool is_even(const Potential& q, double a, double tol) {
  if (!std::isfinite(a) || a <= 0.0)
    throw std::invalid_argument("interval length a must be positive and finite");
  if (!std::isfinite(tol) || tol < 0.0)
    throw std::invalid_argument("is_even tolerance must be nonnegative");
  if (q.kind() == Potential::Kind::Zero || q.kind() == Potential::Kind::Constant)
    return true;
  if (!q.domain_matches(a)) return false;

  constexpr int kProbes = 1025;
  for (int i = 0; i < kProbes; ++i) {
    const double x = a * static_cast<double>(i) / (kProbes - 1);
    if (std::abs(q(x) - q(a - x)) > tol) return false;
  }
  return true;
}

}  // namespace qgband
