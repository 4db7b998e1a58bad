#include "qgband/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace qgband {

double brent_root(const std::function<double(double)>& f, double lo, double hi,
                  double xtol, int max_iter) {
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  if (!std::isfinite(fa) || !std::isfinite(fb))
    throw std::runtime_error("brent_root: non-finite function value at bracket");
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0))
    throw std::invalid_argument("brent_root: endpoints do not bracket a sign change");

  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int it = 0; it < max_iter; ++it) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a; fc = fa; d = b - a; e = d;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) +
                        0.5 * xtol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return b;

    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      // inverse quadratic / secant step
      const double s = fb / fa;
      double p, q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc, r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
        e = d; d = p / q;
      } else {
        d = xm; e = d;
      }
    } else {
      d = xm; e = d;
    }
    a = b; fa = fb;
    b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
    fb = f(b);
    if (!std::isfinite(fb))
      throw std::runtime_error("brent_root: non-finite function value");
  }
  return b;
}

double golden_min(const std::function<double(double)>& f, double lo, double hi,
                  double xtol, int max_iter) {
  constexpr double invphi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  double best_x = (f1 < f2) ? x1 : x2;
  double best_f = std::min(f1, f2);
  for (int it = 0; it < max_iter && (b - a) > xtol; ++it) {
    if (f1 < f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    }
    if (f1 < best_f) { best_f = f1; best_x = x1; }
    if (f2 < best_f) { best_f = f2; best_x = x2; }
  }
  return best_x;
}

std::vector<double> scan_lambdas(double lo, double hi, double a_max, int density) {
  if (!(hi > lo)) throw std::invalid_argument("scan window must have hi > lo");
  if (!(a_max > 0.0)) throw std::invalid_argument("scan needs a positive length scale");
  if (density < 1) throw std::invalid_argument("scan density must be >= 1");

  std::vector<double> grid;
  if (lo < 0.0) {
    const double neg_hi = std::min(hi, 0.0);
    const int neg_intervals = 64 * density;
    for (int i = 0; i <= neg_intervals; ++i)
      grid.push_back(lo + (neg_hi - lo) * static_cast<double>(i) / neg_intervals);
  }
  if (hi > 0.0) {
    const double rho_lo = std::sqrt(std::max(lo, 0.0));
    const double rho_hi = std::sqrt(hi);
    const double dr = std::numbers::pi / (8.0 * a_max * density);
    const int cells = std::max(1, static_cast<int>(std::ceil((rho_hi - rho_lo) / dr)));
    for (int i = 0; i <= cells; ++i) {
      const double r = rho_lo + (rho_hi - rho_lo) * static_cast<double>(i) / cells;
      grid.push_back(i == cells ? hi : r * r);
    }
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

double refine_crossing(const std::function<double(double)>& f, double la,
                       double lb, double rho_tol, int max_iter) {
  if (la >= 0.0) {
    // bisect in rho; the cell lies entirely on the positive branch
    auto g = [&](double r) { return f(r * r); };
    const double r = brent_root(g, std::sqrt(la), std::sqrt(lb), rho_tol, max_iter);
    return r * r;
  }
  // negative cell: lambda-tolerance equivalent to rho_tol via d(lambda) = 2|rho| d|rho|
  const double kappa = std::sqrt(std::max(std::abs(la), std::abs(lb)));
  const double ltol = rho_tol * std::max(1.0, 2.0 * kappa);
  return brent_root(f, la, lb, ltol, max_iter);
}

std::vector<double> dedupe_sorted(std::vector<double> xs, double tol) {
  std::vector<double> out;
  for (double x : xs) {
    if (out.empty() || x - out.back() > tol) out.push_back(x);
  }
  return out;
}

}  // namespace qgband
