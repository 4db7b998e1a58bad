#ifndef QGBAND_ROOTFIND_HPP
#define QGBAND_ROOTFIND_HPP

#include <functional>
#include <vector>

namespace qgband {

// Brent's method on a bracketing interval [lo, hi] with f(lo)*f(hi) <= 0;
// converges at least as fast as bisection, refined to |interval| <= xtol
// (capped at max_iter).  Throws if the bracket is invalid.
double brent_root(const std::function<double(double)>& f, double lo, double hi,
                  double xtol, int max_iter = 200);

// Golden-section minimization of f on [lo, hi] down to |interval| <= xtol.
// Returns the abscissa of the best point seen.
double golden_min(const std::function<double(double)>& f, double lo, double hi,
                  double xtol, int max_iter = 240);

// Scan grid over a lambda window: uniform in rho = sqrt(lambda) with step
// pi / (8 * a_max * density) on the positive part, a 64*density-interval
// lambda grid on the negative part.  Endpoints are included exactly; 0
// appears when the window straddles it, so no scan cell crosses the branch
// point.  density > 1 refines the grid (used by stability checks).
std::vector<double> scan_lambdas(double lo, double hi, double a_max,
                                 int density = 1);

// Refine a sign change of f on one scan cell [la, lb] (no branch-point
// straddle) to the equivalent of absolute rho-tolerance rho_tol: positive
// cells bisect in rho, negative cells in lambda with the matching width.
double refine_crossing(const std::function<double(double)>& f, double la,
                       double lb, double rho_tol, int max_iter = 200);

// Merge near-duplicates (|x - y| <= tol) of a sorted list, keeping the first.
std::vector<double> dedupe_sorted(std::vector<double> xs, double tol);

}  // namespace qgband

#endif
