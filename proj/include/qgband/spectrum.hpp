#ifndef QGBAND_SPECTRUM_HPP
#define QGBAND_SPECTRUM_HPP

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qgband/dispersion.hpp"
#include "qgband/interval.hpp"
#include "qgband/potential.hpp"

namespace qgband {

// Shared numerical knobs.  Scanning is uniform in rho = sqrt(lambda) with
// step pi/(8 a_max); negative lambda gets a coarse 64-interval sweep.
struct SolveOptions {
  int steps_per_wavelength = kDefaultStepsPerWavelength;
  int scan_refine = 1;           // grid density multiplier (stability checks)
  double rho_tol = 1e-10;        // bracketing refinement, absolute in rho
  int max_refine_iter = 200;
  double accept_rel = 1e-8;      // |Phi| at a root vs the window's max |Phi|
  double touch_tol = 1e-8;       // |phi -+ 1| treated as a band touching
  double gap_min_width = 1e-8;   // gaps narrower than this merge to touchings
  double even_tol = 1e-9;        // numerical evenness acceptance
  double root_verify_scale = 1e-10;  // point roots: |S| <= scale*(1+|lambda|)
};

enum class BandEdgeKind { PhiPlusOne, PhiMinusOne, DomainBoundary, Touching };

const char* band_edge_kind_name(BandEdgeKind k);

// One closed band [lambda_lo, lambda_hi] of the absolutely continuous
// spectrum, with the mechanism that closes each end.
struct Band {
  double lambda_lo = 0.0;
  double lambda_hi = 0.0;
  BandEdgeKind lo_kind = BandEdgeKind::DomainBoundary;
  BandEdgeKind hi_kind = BandEdgeKind::DomainBoundary;
};

struct AcBands {
  std::vector<Band> bands;        // disjoint, ascending
  std::vector<double> touching;   // interior |phi| = 1 points without crossing
};

struct SpectrumResult {
  std::vector<double> point_spectrum;  // ascending
  std::vector<Band> bands;
  std::vector<double> touching;
  double lambda_lo = 0.0;  // scan window actually used
  double lambda_hi = 0.0;
  SolveOptions options;
};

// Dirichlet eigenvalues on a single edge: roots of lambda -> S(a, lambda) in
// (min q - 1, lambda_max].  These carry the flat-band / point spectrum of the
// periodic graph when all edges are identical.
std::vector<double> dirichlet_eigenvalues(const Potential& q, double a,
                                          double lambda_max,
                                          const SolveOptions& opts = {});

// Bands of the absolutely continuous spectrum via the monodromy multiplier
// condition |phi(lambda)| <= 1 with phi = S'(a, lambda).  Requires an even
// potential (declared, or verified numerically at opts.even_tol); refuses
// otherwise, because the multiplier reduction is only valid then.
AcBands ac_bands(const Potential& q, double a, double lambda_max,
                 const SolveOptions& opts = {});

// Point + band spectrum in one sweep (the CLI `bands` command).
SpectrumResult interval_spectrum(const Potential& q, double a, double lambda_max,
                                 const SolveOptions& opts = {});

// Simplified singular condition for the identical-even n-cube:
// |S| <= tol or |S' -+ B/n| <= tol with B the signed bracket t_bracket(theta).
bool singular_condition(const IntervalData& d, const QuasiMomentum& theta,
                        double tol = 1e-9);

// All lambda in `window` satisfying the simplified condition at fixed theta:
// the union of S = 0 roots and S' = +-B/n roots.  Reference solution set for
// cross-checking dispersion_solve on identical-even graphs.
std::vector<double> singular_lambdas(const Potential& q, double a,
                                     const QuasiMomentum& theta,
                                     std::pair<double, double> window,
                                     const SolveOptions& opts = {});

// Memoizes per-lambda edge data of one graph across many theta evaluations.
class IntervalCache {
 public:
  IntervalCache(const GraphSpec& g, int steps_per_wavelength);
  const std::vector<IntervalData>& at(double lambda);
  std::size_t size() const { return memo_.size(); }

 private:
  const GraphSpec* g_;
  int spw_;
  std::unordered_map<std::uint64_t, std::vector<IntervalData>> memo_;
};

struct DispersionRoot {
  double lambda = 0.0;
  bool crossing = true;  // false: even-multiplicity root found by |Phi| dip
};

// Roots in lambda of the characteristic determinant at fixed theta, found by
// sign scanning of the real-valued factor Re(exp(-i n Theta) Phi) plus
// modulus-dip probes for even-multiplicity roots; every root is verified
// against |Phi| <= accept_rel * max-grid-|Phi|.
std::vector<DispersionRoot> dispersion_solve(const GraphSpec& g,
                                             const QuasiMomentum& theta,
                                             std::pair<double, double> window,
                                             const SolveOptions& opts = {},
                                             IntervalCache* cache = nullptr);

// Roots of a real-valued characteristic function over a lambda window,
// using the same sign-scan + modulus-dip machinery as dispersion_solve.
// a_max sets the rho-grid step; dip candidates are accepted when |f| falls
// below accept_rel times the grid maximum of |f|.
std::vector<DispersionRoot> real_char_roots(const std::function<double(double)>& f,
                                            std::pair<double, double> window,
                                            double a_max,
                                            const SolveOptions& opts = {});

// Uniform closed theta grid over [-pi, pi]^n, exactly symmetric under
// negation, row-major with the last axis fastest.
std::vector<QuasiMomentum> theta_grid(int n, int grid_per_axis);

struct BandSurface {
  int n = 2;
  int grid_per_axis = 0;
  std::vector<QuasiMomentum> thetas;             // row-major
  std::vector<std::vector<DispersionRoot>> roots;  // per grid point, ascending
};

BandSurface band_surface(const GraphSpec& g, int grid_per_axis,
                         std::pair<double, double> window,
                         const SolveOptions& opts = {});

// High-energy diagnostic: rows (rho, |S'(a, rho^2) - cos(rho a)|, rho * diff)
// for integer rho = 1..rho_max.  `sup_product` is the empirical bound of the
// third column; `trend_slope` is the log-log least-squares slope of windowed
// maxima of the product for rho >= 10 (a bounded product gives slope ~ 0).
struct GapDecayRow {
  double rho = 0.0;
  double diff = 0.0;
  double product = 0.0;
};

struct GapDecayReport {
  std::vector<GapDecayRow> rows;
  double sup_product = 0.0;
  double trend_slope = 0.0;
};

GapDecayReport gap_decay_report(const Potential& q, double a, int rho_max,
                                const SolveOptions& opts = {});

}  // namespace qgband

#endif
