#include "qgband/spectrum.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <functional>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "qgband/rootfind.hpp"

namespace qgband {

namespace {

std::uint64_t key_of(double lambda) { return std::bit_cast<std::uint64_t>(lambda); }

void check_window(std::pair<double, double> w) {
  if (!std::isfinite(w.first) || !std::isfinite(w.second) || !(w.first < w.second))
    throw std::invalid_argument("lambda window must be finite with lo < hi");
}

double lambda_tol(double x, double rho_tol) {
  // lambda-space width equivalent to an absolute rho tolerance at |x|
  return rho_tol * std::max(1.0, 2.0 * std::sqrt(std::abs(x)));
}

struct ScanRoot {
  double x = 0.0;
  bool crossing = true;
};

// Sign scan + modulus-dip probes on a prepared grid.  `f` drives the sign
// logic, `fmod` the dip probes (usually |f|, or the modulus of a complex
// function whose real factor f is).  Dip candidates are *not* verified here;
// the caller filters them against its own acceptance scale.
std::vector<ScanRoot> scan_roots(const std::function<double(double)>& f,
                                 const std::function<double(double)>& fmod,
                                 const std::vector<double>& grid,
                                 const SolveOptions& opts) {
  const std::size_t n = grid.size();
  std::vector<double> fv(n), mv(n);
  for (std::size_t i = 0; i < n; ++i) {
    fv[i] = f(grid[i]);
    mv[i] = fmod(grid[i]);
    if (!std::isfinite(fv[i]) || !std::isfinite(mv[i]))
      throw std::runtime_error("root scan: non-finite function value");
  }

  std::vector<ScanRoot> out;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (fv[i] == 0.0) out.push_back({grid[i], true});
    if (fv[i] * fv[i + 1] < 0.0)
      out.push_back({refine_crossing(f, grid[i], grid[i + 1], opts.rho_tol,
                                     opts.max_refine_iter),
                     true});
  }
  if (!fv.empty() && fv.back() == 0.0) out.push_back({grid.back(), true});

  // modulus dips hiding even-multiplicity roots
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (fv[i] == 0.0) continue;  // already recorded as a crossing
    if (mv[i] > mv[i - 1] || mv[i] > mv[i + 1]) continue;
    if (fv[i - 1] * fv[i] < 0.0 || fv[i] * fv[i + 1] < 0.0) continue;  // crossings covered
    if (mv[i] > 0.5 * std::max(mv[i - 1], mv[i + 1])) continue;       // shallow dip
    const double xtol = lambda_tol(std::max(std::abs(grid[i - 1]), std::abs(grid[i + 1])),
                                   opts.rho_tol);
    // a pair of transversal zeros tighter than the grid also shows up as a
    // dip; look for the opposite-sign excursion between them and, if present,
    // split the cell into two bracketed crossings at its deepest point
    if (fv[i - 1] * fv[i + 1] > 0.0) {
      const double s0 = fv[i - 1] > 0.0 ? 1.0 : -1.0;
      const double xneg = golden_min([&](double l) { return s0 * f(l); },
                                     grid[i - 1], grid[i + 1], xtol);
      if (s0 * f(xneg) < 0.0) {
        out.push_back({refine_crossing(f, grid[i - 1], xneg, opts.rho_tol,
                                       opts.max_refine_iter),
                       true});
        out.push_back({refine_crossing(f, xneg, grid[i + 1], opts.rho_tol,
                                       opts.max_refine_iter),
                       true});
        continue;
      }
    }
    out.push_back({golden_min(fmod, grid[i - 1], grid[i + 1], xtol), false});
  }

  std::sort(out.begin(), out.end(), [](const ScanRoot& a, const ScanRoot& b) {
    return a.x < b.x;
  });
  return out;
}

std::vector<ScanRoot> merge_close_roots(std::vector<ScanRoot> roots, double rho_tol) {
  std::vector<ScanRoot> out;
  for (const ScanRoot& r : roots) {
    const double tol = 4.0 * lambda_tol(r.x, rho_tol) + 1e-12;
    if (!out.empty() && r.x - out.back().x <= tol) {
      out.back().crossing = out.back().crossing || r.crossing;
      continue;
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace

const char* band_edge_kind_name(BandEdgeKind k) {
  switch (k) {
    case BandEdgeKind::PhiPlusOne: return "phi_plus_one";
    case BandEdgeKind::PhiMinusOne: return "phi_minus_one";
    case BandEdgeKind::DomainBoundary: return "domain_boundary";
    case BandEdgeKind::Touching: return "touching";
  }
  return "?";
}

std::vector<double> dirichlet_eigenvalues(const Potential& q, double a,
                                          double lambda_max,
                                          const SolveOptions& opts) {
  if (!std::isfinite(a) || a <= 0.0)
    throw std::invalid_argument("interval length a must be positive and finite");
  const double qmin = q.min_on(a);
  if (!(lambda_max > qmin))
    throw std::invalid_argument("lambda_max must exceed the potential minimum");

  std::unordered_map<std::uint64_t, double> memo;
  auto s_of = [&](double lam) {
    auto it = memo.find(key_of(lam));
    if (it != memo.end()) return it->second;
    const double s = solve_interval(q, a, lam, opts.steps_per_wavelength).S;
    memo.emplace(key_of(lam), s);
    return s;
  };

  const double lam_lo = qmin - 1.0;
  const std::vector<double> grid = scan_lambdas(lam_lo, lambda_max, a, opts.scan_refine);
  std::vector<ScanRoot> roots =
      scan_roots(s_of, [&](double l) { return std::abs(s_of(l)); }, grid, opts);
  // Dirichlet eigenvalues of a regular problem are simple: keep crossings only.
  std::erase_if(roots, [](const ScanRoot& r) { return !r.crossing; });
  roots = merge_close_roots(std::move(roots), opts.rho_tol);

  std::vector<double> out;
  for (const ScanRoot& r : roots) {
    const double resid = std::abs(solve_interval(q, a, r.x, opts.steps_per_wavelength).S);
    if (resid > opts.root_verify_scale * (1.0 + std::abs(r.x)))
      throw std::runtime_error("point eigenvalue failed residual verification");
    out.push_back(r.x);
  }
  return out;
}

AcBands ac_bands(const Potential& q, double a, double lambda_max,
                 const SolveOptions& opts) {
  if (!std::isfinite(a) || a <= 0.0)
    throw std::invalid_argument("interval length a must be positive and finite");
  if (!q.declared_even() && !is_even(q, a, opts.even_tol))
    throw std::invalid_argument(
        "ac_bands requires an even potential (q(x) = q(a-x)); "
        "declare parity or pass one that verifies numerically");
  const double qmin = q.min_on(a);
  if (!(lambda_max > qmin))
    throw std::invalid_argument("lambda_max must exceed the potential minimum");

  std::unordered_map<std::uint64_t, double> memo;
  auto phi = [&](double lam) {
    auto it = memo.find(key_of(lam));
    if (it != memo.end()) return it->second;
    const double v = solve_interval(q, a, lam, opts.steps_per_wavelength).Sp;
    memo.emplace(key_of(lam), v);
    return v;
  };

  const double lam_lo = qmin - 1.0;
  const std::vector<double> grid = scan_lambdas(lam_lo, lambda_max, a, opts.scan_refine);
  const std::size_t n = grid.size();
  std::vector<double> pv(n);
  for (std::size_t i = 0; i < n; ++i) {
    pv[i] = phi(grid[i]);
    if (!std::isfinite(pv[i]))
      throw std::runtime_error("band scan: non-finite multiplier value");
  }

  auto inside = [](double v) { return std::abs(v) <= 1.0; };
  auto kind_of = [](double level) {
    return level > 0.0 ? BandEdgeKind::PhiPlusOne : BandEdgeKind::PhiMinusOne;
  };
  auto level_root = [&](double level, double la, double lb) {
    return refine_crossing([&](double l) { return phi(l) - level; }, la, lb,
                           opts.rho_tol, opts.max_refine_iter);
  };

  struct EdgeEvent {
    double x;
    BandEdgeKind kind;
    bool opens;
  };
  std::vector<EdgeEvent> events;
  std::vector<double> touching;
  std::vector<Band> point_bands;

  // cell pass: transitions visible at grid resolution
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const bool in0 = inside(pv[i]), in1 = inside(pv[i + 1]);
    if (in0 == in1) {
      if (!in0 && pv[i] * pv[i + 1] < 0.0) {
        // jumps across the whole strip: a band hides inside the cell
        const double lv0 = pv[i] > 0.0 ? 1.0 : -1.0;
        const double r1 = level_root(lv0, grid[i], grid[i + 1]);
        const double r2 = level_root(-lv0, r1, grid[i + 1]);
        events.push_back({r1, kind_of(lv0), true});
        events.push_back({r2, kind_of(-lv0), false});
      }
      continue;
    }
    const double outside_v = in0 ? pv[i + 1] : pv[i];
    const double level = outside_v > 1.0 ? 1.0 : -1.0;
    const double r = level_root(level, grid[i], grid[i + 1]);
    events.push_back({r, kind_of(level), !in0});
  }

  // probe pass: extrema hiding inside a double cell (gap inside a band, band
  // inside a gap, or a tangency)
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double v0 = pv[i - 1], v1 = pv[i], v2 = pv[i + 1];
    const bool all_in = inside(v0) && inside(v1) && inside(v2);
    const bool all_above = v0 > 1.0 && v1 > 1.0 && v2 > 1.0;
    const bool all_below = v0 < -1.0 && v1 < -1.0 && v2 < -1.0;
    const double xtol = lambda_tol(std::max(std::abs(grid[i - 1]), std::abs(grid[i + 1])),
                                   opts.rho_tol);

    if (all_in && v1 >= v0 && v1 >= v2 && v1 > 0.5) {
      // local max near +1 from inside
      const double xs = golden_min([&](double l) { return -phi(l); }, grid[i - 1],
                                   grid[i + 1], xtol);
      const double vs = phi(xs);
      if (vs > 1.0 + opts.touch_tol) {
        const double r1 = level_root(1.0, grid[i - 1], xs);
        const double r2 = level_root(1.0, xs, grid[i + 1]);
        if (r2 - r1 <= opts.gap_min_width) {
          touching.push_back(0.5 * (r1 + r2));
        } else {
          events.push_back({r1, BandEdgeKind::PhiPlusOne, false});
          events.push_back({r2, BandEdgeKind::PhiPlusOne, true});
        }
      } else if (vs >= 1.0 - opts.touch_tol) {
        touching.push_back(xs);
      }
    } else if (all_in && v1 <= v0 && v1 <= v2 && v1 < -0.5) {
      // local min near -1 from inside
      const double xs = golden_min(phi, grid[i - 1], grid[i + 1], xtol);
      const double vs = phi(xs);
      if (vs < -1.0 - opts.touch_tol) {
        const double r1 = level_root(-1.0, grid[i - 1], xs);
        const double r2 = level_root(-1.0, xs, grid[i + 1]);
        if (r2 - r1 <= opts.gap_min_width) {
          touching.push_back(0.5 * (r1 + r2));
        } else {
          events.push_back({r1, BandEdgeKind::PhiMinusOne, false});
          events.push_back({r2, BandEdgeKind::PhiMinusOne, true});
        }
      } else if (vs <= -1.0 + opts.touch_tol) {
        touching.push_back(xs);
      }
    } else if (all_above && v1 <= v0 && v1 <= v2 && v1 < 3.0) {
      // local min above +1: a band may hide below
      const double xs = golden_min(phi, grid[i - 1], grid[i + 1], xtol);
      const double vs = phi(xs);
      if (vs < 1.0 - opts.touch_tol) {
        const double r1 = level_root(1.0, grid[i - 1], xs);
        const double r2 = level_root(1.0, xs, grid[i + 1]);
        events.push_back({r1, BandEdgeKind::PhiPlusOne, true});
        events.push_back({r2, BandEdgeKind::PhiPlusOne, false});
      } else if (vs <= 1.0 + opts.touch_tol) {
        point_bands.push_back(Band{xs, xs, BandEdgeKind::Touching, BandEdgeKind::Touching});
      }
    } else if (all_below && v1 >= v0 && v1 >= v2 && v1 > -3.0) {
      // local max below -1: a band may hide above
      const double xs = golden_min([&](double l) { return -phi(l); }, grid[i - 1],
                                   grid[i + 1], xtol);
      const double vs = phi(xs);
      if (vs > -1.0 + opts.touch_tol) {
        const double r1 = level_root(-1.0, grid[i - 1], xs);
        const double r2 = level_root(-1.0, xs, grid[i + 1]);
        events.push_back({r1, BandEdgeKind::PhiMinusOne, true});
        events.push_back({r2, BandEdgeKind::PhiMinusOne, false});
      } else if (vs >= -1.0 - opts.touch_tol) {
        point_bands.push_back(Band{xs, xs, BandEdgeKind::Touching, BandEdgeKind::Touching});
      }
    }
  }

  std::sort(events.begin(), events.end(),
            [](const EdgeEvent& a, const EdgeEvent& b) { return a.x < b.x; });

  // assemble maximal bands
  AcBands result;
  bool state = inside(pv.front());
  double cur_lo = grid.front();
  BandEdgeKind cur_kind = BandEdgeKind::DomainBoundary;
  for (const EdgeEvent& ev : events) {
    if (ev.opens == state)
      throw std::runtime_error("band assembly: inconsistent edge sequence");
    if (ev.opens) {
      state = true;
      cur_lo = ev.x;
      cur_kind = ev.kind;
    } else {
      state = false;
      result.bands.push_back(Band{cur_lo, ev.x, cur_kind, ev.kind});
    }
  }
  if (state)
    result.bands.push_back(Band{cur_lo, grid.back(), cur_kind, BandEdgeKind::DomainBoundary});

  for (const Band& p : point_bands) result.bands.push_back(p);
  std::sort(result.bands.begin(), result.bands.end(),
            [](const Band& a, const Band& b) { return a.lambda_lo < b.lambda_lo; });

  // merge through gaps narrower than the detector threshold
  std::vector<Band> merged;
  for (const Band& b : result.bands) {
    if (!merged.empty() && b.lambda_lo - merged.back().lambda_hi <= opts.gap_min_width) {
      touching.push_back(0.5 * (merged.back().lambda_hi + b.lambda_lo));
      merged.back().lambda_hi = b.lambda_hi;
      merged.back().hi_kind = b.hi_kind;
      continue;
    }
    merged.push_back(b);
  }
  result.bands = std::move(merged);

  std::sort(touching.begin(), touching.end());
  result.touching = dedupe_sorted(std::move(touching), opts.gap_min_width);
  return result;
}

SpectrumResult interval_spectrum(const Potential& q, double a, double lambda_max,
                                 const SolveOptions& opts) {
  SpectrumResult r;
  r.point_spectrum = dirichlet_eigenvalues(q, a, lambda_max, opts);
  AcBands ac = ac_bands(q, a, lambda_max, opts);
  r.bands = std::move(ac.bands);
  r.touching = std::move(ac.touching);
  r.lambda_lo = q.min_on(a) - 1.0;
  r.lambda_hi = lambda_max;
  r.options = opts;
  return r;
}

bool singular_condition(const IntervalData& d, const QuasiMomentum& theta,
                        double tol) {
  if (std::abs(d.S) <= tol) return true;
  const double level = t_bracket(theta) / theta.n();
  return std::abs(d.Sp - level) <= tol || std::abs(d.Sp + level) <= tol;
}

std::vector<double> singular_lambdas(const Potential& q, double a,
                                     const QuasiMomentum& theta,
                                     std::pair<double, double> window,
                                     const SolveOptions& opts) {
  check_window(window);
  std::unordered_map<std::uint64_t, IntervalData> memo;
  auto data_of = [&](double lam) -> const IntervalData& {
    auto it = memo.find(key_of(lam));
    if (it == memo.end())
      it = memo.emplace(key_of(lam),
                        solve_interval(q, a, lam, opts.steps_per_wavelength)).first;
    return it->second;
  };

  const std::vector<double> grid = scan_lambdas(window.first, window.second, a, opts.scan_refine);
  const double level = t_bracket(theta) / theta.n();

  std::vector<ScanRoot> all;
  // S = 0, and the two multiplier levels S' = +-B/n
  std::vector<std::function<double(double)>> fs = {
      [&](double l) { return data_of(l).S; },
      [&](double l) { return data_of(l).Sp - level; },
      [&](double l) { return data_of(l).Sp + level; },
  };
  for (const auto& f : fs) {
    auto fabsf = [&](double l) { return std::abs(f(l)); };
    std::vector<double> fvals(grid.size());
    double scale = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      fvals[i] = f(grid[i]);
      scale = std::max(scale, std::abs(fvals[i]));
    }
    for (ScanRoot r : scan_roots(f, fabsf, grid, opts)) {
      if (!r.crossing && std::abs(f(r.x)) > opts.accept_rel * std::max(scale, 1e-100))
        continue;  // dip probe that is not actually a root
      all.push_back(r);
    }
  }
  std::sort(all.begin(), all.end(),
            [](const ScanRoot& x, const ScanRoot& y) { return x.x < y.x; });
  all = merge_close_roots(std::move(all), opts.rho_tol);

  std::vector<double> out;
  out.reserve(all.size());
  for (const ScanRoot& r : all) out.push_back(r.x);
  return out;
}

IntervalCache::IntervalCache(const GraphSpec& g, int steps_per_wavelength)
    : g_(&g), spw_(steps_per_wavelength) {}

const std::vector<IntervalData>& IntervalCache::at(double lambda) {
  auto it = memo_.find(key_of(lambda));
  if (it == memo_.end())
    it = memo_.emplace(key_of(lambda), g_->edge_data(lambda, spw_)).first;
  return it->second;
}

std::vector<DispersionRoot> dispersion_solve(const GraphSpec& g,
                                             const QuasiMomentum& theta,
                                             std::pair<double, double> window,
                                             const SolveOptions& opts,
                                             IntervalCache* cache) {
  check_window(window);
  if (theta.n() != g.n())
    throw std::invalid_argument("quasi-momentum dimension does not match the graph");

  IntervalCache local(g, opts.steps_per_wavelength);
  IntervalCache& c = cache ? *cache : local;

  const int n = g.n();
  const double big = theta.big_theta();
  const Complex phase(std::cos(n * big), -std::sin(n * big));  // exp(-i n Theta)

  std::unordered_map<std::uint64_t, std::pair<double, double>> memo;  // (re, abs)
  auto eval = [&](double lam) {
    auto it = memo.find(key_of(lam));
    if (it == memo.end()) {
      const Complex v = ncube_char_det(c.at(lam), theta);
      it = memo.emplace(key_of(lam),
                        std::make_pair((phase * v).real(), std::abs(v))).first;
    }
    return it->second;
  };
  auto f = [&](double lam) { return eval(lam).first; };
  auto fmod = [&](double lam) { return eval(lam).second; };

  const std::vector<double> grid = scan_lambdas(window.first, window.second,
                                                g.max_edge_length(), opts.scan_refine);
  double scale = 0.0;
  for (double x : grid) scale = std::max(scale, fmod(x));
  if (scale == 0.0)
    throw std::runtime_error("dispersion scan: characteristic function vanishes on the whole grid");

  std::vector<ScanRoot> roots = scan_roots(f, fmod, grid, opts);
  roots = merge_close_roots(std::move(roots), opts.rho_tol);

  // Polish every candidate against the smallest singular value of the vertex
  // matrix.  Near a root of multiplicity m the determinant flattens as
  // |lam - x|^m, so its own samples cannot pin x below the noise floor to the
  // 1/m power; sigma_min stays linear in |lam - x| for any m and localizes to
  // the solver's relative accuracy.
  auto sigma = [&](double lam) {
    return smallest_singular_estimate(ncube_char_matrix(c.at(lam), theta));
  };
  auto local_cell = [&](double x) {
    auto hi_it = std::upper_bound(grid.begin(), grid.end(), x);
    std::size_t hi = static_cast<std::size_t>(hi_it - grid.begin());
    hi = std::min(std::max<std::size_t>(hi, 1), grid.size() - 1);
    return grid[hi] - grid[hi - 1];
  };
  // Window each candidate tightly: wide enough to cover the flattened noise
  // zone the bracketing landed in, but capped by half the distance to the
  // neighbouring candidates so golden search cannot slide to another zero.
  auto polish_window = [&](const std::vector<ScanRoot>& rs, std::size_t i) {
    const double x = rs[i].x;
    const double cell = local_cell(x);
    double h = rs[i].crossing ? 0.75 * cell : 1.5 * cell;
    if (i > 0) h = std::min(h, 0.45 * (x - rs[i - 1].x));
    if (i + 1 < rs.size()) h = std::min(h, 0.45 * (rs[i + 1].x - x));
    h = std::max(h, 4.0 * lambda_tol(x, opts.rho_tol));
    return h;
  };
  for (std::size_t i = 0; i < roots.size(); ++i) {
    ScanRoot& r = roots[i];
    const double h = polish_window(roots, i);
    const double xtol = 0.01 * lambda_tol(r.x, opts.rho_tol);
    // sigma is not unimodal across a whole scan cell (a deep neighbouring
    // valley can tilt the window), so a golden result only replaces the
    // candidate when it actually lowers sigma; retry on a shrunken window
    // to sharpen candidates whose wide window was tilted.
    double best = r.x, sig_best = sigma(r.x);
    for (double shrink : {1.0, 1.0 / 32.0}) {
      const double hw = h * shrink;
      const double y = golden_min(sigma, std::max(r.x - hw, window.first),
                                  std::min(r.x + hw, window.second), xtol);
      const double sy = sigma(y);
      if (sy < sig_best) {
        best = y;
        sig_best = sy;
      }
    }
    r.x = best;
  }
  std::sort(roots.begin(), roots.end(),
            [](const ScanRoot& a, const ScanRoot& b) { return a.x < b.x; });
  roots = merge_close_roots(std::move(roots), opts.rho_tol);

  // A pair of zeros tighter than the scan grid (narrow spectral gaps at
  // band-edge quasi-momenta) can hide behind a single candidate.  Probe
  // sigma_min outward from each root on a doubling ladder: a clear fall after
  // a clear rise marks a second zero, recovered by golden search and vetted
  // by |Phi| below.
  std::vector<ScanRoot> extra;
  for (std::size_t ri = 0; ri < roots.size(); ++ri) {
    const double x = roots[ri].x;
    const double cell = local_cell(x);
    const double sig_ref = std::max(sigma(x), 1e-300);
    for (int side = 0; side < 2; ++side) {
      const double sgn = side == 0 ? -1.0 : 1.0;
      double reach = side == 0
          ? x - (ri > 0 ? 0.5 * (x + roots[ri - 1].x) : window.first)
          : (ri + 1 < roots.size() ? 0.5 * (x + roots[ri + 1].x) : window.second) - x;
      reach = std::min(reach, 2.5 * cell);
      const double delta0 =
          std::max(100.0 * lambda_tol(x, opts.rho_tol), 1e-12 * (1.0 + std::abs(x)));
      if (!(delta0 < reach)) continue;
      // ratio 1.4 keeps one sample inside the trigger zone of any V-shaped
      // valley the ladder passes, wherever its bottom falls between samples
      std::vector<std::pair<double, double>> lad;  // (offset, sigma)
      for (double d = delta0; d < reach; d *= 1.4) lad.emplace_back(d, sigma(x + sgn * d));
      lad.emplace_back(reach, sigma(x + sgn * reach));
      double run_max = -1.0;
      std::size_t run_arg = 0, kstar = 0, kmax = 0;
      double best_ratio = 1.0;
      for (std::size_t k = 0; k < lad.size(); ++k) {
        if (k > 0 && run_max > 50.0 * sig_ref) {
          const double ratio = lad[k].second / run_max;
          if (ratio < best_ratio) { best_ratio = ratio; kstar = k; kmax = run_arg; }
        }
        if (lad[k].second > run_max) { run_max = lad[k].second; run_arg = k; }
      }
      if (best_ratio < 0.5) {
        const double dhi = kstar + 1 < lad.size() ? lad[kstar + 1].first : reach;
        double wa = x + sgn * lad[kmax].first, wb = x + sgn * dhi;
        if (wa > wb) std::swap(wa, wb);
        const double y = golden_min(sigma, wa, wb, 0.01 * lambda_tol(x, opts.rho_tol));
        // a genuine zero drops sigma orders of magnitude below the bracket
        if (sigma(y) < 1e-3 * std::min(sigma(wa), sigma(wb))) extra.push_back({y, false});
      }
    }
  }
  if (!extra.empty()) {
    roots.insert(roots.end(), extra.begin(), extra.end());
    std::sort(roots.begin(), roots.end(),
              [](const ScanRoot& a, const ScanRoot& b) { return a.x < b.x; });
    roots = merge_close_roots(std::move(roots), opts.rho_tol);
  }

  std::vector<DispersionRoot> out;
  for (const ScanRoot& r : roots) {
    // depth gate: at a true zero sigma sits orders of magnitude below its
    // half-cell neighbourhood; a sign flip inside a determinant noise zone
    // does not, however small |Phi| looks there against the global scale
    const double cell = local_cell(r.x);
    double sig_ctx = 0.0;
    for (double probe : {r.x - 0.5 * cell, r.x + 0.5 * cell}) {
      const double p = std::clamp(probe, window.first, window.second);
      if (std::abs(p - r.x) >= 0.125 * cell) sig_ctx = std::max(sig_ctx, sigma(p));
    }
    if (sig_ctx > 0.0 && sigma(r.x) > 1e-2 * sig_ctx) continue;
    const double v = fmod(r.x);
    if (r.crossing) {
      if (v > opts.accept_rel * scale)
        throw std::runtime_error("dispersion root failed modulus verification");
    } else if (v > opts.accept_rel * scale) {
      continue;  // dip probe that did not reach a root
    }
    out.push_back(DispersionRoot{r.x, r.crossing});
  }
  return out;
}

std::vector<DispersionRoot> real_char_roots(const std::function<double(double)>& f,
                                            std::pair<double, double> window,
                                            double a_max,
                                            const SolveOptions& opts) {
  check_window(window);
  std::unordered_map<std::uint64_t, double> memo;
  auto fm = [&](double lam) {
    auto it = memo.find(key_of(lam));
    if (it == memo.end()) {
      const double v = f(lam);
      it = memo.emplace(key_of(lam), v).first;
    }
    return it->second;
  };
  auto fabsf = [&](double lam) { return std::abs(fm(lam)); };

  const std::vector<double> grid = scan_lambdas(window.first, window.second,
                                                a_max, opts.scan_refine);
  double scale = 0.0;
  for (double x : grid) scale = std::max(scale, fabsf(x));
  if (scale == 0.0)
    throw std::runtime_error("root scan: function vanishes on the whole grid");

  std::vector<ScanRoot> roots = scan_roots(fm, fabsf, grid, opts);
  roots = merge_close_roots(std::move(roots), opts.rho_tol);

  std::vector<DispersionRoot> out;
  for (const ScanRoot& r : roots) {
    if (!r.crossing && fabsf(r.x) > opts.accept_rel * scale) continue;
    out.push_back(DispersionRoot{r.x, r.crossing});
  }
  return out;
}

std::vector<QuasiMomentum> theta_grid(int n, int grid_per_axis) {
  if (n < 2) throw std::invalid_argument("theta grid needs n >= 2");
  if (grid_per_axis < 2) throw std::invalid_argument("grid_per_axis must be at least 2");

  const int g = grid_per_axis;
  std::vector<double> axis(static_cast<std::size_t>(g));
  for (int i = 0; i < g; ++i) {
    // exactly negation-symmetric: integer numerator, shared denominator
    const double t = static_cast<double>(2 * i - (g - 1)) / static_cast<double>(g - 1);
    axis[static_cast<std::size_t>(i)] = std::numbers::pi * t;
  }

  std::size_t total = 1;
  for (int k = 0; k < n; ++k) total *= static_cast<std::size_t>(g);
  std::vector<QuasiMomentum> out;
  out.reserve(total);
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (int k = n - 1; k >= 0; --k) {
      idx[static_cast<std::size_t>(k)] = static_cast<int>(rem % g);
      rem /= static_cast<std::size_t>(g);
    }
    std::vector<double> th(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
      th[static_cast<std::size_t>(k)] = axis[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
    out.emplace_back(std::move(th));
  }
  return out;
}

BandSurface band_surface(const GraphSpec& g, int grid_per_axis,
                         std::pair<double, double> window,
                         const SolveOptions& opts) {
  BandSurface s;
  s.n = g.n();
  s.grid_per_axis = grid_per_axis;
  s.thetas = theta_grid(g.n(), grid_per_axis);
  s.roots.resize(s.thetas.size());

  const std::size_t total = s.thetas.size();
  unsigned hw = std::thread::hardware_concurrency();
  const std::size_t workers =
      std::min<std::size_t>(total, std::clamp<unsigned>(hw, 1u, 8u));

  std::exception_ptr err;
  std::mutex err_mu;
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    IntervalCache cache(g, opts.steps_per_wavelength);  // per-thread memo
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= total) return;
      try {
        s.roots[i] = dispersion_solve(g, s.thetas[i], window, opts, &cache);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!err) err = std::current_exception();
        return;
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  if (err) std::rethrow_exception(err);
  return s;
}

GapDecayReport gap_decay_report(const Potential& q, double a, int rho_max,
                                const SolveOptions& opts) {
  if (!std::isfinite(a) || a <= 0.0)
    throw std::invalid_argument("interval length a must be positive and finite");
  if (rho_max < 10)
    throw std::invalid_argument("gap decay diagnostic needs rho_max >= 10");

  GapDecayReport rep;
  for (int r = 1; r <= rho_max; ++r) {
    const double rho = static_cast<double>(r);
    const IntervalData d = solve_interval(q, a, rho * rho, opts.steps_per_wavelength);
    const double diff = std::abs(d.Sp - std::cos(rho * a));
    rep.rows.push_back(GapDecayRow{rho, diff, rho * diff});
    rep.sup_product = std::max(rep.sup_product, rho * diff);
  }

  // trend of windowed maxima on [10, rho_max], log-log least squares
  constexpr int kWindow = 16;
  std::vector<double> xs, ys;
  for (std::size_t lo = 9; lo + kWindow <= rep.rows.size(); lo += kWindow) {
    double m = 0.0, rho_mid = 0.0;
    for (std::size_t i = lo; i < lo + kWindow; ++i) {
      m = std::max(m, rep.rows[i].product);
      rho_mid += rep.rows[i].rho;
    }
    rho_mid /= kWindow;
    xs.push_back(std::log(rho_mid));
    ys.push_back(std::log(std::max(m, 1e-300)));
  }
  if (xs.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double k = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i]; sy += ys[i];
      sxx += xs[i] * xs[i]; sxy += xs[i] * ys[i];
    }
    rep.trend_slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  }
  return rep;
}

}  // namespace qgband
