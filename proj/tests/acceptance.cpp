// Acceptance gate: eleven numbered end-to-end checks, one PASS/FAIL line
// each, nonzero exit when any fails.  Tolerances are pinned here on purpose;
// loosening them is a behavior change, not a test fix.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "qgband/config.hpp"
#include "qgband/detkit.hpp"
#include "qgband/dispersion.hpp"
#include "qgband/spectrum.hpp"
#include "qgband/verify.hpp"

using namespace qgband;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string format_sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Potential random_potential(std::mt19937_64& rng, int which, double a) {
  std::uniform_real_distribution<double> qd(-5.0, 5.0);
  switch (which % 4) {
    case 0: return Potential::zero();
    case 1: return Potential::constant(qd(rng));
    case 2: return Potential::graphene();
    default: {
      std::vector<double> xs, qs;
      for (int i = 0; i <= 8; ++i) {
        xs.push_back(a * i / 8.0);
        qs.push_back(qd(rng));
      }
      return Potential::sampled(xs, qs);
    }
  }
}

// 1. Wronskian of the integrated fundamental system, all potential kinds.
// Below the spectrum the entries grow like e^{|rho|a}, so the products in
// C*Sp - S*Cp carry roundoff of order e^{2|rho|a} * eps regardless of how the
// system is integrated; the draw keeps |rho|a <= 8 (products up to ~1e7) so
// the absolute bound measures the integrator, not IEEE cancellation.
Outcome criterion_1() {
  std::mt19937_64 rng(1001);
  std::uniform_real_distribution<double> a_d(0.5, 2.5);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const double a = a_d(rng);
    const Potential q = random_potential(rng, t, a);
    std::uniform_real_distribution<double> lam_d(std::max(-50.0, -64.0 / (a * a)), 500.0);
    const IntervalData d = solve_interval(q, a, lam_d(rng));
    worst = std::max(worst, std::abs(d.lagrange_residual()));
  }
  return {worst < 1e-8, "200 triples, worst |C*Sp - S*Cp - 1| = " + format_sci(worst)};
}

// 2. Even-potential reduction Sp = C.
Outcome criterion_2() {
  double worst = 0.0;
  int samples = 0;
  auto sweep = [&](const Potential& q, double a, int count) {
    for (int i = 0; i < count; ++i) {
      const double lam = -50.0 + 550.0 * i / (count - 1);
      const IntervalData d = solve_interval(q, a, lam);
      worst = std::max(worst, std::abs(d.Sp - d.C));
      ++samples;
    }
  };
  sweep(Potential::graphene(), 1.43, 25);
  sweep(Potential::graphene(), 2.86, 25);  // two periods, still symmetric
  sweep(Potential::constant(3.1), 1.0, 25);
  sweep(Potential::constant(-4.2), 2.2, 25);
  return {worst < 1e-6 && samples == 100,
          "100 samples, worst |Sp - C| = " + format_sci(worst)};
}

// 3. Structured-determinant closed forms vs brute-force LU determinants.
Outcome criterion_3() {
  std::mt19937_64 rng(1003);
  double worst = 0.0;
  for (int m = 2; m <= 12; ++m) {
    for (int t = 0; t < 100; ++t) {
      std::vector<Complex> a, b;
      for (int i = 0; i < m; ++i) {
        a.push_back(random_unit_box_complex(rng));
        b.push_back(random_unit_box_complex(rng));
      }
      const Complex du = det_lu(build_u_matrix(a));
      worst = std::max(worst,
                       std::abs(u_m(a) - du) / std::max(1.0, std::abs(du)));
      for (int l = 2; l <= m; ++l) {
        if (m < 3) continue;
        const Complex dv = det_lu(build_v_matrix(a, b, l));
        worst = std::max(worst,
                         std::abs(v_ml(a, b, l) - dv) / std::max(1.0, std::abs(dv)));
      }
    }
  }
  return {worst < 1e-10, "m = 2..12, 100 trials each, worst rel = " + format_sci(worst)};
}

// 4. Rectangle characteristic chain with pinned constants 1 and -1.
Outcome criterion_4() {
  std::mt19937_64 rng(1004);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const std::array<IntervalData, 4> d{
        random_consistent_data(rng), random_consistent_data(rng),
        random_consistent_data(rng), random_consistent_data(rng)};
    const QuasiMomentum th = random_theta(rng, 2);
    const Complex det8 = rect_char_det8(d, th);
    const Complex det5 = rect_char_det5(d, th);
    const double closed = rect_char_closed(d, th);
    const double big = th.big_theta();
    const Complex phase(std::cos(2.0 * big), std::sin(2.0 * big));
    const double scale = std::max({1.0, std::abs(det8), std::abs(det5)});
    worst = std::max(worst, std::abs(det8 - det5) / scale);          // det8/det5 = 1
    worst = std::max(worst, std::abs(det5 + phase * closed) / scale);  // det5 = -e^{2i Theta} closed
  }
  return {worst < 1e-9, "100 trials, constants (1, -1), worst rel = " + format_sci(worst)};
}

// 5. n-cube chain: expansion vs determinant (constant 1), and the
// identical-even product form (constant 1).
Outcome criterion_5() {
  std::mt19937_64 rng(1005);
  double worst = 0.0;
  for (int n : {2, 3, 4}) {
    for (int t = 0; t < 100; ++t) {
      std::vector<IntervalData> d;
      for (int j = 0; j < 2 * n; ++j) d.push_back(random_free_data(rng));
      const QuasiMomentum th = random_theta(rng, n);
      const Complex det = ncube_char_det(d, th);
      const Complex gen = ncube_char_general(d, th);
      worst = std::max(worst, std::abs(gen - det) / std::max(1.0, std::abs(det)));

      const IntervalData e = random_consistent_even_data(rng);
      std::vector<IntervalData> all(static_cast<std::size_t>(2 * n), e);
      const Complex det_e = ncube_char_det(all, th);
      const Complex prod = ncube_char_simplified(e, th);
      worst = std::max(worst,
                       std::abs(det_e - prod) / std::max(1.0, std::abs(det_e)));
    }
  }
  return {worst < 1e-9, "n = 2,3,4, 100 trials each, worst rel = " + format_sci(worst)};
}

// 6. The two-angle product identity behind the n = 2 bracket.
Outcome criterion_6() {
  std::mt19937_64 rng(1006);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const double t1 = u(rng), t2 = u(rng);
    const double ref = 4.0 * std::pow(std::cos(0.5 * t1) * std::cos(0.5 * t2), 2);
    worst = std::max(worst, std::abs(t_value(QuasiMomentum({t1, t2})) - ref));
  }
  return {worst < 1e-12, "1000 angles, worst |T - 4 cos^2 cos^2| = " + format_sci(worst)};
}

// 7. Point spectrum: free values k^2 pi^2 and the rigid constant shift.
Outcome criterion_7() {
  const auto free_ev = dirichlet_eigenvalues(Potential::zero(), 1.0, 81.0 * kPi * kPi + 1.0);
  if (free_ev.size() != 9) return {false, "expected 9 free eigenvalues, got " +
                                              std::to_string(free_ev.size())};
  double worst = 0.0;
  for (int k = 1; k <= 9; ++k) {
    const double ref = k * k * kPi * kPi;
    worst = std::max(worst, std::abs(free_ev[static_cast<std::size_t>(k - 1)] - ref) / ref);
  }
  const double c = 11.75;
  const auto shifted = dirichlet_eigenvalues(Potential::constant(c), 1.0,
                                             81.0 * kPi * kPi + c + 1.0);
  if (shifted.size() != 9) return {false, "expected 9 shifted eigenvalues, got " +
                                              std::to_string(shifted.size())};
  for (int k = 1; k <= 9; ++k) {
    const double ref = k * k * kPi * kPi + c;
    worst = std::max(worst, std::abs(shifted[static_cast<std::size_t>(k - 1)] - ref) / ref);
  }
  return {worst < 1e-6, "k = 1..9 plus constant shift, worst rel = " + format_sci(worst)};
}

// 8. ac spectrum: gapless free band; graphene edges vs oracle discriminant.
Outcome criterion_8() {
  const auto free_ac = ac_bands(Potential::zero(), 1.0, 400.0);
  if (free_ac.bands.empty()) return {false, "free spectrum produced no bands"};
  double widest_gap = std::max(0.0, free_ac.bands.front().lambda_lo - 0.0);
  for (std::size_t i = 1; i < free_ac.bands.size(); ++i)
    widest_gap = std::max(widest_gap, free_ac.bands[i].lambda_lo -
                                          free_ac.bands[i - 1].lambda_hi);
  if (widest_gap > 1e-8)
    return {false, "free band has a gap of width " + format_sci(widest_gap)};

  const auto ac = ac_bands(Potential::graphene(), 1.43, 60.0);
  double worst = 0.0;
  int edges = 0;
  auto check_edge = [&](double lam, BandEdgeKind kind) {
    if (kind != BandEdgeKind::PhiPlusOne && kind != BandEdgeKind::PhiMinusOne) return;
    const double target = kind == BandEdgeKind::PhiPlusOne ? 2.0 : -2.0;
    auto f = [&](double l) {
      const IntervalData d = qgtest::ck45_interval(Potential::graphene(), 1.43, l);
      return d.C + d.Sp - target;
    };
    const double r = qgtest::bisect(f, lam - 1e-3, lam + 1e-3, 1e-11);
    worst = std::max(worst, std::abs(r - lam));
    ++edges;
  };
  for (const Band& b : ac.bands) {
    check_edge(b.lambda_lo, b.lo_kind);
    check_edge(b.lambda_hi, b.hi_kind);
  }
  if (edges < 4) return {false, "too few interior band edges to compare"};
  return {worst < 1e-6, "free band gapless; " + std::to_string(edges) +
                            " graphene edges vs oracle, worst = " + format_sci(worst)};
}

// 9. Spectrum equivalence on identical-even cubes: brute-force determinant
// roots vs the scalar singular equation, symmetric difference at 1e-7.
Outcome criterion_9() {
  const double a = 1.43;
  const double match_tol = 1e-7;
  const double edge_margin = 1e-3;
  const std::pair<double, double> window{-10.0, 40.0};

  SolveOptions disp_opts;
  disp_opts.steps_per_wavelength = 2048;
  disp_opts.scan_refine = 16;
  SolveOptions sing_opts;
  sing_opts.steps_per_wavelength = 2048;

  std::size_t total = 0, mismatches = 0;
  double worst_pair = 0.0;
  for (int n : {2, 3}) {
    const GraphSpec g = GraphSpec::ncube(
        n, std::vector<double>(static_cast<std::size_t>(n), a),
        std::vector<Potential>(static_cast<std::size_t>(2 * n), Potential::graphene()));
    IntervalCache cache(g, disp_opts.steps_per_wavelength);
    for (const QuasiMomentum& th : theta_grid(n, 9)) {
      std::vector<double> d, s;
      for (const auto& r : dispersion_solve(g, th, window, disp_opts, &cache))
        if (r.lambda > window.first + edge_margin && r.lambda < window.second - edge_margin)
          d.push_back(r.lambda);
      for (double x : singular_lambdas(Potential::graphene(), a, th, window, sing_opts))
        if (x > window.first + edge_margin && x < window.second - edge_margin)
          s.push_back(x);
      auto covered = [&](const std::vector<double>& from, const std::vector<double>& by) {
        for (double x : from) {
          double best = 1e300;
          for (double y : by) best = std::min(best, std::abs(x - y));
          if (best > match_tol) ++mismatches;
          else worst_pair = std::max(worst_pair, best);
        }
      };
      covered(d, s);
      covered(s, d);
      total += d.size();
    }
  }
  return {mismatches == 0,
          std::to_string(total) + " roots over n = 2,3; mismatches = " +
              std::to_string(mismatches) + ", worst matched pair = " +
              format_sci(worst_pair)};
}

// 10. High-energy decay of the even-reduction defect.
Outcome criterion_10() {
  const GapDecayReport rep = gap_decay_report(Potential::graphene(), 1.43, 200);
  const bool ok = rep.trend_slope <= 0.01;
  return {ok, "rho = 10..200, windowed-max trend slope = " + format_sci(rep.trend_slope) +
                  ", sup rho*|Sp - cos| = " + format_sci(rep.sup_product)};
}

// 11. Two identical surface runs, byte-identical output.
Outcome criterion_11() {
  const std::string cfg = std::string(QGBAND_CONFIG_DIR) + "/surface_rect_graphene.json";
  const std::string o1 = std::string(QGBAND_TEST_TMPDIR) + "/acc_surf1.csv";
  const std::string o2 = std::string(QGBAND_TEST_TMPDIR) + "/acc_surf2.csv";
  auto run = [&](const std::string& out) {
    const std::string cmd = std::string(QGBAND_CLI_PATH) + " surface --config " + cfg +
                            " --output " + out + " > /dev/null 2>&1";
    return std::system(cmd.c_str());
  };
  if (run(o1) != 0 || run(o2) != 0) return {false, "surface run failed"};
  std::ifstream f1(o1, std::ios::binary), f2(o2, std::ios::binary);
  std::ostringstream s1, s2;
  s1 << f1.rdbuf();
  s2 << f2.rdbuf();
  const bool same = !s1.str().empty() && s1.str() == s2.str();
  return {same, same ? std::to_string(s1.str().size()) + " bytes, identical"
                     : "outputs differ"};
}

}  // namespace

int main() {
  using Fn = Outcome (*)();
  const std::pair<const char*, Fn> checks[] = {
      {"wronskian normalization", &criterion_1},
      {"even reduction Sp = C", &criterion_2},
      {"structured determinant closed forms", &criterion_3},
      {"rectangle characteristic chain", &criterion_4},
      {"n-cube characteristic chain", &criterion_5},
      {"two-angle bracket identity", &criterion_6},
      {"point spectrum values and shift", &criterion_7},
      {"ac band structure vs discriminant", &criterion_8},
      {"determinant vs singular-equation spectra", &criterion_9},
      {"high-energy defect decay", &criterion_10},
      {"byte-identical surface runs", &criterion_11},
  };

  int failures = 0;
  int idx = 0;
  for (const auto& [name, fn] : checks) {
    ++idx;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome oc;
    try {
      oc = fn();
    } catch (const std::exception& e) {
      oc = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2d [%s]: %s (%s; %.1fs)\n", idx, name,
                oc.passed ? "PASS" : "FAIL", oc.detail.c_str(), secs);
    if (!oc.passed) ++failures;
  }
  if (failures) std::printf("%d of 11 criteria failed\n", failures);
  else std::printf("all 11 criteria passed\n");
  return failures == 0 ? 0 : 1;
}
