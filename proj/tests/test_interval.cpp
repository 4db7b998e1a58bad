#include <cmath>
#include <random>

#include <doctest.h>

#include "oracle.hpp"
#include "qgband/interval.hpp"
#include "qgband/potential.hpp"

using namespace qgband;

namespace {

double rel_gap(const IntervalData& x, const IntervalData& y) {
  double worst = 0.0;
  const double scale =
      1.0 + std::max({std::abs(x.C), std::abs(x.Cp), std::abs(x.S), std::abs(x.Sp)});
  worst = std::max(worst, std::abs(x.C - y.C) / scale);
  worst = std::max(worst, std::abs(x.Cp - y.Cp) / scale);
  worst = std::max(worst, std::abs(x.S - y.S) / scale);
  worst = std::max(worst, std::abs(x.Sp - y.Sp) / scale);
  return worst;
}

}  // namespace

TEST_CASE("zero potential matches trig closed forms") {
  for (double a : {0.7, 1.0, 2.3}) {
    for (double lam : {-9.0, -0.5, 0.25, 4.0, 150.0}) {
      const IntervalData d = solve_interval(Potential::zero(), a, lam, 4096);
      const IntervalData e = closed_form_interval(Potential::zero(), a, lam);
      CHECK(rel_gap(d, e) < 1e-9);
    }
  }
}

TEST_CASE("constant potential shifts the spectral parameter") {
  const Potential q = Potential::constant(-3.7);
  for (double lam : {-20.0, -3.7, 0.0, 11.0, 90.0}) {
    const IntervalData d = solve_interval(q, 1.3, lam, 4096);
    const IntervalData e = closed_form_interval(q, 1.3, lam);
    CHECK(rel_gap(d, e) < 1e-9);
    // mu = 0 branch: C = 1, S = a exactly
    if (lam == -3.7) {
      CHECK(e.C == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(e.S == doctest::Approx(1.3).epsilon(1e-14));
      CHECK(e.Sp == doctest::Approx(1.0).epsilon(1e-14));
    }
  }
}

TEST_CASE("hyperbolic branch: negative lambda grows like cosh/sinh") {
  const double a = 1.0, lam = -25.0;  // rho = 5i
  const IntervalData d = solve_interval(Potential::zero(), a, lam, 2048);
  CHECK(d.C == doctest::Approx(std::cosh(5.0)).epsilon(1e-9));
  CHECK(d.S == doctest::Approx(std::sinh(5.0) / 5.0).epsilon(1e-9));
  CHECK(d.Sp == doctest::Approx(std::cosh(5.0)).epsilon(1e-9));
}

TEST_CASE("Wronskian normalization holds across potential kinds") {
  std::mt19937_64 rng(91);
  std::uniform_real_distribution<double> lam_d(-40.0, 400.0);
  std::uniform_real_distribution<double> a_d(0.5, 2.5);
  std::uniform_real_distribution<double> q_d(-5.0, 5.0);
  for (int t = 0; t < 40; ++t) {
    const double a = a_d(rng);
    const double lam = lam_d(rng);
    Potential q = Potential::zero();
    switch (t % 4) {
      case 0: q = Potential::zero(); break;
      case 1: q = Potential::constant(q_d(rng)); break;
      case 2: q = Potential::graphene(); break;
      case 3: {
        std::vector<double> xs, qs;
        for (int i = 0; i <= 8; ++i) {
          xs.push_back(a * i / 8.0);
          qs.push_back(q_d(rng));
        }
        q = Potential::sampled(xs, qs);
        break;
      }
    }
    const IntervalData d = solve_interval(q, a, lam);
    CHECK(std::abs(d.lagrange_residual()) < 1e-8);
  }
}

TEST_CASE("even potentials give Sp = C") {
  for (double lam : {-30.0, 1.0, 47.0, 333.0}) {
    const IntervalData g = solve_interval(Potential::graphene(), 1.43, lam);
    CHECK(std::abs(g.Sp - g.C) < 1e-6);
    const IntervalData c = solve_interval(Potential::constant(2.5), 1.9, lam);
    CHECK(std::abs(c.Sp - c.C) < 1e-6);
  }
}

TEST_CASE("fixed-step integrator agrees with the adaptive oracle") {
  for (double lam : {-12.0, 3.0, 26.5, 210.0}) {
    const IntervalData lib = solve_interval(Potential::graphene(), 1.43, lam);
    const IntervalData orc = qgtest::ck45_interval(Potential::graphene(), 1.43, lam);
    CHECK(rel_gap(lib, orc) < 1e-7);
  }
}

TEST_CASE("oracle reproduces closed forms on its own") {
  for (double lam : {-7.0, 0.5, 64.0}) {
    const IntervalData orc = qgtest::ck45_interval(Potential::constant(1.5), 1.1, lam);
    const IntervalData e = closed_form_interval(Potential::constant(1.5), 1.1, lam);
    CHECK(rel_gap(orc, e) < 1e-9);
  }
}

TEST_CASE("evenness probe distinguishes symmetric and tilted samples") {
  CHECK(is_even(Potential::graphene(), 1.43));
  CHECK(is_even(Potential::constant(4.0), 0.8));
  const Potential tilted =
      Potential::sampled({0.0, 0.5, 1.0}, {0.0, 1.0, 2.0});
  CHECK_FALSE(is_even(tilted, 1.0));
  const Potential hat = Potential::sampled({0.0, 0.5, 1.0}, {0.0, 1.0, 0.0});
  CHECK(is_even(hat, 1.0));
}

TEST_CASE("invalid interval input is rejected") {
  CHECK_THROWS_AS(solve_interval(Potential::zero(), 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(solve_interval(Potential::zero(), -2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(closed_form_interval(Potential::graphene(), 1.0, 1.0), std::exception);
}
