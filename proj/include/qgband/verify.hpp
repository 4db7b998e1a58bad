#ifndef QGBAND_VERIFY_HPP
#define QGBAND_VERIFY_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qgband/dispersion.hpp"
#include "qgband/interval.hpp"

namespace qgband {

// Deterministic generators used by the verification suite and tests.

// Arbitrary interval data satisfying the Wronskian normalization
// C*Sp - S*Cp = 1 (the only structural property the closed forms rely on).
IntervalData random_consistent_data(std::mt19937_64& rng, double a = 1.0,
                                    double lambda = 0.0);

// Wronskian-normalized data with the even-potential symmetry Sp = C.
IntervalData random_consistent_even_data(std::mt19937_64& rng, double a = 1.0,
                                         double lambda = 0.0);

// Fully arbitrary (no Wronskian constraint) — for determinant-vs-expansion
// identities that hold entrywise.
IntervalData random_free_data(std::mt19937_64& rng, double a = 1.0,
                              double lambda = 0.0);

QuasiMomentum random_theta(std::mt19937_64& rng, int n);

Complex random_unit_box_complex(std::mt19937_64& rng);  // Re, Im ~ U[-1, 1]

// One named verification check: oracle-equivalence or identity sweep.
struct VerifyCheck {
  std::string name;
  bool passed = false;
  long long trials = 0;
  double worst = 0.0;  // worst relative (or scaled) deviation observed
  std::string note;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool all_passed() const;
};

// Runs the full oracle-equivalence suite: structured-determinant closed
// forms vs LU determinants, the rectangle characteristic chain
// (8x8 / 5x5 / expanded), the n-cube chain for n in {2,3,4}, a Wronskian
// sweep over all potential kinds, and integrator-vs-closed-form checks for
// zero/constant potentials.  Deterministic for a fixed seed.
VerifyReport run_verify_suite(std::uint64_t seed = 20260814ull);

}  // namespace qgband

#endif
