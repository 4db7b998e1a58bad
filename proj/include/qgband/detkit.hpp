#ifndef QGBAND_DETKIT_HPP
#define QGBAND_DETKIT_HPP

#include <complex>
#include <span>
#include <vector>

namespace qgband {

using Complex = std::complex<double>;

// Dense row-major complex matrix, dimensions 1..64 — big enough for every
// characteristic matrix this project builds, small enough to keep the LU
// path simple.
class SmallComplexMatrix {
 public:
  explicit SmallComplexMatrix(int dim);

  int dim() const { return dim_; }
  Complex& at(int r, int c) { return e_[static_cast<std::size_t>(r) * dim_ + c]; }
  const Complex& at(int r, int c) const {
    return e_[static_cast<std::size_t>(r) * dim_ + c];
  }

 private:
  int dim_;
  std::vector<Complex> e_;
};

// Determinant by LU factorization with partial pivoting (pivot chosen by
// modulus).  A vanishing pivot column yields determinant 0 rather than an
// error; non-finite entries are rejected.
Complex det_lu(const SmallComplexMatrix& m);

// Row-pivoted LU factorization kept for solving.  `singular` is set when a
// pivot column vanishes exactly.
struct LuFactorization {
  SmallComplexMatrix lu;       // unit-lower and upper factors, packed
  std::vector<int> perm;       // row permutation applied to the input
  double swap_sign = 1.0;
  bool singular = false;
};

LuFactorization lu_factor(const SmallComplexMatrix& m);

// Solves M x = b through a factorization of M.  Throws if it is singular.
std::vector<Complex> lu_solve(const LuFactorization& f,
                              std::vector<Complex> b);

// Deterministic estimate of the smallest singular value via two inverse
// iterations from a fixed start vector.  Zero when the matrix is exactly
// singular.  Used to localize characteristic roots of any multiplicity:
// the estimate shrinks linearly in the distance to a root, so its minimum
// can be pinned far more precisely than a minimum of |det|.
double smallest_singular_estimate(const SmallComplexMatrix& m);

// Closed form for the determinant of the "ones row / a-column / -a diagonal"
// matrix family built by build_u_matrix:
//   u_m(a) = (-1)^(m-1) * sum_j prod_{i != j} a_i,   m = a.size() >= 2.
Complex u_m(std::span<const Complex> a);

// Closed form for the companion family with one diagonal entry removed
// (1-based index l in 2..m) and a trailing b row:
//   v_ml(a, b, l) = (-1)^(l+1) * sum_{k != l} (prod_{i != l,k} a_i) (b_k - b_l),
// evaluated with omitted-factor products (no divisions by a_k).
Complex v_ml(std::span<const Complex> a, std::span<const Complex> b, int l);

// The matrices the closed forms describe, for brute-force cross-checks:
//   build_u_matrix: row 0 all ones; row j (1-based j = 2..m) has a_1 in
//   column 1 and -a_j on the diagonal.
//   build_v_matrix: same with the row for j = l removed and a final row b.
SmallComplexMatrix build_u_matrix(std::span<const Complex> a);
SmallComplexMatrix build_v_matrix(std::span<const Complex> a,
                                  std::span<const Complex> b, int l);

}  // namespace qgband

#endif
