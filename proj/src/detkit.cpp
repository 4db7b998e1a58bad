#include "qgband/detkit.hpp"

#include <cmath>
#include <stdexcept>

namespace qgband {

namespace {

bool finite(const Complex& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Products prod_{i != j} a_i for all j, via prefix/suffix accumulation.
std::vector<Complex> omitted_one_products(std::span<const Complex> a) {
  const std::size_t m = a.size();
  std::vector<Complex> pre(m + 1, Complex(1.0)), suf(m + 1, Complex(1.0));
  for (std::size_t i = 0; i < m; ++i) pre[i + 1] = pre[i] * a[i];
  for (std::size_t i = m; i-- > 0;) suf[i] = suf[i + 1] * a[i];
  std::vector<Complex> out(m);
  for (std::size_t j = 0; j < m; ++j) out[j] = pre[j] * suf[j + 1];
  return out;
}

}  // namespace

SmallComplexMatrix::SmallComplexMatrix(int dim) : dim_(dim) {
  if (dim < 1 || dim > 64)
    throw std::invalid_argument("SmallComplexMatrix dimension must be in 1..64");
  e_.assign(static_cast<std::size_t>(dim) * dim, Complex(0.0));
}

Complex det_lu(const SmallComplexMatrix& m) {
  const int n = m.dim();
  std::vector<Complex> a(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const Complex& z = m.at(r, c);
      if (!finite(z)) throw std::invalid_argument("det_lu: non-finite matrix entry");
      a[static_cast<std::size_t>(r) * n + c] = z;
    }

  auto at = [&](int r, int c) -> Complex& {
    return a[static_cast<std::size_t>(r) * n + c];
  };

  Complex det(1.0);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::abs(at(col, col));
    for (int r = col + 1; r < n; ++r) {
      const double v = std::abs(at(r, col));
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0) return Complex(0.0);  // singular to working precision
    if (piv != col) {
      for (int c = col; c < n; ++c) std::swap(at(piv, c), at(col, c));
      det = -det;
    }
    det *= at(col, col);
    for (int r = col + 1; r < n; ++r) {
      const Complex f = at(r, col) / at(col, col);
      at(r, col) = Complex(0.0);
      for (int c = col + 1; c < n; ++c) at(r, c) -= f * at(col, c);
    }
  }
  return det;
}

LuFactorization lu_factor(const SmallComplexMatrix& m) {
  const int n = m.dim();
  LuFactorization f{SmallComplexMatrix(n), std::vector<int>(static_cast<std::size_t>(n)),
                    1.0, false};
  for (int r = 0; r < n; ++r) {
    f.perm[static_cast<std::size_t>(r)] = r;
    for (int c = 0; c < n; ++c) {
      const Complex& z = m.at(r, c);
      if (!finite(z)) throw std::invalid_argument("lu_factor: non-finite matrix entry");
      f.lu.at(r, c) = z;
    }
  }

  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::abs(f.lu.at(col, col));
    for (int r = col + 1; r < n; ++r) {
      const double v = std::abs(f.lu.at(r, col));
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0) {
      f.singular = true;
      return f;
    }
    if (piv != col) {
      for (int c = 0; c < n; ++c) std::swap(f.lu.at(piv, c), f.lu.at(col, c));
      std::swap(f.perm[static_cast<std::size_t>(piv)],
                f.perm[static_cast<std::size_t>(col)]);
      f.swap_sign = -f.swap_sign;
    }
    for (int r = col + 1; r < n; ++r) {
      const Complex mult = f.lu.at(r, col) / f.lu.at(col, col);
      f.lu.at(r, col) = mult;  // keep L below the diagonal
      for (int c = col + 1; c < n; ++c) f.lu.at(r, c) -= mult * f.lu.at(col, c);
    }
  }
  return f;
}

std::vector<Complex> lu_solve(const LuFactorization& f, std::vector<Complex> b) {
  const int n = f.lu.dim();
  if (f.singular) throw std::invalid_argument("lu_solve: singular factorization");
  if (static_cast<int>(b.size()) != n)
    throw std::invalid_argument("lu_solve: right-hand side has the wrong size");

  std::vector<Complex> x(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r)
    x[static_cast<std::size_t>(r)] = b[static_cast<std::size_t>(f.perm[static_cast<std::size_t>(r)])];
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < r; ++c)
      x[static_cast<std::size_t>(r)] -= f.lu.at(r, c) * x[static_cast<std::size_t>(c)];
  for (int r = n - 1; r >= 0; --r) {
    for (int c = r + 1; c < n; ++c)
      x[static_cast<std::size_t>(r)] -= f.lu.at(r, c) * x[static_cast<std::size_t>(c)];
    x[static_cast<std::size_t>(r)] /= f.lu.at(r, r);
  }
  return x;
}

double smallest_singular_estimate(const SmallComplexMatrix& m) {
  const int n = m.dim();
  const LuFactorization f = lu_factor(m);
  if (f.singular) return 0.0;

  // fixed, generically aligned start vector
  std::vector<Complex> b(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    b[static_cast<std::size_t>(i)] =
        Complex(std::cos(0.9 * i + 0.4), std::sin(1.3 * i + 0.2));
  auto norm = [](const std::vector<Complex>& v) {
    double s = 0.0;
    for (const Complex& z : v) s += std::norm(z);
    return std::sqrt(s);
  };
  const double nb = norm(b);
  for (Complex& z : b) z /= nb;

  std::vector<Complex> x1 = lu_solve(f, std::move(b));
  const double n1 = norm(x1);
  if (!std::isfinite(n1)) return 0.0;
  if (n1 == 0.0) return 0.0;
  for (Complex& z : x1) z /= n1;
  const std::vector<Complex> x2 = lu_solve(f, std::move(x1));
  const double n2 = norm(x2);
  if (!std::isfinite(n2) || n2 == 0.0) return 0.0;
  return 1.0 / n2;
}

Complex u_m(std::span<const Complex> a) {
  const std::size_t m = a.size();
  if (m < 2) throw std::invalid_argument("u_m needs at least two entries");
  for (const Complex& z : a)
    if (!finite(z)) throw std::invalid_argument("u_m: non-finite entry");

  Complex sum(0.0);
  for (const Complex& p : omitted_one_products(a)) sum += p;
  return (m % 2 == 0 ? -1.0 : 1.0) * sum;  // (-1)^(m-1)
}

Complex v_ml(std::span<const Complex> a, std::span<const Complex> b, int l) {
  const std::size_t m = a.size();
  if (m < 2) throw std::invalid_argument("v_ml needs at least two entries");
  if (b.size() != m) throw std::invalid_argument("v_ml: a and b lengths differ");
  if (l < 2 || static_cast<std::size_t>(l) > m)
    throw std::invalid_argument("v_ml: index l must lie in 2..m");
  for (std::size_t i = 0; i < m; ++i)
    if (!finite(a[i]) || !finite(b[i]))
      throw std::invalid_argument("v_ml: non-finite entry");

  // Work on the list with a_l removed; omitted-one products of that list are
  // exactly the prod_{i != l,k} a_i factors.
  const std::size_t li = static_cast<std::size_t>(l - 1);
  std::vector<Complex> rest;
  rest.reserve(m - 1);
  for (std::size_t i = 0; i < m; ++i)
    if (i != li) rest.push_back(a[i]);
  const std::vector<Complex> prods = omitted_one_products(rest);

  Complex sum(0.0);
  std::size_t r = 0;
  for (std::size_t k = 0; k < m; ++k) {
    if (k == li) continue;
    sum += prods[r++] * (b[k] - b[li]);
  }
  return (l % 2 == 0 ? -1.0 : 1.0) * sum;  // (-1)^(l+1)
}

SmallComplexMatrix build_u_matrix(std::span<const Complex> a) {
  const int m = static_cast<int>(a.size());
  if (m < 2) throw std::invalid_argument("build_u_matrix needs at least two entries");
  SmallComplexMatrix mat(m);
  for (int c = 0; c < m; ++c) mat.at(0, c) = Complex(1.0);
  for (int j = 2; j <= m; ++j) {
    mat.at(j - 1, 0) = a[0];
    mat.at(j - 1, j - 1) = -a[static_cast<std::size_t>(j - 1)];
  }
  return mat;
}

SmallComplexMatrix build_v_matrix(std::span<const Complex> a,
                                  std::span<const Complex> b, int l) {
  const int m = static_cast<int>(a.size());
  if (m < 2) throw std::invalid_argument("build_v_matrix needs at least two entries");
  if (b.size() != a.size())
    throw std::invalid_argument("build_v_matrix: a and b lengths differ");
  if (l < 2 || l > m)
    throw std::invalid_argument("build_v_matrix: index l must lie in 2..m");

  SmallComplexMatrix mat(m);
  for (int c = 0; c < m; ++c) mat.at(0, c) = Complex(1.0);
  int r = 1;
  for (int j = 2; j <= m; ++j) {
    if (j == l) continue;
    mat.at(r, 0) = a[0];
    mat.at(r, j - 1) = -a[static_cast<std::size_t>(j - 1)];
    ++r;
  }
  for (int c = 0; c < m; ++c) mat.at(m - 1, c) = b[static_cast<std::size_t>(c)];
  return mat;
}

}  // namespace qgband
