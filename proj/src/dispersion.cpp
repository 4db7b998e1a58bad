#include "qgband/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qgband {

namespace {

Complex unit_phase(double angle) {
  return Complex(std::cos(angle), std::sin(angle));
}

void check_edge_data(std::span<const IntervalData> d, int expected) {
  if (static_cast<int>(d.size()) != expected)
    throw std::invalid_argument("characteristic function: edge data count does not match 2n");
}

}  // namespace

QuasiMomentum::QuasiMomentum(std::vector<double> theta) : theta_(std::move(theta)) {
  if (theta_.size() < 2)
    throw std::invalid_argument("quasi-momentum needs at least two components");
  for (double t : theta_)
    if (!std::isfinite(t))
      throw std::invalid_argument("quasi-momentum components must be finite");
}

double QuasiMomentum::big_theta() const {
  double s = 0.0;
  for (double t : theta_) s += t;
  return s;
}

QuasiMomentum QuasiMomentum::negated() const {
  std::vector<double> neg(theta_);
  for (double& t : neg) t = -t;
  return QuasiMomentum(std::move(neg));
}

TauFactors tau_factors(const QuasiMomentum& theta) {
  const int n = theta.n();
  const double big = theta.big_theta();
  TauFactors f;
  f.tau.resize(static_cast<std::size_t>(2 * n));
  f.tau[0] = Complex(1.0);
  for (int j = 2; j <= n; ++j) f.tau[j - 1] = unit_phase(theta[j - 1]);
  for (int j = n + 1; j <= 2 * n - 1; ++j)
    f.tau[j - 1] = unit_phase(big - theta[2 * n - j]);  // theta_{2n-j+1}
  f.tau[2 * n - 1] = unit_phase(big);
  return f;
}

double t_bracket(const QuasiMomentum& theta) {
  const double big = theta.big_theta();
  double b = std::cos(0.5 * big);
  for (int l = 2; l <= theta.n(); ++l) b += std::cos(0.5 * (big - 2.0 * theta[l - 1]));
  return b;
}

double t_value(const QuasiMomentum& theta) {
  const double b = t_bracket(theta);
  return b * b;
}

GraphSpec GraphSpec::rectangle(std::array<double, 2> lengths,
                               std::vector<Potential> edge_potentials) {
  GraphSpec g = ncube(2, {lengths[0], lengths[1]}, std::move(edge_potentials));
  g.kind_ = Kind::Rectangle;
  return g;
}

GraphSpec GraphSpec::ncube(int n, std::vector<double> lengths,
                           std::vector<Potential> edge_potentials) {
  if (n < 2) throw std::invalid_argument("graph dimension n must be at least 2");
  if (static_cast<int>(lengths.size()) != n)
    throw std::invalid_argument("graph needs exactly n axis lengths");
  for (double a : lengths)
    if (!std::isfinite(a) || a <= 0.0)
      throw std::invalid_argument("axis lengths must be positive and finite");
  if (static_cast<int>(edge_potentials.size()) != 2 * n)
    throw std::invalid_argument("graph needs exactly 2n edge potentials");

  GraphSpec g;
  g.kind_ = Kind::NCube;
  g.n_ = n;
  g.lengths_ = std::move(lengths);
  g.potentials_ = std::move(edge_potentials);
  for (int j = 1; j <= 2 * n; ++j)
    if (!g.potentials_[static_cast<std::size_t>(j - 1)].domain_matches(g.edge_length(j)))
      throw std::invalid_argument("sampled edge potential domain does not match its edge length");
  return g;
}

double GraphSpec::edge_length(int j) const {
  if (j < 1 || j > 2 * n_) throw std::invalid_argument("edge index out of range");
  if (j == 1 || j == 2 * n_) return lengths_[0];
  if (j <= n_) return lengths_[static_cast<std::size_t>(j - 1)];
  return lengths_[static_cast<std::size_t>(2 * n_ - j)];  // a_{2n-j+1}
}

const Potential& GraphSpec::edge_potential(int j) const {
  if (j < 1 || j > 2 * n_) throw std::invalid_argument("edge index out of range");
  return potentials_[static_cast<std::size_t>(j - 1)];
}

double GraphSpec::max_edge_length() const {
  return *std::max_element(lengths_.begin(), lengths_.end());
}

bool GraphSpec::edges_identical() const {
  for (int j = 2; j <= 2 * n_; ++j)
    if (!(edge_potential(j) == edge_potential(1)) ||
        edge_length(j) != edge_length(1))
      return false;
  return true;
}

std::vector<IntervalData> GraphSpec::edge_data(double lambda,
                                               int steps_per_wavelength) const {
  std::vector<IntervalData> out;
  out.reserve(static_cast<std::size_t>(2 * n_));
  for (int j = 1; j <= 2 * n_; ++j) {
    // reuse data for edges that repeat the same (potential, length) pair
    int prev = 0;
    for (int i = 1; i < j; ++i)
      if (edge_length(i) == edge_length(j) &&
          edge_potential(i) == edge_potential(j)) {
        prev = i;
        break;
      }
    if (prev > 0)
      out.push_back(out[static_cast<std::size_t>(prev - 1)]);
    else
      out.push_back(solve_interval(edge_potential(j), edge_length(j), lambda,
                                   steps_per_wavelength));
  }
  return out;
}

double rect_char_closed(const std::array<IntervalData, 4>& d,
                        const QuasiMomentum& theta) {
  if (theta.n() != 2)
    throw std::invalid_argument("rectangle characteristic function needs n = 2");
  const double t1 = theta[0], t2 = theta[1];

  // (X1 X2 X3 X4)' = sum of the four products with exactly one factor primed.
  const double S[4] = {d[0].S, d[1].S, d[2].S, d[3].S};
  const double Sp[4] = {d[0].Sp, d[1].Sp, d[2].Sp, d[3].Sp};
  const double C[4] = {d[0].C, d[1].C, d[2].C, d[3].C};
  const double Cp[4] = {d[0].Cp, d[1].Cp, d[2].Cp, d[3].Cp};

  double lhs = 0.0;
  for (int which = 0; which < 4; ++which) {
    // product with factor `which` being C and the rest S, differentiated
    for (int primed = 0; primed < 4; ++primed) {
      double term = 1.0;
      for (int i = 0; i < 4; ++i) {
        const bool is_c = (i == which);
        const bool is_p = (i == primed);
        term *= is_c ? (is_p ? Cp[i] : C[i]) : (is_p ? Sp[i] : S[i]);
      }
      lhs += term;
    }
  }

  const double rhs = 2.0 * ((S[0] * S[2] + S[1] * S[3]) * std::cos(t1) +
                            (S[0] * S[1] + S[2] * S[3]) * std::cos(t2) +
                            S[1] * S[2] * std::cos(t1 + t2) +
                            S[0] * S[3] * std::cos(t1 - t2));
  return lhs - rhs;
}

Complex rect_char_det8(const std::array<IntervalData, 4>& d,
                       const QuasiMomentum& theta) {
  if (theta.n() != 2)
    throw std::invalid_argument("rectangle characteristic function needs n = 2");
  const TauFactors f = tau_factors(theta);
  const Complex t2 = f.tau[1], t3 = f.tau[2], t4 = f.tau[3];

  // Unknowns (A1..A4, B1..B4): continuity rows tie A_j to A_1, one Kirchhoff
  // row per pair of opposite edges, and the two current rows close the cell.
  SmallComplexMatrix m(8);
  m.at(0, 0) = 1.0; m.at(0, 1) = -1.0;
  m.at(1, 0) = 1.0; m.at(1, 2) = -1.0;
  m.at(2, 0) = 1.0; m.at(2, 3) = -1.0;
  m.at(3, 4) = 1.0; m.at(3, 5) = 1.0; m.at(3, 6) = 1.0; m.at(3, 7) = 1.0;

  m.at(4, 0) = d[0].C; m.at(4, 1) = -t2 * d[1].C;
  m.at(4, 4) = d[0].S; m.at(4, 5) = -t2 * d[1].S;

  m.at(5, 0) = d[0].C; m.at(5, 2) = -t3 * d[2].C;
  m.at(5, 4) = d[0].S; m.at(5, 6) = -t3 * d[2].S;

  m.at(6, 0) = d[0].C; m.at(6, 3) = -t4 * d[3].C;
  m.at(6, 4) = d[0].S; m.at(6, 7) = -t4 * d[3].S;

  m.at(7, 0) = d[0].Cp; m.at(7, 1) = t2 * d[1].Cp;
  m.at(7, 2) = t3 * d[2].Cp; m.at(7, 3) = t4 * d[3].Cp;
  m.at(7, 4) = d[0].Sp; m.at(7, 5) = t2 * d[1].Sp;
  m.at(7, 6) = t3 * d[2].Sp; m.at(7, 7) = t4 * d[3].Sp;

  return det_lu(m);
}

Complex rect_char_det5(const std::array<IntervalData, 4>& d,
                       const QuasiMomentum& theta) {
  return ncube_char_det(std::span<const IntervalData>(d.data(), 4), theta);
}

double rect_char_simplified(const IntervalData& d, const QuasiMomentum& theta) {
  if (theta.n() != 2)
    throw std::invalid_argument("rectangle characteristic function needs n = 2");
  const double c1 = std::cos(0.5 * theta[0]);
  const double c2 = std::cos(0.5 * theta[1]);
  return 4.0 * d.S * d.S * (d.C * d.Sp - c1 * c1 * c2 * c2);
}

SmallComplexMatrix ncube_char_matrix(std::span<const IntervalData> d,
                                     const QuasiMomentum& theta) {
  const int n = theta.n();
  check_edge_data(d, 2 * n);
  const TauFactors f = tau_factors(theta);

  const int dim = 2 * n + 1;
  SmallComplexMatrix m(dim);
  for (int c = 1; c < dim; ++c) m.at(0, c) = Complex(1.0);
  for (int j = 2; j <= 2 * n; ++j) {
    const Complex tj = f.tau[static_cast<std::size_t>(j - 1)];
    const IntervalData& dj = d[static_cast<std::size_t>(j - 1)];
    m.at(j - 1, 0) = d[0].C - tj * dj.C;
    m.at(j - 1, 1) = d[0].S;
    m.at(j - 1, j) = -tj * dj.S;
  }
  Complex kirchhoff(0.0);
  for (int k = 1; k <= 2 * n; ++k)
    kirchhoff += f.tau[static_cast<std::size_t>(k - 1)] * d[static_cast<std::size_t>(k - 1)].Cp;
  m.at(dim - 1, 0) = kirchhoff;
  m.at(dim - 1, 1) = d[0].Sp;
  for (int j = 2; j <= 2 * n; ++j)
    m.at(dim - 1, j) = f.tau[static_cast<std::size_t>(j - 1)] * d[static_cast<std::size_t>(j - 1)].Sp;

  return m;
}

Complex ncube_char_det(std::span<const IntervalData> d, const QuasiMomentum& theta) {
  return det_lu(ncube_char_matrix(d, theta));
}

Complex ncube_char_general(std::span<const IntervalData> d,
                           const QuasiMomentum& theta) {
  const int n = theta.n();
  check_edge_data(d, 2 * n);
  const TauFactors f = tau_factors(theta);
  const std::size_t m = static_cast<std::size_t>(2 * n);

  std::vector<Complex> a(m), b(m);
  for (std::size_t i = 0; i < m; ++i) {
    a[i] = f.tau[i] * d[i].S;
    b[i] = f.tau[i] * d[i].Sp;
  }

  // prefix/suffix products of a for the omitted-factor sums
  std::vector<Complex> pre(m + 1, Complex(1.0)), suf(m + 1, Complex(1.0));
  for (std::size_t i = 0; i < m; ++i) pre[i + 1] = pre[i] * a[i];
  for (std::size_t i = m; i-- > 0;) suf[i] = suf[i + 1] * a[i];

  Complex kirchhoff(0.0), u_sum(0.0);
  for (std::size_t k = 0; k < m; ++k) {
    kirchhoff += f.tau[k] * d[k].Cp;
    u_sum += pre[k] * suf[k + 1];
  }
  Complex phi = -kirchhoff * u_sum;

  for (std::size_t l = 1; l < m; ++l) {  // 1-based edge l+1: l = 2..2n
    const Complex head = d[0].C - f.tau[l] * d[l].C;
    // omitted-one products of a with index l removed
    std::vector<Complex> rest;
    rest.reserve(m - 1);
    for (std::size_t i = 0; i < m; ++i)
      if (i != l) rest.push_back(a[i]);
    std::vector<Complex> rpre(m, Complex(1.0)), rsuf(m, Complex(1.0));
    for (std::size_t i = 0; i + 1 < m; ++i) rpre[i + 1] = rpre[i] * rest[i];
    for (std::size_t i = m - 1; i-- > 0;) rsuf[i] = rsuf[i + 1] * rest[i];

    Complex inner(0.0);
    std::size_t r = 0;
    for (std::size_t k = 0; k < m; ++k) {
      if (k == l) continue;
      inner += rpre[r] * rsuf[r + 1] * (b[k] - b[l]);
      ++r;
    }
    phi += head * inner;
  }
  return phi;
}

Complex ncube_char_simplified(const IntervalData& d, const QuasiMomentum& theta) {
  const int n = theta.n();
  const double br = t_bracket(theta);
  double spow = 1.0;
  for (int i = 0; i < 2 * n - 2; ++i) spow *= d.S;
  const Complex phase = unit_phase(static_cast<double>(n) * theta.big_theta());
  return 4.0 * phase * spow * (br * br - static_cast<double>(n * n) * d.C * d.Sp);
}

}  // namespace qgband
