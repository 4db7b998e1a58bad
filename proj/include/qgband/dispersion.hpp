#ifndef QGBAND_DISPERSION_HPP
#define QGBAND_DISPERSION_HPP

#include <array>
#include <span>
#include <vector>

#include "qgband/detkit.hpp"
#include "qgband/interval.hpp"
#include "qgband/potential.hpp"

namespace qgband {

// Quasi-momentum theta in R^n (n >= 2).  The Brillouin zone convention is
// [-pi, pi]^n, but evaluation is defined for any finite components — all
// characteristic functions are 2*pi-periodic in each component, and tests
// rely on evaluating both theta and theta + 2*pi*e_j.
class QuasiMomentum {
 public:
  explicit QuasiMomentum(std::vector<double> theta);

  int n() const { return static_cast<int>(theta_.size()); }
  double operator[](int j) const { return theta_[static_cast<std::size_t>(j)]; }
  const std::vector<double>& components() const { return theta_; }
  double big_theta() const;  // Theta = sum_j theta_j

  QuasiMomentum negated() const;

 private:
  std::vector<double> theta_;
};

// Edge phase factors for the 2n edges of the n-cube period cell:
//   tau_1 = 1
//   tau_j = exp(i theta_j)                       2 <= j <= n
//   tau_j = exp(i (Theta - theta_{2n-j+1}))      n+1 <= j <= 2n-1
//   tau_2n = exp(i Theta)
struct TauFactors {
  std::vector<Complex> tau;  // 1-based edge j at tau[j-1]
};

TauFactors tau_factors(const QuasiMomentum& theta);

// T = [cos(Theta/2) + sum_{l=2..n} cos((Theta - 2 theta_l)/2)]^2, the
// squared bracket of the simplified n-cube relation; t_bracket returns the
// signed bracket itself.  T ranges over [0, n^2] and satisfies
// 4T = (sum_k tau_k)(sum_k 1/tau_k).
double t_bracket(const QuasiMomentum& theta);
double t_value(const QuasiMomentum& theta);

// Period-cell description of the two supported lattice graphs.  A rectangle
// is the n = 2 cube; lengths holds the n axis lengths a_1..a_n and
// potentials one entry per edge (2n of them).  Edge lengths fold back:
//   l_1 = a_1, l_j = a_j (2<=j<=n), l_j = a_{2n-j+1} (n+1<=j<=2n-1), l_2n = a_1.
class GraphSpec {
 public:
  enum class Kind { Rectangle, NCube };

  static GraphSpec rectangle(std::array<double, 2> lengths,
                             std::vector<Potential> edge_potentials);
  static GraphSpec ncube(int n, std::vector<double> lengths,
                         std::vector<Potential> edge_potentials);

  Kind kind() const { return kind_; }
  int n() const { return n_; }
  int num_edges() const { return 2 * n_; }
  const std::vector<double>& axis_lengths() const { return lengths_; }
  double edge_length(int j) const;  // 1-based edge index
  const Potential& edge_potential(int j) const;
  double max_edge_length() const;

  // True when all edges carry the same potential and the same length.
  bool edges_identical() const;

  // Fundamental data for all 2n edges at one lambda.
  std::vector<IntervalData> edge_data(double lambda,
                                      int steps_per_wavelength = kDefaultStepsPerWavelength) const;

 private:
  GraphSpec() = default;

  Kind kind_ = Kind::Rectangle;
  int n_ = 2;
  std::vector<double> lengths_;
  std::vector<Potential> potentials_;
};

// ---- characteristic functions ------------------------------------------
//
// All forms share the same zero set in lambda at fixed theta (that is the
// dispersion relation); they differ by fixed nonzero proportionality
// constants that the regression tests pin down.

// Rectangle, expanded closed form: returns LHS - RHS of
//   (C1 S2 S3 S4)' + (S1 C2 S3 S4)' + (S1 S2 C3 S4)' + (S1 S2 S3 C4)'
//     = 2 [ (S1 S3 + S2 S4) cos t1 + (S1 S2 + S3 S4) cos t2
//           + S2 S3 cos(t1 + t2) + S1 S4 cos(t1 - t2) ],
// where a primed product is the sum of the four single-factor-primed terms.
// Real-valued for real interval data.
double rect_char_closed(const std::array<IntervalData, 4>& d,
                        const QuasiMomentum& theta);

// Rectangle, brute force: determinant of the full 8x8 vertex-condition
// matrix, and of the reduced 5x5 one (the 5x5 equals the general n-cube
// matrix at n = 2).
Complex rect_char_det8(const std::array<IntervalData, 4>& d,
                       const QuasiMomentum& theta);
Complex rect_char_det5(const std::array<IntervalData, 4>& d,
                       const QuasiMomentum& theta);

// Rectangle with identical even edge data: 4 S^2 (C S' - cos^2(t1/2) cos^2(t2/2)).
double rect_char_simplified(const IntervalData& d, const QuasiMomentum& theta);

// n-cube, closed form built from the structured-determinant expansions:
//   Phi = -(sum_k tau_k C'_k) * sum_l prod_{i != l} (tau_i S_i)
//         + sum_{l=2..2n} (C_1 - tau_l C_l)
//             * sum_{k != l} (prod_{i != l,k} tau_i S_i) (tau_k S'_k - tau_l S'_l)
Complex ncube_char_general(std::span<const IntervalData> d,
                           const QuasiMomentum& theta);

// Vertex-condition matrix for the n-cube cell: (2n+1) x (2n+1), first row
// (0, 1, ..., 1), rows j = 2..2n carrying (C1 - tau_j Cj, S1, -tau_j Sj)
// and a final Kirchhoff row (sum_k tau_k C'k, S'1, tau_2 S'2, ..., tau_2n S'2n).
SmallComplexMatrix ncube_char_matrix(std::span<const IntervalData> d,
                                     const QuasiMomentum& theta);

// n-cube, brute force: determinant of ncube_char_matrix.
Complex ncube_char_det(std::span<const IntervalData> d,
                       const QuasiMomentum& theta);

// n-cube with identical edge data d (pre-evenness form; under an even
// potential C = S' and the C*S' product becomes S'^2):
//   4 exp(i n Theta) S^(2n-2) (T - n^2 C S')
Complex ncube_char_simplified(const IntervalData& d, const QuasiMomentum& theta);

}  // namespace qgband

#endif
