#ifndef QGBAND_POTENTIAL_HPP
#define QGBAND_POTENTIAL_HPP

#include <complex>
#include <string>
#include <vector>

namespace qgband {

// Edge potential q(x) on an interval [0, a].  Four kinds are supported:
//   Zero      q = 0
//   Constant  q = c
//   Graphene  q(x) = depth + (d/scale) * sin^2(pi x / d), the standard
//             single-well profile used for carbon-lattice models
//   Sampled   piecewise-linear through (x_i, q_i), x_0 = 0 ascending
//
// `parity` is declared metadata: operations whose hypotheses require an even
// potential (q(x) = q(a-x)) either trust the declaration or verify evenness
// numerically via is_even().
enum class Parity { DeclaredEven, Unknown };

class Potential {
 public:
  enum class Kind { Zero, Constant, Graphene, Sampled };

  static Potential zero();
  static Potential constant(double c);
  static Potential graphene(double d = 1.43, double depth = -0.85,
                            double scale = 1.34);
  static Potential sampled(std::vector<double> x, std::vector<double> q,
                           Parity parity = Parity::Unknown);

  Kind kind() const { return kind_; }
  Parity parity() const { return parity_; }
  void declare_even() { parity_ = Parity::DeclaredEven; }
  bool declared_even() const { return parity_ == Parity::DeclaredEven; }

  // Pointwise evaluation; x must lie in the potential's domain (sampled
  // kinds clamp a few ulp of overshoot at the ends, anything further throws).
  double operator()(double x) const;

  // Minimum of q over [0, a]; exact for closed-form kinds, nodal for sampled.
  double min_on(double a) const;

  double constant_value() const { return c_; }
  double graphene_d() const { return d_; }
  double graphene_depth() const { return depth_; }
  double graphene_scale() const { return scale_; }
  const std::vector<double>& sample_x() const { return xs_; }
  const std::vector<double>& sample_q() const { return qs_; }

  // For sampled potentials the domain end is fixed by the last node.
  bool domain_matches(double a) const;

  bool operator==(const Potential& other) const;

  std::string describe() const;

 private:
  Potential() = default;

  Kind kind_ = Kind::Zero;
  Parity parity_ = Parity::Unknown;
  double c_ = 0.0;
  double d_ = 1.43, depth_ = -0.85, scale_ = 1.34;
  std::vector<double> xs_, qs_;
};

// Spectral parameter lambda with its square-root branch rho:
// rho = sqrt(lambda) >= 0 for lambda >= 0, rho = i*sqrt(-lambda) otherwise,
// so rho^2 = lambda holds structurally in either branch.
struct SpectralParameter {
  double lambda = 0.0;

  bool negative() const { return lambda < 0.0; }
  double rho_magnitude() const { return std::sqrt(std::abs(lambda)); }
  std::complex<double> rho() const {
    return negative() ? std::complex<double>(0.0, rho_magnitude())
                      : std::complex<double>(rho_magnitude(), 0.0);
  }
};

}  // namespace qgband

#endif
