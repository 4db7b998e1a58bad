#include "qgband/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qgband {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v))
    throw std::invalid_argument(std::string(what) + " must be finite");
}

}  // namespace

Potential Potential::zero() {
  Potential p;
  p.kind_ = Kind::Zero;
  p.parity_ = Parity::DeclaredEven;
  return p;
}

Potential Potential::constant(double c) {
  require_finite(c, "constant potential value");
  Potential p;
  p.kind_ = Kind::Constant;
  p.c_ = c;
  p.parity_ = Parity::DeclaredEven;
  return p;
}

Potential Potential::graphene(double d, double depth, double scale) {
  require_finite(d, "graphene period d");
  require_finite(depth, "graphene depth");
  require_finite(scale, "graphene scale");
  if (d <= 0.0) throw std::invalid_argument("graphene period d must be positive");
  if (scale == 0.0) throw std::invalid_argument("graphene scale must be nonzero");
  Potential p;
  p.kind_ = Kind::Graphene;
  p.d_ = d;
  p.depth_ = depth;
  p.scale_ = scale;
  p.parity_ = Parity::Unknown;  // even only on intervals commensurate with d
  return p;
}

Potential Potential::sampled(std::vector<double> x, std::vector<double> q,
                             Parity parity) {
  if (x.size() != q.size())
    throw std::invalid_argument("sampled potential: x and q lengths differ");
  if (x.size() < 2)
    throw std::invalid_argument("sampled potential needs at least two nodes");
  if (x.front() != 0.0)
    throw std::invalid_argument("sampled potential must start at x = 0");
  for (std::size_t i = 0; i < x.size(); ++i) {
    require_finite(x[i], "sampled potential node x");
    require_finite(q[i], "sampled potential value q");
    if (i > 0 && x[i] <= x[i - 1])
      throw std::invalid_argument("sampled potential nodes must be strictly ascending");
  }
  Potential p;
  p.kind_ = Kind::Sampled;
  p.xs_ = std::move(x);
  p.qs_ = std::move(q);
  p.parity_ = parity;
  return p;
}

double Potential::operator()(double x) const {
  switch (kind_) {
    case Kind::Zero:
      return 0.0;
    case Kind::Constant:
      return c_;
    case Kind::Graphene: {
      const double s = std::sin(std::numbers::pi * x / d_);
      return depth_ + (d_ / scale_) * s * s;
    }
    case Kind::Sampled: {
      const double lo = xs_.front(), hi = xs_.back();
      // tolerate a few ulp of overshoot from grid arithmetic
      const double slack = 64.0 * std::numeric_limits<double>::epsilon() *
                           std::max(1.0, std::abs(hi));
      if (x < lo - slack || x > hi + slack)
        throw std::invalid_argument("sampled potential evaluated outside its domain");
      const double xc = std::clamp(x, lo, hi);
      auto it = std::upper_bound(xs_.begin(), xs_.end(), xc);
      if (it == xs_.begin()) return qs_.front();
      if (it == xs_.end()) return qs_.back();
      const std::size_t i = static_cast<std::size_t>(it - xs_.begin());
      const double t = (xc - xs_[i - 1]) / (xs_[i] - xs_[i - 1]);
      return qs_[i - 1] + t * (qs_[i] - qs_[i - 1]);
    }
  }
  throw std::logic_error("unreachable potential kind");
}

double Potential::min_on(double a) const {
  switch (kind_) {
    case Kind::Zero:
      return 0.0;
    case Kind::Constant:
      return c_;
    case Kind::Graphene:
      return depth_ + std::min(0.0, d_ / scale_);  // sin^2 attains 0 at x = 0
    case Kind::Sampled: {
      // piecewise linear: the minimum over [0, a] sits at a node or at a
      double m = qs_.front();
      for (std::size_t i = 0; i < xs_.size() && xs_[i] <= a; ++i)
        m = std::min(m, qs_[i]);
      m = std::min(m, (*this)(std::min(a, xs_.back())));
      return m;
    }
  }
  throw std::logic_error("unreachable potential kind");
}

bool Potential::domain_matches(double a) const {
  if (kind_ != Kind::Sampled) return true;
  return std::abs(xs_.back() - a) <=
         64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(a));
}

bool Potential::operator==(const Potential& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case Kind::Zero:
      return true;
    case Kind::Constant:
      return c_ == other.c_;
    case Kind::Graphene:
      return d_ == other.d_ && depth_ == other.depth_ && scale_ == other.scale_;
    case Kind::Sampled:
      return xs_ == other.xs_ && qs_ == other.qs_;
  }
  return false;
}

std::string Potential::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Zero:
      os << "zero";
      break;
    case Kind::Constant:
      os << "constant(" << c_ << ")";
      break;
    case Kind::Graphene:
      os << "graphene(d=" << d_ << ", depth=" << depth_ << ", scale=" << scale_ << ")";
      break;
    case Kind::Sampled:
      os << "sampled(" << xs_.size() << " nodes on [0, " << xs_.back() << "])";
      break;
  }
  return os.str();
}

}  // namespace qgband
