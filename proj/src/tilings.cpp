#include "qgband/tilings.hpp"

#include <cmath>
#include <stdexcept>

namespace qgband {

int tiling_data_count(TilingKind kind) {
  return kind == TilingKind::TriangularGeneral ? 3 : 1;
}

const char* tiling_kind_name(TilingKind kind) {
  switch (kind) {
    case TilingKind::Triangular: return "triangular";
    case TilingKind::ElongatedTriangular: return "elongated_triangular";
    case TilingKind::TruncatedSquare: return "truncated_square";
    case TilingKind::Trihexagonal: return "trihexagonal";
    case TilingKind::TriangularGeneral: return "triangular_general";
  }
  throw std::logic_error("unreachable tiling kind");
}

TilingKind tiling_kind_from_name(const std::string& name) {
  if (name == "triangular") return TilingKind::Triangular;
  if (name == "elongated_triangular") return TilingKind::ElongatedTriangular;
  if (name == "truncated_square") return TilingKind::TruncatedSquare;
  if (name == "trihexagonal") return TilingKind::Trihexagonal;
  if (name == "triangular_general") return TilingKind::TriangularGeneral;
  throw std::invalid_argument("unknown tiling kind: " + name);
}

double tiling_band_condition(TilingKind kind, double sp,
                             const std::array<double, 2>& theta) {
  const double t1 = theta[0], t2 = theta[1];
  switch (kind) {
    case TilingKind::Triangular:
      return 3.0 * sp + 1.0 -
             4.0 * std::cos(0.5 * t1) * std::cos(0.5 * t2) * std::cos(0.5 * (t2 - t1));
    case TilingKind::ElongatedTriangular: {
      const double c1 = std::cos(t1);
      return 25.0 * sp * sp - 20.0 * c1 * sp -
             8.0 * std::cos(0.5 * t1) * std::cos(0.5 * t2) * std::cos(0.5 * (t1 - t2)) -
             4.0 * c1 * c1 - 1.0;
    }
    case TilingKind::TruncatedSquare: {
      const double c1 = std::cos(t1), c2 = std::cos(t2);
      const double sp2 = sp * sp;
      return 81.0 * sp2 * sp2 - 54.0 * sp2 - 12.0 * sp * (c1 + c2) + 1.0 - 4.0 * c1 * c2;
    }
    case TilingKind::Trihexagonal:
      return 2.0 * sp * sp - sp - std::cos(0.5 * t2) * std::cos(0.5 * (t1 - t2));
    case TilingKind::TriangularGeneral:
      throw std::invalid_argument("triangular_general has no single-edge band condition");
  }
  throw std::logic_error("unreachable tiling kind");
}

double tiling_char(TilingKind kind, std::span<const IntervalData> d,
                   const std::array<double, 2>& theta) {
  if (static_cast<int>(d.size()) != tiling_data_count(kind))
    throw std::invalid_argument("tiling_char: wrong number of edge data entries");

  if (kind == TilingKind::TriangularGeneral) {
    const double t1 = theta[0], t2 = theta[1];
    const double S1 = d[0].S, S2 = d[1].S, S3 = d[2].S;
    return d[0].Sp * S2 * S3 + S1 * d[1].Sp * S3 + S1 * S2 * d[2].Sp +
           d[0].C * S2 * S3 + d[1].C * S1 * S3 + d[2].C * S1 * S2 -
           2.0 * S1 * S2 * std::cos(t1 - t2) - 2.0 * S2 * S3 * std::cos(t1) -
           2.0 * S1 * S3 * std::cos(t2);
  }

  const double S = d[0].S, sp = d[0].Sp;
  const double bracket = tiling_band_condition(kind, sp, theta);
  switch (kind) {
    case TilingKind::Triangular:
    case TilingKind::TruncatedSquare:
      return S * S * bracket;
    case TilingKind::ElongatedTriangular:
      return S * S * S * bracket;
    case TilingKind::Trihexagonal:
      return S * S * S * (2.0 * sp + 1.0) * bracket;
    default:
      throw std::logic_error("unreachable tiling kind");
  }
}

}  // namespace qgband
