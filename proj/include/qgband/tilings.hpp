#ifndef QGBAND_TILINGS_HPP
#define QGBAND_TILINGS_HPP

#include <array>
#include <span>
#include <string>

#include "qgband/interval.hpp"

namespace qgband {

// Planar tiling lattices with identical even edge potentials (except
// TriangularGeneral, which takes three independent edges).
enum class TilingKind {
  Triangular,
  ElongatedTriangular,
  TruncatedSquare,
  Trihexagonal,
  TriangularGeneral,
};

// Number of independent IntervalData entries tiling_char expects.
int tiling_data_count(TilingKind kind);

const char* tiling_kind_name(TilingKind kind);
TilingKind tiling_kind_from_name(const std::string& name);

// The non-prefactor part of the dispersion relation: a polynomial in
// S' = d.Sp with theta-dependent coefficients.
//   Triangular:          3 S' + 1 - 4 cos(t1/2) cos(t2/2) cos((t2-t1)/2)
//   ElongatedTriangular: 25 S'^2 - 20 cos(t1) S'
//                          - 8 cos(t1/2) cos(t2/2) cos((t1-t2)/2) - 4 cos^2(t1) - 1
//   TruncatedSquare:     81 S'^4 - 54 S'^2 - 12 S'(cos t1 + cos t2) + 1 - 4 cos t1 cos t2
//   Trihexagonal:        2 S'^2 - S' - cos(t2/2) cos((t1-t2)/2)
// Not defined for TriangularGeneral (no single-S' reduction there).
double tiling_band_condition(TilingKind kind, double sp,
                             const std::array<double, 2>& theta);

// Full left-hand side of the dispersion relation:
//   Triangular          S^2 * bracket
//   ElongatedTriangular S^3 * bracket
//   TruncatedSquare     S^2 * bracket
//   Trihexagonal        S^3 * (2 S' + 1) * bracket
//   TriangularGeneral   S1'S2S3 + S1S2'S3 + S1S2S3' + C1S2S3 + C2S1S3 + C3S1S2
//                         - 2 S1S2 cos(t1-t2) - 2 S2S3 cos t1 - 2 S1S3 cos t2
double tiling_char(TilingKind kind, std::span<const IntervalData> d,
                   const std::array<double, 2>& theta);

}  // namespace qgband

#endif
