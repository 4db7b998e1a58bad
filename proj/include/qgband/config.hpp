#ifndef QGBAND_CONFIG_HPP
#define QGBAND_CONFIG_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qgband/dispersion.hpp"
#include "qgband/spectrum.hpp"
#include "qgband/tilings.hpp"

namespace qgband {

// Raised for malformed or semantically invalid run configurations; the
// message carries the JSON path of the offending node.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TilingJob {
  TilingKind kind = TilingKind::Triangular;
  double length = 1.0;
  std::vector<Potential> potentials;  // 1 entry, or 3 for triangular_general
};

struct IntervalJob {
  Potential q = Potential::zero();
  double length = 1.0;
};

// One fully validated run request: at most one subject section
// (graph | tiling | interval) plus command parameters and tolerances; each
// command checks that its own subject section is present.
struct RunConfig {
  std::optional<GraphSpec> graph;
  std::optional<TilingJob> tiling;
  std::optional<IntervalJob> interval;

  // command parameters (defaults materialized at parse time)
  std::optional<double> lambda_min;          // scan floor; commands derive one if absent
  double lambda_max = 100.0;
  int grid_per_axis = 9;                     // surface / fixed-lambda dispersion
  std::optional<std::vector<double>> theta;  // fixed-theta dispersion & tilings
  std::optional<double> lambda_fixed;        // fixed-lambda dispersion sweep
  std::optional<std::vector<double>> lambda_samples;  // interval table abscissae
  int lambda_count = 101;                    // interval table size when no samples given

  SolveOptions tolerances;
};

// Parses and validates a JSON run configuration.  Unknown keys anywhere are
// rejected with their path; all defaults are filled in.
RunConfig parse_config(const std::string& text);

// Convenience: read a file fully and parse it.
RunConfig load_config(const std::string& path);

}  // namespace qgband

#endif
