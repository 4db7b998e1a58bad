// Command-line front end: computes interval data tables, dispersion roots,
// band/point spectra, Brillouin-zone surfaces, and tiling band conditions
// from a JSON run configuration, and runs the built-in verification suite.
#include <cmath>
#include <cstdio>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qgband/config.hpp"
#include "qgband/emit.hpp"
#include "qgband/spectrum.hpp"
#include "qgband/verify.hpp"

namespace {

using namespace qgband;

struct CommonArgs {
  std::string config_path;
  std::string output_path;  // empty = stdout
  std::string format = "csv";
  std::optional<double> lambda_max_override;
  std::optional<int> grid_override;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool config_required) {
  auto* c = cmd->add_option("--config", args.config_path, "JSON run configuration");
  if (config_required) c->required();
  cmd->add_option("--output", args.output_path, "output file (default: stdout)");
  cmd->add_option("--format", args.format, "csv or json (default: csv)")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--lambda-max", args.lambda_max_override,
                  "override command-params.lambda-max");
  cmd->add_option("--grid", args.grid_override,
                  "override command-params.grid-per-axis");
}

RunConfig load(const CommonArgs& args) {
  RunConfig cfg = args.config_path.empty() ? RunConfig{} : load_config(args.config_path);
  if (args.lambda_max_override) cfg.lambda_max = *args.lambda_max_override;
  if (args.grid_override) {
    if (*args.grid_override < 2)
      throw ConfigError("--grid must be at least 2");
    cfg.grid_per_axis = *args.grid_override;
  }
  if (cfg.lambda_min && !(*cfg.lambda_min < cfg.lambda_max))
    throw ConfigError("lambda-min must be below lambda-max");
  return cfg;
}

void emit(const Table& t, const CommonArgs& args) {
  write_output(render(t, format_from_name(args.format)), args.output_path);
}

double interval_floor(const Potential& q, double a) { return q.min_on(a) - 1.0; }

double graph_floor(const GraphSpec& g) {
  double lo = 0.0;
  for (int j = 1; j <= g.num_edges(); ++j)
    lo = std::min(lo, g.edge_potential(j).min_on(g.edge_length(j)));
  return lo - 1.0;
}

int run_interval(const CommonArgs& args) {
  const RunConfig cfg = load(args);
  if (!cfg.interval)
    throw ConfigError("the interval command needs an \"interval\" config section");
  const Potential& q = cfg.interval->q;
  const double a = cfg.interval->length;

  std::vector<double> lambdas;
  if (cfg.lambda_samples) {
    lambdas = *cfg.lambda_samples;
  } else {
    const double lo = cfg.lambda_min ? *cfg.lambda_min : interval_floor(q, a);
    const double hi = cfg.lambda_max;
    const int count = cfg.lambda_count;
    for (int i = 0; i < count; ++i)
      lambdas.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
  }

  Table t;
  t.header = {"lambda", "C", "Cp", "S", "Sp"};
  for (double lam : lambdas) {
    const IntervalData d = solve_interval(q, a, lam, cfg.tolerances.steps_per_wavelength);
    t.rows.push_back({d.lambda, d.C, d.Cp, d.S, d.Sp});
  }
  emit(t, args);
  return 0;
}

int run_dispersion(const CommonArgs& args) {
  const RunConfig cfg = load(args);
  if (!cfg.graph)
    throw ConfigError("the dispersion command needs a \"graph\" config section");
  const GraphSpec& g = *cfg.graph;
  if (cfg.theta.has_value() == cfg.lambda_fixed.has_value())
    throw ConfigError(
        "dispersion needs exactly one of command-params.theta (lambda roots at "
        "fixed theta) or command-params.lambda (Phi over the theta grid)");

  Table t;
  if (cfg.theta) {
    if (static_cast<int>(cfg.theta->size()) != g.n())
      throw ConfigError("command-params.theta must have n components");
    const QuasiMomentum th(*cfg.theta);
    const double lo = cfg.lambda_min ? *cfg.lambda_min : graph_floor(g);
    const auto roots = dispersion_solve(g, th, {lo, cfg.lambda_max}, cfg.tolerances);
    t.header = {"root_index", "lambda", "crossing"};
    for (std::size_t i = 0; i < roots.size(); ++i)
      t.rows.push_back({static_cast<long long>(i), roots[i].lambda,
                        static_cast<long long>(roots[i].crossing ? 1 : 0)});
  } else {
    const double lam = *cfg.lambda_fixed;
    IntervalCache cache(g, cfg.tolerances.steps_per_wavelength);
    t.header.clear();
    for (int k = 1; k <= g.n(); ++k) t.header.push_back("theta_" + std::to_string(k));
    t.header.insert(t.header.end(), {"re_phi", "im_phi", "abs_phi"});
    for (const QuasiMomentum& th : theta_grid(g.n(), cfg.grid_per_axis)) {
      const Complex v = ncube_char_det(cache.at(lam), th);
      std::vector<Cell> row;
      for (int k = 0; k < th.n(); ++k) row.emplace_back(th[k]);
      row.emplace_back(v.real());
      row.emplace_back(v.imag());
      row.emplace_back(std::abs(v));
      t.rows.push_back(std::move(row));
    }
  }
  emit(t, args);
  return 0;
}

int run_bands(const CommonArgs& args) {
  const RunConfig cfg = load(args);
  if (!cfg.interval)
    throw ConfigError("the bands command needs an \"interval\" config section");
  const SpectrumResult r = interval_spectrum(cfg.interval->q, cfg.interval->length,
                                             cfg.lambda_max, cfg.tolerances);
  Table t;
  t.header = {"kind", "lambda_lo", "lambda_hi", "lo_edge", "hi_edge"};
  for (const Band& b : r.bands)
    t.rows.push_back({std::string("band"), b.lambda_lo, b.lambda_hi,
                      std::string(band_edge_kind_name(b.lo_kind)),
                      std::string(band_edge_kind_name(b.hi_kind))});
  for (double lam : r.point_spectrum)
    t.rows.push_back({std::string("point"), lam, lam, std::string("-"),
                      std::string("-")});
  for (double lam : r.touching)
    t.rows.push_back({std::string("touching"), lam, lam, std::string("-"),
                      std::string("-")});
  emit(t, args);
  return 0;
}

int run_surface(const CommonArgs& args) {
  const RunConfig cfg = load(args);
  if (!cfg.graph)
    throw ConfigError("the surface command needs a \"graph\" config section");
  const GraphSpec& g = *cfg.graph;
  const double lo = cfg.lambda_min ? *cfg.lambda_min : graph_floor(g);
  const BandSurface s =
      band_surface(g, cfg.grid_per_axis, {lo, cfg.lambda_max}, cfg.tolerances);

  Table t;
  for (int k = 1; k <= s.n; ++k) t.header.push_back("theta_" + std::to_string(k));
  t.header.insert(t.header.end(), {"root_count", "lambdas", "crossings"});
  for (std::size_t i = 0; i < s.thetas.size(); ++i) {
    std::vector<Cell> row;
    for (int k = 0; k < s.n; ++k) row.emplace_back(s.thetas[i][k]);
    row.emplace_back(static_cast<long long>(s.roots[i].size()));
    std::vector<double> lambdas;
    std::string crossings;
    for (std::size_t r = 0; r < s.roots[i].size(); ++r) {
      lambdas.push_back(s.roots[i][r].lambda);
      if (r) crossings += ';';
      crossings += s.roots[i][r].crossing ? '1' : '0';
    }
    row.emplace_back(std::move(lambdas));
    row.emplace_back(std::move(crossings));
    t.rows.push_back(std::move(row));
  }
  emit(t, args);
  return 0;
}

int run_tilings(const CommonArgs& args) {
  const RunConfig cfg = load(args);
  if (!cfg.tiling)
    throw ConfigError("the tilings command needs a \"tiling\" config section");
  const TilingJob& job = *cfg.tiling;

  std::array<double, 2> th = {0.0, 0.0};
  if (cfg.theta) {
    if (cfg.theta->size() != 2)
      throw ConfigError("tiling quasi-momentum has 2 components");
    th = {(*cfg.theta)[0], (*cfg.theta)[1]};
  }

  if (job.kind != TilingKind::TriangularGeneral) {
    const Potential& q = job.potentials.front();
    if (!q.declared_even() && !is_even(q, job.length, cfg.tolerances.even_tol))
      throw ConfigError("this tiling relation requires an even edge potential");
  }

  double qmin = 0.0;
  for (const Potential& q : job.potentials)
    qmin = std::min(qmin, q.min_on(job.length));
  const double lo = cfg.lambda_min ? *cfg.lambda_min : qmin - 1.0;

  const int spw = cfg.tolerances.steps_per_wavelength;
  auto f = [&](double lam) {
    std::vector<IntervalData> d;
    d.reserve(job.potentials.size());
    for (const Potential& q : job.potentials)
      d.push_back(solve_interval(q, job.length, lam, spw));
    return tiling_char(job.kind, d, th);
  };
  const auto roots = real_char_roots(f, {lo, cfg.lambda_max}, job.length,
                                     cfg.tolerances);

  Table t;
  t.header = {"root_index", "lambda", "crossing"};
  for (std::size_t i = 0; i < roots.size(); ++i)
    t.rows.push_back({static_cast<long long>(i), roots[i].lambda,
                      static_cast<long long>(roots[i].crossing ? 1 : 0)});
  emit(t, args);
  return 0;
}

int run_verify(const CommonArgs& args) {
  if (!args.config_path.empty()) load(args);  // validate if given
  const VerifyReport rep = run_verify_suite();
  Table t;
  t.header = {"check", "passed", "trials", "worst_deviation", "note"};
  for (const VerifyCheck& c : rep.checks)
    t.rows.push_back({c.name, std::string(c.passed ? "yes" : "no"),
                      c.trials, c.worst, c.note});
  emit(t, args);
  return rep.all_passed() ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Band structure of periodic Schrodinger operators on rectangular and "
      "n-cubic quantum graphs"};
  app.require_subcommand(1);

  CommonArgs args;
  auto* c_interval = app.add_subcommand(
      "interval",
      "Fundamental-solution table.  Columns: lambda, C, Cp, S, Sp");
  auto* c_dispersion = app.add_subcommand(
      "dispersion",
      "Fixed-theta lambda roots (columns: root_index, lambda, crossing) or a "
      "fixed-lambda sweep over the theta grid (columns: theta_1..theta_n, "
      "re_phi, im_phi, abs_phi)");
  auto* c_bands = app.add_subcommand(
      "bands",
      "Point + band spectrum of one periodic edge.  Columns: kind, lambda_lo, "
      "lambda_hi, lo_edge, hi_edge");
  auto* c_surface = app.add_subcommand(
      "surface",
      "Dispersion roots over the whole theta grid, row-major.  Columns: "
      "theta_1..theta_n, root_count, lambdas (';'-joined), crossings");
  auto* c_tilings = app.add_subcommand(
      "tilings",
      "Band-condition roots of a planar tiling lattice at fixed theta.  "
      "Columns: root_index, lambda, crossing");
  auto* c_verify = app.add_subcommand(
      "verify",
      "Run the oracle-equivalence suite.  Columns: check, passed, trials, "
      "worst_deviation, note.  Exit 3 when any check fails");

  add_common(c_interval, args, true);
  add_common(c_dispersion, args, true);
  add_common(c_bands, args, true);
  add_common(c_surface, args, true);
  add_common(c_tilings, args, true);
  add_common(c_verify, args, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;  // help/version -> 0, usage errors -> 1
  }

  try {
    if (c_interval->parsed()) return run_interval(args);
    if (c_dispersion->parsed()) return run_dispersion(args);
    if (c_bands->parsed()) return run_bands(args);
    if (c_surface->parsed()) return run_surface(args);
    if (c_tilings->parsed()) return run_tilings(args);
    if (c_verify->parsed()) return run_verify(args);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 2;
  }
  return 1;
}
