#include "qgband/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace qgband {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError("config error at " + path + ": " + what);
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
}

void reject_unknown_keys(const json& j, const std::string& path,
                         const std::set<std::string>& allowed) {
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key()))
      fail(path + "." + item.key(), "unknown key");
  }
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

std::vector<double> as_number_list(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(as_number(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

Potential parse_potential(const json& j, const std::string& path) {
  require_object(j, path);
  if (!j.contains("kind")) fail(path, "potential needs a \"kind\"");
  if (!j["kind"].is_string()) fail(path + ".kind", "expected a string");
  const std::string kind = j["kind"].get<std::string>();

  try {
    if (kind == "zero") {
      reject_unknown_keys(j, path, {"kind"});
      return Potential::zero();
    }
    if (kind == "constant") {
      reject_unknown_keys(j, path, {"kind", "value"});
      if (!j.contains("value")) fail(path, "constant potential needs \"value\"");
      return Potential::constant(as_number(j["value"], path + ".value"));
    }
    if (kind == "graphene") {
      reject_unknown_keys(j, path, {"kind", "d", "depth", "scale"});
      double d = 1.43, depth = -0.85, scale = 1.34;
      if (j.contains("d")) d = as_number(j["d"], path + ".d");
      if (j.contains("depth")) depth = as_number(j["depth"], path + ".depth");
      if (j.contains("scale")) scale = as_number(j["scale"], path + ".scale");
      return Potential::graphene(d, depth, scale);
    }
    if (kind == "sampled") {
      reject_unknown_keys(j, path, {"kind", "x", "q", "even"});
      if (!j.contains("x") || !j.contains("q"))
        fail(path, "sampled potential needs \"x\" and \"q\" arrays");
      Parity parity = Parity::Unknown;
      if (j.contains("even")) {
        if (!j["even"].is_boolean()) fail(path + ".even", "expected a boolean");
        if (j["even"].get<bool>()) parity = Parity::DeclaredEven;
      }
      return Potential::sampled(as_number_list(j["x"], path + ".x"),
                                as_number_list(j["q"], path + ".q"), parity);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    fail(path, e.what());
  }
  fail(path + ".kind", "unknown potential kind \"" + kind +
                           "\" (expected zero|constant|graphene|sampled)");
}

GraphSpec parse_graph(const json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown_keys(j, path, {"kind", "n", "lengths", "potentials"});
  if (!j.contains("kind")) fail(path, "graph needs a \"kind\"");
  if (!j["kind"].is_string()) fail(path + ".kind", "expected a string");
  const std::string kind = j["kind"].get<std::string>();

  int n = 2;
  if (kind == "rectangle") {
    if (j.contains("n") && as_int(j["n"], path + ".n") != 2)
      fail(path + ".n", "a rectangle has n = 2");
  } else if (kind == "ncube") {
    if (!j.contains("n")) fail(path, "ncube graph needs \"n\"");
    n = as_int(j["n"], path + ".n");
  } else {
    fail(path + ".kind", "unknown graph kind \"" + kind +
                             "\" (expected rectangle|ncube)");
  }

  if (!j.contains("lengths")) fail(path, "graph needs \"lengths\"");
  const std::vector<double> lengths = as_number_list(j["lengths"], path + ".lengths");

  if (!j.contains("potentials")) fail(path, "graph needs \"potentials\"");
  if (!j["potentials"].is_array()) fail(path + ".potentials", "expected an array");
  std::vector<Potential> pots;
  for (std::size_t i = 0; i < j["potentials"].size(); ++i)
    pots.push_back(parse_potential(j["potentials"][i],
                                   path + ".potentials[" + std::to_string(i) + "]"));

  try {
    if (kind == "rectangle") {
      if (lengths.size() != 2) fail(path + ".lengths", "a rectangle has 2 lengths");
      return GraphSpec::rectangle({lengths[0], lengths[1]}, std::move(pots));
    }
    return GraphSpec::ncube(n, lengths, std::move(pots));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    fail(path, e.what());
  }
}

TilingJob parse_tiling(const json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown_keys(j, path, {"kind", "length", "potential", "potentials"});
  if (!j.contains("kind")) fail(path, "tiling needs a \"kind\"");
  if (!j["kind"].is_string()) fail(path + ".kind", "expected a string");

  TilingJob job;
  try {
    job.kind = tiling_kind_from_name(j["kind"].get<std::string>());
  } catch (const std::exception& e) {
    fail(path + ".kind", e.what());
  }
  if (!j.contains("length")) fail(path, "tiling needs \"length\"");
  job.length = as_number(j["length"], path + ".length");
  if (!(job.length > 0.0)) fail(path + ".length", "edge length must be positive");

  const int want = tiling_data_count(job.kind);
  if (j.contains("potential") && j.contains("potentials"))
    fail(path, "give either \"potential\" or \"potentials\", not both");
  if (j.contains("potential")) {
    job.potentials.assign(static_cast<std::size_t>(want),
                          parse_potential(j["potential"], path + ".potential"));
  } else if (j.contains("potentials")) {
    if (!j["potentials"].is_array()) fail(path + ".potentials", "expected an array");
    for (std::size_t i = 0; i < j["potentials"].size(); ++i)
      job.potentials.push_back(parse_potential(
          j["potentials"][i], path + ".potentials[" + std::to_string(i) + "]"));
  } else {
    fail(path, "tiling needs \"potential\" (or \"potentials\")");
  }
  if (static_cast<int>(job.potentials.size()) != want)
    fail(path + ".potentials", "expected " + std::to_string(want) +
                                   " potentials for this tiling kind, got " +
                                   std::to_string(job.potentials.size()));
  return job;
}

IntervalJob parse_interval(const json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown_keys(j, path, {"length", "potential"});
  if (!j.contains("length")) fail(path, "interval needs \"length\"");
  if (!j.contains("potential")) fail(path, "interval needs \"potential\"");
  IntervalJob job;
  job.length = as_number(j["length"], path + ".length");
  if (!(job.length > 0.0)) fail(path + ".length", "interval length must be positive");
  job.q = parse_potential(j["potential"], path + ".potential");
  return job;
}

void parse_command_params(const json& j, const std::string& path, RunConfig& cfg) {
  require_object(j, path);
  reject_unknown_keys(j, path,
                      {"lambda-min", "lambda-max", "grid-per-axis", "theta",
                       "lambda", "lambda-samples", "lambda-count"});
  if (j.contains("lambda-min"))
    cfg.lambda_min = as_number(j["lambda-min"], path + ".lambda-min");
  if (j.contains("lambda-max"))
    cfg.lambda_max = as_number(j["lambda-max"], path + ".lambda-max");
  if (j.contains("grid-per-axis")) {
    cfg.grid_per_axis = as_int(j["grid-per-axis"], path + ".grid-per-axis");
    if (cfg.grid_per_axis < 2) fail(path + ".grid-per-axis", "must be at least 2");
  }
  if (j.contains("theta"))
    cfg.theta = as_number_list(j["theta"], path + ".theta");
  if (j.contains("lambda"))
    cfg.lambda_fixed = as_number(j["lambda"], path + ".lambda");
  if (j.contains("lambda-samples"))
    cfg.lambda_samples = as_number_list(j["lambda-samples"], path + ".lambda-samples");
  if (j.contains("lambda-count")) {
    cfg.lambda_count = as_int(j["lambda-count"], path + ".lambda-count");
    if (cfg.lambda_count < 1) fail(path + ".lambda-count", "must be at least 1");
  }
  if (cfg.lambda_min && !(*cfg.lambda_min < cfg.lambda_max))
    fail(path, "lambda-min must be below lambda-max");
}

void parse_tolerances(const json& j, const std::string& path, SolveOptions& o) {
  require_object(j, path);
  reject_unknown_keys(j, path,
                      {"steps-per-wavelength", "scan-refine", "rho-tol",
                       "max-refine-iter", "accept-rel", "touch-tol",
                       "gap-min-width", "even-tol", "root-verify-scale"});
  if (j.contains("steps-per-wavelength")) {
    o.steps_per_wavelength = as_int(j["steps-per-wavelength"], path + ".steps-per-wavelength");
    if (o.steps_per_wavelength < 4) fail(path + ".steps-per-wavelength", "must be at least 4");
  }
  if (j.contains("scan-refine")) {
    o.scan_refine = as_int(j["scan-refine"], path + ".scan-refine");
    if (o.scan_refine < 1) fail(path + ".scan-refine", "must be at least 1");
  }
  auto positive = [&](const char* key, double& slot) {
    if (!j.contains(key)) return;
    const double v = as_number(j[key], path + "." + key);
    if (!(v > 0.0)) fail(path + "." + key, "must be positive");
    slot = v;
  };
  positive("rho-tol", o.rho_tol);
  positive("accept-rel", o.accept_rel);
  positive("touch-tol", o.touch_tol);
  positive("gap-min-width", o.gap_min_width);
  positive("even-tol", o.even_tol);
  positive("root-verify-scale", o.root_verify_scale);
  if (j.contains("max-refine-iter")) {
    o.max_refine_iter = as_int(j["max-refine-iter"], path + ".max-refine-iter");
    if (o.max_refine_iter < 1) fail(path + ".max-refine-iter", "must be at least 1");
  }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config syntax error: ") + e.what());
  }
  require_object(j, "$");
  reject_unknown_keys(j, "$", {"graph", "tiling", "interval", "command-params",
                               "tolerances"});

  RunConfig cfg;
  int subjects = 0;
  if (j.contains("graph")) {
    cfg.graph = parse_graph(j["graph"], "$.graph");
    ++subjects;
  }
  if (j.contains("tiling")) {
    cfg.tiling = parse_tiling(j["tiling"], "$.tiling");
    ++subjects;
  }
  if (j.contains("interval")) {
    cfg.interval = parse_interval(j["interval"], "$.interval");
    ++subjects;
  }
  if (subjects > 1)
    fail("$", "give at most one of \"graph\", \"tiling\", \"interval\"");

  if (j.contains("command-params"))
    parse_command_params(j["command-params"], "$.command-params", cfg);
  if (j.contains("tolerances"))
    parse_tolerances(j["tolerances"], "$.tolerances", cfg.tolerances);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace qgband
