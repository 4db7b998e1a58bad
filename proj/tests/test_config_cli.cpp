#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>
#include <json.hpp>

#include "qgband/config.hpp"
#include "qgband/emit.hpp"

using namespace qgband;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(QGBAND_CLI_PATH) + " " + args;
  const int status = std::system(cmd.c_str());
#ifdef _WIN32
  return status;
#else
  return WEXITSTATUS(status);
#endif
}

std::string temp_path(const char* name) {
  return std::string(QGBAND_TEST_TMPDIR) + "/" + name;
}

}  // namespace

TEST_CASE("minimal interval config parses with defaults") {
  const RunConfig cfg = parse_config(R"({
    "interval": {"length": 1.5, "potential": {"kind": "zero"}}
  })");
  REQUIRE(cfg.interval.has_value());
  CHECK(cfg.interval->length == 1.5);
  CHECK(cfg.lambda_max == 100.0);
  CHECK(cfg.grid_per_axis == 9);
  CHECK(cfg.lambda_count == 101);
  CHECK(cfg.tolerances.steps_per_wavelength == kDefaultStepsPerWavelength);
  CHECK_FALSE(cfg.graph.has_value());
  CHECK_FALSE(cfg.tiling.has_value());
}

TEST_CASE("unknown keys are rejected with their JSON path") {
  auto message_of = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message_of(R"({"bogus": 1})") == "config error at $.bogus: unknown key");
  CHECK(message_of(R"({
          "interval": {"length": 1, "potential": {"kind": "zero"}, "wat": 2}
        })") == "config error at $.interval.wat: unknown key");
  CHECK(message_of(R"({
          "interval": {"length": 1, "potential": {"kind": "zero"}},
          "command-params": {"lambda-mx": 5}
        })") == "config error at $.command-params.lambda-mx: unknown key");
  CHECK(message_of(R"({
          "interval": {"length": 1, "potential": {"kind": "zero", "value": 2}}
        })") == "config error at $.interval.potential.value: unknown key");
}

TEST_CASE("config validation catches structural mistakes") {
  CHECK_THROWS_AS(parse_config("not json"), ConfigError);
  CHECK_THROWS_AS(parse_config("[1,2]"), ConfigError);
  // no subject section parses; each command enforces its own section
  CHECK_NOTHROW(parse_config("{}"));
  // two subjects at once
  CHECK_THROWS_AS(parse_config(R"({
      "interval": {"length": 1, "potential": {"kind": "zero"}},
      "tiling": {"kind": "triangular", "length": 1, "potential": {"kind": "zero"}}
    })"),
                  ConfigError);
  // rectangle with the wrong number of potentials
  CHECK_THROWS_AS(parse_config(R"({
      "graph": {"kind": "rectangle", "lengths": [1, 1],
                "potentials": [{"kind": "zero"}]}
    })"),
                  ConfigError);
  // bad tolerance value
  CHECK_THROWS_AS(parse_config(R"({
      "interval": {"length": 1, "potential": {"kind": "zero"}},
      "tolerances": {"rho-tol": -1}
    })"),
                  ConfigError);
  // lambda-min above lambda-max
  CHECK_THROWS_AS(parse_config(R"({
      "interval": {"length": 1, "potential": {"kind": "zero"}},
      "command-params": {"lambda-min": 10, "lambda-max": 5}
    })"),
                  ConfigError);
}

TEST_CASE("potential config entries cover all four kinds") {
  const RunConfig a = parse_config(R"({
    "interval": {"length": 1, "potential": {"kind": "constant", "value": -2.5}}
  })");
  CHECK(a.interval->q.kind() == Potential::Kind::Constant);
  CHECK(a.interval->q.constant_value() == -2.5);

  const RunConfig b = parse_config(R"({
    "interval": {"length": 1.43,
                 "potential": {"kind": "graphene", "depth": -1.0}}
  })");
  CHECK(b.interval->q.kind() == Potential::Kind::Graphene);
  CHECK(b.interval->q.graphene_depth() == -1.0);
  CHECK(b.interval->q.graphene_d() == 1.43);

  const RunConfig c = parse_config(R"({
    "interval": {"length": 1,
                 "potential": {"kind": "sampled", "x": [0, 0.5, 1],
                               "q": [0, 1, 0], "even": true}}
  })");
  CHECK(c.interval->q.kind() == Potential::Kind::Sampled);
  CHECK(c.interval->q.declared_even());
}

TEST_CASE("ncube graph section builds the folded edge list") {
  const RunConfig cfg = parse_config(R"({
    "graph": {"kind": "ncube", "n": 3, "lengths": [1.0, 1.1, 1.2],
              "potentials": [{"kind": "zero"}, {"kind": "zero"}, {"kind": "zero"},
                             {"kind": "zero"}, {"kind": "zero"}, {"kind": "zero"}]}
  })");
  REQUIRE(cfg.graph.has_value());
  CHECK(cfg.graph->n() == 3);
  CHECK(cfg.graph->edge_length(1) == 1.0);
  CHECK(cfg.graph->edge_length(4) == 1.2);  // folded back from axis 3
  CHECK(cfg.graph->edge_length(6) == 1.0);
}

TEST_CASE("number rendering is stable and locale-proof") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(1.5) == "1.5");
  CHECK(format_number(-3.25e-7) == "-3.25e-07");
  CHECK(format_number(9.869604401089358) == "9.86960440108936");
}

TEST_CASE("csv and json renderers agree on content") {
  Table t;
  t.header = {"name", "x", "list"};
  t.rows.push_back({std::string("row1"), 2.5, std::vector<double>{1.0, 2.0}});
  const std::string csv = render_csv(t);
  CHECK(csv == "name,x,list\nrow1,2.5,1;2\n");
  const auto parsed = nlohmann::json::parse(render_json(t));
  REQUIRE(parsed.is_array());
  REQUIRE(parsed.size() == 1);
  CHECK(parsed[0]["name"] == "row1");
  CHECK(parsed[0]["x"] == 2.5);
  CHECK(parsed[0]["list"] == nlohmann::json::array({1.0, 2.0}));
}

TEST_CASE("cli: help exits cleanly, usage errors do not") {
  CHECK(run_cli("--help > /dev/null 2>&1") == 0);
  CHECK(run_cli("frobnicate > /dev/null 2>&1") == 1);
  CHECK(run_cli("interval > /dev/null 2>&1") == 1);  // --config required
}

TEST_CASE("cli: config errors exit with status 1") {
  const std::string bad = temp_path("bad.json");
  std::ofstream(bad) << R"({"interval": {"length": -1, "potential": {"kind": "zero"}}})";
  CHECK(run_cli("interval --config " + bad + " > /dev/null 2>&1") == 1);
  CHECK(run_cli("interval --config /nonexistent.json > /dev/null 2>&1") == 1);
  const std::string empty = temp_path("empty.json");
  std::ofstream(empty) << "{}";
  // parses, but the command needs its subject section
  CHECK(run_cli("interval --config " + empty + " > /dev/null 2>&1") == 1);
}

TEST_CASE("cli: interval table emits the requested format") {
  const std::string cfgp = temp_path("iv.json");
  std::ofstream(cfgp) << R"({
    "interval": {"length": 1.0, "potential": {"kind": "zero"}},
    "command-params": {"lambda-samples": [0.0, 1.0]}
  })";
  const std::string out_csv = temp_path("iv.csv");
  CHECK(run_cli("interval --config " + cfgp + " --output " + out_csv) == 0);
  const std::string csv = slurp(out_csv);
  CHECK(csv.rfind("lambda,C,Cp,S,Sp\n", 0) == 0);
  CHECK(csv.find("\n0,1,0,1,1\n") != std::string::npos);  // free interval at 0

  const std::string out_json = temp_path("iv.json.out");
  CHECK(run_cli("interval --config " + cfgp + " --format json --output " + out_json) == 0);
  CHECK(slurp(out_json).find("\"lambda\": 0") != std::string::npos);
}

TEST_CASE("cli: surface runs are byte-identical") {
  const std::string cfgp = std::string(QGBAND_CONFIG_DIR) + "/surface_rect_graphene.json";
  const std::string o1 = temp_path("surf1.csv");
  const std::string o2 = temp_path("surf2.csv");
  REQUIRE(run_cli("surface --config " + cfgp + " --output " + o1) == 0);
  REQUIRE(run_cli("surface --config " + cfgp + " --output " + o2) == 0);
  const std::string b1 = slurp(o1);
  const std::string b2 = slurp(o2);
  REQUIRE(!b1.empty());
  CHECK(b1 == b2);
}
