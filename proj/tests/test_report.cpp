#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include "qfi/report.hpp"

using namespace qfi;
using namespace qfi::report;

TEST_CASE("format_double round trips at 17 significant digits") {
  for (double v : {1.0, -0.1, 3.141592653589793, 1e-300, 123456.789, 0.0}) {
    const std::string s = format_double(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
    CHECK(s.find(',') == std::string::npos);
  }
}

TEST_CASE("fnv1a64 reference values") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(hash_tag("").rfind("fnv1a64:", 0) == 0);
}

TEST_CASE("config parsing") {
  const auto ok = parse_config_text("{\"amp\": 2.0, \"omega\": 0.05}", "test");
  CHECK(ok.raw["amp"] == 2.0);
  CHECK(ok.hash == parse_config_text("{\"omega\": 0.05, \"amp\": 2.0}", "x").hash);

  try {
    parse_config_text("{\n \"a\": }", "bad.json");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("line 2") != std::string::npos);
    CHECK(msg.find("bad.json") != std::string::npos);
  }

  CHECK_THROWS_AS(parse_config_text("[1,2]", "arr"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/q.json"), ConfigError);
}

TEST_CASE("experiment_from_config") {
  const auto cfg = parse_config_text(
      R"({"amp": 1.5, "deltas_rel": [0.1], "time_grid": {"min": 1, "max": 10, "points": 7, "log": false}, "threads": 3})",
      "t");
  const ExperimentConfig e = experiment_from_config(cfg.raw, "fig1a");
  CHECK(e.amp == 1.5);
  CHECK(e.deltas_rel == std::vector<double>{0.1});
  CHECK(e.time_grid.points == 7);
  CHECK(e.threads == 3);
  CHECK(e.scenario == "fig1a");

  const auto bad = parse_config_text(R"({"amp": "big"})", "t");
  CHECK_THROWS_AS(experiment_from_config(bad.raw, "fig1a"), ConfigError);
}

TEST_CASE("csv rendering") {
  CurveDataset ds;
  ds.panel = "p";
  ds.x_column = "t";
  ds.y_column = "fi";
  ds.rows = {{1.0, "a", 2.0}, {2.0, "a", 0.125}};
  const std::string csv = csv_from_dataset(ds);
  CHECK(csv == "t,series,fi\n1,a,2\n2,a,0.125\n");
}

TEST_CASE("manifest and claims serialization") {
  RunManifest m;
  m.scenario = "fig1a";
  m.config_hash = "fnv1a64:0";
  m.parameters = {{"amp", 1.0}};
  m.outputs.push_back({"fig1a.csv", {"t", "series", "fi"}, 10});
  const auto j = manifest_json(m);
  CHECK(j["scenario"] == "fig1a");
  CHECK(j["outputs"][0]["rows"] == 10);
  CHECK(j["version"] == std::string(kToolVersion));

  std::vector<ClaimCheck> claims(2);
  claims[0].id = "x";
  claims[0].pass = true;
  claims[1].id = "y";
  claims[1].pass = false;
  const auto cj = claims_json(claims);
  CHECK(cj["all_pass"] == false);
  CHECK(cj["claims"].size() == 2);
}
