#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "nullcone/config.hpp"
#include "nullcone/csvio.hpp"
#include "nullcone/pipeline.hpp"

using namespace nullcone;

namespace {

const char* kMinimal = R"({
  "scenario": "wave1d",
  "grid": {"min": -20.0, "max": 20.0, "cells": 256},
  "t_final": 4.0,
  "data": {"kind": "gaussian", "center": 0.0, "width": 1.0, "amplitude": 1.0}
})";

std::string with_field(const std::string& base, const std::string& insert) {
  std::string s = base;
  s.insert(s.rfind('}'), insert);
  return s;
}

}  // namespace

TEST_CASE("defaults and minimal documents") {
  const RunConfig cfg = parse_config(kMinimal);
  CHECK(cfg.cfl == doctest::Approx(0.9));
  CHECK(cfg.probes_auto);
  CHECK(cfg.state_stride == 0);
  CHECK(cfg.lambdas.empty());
  CHECK(cfg.mass == 0.0);
  CHECK(cfg.grid.n_cells == 256);

  // Auto probes: three in the outer fifth, plus three inner for the
  // two-channel scenarios.
  const auto probes = cfg.resolve_probes();
  REQUIRE(probes.size() == 6);
  CHECK(probes[0] == doctest::Approx(12.0));
  CHECK(probes[1] == doctest::Approx(14.0));
  CHECK(probes[2] == doctest::Approx(16.0));
  CHECK(probes[3] == doctest::Approx(-12.0));

  const RunConfig euc = parse_config(R"({
    "scenario": "euclidean3d",
    "grid": {"min": 0.0, "max": 30.0, "cells": 256},
    "t_final": 4.0
  })");
  CHECK(euc.resolve_probes().size() == 3);
  CHECK(euc.data.kind == "zero");
}

TEST_CASE("unknown keys are rejected by name") {
  try {
    parse_config(with_field(kMinimal, R"(, "cflx": 0.5)"));
    FAIL("expected a schema error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("cflx") != std::string::npos);
  }
  try {
    parse_config(R"({
      "scenario": "wave1d",
      "grid": {"min": -20.0, "max": 20.0, "cells": 256, "spacing": 0.1},
      "t_final": 4.0
    })");
    FAIL("expected a schema error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("spacing") != std::string::npos);
  }
}

TEST_CASE("parse and semantic errors") {
  CHECK_THROWS(parse_config("not json"));
  CHECK_THROWS(parse_config("[1,2,3]"));
  // Missing required keys.
  CHECK_THROWS(parse_config(R"({"scenario": "wave1d"})"));

  // Scenario-specific mass rules.
  CHECK_THROWS(parse_config(R"({
    "scenario": "schwarzschild", "mass": 0.0,
    "grid": {"min": -40.0, "max": 60.0, "cells": 256},
    "t_final": 4.0
  })"));
  CHECK_THROWS(parse_config(with_field(kMinimal, R"(, "mass": 1.0)")));

  // Grid shape rules.
  CHECK_THROWS(parse_config(R"({
    "scenario": "euclidean3d",
    "grid": {"min": 1.0, "max": 30.0, "cells": 256},
    "t_final": 4.0
  })"));
  CHECK_THROWS(parse_config(R"({
    "scenario": "schwarzschild", "mass": 1.0,
    "grid": {"min": 10.0, "max": 60.0, "cells": 256},
    "t_final": 4.0
  })"));

  // Value sanity.
  CHECK_THROWS(parse_config(with_field(kMinimal, R"(, "cfl": 1.5)")));
  CHECK_THROWS(parse_config(with_field(kMinimal, R"(, "cfl": 0.0)")));
  CHECK_THROWS(parse_config(with_field(kMinimal, R"(, "sample_times": [2.0, 1.0])")));
  CHECK_THROWS(parse_config(with_field(kMinimal, R"(, "state_stride": -1)")));
  CHECK_THROWS(parse_config(with_field(kMinimal, R"(, "probes": [19.9])")));

  // Data that cannot sit on the grid.
  CHECK_THROWS(parse_config(R"({
    "scenario": "wave1d",
    "grid": {"min": -5.0, "max": 5.0, "cells": 64},
    "t_final": 1.0,
    "data": {"kind": "gaussian", "center": 0.0, "width": 2.0, "amplitude": 1.0}
  })"));
  CHECK_THROWS(parse_config(with_field(kMinimal,
      R"(, "data2": {"kind": "zero"})")));
}

TEST_CASE("config file loading") {
  const std::string path = "/tmp/nullcone_test_config.json";
  {
    std::ofstream out(path);
    out << kMinimal;
  }
  const RunConfig cfg = load_config(path);
  CHECK(cfg.scenario == "wave1d");
  std::remove(path.c_str());
  CHECK_THROWS(load_config("/tmp/nullcone_does_not_exist.json"));
}

TEST_CASE("shortest round-trip formatting") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-2.5e-7) == "-2.5e-07");
  for (double v : {1.0 / 3.0, M_PI, 0.3, 1e300, -7.00000001}) {
    const std::string s = format_double(v);
    CHECK(std::stod(s) == v);
  }
}

TEST_CASE("identical configs produce byte-identical outputs") {
  const RunConfig cfg = parse_config(R"({
    "scenario": "wave1d",
    "grid": {"min": -30.0, "max": 30.0, "cells": 1024},
    "cfl": 1.0,
    "t_final": 20.0,
    "data": {"kind": "gaussian", "center": 0.0, "width": 1.0, "amplitude": 1.0},
    "probes": [8.0, 10.0, 12.0, -8.0, -10.0, -12.0],
    "lambdas": [-1.0, 0.0, 1.0],
    "sample_times": [5.0, 10.0, 20.0]
  })");
  const RunArtifacts a = run_scenario(cfg);
  const RunArtifacts b = run_scenario(cfg);
  CHECK(energies_csv(a) == energies_csv(b));
  CHECK(radiation_csv(a) == radiation_csv(b));
  CHECK(cones_csv(a) == cones_csv(b));
  CHECK(report_json(a) == report_json(b));
}

TEST_CASE("pass and fail surfaces") {
  SUBCASE("zero data passes with all-zero outputs") {
    const RunConfig cfg = parse_config(R"({
      "scenario": "wave1d",
      "grid": {"min": -30.0, "max": 30.0, "cells": 512},
      "cfl": 1.0,
      "t_final": 20.0,
      "data": {"kind": "zero"},
      "probes": [8.0, 10.0, 12.0, -8.0, -10.0, -12.0]
    })");
    const RunArtifacts art = run_scenario(cfg);
    CHECK(art.all_pass());
    CHECK(art.ledger.initial_energy() == 0.0);
    CHECK(art.agg.total() == 0.0);
  }

  SUBCASE("an under-resolved run fails its checks") {
    // At unit Courant number even a coarse run satisfies an exact discrete
    // unitarity; off unit Courant the dispersion error surfaces.
    const RunConfig cfg = parse_config(R"({
      "scenario": "wave1d",
      "grid": {"min": -30.0, "max": 30.0, "cells": 64},
      "cfl": 0.9,
      "t_final": 24.0,
      "data": {"kind": "gaussian", "center": 0.0, "width": 1.0, "amplitude": 1.0},
      "probes": [8.0, 10.0, 12.0, -8.0, -10.0, -12.0]
    })");
    const RunArtifacts art = run_scenario(cfg);
    CHECK(!art.all_pass());
    bool unitarity_failed = false;
    for (const auto& f : art.flags)
      if (f.name == "unitarity_defect" && !f.pass) unitarity_failed = true;
    CHECK(unitarity_failed);
  }

  SUBCASE("a healthy reference run passes") {
    const RunConfig cfg = parse_config(R"({
      "scenario": "wave1d",
      "grid": {"min": -30.0, "max": 30.0, "cells": 4096},
      "cfl": 1.0,
      "t_final": 24.0,
      "data": {"kind": "gaussian", "center": 0.0, "width": 1.0, "amplitude": 1.0},
      "probes": [8.0, 10.0, 12.0, -8.0, -10.0, -12.0],
      "lambdas": [-1.0, 0.0, 1.0],
      "sample_times": [5.0, 10.0, 20.0]
    })");
    const RunArtifacts art = run_scenario(cfg);
    for (const auto& f : art.flags) {
      INFO(f.name, " = ", f.value, " tol ", f.tolerance);
      CHECK(f.pass);
    }
    CHECK(art.all_pass());
  }
}
