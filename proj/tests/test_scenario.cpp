#include <string>
#include <variant>

#include "doctest.h"
#include "shieldflow/scenario.hpp"
#include "shieldflow/solver.hpp"

using namespace shieldflow;

namespace {

ConfigError::Code code_of(const std::string& text) {
  try {
    parse_scenario_json(text);
  } catch (const ConfigError& e) {
    return e.code;
  }
  FAIL("expected a config error");
  return ConfigError::Code::bad_value;
}

const char* kGoodConfig = R"({
  "name": "demo",
  "law": {"family": "polytropic", "kappa": 1.0, "gamma": 2.0},
  "delta": 0.05,
  "epsilon": 0.002,
  "domain": {"x_min": 0.0, "x_max": 1.0, "n": 64},
  "t_final": 0.1,
  "init": {"kind": "sine", "base": 1.0, "amp": 0.2, "periods": 1.0, "u0": 0.0},
  "init_rule": "floor",
  "scheme": {"flux": "rusanov", "bc": "periodic", "cfl": 0.4},
  "output": {"snapshot_interval": 0.02, "directory": "demo_out"}
})";

}  // namespace

TEST_CASE("a full config parses into the expected spec") {
  const ScenarioSpec spec = parse_scenario_json(kGoodConfig);
  CHECK(spec.name == "demo");
  CHECK(spec.law.family == "polytropic");
  CHECK(spec.law.gamma == 2.0);
  CHECK(spec.delta == 0.05);
  CHECK(spec.scheme.epsilon == 0.002);
  CHECK(spec.n == 64);
  CHECK(spec.t_final == 0.1);
  CHECK(spec.init_rule == InitRule::floor_rule);
  CHECK(spec.scheme.bc == BoundaryKind::periodic);
  CHECK(spec.scheme.flux == FluxKind::rusanov);
  CHECK(spec.snapshot_interval == 0.02);
  CHECK(spec.output_dir == "demo_out");
  REQUIRE(std::holds_alternative<SineInit>(spec.init));
  CHECK(std::get<SineInit>(spec.init).amp == 0.2);
}

TEST_CASE("unknown keys are rejected, including near-miss spellings") {
  CHECK(code_of(R"({"name": "x", "viscocity": 1.0})") ==
        ConfigError::Code::unknown_key);
  CHECK(code_of(R"({"domain": {"x_min": 0, "x_max": 1, "cells": 32}})") ==
        ConfigError::Code::unknown_key);
  CHECK(code_of(R"({"scheme": {"cfl": 0.5, "epsilon": 0.1}})") ==
        ConfigError::Code::unknown_key);  // epsilon lives at top level
  try {
    parse_scenario_json(R"({"name": "x", "viscocity": 1.0})");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("viscocity") != std::string::npos);
  }
}

TEST_CASE("malformed json and bad values carry distinct codes") {
  CHECK(code_of("{ not json") == ConfigError::Code::bad_json);
  CHECK(code_of(R"({"t_final": -1.0})") == ConfigError::Code::bad_value);
  CHECK(code_of(R"({"domain": {"x_min": 0, "x_max": 1, "n": 8}})") ==
        ConfigError::Code::bad_value);  // n >= 16
  CHECK(code_of(R"({"scheme": {"cfl": 1.0}})") == ConfigError::Code::bad_value);
  CHECK(code_of(R"({"law": {"family": "tabulated"}})") ==
        ConfigError::Code::bad_value);
  CHECK(code_of(R"({"init": {"kind": "square"}})") ==
        ConfigError::Code::bad_value);
  // structural law assumptions surface with the assumption tag in the text
  try {
    parse_scenario_json(R"({"law": {"family": "polytropic", "gamma": 0.9}})");
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(e.code == ConfigError::Code::bad_value);
    CHECK(std::string(e.what()).find("(A3)") != std::string::npos);
  }
}

TEST_CASE("init blocks validate their own fields") {
  CHECK(code_of(R"({"init": {"kind": "sine", "base": 0.5, "amp": 0.6}})") ==
        ConfigError::Code::bad_value);  // base - |amp| < 0
  CHECK(code_of(R"({"init": {"kind": "gaussian", "width": 0.0}})") ==
        ConfigError::Code::bad_value);
  CHECK(code_of(R"({"init": {"kind": "riemann", "rho_l": -1.0}})") ==
        ConfigError::Code::bad_value);
  // negative initial density is a config error under either lift rule
  ScenarioSpec spec = parse_scenario_json(kGoodConfig);
  spec.init = GaussianInit{-0.5, 0.1, 0.5, 0.1, 0.0};
  CHECK_THROWS_AS(initial_state(spec), ConfigError);
}

TEST_CASE("missing files are distinguished from unreadable content") {
  try {
    load_scenario_file("/nonexistent/path/scenario.json");
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(e.code == ConfigError::Code::missing_file);
  }
}

TEST_CASE("serialization round-trips through the parser") {
  for (const std::string& name : scenario_names()) {
    const ScenarioSpec spec = scenario_preset(name);
    const std::string text = scenario_to_json(spec);
    const ScenarioSpec back = parse_scenario_json(text);
    CHECK(scenario_to_json(back) == text);  // canonical form is a fixed point
  }
  const ScenarioSpec spec = parse_scenario_json(kGoodConfig);
  const ScenarioSpec back = parse_scenario_json(scenario_to_json(spec));
  CHECK(back.name == spec.name);
  CHECK(back.delta == spec.delta);
  CHECK(back.scheme.epsilon == spec.scheme.epsilon);
  CHECK(back.n == spec.n);
}

TEST_CASE("every preset constructs, validates, and starts admissibly") {
  const std::vector<std::string> names = scenario_names();
  CHECK(names.size() == 4);
  for (const std::string& name : names) {
    const ScenarioSpec spec = scenario_preset(name);
    CHECK(spec.name == name);
    CHECK_NOTHROW(spec.validate());
    const ShieldedEos eos = make_eos(spec);
    CHECK(eos.delta() == spec.delta);
    const GridState g = initial_state(spec);
    CHECK(g.n() == spec.n);
    for (double r : g.rho_hat) CHECK(r >= spec.scheme.positivity_floor);
  }
  CHECK_THROWS_AS(scenario_preset("warp_drive"), ConfigError);
}

TEST_CASE("initial sampling uses cell midpoints") {
  ScenarioSpec spec = parse_scenario_json(kGoodConfig);
  spec.n = 16;
  const GridState g = initial_state(spec);
  CHECK(g.x0 == 0.0);
  CHECK(g.dx == doctest::Approx(1.0 / 16).epsilon(1e-15));
  const auto expected = sample_initial(spec.init, g.x_center(3));
  // floor rule with rho0 >> delta passes the sample through untouched
  CHECK(g.rho_hat[3] == expected[0]);
  CHECK(g.m_hat[3] == expected[0] * 0.0);
}

TEST_CASE("defaulted fields take documented values") {
  const ScenarioSpec spec = parse_scenario_json(R"({"name": "min"})");
  CHECK(spec.law.family == "polytropic");
  CHECK(spec.law.kappa == 1.0);
  CHECK(spec.law.gamma == 2.0);
  CHECK(spec.delta == 0.0);
  CHECK(spec.scheme.epsilon == 0.0);
  CHECK(spec.scheme.cfl == 0.4);
  CHECK(spec.scheme.on_violation == ViolationPolicy::abort_run);
  CHECK(spec.scheme.viscous_vars == ViscousVars::effective);
  CHECK(spec.init_rule == InitRule::floor_rule);
  CHECK(spec.snapshot_interval == 0.0);
}
