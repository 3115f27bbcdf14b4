#pragma once

#include <array>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "shieldflow/grid.hpp"
#include "shieldflow/pressure_law.hpp"
#include "shieldflow/shielded_eos.hpp"
#include "shieldflow/solver.hpp"

namespace shieldflow {

struct LawSpec {
  std::string family = "polytropic";  // "polytropic" | "crossover"
  double kappa = 1.0;
  double gamma = 2.0;
  double beta = 0.0;  // crossover only
};

// Initial profiles give (rho0, u0); the initializer maps them to effective
// variables with rho_hat0 = max(rho0, delta) (floor rule) or rho0 + delta
// (additive lift), m_hat0 = rho_hat0 * u0.
struct RiemannInit {
  double rho_l = 1.0, u_l = 0.0;
  double rho_r = 1.0, u_r = 0.0;
  double x_jump = 0.0;
};
struct SineInit {
  double base = 1.0, amp = 0.0, periods = 1.0, u0 = 0.0;
};
struct GaussianInit {
  double floor = 0.0, amp = 1.0, center = 0.0, width = 0.1, u0 = 0.0;
};
using InitSpec = std::variant<RiemannInit, SineInit, GaussianInit>;

enum class InitRule { floor_rule, additive_lift };

struct ScenarioSpec {
  std::string name = "custom";
  LawSpec law;
  double delta = 0.0;
  double x_min = -1.0, x_max = 1.0;
  int n = 256;
  double t_final = 0.1;
  InitSpec init = RiemannInit{};
  InitRule init_rule = InitRule::floor_rule;
  SchemeConfig scheme;  // includes epsilon
  double snapshot_interval = 0.0;
  std::string output_dir;

  void validate() const;  // throws ConfigError on bad values
};

struct ConfigError : std::runtime_error {
  enum class Code { missing_file, bad_json, unknown_key, bad_value };
  ConfigError(Code code_, const std::string& msg)
      : std::runtime_error(msg), code(code_) {}
  Code code;
};

// Law construction revalidates (A1)-(A3); failures surface as
// ConfigError(bad_value).
std::shared_ptr<const PressureLaw> make_law(const LawSpec& spec);
ShieldedEos make_eos(const ScenarioSpec& spec);

std::array<double, 2> sample_initial(const InitSpec& init, double x);
GridState initial_state(const ScenarioSpec& spec);

std::vector<std::string> scenario_names();
ScenarioSpec scenario_preset(const std::string& name);

// Strict JSON: unknown keys are rejected, types are checked, and the result
// passes validate(). origin names the source in error messages.
ScenarioSpec parse_scenario_json(const std::string& text,
                                 const std::string& origin = "<inline>");
ScenarioSpec load_scenario_file(const std::string& path);

// Canonical serialization (sorted keys, shortest round-trip numbers); the
// manifest hash is computed over this string.
std::string scenario_to_json(const ScenarioSpec& spec);

}  // namespace shieldflow
