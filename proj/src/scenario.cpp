#include "shieldflow/scenario.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

namespace shieldflow {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

[[noreturn]] void bad_value(const std::string& msg) {
  throw ConfigError(ConfigError::Code::bad_value, msg);
}

}  // namespace

void ScenarioSpec::validate() const {
  if (n < 16) bad_value("n must be at least 16 (got " + std::to_string(n) + ")");
  if (!(x_max > x_min)) bad_value("domain needs x_max > x_min");
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) {
    bad_value("t_final must be finite and >= 0");
  }
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    bad_value("delta must be finite and >= 0");
  }
  if (!(scheme.epsilon >= 0.0) || !std::isfinite(scheme.epsilon)) {
    bad_value("epsilon must be finite and >= 0");
  }
  if (!(scheme.cfl > 0.0) || !(scheme.cfl < 1.0)) {
    bad_value("cfl must lie in (0, 1)");
  }
  if (!(scheme.positivity_floor > 0.0)) {
    bad_value("positivity_floor must be positive");
  }
  if (!(snapshot_interval >= 0.0)) {
    bad_value("snapshot_interval must be >= 0");
  }
  if (const auto* g = std::get_if<GaussianInit>(&init)) {
    if (!(g->width > 0.0)) bad_value("gaussian init needs width > 0");
    if (!(g->floor >= 0.0) || !(g->amp >= 0.0)) {
      bad_value("gaussian init needs floor >= 0 and amp >= 0");
    }
  }
  if (const auto* s = std::get_if<SineInit>(&init)) {
    if (!(s->periods > 0.0)) bad_value("sine init needs periods > 0");
    if (!(s->base - std::abs(s->amp) >= 0.0)) {
      bad_value("sine init dips below zero density");
    }
  }
  if (const auto* r = std::get_if<RiemannInit>(&init)) {
    if (!(r->rho_l >= 0.0) || !(r->rho_r >= 0.0)) {
      bad_value("riemann init needs nonnegative densities");
    }
  }
}

std::shared_ptr<const PressureLaw> make_law(const LawSpec& spec) {
  try {
    if (spec.family == "polytropic") {
      return make_polytropic(spec.kappa, spec.gamma);
    }
    if (spec.family == "crossover") {
      return make_crossover(spec.kappa, spec.gamma, spec.beta);
    }
  } catch (const std::exception& e) {
    bad_value(std::string("pressure law rejected: ") + e.what());
  }
  bad_value("unknown law family \"" + spec.family +
            "\" (expected \"polytropic\" or \"crossover\")");
}

ShieldedEos make_eos(const ScenarioSpec& spec) {
  return ShieldedEos(make_law(spec.law), spec.delta);
}

std::array<double, 2> sample_initial(const InitSpec& init, double x) {
  return std::visit(
      [&](const auto& p) -> std::array<double, 2> {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, RiemannInit>) {
          return x < p.x_jump ? std::array{p.rho_l, p.u_l}
                              : std::array{p.rho_r, p.u_r};
        } else if constexpr (std::is_same_v<T, SineInit>) {
          return {p.base + p.amp * std::sin(kTwoPi * p.periods * x), p.u0};
        } else {
          const double r = (x - p.center) / p.width;
          return {p.floor + p.amp * std::exp(-r * r), p.u0};
        }
      },
      init);
}

GridState initial_state(const ScenarioSpec& spec) {
  spec.validate();
  GridState g;
  g.x0 = spec.x_min;
  g.dx = (spec.x_max - spec.x_min) / spec.n;
  g.t = 0.0;
  g.rho_hat.resize(spec.n);
  g.m_hat.resize(spec.n);
  for (int i = 0; i < spec.n; ++i) {
    const double x = g.x_center(i);
    const auto [rho0, u0] = sample_initial(spec.init, x);
    if (!(rho0 >= 0.0) || !std::isfinite(rho0) || !std::isfinite(u0)) {
      bad_value("initial density negative or nonfinite at x = " +
                std::to_string(x));
    }
    const double rh = spec.init_rule == InitRule::floor_rule
                          ? std::max(rho0, spec.delta)
                          : rho0 + spec.delta;
    g.rho_hat[i] = rh;
    g.m_hat[i] = rh * u0;
  }
  return g;
}

// For sine initial data, x is measured inside [x_min, x_max]; the preset
// puts the domain at [0, 1] so one period wraps cleanly.
std::vector<std::string> scenario_names() {
  return {"vacuum_riemann", "shock_tube", "smooth_periodic",
          "near_vacuum_pulse"};
}

ScenarioSpec scenario_preset(const std::string& name) {
  ScenarioSpec s;
  s.name = name;
  if (name == "vacuum_riemann") {
    // Opposed streams strong enough to open vacuum in the unshielded gas:
    // with kappa = 1/3, gamma = 3 the invariant coordinate is H0(rho) = rho,
    // so the vacuum margin u_r - u_l - 2 H0(1) = 2 > 0.
    s.law = {"polytropic", 1.0 / 3.0, 3.0, 0.0};
    s.delta = 0.01;
    s.x_min = -1.0;
    s.x_max = 1.0;
    s.n = 1024;
    s.t_final = 0.2;
    s.init = RiemannInit{1.0, -2.0, 1.0, 2.0, 0.0};
    s.scheme.epsilon = 1e-3;
    s.scheme.bc = BoundaryKind::outflow;
    s.snapshot_interval = 0.02;
  } else if (name == "shock_tube") {
    s.law = {"polytropic", 1.0, 2.0, 0.0};
    s.delta = 0.01;
    s.x_min = -0.5;
    s.x_max = 0.5;
    s.n = 512;
    s.t_final = 0.15;
    s.init = RiemannInit{1.0, 0.0, 0.125, 0.0, 0.0};
    s.scheme.epsilon = 0.01;
    s.scheme.bc = BoundaryKind::outflow;
    s.snapshot_interval = 0.005;
  } else if (name == "smooth_periodic") {
    s.law = {"polytropic", 1.0, 2.0, 0.0};
    s.delta = 0.05;
    s.x_min = 0.0;
    s.x_max = 1.0;
    s.n = 256;
    s.t_final = 0.1;
    s.init = SineInit{1.0, 0.2, 1.0, 0.0};
    s.scheme.epsilon = 0.002;
    s.scheme.bc = BoundaryKind::periodic;
    s.snapshot_interval = 0.02;
  } else if (name == "near_vacuum_pulse") {
    s.law = {"polytropic", 1.0, 1.4, 0.0};
    s.delta = 0.01;
    s.x_min = -1.0;
    s.x_max = 1.0;
    s.n = 512;
    s.t_final = 0.1;
    s.init = GaussianInit{0.0, 1.0, 0.0, 0.15, 0.0};
    s.scheme.epsilon = 0.002;
    s.scheme.bc = BoundaryKind::outflow;
    s.snapshot_interval = 0.02;
  } else {
    std::string names;
    for (const std::string& p : scenario_names()) {
      if (!names.empty()) names += ", ";
      names += p;
    }
    bad_value("unknown scenario \"" + name + "\"; available presets: " + names);
  }
  s.validate();
  return s;
}

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : allowed) {
      if (it.key() == k) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ConfigError(ConfigError::Code::unknown_key,
                        "unknown key \"" + it.key() + "\" in " + where);
    }
  }
}

double get_num(const json& obj, const char* key, double fallback,
               const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) bad_value(where + "." + key + " must be a number");
  return v.get<double>();
}

int get_int(const json& obj, const char* key, int fallback,
            const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) bad_value(where + "." + key + " must be an integer");
  return v.get<int>();
}

std::string get_str(const json& obj, const char* key,
                    const std::string& fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) bad_value(where + "." + key + " must be a string");
  return v.get<std::string>();
}

InitSpec parse_init(const json& obj) {
  const std::string kind = get_str(obj, "kind", "", "init");
  if (kind == "riemann") {
    check_keys(obj, "init",
               {"kind", "rho_l", "u_l", "rho_r", "u_r", "x_jump"});
    RiemannInit r;
    r.rho_l = get_num(obj, "rho_l", r.rho_l, "init");
    r.u_l = get_num(obj, "u_l", r.u_l, "init");
    r.rho_r = get_num(obj, "rho_r", r.rho_r, "init");
    r.u_r = get_num(obj, "u_r", r.u_r, "init");
    r.x_jump = get_num(obj, "x_jump", r.x_jump, "init");
    return r;
  }
  if (kind == "sine") {
    check_keys(obj, "init", {"kind", "base", "amp", "periods", "u0"});
    SineInit s;
    s.base = get_num(obj, "base", s.base, "init");
    s.amp = get_num(obj, "amp", s.amp, "init");
    s.periods = get_num(obj, "periods", s.periods, "init");
    s.u0 = get_num(obj, "u0", s.u0, "init");
    return s;
  }
  if (kind == "gaussian") {
    check_keys(obj, "init",
               {"kind", "floor", "amp", "center", "width", "u0"});
    GaussianInit g;
    g.floor = get_num(obj, "floor", g.floor, "init");
    g.amp = get_num(obj, "amp", g.amp, "init");
    g.center = get_num(obj, "center", g.center, "init");
    g.width = get_num(obj, "width", g.width, "init");
    g.u0 = get_num(obj, "u0", g.u0, "init");
    return g;
  }
  bad_value("init.kind must be \"riemann\", \"sine\" or \"gaussian\"");
}

template <typename Enum>
Enum parse_choice(const std::string& value, const std::string& where,
                  std::initializer_list<std::pair<const char*, Enum>> table) {
  std::string allowed;
  for (const auto& [name, e] : table) {
    if (value == name) return e;
    if (!allowed.empty()) allowed += ", ";
    allowed += name;
  }
  bad_value(where + " must be one of: " + allowed + " (got \"" + value + "\")");
}

}  // namespace

ScenarioSpec parse_scenario_json(const std::string& text,
                                 const std::string& origin) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(ConfigError::Code::bad_json,
                      origin + ": " + std::string(e.what()));
  }
  if (!root.is_object()) {
    throw ConfigError(ConfigError::Code::bad_json,
                      origin + ": top level must be a JSON object");
  }
  check_keys(root, "config",
             {"name", "law", "delta", "epsilon", "domain", "t_final", "init",
              "init_rule", "scheme", "output"});

  ScenarioSpec s;
  s.name = get_str(root, "name", s.name, "config");

  if (root.contains("law")) {
    const json& law = root.at("law");
    if (!law.is_object()) bad_value("law must be an object");
    check_keys(law, "law", {"family", "kappa", "gamma", "beta"});
    s.law.family = get_str(law, "family", s.law.family, "law");
    s.law.kappa = get_num(law, "kappa", s.law.kappa, "law");
    s.law.gamma = get_num(law, "gamma", s.law.gamma, "law");
    s.law.beta = get_num(law, "beta", s.law.beta, "law");
  }

  s.delta = get_num(root, "delta", s.delta, "config");
  s.scheme.epsilon = get_num(root, "epsilon", s.scheme.epsilon, "config");
  s.t_final = get_num(root, "t_final", s.t_final, "config");

  if (root.contains("domain")) {
    const json& dom = root.at("domain");
    if (!dom.is_object()) bad_value("domain must be an object");
    check_keys(dom, "domain", {"x_min", "x_max", "n"});
    s.x_min = get_num(dom, "x_min", s.x_min, "domain");
    s.x_max = get_num(dom, "x_max", s.x_max, "domain");
    s.n = get_int(dom, "n", s.n, "domain");
  }

  if (root.contains("init")) {
    const json& init = root.at("init");
    if (!init.is_object()) bad_value("init must be an object");
    s.init = parse_init(init);
  }

  const std::string rule = get_str(root, "init_rule", "floor", "config");
  s.init_rule = parse_choice<InitRule>(
      rule, "init_rule",
      {{"floor", InitRule::floor_rule}, {"additive", InitRule::additive_lift}});

  if (root.contains("scheme")) {
    const json& sc = root.at("scheme");
    if (!sc.is_object()) bad_value("scheme must be an object");
    check_keys(sc, "scheme",
               {"flux", "bc", "backend", "cfl", "positivity_floor",
                "on_violation", "viscous_vars"});
    s.scheme.flux = parse_choice<FluxKind>(
        get_str(sc, "flux", "rusanov", "scheme"), "scheme.flux",
        {{"rusanov", FluxKind::rusanov},
         {"lax_friedrichs", FluxKind::lax_friedrichs}});
    s.scheme.bc = parse_choice<BoundaryKind>(
        get_str(sc, "bc", "outflow", "scheme"), "scheme.bc",
        {{"outflow", BoundaryKind::outflow},
         {"periodic", BoundaryKind::periodic}});
    s.scheme.backend = parse_choice<Backend>(
        get_str(sc, "backend", "openmp", "scheme"), "scheme.backend",
        {{"serial", Backend::serial}, {"openmp", Backend::openmp}});
    s.scheme.cfl = get_num(sc, "cfl", s.scheme.cfl, "scheme");
    s.scheme.positivity_floor =
        get_num(sc, "positivity_floor", s.scheme.positivity_floor, "scheme");
    s.scheme.on_violation = parse_choice<ViolationPolicy>(
        get_str(sc, "on_violation", "abort", "scheme"), "scheme.on_violation",
        {{"abort", ViolationPolicy::abort_run},
         {"clamp", ViolationPolicy::clamp}});
    s.scheme.viscous_vars = parse_choice<ViscousVars>(
        get_str(sc, "viscous_vars", "effective", "scheme"),
        "scheme.viscous_vars",
        {{"effective", ViscousVars::effective},
         {"physical", ViscousVars::physical}});
  }

  if (root.contains("output")) {
    const json& out = root.at("output");
    if (!out.is_object()) bad_value("output must be an object");
    check_keys(out, "output", {"snapshot_interval", "directory"});
    s.snapshot_interval =
        get_num(out, "snapshot_interval", s.snapshot_interval, "output");
    s.output_dir = get_str(out, "directory", s.output_dir, "output");
  }

  s.validate();
  make_law(s.law);  // (A1)-(A3) check up front
  return s;
}

ScenarioSpec load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(ConfigError::Code::missing_file,
                      "cannot open config file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_json(buf.str(), path);
}

std::string scenario_to_json(const ScenarioSpec& s) {
  json root;
  root["name"] = s.name;
  root["law"] = {{"family", s.law.family},
                 {"kappa", s.law.kappa},
                 {"gamma", s.law.gamma},
                 {"beta", s.law.beta}};
  root["delta"] = s.delta;
  root["epsilon"] = s.scheme.epsilon;
  root["domain"] = {{"x_min", s.x_min}, {"x_max", s.x_max}, {"n", s.n}};
  root["t_final"] = s.t_final;

  json init;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, RiemannInit>) {
          init = {{"kind", "riemann"}, {"rho_l", p.rho_l}, {"u_l", p.u_l},
                  {"rho_r", p.rho_r}, {"u_r", p.u_r},     {"x_jump", p.x_jump}};
        } else if constexpr (std::is_same_v<T, SineInit>) {
          init = {{"kind", "sine"},
                  {"base", p.base},
                  {"amp", p.amp},
                  {"periods", p.periods},
                  {"u0", p.u0}};
        } else {
          init = {{"kind", "gaussian"}, {"floor", p.floor}, {"amp", p.amp},
                  {"center", p.center}, {"width", p.width}, {"u0", p.u0}};
        }
      },
      s.init);
  root["init"] = init;
  root["init_rule"] =
      s.init_rule == InitRule::floor_rule ? "floor" : "additive";

  root["scheme"] = {
      {"flux", s.scheme.flux == FluxKind::rusanov ? "rusanov" : "lax_friedrichs"},
      {"bc", s.scheme.bc == BoundaryKind::outflow ? "outflow" : "periodic"},
      {"backend", s.scheme.backend == Backend::serial ? "serial" : "openmp"},
      {"cfl", s.scheme.cfl},
      {"positivity_floor", s.scheme.positivity_floor},
      {"on_violation",
       s.scheme.on_violation == ViolationPolicy::abort_run ? "abort" : "clamp"},
      {"viscous_vars",
       s.scheme.viscous_vars == ViscousVars::effective ? "effective"
                                                       : "physical"}};
  root["output"] = {{"snapshot_interval", s.snapshot_interval},
                    {"directory", s.output_dir}};
  return root.dump(2);
}

}  // namespace shieldflow
