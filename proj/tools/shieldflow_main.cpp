#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "shieldflow/entropy.hpp"
#include "shieldflow/invariants.hpp"
#include "shieldflow/io.hpp"
#include "shieldflow/scenario.hpp"
#include "shieldflow/simple_wave.hpp"
#include "shieldflow/solver.hpp"
#include "shieldflow/studies.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace shieldflow;

namespace {

struct LawFlags {
  std::string family = "polytropic";
  double kappa = 1.0;
  double gamma = 2.0;
  double beta = 0.0;
  double delta = 0.0;
};

void add_law_flags(CLI::App* cmd, LawFlags& lf) {
  cmd->add_option("--law", lf.family, "pressure law family (polytropic|crossover)");
  cmd->add_option("--kappa", lf.kappa, "pressure prefactor");
  cmd->add_option("--gamma", lf.gamma, "adiabatic exponent (> 1)");
  cmd->add_option("--beta", lf.beta, "crossover strength (crossover family)");
  cmd->add_option("--delta", lf.delta, "shield density (>= 0)");
}

LawSpec to_law_spec(const LawFlags& lf) {
  return {lf.family, lf.kappa, lf.gamma, lf.beta};
}

fs::path resolve_outdir(const std::string& flag, const std::string& leaf) {
  std::string root = flag;
  if (root.empty()) {
    const char* env = std::getenv("SHIELDFLOW_OUTDIR");
    root = env != nullptr ? env : "out";
  }
  fs::path dir = fs::path(root) / leaf;
  fs::create_directories(dir);
  return dir;
}

void write_manifest(const fs::path& dir, const std::string& config_json,
                    const std::vector<std::string>& artifacts,
                    json report = json()) {
  json m;
  m["format_version"] = 1;
  m["config_hash"] = io::fnv1a64_hex(config_json);
  m["config"] = json::parse(config_json);
  m["artifacts"] = artifacts;
  if (!report.is_null()) m["report"] = report;
  std::ofstream out(dir / "manifest.json");
  if (!out) throw std::runtime_error("cannot write manifest in " + dir.string());
  out << m.dump(2) << '\n';
}

json fit_json(const LineFit& f) {
  return {{"slope", f.slope},
          {"intercept", f.intercept},
          {"slope_stderr", f.slope_stderr},
          {"r2", f.r2},
          {"n", f.n},
          {"valid", f.valid}};
}

json study_json(const StudyReport& rep) {
  json levels = json::array();
  for (const LevelSummary& lv : rep.levels) {
    levels.push_back({{"param", lv.param},
                      {"epsilon", lv.epsilon},
                      {"min_rho", lv.min_rho},
                      {"max_w_start", lv.max_w_start},
                      {"max_w_peak", lv.max_w_peak},
                      {"mass_drift", lv.mass_drift},
                      {"steps", lv.steps},
                      {"aborted", lv.aborted},
                      {"abort_reason", lv.abort_reason}});
  }
  json j;
  j["scenario"] = rep.scenario;
  j["parameter"] = rep.parameter;
  j["ladder"] = rep.ladder;
  j["levels"] = levels;
  j["distances"] = rep.distances;
  j["cauchy"] = rep.cauchy;
  j["complete"] = rep.complete;
  j["order"] = fit_json(rep.order);
  j["defects"] = rep.defects;
  j["defects_decreasing"] = rep.defects_decreasing;
  return j;
}

ScenarioSpec load_spec(const std::string& config, const std::string& preset) {
  if (!config.empty() && !preset.empty()) {
    throw ConfigError(ConfigError::Code::bad_value,
                      "give either --config or --preset, not both");
  }
  if (!config.empty()) return load_scenario_file(config);
  if (!preset.empty()) return scenario_preset(preset);
  throw ConfigError(ConfigError::Code::bad_value,
                    "one of --config or --preset is required");
}

int cmd_eos_check(const LawFlags& lf, double rho_max, int points) {
  const ShieldedEos eos(make_law(to_law_spec(lf)), lf.delta);
  const double lo = lf.delta > 0.0 ? lf.delta * (1.0 + 1e-6) : 1e-6;
  if (!(rho_max > lo)) {
    throw ConfigError(ConfigError::Code::bad_value, "--rho-max too small");
  }
  std::printf("%14s %14s %14s %14s %14s\n", "rho", "ctilde2", "convexity",
              "residual", "epd_eff");
  double worst = 0.0;
  for (int i = 0; i < points; ++i) {
    const double rho = lo * std::pow(rho_max / lo, i / double(points - 1));
    const double res = eos.convexity_residual(rho);
    worst = std::max(worst, std::abs(res) / eos.convexity_gap_base(rho));
    std::printf("%14.6e %14.6e %14.6e %14.6e %14.6e\n", rho,
                eos.sound_speed_sq(rho), eos.convexity_gap(rho), res,
                eos.epd_index_effective(rho));
  }
  std::printf("max relative convexity residual: %.3e\n", worst);
  return 0;
}

int cmd_invariants(const LawFlags& lf, double rho_max, int points) {
  const ShieldedEos eos(make_law(to_law_spec(lf)), lf.delta);
  const InvariantMap map(eos, std::max(rho_max, lf.delta + 1.0));
  const double lo = lf.delta * (1.0 + 1e-4) + (lf.delta == 0.0 ? 1e-4 : 0.0);
  std::printf("%14s %14s %14s %14s\n", "rho", "H", "dH", "roundtrip_err");
  for (int i = 0; i < points; ++i) {
    const double rho = lo + (rho_max - lo) * i / double(points - 1);
    const double h = map.H(rho);
    const double back = map.rho_of_H(h);
    std::printf("%14.6e %14.6e %14.6e %14.6e\n", rho, h, map.dH(rho),
                std::abs(back - rho) / rho);
  }
  return 0;
}

int cmd_simulate(const ScenarioSpec& spec, const std::string& outdir) {
  const ShieldedEos eos = make_eos(spec);
  GridState g = initial_state(spec);
  const double x0 = g.x0, dx = g.dx;
  const double max_r0 =
      *std::max_element(g.rho_hat.begin(), g.rho_hat.end());
  const RunResult rr =
      run(eos, std::move(g), spec.scheme, spec.t_final, spec.snapshot_interval);

  const fs::path dir = resolve_outdir(outdir, spec.name);
  const double hint = 4.0 * std::max(max_r0, 1.0) + 1.0;
  const InvariantMap map(eos, spec.delta + hint);
  const InternalEnergyMap emap(eos, hint);

  io::write_snapshots_csv((dir / "snapshots.csv").string(), rr.snapshots, x0,
                          dx, map);
  io::write_monitors_csv((dir / "monitors.csv").string(), rr.monitors);
  const BudgetReport budget = entropy_budget(rr.snapshots, emap, x0, dx);
  io::write_budget_csv((dir / "budget.csv").string(), budget);

  json report;
  report["steps"] = rr.steps;
  report["aborted"] = rr.aborted;
  report["abort_reason"] = rr.abort_reason;
  report["tainted"] = rr.tainted;
  report["mass_drift"] = mass_drift(rr);
  report["entropy_total"] = budget.total;
  report["entropy_positive_excess"] = budget.positive_excess;
  write_manifest(dir, scenario_to_json(spec),
                 {"snapshots.csv", "monitors.csv", "budget.csv"}, report);

  std::printf("%s: %ld steps, t = %s, wrote %s\n", spec.name.c_str(), rr.steps,
              io::format_double(rr.snapshots.back().t).c_str(),
              dir.string().c_str());
  if (rr.aborted) {
    std::fprintf(stderr, "run aborted: %s\n", rr.abort_reason.c_str());
    return 2;
  }
  return 0;
}

int write_study_outputs(const StudyReport& rep, const ScenarioSpec& spec,
                        const fs::path& dir) {
  std::ofstream rout(dir / "report.json");
  if (!rout) throw std::runtime_error("cannot write report in " + dir.string());
  rout << study_json(rep).dump(2) << '\n';
  io::write_levels_csv((dir / "levels.csv").string(), rep);
  io::write_overlay_csv((dir / "overlay.csv").string(), rep);
  write_manifest(dir, scenario_to_json(spec),
                 {"report.json", "levels.csv", "overlay.csv"}, study_json(rep));
  std::printf("%s study on %s: %zu levels, cauchy=%d, complete=%d, wrote %s\n",
              rep.parameter.c_str(), rep.scenario.c_str(), rep.ladder.size(),
              rep.cauchy ? 1 : 0, rep.complete ? 1 : 0, dir.string().c_str());
  if (!rep.complete) {
    std::fprintf(stderr, "study incomplete: at least one level aborted\n");
    return 2;
  }
  return 0;
}

std::vector<double> geometric_ladder(double first, double factor, int levels) {
  if (!(first > 0.0) || !(factor > 0.0) || !(factor < 1.0) || levels < 1) {
    throw ConfigError(ConfigError::Code::bad_value,
                      "ladder needs first > 0, factor in (0,1), levels >= 1");
  }
  std::vector<double> ladder(levels);
  for (int k = 0; k < levels; ++k) ladder[k] = first * std::pow(factor, k);
  return ladder;
}

int cmd_scaling_fit(const LawFlags& lf, double u, double rho_lo, double rho_hi,
                    int points) {
  if (!(rho_lo > lf.delta) || !(rho_hi > rho_lo) || points < 3) {
    throw ConfigError(ConfigError::Code::bad_value,
                      "need delta < rho-lo < rho-hi and points >= 3");
  }
  const ShieldedEos eos(make_law(to_law_spec(lf)), lf.delta);
  const InvariantMap map(eos, rho_hi * 1.5);
  std::vector<double> rhos(points);
  for (int i = 0; i < points; ++i) {
    rhos[i] = rho_lo * std::pow(rho_hi / rho_lo, i / double(points - 1));
  }
  const ScalingFit fit = wkb_scaling_fit(map, rhos, u);
  if (!fit.valid) {
    std::fprintf(stderr, "scaling fit rejected: %s\n", fit.note.c_str());
    return 1;
  }
  std::printf("%14s %14s %14s\n", "sigma", "eta", "psi");
  for (std::size_t i = 0; i < fit.sigma.size(); ++i) {
    std::printf("%14.6e %14.6e %14.6e\n", fit.sigma[i], fit.eta[i],
                fit.psi[i]);
  }
  std::printf("eta exponent: %.6f +/- %.2e\n", fit.eta_fit.slope,
              fit.eta_fit.slope_stderr);
  std::printf("psi exponent: %.6f +/- %.2e\n", fit.psi_fit.slope,
              fit.psi_fit.slope_stderr);
  std::printf("gap (psi - eta): %.6f\n", fit.gap);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shielded isentropic gas dynamics: EOS tools, solver, studies"};
  app.require_subcommand(1);

  // eos-check
  auto* eos_cmd = app.add_subcommand(
      "eos-check", "print shielded EOS diagnostics on a log density grid");
  LawFlags eos_lf;
  double eos_rho_max = 10.0;
  int eos_points = 25;
  add_law_flags(eos_cmd, eos_lf);
  eos_cmd->add_option("--rho-max", eos_rho_max, "table upper density");
  eos_cmd->add_option("--points", eos_points, "table rows")
      ->check(CLI::Range(2, 100000));

  // invariants
  auto* inv_cmd = app.add_subcommand(
      "invariants", "print H(rho) and its inverse round-trip error");
  LawFlags inv_lf;
  double inv_rho_max = 4.0;
  int inv_points = 17;
  add_law_flags(inv_cmd, inv_lf);
  inv_cmd->add_option("--rho-max", inv_rho_max, "table upper density");
  inv_cmd->add_option("--points", inv_points, "table rows")
      ->check(CLI::Range(2, 100000));

  // simulate
  auto* sim_cmd =
      app.add_subcommand("simulate", "run one scenario and write CSV output");
  std::string sim_config, sim_preset, sim_out;
  int sim_n = 0;
  double sim_tf = -1.0, sim_delta = -1.0, sim_eps = -1.0;
  sim_cmd->add_option("--config", sim_config, "scenario JSON file");
  sim_cmd->add_option("--preset", sim_preset, "built-in scenario name");
  sim_cmd->add_option("--output", sim_out, "output root (default $SHIELDFLOW_OUTDIR or ./out)");
  sim_cmd->add_option("--n", sim_n, "override cell count");
  sim_cmd->add_option("--t-final", sim_tf, "override end time");
  sim_cmd->add_option("--delta", sim_delta, "override shield density");
  sim_cmd->add_option("--epsilon", sim_eps, "override viscosity");

  // study-eps
  auto* se_cmd = app.add_subcommand(
      "study-eps", "viscosity ladder study at fixed shield density");
  std::string se_config, se_preset, se_out;
  int se_levels = 4;
  double se_first = -1.0, se_factor = 0.5;
  se_cmd->add_option("--config", se_config, "scenario JSON file");
  se_cmd->add_option("--preset", se_preset, "built-in scenario name");
  se_cmd->add_option("--output", se_out, "output root");
  se_cmd->add_option("--levels", se_levels, "ladder length");
  se_cmd->add_option("--first", se_first, "largest viscosity (default scenario epsilon)");
  se_cmd->add_option("--factor", se_factor, "ladder ratio in (0,1)");

  // study-delta
  auto* sd_cmd = app.add_subcommand(
      "study-delta", "shield ladder study with coupled viscosity");
  std::string sd_config, sd_preset, sd_out;
  int sd_levels = 4;
  double sd_first = -1.0, sd_factor = 0.5, sd_coupling = 0.1;
  sd_cmd->add_option("--config", sd_config, "scenario JSON file");
  sd_cmd->add_option("--preset", sd_preset, "built-in scenario name");
  sd_cmd->add_option("--output", sd_out, "output root");
  sd_cmd->add_option("--levels", sd_levels, "ladder length");
  sd_cmd->add_option("--first", sd_first, "largest delta (default scenario delta)");
  sd_cmd->add_option("--factor", sd_factor, "ladder ratio in (0,1)");
  sd_cmd->add_option("--coupling", sd_coupling, "epsilon = coupling * delta");

  // lu-compare
  auto* lu_cmd = app.add_subcommand(
      "lu-compare", "tabulate convexity of the two shielding constructions");
  LawFlags lu_lf;
  double lu_rho_max = 0.0;
  int lu_points = 257;
  std::string lu_out;
  add_law_flags(lu_cmd, lu_lf);
  lu_cmd->add_option("--rho-max", lu_rho_max, "grid upper density (default 6*delta or 1)");
  lu_cmd->add_option("--points", lu_points, "grid size")
      ->check(CLI::Range(2, 1000000));
  lu_cmd->add_option("--output", lu_out, "output root");

  // scaling-fit
  auto* sf_cmd = app.add_subcommand(
      "scaling-fit", "log-log exponents of the entropy pair in the invariant spread");
  LawFlags sf_lf;
  double sf_u = 1.0, sf_rho_lo = 0.0, sf_rho_hi = 0.0;
  int sf_points = 33;
  add_law_flags(sf_cmd, sf_lf);
  sf_cmd->add_option("--u", sf_u, "velocity of the sample curve");
  sf_cmd->add_option("--rho-lo", sf_rho_lo, "lowest density (default just above delta)");
  sf_cmd->add_option("--rho-hi", sf_rho_hi, "highest density");
  sf_cmd->add_option("--points", sf_points, "sample count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(eos_cmd)) {
      return cmd_eos_check(eos_lf, eos_rho_max, eos_points);
    }
    if (app.got_subcommand(inv_cmd)) {
      return cmd_invariants(inv_lf, inv_rho_max, inv_points);
    }
    if (app.got_subcommand(sim_cmd)) {
      ScenarioSpec spec = load_spec(sim_config, sim_preset);
      if (sim_n > 0) spec.n = sim_n;
      if (sim_tf >= 0.0) spec.t_final = sim_tf;
      if (sim_delta >= 0.0) spec.delta = sim_delta;
      if (sim_eps >= 0.0) spec.scheme.epsilon = sim_eps;
      spec.validate();
      return cmd_simulate(spec, sim_out);
    }
    if (app.got_subcommand(se_cmd)) {
      const ScenarioSpec spec = load_spec(se_config, se_preset);
      const double first = se_first > 0.0 ? se_first : spec.scheme.epsilon;
      const auto ladder = geometric_ladder(first, se_factor, se_levels);
      const StudyReport rep = eps_study(spec, ladder);
      const fs::path dir = resolve_outdir(se_out, spec.name + "_eps");
      return write_study_outputs(rep, spec, dir);
    }
    if (app.got_subcommand(sd_cmd)) {
      const ScenarioSpec spec = load_spec(sd_config, sd_preset);
      const double first = sd_first > 0.0 ? sd_first : spec.delta;
      const auto ladder = geometric_ladder(first, sd_factor, sd_levels);
      const StudyReport rep = delta_study(spec, ladder, sd_coupling);
      const fs::path dir = resolve_outdir(sd_out, spec.name + "_delta");
      return write_study_outputs(rep, spec, dir);
    }
    if (app.got_subcommand(lu_cmd)) {
      const double lo = std::max(2.0 * lu_lf.delta, 1e-3);
      const double hi =
          lu_rho_max > 0.0 ? lu_rho_max : std::max(6.0 * lu_lf.delta, 1.0);
      const LuReport rep =
          lu_comparison(make_law(to_law_spec(lu_lf)), lu_lf.delta, lo, hi,
                        lu_points);
      const fs::path dir = resolve_outdir(lu_out, "lu_compare");
      io::write_lu_csv((dir / "lu.csv").string(), rep);
      json cfg = {{"law", lu_lf.family}, {"kappa", lu_lf.kappa},
                  {"gamma", lu_lf.gamma}, {"beta", lu_lf.beta},
                  {"delta", lu_lf.delta}, {"rho_lo", lo},
                  {"rho_hi", hi},         {"points", lu_points}};
      write_manifest(dir, cfg.dump(2), {"lu.csv"});
      if (rep.has_negative) {
        std::printf("comparison indicator negative on [%s, %s]\n",
                    io::format_double(rep.neg_lo).c_str(),
                    io::format_double(rep.neg_hi).c_str());
      } else {
        std::printf("comparison indicator nonnegative on the grid\n");
      }
      return 0;
    }
    if (app.got_subcommand(sf_cmd)) {
      // Default range hugs the shield, where the pair's exponents separate.
      if (sf_rho_lo <= 0.0) {
        sf_rho_lo = sf_lf.delta > 0.0 ? sf_lf.delta * (1.0 + 1e-4) : 1e-3;
      }
      if (sf_rho_hi <= 0.0) {
        sf_rho_hi = sf_lf.delta > 0.0 ? sf_lf.delta * 1.1 : 1.0;
      }
      return cmd_scaling_fit(sf_lf, sf_u, sf_rho_lo, sf_rho_hi, sf_points);
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return 1;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "runtime failure: %s\n", e.what());
    return 2;
  }
  return 1;
}
