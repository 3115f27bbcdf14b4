#include "shieldflow/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "shieldflow/entropy.hpp"
#include "shieldflow/invariants.hpp"

namespace shieldflow {

std::array<double, 2> convective_flux(const ShieldedEos& eos, double rho_hat,
                                      double m_hat) {
  const double u = m_hat / rho_hat;
  return {m_hat, m_hat * u + eos.pressure(rho_hat + eos.delta())};
}

double max_wave_speed(const ShieldedEos& eos, const GridState& g,
                      Backend backend, kernels::Workspace& ws) {
  ws.resize(g.n());
  kernels::primitives(backend, eos, g.rho_hat, g.m_hat, ws.u, ws.p, ws.a);
  return kernels::max_abs(backend, ws.a);
}

double cfl_dt(const ShieldedEos& eos, const GridState& g,
              const SchemeConfig& cfg, kernels::Workspace& ws) {
  const double s = max_wave_speed(eos, g, cfg.backend, ws);
  const double inf = std::numeric_limits<double>::infinity();
  const double dt_h = s > 0.0 ? g.dx / s : inf;
  const double dt_p =
      cfg.epsilon > 0.0 ? g.dx * g.dx / (2.0 * cfg.epsilon) : inf;
  return cfg.cfl * std::min(dt_h, dt_p);
}

namespace {

// Returns true if any cell was clamped; throws on abort policy or NaN.
bool check_admissible(std::vector<double>& r, std::vector<double>& m,
                      const SchemeConfig& cfg, const char* stage) {
  bool clamped = false;
  const int n = static_cast<int>(r.size());
  for (int i = 0; i < n; ++i) {
    if (!std::isfinite(r[i]) || !std::isfinite(m[i])) {
      throw SolverAbort(std::string("nonfinite state in ") + stage +
                            " at cell " + std::to_string(i),
                        i, r[i]);
    }
    if (r[i] < cfg.positivity_floor) {
      if (cfg.on_violation == ViolationPolicy::abort_run) {
        throw SolverAbort(std::string("positivity violated in ") + stage +
                              " at cell " + std::to_string(i) +
                              " (rho_hat = " + std::to_string(r[i]) + ")",
                          i, r[i]);
      }
      r[i] = cfg.positivity_floor;
      m[i] = 0.0;  // a flooded cell has no meaningful velocity
      clamped = true;
    }
  }
  return clamped;
}

double apply_stage(const ShieldedEos& eos, const SchemeConfig& cfg, double dx,
                   double dt, std::span<const double> rin,
                   std::span<const double> min_, kernels::Workspace& ws,
                   std::span<double> rout, std::span<double> mout) {
  kernels::primitives(cfg.backend, eos, rin, min_, ws.u, ws.p, ws.a);
  const double s = kernels::max_abs(cfg.backend, ws.a);
  const double a_glob = cfg.flux == FluxKind::lax_friedrichs ? s : 0.0;
  kernels::interface_fluxes(cfg.backend, cfg.flux, cfg.bc, rin, min_, ws.u,
                            ws.p, ws.a, a_glob, ws.f_rho, ws.f_m);
  std::span<const double> dm = min_;
  if (cfg.viscous_vars == ViscousVars::physical && eos.delta() > 0.0) {
    kernels::lifted_momentum(cfg.backend, min_, ws.u, eos.delta(), ws.diff_m);
    dm = ws.diff_m;
  }
  kernels::apply_update(cfg.backend, cfg.bc, rin, min_, dm, ws.f_rho, ws.f_m,
                        cfg.epsilon, dx, dt, rout, mout);
  return s;
}

}  // namespace

StepOutcome step(const ShieldedEos& eos, GridState& g, const SchemeConfig& cfg,
                 double dt, kernels::Workspace& ws) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("step: dt must be positive and finite");
  }
  const int n = g.n();
  if (n < 3) throw std::invalid_argument("step: need at least 3 cells");
  ws.resize(n);

  StepOutcome out;
  out.max_speed =
      apply_stage(eos, cfg, g.dx, dt, g.rho_hat, g.m_hat, ws, ws.r1, ws.m1);
  bool clamped = check_admissible(ws.r1, ws.m1, cfg, "stage 1");

  apply_stage(eos, cfg, g.dx, dt, ws.r1, ws.m1, ws, ws.r2, ws.m2);
  for (int i = 0; i < n; ++i) {
    ws.r2[i] = 0.5 * (g.rho_hat[i] + ws.r2[i]);
    ws.m2[i] = 0.5 * (g.m_hat[i] + ws.m2[i]);
  }
  clamped = check_admissible(ws.r2, ws.m2, cfg, "step result") || clamped;

  g.rho_hat.swap(ws.r2);
  g.m_hat.swap(ws.m2);
  g.t += dt;
  out.clamped = clamped;
  return out;
}

RunResult run(const ShieldedEos& eos, GridState g, const SchemeConfig& cfg,
              double t_final, double snapshot_interval) {
  if (g.n() < 3 || !(g.dx > 0.0)) {
    throw std::invalid_argument("run: grid needs dx > 0 and at least 3 cells");
  }
  if (!(cfg.cfl > 0.0) || !(cfg.cfl < 1.0)) {
    throw std::invalid_argument("run: cfl must lie in (0, 1)");
  }
  if (!(cfg.epsilon >= 0.0) || !(cfg.positivity_floor > 0.0)) {
    throw std::invalid_argument("run: epsilon >= 0 and positivity_floor > 0");
  }
  if (!(t_final >= g.t) || !std::isfinite(t_final)) {
    throw std::invalid_argument("run: t_final must be finite and >= start time");
  }
  for (int i = 0; i < g.n(); ++i) {
    if (!(g.rho_hat[i] >= cfg.positivity_floor)) {
      throw std::invalid_argument(
          "run: initial rho_hat below the positivity floor at cell " +
          std::to_string(i));
    }
  }

  RunResult res;
  kernels::Workspace ws;
  ws.resize(g.n());

  const double delta = eos.delta();
  const double max_r0 =
      *std::max_element(g.rho_hat.begin(), g.rho_hat.end());
  const double hint_hat = 4.0 * std::max(max_r0, 1.0) + 1.0;
  const InvariantMap imap(eos, delta + hint_hat);
  const InternalEnergyMap emap(eos, hint_hat);

  auto push_monitor = [&](double dt, double speed) {
    MonitorRow row;
    row.t = g.t;
    row.dt = dt;
    row.max_speed = speed;
    const double inf = std::numeric_limits<double>::infinity();
    double mn = inf, mass = 0.0, ent = 0.0, mw = -inf, mz = inf;
    for (int i = 0; i < g.n(); ++i) {
      const double rh = g.rho_hat[i];
      const double mh = g.m_hat[i];
      mn = std::min(mn, rh);
      mass += rh;
      ent += emap.eta(rh, mh);
      const double u = mh / rh;
      const double h = imap.H(rh + delta);
      mw = std::max(mw, u + h);
      mz = std::min(mz, u - h);
    }
    row.min_rho = mn + delta;
    row.mass = mass * g.dx;
    row.entropy_total = ent * g.dx;
    row.max_w = mw;
    row.min_z = mz;
    res.monitors.push_back(row);
  };
  auto push_snapshot = [&]() {
    res.snapshots.push_back({g.t, g.rho_hat, g.m_hat});
  };

  push_snapshot();
  push_monitor(0.0, max_wave_speed(eos, g, cfg.backend, ws));

  const double t_scale = std::max(1.0, std::abs(t_final));
  const double inf = std::numeric_limits<double>::infinity();
  double t_next = snapshot_interval > 0.0 ? g.t + snapshot_interval : inf;
  const long max_steps = 50000000;

  while (g.t < t_final - 1e-12 * t_scale) {
    double dt = cfl_dt(eos, g, cfg, ws);
    if (!std::isfinite(dt)) dt = t_final - g.t;
    dt = std::min(dt, t_final - g.t);
    bool at_snap = false;
    if (g.t + dt >= t_next - 1e-12 * t_scale) {
      dt = t_next - g.t;
      at_snap = true;
    }
    if (!(dt > 0.0)) {
      if (at_snap) {
        push_snapshot();
        t_next += snapshot_interval;
        continue;
      }
      break;
    }
    try {
      const StepOutcome so = step(eos, g, cfg, dt, ws);
      ++res.steps;
      res.tainted = res.tainted || so.clamped;
      push_monitor(dt, so.max_speed);
    } catch (const SolverAbort& e) {
      res.aborted = true;
      res.abort_reason = e.what();
      break;
    }
    if (at_snap) {
      push_snapshot();
      t_next += snapshot_interval;
    }
    if (res.steps >= max_steps) {
      res.aborted = true;
      res.abort_reason = "step limit reached";
      break;
    }
  }

  if (res.snapshots.empty() ||
      res.snapshots.back().t < g.t - 1e-12 * t_scale) {
    push_snapshot();
  }
  return res;
}

double mass_drift(const RunResult& r) {
  if (r.monitors.empty()) return 0.0;
  const double m0 = r.monitors.front().mass;
  const double scale = std::max(std::abs(m0), 1e-300);
  double worst = 0.0;
  for (const MonitorRow& row : r.monitors) {
    worst = std::max(worst, std::abs(row.mass - m0) / scale);
  }
  return worst;
}

}  // namespace shieldflow
