#include "shieldflow/studies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace shieldflow {

std::vector<double> conservative_restrict(std::span<const double> fine,
                                          int factor) {
  if (factor < 1) throw std::invalid_argument("restrict: factor must be >= 1");
  if (fine.size() % static_cast<std::size_t>(factor) != 0) {
    throw std::invalid_argument("restrict: size not divisible by factor");
  }
  std::vector<double> coarse(fine.size() / factor);
  for (std::size_t j = 0; j < coarse.size(); ++j) {
    double s = 0.0;
    for (int k = 0; k < factor; ++k) s += fine[j * factor + k];
    coarse[j] = s / factor;
  }
  return coarse;
}

double l1_distance(std::span<const double> a, double dx_a,
                   std::span<const double> b, double dx_b) {
  std::vector<double> ra, rb;
  if (a.size() > b.size()) {
    if (a.size() % b.size() != 0) {
      throw std::invalid_argument("l1_distance: grids do not nest");
    }
    ra = conservative_restrict(a, static_cast<int>(a.size() / b.size()));
    a = ra;
    dx_a = dx_b;
  } else if (b.size() > a.size()) {
    if (b.size() % a.size() != 0) {
      throw std::invalid_argument("l1_distance: grids do not nest");
    }
    rb = conservative_restrict(b, static_cast<int>(b.size() / a.size()));
    b = rb;
    dx_b = dx_a;
  }
  (void)dx_b;
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s * dx_a;
}

namespace {

void check_ladder(std::span<const double> ladder) {
  if (ladder.empty()) {
    throw ConfigError(ConfigError::Code::bad_value, "ladder must be nonempty");
  }
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    if (!(ladder[k] > 0.0) || !std::isfinite(ladder[k])) {
      throw ConfigError(ConfigError::Code::bad_value,
                        "ladder values must be positive and finite");
    }
    if (k > 0 && !(ladder[k] < ladder[k - 1])) {
      throw ConfigError(ConfigError::Code::bad_value,
                        "ladder must be strictly decreasing");
    }
  }
}

LevelSummary summarize(double param, double epsilon, const RunResult& rr) {
  LevelSummary s;
  s.param = param;
  s.epsilon = epsilon;
  s.steps = rr.steps;
  s.aborted = rr.aborted;
  s.abort_reason = rr.abort_reason;
  s.mass_drift = mass_drift(rr);
  double mn = std::numeric_limits<double>::infinity();
  double mw = -mn;
  for (const MonitorRow& row : rr.monitors) {
    mn = std::min(mn, row.min_rho);
    mw = std::max(mw, row.max_w);
  }
  s.min_rho = mn;
  s.max_w_peak = mw;
  s.max_w_start = rr.monitors.empty() ? 0.0 : rr.monitors.front().max_w;
  return s;
}

void finish_trend_fields(StudyReport& rep) {
  // Cauchy check skips the first gap: the coarsest level is allowed to be
  // preasymptotic.
  rep.cauchy = true;
  for (std::size_t k = 2; k < rep.distances.size(); ++k) {
    if (!(rep.distances[k] <= rep.distances[k - 1])) rep.cauchy = false;
  }
  std::vector<double> lx, ly;
  for (std::size_t k = 0; k < rep.distances.size(); ++k) {
    if (rep.distances[k] > 0.0) {
      lx.push_back(std::log(rep.ladder[k]));
      ly.push_back(std::log(rep.distances[k]));
    }
  }
  if (lx.size() >= 2) rep.order = fit_line(lx, ly);

  rep.defects_decreasing = rep.defects.size() >= 2;
  for (std::size_t k = 1; k < rep.defects.size(); ++k) {
    if (!(rep.defects[k] < rep.defects[k - 1])) rep.defects_decreasing = false;
  }
}

}  // namespace

StudyReport eps_study(const ScenarioSpec& base, std::span<const double> ladder) {
  check_ladder(ladder);
  StudyReport rep;
  rep.scenario = base.name;
  rep.parameter = "epsilon";
  rep.ladder.assign(ladder.begin(), ladder.end());
  rep.complete = true;

  const ShieldedEos eos = make_eos(base);
  std::vector<std::vector<double>> fin_r, fin_m;
  std::vector<bool> ok;

  for (double eps : ladder) {
    ScenarioSpec s = base;
    s.scheme.epsilon = eps;
    GridState g = initial_state(s);
    if (rep.x.empty()) {
      rep.x.resize(g.n());
      for (int i = 0; i < g.n(); ++i) rep.x[i] = g.x_center(i);
    }
    const RunResult rr = run(eos, std::move(g), s.scheme, s.t_final,
                             s.snapshot_interval);
    rep.levels.push_back(summarize(eps, eps, rr));
    ok.push_back(!rr.aborted);
    if (rr.aborted) rep.complete = false;
    fin_r.push_back(rr.snapshots.back().rho_hat);
    fin_m.push_back(rr.snapshots.back().m_hat);
    std::vector<double> phys = rr.snapshots.back().rho_hat;
    for (double& v : phys) v += base.delta;
    rep.rho_overlay.push_back(std::move(phys));
  }

  const double dx = (base.x_max - base.x_min) / base.n;
  for (std::size_t k = 0; k + 1 < fin_r.size(); ++k) {
    if (!ok[k] || !ok[k + 1]) {
      rep.distances.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    rep.distances.push_back(l1_distance(fin_r[k], dx, fin_r[k + 1], dx) +
                            l1_distance(fin_m[k], dx, fin_m[k + 1], dx));
  }
  finish_trend_fields(rep);
  return rep;
}

StudyReport delta_study(const ScenarioSpec& base, std::span<const double> ladder,
                        double eps_coupling) {
  check_ladder(ladder);
  if (!(eps_coupling > 0.0)) {
    throw ConfigError(ConfigError::Code::bad_value,
                      "eps coupling must be positive");
  }
  StudyReport rep;
  rep.scenario = base.name;
  rep.parameter = "delta";
  rep.ladder.assign(ladder.begin(), ladder.end());
  rep.complete = true;

  const auto law = make_law(base.law);
  std::vector<std::vector<double>> fin_rho, fin_m;
  std::vector<bool> ok;

  for (double delta : ladder) {
    ScenarioSpec s = base;
    s.delta = delta;
    s.scheme.epsilon = eps_coupling * delta;
    const ShieldedEos eos(law, delta);
    GridState g = initial_state(s);
    const double x0 = g.x0, dx = g.dx;
    if (rep.x.empty()) {
      rep.x.resize(g.n());
      for (int i = 0; i < g.n(); ++i) rep.x[i] = g.x_center(i);
    }
    const RunResult rr = run(eos, std::move(g), s.scheme, s.t_final,
                             s.snapshot_interval);
    rep.levels.push_back(summarize(delta, s.scheme.epsilon, rr));
    ok.push_back(!rr.aborted);
    if (rr.aborted) rep.complete = false;

    std::vector<double> rho = rr.snapshots.back().rho_hat;
    for (double& v : rho) v += delta;
    fin_rho.push_back(rho);
    fin_m.push_back(rr.snapshots.back().m_hat);
    rep.rho_overlay.push_back(std::move(rho));

    if (!rr.aborted) {
      const WeakFormReport wf =
          weak_form_residual(rr.snapshots, x0, dx, *law, delta);
      rep.defects.push_back(std::max(wf.mass_defect, wf.momentum_defect));
    } else {
      rep.defects.push_back(std::numeric_limits<double>::quiet_NaN());
    }
  }

  const double dx = (base.x_max - base.x_min) / base.n;
  for (std::size_t k = 0; k + 1 < fin_rho.size(); ++k) {
    if (!ok[k] || !ok[k + 1]) {
      rep.distances.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    rep.distances.push_back(l1_distance(fin_rho[k], dx, fin_rho[k + 1], dx) +
                            l1_distance(fin_m[k], dx, fin_m[k + 1], dx));
  }
  finish_trend_fields(rep);
  return rep;
}

namespace {

// C^2 bump on (-1, 1).
inline double bump(double r) {
  if (std::abs(r) >= 1.0) return 0.0;
  const double s = 1.0 - r * r;
  return s * s * s;
}
inline double dbump(double r) {
  if (std::abs(r) >= 1.0) return 0.0;
  const double s = 1.0 - r * r;
  return -6.0 * r * s * s;
}

}  // namespace

WeakFormReport weak_form_residual(const std::vector<Snapshot>& snaps, double x0,
                                  double dx, const PressureLaw& law,
                                  double delta, int lattice_nx,
                                  int lattice_nt) {
  if (lattice_nx < 1 || lattice_nt < 1) {
    throw ConfigError(ConfigError::Code::bad_value,
                      "weak form: lattice must be at least 1x1");
  }
  if (snaps.size() < 3) {
    throw ConfigError(ConfigError::Code::bad_value,
                      "weak form: need at least three snapshots");
  }
  const std::size_t n = snaps.front().rho_hat.size();
  for (const Snapshot& s : snaps) {
    if (s.rho_hat.size() != n) {
      throw ConfigError(ConfigError::Code::bad_value,
                        "weak form: snapshot sizes differ");
    }
  }
  const double t0 = snaps.front().t;
  const double T = snaps.back().t - t0;
  if (!(T > 0.0)) {
    throw ConfigError(ConfigError::Code::bad_value,
                      "weak form: snapshot times must span an interval");
  }
  const double x_lo = x0, x_hi = x0 + static_cast<double>(n) * dx;
  const double rx = (x_hi - x_lo) / (lattice_nx + 1);
  const double rt = T / (lattice_nt + 1);

  // Each support is 2*rt wide in time; the trapezoid rule needs interior
  // sample times, not just the endpoints where the bump vanishes.
  for (int kt = 0; kt < lattice_nt; ++kt) {
    const double tc = t0 + (kt + 1) * rt;
    int inside = 0;
    for (const Snapshot& s : snaps) {
      if (std::abs(s.t - tc) < rt) ++inside;
    }
    if (inside < 3) {
      throw ConfigError(ConfigError::Code::bad_value,
                        "weak form: snapshots too sparse for the lattice "
                        "(need >= 3 per bump support)");
    }
  }

  WeakFormReport rep;
  for (int kx = 0; kx < lattice_nx; ++kx) {
    const double xc = x_lo + (kx + 1) * rx;
    for (int kt = 0; kt < lattice_nt; ++kt) {
      const double tc = t0 + (kt + 1) * rt;
      double mass_int = 0.0, mom_int = 0.0;
      for (std::size_t s = 0; s < snaps.size(); ++s) {
        // trapezoid weight in time
        double wt;
        if (s == 0) {
          wt = 0.5 * (snaps[1].t - snaps[0].t);
        } else if (s + 1 == snaps.size()) {
          wt = 0.5 * (snaps[s].t - snaps[s - 1].t);
        } else {
          wt = 0.5 * (snaps[s + 1].t - snaps[s - 1].t);
        }
        const double tb = (snaps[s].t - tc) / rt;
        const double bt = bump(tb);
        const double dbt = dbump(tb) / rt;
        if (bt == 0.0 && dbt == 0.0) continue;

        double mass_x = 0.0, mom_x = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          const double x = x0 + (static_cast<double>(i) + 0.5) * dx;
          const double xb = (x - xc) / rx;
          const double bx = bump(xb);
          const double dbx = dbump(xb) / rx;
          if (bx == 0.0 && dbx == 0.0) continue;

          const double rho_hat = snaps[s].rho_hat[i];
          const double m_hat = snaps[s].m_hat[i];
          const double rho = rho_hat + delta;
          const double u = m_hat / rho_hat;
          const double m_phys = rho * u;
          const double p = law.value(rho);

          mass_x += rho * bx * dbt + m_phys * dbx * bt;
          mom_x += m_phys * bx * dbt + (m_phys * u + p) * dbx * bt;
        }
        mass_int += wt * mass_x * dx;
        mom_int += wt * mom_x * dx;
      }
      rep.table.push_back({xc, tc, mass_int, mom_int});
      rep.mass_defect = std::max(rep.mass_defect, std::abs(mass_int));
      rep.momentum_defect = std::max(rep.momentum_defect, std::abs(mom_int));
    }
  }
  return rep;
}

LuReport lu_comparison(std::shared_ptr<const PressureLaw> law, double delta,
                       double rho_lo, double rho_hi, int npts) {
  if (!law) throw std::invalid_argument("lu_comparison: null law");
  if (npts < 2 || !(rho_hi > rho_lo)) {
    throw ConfigError(ConfigError::Code::bad_value,
                      "lu_comparison: need npts >= 2 and rho_hi > rho_lo");
  }
  if (!(rho_lo >= 2.0 * delta) || !(rho_lo > 0.0)) {
    throw ConfigError(ConfigError::Code::bad_value,
                      "lu_comparison: grid must start at or above 2*delta "
                      "(and above zero)");
  }
  const ShieldedEos eos(law, delta);
  LuReport rep;
  rep.rows.reserve(npts);
  for (int i = 0; i < npts; ++i) {
    LuRow row;
    row.rho = rho_lo + (rho_hi - rho_lo) * i / (npts - 1);
    row.p1 = lu_pressure(*law, delta, row.rho);
    row.residual = eos.convexity_residual(row.rho);
    row.pollution = lu_pollution(*law, delta, row.rho);
    rep.rows.push_back(row);
  }
  for (const LuRow& row : rep.rows) {
    if (row.pollution < 0.0) {
      if (!rep.has_negative) rep.neg_lo = row.rho;
      rep.neg_hi = row.rho;
      rep.has_negative = true;
    }
  }
  return rep;
}

}  // namespace shieldflow
