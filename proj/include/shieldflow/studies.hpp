#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "shieldflow/fit.hpp"
#include "shieldflow/scenario.hpp"
#include "shieldflow/solver.hpp"

namespace shieldflow {

// Block means; fine.size() must be a multiple of factor. Restricting then
// summing preserves total mass (sum * dx) exactly for power-of-two factors.
std::vector<double> conservative_restrict(std::span<const double> fine,
                                          int factor);

// L1 distance between two cell fields; the finer one is restricted first
// when the sizes differ (they must then divide evenly).
double l1_distance(std::span<const double> a, double dx_a,
                   std::span<const double> b, double dx_b);

struct LevelSummary {
  double param = 0.0;    // ladder value (epsilon or delta)
  double epsilon = 0.0;  // viscosity actually used at this level
  double min_rho = 0.0;  // min physical density over the whole run
  double max_w_start = 0.0;
  double max_w_peak = 0.0;
  double mass_drift = 0.0;
  long steps = 0;
  bool aborted = false;
  std::string abort_reason;
};

struct StudyReport {
  std::string scenario;
  std::string parameter;  // "epsilon" or "delta"
  std::vector<double> ladder;
  std::vector<LevelSummary> levels;
  // L1 distances between successive final states (physical density +
  // effective momentum), one entry per adjacent ladder pair.
  std::vector<double> distances;
  bool cauchy = false;    // distances non-increasing after the first gap
  bool complete = false;  // every level reached t_final
  LineFit order;          // log distance vs log ladder value
  std::vector<double> defects;  // delta study: weak-form defect per level
  bool defects_decreasing = false;
  std::vector<double> x;  // overlay abscissa (cell centers)
  std::vector<std::vector<double>> rho_overlay;  // physical density per level
};

StudyReport eps_study(const ScenarioSpec& base, std::span<const double> ladder);

// Runs the scenario once per delta with the coupled viscosity
// eps = eps_coupling * delta; distances use physical fields.
StudyReport delta_study(const ScenarioSpec& base, std::span<const double> ladder,
                        double eps_coupling = 0.1);

// Weak-form defect of a trajectory against the UNSHIELDED Euler fluxes
// (rho u, rho u^2 + P(rho)) with rho = rho_hat + delta, u = m_hat/rho_hat,
// tested against C^2 bumps phi(x) phi(t) on a lattice interior to the
// space-time box. Midpoint quadrature in x, trapezoid in t.
struct WeakFormReport {
  double mass_defect = 0.0;
  double momentum_defect = 0.0;
  // per test function: center x, center t, mass integral, momentum integral
  std::vector<std::array<double, 4>> table;
};

WeakFormReport weak_form_residual(const std::vector<Snapshot>& snaps, double x0,
                                  double dx, const PressureLaw& law,
                                  double delta, int lattice_nx = 4,
                                  int lattice_nt = 4);

// Tabulates, on a uniform density grid, the convexity residual of the
// translation construction next to the indicator of the doubled-shield
// comparison pressure, and brackets where the latter goes negative.
struct LuRow {
  double rho = 0.0;
  double p1 = 0.0;        // comparison pressure value
  double residual = 0.0;  // our 2P'+rho P'' inheritance residual
  double pollution = 0.0; // comparison convexity indicator
};

struct LuReport {
  std::vector<LuRow> rows;
  bool has_negative = false;
  double neg_lo = 0.0, neg_hi = 0.0;  // grid bracket of the negative set
};

LuReport lu_comparison(std::shared_ptr<const PressureLaw> law, double delta,
                       double rho_lo, double rho_hi, int npts);

}  // namespace shieldflow
