#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "shieldflow/grid.hpp"
#include "shieldflow/kernels.hpp"
#include "shieldflow/shielded_eos.hpp"

namespace shieldflow {

enum class ViolationPolicy { abort_run, clamp };
enum class ViscousVars { effective, physical };

struct SchemeConfig {
  FluxKind flux = FluxKind::rusanov;
  BoundaryKind bc = BoundaryKind::outflow;
  Backend backend = Backend::openmp;
  double cfl = 0.4;
  double epsilon = 0.0;
  double positivity_floor = 1e-12;
  ViolationPolicy on_violation = ViolationPolicy::abort_run;
  ViscousVars viscous_vars = ViscousVars::effective;
};

// Thrown (and caught by run()) when the state leaves the admissible set.
struct SolverAbort : std::runtime_error {
  SolverAbort(const std::string& what, int cell_, double value_)
      : std::runtime_error(what), cell(cell_), value(value_) {}
  int cell;
  double value;
};

// Exact convective flux of the effective system: (m_hat, m_hat u + P(rho)).
std::array<double, 2> convective_flux(const ShieldedEos& eos, double rho_hat,
                                      double m_hat);

double max_wave_speed(const ShieldedEos& eos, const GridState& g,
                      Backend backend, kernels::Workspace& ws);

// cfl * min(dx / max|u|+c, dx^2 / (2 eps)); +inf when both limits are absent.
double cfl_dt(const ShieldedEos& eos, const GridState& g,
              const SchemeConfig& cfg, kernels::Workspace& ws);

struct StepOutcome {
  double max_speed = 0.0;
  bool clamped = false;
};

// One Heun (RK2) step of the semidiscrete scheme. The state is written only
// after every stage passes the positivity/finiteness check, so a throwing
// step leaves g untouched.
StepOutcome step(const ShieldedEos& eos, GridState& g, const SchemeConfig& cfg,
                 double dt, kernels::Workspace& ws);

struct MonitorRow {
  double t = 0.0;
  double dt = 0.0;
  double min_rho = 0.0;  // physical density min(rho_hat) + delta
  double max_speed = 0.0;
  double max_w = 0.0;
  double min_z = 0.0;
  double mass = 0.0;  // sum(rho_hat) dx
  double entropy_total = 0.0;
};

struct RunResult {
  std::vector<Snapshot> snapshots;
  std::vector<MonitorRow> monitors;
  long steps = 0;
  bool aborted = false;
  bool tainted = false;  // a clamp fired at least once
  std::string abort_reason;
};

RunResult run(const ShieldedEos& eos, GridState g, const SchemeConfig& cfg,
              double t_final, double snapshot_interval);

// Largest relative mass deviation from the initial value over the run.
double mass_drift(const RunResult& r);

}  // namespace shieldflow
