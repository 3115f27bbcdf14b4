#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "shieldflow/fit.hpp"
#include "shieldflow/grid.hpp"
#include "shieldflow/interp.hpp"
#include "shieldflow/shielded_eos.hpp"

namespace shieldflow {

// Mechanical entropy pair for the effective system,
//   eta = m_hat^2 / (2 rho_hat) + rho_hat * e_hat(rho_hat),
//   q   = u * (eta + P_shielded(rho_hat + delta)),
// together with the gradient and Hessian of eta in (rho_hat, m_hat).
struct EntropyEval {
  double eta = 0.0;
  double q = 0.0;
  double grad_rho = 0.0;  // -u^2/2 + e_hat + P/rho_hat
  double grad_m = 0.0;    // u
  double hess_rr = 0.0;
  double hess_rm = 0.0;
  double hess_mm = 0.0;
  double hess_det = 0.0;  // P'(rho_hat+delta) / rho_hat^2
};

// Direct evaluation; the internal energy comes from adaptive quadrature.
EntropyEval mechanical_entropy(const ShieldedEos& eos, double rho_hat,
                               double m_hat, double rel_tol = 1e-12);

// Memoized e_hat(rho_hat) on [0, rho_hat_max] for per-cell evaluation in
// monitors and budgets. Falls back to direct quadrature past the table end
// and below the first interior node (where interpolation error would be
// absolute rather than relative). Table accuracy is about 1e-8 relative at
// the default node count; use ShieldedEos::internal_energy when quadrature
// accuracy is required.
class InternalEnergyMap {
 public:
  InternalEnergyMap(ShieldedEos eos, double rho_hat_max, int nodes = 1024);

  double operator()(double rho_hat) const;
  double rho_hat_max() const { return rho_hat_max_; }
  const ShieldedEos& eos() const { return eos_; }

  // eta and q only (no derivatives); the hot path for monitors.
  double eta(double rho_hat, double m_hat) const;
  double flux(double rho_hat, double m_hat) const;

 private:
  ShieldedEos eos_;
  double rho_hat_max_;
  double power_;    // table abscissa is rho_hat^power_
  double t_first_;  // first interior node; direct evaluation below it
  MonotoneCubic table_;
};

EntropyEval mechanical_entropy(const InternalEnergyMap& emap, double rho_hat,
                               double m_hat);

// L1 norm of eta_t + q_x for a space-time field given in effective variables,
// using second-order central differences (spacing h in x, h/2 in t) on
// midpoints of [x_lo, x_hi] at time t0.
struct FieldSample {
  double rho_hat = 0.0;
  double m_hat = 0.0;
};
using FieldFn = std::function<FieldSample(double x, double t)>;

double entropy_residual_l1(const ShieldedEos& eos, const FieldFn& field,
                           double x_lo, double x_hi, double t0, double h);

// Same stencil, but measures | (eta_t + q_x) - grad(eta) . S | for a forced
// field with known source S = (S_mass, S_momentum).
using ForcingFn = std::function<std::array<double, 2>(double x, double t)>;

double forced_entropy_residual_l1(const ShieldedEos& eos, const FieldFn& field,
                                  const ForcingFn& forcing, double x_lo,
                                  double x_hi, double t0, double h);

// Discrete entropy budget over a run: per interior cell and snapshot
// interval,
//   p = (eta^{k+1} - eta^k) dx + (dt/2) [ (dq)^k + (dq)^{k+1} ],
// with interface flux q_{i+1/2} = (q_i + q_{i+1})/2. Negative totals are
// dissipation; positive per-cell terms are accumulated separately since the
// semidiscrete inequality only holds up to O(eps + dx) here.
struct BudgetRow {
  double t = 0.0;
  double x = 0.0;
  double cell_production = 0.0;
  double cumulative = 0.0;  // running sum for this cell over time
};

struct BudgetReport {
  double total = 0.0;
  double positive_excess = 0.0;
  std::vector<BudgetRow> rows;
};

BudgetReport entropy_budget(const std::vector<Snapshot>& snaps,
                            const InternalEnergyMap& emap, double x_min,
                            double dx);

// Log-log scaling fit of eta and psi = u * P_shielded(rho) against the
// invariant spread sigma = w - z = 2 H(rho) along a constant-u curve.
// psi equals q - u*eta algebraically; it is computed from the pressure
// directly because the subtraction cancels badly for small sigma.
struct ScalingFit {
  bool valid = false;
  std::string note;
  LineFit eta_fit;
  LineFit psi_fit;
  double gap = 0.0;  // psi slope minus eta slope
  std::vector<double> sigma;
  std::vector<double> eta;
  std::vector<double> psi;
};

class InvariantMap;

ScalingFit wkb_scaling_fit(const InvariantMap& map, std::span<const double> rhos,
                           double u);

}  // namespace shieldflow
