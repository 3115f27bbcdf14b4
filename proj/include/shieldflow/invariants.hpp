#pragma once

#include <span>
#include <vector>

#include "shieldflow/fit.hpp"
#include "shieldflow/interp.hpp"
#include "shieldflow/shielded_eos.hpp"

namespace shieldflow {

struct Invariants {
  double w, z;  // u + H(rho), u - H(rho)
};

struct PrimState {
  double rho, u;
};

// H(rho) = integral_delta^rho ctilde(s)/(s - delta) ds, the velocity-like
// coordinate whose sum/difference with u gives the Riemann invariants.
// The integrand has an inverse-square-root endpoint at s = delta (ctilde ~
// sqrt(s - delta)); substituting s = delta + t^2 makes it smooth. For
// delta = 0 the endpoint behaves like s^{theta-1} instead and the
// substitution s = t^{2/(gamma-1)} is used.
//
// The table memoizes H on a uniform grid in the substitution variable with
// monotone cubic interpolation; direct adaptive quadrature stays available
// as the reference path and as fallback beyond the table range.
class InvariantMap {
 public:
  InvariantMap(ShieldedEos eos, double rho_max, int nodes = 2048);

  const ShieldedEos& eos() const { return eos_; }
  double delta() const { return eos_.delta(); }
  double rho_max() const { return rho_max_; }

  double H(double rho) const;         // table + fallback tail integral
  double H_direct(double rho) const;  // adaptive quadrature, no table
  double dH(double rho) const;        // ctilde/(rho - delta), rho > delta

  // Inverse of H, Newton-polished against direct quadrature so the residual
  // |H(rho) - h| <= 1e-12 * max(1, h).
  double rho_of_H(double h) const;

  Invariants to_invariants(double rho, double u) const;
  PrimState from_invariants(double z, double w) const;  // requires w >= z

  // d(w,z)/d(rho,m) determinant = -2 ctilde(rho)/(rho - delta), rho > delta.
  double jacobian_det(double rho) const;

 private:
  double t_of_rho(double rho) const;
  double rho_of_t(double t) const;
  double integrand(double t) const;

  ShieldedEos eos_;
  double rho_max_;
  double power_;  // substitution exponent: rho = delta + t^2 or rho = t^power
  MonotoneCubic table_;
};

struct HGapReport {
  std::vector<double> deltas;
  std::vector<double> sup_gaps;  // sup over the rho grid of |H_delta - H_0|
  LineFit fit;                   // log gap vs log delta
};

// Compares H at shield delta against the unshielded H_0 on a density grid
// (augmented with points just above each delta, where the gap peaks) and
// fits the decay rate of the sup-gap in delta.
HGapReport h_gap_study(std::shared_ptr<const PressureLaw> law,
                       std::span<const double> deltas,
                       std::span<const double> rho_grid);

// Invariant-region box: z >= z_min, w <= w_max, delta <= rho <= rho_max.
struct RegionSpec {
  double z_min, w_max, rho_max;
};

struct RegionMembership {
  bool inside = false;
  double margin_z = 0.0;        // z - z_min
  double margin_w = 0.0;        // w_max - w
  double margin_rho_low = 0.0;  // rho - delta
  double margin_rho_high = 0.0; // rho_max - rho
};

RegionMembership region_membership(const RegionSpec& region,
                                   const InvariantMap& map, double rho,
                                   double u);

}  // namespace shieldflow
