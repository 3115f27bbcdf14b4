#pragma once

#include <memory>

#include "shieldflow/pressure_law.hpp"

namespace shieldflow {

struct QuadResult;

// Pressure law translated so that the gas becomes pressureless at the
// shield density delta:
//
//   Ptilde(rho) = P(rho) - P(delta) + delta^2 P'(delta) (1/rho - 1/delta)
//
// equivalently the integral of (g(s) - g(delta))/s^2 from delta to rho with
// stiffness g(s) = s^2 P'(s). Ptilde(delta) = Ptilde'(delta) = 0, and the
// convexity combination 2 Ptilde' + rho Ptilde'' equals the unshielded one
// identically. delta = 0 reduces every quantity to the base law.
class ShieldedEos {
 public:
  ShieldedEos(std::shared_ptr<const PressureLaw> law, double delta);

  const PressureLaw& law() const { return *law_; }
  std::shared_ptr<const PressureLaw> law_ptr() const { return law_; }
  double delta() const { return delta_; }

  // g(rho) = rho^2 P'(rho) and the cached shift g(delta).
  double stiffness(double rho) const;
  double stiffness_shift() const { return g_delta_; }
  // shielded stiffness rho^2 Ptilde'(rho) = g(rho) - g(delta)
  double stiffness_shielded(double rho) const;

  // Ptilde and derivatives, rho >= delta. pressure() uses the closed
  // antiderivative form; pressure_quad() integrates the defining integrand
  // and exists to cross-check the closed form.
  double pressure(double rho) const;
  double pressure_quad(double rho, double rel_tol = 1e-12) const;
  double pressure_d1(double rho) const { return sound_speed_sq(rho); }
  double pressure_d2(double rho) const;

  // ctilde^2 = (g(rho) - g(delta))/rho^2; exactly zero at rho = delta
  // because both stiffness values are computed by the same expression.
  double sound_speed_sq(double rho) const;
  double sound_speed(double rho) const;

  // 2 Ptilde' + rho Ptilde'' from shielded closed forms, the unshielded
  // counterpart, and their difference (zero up to rounding).
  double convexity_gap(double rho) const;
  double convexity_gap_base(double rho) const;
  double convexity_residual(double rho) const;

  // Degeneracy index (rho - delta) (ctilde^2)' / (2 ctilde^2), rho > delta.
  // Tends to 1/2 at the shield for delta > 0 and equals (gamma-1)/2 for a
  // polytropic law at delta = 0.
  double epd_index_effective(double rho) const;
  // Physical-variable form rho (ctilde^2)' / (2 ctilde^2); diverges like
  // rho/(rho - delta) at the shield. Diagnostic only.
  double epd_index_physical(double rho) const;

  // K(rho) = (ctilde'(rho)(rho - delta) + ctilde(rho))/(rho - delta)^2 > 0,
  // the coefficient multiplying -eps * rho_x^2 in the invariant dissipation
  // balance. rho > delta.
  double dissipation_coeff(double rho) const;

  // e_hat(rho_hat) = integral_0^rho_hat Ptilde(s + delta)/s^2 ds, evaluated
  // in the equivalent single-integral form
  //   integral_0^rho_hat ctilde^2(delta + r) (1/r - 1/rho_hat) dr
  // whose integrand stays O(1) accurate near r = 0 (the literal form loses
  // all digits for s << delta). Limit value at r -> 0 is Ptilde''(delta).
  double internal_energy(double rho_hat, double rel_tol = 1e-12) const;

  // Ptilde''(delta) = P''(delta) + 2 P'(delta)/delta (delta > 0).
  double boundary_curvature() const;

 private:
  std::shared_ptr<const PressureLaw> law_;
  double delta_;
  double g_delta_;
};

// Comparison pressure with doubled effective shield,
//   P1(rho; delta) = integral_{2 delta}^rho (s - 2 delta)/s P'(s) ds,
// and the convexity combination it induces,
//   (1 - 2 delta/rho)(2P' + rho P'') - (2 delta/rho)(P' + rho P''),
// which goes negative near rho = 2 delta for convex laws.
double lu_pressure(const PressureLaw& law, double delta, double rho,
                   double rel_tol = 1e-12);
double lu_pollution(const PressureLaw& law, double delta, double rho);

// (P')^{3/2} / (rho P''); NaN where P'' = 0. Decays like rho^{(gamma-1)/2}
// toward vacuum for polytropic laws.
double growth_ratio(const PressureLaw& law, double rho);

}  // namespace shieldflow
