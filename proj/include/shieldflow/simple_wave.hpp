#pragma once

#include <array>

#include "shieldflow/entropy.hpp"
#include "shieldflow/invariants.hpp"

namespace shieldflow {

// Exact 2-simple wave: z is constant, w is transported at speed
// lambda2(w) = u + c_tilde(rho). With the initial profile
//   w(x, 0) = w_base + amp * sin(2 pi x / wavelength)
// the solution is w(x, t) = w0(xi) where xi solves
//   xi + lambda2(w0(xi)) * t = x,
// valid until characteristics cross. state() refuses t past 90% of the
// breaking time; tests stay below max_time() = half of it.
class SimpleWave {
 public:
  SimpleWave(InvariantMap map, double z_const, double w_base, double amp,
             double wavelength);

  double breaking_time() const { return t_break_; }
  double max_time() const { return 0.5 * t_break_; }

  FieldSample state(double x, double t) const;
  PrimState primitive(double x, double t) const;

 private:
  double w0(double xi) const;
  double dw0(double xi) const;
  double lambda2(double w) const;
  double dlambda2(double w) const;

  InvariantMap map_;
  double z_, w_base_, amp_, wavelength_;
  double t_break_ = 0.0;
  double lam_lo_ = 0.0, lam_hi_ = 0.0;  // speed range over the w interval
};

// Oscillatory manufactured field with analytic forcing for the effective
// system: plugging
//   rho_hat = r0 + r_amp * sin(k x - omega t)
//   m_hat   = m0 + m_amp * cos(k x - omega t)
// into mass/momentum equations leaves residuals S = (S_mass, S_momentum),
// returned exactly so tests can verify entropy production equals
// grad(eta) . S up to discretization error.
class ForcedOscillation {
 public:
  ForcedOscillation(ShieldedEos eos, double r0, double r_amp, double m0,
                    double m_amp, double k, double omega);

  FieldSample state(double x, double t) const;
  std::array<double, 2> forcing(double x, double t) const;
  const ShieldedEos& eos() const { return eos_; }

 private:
  ShieldedEos eos_;
  double r0_, r_amp_, m0_, m_amp_, k_, omega_;
};

}  // namespace shieldflow
