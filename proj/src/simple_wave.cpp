#include "shieldflow/simple_wave.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace shieldflow {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

SimpleWave::SimpleWave(InvariantMap map, double z_const, double w_base,
                       double amp, double wavelength)
    : map_(std::move(map)),
      z_(z_const),
      w_base_(w_base),
      amp_(amp),
      wavelength_(wavelength) {
  if (!(amp >= 0.0) || !(wavelength > 0.0)) {
    throw std::invalid_argument("SimpleWave: need amp >= 0, wavelength > 0");
  }
  if (!(w_base - amp > z_const)) {
    throw std::invalid_argument(
        "SimpleWave: w must stay strictly above z (state would touch the "
        "shield)");
  }

  lam_lo_ = std::numeric_limits<double>::infinity();
  lam_hi_ = -lam_lo_;
  const int m = 257;
  for (int i = 0; i < m; ++i) {
    const double w = w_base - amp + 2.0 * amp * i / (m - 1);
    const double lam = lambda2(w);
    lam_lo_ = std::min(lam_lo_, lam);
    lam_hi_ = std::max(lam_hi_, lam);
    if (amp == 0.0) break;
  }

  // First crossing of characteristics: t_b = min over xi of -1/(d lambda/d xi)
  // where the slope is negative. One wavelength covers all slopes.
  t_break_ = std::numeric_limits<double>::infinity();
  if (amp > 0.0) {
    const int nscan = 1024;
    for (int i = 0; i < nscan; ++i) {
      const double xi = wavelength_ * (i + 0.5) / nscan;
      const double slope = dlambda2(w0(xi)) * dw0(xi);
      if (slope < 0.0) t_break_ = std::min(t_break_, -1.0 / slope);
    }
  }
}

double SimpleWave::w0(double xi) const {
  return w_base_ + amp_ * std::sin(kTwoPi * xi / wavelength_);
}

double SimpleWave::dw0(double xi) const {
  const double k = kTwoPi / wavelength_;
  return amp_ * k * std::cos(k * xi);
}

double SimpleWave::lambda2(double w) const {
  const PrimState ps = map_.from_invariants(z_, w);
  return ps.u + map_.eos().sound_speed(ps.rho);
}

double SimpleWave::dlambda2(double w) const {
  const PrimState ps = map_.from_invariants(z_, w);
  const ShieldedEos& eos = map_.eos();
  const double c2 = eos.sound_speed_sq(ps.rho);
  // d lambda2 / dw = 1/2 + P''_shielded * (rho - delta) / (4 c^2)
  return 0.5 + eos.pressure_d2(ps.rho) * (ps.rho - eos.delta()) / (4.0 * c2);
}

PrimState SimpleWave::primitive(double x, double t) const {
  if (!(t >= 0.0)) throw std::domain_error("SimpleWave: t must be >= 0");
  if (std::isfinite(t_break_) && t > 0.9 * t_break_) {
    throw std::domain_error("SimpleWave: t past the breaking-time guard");
  }

  double lo = x - lam_hi_ * t - 1e-12;
  double hi = x - lam_lo_ * t + 1e-12;
  double xi = 0.5 * (lo + hi);
  // F(xi) = xi + lambda2(w0(xi)) t - x is strictly increasing before breaking.
  for (int it = 0; it < 80; ++it) {
    const double f = xi + lambda2(w0(xi)) * t - x;
    if (f > 0.0) {
      hi = xi;
    } else {
      lo = xi;
    }
    const double fp = 1.0 + dlambda2(w0(xi)) * dw0(xi) * t;
    double next = fp > 0.0 ? xi - f / fp : 0.5 * (lo + hi);
    if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
    const double move = std::abs(next - xi);
    xi = next;
    if (std::abs(f) < 1e-13 * std::max(1.0, std::abs(x)) &&
        move < 1e-13 * std::max(1.0, std::abs(xi))) {
      break;
    }
  }
  return map_.from_invariants(z_, w0(xi));
}

FieldSample SimpleWave::state(double x, double t) const {
  const PrimState ps = primitive(x, t);
  const double rho_hat = ps.rho - map_.eos().delta();
  return {rho_hat, rho_hat * ps.u};
}

ForcedOscillation::ForcedOscillation(ShieldedEos eos, double r0, double r_amp,
                                     double m0, double m_amp, double k,
                                     double omega)
    : eos_(std::move(eos)),
      r0_(r0),
      r_amp_(r_amp),
      m0_(m0),
      m_amp_(m_amp),
      k_(k),
      omega_(omega) {
  if (!(r0 - std::abs(r_amp) > 0.0)) {
    throw std::invalid_argument(
        "ForcedOscillation: rho_hat would touch zero (need r0 > |r_amp|)");
  }
}

FieldSample ForcedOscillation::state(double x, double t) const {
  const double phi = k_ * x - omega_ * t;
  return {r0_ + r_amp_ * std::sin(phi), m0_ + m_amp_ * std::cos(phi)};
}

std::array<double, 2> ForcedOscillation::forcing(double x, double t) const {
  const double phi = k_ * x - omega_ * t;
  const double s = std::sin(phi), c = std::cos(phi);
  const double rh = r0_ + r_amp_ * s;
  const double mh = m0_ + m_amp_ * c;
  const double u = mh / rh;

  const double rh_t = -omega_ * r_amp_ * c;
  const double rh_x = k_ * r_amp_ * c;
  const double mh_t = omega_ * m_amp_ * s;
  const double mh_x = -k_ * m_amp_ * s;

  const double s1 = rh_t + mh_x;
  const double conv_x = 2.0 * u * mh_x - u * u * rh_x;
  const double p_x = eos_.sound_speed_sq(rh + eos_.delta()) * rh_x;
  const double s2 = mh_t + conv_x + p_x;
  return {s1, s2};
}

}  // namespace shieldflow
