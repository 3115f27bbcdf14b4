#include "shieldflow/shielded_eos.hpp"

#include <cmath>
#include <stdexcept>

#include "shieldflow/quadrature.hpp"

namespace shieldflow {

namespace {

void require_at_least(double rho, double lo, const char* what) {
  if (!(rho >= lo))
    throw std::domain_error(std::string(what) + ": rho below domain");
}

}  // namespace

ShieldedEos::ShieldedEos(std::shared_ptr<const PressureLaw> law, double delta)
    : law_(std::move(law)), delta_(delta) {
  if (!law_) throw std::invalid_argument("ShieldedEos: null pressure law");
  validate_law(*law_);
  if (!(delta_ >= 0.0) || !std::isfinite(delta_))
    throw std::domain_error("ShieldedEos: delta must be finite and >= 0");
  g_delta_ = (delta_ > 0.0) ? delta_ * delta_ * law_->d1(delta_) : 0.0;
}

double ShieldedEos::stiffness(double rho) const {
  return rho * rho * law_->d1(rho);
}

double ShieldedEos::stiffness_shielded(double rho) const {
  require_at_least(rho, delta_, "stiffness_shielded");
  return stiffness(rho) - g_delta_;
}

double ShieldedEos::pressure(double rho) const {
  require_at_least(rho, delta_, "pressure");
  if (delta_ == 0.0) return law_->value(rho);
  return (law_->value(rho) - law_->value(delta_)) +
         g_delta_ * (1.0 / rho - 1.0 / delta_);
}

double ShieldedEos::pressure_quad(double rho, double rel_tol) const {
  require_at_least(rho, delta_, "pressure_quad");
  const auto r = integrate(
      [this](double s) { return sound_speed_sq(s); }, delta_, rho, rel_tol,
      1e-15 * (std::fabs(g_delta_) / (delta_ > 0 ? delta_ : 1.0) + 1e-300));
  return r.value;
}

double ShieldedEos::sound_speed_sq(double rho) const {
  require_at_least(rho, delta_, "sound_speed_sq");
  return (stiffness(rho) - g_delta_) / (rho * rho);
}

double ShieldedEos::sound_speed(double rho) const {
  const double c2 = sound_speed_sq(rho);
  return c2 > 0.0 ? std::sqrt(c2) : 0.0;
}

double ShieldedEos::pressure_d2(double rho) const {
  require_at_least(rho, delta_, "pressure_d2");
  return law_->d2(rho) + 2.0 * g_delta_ / (rho * rho * rho);
}

double ShieldedEos::convexity_gap(double rho) const {
  return 2.0 * pressure_d1(rho) + rho * pressure_d2(rho);
}

double ShieldedEos::convexity_gap_base(double rho) const {
  return 2.0 * law_->d1(rho) + rho * law_->d2(rho);
}

double ShieldedEos::convexity_residual(double rho) const {
  return convexity_gap(rho) - convexity_gap_base(rho);
}

double ShieldedEos::epd_index_effective(double rho) const {
  if (!(rho > delta_))
    throw std::domain_error("epd_index_effective: requires rho > delta");
  return (rho - delta_) * pressure_d2(rho) / (2.0 * sound_speed_sq(rho));
}

double ShieldedEos::epd_index_physical(double rho) const {
  if (!(rho > delta_))
    throw std::domain_error("epd_index_physical: requires rho > delta");
  return rho * pressure_d2(rho) / (2.0 * sound_speed_sq(rho));
}

double ShieldedEos::dissipation_coeff(double rho) const {
  if (!(rho > delta_))
    throw std::domain_error("dissipation_coeff: requires rho > delta");
  const double c = sound_speed(rho);
  const double c1 = pressure_d2(rho) / (2.0 * c);
  const double rh = rho - delta_;
  return (c1 * rh + c) / (rh * rh);
}

double ShieldedEos::boundary_curvature() const {
  if (delta_ == 0.0)
    throw std::domain_error("boundary_curvature: undefined at delta = 0");
  return law_->d2(delta_) + 2.0 * law_->d1(delta_) / delta_;
}

double ShieldedEos::internal_energy(double rho_hat, double rel_tol) const {
  if (!(rho_hat >= 0.0))
    throw std::domain_error("internal_energy: rho_hat must be >= 0");
  if (rho_hat == 0.0) return 0.0;

  if (delta_ > 0.0) {
    const double pt2 = boundary_curvature();
    const double patch = 1e-8 * delta_;
    const auto r = integrate(
        [&](double s) {
          const double tail = 1.0 - s / rho_hat;
          if (s < patch) return pt2 * tail;
          return sound_speed_sq(delta_ + s) / s * tail;
        },
        0.0, rho_hat, rel_tol);
    return r.value;
  }

  // delta = 0: P'(r)/r ~ kappa0 gamma r^{gamma-2} near zero; integrate the
  // leading power exactly and quadrature only the smooth remainder.
  const double gamma = law_->gamma_asym();
  const double k0g = law_->kappa0() * gamma;
  const double a = std::min(rho_hat, 0.0625);
  const double head = k0g * std::pow(a, gamma - 1.0) / (gamma - 1.0);
  const auto corr = integrate(
      [&](double r) {
        return (law_->d1(r) - k0g * std::pow(r, gamma - 1.0)) / r;
      },
      0.0, a, rel_tol, 1e-15 * (head + 1.0));
  double tail = 0.0;
  if (rho_hat > a) {
    tail = integrate([&](double r) { return law_->d1(r) / r; }, a, rho_hat,
                     rel_tol)
               .value;
  }
  return head + corr.value + tail - law_->value(rho_hat) / rho_hat;
}

double lu_pressure(const PressureLaw& law, double delta, double rho,
                   double rel_tol) {
  if (!(delta >= 0.0)) throw std::domain_error("lu_pressure: delta < 0");
  if (!(rho >= 2.0 * delta))
    throw std::domain_error("lu_pressure: requires rho >= 2 delta");
  if (rho == 2.0 * delta) return 0.0;
  const auto r = integrate(
      [&](double s) { return (s - 2.0 * delta) / s * law.d1(s); }, 2.0 * delta,
      rho, rel_tol);
  return r.value;
}

double lu_pollution(const PressureLaw& law, double delta, double rho) {
  if (!(rho > 0.0)) throw std::domain_error("lu_pollution: rho <= 0");
  const double p1 = law.d1(rho);
  const double p2 = law.d2(rho);
  const double q = 2.0 * delta / rho;
  return (1.0 - q) * (2.0 * p1 + rho * p2) - q * (p1 + rho * p2);
}

double growth_ratio(const PressureLaw& law, double rho) {
  const double p1 = law.d1(rho);
  const double denom = rho * law.d2(rho);
  if (denom == 0.0) return std::nan("");
  return std::pow(p1, 1.5) / denom;
}

}  // namespace shieldflow
