#include "shieldflow/pressure_law.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace shieldflow {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

[[noreturn]] void fail(const char* tag, const std::string& detail) {
  throw std::domain_error(std::string("pressure law violates ") + tag + ": " +
                          detail);
}

}  // namespace

PolytropicLaw::PolytropicLaw(double kappa, double gamma)
    : kappa_(kappa), gamma_(gamma) {}

double PolytropicLaw::value(double rho) const {
  return kappa_ * std::pow(rho, gamma_);
}

double PolytropicLaw::d1(double rho) const {
  return kappa_ * gamma_ * std::pow(rho, gamma_ - 1.0);
}

double PolytropicLaw::d2(double rho) const {
  return kappa_ * gamma_ * (gamma_ - 1.0) * std::pow(rho, gamma_ - 2.0);
}

std::string PolytropicLaw::label() const {
  return "polytropic(kappa=" + fmt(kappa_) + ",gamma=" + fmt(gamma_) + ")";
}

CrossoverLaw::CrossoverLaw(double kappa, double gamma, double beta)
    : kappa_(kappa), gamma_(gamma), beta_(beta) {}

double CrossoverLaw::value(double rho) const {
  const double m = 1.0 + beta_ * rho / (1.0 + rho);
  return kappa_ * std::pow(rho, gamma_) * m;
}

double CrossoverLaw::d1(double rho) const {
  const double m = 1.0 + beta_ * rho / (1.0 + rho);
  const double m1 = beta_ / ((1.0 + rho) * (1.0 + rho));
  return kappa_ * (gamma_ * std::pow(rho, gamma_ - 1.0) * m +
                   std::pow(rho, gamma_) * m1);
}

double CrossoverLaw::d2(double rho) const {
  const double op = 1.0 + rho;
  const double m = 1.0 + beta_ * rho / op;
  const double m1 = beta_ / (op * op);
  const double m2 = -2.0 * beta_ / (op * op * op);
  return kappa_ * (gamma_ * (gamma_ - 1.0) * std::pow(rho, gamma_ - 2.0) * m +
                   2.0 * gamma_ * std::pow(rho, gamma_ - 1.0) * m1 +
                   std::pow(rho, gamma_) * m2);
}

std::string CrossoverLaw::label() const {
  return "crossover(kappa=" + fmt(kappa_) + ",gamma=" + fmt(gamma_) +
         ",beta=" + fmt(beta_) + ")";
}

void validate_law(const PressureLaw& law) {
  const double gamma = law.gamma_asym();
  const double k0 = law.kappa0();
  const double ki = law.kappa_inf();
  if (!(gamma > 1.0))
    fail("(A3)", "requires gamma > 1, got gamma=" + fmt(gamma));
  if (!(k0 > 0.0) || !std::isfinite(k0) || !(ki > 0.0) || !std::isfinite(ki))
    fail("(A3)", "kappa0/kappa_inf must be finite and positive");

  constexpr double lo = 1e-8, hi = 1e8;
  constexpr int per_decade = 64;
  const int decades = 16;
  const int npts = decades * per_decade;
  for (int i = 0; i <= npts; ++i) {
    const double rho =
        lo * std::pow(hi / lo, static_cast<double>(i) / npts);
    const double p = law.value(rho);
    const double p1 = law.d1(rho);
    const double p2 = law.d2(rho);
    if (!std::isfinite(p) || !std::isfinite(p1) || !std::isfinite(p2))
      fail("(A1)", "non-finite value at rho=" + fmt(rho));
    if (!(p1 > 0.0)) fail("(A1)", "P' <= 0 at rho=" + fmt(rho));
    if (!(2.0 * p1 + rho * p2 > 0.0))
      fail("(A2)", "2P' + rho P'' <= 0 at rho=" + fmt(rho));
  }
  // declared asymptotic coefficients must hold at the grid ends
  const double r0 = law.value(lo) / std::pow(lo, gamma);
  const double ri = law.value(hi) / std::pow(hi, gamma);
  if (!(std::fabs(r0 - k0) <= 1e-3 * k0))
    fail("(A3)", "P/rho^gamma = " + fmt(r0) + " at rho=1e-8, declared kappa0=" +
                     fmt(k0));
  if (!(std::fabs(ri - ki) <= 1e-3 * ki))
    fail("(A3)", "P/rho^gamma = " + fmt(ri) +
                     " at rho=1e8, declared kappa_inf=" + fmt(ki));
}

std::shared_ptr<const PressureLaw> make_polytropic(double kappa, double gamma) {
  auto law = std::make_shared<PolytropicLaw>(kappa, gamma);
  validate_law(*law);
  return law;
}

std::shared_ptr<const PressureLaw> make_crossover(double kappa, double gamma,
                                                  double beta) {
  if (beta < 0.0)
    throw std::domain_error("crossover law requires beta >= 0");
  auto law = std::make_shared<CrossoverLaw>(kappa, gamma, beta);
  validate_law(*law);
  return law;
}

}  // namespace shieldflow
