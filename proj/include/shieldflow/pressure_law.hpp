#pragma once

#include <memory>
#include <string>

namespace shieldflow {

// Barotropic pressure law P(rho) on rho > 0. Implementations are smooth,
// strictly increasing, satisfy genuine-nonlinearity 2P' + rho P'' > 0, and
// behave like kappa0 * rho^gamma near vacuum and kappa_inf * rho^gamma for
// large rho with the same gamma > 1. Those assumptions are enforced by
// validate() on a fixed log grid; factories call it before returning.
class PressureLaw {
 public:
  virtual ~PressureLaw() = default;

  virtual double value(double rho) const = 0;  // P
  virtual double d1(double rho) const = 0;     // P'
  virtual double d2(double rho) const = 0;     // P''

  virtual double gamma_asym() const = 0;
  virtual double kappa0() const = 0;
  virtual double kappa_inf() const = 0;
  virtual std::string label() const = 0;
};

// P = kappa * rho^gamma.
class PolytropicLaw final : public PressureLaw {
 public:
  PolytropicLaw(double kappa, double gamma);
  double value(double rho) const override;
  double d1(double rho) const override;
  double d2(double rho) const override;
  double gamma_asym() const override { return gamma_; }
  double kappa0() const override { return kappa_; }
  double kappa_inf() const override { return kappa_; }
  std::string label() const override;

 private:
  double kappa_, gamma_;
};

// P = kappa * rho^gamma * (1 + beta * rho / (1 + rho)): the pressure
// coefficient crosses over from kappa at vacuum to kappa*(1+beta) at
// infinity with a fixed exponent. beta >= 0 small keeps convexity.
class CrossoverLaw final : public PressureLaw {
 public:
  CrossoverLaw(double kappa, double gamma, double beta);
  double value(double rho) const override;
  double d1(double rho) const override;
  double d2(double rho) const override;
  double gamma_asym() const override { return gamma_; }
  double kappa0() const override { return kappa_; }
  double kappa_inf() const override { return kappa_ * (1.0 + beta_); }
  std::string label() const override;

 private:
  double kappa_, gamma_, beta_;
};

// Checks the structural assumptions on the fixed grid
// rho in [1e-8, 1e8], 64 points per decade. Throws std::domain_error naming
// the violated assumption:
//   (A1) P' > 0, (A2) 2P' + rho P'' > 0,
//   (A3) gamma > 1 and P/rho^gamma -> kappa0, kappa_inf at the grid ends.
void validate_law(const PressureLaw& law);

// Factories validate before returning.
std::shared_ptr<const PressureLaw> make_polytropic(double kappa, double gamma);
std::shared_ptr<const PressureLaw> make_crossover(double kappa, double gamma,
                                                  double beta);

}  // namespace shieldflow
