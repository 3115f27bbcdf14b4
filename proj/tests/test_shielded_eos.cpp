#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "shieldflow/pressure_law.hpp"
#include "shieldflow/shielded_eos.hpp"

using namespace shieldflow;

namespace {

// Independent check path for the internal energy: closed-form shielded
// pressure for kappa=1, gamma=2 plus composite Simpson, nothing shared with
// the library quadrature.
double simpson_internal_energy_sq(double delta, double rho_hat, int panels) {
  auto ptilde = [&](double rho) {
    return rho * rho - 3.0 * delta * delta +
           2.0 * delta * delta * delta / rho;
  };
  auto f = [&](double s) {
    if (s == 0.0) {
      // limit of Ptilde(delta + s)/s^2: half the boundary curvature
      return 0.5 * (2.0 + 4.0 * delta / delta);
    }
    return ptilde(delta + s) / (s * s);
  };
  const double h = rho_hat / (2.0 * panels);
  double acc = f(0.0) + f(rho_hat);
  for (int i = 1; i < 2 * panels; ++i) acc += f(i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

}  // namespace

TEST_CASE("stiffness and shielded pressure closed forms, kappa=1 gamma=2") {
  const ShieldedEos eos(make_polytropic(1.0, 2.0), 0.5);
  // g = rho^2 P' = 2 rho^3
  CHECK(eos.stiffness(0.5) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(eos.stiffness_shift() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(eos.stiffness_shielded(1.0) == doctest::Approx(1.75).epsilon(1e-15));

  // Ptilde = rho^2 - 3 delta^2 + 2 delta^3 / rho
  const double d = 0.5;
  for (double rho : {0.5, 0.6, 1.0, 2.0, 7.5}) {
    const double expect = rho * rho - 3.0 * d * d + 2.0 * d * d * d / rho;
    CHECK(eos.pressure(rho) == doctest::Approx(expect).epsilon(1e-13));
  }
  CHECK(eos.pressure(1.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(eos.pressure(0.5) == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));

  // Quadrature route agrees with the antiderivative route.
  for (double rho : {0.50001, 0.7, 1.3, 4.0}) {
    CHECK(eos.pressure_quad(rho) ==
          doctest::Approx(eos.pressure(rho)).epsilon(1e-10));
  }
}

TEST_CASE("sound speed vanishes bitwise at the shield") {
  for (double gamma : {1.4, 2.0, 3.0}) {
    for (double delta : {1e-3, 0.1, 0.5}) {
      const ShieldedEos eos(make_polytropic(1.0, gamma), delta);
      CHECK(eos.sound_speed_sq(delta) == 0.0);  // exact, same-expression cancellation
      CHECK(eos.sound_speed(delta) == 0.0);
    }
  }
  const ShieldedEos eos(make_polytropic(1.0, 2.0), 0.5);
  CHECK(eos.sound_speed_sq(1.0) == doctest::Approx(1.75).epsilon(1e-15));
  CHECK(eos.pressure_d1(1.0) == doctest::Approx(1.75).epsilon(1e-15));
  // Ptilde'' = P'' + 2 g(delta)/rho^3
  CHECK(eos.pressure_d2(1.0) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(eos.boundary_curvature() == doctest::Approx(6.0).epsilon(1e-14));
}

TEST_CASE("convexity combination is inherited exactly from the base law") {
  std::vector<ShieldedEos> cases;
  for (double gamma : {1.4, 2.0, 3.0}) {
    cases.emplace_back(make_polytropic(1.0, gamma), 0.1);
  }
  cases.emplace_back(make_crossover(1.0, 1.5, 0.4), 0.25);
  for (const auto& eos : cases) {
    const double d = eos.delta();
    for (int i = 0; i <= 200; ++i) {
      const double rho = d * (1.0 + 1e-6) * std::pow(1e3 / d, i / 200.0);
      const double base = eos.convexity_gap_base(rho);
      CHECK(std::abs(eos.convexity_residual(rho)) <= 1e-12 * base);
      CHECK(eos.convexity_gap(rho) == doctest::Approx(base).epsilon(1e-12));
    }
  }
}

TEST_CASE("degeneracy index: 1/2 at the shield, (gamma-1)/2 unshielded") {
  const ShieldedEos eos(make_polytropic(1.0, 2.0), 0.5);
  CHECK(eos.epd_index_effective(1.0) ==
        doctest::Approx(0.35714285714285715).epsilon(1e-13));
  CHECK(eos.epd_index_effective(0.5 * (1.0 + 1e-7)) ==
        doctest::Approx(0.5).epsilon(1e-4));

  for (double gamma : {1.4, 2.0, 3.0}) {
    const ShieldedEos bare(make_polytropic(0.7, gamma), 0.0);
    for (double rho : {0.2, 1.0, 5.0}) {
      CHECK(bare.epd_index_effective(rho) ==
            doctest::Approx(0.5 * (gamma - 1.0)).epsilon(1e-12));
    }
  }

  // physical-variable index blows up at the shield instead of stabilizing
  const double near = 0.5 * (1.0 + 1e-6);
  CHECK(eos.epd_index_physical(near) > 1e4);
  CHECK_THROWS_AS(eos.epd_index_effective(0.5), std::domain_error);
}

TEST_CASE("invariant dissipation coefficient is positive and matches hand value") {
  const ShieldedEos eos(make_polytropic(1.0, 2.0), 0.5);
  // ctilde(1) = sqrt(7)/2, ctilde' = Ptilde''/(2 ctilde)
  const double c = std::sqrt(1.75);
  const double cp = 2.5 / (2.0 * c);
  const double expect = (cp * 0.5 + c) / 0.25;
  CHECK(eos.dissipation_coeff(1.0) == doctest::Approx(expect).epsilon(1e-13));
  CHECK(expect == doctest::Approx(7.181324987175318).epsilon(1e-12));
  for (double rho : {0.51, 0.8, 2.0, 20.0}) {
    CHECK(eos.dissipation_coeff(rho) > 0.0);
  }
}

TEST_CASE("internal energy of the effective density") {
  const ShieldedEos eos(make_polytropic(1.0, 2.0), 0.5);
  // rho_hat = 0.5: exact value 1/2 + log 2
  CHECK(eos.internal_energy(0.5) ==
        doctest::Approx(1.1931471805599453).epsilon(1e-12));
  CHECK(eos.internal_energy(0.0) == 0.0);
  CHECK(eos.internal_energy(0.5) ==
        doctest::Approx(simpson_internal_energy_sq(0.5, 0.5, 4000)).epsilon(1e-10));

  // Far below delta the integrand is flat at Ptilde''(delta)/2 = 3.
  CHECK(eos.internal_energy(1e-9) == doctest::Approx(3e-9).epsilon(1e-6));

  const ShieldedEos bare(make_polytropic(1.0, 2.0), 0.0);
  for (double rh : {0.25, 1.0, 3.0}) {
    CHECK(bare.internal_energy(rh) == doctest::Approx(rh).epsilon(1e-12));
  }

  const ShieldedEos cross(make_crossover(1.0, 1.5, 0.4), 0.05);
  CHECK(cross.internal_energy(0.7) ==
        doctest::Approx(1.8282615451860006).epsilon(1e-11));
}

TEST_CASE("doubled-shield comparison construction, kappa=1 gamma=2") {
  auto law = make_polytropic(1.0, 2.0);
  const double d = 0.1;
  // P1 = (rho - 2 delta)^2 for this law
  CHECK(lu_pressure(*law, d, 0.4) == doctest::Approx(0.04).epsilon(1e-11));
  CHECK(lu_pressure(*law, d, 0.2) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  // pollution indicator 6 rho - 20 delta
  CHECK(lu_pollution(*law, d, 0.4) == doctest::Approx(0.4).epsilon(1e-13));
  CHECK(lu_pollution(*law, d, 0.25) == doctest::Approx(-0.5).epsilon(1e-13));
  CHECK(lu_pollution(*law, d, 10.0 * d / 3.0) ==
        doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(lu_pollution(*law, d, 0.21) < 0.0);
  CHECK(lu_pollution(*law, d, 0.34) > 0.0);
}

TEST_CASE("growth ratio of the base law") {
  auto law = make_polytropic(1.0, 2.0);
  CHECK(growth_ratio(*law, 2.0) == doctest::Approx(2.0).epsilon(1e-13));
  for (double rho : {0.1, 0.5, 1.0, 4.0}) {
    CHECK(growth_ratio(*law, rho) ==
          doctest::Approx(std::sqrt(2.0 * rho)).epsilon(1e-12));
  }
}

TEST_CASE("constructor and domain guards") {
  CHECK_THROWS_AS(ShieldedEos(nullptr, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(ShieldedEos(make_polytropic(1.0, 2.0), -0.1),
                  std::domain_error);
  const ShieldedEos eos(make_polytropic(1.0, 2.0), 0.5);
  CHECK_THROWS_AS(eos.pressure(0.4), std::domain_error);
  CHECK_THROWS_AS(eos.internal_energy(-1.0), std::domain_error);
  const ShieldedEos bare(make_polytropic(1.0, 2.0), 0.0);
  CHECK_THROWS_AS(bare.boundary_curvature(), std::domain_error);
}
