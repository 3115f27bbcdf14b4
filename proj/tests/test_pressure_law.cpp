#include <cmath>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "shieldflow/pressure_law.hpp"

using namespace shieldflow;

TEST_CASE("polytropic law evaluates value and derivatives") {
  auto law = make_polytropic(1.0, 2.0);
  CHECK(law->value(3.0) == doctest::Approx(9.0).epsilon(1e-15));
  CHECK(law->d1(3.0) == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(law->d2(3.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(law->gamma_asym() == 2.0);
  CHECK(law->kappa0() == 1.0);
  CHECK(law->kappa_inf() == 1.0);

  auto law14 = make_polytropic(0.7, 1.4);
  const double rho = 1.83;
  CHECK(law14->value(rho) == doctest::Approx(0.7 * std::pow(rho, 1.4)).epsilon(1e-14));
  CHECK(law14->d1(rho) ==
        doctest::Approx(0.7 * 1.4 * std::pow(rho, 0.4)).epsilon(1e-14));
  CHECK(law14->d2(rho) ==
        doctest::Approx(0.7 * 1.4 * 0.4 * std::pow(rho, -0.6)).epsilon(1e-14));
}

TEST_CASE("crossover law matches its closed form and limits") {
  const double kappa = 0.9, gamma = 1.5, beta = 0.4;
  auto law = make_crossover(kappa, gamma, beta);
  const double rho = 2.3;
  const double expect = kappa * std::pow(rho, gamma) * (1.0 + beta * rho / (1.0 + rho));
  CHECK(law->value(rho) == doctest::Approx(expect).epsilon(1e-14));

  // Derivatives agree with central differences away from zero. h is chosen
  // so truncation and roundoff both sit near 1e-8 for the second difference.
  const double h = 1e-4;
  const double d1_fd = (law->value(rho + h) - law->value(rho - h)) / (2.0 * h);
  const double d2_fd =
      (law->value(rho + h) - 2.0 * law->value(rho) + law->value(rho - h)) / (h * h);
  CHECK(law->d1(rho) == doctest::Approx(d1_fd).epsilon(1e-7));
  CHECK(law->d2(rho) == doctest::Approx(d2_fd).epsilon(1e-6));
  CHECK(law->d2(rho) == doctest::Approx(0.6496846245364247).epsilon(1e-13));

  CHECK(law->kappa0() == doctest::Approx(kappa));
  CHECK(law->kappa_inf() == doctest::Approx(kappa * (1.0 + beta)));
  // Coefficient really crosses over between the two plateaus.
  CHECK(law->value(1e-7) / std::pow(1e-7, gamma) == doctest::Approx(kappa).epsilon(1e-5));
  CHECK(law->value(1e7) / std::pow(1e7, gamma) ==
        doctest::Approx(kappa * (1.0 + beta)).epsilon(1e-5));
}

TEST_CASE("validation rejects laws breaking the structural assumptions") {
  CHECK_THROWS_AS(make_polytropic(1.0, 0.9), std::domain_error);
  CHECK_THROWS_AS(make_polytropic(1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(make_polytropic(-1.0, 2.0), std::domain_error);
  CHECK_THROWS_AS(make_polytropic(0.0, 2.0), std::domain_error);
  CHECK_THROWS_AS(make_crossover(1.0, 2.0, -0.5), std::domain_error);

  try {
    make_polytropic(1.0, 0.9);
    FAIL("expected a throw");
  } catch (const std::domain_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("(A3)") != std::string::npos);
    CHECK(msg.find("gamma") != std::string::npos);
  }
}

TEST_CASE("accepted laws pass the published assumption grid") {
  for (double gamma : {1.4, 2.0, 3.0}) {
    auto law = make_polytropic(1.0, gamma);
    CHECK_NOTHROW(validate_law(*law));
  }
  CHECK_NOTHROW(validate_law(*make_crossover(1.0, 1.5, 0.4)));
  CHECK(make_polytropic(1.0, 2.0)->label().find("polytropic") != std::string::npos);
  CHECK(make_crossover(1.0, 1.5, 0.4)->label().find("crossover") != std::string::npos);
}
