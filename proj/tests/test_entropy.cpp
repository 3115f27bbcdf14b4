#include <array>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "shieldflow/entropy.hpp"
#include "shieldflow/invariants.hpp"
#include "shieldflow/scenario.hpp"
#include "shieldflow/simple_wave.hpp"
#include "shieldflow/solver.hpp"

using namespace shieldflow;

namespace {

const ShieldedEos& ref_eos() {
  static const ShieldedEos eos(make_polytropic(1.0, 2.0), 0.5);
  return eos;
}

}  // namespace

TEST_CASE("mechanical entropy pair at a hand-computed state") {
  // rho_hat = 0.5, m_hat = 0.5 (so u = 1) under kappa=1, gamma=2, delta=0.5:
  // e_hat = 1/2 + log 2, Ptilde(1) = 1/2, ctilde^2(1) = 7/4.
  const EntropyEval e = mechanical_entropy(ref_eos(), 0.5, 0.5);
  CHECK(e.eta == doctest::Approx(0.8465735902799727).epsilon(1e-12));
  CHECK(e.q == doctest::Approx(1.3465735902799727).epsilon(1e-12));
  CHECK(e.grad_rho == doctest::Approx(1.6931471805599453).epsilon(1e-12));
  CHECK(e.grad_m == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(e.hess_rr == doctest::Approx((1.0 + 1.75) / 0.5).epsilon(1e-12));
  CHECK(e.hess_rm == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(e.hess_mm == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(e.hess_det == doctest::Approx(7.0).epsilon(1e-12));
  // det identity ctilde^2 / rho_hat^2 holds at other states too
  const EntropyEval e2 = mechanical_entropy(ref_eos(), 1.3, -0.7);
  CHECK(e2.hess_det ==
        doctest::Approx(ref_eos().sound_speed_sq(1.8) / (1.3 * 1.3)).epsilon(1e-12));
}

TEST_CASE("entropy gradient and hessian agree with finite differences") {
  const double h = 5e-3;
  auto eta = [&](double r, double m) {
    return mechanical_entropy(ref_eos(), r, m).eta;
  };
  for (const auto& [r, m] : std::vector<std::array<double, 2>>{
           {0.5, 0.5}, {0.9, -0.4}, {1.7, 1.2}, {0.25, 0.0}}) {
    const EntropyEval e = mechanical_entropy(ref_eos(), r, m);
    const double gr = (eta(r + h, m) - eta(r - h, m)) / (2.0 * h);
    const double gm = (eta(r, m + h) - eta(r, m - h)) / (2.0 * h);
    CHECK(e.grad_rho == doctest::Approx(gr).epsilon(1e-4));
    CHECK(e.grad_m == doctest::Approx(gm).epsilon(1e-4));

    const double hrr =
        (-eta(r + 2 * h, m) + 16 * eta(r + h, m) - 30 * eta(r, m) +
         16 * eta(r - h, m) - eta(r - 2 * h, m)) /
        (12 * h * h);
    const double hmm =
        (-eta(r, m + 2 * h) + 16 * eta(r, m + h) - 30 * eta(r, m) +
         16 * eta(r, m - h) - eta(r, m - 2 * h)) /
        (12 * h * h);
    const double hrm = (eta(r + h, m + h) - eta(r + h, m - h) -
                        eta(r - h, m + h) + eta(r - h, m - h)) /
                       (4 * h * h);
    const double scale = std::abs(e.hess_rr) + std::abs(e.hess_mm) + 1.0;
    CHECK(std::abs(e.hess_rr - hrr) / scale < 1e-6);
    CHECK(std::abs(e.hess_mm - hmm) / scale < 1e-6);
    CHECK(std::abs(e.hess_rm - hrm) / scale < 5e-5);
    // convexity of the pair on the admissible set
    CHECK(e.hess_rr > 0.0);
    CHECK(e.hess_det > 0.0);
  }
}

TEST_CASE("internal energy table matches direct integration") {
  const InternalEnergyMap emap(ref_eos(), 3.0);
  // inside the table: documented interpolation accuracy
  for (double rh : {0.01, 0.1, 0.5, 1.0, 2.5}) {
    CHECK(emap(rh) ==
          doctest::Approx(ref_eos().internal_energy(rh)).epsilon(1e-7));
  }
  // below the first node and beyond the table end the map is exact: both
  // routes delegate to the defining integral
  for (double rh : {1e-9, 1e-6, 1e-4, 4.5}) {
    CHECK(emap(rh) ==
          doctest::Approx(ref_eos().internal_energy(rh)).epsilon(1e-12));
  }
  // eta/flux through the table agree with the direct pair
  const EntropyEval direct = mechanical_entropy(ref_eos(), 0.5, 0.5);
  CHECK(emap.eta(0.5, 0.5) == doctest::Approx(direct.eta).epsilon(1e-7));
  CHECK(emap.flux(0.5, 0.5) == doctest::Approx(direct.q).epsilon(1e-7));
}

TEST_CASE("entropy residual of an exact simple wave vanishes at order two") {
  const ShieldedEos eos(make_polytropic(1.0, 2.0), 0.1);
  InvariantMap map(eos, 6.0);
  const SimpleWave wave(map, -3.0, 3.2, 0.1, 1.0);
  REQUIRE(wave.breaking_time() > 0.0);
  const double t0 = 0.25 * wave.max_time();

  auto field = [&](double x, double t) { return wave.state(x, t); };
  std::vector<double> res;
  for (double h : {0.02, 0.01, 0.005}) {
    res.push_back(entropy_residual_l1(eos, field, -0.5, 0.5, t0, h));
  }
  CHECK(res[0] > res[1]);
  CHECK(res[1] > res[2]);
  const double order1 = std::log2(res[0] / res[1]);
  const double order2 = std::log2(res[1] / res[2]);
  CHECK(order1 >= 1.8);
  CHECK(order2 >= 1.8);
  CHECK(res[2] < 1e-4);
}

TEST_CASE("forced oscillation residual equals the projected forcing") {
  const ShieldedEos eos(make_polytropic(1.0, 2.0), 0.1);
  const ForcedOscillation osc(eos, 1.0, 0.3, 0.2, 0.15, 4.0, 3.0);
  auto field = [&](double x, double t) { return osc.state(x, t); };
  auto forcing = [&](double x, double t) { return osc.forcing(x, t); };

  // without crediting the forcing the balance is order-one violated
  const double raw = entropy_residual_l1(eos, field, 0.0, 1.0, 0.3, 0.01);
  CHECK(raw > 0.1);

  std::vector<double> res;
  for (double h : {0.02, 0.01, 0.005}) {
    res.push_back(forced_entropy_residual_l1(eos, field, forcing, 0.0, 1.0, 0.3, h));
  }
  CHECK(res[2] < 0.01 * raw);
  CHECK(std::log2(res[0] / res[1]) >= 1.8);
  CHECK(std::log2(res[1] / res[2]) >= 1.8);
}

TEST_CASE("discrete entropy budget of a dissipative run stays controlled") {
  ScenarioSpec spec = scenario_preset("smooth_periodic");
  spec.n = 128;
  spec.t_final = 0.05;
  spec.snapshot_interval = 0.01;
  const ShieldedEos eos = make_eos(spec);
  GridState g = initial_state(spec);
  const double x0 = g.x0, dx = g.dx;
  const RunResult rr = run(eos, std::move(g), spec.scheme, spec.t_final,
                           spec.snapshot_interval);
  REQUIRE_FALSE(rr.aborted);
  REQUIRE(rr.snapshots.size() >= 3);

  const InternalEnergyMap emap(eos, 6.0);
  const BudgetReport rep = entropy_budget(rr.snapshots, emap, x0, dx);
  CHECK_FALSE(rep.rows.empty());
  // net production must be nonpositive up to discretization noise, and the
  // positive overshoots must be small against the dissipation scales
  CHECK(rep.total < 0.0);
  CHECK(rep.positive_excess >= 0.0);
  CHECK(rep.positive_excess <= 1.0 * (spec.scheme.epsilon + dx));
  // cumulative column is consistent with the per-cell column
  double acc = 0.0;
  for (const BudgetRow& row : rep.rows) {
    acc += row.cell_production;
  }
  CHECK(acc == doctest::Approx(rep.total).epsilon(1e-10));
}

TEST_CASE("entropy pair scaling exponents split by two near the shield") {
  const ShieldedEos eos(make_polytropic(1.0, 2.0), 0.5);
  const InvariantMap map(eos, 4.0);
  std::vector<double> rhos;
  for (int i = 0; i < 17; ++i) {
    rhos.push_back(0.5 * (1.0 + 1e-6 * std::pow(1e3, i / 16.0)));
  }
  const ScalingFit fit = wkb_scaling_fit(map, rhos, 1.0);
  REQUIRE(fit.valid);
  CHECK(fit.psi_fit.slope == doctest::Approx(4.0).epsilon(2e-3));
  CHECK(fit.eta_fit.slope == doctest::Approx(2.0).epsilon(3e-2));
  CHECK(fit.gap == doctest::Approx(2.0).epsilon(3e-2));
  CHECK(fit.sigma.size() == rhos.size());
}

TEST_CASE("scaling fit rejects degenerate inputs with a note") {
  const ShieldedEos eos(make_polytropic(1.0, 2.0), 0.5);
  const InvariantMap map(eos, 4.0);

  std::vector<double> same = {1.0, 1.0, 1.0, 1.0};
  const ScalingFit f1 = wkb_scaling_fit(map, same, 1.0);
  CHECK_FALSE(f1.valid);
  CHECK(f1.note.find("degenerate") != std::string::npos);

  std::vector<double> two = {0.8, 1.0};
  const ScalingFit f2 = wkb_scaling_fit(map, two, 1.0);
  CHECK_FALSE(f2.valid);
  CHECK_FALSE(f2.note.empty());

  // u = 0 kills the flux samples entirely
  std::vector<double> rhos = {0.6, 0.8, 1.0, 1.4};
  const ScalingFit f3 = wkb_scaling_fit(map, rhos, 0.0);
  CHECK_FALSE(f3.valid);
  CHECK_FALSE(f3.note.empty());
}
