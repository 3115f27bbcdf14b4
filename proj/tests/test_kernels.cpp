#include <random>
#include <vector>

#include "doctest.h"
#include "shieldflow/kernels.hpp"
#include "shieldflow/pressure_law.hpp"
#include "shieldflow/shielded_eos.hpp"

using namespace shieldflow;

namespace {

struct RandomState {
  std::vector<double> rho_hat, m_hat;
};

RandomState random_state(int n, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> rho_dist(0.05, 2.5);
  std::uniform_real_distribution<double> u_dist(-2.0, 2.0);
  RandomState s;
  s.rho_hat.resize(n);
  s.m_hat.resize(n);
  for (int i = 0; i < n; ++i) {
    s.rho_hat[i] = rho_dist(gen);
    s.m_hat[i] = s.rho_hat[i] * u_dist(gen);
  }
  return s;
}

// Bitwise comparison: the OpenMP loops must schedule the exact same
// per-element arithmetic, so == on doubles is the intended check.
bool identical(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("primitive recovery and wave speed are backend independent") {
  const ShieldedEos eos(make_polytropic(1.0, 2.0), 0.05);
  for (unsigned seed : {1u, 7u, 42u}) {
    for (int n : {17, 256, 1001}) {
      const RandomState s = random_state(n, seed);
      std::vector<double> u1(n), p1(n), a1(n), u2(n), p2(n), a2(n);
      kernels::primitives(Backend::serial, eos, s.rho_hat, s.m_hat, u1, p1, a1);
      kernels::primitives(Backend::openmp, eos, s.rho_hat, s.m_hat, u2, p2, a2);
      CHECK(identical(u1, u2));
      CHECK(identical(p1, p2));
      CHECK(identical(a1, a2));
      CHECK(kernels::max_abs(Backend::serial, a1) ==
            kernels::max_abs(Backend::openmp, a1));
    }
  }
}

TEST_CASE("interface fluxes are backend independent for every variant") {
  const ShieldedEos eos(make_polytropic(1.0, 1.4), 0.01);
  const RandomState s = random_state(513, 11u);
  const int n = 513;
  std::vector<double> u(n), p(n), a(n);
  kernels::primitives(Backend::serial, eos, s.rho_hat, s.m_hat, u, p, a);
  const double a_glob = kernels::max_abs(Backend::serial, a);

  for (FluxKind flux : {FluxKind::rusanov, FluxKind::lax_friedrichs}) {
    for (BoundaryKind bc : {BoundaryKind::periodic, BoundaryKind::outflow}) {
      std::vector<double> fr1(n + 1), fm1(n + 1), fr2(n + 1), fm2(n + 1);
      kernels::interface_fluxes(Backend::serial, flux, bc, s.rho_hat, s.m_hat,
                                u, p, a, a_glob, fr1, fm1);
      kernels::interface_fluxes(Backend::openmp, flux, bc, s.rho_hat, s.m_hat,
                                u, p, a, a_glob, fr2, fm2);
      CHECK(identical(fr1, fr2));
      CHECK(identical(fm1, fm2));
    }
  }
}

TEST_CASE("lifted momentum and conservative update are backend independent") {
  const ShieldedEos eos(make_polytropic(1.0, 2.0), 0.1);
  const int n = 300;
  const RandomState s = random_state(n, 3u);
  std::vector<double> u(n), p(n), a(n);
  kernels::primitives(Backend::serial, eos, s.rho_hat, s.m_hat, u, p, a);

  std::vector<double> lift1(n), lift2(n);
  kernels::lifted_momentum(Backend::serial, s.m_hat, u, 0.1, lift1);
  kernels::lifted_momentum(Backend::openmp, s.m_hat, u, 0.1, lift2);
  CHECK(identical(lift1, lift2));
  for (int i = 0; i < n; ++i) {
    CHECK(lift1[i] == s.m_hat[i] + 0.1 * u[i]);
  }

  const double a_glob = kernels::max_abs(Backend::serial, a);
  std::vector<double> fr(n + 1), fm(n + 1);
  kernels::interface_fluxes(Backend::serial, FluxKind::rusanov,
                            BoundaryKind::periodic, s.rho_hat, s.m_hat, u, p,
                            a, a_glob, fr, fm);
  for (BoundaryKind bc : {BoundaryKind::periodic, BoundaryKind::outflow}) {
    std::vector<double> r1(n), m1(n), r2(n), m2(n);
    kernels::apply_update(Backend::serial, bc, s.rho_hat, s.m_hat, s.m_hat,
                          fr, fm, 1e-3, 0.01, 1e-3, r1, m1);
    kernels::apply_update(Backend::openmp, bc, s.rho_hat, s.m_hat, s.m_hat,
                          fr, fm, 1e-3, 0.01, 1e-3, r2, m2);
    CHECK(identical(r1, r2));
    CHECK(identical(m1, m2));
  }
}

TEST_CASE("flux consistency: uniform state produces the exact point flux") {
  const ShieldedEos eos(make_polytropic(1.0, 2.0), 0.1);
  const int n = 32;
  std::vector<double> rho_hat(n, 0.9), m_hat(n, 0.36);
  std::vector<double> u(n), p(n), a(n);
  kernels::primitives(Backend::serial, eos, rho_hat, m_hat, u, p, a);
  CHECK(u[0] == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(p[0] == doctest::Approx(eos.pressure(1.0)).epsilon(1e-15));

  std::vector<double> fr(n + 1), fm(n + 1);
  kernels::interface_fluxes(Backend::serial, FluxKind::rusanov,
                            BoundaryKind::periodic, rho_hat, m_hat, u, p, a,
                            kernels::max_abs(Backend::serial, a), fr, fm);
  // F = (m_hat, m_hat u + Ptilde): the dissipation term cancels on equal states
  for (int i = 0; i <= n; ++i) {
    CHECK(fr[i] == doctest::Approx(0.36).epsilon(1e-15));
    CHECK(fm[i] == doctest::Approx(0.36 * 0.4 + eos.pressure(1.0)).epsilon(1e-14));
  }
}

TEST_CASE("max_abs reduction equals a plain serial scan") {
  std::mt19937 gen(99);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  std::vector<double> v(1777);
  for (double& x : v) x = dist(gen);
  double expect = 0.0;
  for (double x : v) expect = std::max(expect, std::abs(x));
  CHECK(kernels::max_abs(Backend::serial, v) == expect);
  CHECK(kernels::max_abs(Backend::openmp, v) == expect);
}
