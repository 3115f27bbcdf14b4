// Times the serial and OpenMP step paths on identical states and reports
// ns per cell per step. The two must agree bitwise; this only measures.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "shieldflow/kernels.hpp"
#include "shieldflow/pressure_law.hpp"
#include "shieldflow/shielded_eos.hpp"
#include "shieldflow/solver.hpp"

using namespace shieldflow;
using clock_type = std::chrono::steady_clock;

namespace {

GridState make_state(int n) {
  GridState g;
  g.x0 = 0.0;
  g.dx = 1.0 / n;
  g.t = 0.0;
  g.rho_hat.resize(n);
  g.m_hat.resize(n);
  for (int i = 0; i < n; ++i) {
    const double x = (i + 0.5) * g.dx;
    g.rho_hat[i] = 1.0 + 0.3 * std::sin(6.283185307179586 * x);
    g.m_hat[i] = 0.2 * g.rho_hat[i] * std::cos(6.283185307179586 * x);
  }
  return g;
}

double time_backend(const ShieldedEos& eos, int n, Backend backend,
                    int steps) {
  SchemeConfig cfg;
  cfg.backend = backend;
  cfg.bc = BoundaryKind::periodic;
  cfg.epsilon = 1e-3;
  GridState g = make_state(n);
  kernels::Workspace ws;
  // One stable dt reused for every step so both backends do identical work.
  const double dt = 0.5 * cfl_dt(eos, g, cfg, ws);
  const auto t0 = clock_type::now();
  for (int s = 0; s < steps; ++s) step(eos, g, cfg, dt, ws);
  const auto t1 = clock_type::now();
  const double ns =
      std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
  return ns / (double(n) * steps);
}

}  // namespace

int main() {
  const ShieldedEos eos(make_polytropic(1.0, 2.0), 0.05);
  std::printf("%8s %10s %16s %16s %9s\n", "n", "steps", "serial ns/cell",
              "openmp ns/cell", "speedup");
  for (int n : {4096, 16384, 65536}) {
    const int steps = 2000000 / n + 8;
    const double ts = time_backend(eos, n, Backend::serial, steps);
    const double tp = time_backend(eos, n, Backend::openmp, steps);
    std::printf("%8d %10d %16.2f %16.2f %8.2fx\n", n, steps, ts, tp, ts / tp);
  }
  return 0;
}
