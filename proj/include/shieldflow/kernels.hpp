#pragma once

#include <span>
#include <vector>

#include "shieldflow/shielded_eos.hpp"

namespace shieldflow {

enum class Backend { serial, openmp };
enum class FluxKind { rusanov, lax_friedrichs };
enum class BoundaryKind { periodic, outflow };

namespace kernels {

// Scratch buffers reused across steps (sized for n cells, n+1 interfaces).
struct Workspace {
  std::vector<double> u, p, a;     // per cell: velocity, pressure, |u| + c
  std::vector<double> diff_m;      // per cell: field whose Laplacian diffuses m
  std::vector<double> f_rho, f_m;  // per interface
  std::vector<double> r1, m1, r2, m2;
  void resize(int n);
};

// Each kernel has elementwise serial and OpenMP variants producing bitwise
// identical output; Backend selects between them. Reductions use max only,
// which is exactly associative, so the parallel max matches the serial one.

void primitives(Backend backend, const ShieldedEos& eos,
                std::span<const double> rho_hat, std::span<const double> m_hat,
                std::span<double> u, std::span<double> p, std::span<double> a);

double max_abs(Backend backend, std::span<const double> v);

// m_out = m_hat + delta * u (momentum of the physical density).
void lifted_momentum(Backend backend, std::span<const double> m_hat,
                     std::span<const double> u, double delta,
                     std::span<double> m_out);

// Numerical fluxes at the n+1 interfaces. Ghost cells wrap (periodic) or copy
// the boundary cell (outflow). Rusanov uses the larger of the two adjacent
// signal speeds; Lax-Friedrichs uses a_global at every interface.
void interface_fluxes(Backend backend, FluxKind flux, BoundaryKind bc,
                      std::span<const double> rho_hat,
                      std::span<const double> m_hat, std::span<const double> u,
                      std::span<const double> p, std::span<const double> a,
                      double a_global, std::span<double> f_rho,
                      std::span<double> f_m);

// out = in - (dt/dx)(F_{i+1/2} - F_{i-1/2}) + (eps dt/dx^2) * Laplacian,
// where the mass equation diffuses rho_in and the momentum equation diffuses
// diff_m (equal to m_in itself, or to the lifted momentum).
void apply_update(Backend backend, BoundaryKind bc,
                  std::span<const double> rho_in, std::span<const double> m_in,
                  std::span<const double> diff_m,
                  std::span<const double> f_rho, std::span<const double> f_m,
                  double eps, double dx, double dt, std::span<double> rho_out,
                  std::span<double> m_out);

}  // namespace kernels
}  // namespace shieldflow
