#include "shieldflow/kernels.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace shieldflow::kernels {

void Workspace::resize(int n) {
  const auto nc = static_cast<std::size_t>(n);
  u.resize(nc);
  p.resize(nc);
  a.resize(nc);
  diff_m.resize(nc);
  f_rho.resize(nc + 1);
  f_m.resize(nc + 1);
  r1.resize(nc);
  m1.resize(nc);
  r2.resize(nc);
  m2.resize(nc);
}

namespace {

// Shared cell/interface bodies so the serial and OpenMP loops execute the
// exact same arithmetic (bitwise-equal outputs are a test invariant).

inline void primitives_cell(const ShieldedEos& eos, double delta, double rh,
                            double mh, double& u, double& p, double& a) {
  const double rho = rh + delta;
  u = mh / rh;
  p = eos.pressure(rho);
  a = std::abs(u) + eos.sound_speed(rho);
}

inline void neighbor_cells(BoundaryKind bc, int i, int n, int& iL, int& iR) {
  iL = i - 1;
  iR = i;
  if (bc == BoundaryKind::periodic) {
    if (iL < 0) iL = n - 1;
    if (iR > n - 1) iR = 0;
  } else {
    if (iL < 0) iL = 0;
    if (iR > n - 1) iR = n - 1;
  }
}

inline void flux_at(FluxKind kind, int iL, int iR, const double* rh,
                    const double* mh, const double* u, const double* p,
                    const double* a, double a_global, double& fr, double& fm) {
  const double fr_l = mh[iL];
  const double fr_r = mh[iR];
  const double fm_l = mh[iL] * u[iL] + p[iL];
  const double fm_r = mh[iR] * u[iR] + p[iR];
  const double s =
      kind == FluxKind::rusanov ? std::max(a[iL], a[iR]) : a_global;
  fr = 0.5 * (fr_l + fr_r) - 0.5 * s * (rh[iR] - rh[iL]);
  fm = 0.5 * (fm_l + fm_r) - 0.5 * s * (mh[iR] - mh[iL]);
}

inline void laplacian_cells(BoundaryKind bc, int i, int n, int& il, int& ir) {
  il = i - 1;
  ir = i + 1;
  if (bc == BoundaryKind::periodic) {
    if (il < 0) il = n - 1;
    if (ir > n - 1) ir = 0;
  } else {  // zero-gradient ghost
    if (il < 0) il = 0;
    if (ir > n - 1) ir = n - 1;
  }
}

inline void update_cell(BoundaryKind bc, int i, int n, const double* rin,
                        const double* min_, const double* dm, const double* fr,
                        const double* fm, double lam, double mu, double* rout,
                        double* mout) {
  int il, ir;
  laplacian_cells(bc, i, n, il, ir);
  rout[i] = rin[i] - lam * (fr[i + 1] - fr[i]) +
            mu * (rin[il] - 2.0 * rin[i] + rin[ir]);
  mout[i] =
      min_[i] - lam * (fm[i + 1] - fm[i]) + mu * (dm[il] - 2.0 * dm[i] + dm[ir]);
}

}  // namespace

void primitives(Backend backend, const ShieldedEos& eos,
                std::span<const double> rho_hat, std::span<const double> m_hat,
                std::span<double> u, std::span<double> p, std::span<double> a) {
  const int n = static_cast<int>(rho_hat.size());
  assert(m_hat.size() == rho_hat.size() && u.size() == rho_hat.size() &&
         p.size() == rho_hat.size() && a.size() == rho_hat.size());
  const double delta = eos.delta();
  if (backend == Backend::openmp) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
      primitives_cell(eos, delta, rho_hat[i], m_hat[i], u[i], p[i], a[i]);
    }
  } else {
    for (int i = 0; i < n; ++i) {
      primitives_cell(eos, delta, rho_hat[i], m_hat[i], u[i], p[i], a[i]);
    }
  }
}

double max_abs(Backend backend, std::span<const double> v) {
  const int n = static_cast<int>(v.size());
  double acc = 0.0;
  if (backend == Backend::openmp) {
#pragma omp parallel for schedule(static) reduction(max : acc)
    for (int i = 0; i < n; ++i) acc = std::max(acc, std::abs(v[i]));
  } else {
    for (int i = 0; i < n; ++i) acc = std::max(acc, std::abs(v[i]));
  }
  return acc;
}

void lifted_momentum(Backend backend, std::span<const double> m_hat,
                     std::span<const double> u, double delta,
                     std::span<double> m_out) {
  const int n = static_cast<int>(m_hat.size());
  assert(u.size() == m_hat.size() && m_out.size() == m_hat.size());
  if (backend == Backend::openmp) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) m_out[i] = m_hat[i] + delta * u[i];
  } else {
    for (int i = 0; i < n; ++i) m_out[i] = m_hat[i] + delta * u[i];
  }
}

void interface_fluxes(Backend backend, FluxKind flux, BoundaryKind bc,
                      std::span<const double> rho_hat,
                      std::span<const double> m_hat, std::span<const double> u,
                      std::span<const double> p, std::span<const double> a,
                      double a_global, std::span<double> f_rho,
                      std::span<double> f_m) {
  const int n = static_cast<int>(rho_hat.size());
  assert(f_rho.size() == rho_hat.size() + 1 && f_m.size() == f_rho.size());
  const double* rh = rho_hat.data();
  const double* mh = m_hat.data();
  const double* up = u.data();
  const double* pp = p.data();
  const double* ap = a.data();
  if (backend == Backend::openmp) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i <= n; ++i) {
      int iL, iR;
      neighbor_cells(bc, i, n, iL, iR);
      flux_at(flux, iL, iR, rh, mh, up, pp, ap, a_global, f_rho[i], f_m[i]);
    }
  } else {
    for (int i = 0; i <= n; ++i) {
      int iL, iR;
      neighbor_cells(bc, i, n, iL, iR);
      flux_at(flux, iL, iR, rh, mh, up, pp, ap, a_global, f_rho[i], f_m[i]);
    }
  }
}

void apply_update(Backend backend, BoundaryKind bc,
                  std::span<const double> rho_in, std::span<const double> m_in,
                  std::span<const double> diff_m,
                  std::span<const double> f_rho, std::span<const double> f_m,
                  double eps, double dx, double dt, std::span<double> rho_out,
                  std::span<double> m_out) {
  const int n = static_cast<int>(rho_in.size());
  assert(rho_out.size() == rho_in.size() && m_out.size() == rho_in.size());
  const double lam = dt / dx;
  const double mu = eps * dt / (dx * dx);
  const double* rin = rho_in.data();
  const double* min_ = m_in.data();
  const double* dm = diff_m.data();
  const double* fr = f_rho.data();
  const double* fm = f_m.data();
  double* rout = rho_out.data();
  double* mout = m_out.data();
  if (backend == Backend::openmp) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
      update_cell(bc, i, n, rin, min_, dm, fr, fm, lam, mu, rout, mout);
    }
  } else {
    for (int i = 0; i < n; ++i) {
      update_cell(bc, i, n, rin, min_, dm, fr, fm, lam, mu, rout, mout);
    }
  }
}

}  // namespace shieldflow::kernels
