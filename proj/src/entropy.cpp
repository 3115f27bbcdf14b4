#include "shieldflow/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "shieldflow/invariants.hpp"
#include "shieldflow/quadrature.hpp"

namespace shieldflow {

namespace {

EntropyEval assemble(const ShieldedEos& eos, double rho_hat, double m_hat,
                     double e_hat) {
  const double u = m_hat / rho_hat;
  const double rho = rho_hat + eos.delta();
  const double p = eos.pressure(rho);
  const double c2 = eos.sound_speed_sq(rho);

  EntropyEval out;
  out.eta = 0.5 * m_hat * u + rho_hat * e_hat;
  out.q = u * (out.eta + p);
  out.grad_rho = -0.5 * u * u + e_hat + p / rho_hat;
  out.grad_m = u;
  out.hess_rr = (u * u + c2) / rho_hat;
  out.hess_rm = -u / rho_hat;
  out.hess_mm = 1.0 / rho_hat;
  out.hess_det = c2 / (rho_hat * rho_hat);
  return out;
}

void require_positive_density(double rho_hat) {
  if (!(rho_hat > 0.0) || !std::isfinite(rho_hat)) {
    throw std::domain_error(
        "mechanical_entropy: rho_hat must be positive and finite");
  }
}

}  // namespace

EntropyEval mechanical_entropy(const ShieldedEos& eos, double rho_hat,
                               double m_hat, double rel_tol) {
  require_positive_density(rho_hat);
  return assemble(eos, rho_hat, m_hat, eos.internal_energy(rho_hat, rel_tol));
}

EntropyEval mechanical_entropy(const InternalEnergyMap& emap, double rho_hat,
                               double m_hat) {
  require_positive_density(rho_hat);
  return assemble(emap.eos(), rho_hat, m_hat, emap(rho_hat));
}

InternalEnergyMap::InternalEnergyMap(ShieldedEos eos, double rho_hat_max,
                                     int nodes)
    : eos_(std::move(eos)), rho_hat_max_(rho_hat_max) {
  if (!(rho_hat_max > 0.0) || !std::isfinite(rho_hat_max)) {
    throw std::invalid_argument(
        "InternalEnergyMap: rho_hat_max must be positive and finite");
  }
  if (nodes < 16) {
    throw std::invalid_argument("InternalEnergyMap: need at least 16 nodes");
  }

  // Table abscissa: rho_hat itself when delta > 0 (e_hat is smooth there,
  // e_hat'(0) = P''_shielded(delta)/2), and rho_hat^(gamma-1) when delta = 0
  // so that the leading kappa/(gamma-1) * rho_hat^(gamma-1) branch is linear.
  const double delta = eos_.delta();
  power_ = delta > 0.0 ? 1.0 : eos_.law().gamma_asym() - 1.0;

  const double t_max =
      power_ == 1.0 ? rho_hat_max : std::pow(rho_hat_max, power_);
  std::vector<double> ts(static_cast<std::size_t>(nodes) + 1);
  std::vector<double> es(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    ts[i] = t_max * static_cast<double>(i) / static_cast<double>(nodes);
  }

  auto rho_of_t = [&](double t) {
    return power_ == 1.0 ? t : std::pow(t, 1.0 / power_);
  };
  // d e_hat / dt expressed in the table variable.
  auto de_dt = [&](double t) {
    const double s = rho_of_t(t);
    const double de = eos_.pressure(s + delta) / (s * s);
    const double jac = power_ == 1.0 ? 1.0 : s / (t * power_);
    return de * jac;
  };

  es[0] = 0.0;
  // First node through the cancellation-safe path, then cumulative panels.
  es[1] = eos_.internal_energy(rho_of_t(ts[1]));
  for (std::size_t i = 2; i < ts.size(); ++i) {
    const QuadResult cell = integrate(de_dt, ts[i - 1], ts[i], 1e-13, 0.0, 64);
    es[i] = es[i - 1] + cell.value;
  }
  t_first_ = ts[1];
  table_ = MonotoneCubic(ts, es);
}

double InternalEnergyMap::operator()(double rho_hat) const {
  if (!(rho_hat >= 0.0) || !std::isfinite(rho_hat)) {
    throw std::domain_error("InternalEnergyMap: rho_hat must be >= 0");
  }
  if (rho_hat == 0.0) return 0.0;
  if (rho_hat > rho_hat_max_) return eos_.internal_energy(rho_hat);
  const double t = power_ == 1.0 ? rho_hat : std::pow(rho_hat, power_);
  // Below the first interior node the interpolation error is absolute, not
  // relative, so hand those evaluations to the defining integral.
  if (t < t_first_) return eos_.internal_energy(rho_hat);
  return table_(t);
}

double InternalEnergyMap::eta(double rho_hat, double m_hat) const {
  const double u = m_hat / rho_hat;
  return 0.5 * m_hat * u + rho_hat * (*this)(rho_hat);
}

double InternalEnergyMap::flux(double rho_hat, double m_hat) const {
  const double u = m_hat / rho_hat;
  return u * (eta(rho_hat, m_hat) + eos_.pressure(rho_hat + eos_.delta()));
}

namespace {

struct StencilSpec {
  std::vector<double> xs;
  double hx = 0.0;
};

StencilSpec midpoints(double x_lo, double x_hi, double h) {
  if (!(h > 0.0) || !(x_hi > x_lo)) {
    throw std::invalid_argument("entropy residual: need x_hi > x_lo, h > 0");
  }
  StencilSpec s;
  const int m = std::max(1, static_cast<int>(std::llround((x_hi - x_lo) / h)));
  s.hx = (x_hi - x_lo) / m;
  s.xs.resize(m);
  for (int i = 0; i < m; ++i) s.xs[i] = x_lo + (i + 0.5) * s.hx;
  return s;
}

}  // namespace

double entropy_residual_l1(const ShieldedEos& eos, const FieldFn& field,
                           double x_lo, double x_hi, double t0, double h) {
  const StencilSpec st = midpoints(x_lo, x_hi, h);
  const double k = 0.5 * st.hx;

  auto eta_at = [&](double x, double t) {
    const FieldSample f = field(x, t);
    return mechanical_entropy(eos, f.rho_hat, f.m_hat).eta;
  };
  auto q_at = [&](double x, double t) {
    const FieldSample f = field(x, t);
    return mechanical_entropy(eos, f.rho_hat, f.m_hat).q;
  };

  double sum = 0.0;
  for (double x : st.xs) {
    const double dt_eta = (eta_at(x, t0 + k) - eta_at(x, t0 - k)) / (2.0 * k);
    const double dx_q =
        (q_at(x + st.hx, t0) - q_at(x - st.hx, t0)) / (2.0 * st.hx);
    sum += std::abs(dt_eta + dx_q) * st.hx;
  }
  return sum;
}

double forced_entropy_residual_l1(const ShieldedEos& eos, const FieldFn& field,
                                  const ForcingFn& forcing, double x_lo,
                                  double x_hi, double t0, double h) {
  const StencilSpec st = midpoints(x_lo, x_hi, h);
  const double k = 0.5 * st.hx;

  auto eval = [&](double x, double t) {
    const FieldSample f = field(x, t);
    return mechanical_entropy(eos, f.rho_hat, f.m_hat);
  };

  double sum = 0.0;
  for (double x : st.xs) {
    const double dt_eta = (eval(x, t0 + k).eta - eval(x, t0 - k).eta) / (2.0 * k);
    const double dx_q =
        (eval(x + st.hx, t0).q - eval(x - st.hx, t0).q) / (2.0 * st.hx);
    const EntropyEval center = eval(x, t0);
    const std::array<double, 2> s = forcing(x, t0);
    const double projected = center.grad_rho * s[0] + center.grad_m * s[1];
    sum += std::abs(dt_eta + dx_q - projected) * st.hx;
  }
  return sum;
}

BudgetReport entropy_budget(const std::vector<Snapshot>& snaps,
                            const InternalEnergyMap& emap, double x_min,
                            double dx) {
  if (snaps.size() < 2) {
    throw std::invalid_argument("entropy_budget: need at least two snapshots");
  }
  const std::size_t n = snaps.front().rho_hat.size();
  for (const Snapshot& s : snaps) {
    if (s.rho_hat.size() != n || s.m_hat.size() != n) {
      throw std::invalid_argument("entropy_budget: snapshot sizes differ");
    }
  }
  if (n < 3) throw std::invalid_argument("entropy_budget: grid too small");

  auto fill = [&](const Snapshot& s, std::vector<double>& eta,
                  std::vector<double>& q) {
    eta.resize(n);
    q.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      eta[i] = emap.eta(s.rho_hat[i], s.m_hat[i]);
      q[i] = emap.flux(s.rho_hat[i], s.m_hat[i]);
    }
  };

  BudgetReport report;
  report.rows.reserve((snaps.size() - 1) * (n - 2));
  std::vector<double> cumulative(n, 0.0);

  std::vector<double> eta_a, q_a, eta_b, q_b;
  fill(snaps[0], eta_a, q_a);
  for (std::size_t k = 0; k + 1 < snaps.size(); ++k) {
    fill(snaps[k + 1], eta_b, q_b);
    const double dt = snaps[k + 1].t - snaps[k].t;
    if (!(dt > 0.0)) {
      throw std::invalid_argument("entropy_budget: snapshot times not increasing");
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double dq_a = 0.5 * (q_a[i + 1] - q_a[i - 1]);
      const double dq_b = 0.5 * (q_b[i + 1] - q_b[i - 1]);
      const double p = (eta_b[i] - eta_a[i]) * dx + 0.5 * dt * (dq_a + dq_b);
      cumulative[i] += p;
      report.total += p;
      if (p > 0.0) report.positive_excess += p;
      report.rows.push_back({snaps[k + 1].t, x_min + (i + 0.5) * dx, p,
                             cumulative[i]});
    }
    eta_a.swap(eta_b);
    q_a.swap(q_b);
  }
  return report;
}

ScalingFit wkb_scaling_fit(const InvariantMap& map, std::span<const double> rhos,
                           double u) {
  ScalingFit out;
  const ShieldedEos& eos = map.eos();
  const double delta = eos.delta();

  std::vector<double> ls, le, lp;
  for (double rho : rhos) {
    if (!(rho > delta) || !std::isfinite(rho)) continue;
    const double sigma = 2.0 * map.H(rho);
    const double rho_hat = rho - delta;
    const EntropyEval ev = mechanical_entropy(eos, rho_hat, rho_hat * u);
    const double psi = u * eos.pressure(rho);
    out.sigma.push_back(sigma);
    out.eta.push_back(ev.eta);
    out.psi.push_back(psi);
    if (sigma > 0.0 && ev.eta > 0.0 && psi > 0.0) {
      ls.push_back(std::log(sigma));
      le.push_back(std::log(ev.eta));
      lp.push_back(std::log(psi));
    }
  }

  if (ls.size() < 3) {
    out.note =
        "fewer than three usable samples (sigma, eta, psi must all be "
        "positive)";
    return out;
  }
  const auto [lo, hi] = std::minmax_element(ls.begin(), ls.end());
  if (*hi - *lo < 1e-12 * std::max(1.0, std::abs(*hi))) {
    out.note = "sigma samples are degenerate (no spread to fit against)";
    return out;
  }

  out.eta_fit = fit_line(ls, le);
  out.psi_fit = fit_line(ls, lp);
  if (!out.eta_fit.valid || !out.psi_fit.valid) {
    out.note = "line fit failed";
    return out;
  }
  out.gap = out.psi_fit.slope - out.eta_fit.slope;
  out.valid = true;
  return out;
}

}  // namespace shieldflow
