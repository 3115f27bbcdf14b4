#include "shieldflow/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "shieldflow/quadrature.hpp"

namespace shieldflow {

namespace {

// Integrand of H in the substitution variable t (see header). Kept as a free
// helper so the direct path and the table construction share one definition.
struct HIntegrand {
  const ShieldedEos& eos;
  double power;  // 0 => rho = delta + t^2 (delta > 0); else rho = t^power

  double operator()(double t) const {
    const double delta = eos.delta();
    if (power == 0.0) {
      const double t2 = t * t;
      if (t2 < 1e-10 * delta) return 2.0 * std::sqrt(eos.boundary_curvature());
      return 2.0 * eos.sound_speed(delta + t2) / t;
    }
    if (t < 1e-60) {
      const double k0g = eos.law().kappa0() * eos.law().gamma_asym();
      return power * std::sqrt(k0g);
    }
    const double s = std::pow(t, power);
    return power * std::sqrt(eos.law().d1(s)) / t;
  }
};

}  // namespace

InvariantMap::InvariantMap(ShieldedEos eos, double rho_max, int nodes)
    : eos_(std::move(eos)), rho_max_(rho_max) {
  const double delta = eos_.delta();
  if (!(rho_max_ > delta))
    throw std::invalid_argument("InvariantMap: rho_max must exceed delta");
  if (nodes < 16) throw std::invalid_argument("InvariantMap: nodes < 16");

  power_ = (delta > 0.0) ? 0.0 : 2.0 / (eos_.law().gamma_asym() - 1.0);

  const double t_max = t_of_rho(rho_max_);
  const HIntegrand g{eos_, power_};
  std::vector<double> ts(nodes + 1), hs(nodes + 1);
  ts[0] = 0.0;
  hs[0] = 0.0;
  for (int i = 1; i <= nodes; ++i) {
    ts[i] = t_max * static_cast<double>(i) / nodes;
    const auto cell = integrate(g, ts[i - 1], ts[i], 1e-13, 0.0, 64);
    hs[i] = hs[i - 1] + cell.value;
  }
  table_ = MonotoneCubic(std::move(ts), std::move(hs));
}

double InvariantMap::t_of_rho(double rho) const {
  const double delta = eos_.delta();
  if (power_ == 0.0) return std::sqrt(std::max(rho - delta, 0.0));
  return std::pow(rho, 1.0 / power_);
}

double InvariantMap::rho_of_t(double t) const {
  const double delta = eos_.delta();
  if (power_ == 0.0) return delta + t * t;
  return std::pow(t, power_);
}

double InvariantMap::integrand(double t) const {
  return HIntegrand{eos_, power_}(t);
}

double InvariantMap::H_direct(double rho) const {
  const double delta = eos_.delta();
  if (!(rho >= delta)) throw std::domain_error("H: rho below shield");
  if (rho == delta) return 0.0;
  const HIntegrand g{eos_, power_};
  return integrate(g, 0.0, t_of_rho(rho), 1e-13).value;
}

double InvariantMap::H(double rho) const {
  const double delta = eos_.delta();
  if (!(rho >= delta)) throw std::domain_error("H: rho below shield");
  if (rho == delta) return 0.0;
  const double t = t_of_rho(rho);
  if (t <= table_.x_back()) return table_(t);
  const HIntegrand g{eos_, power_};
  return table_.y_back() + integrate(g, table_.x_back(), t, 1e-13).value;
}

double InvariantMap::dH(double rho) const {
  const double delta = eos_.delta();
  if (!(rho > delta)) throw std::domain_error("dH: requires rho > delta");
  return eos_.sound_speed(rho) / (rho - delta);
}

double InvariantMap::rho_of_H(double h) const {
  const double delta = eos_.delta();
  if (!(h >= 0.0)) throw std::domain_error("rho_of_H: negative value");
  if (h == 0.0) return delta;

  // seed from the table (or expand past its end), then Newton against the
  // direct quadrature with a bisection safeguard
  double lo = delta, hi;
  double rho;
  if (h <= table_.y_back()) {
    rho = rho_of_t(table_.inverse(h));
    hi = rho_max_;
  } else {
    hi = rho_max_;
    double h_hi = table_.y_back();
    while (h_hi < h) {
      lo = hi;
      hi *= 2.0;
      h_hi = H_direct(hi);
      if (hi > 1e30)
        throw std::domain_error("rho_of_H: value beyond representable range");
    }
    rho = hi;
  }

  double f = H_direct(rho) - h;
  const double tol = 1e-12 * std::max(1.0, h);
  for (int it = 0; it < 40 && std::fabs(f) > tol; ++it) {
    if (f > 0)
      hi = rho;
    else
      lo = rho;
    double next = rho;
    if (rho > delta) {
      next = rho - f / dH(rho);
    }
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == rho) break;
    rho = next;
    f = H_direct(rho) - h;
  }
  return rho;
}

Invariants InvariantMap::to_invariants(double rho, double u) const {
  const double h = H(rho);
  return {u + h, u - h};
}

PrimState InvariantMap::from_invariants(double z, double w) const {
  if (!(w >= z))
    throw std::domain_error("from_invariants: requires w >= z");
  const double rho = rho_of_H(0.5 * (w - z));
  return {rho, 0.5 * (w + z)};
}

double InvariantMap::jacobian_det(double rho) const {
  const double delta = eos_.delta();
  if (!(rho > delta))
    throw std::domain_error("jacobian_det: requires rho > delta");
  return -2.0 * eos_.sound_speed(rho) / (rho - delta);
}

HGapReport h_gap_study(std::shared_ptr<const PressureLaw> law,
                       std::span<const double> deltas,
                       std::span<const double> rho_grid) {
  if (deltas.empty() || rho_grid.empty())
    throw std::invalid_argument("h_gap_study: empty inputs");
  const double rho_top = *std::max_element(rho_grid.begin(), rho_grid.end());
  const double rho_bot = *std::min_element(rho_grid.begin(), rho_grid.end());
  if (!(rho_bot > 0.0))
    throw std::invalid_argument("h_gap_study: rho_grid must be positive");

  InvariantMap base(ShieldedEos(law, 0.0), rho_top);

  HGapReport report;
  for (double d : deltas) {
    if (!(d > 0.0))
      throw std::invalid_argument("h_gap_study: deltas must be positive");
    InvariantMap shifted(ShieldedEos(law, d), std::max(rho_top, 2.0 * d));

    // the gap peaks just above the shield, so augment the sample set there
    std::vector<double> samples(rho_grid.begin(), rho_grid.end());
    for (double f : {1e-6, 1e-3, 0.1, 0.5, 1.0})
      samples.push_back(d * (1.0 + f));

    double sup = 0.0;
    for (double rho : samples) {
      if (rho < d || rho > rho_top) continue;
      const double gap = std::fabs(shifted.H_direct(rho) - base.H_direct(rho));
      sup = std::max(sup, gap);
    }
    report.deltas.push_back(d);
    report.sup_gaps.push_back(sup);
  }

  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < report.deltas.size(); ++i) {
    if (report.sup_gaps[i] > 0.0) {
      lx.push_back(std::log(report.deltas[i]));
      ly.push_back(std::log(report.sup_gaps[i]));
    }
  }
  report.fit = fit_line(lx, ly);
  return report;
}

RegionMembership region_membership(const RegionSpec& region,
                                   const InvariantMap& map, double rho,
                                   double u) {
  RegionMembership m;
  m.margin_rho_low = rho - map.delta();
  m.margin_rho_high = region.rho_max - rho;
  if (m.margin_rho_low < 0.0) {
    m.margin_z = m.margin_w = std::nan("");
    m.inside = false;
    return m;
  }
  const Invariants inv = map.to_invariants(rho, u);
  m.margin_z = inv.z - region.z_min;
  m.margin_w = region.w_max - inv.w;
  m.inside = m.margin_z >= 0.0 && m.margin_w >= 0.0 &&
             m.margin_rho_low >= 0.0 && m.margin_rho_high >= 0.0;
  return m;
}

}  // namespace shieldflow
