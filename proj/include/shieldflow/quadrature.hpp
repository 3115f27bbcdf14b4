#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace shieldflow {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  long evals = 0;
  bool converged = true;
};

namespace detail {

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1], positive half.
// Even-indexed Kronrod nodes coincide with the 7-point Gauss nodes.
inline constexpr double kGkNode[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kGkWeight[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double kGaussWeight[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

// One GK15 panel on [a, b]: returns {integral, |K15 - G7| error proxy}.
template <class F>
std::pair<double, double> gk15(F&& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kron = kGkWeight[7] * fc;
  double gauss = kGaussWeight[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kGkNode[j];
    const double fsum = f(c - dx) + f(c + dx);
    kron += kGkWeight[j] * fsum;
    if (j % 2 == 1) gauss += kGaussWeight[j / 2] * fsum;
  }
  return {kron * h, std::fabs((kron - gauss) * h)};
}

}  // namespace detail

// Adaptive bisection built on GK15 panels. Splits the worst panel until the
// summed error proxy meets rel_tol * |integral| + abs_tol or the panel budget
// runs out. Endpoints are never evaluated, so integrable endpoint behavior
// regularized by the caller's substitution is safe.
template <class F>
QuadResult integrate(F&& f, double a, double b, double rel_tol = 1e-12,
                     double abs_tol = 0.0, int max_panels = 4000) {
  QuadResult out;
  if (a == b) return out;

  struct Panel {
    double a, b, value, error;
  };
  std::vector<Panel> panels;
  panels.reserve(64);

  auto push = [&](double lo, double hi) {
    auto [v, e] = detail::gk15(f, lo, hi);
    panels.push_back(Panel{lo, hi, v, e});
    out.evals += 15;
  };
  push(a, b);

  while (static_cast<int>(panels.size()) < max_panels) {
    double total = 0.0, err = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      total += panels[i].value;
      err += panels[i].error;
      if (panels[i].error > panels[worst].error) worst = i;
    }
    if (err <= rel_tol * std::fabs(total) + abs_tol) {
      out.value = total;
      out.error = err;
      return out;
    }
    const Panel w = panels[worst];
    const double mid = 0.5 * (w.a + w.b);
    if (mid == w.a || mid == w.b) break;  // panel at rounding width
    panels[worst] = panels.back();
    panels.pop_back();
    push(w.a, mid);
    push(mid, w.b);
  }

  double total = 0.0, err = 0.0;
  for (const Panel& p : panels) {
    total += p.value;
    err += p.error;
  }
  out.value = total;
  out.error = err;
  out.converged = err <= 1e3 * (rel_tol * std::fabs(total) + abs_tol);
  return out;
}

}  // namespace shieldflow
