#include "shieldflow/fit.hpp"

#include <cmath>
#include <cstddef>

namespace shieldflow {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  LineFit out;
  const std::size_t n = x.size();
  if (n != y.size() || n < 2) return out;
  out.n = static_cast<long>(n);

  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);

  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx <= 0.0) return out;

  out.slope = sxy / sxx;
  out.intercept = my - out.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (out.slope * x[i] + out.intercept);
    sse += r * r;
  }
  out.r2 = (syy > 0.0) ? 1.0 - sse / syy : 1.0;
  out.slope_stderr =
      (n > 2) ? std::sqrt((sse / static_cast<double>(n - 2)) / sxx) : 0.0;
  out.valid = true;
  return out;
}

}  // namespace shieldflow
