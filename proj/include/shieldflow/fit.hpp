#pragma once

#include <span>

namespace shieldflow {

// Ordinary least-squares line y = slope*x + intercept.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;  // standard error of the slope estimate
  double r2 = 0.0;
  long n = 0;
  bool valid = false;  // false when n < 2 or x has no spread
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace shieldflow
