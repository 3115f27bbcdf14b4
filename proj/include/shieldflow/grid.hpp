#pragma once

#include <vector>

namespace shieldflow {

// Cell-centered finite-volume state in effective variables
// (rho_hat = rho - delta, m_hat = rho_hat * u).
struct GridState {
  double x0 = 0.0;  // left edge of the domain
  double dx = 0.0;
  double t = 0.0;
  std::vector<double> rho_hat;
  std::vector<double> m_hat;

  int n() const { return static_cast<int>(rho_hat.size()); }
  double x_center(int i) const { return x0 + (i + 0.5) * dx; }
};

struct Snapshot {
  double t = 0.0;
  std::vector<double> rho_hat;
  std::vector<double> m_hat;
};

}  // namespace shieldflow
