#pragma once

#include <vector>

namespace shieldflow {

// Monotone cubic Hermite interpolant (Fritsch-Carlson limited tangents).
// Preserves monotone data exactly, which keeps table-based inverses
// well defined.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  // x strictly increasing, sizes equal and >= 2; throws std::invalid_argument.
  MonotoneCubic(std::vector<double> x, std::vector<double> y);

  double operator()(double x) const;   // clamps outside [x_front, x_back]
  double derivative(double x) const;

  // Inverse for strictly monotone increasing data; throws std::domain_error
  // if y is outside the data range.
  double inverse(double y) const;

  double x_front() const { return x_.front(); }
  double x_back() const { return x_.back(); }
  double y_front() const { return y_.front(); }
  double y_back() const { return y_.back(); }
  bool empty() const { return x_.empty(); }

 private:
  std::size_t cell(double x) const;

  std::vector<double> x_, y_, m_;  // nodes, values, tangents
};

}  // namespace shieldflow
