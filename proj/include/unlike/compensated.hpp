#pragma once

#include <cmath>

namespace unlike {

// Neumaier's variant of Kahan summation.
struct Neumaier {
  double sum = 0;
  double c = 0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      c += (sum - t) + x;
    } else {
      c += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + c; }
};

}  // namespace unlike
