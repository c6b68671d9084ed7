#pragma once

#include <Eigen/Dense>

namespace oracle {

/// Fixed-step classical RK4 for i ċ = M c.
template <typename Mat, typename Vec>
Vec rk4_schrodinger(const Mat& m, Vec c, double t, int steps) {
  const std::complex<double> mi(0.0, -1.0);
  const double h = t / steps;
  for (int s = 0; s < steps; ++s) {
    const Vec k1 = mi * (m * c);
    const Vec k2 = mi * (m * (c + 0.5 * h * k1));
    const Vec k3 = mi * (m * (c + 0.5 * h * k2));
    const Vec k4 = mi * (m * (c + h * k3));
    c += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return c;
}

}  // namespace oracle
