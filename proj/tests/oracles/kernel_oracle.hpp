#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

// Collective couplings from the free-space dyadic Green tensor,
//   Ω − iγ/2 = −(3π/k) d·G(r)·d  (Γ = 1, k = 2π/λ0 = 2π),
// with G = e^{ikr}/(4πr) [(1 + i/kr − 1/(kr)²) I + (−1 − 3i/kr + 3/(kr)²) r̂r̂].
namespace oracle {

struct Pair {
  double omega;
  double gamma;
};

inline Pair green_coupling(const Eigen::Vector3d& r, const Eigen::Vector3d& dipole) {
  using C = std::complex<double>;
  const double k = 2.0 * std::numbers::pi;
  const double d = r.norm();
  const Eigen::Vector3d u = r / d;
  const double kr = k * d;
  const C i(0.0, 1.0);
  const C a = 1.0 + i / kr - 1.0 / (kr * kr);
  const C b = -1.0 - 3.0 * i / kr + 3.0 / (kr * kr);
  const double du = dipole.dot(u);
  const C g = std::exp(i * kr) / (4.0 * std::numbers::pi * d) * (a * dipole.squaredNorm() + b * du * du);
  const C v = -3.0 * std::numbers::pi / k * g;
  return {v.real(), -2.0 * v.imag()};
}

}  // namespace oracle
