#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <span>
#include <stdexcept>

#include <Eigen/Core>

#include "darkchain/errors.hpp"

namespace darkchain {

struct StepControl {
  double rtol = 1e-8;
  double atol = 1e-10;
  double min_step = 1e-12;
  long max_steps = 5'000'000;
};

struct IntegrationStats {
  long accepted = 0;
  long rejected = 0;
  long rhs_calls = 0;
};

namespace detail {

// Weighted RMS norm over all entries, complex or real.
template <class Y>
double error_norm(const Y& err, const Y& y0, const Y& y1, const StepControl& c) {
  const auto scale = (c.atol + c.rtol * y0.cwiseAbs().cwiseMax(y1.cwiseAbs()).array()).eval();
  const double sq = (err.cwiseAbs().array() / scale).square().sum();
  return std::sqrt(sq / static_cast<double>(std::max<Eigen::Index>(1, err.size())));
}

}  // namespace detail

/// Dormand-Prince 5(4) with FSAL and PI-free step control. Integrates
/// y' = rhs(t, y, dydt) from `times.front()` and calls observe(index, t, y) at
/// every entry of the ascending `times`; steps are shortened to land on them.
template <class Y, class Rhs, class Observe>
IntegrationStats dormand_prince(Rhs&& rhs, Y y, std::span<const double> times, Observe&& observe,
                                const StepControl& control = {}) {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  IntegrationStats stats;
  if (times.empty()) return stats;
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] >= times[i - 1])) throw std::invalid_argument("dormand_prince: times must ascend");
  }

  double t = times.front();
  observe(std::size_t{0}, t, y);
  if (times.size() == 1) return stats;

  Y k1 = y, k2 = y, k3 = y, k4 = y, k5 = y, k6 = y, k7 = y, tmp = y, y1 = y;
  rhs(t, y, k1);
  ++stats.rhs_calls;

  const double span = times.back() - times.front();
  double h;
  {
    const double d0 = y.norm(), d1 = k1.norm();
    h = (d0 > 1e-5 && d1 > 1e-5) ? 0.01 * d0 / d1 : 1e-4;
    h = std::min(h, span > 0 ? span : 1.0);
  }

  long steps = 0;
  for (std::size_t next = 1; next < times.size(); ++next) {
    const double target = times[next];
    while (t < target) {
      if (++steps > control.max_steps) {
        throw IntegrationFailure("dormand_prince: step budget exhausted");
      }
      const double remaining = target - t;
      const bool clamped = h >= remaining;
      const double hs = clamped ? remaining : h;

      tmp = y + hs * (a21 * k1);
      rhs(t + c2 * hs, tmp, k2);
      tmp = y + hs * (a31 * k1 + a32 * k2);
      rhs(t + c3 * hs, tmp, k3);
      tmp = y + hs * (a41 * k1 + a42 * k2 + a43 * k3);
      rhs(t + c4 * hs, tmp, k4);
      tmp = y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
      rhs(t + c5 * hs, tmp, k5);
      tmp = y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
      rhs(t + hs, tmp, k6);
      y1 = y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      rhs(t + hs, y1, k7);
      stats.rhs_calls += 6;

      tmp = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
      const double err = detail::error_norm(tmp, y, y1, control);
      if (!std::isfinite(err)) throw IntegrationFailure("dormand_prince: non-finite state");

      const double factor =
          err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      if (err <= 1.0) {
        t = clamped ? target : t + hs;
        y.swap(y1);
        k1.swap(k7);
        ++stats.accepted;
        // A step shortened only to land on a sample does not shrink the next one.
        h = clamped ? std::max(h, hs * factor) : hs * factor;
      } else {
        ++stats.rejected;
        h = hs * std::max(factor, 0.2);
        if (h < control.min_step) {
          std::ostringstream msg;
          msg << "dormand_prince: step size underflow at t = " << t;
          throw IntegrationFailure(msg.str());
        }
      }
    }
    observe(next, t, y);
  }
  return stats;
}

}  // namespace darkchain
