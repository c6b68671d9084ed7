#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

// Brute-force k-producible boundaries for a real, positive block-1 target.
// Each set S of the partition carries cos θ_S |g..g> + sin θ_S |φ_S>, with |φ_S>
// a unit vector in the single-excitation space of S parametrised by angles.
// Points are binned in P_G; the bin maxima are then hulled by the caller.
namespace oracle {

struct Binned {
  std::vector<double> ground;  // P_G of the best point in the bin (centre while empty)
  std::vector<double> best;    // max P_t seen in the bin, -1 if empty
};

inline Binned make_bins(int bins) {
  Binned b;
  for (int i = 0; i < bins; ++i) b.ground.push_back((i + 0.5) / bins);
  b.best.assign(static_cast<std::size_t>(bins), -1.0);
  return b;
}

inline void record(Binned& b, double pg, double pt) {
  const int bins = static_cast<int>(b.best.size());
  const auto k = static_cast<std::size_t>(std::min(bins - 1, static_cast<int>(pg * bins)));
  if (pt > b.best[k]) b.best[k] = pt, b.ground[k] = pg;
}

/// Two emitters, fully separable states.
inline Binned two_site_product(double c0, double c1, int steps, int bins) {
  Binned b = make_bins(bins);
  for (int i = 0; i <= steps; ++i) {
    const double t0 = 0.5 * std::numbers::pi * i / steps;
    for (int j = 0; j <= steps; ++j) {
      const double t1 = 0.5 * std::numbers::pi * j / steps;
      const double pg = std::pow(std::cos(t0) * std::cos(t1), 2);
      const double amp = c0 * std::sin(t0) * std::cos(t1) + c1 * std::cos(t0) * std::sin(t1);
      record(b, pg, amp * amp);
    }
  }
  return b;
}

/// Four emitters split into the pairs {a,b} and {c,d}; each pair state is
/// cos θ|gg> + sin θ (cos φ|eg> + sin φ|ge>).
inline Binned four_site_pairs(const double (&c)[4], const int (&order)[4], int steps, int bins) {
  Binned b = make_bins(bins);
  const double h = 0.5 * std::numbers::pi;
  for (int i = 0; i <= steps; ++i) {
    const double t0 = h * i / steps;
    for (int j = 0; j <= steps; ++j) {
      const double p0 = h * j / steps;
      const double v0 = c[order[0]] * std::cos(p0) + c[order[1]] * std::sin(p0);
      for (int k = 0; k <= steps; ++k) {
        const double t1 = h * k / steps;
        for (int l = 0; l <= steps; ++l) {
          const double p1 = h * l / steps;
          const double v1 = c[order[2]] * std::cos(p1) + c[order[3]] * std::sin(p1);
          const double pg = std::pow(std::cos(t0) * std::cos(t1), 2);
          const double amp = std::sin(t0) * v0 * std::cos(t1) + std::cos(t0) * std::sin(t1) * v1;
          record(b, pg, amp * amp);
        }
      }
    }
  }
  return b;
}

/// Any partition of the emitters. Set S holds cos θ_S |g..g> + sin θ_S |u_S>,
/// with u_S a non-negative unit vector in hyperspherical angles, so a
/// partition costs exactly N angles; every angle takes steps+1 values.
/// `weights` are the target magnitudes |c_i|.
inline Binned partition_grid(std::span<const double> weights, const std::vector<std::vector<int>>& sets,
                             int steps, int bins) {
  Binned b = make_bins(bins);
  const double h = 0.5 * std::numbers::pi;
  std::vector<double> cs(static_cast<std::size_t>(steps + 1)), sn(cs.size());
  for (int i = 0; i <= steps; ++i) cs[i] = std::cos(h * i / steps), sn[i] = std::sin(h * i / steps);
  std::size_t n_angles = 0;
  for (const auto& s : sets) n_angles += s.size();
  std::vector<int> idx(n_angles, 0);
  std::vector<double> cos_t(sets.size()), overlap(sets.size());
  for (;;) {
    std::size_t a = 0;
    double pg = 1.0;
    for (std::size_t s = 0; s < sets.size(); ++s) {
      const int theta = idx[a++];
      double radial = sn[theta], v = 0.0;
      for (std::size_t m = 0; m < sets[s].size(); ++m) {
        double u = radial;
        if (m + 1 < sets[s].size()) {
          u *= cs[idx[a]];
          radial *= sn[idx[a]];
          ++a;
        }
        v += weights[static_cast<std::size_t>(sets[s][m])] * u;
      }
      cos_t[s] = cs[theta];
      overlap[s] = v;
      pg *= cs[theta] * cs[theta];
    }
    double amp = 0.0;
    for (std::size_t s = 0; s < sets.size(); ++s) {
      double term = overlap[s];
      for (std::size_t t = 0; t < sets.size(); ++t)
        if (t != s) term *= cos_t[t];
      amp += term;
    }
    record(b, pg, amp * amp);
    std::size_t d = 0;
    while (d < n_angles && ++idx[d] > steps) idx[d++] = 0;
    if (d == n_angles) break;
  }
  return b;
}

/// Upper concave envelope of the filled bins plus (1, 0), evaluated at x.
/// Points left of the first filled bin take its value.
inline double hull_at(const Binned& b, double x) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < b.best.size(); ++i)
    if (b.best[i] >= 0) pts.emplace_back(b.ground[i], b.best[i]);
  pts.emplace_back(1.0, 0.0);
  std::sort(pts.begin(), pts.end());
  std::vector<std::pair<double, double>> up;
  for (const auto& p : pts) {
    while (up.size() >= 2) {
      const auto& o = up[up.size() - 2];
      const auto& q = up.back();
      if ((q.first - o.first) * (p.second - o.second) - (q.second - o.second) * (p.first - o.first) >= 0) up.pop_back();
      else break;
    }
    up.push_back(p);
  }
  if (x <= up.front().first) return up.front().second;
  for (std::size_t i = 1; i < up.size(); ++i)
    if (x <= up[i].first)
      return up[i - 1].second + (x - up[i - 1].first) / (up[i].first - up[i - 1].first) * (up[i].second - up[i - 1].second);
  return up.back().second;
}

}  // namespace oracle
