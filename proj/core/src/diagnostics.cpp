#include "darkchain/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

#include "darkchain/optimize.hpp"
#include "darkchain/rng.hpp"

namespace darkchain {
namespace {

constexpr double kAbove = 1e-9;

double gain(double u) { return std::sqrt(std::expm1(2.0 * u)); }

double split_value(std::span<const double> w, const std::vector<double>& u) {
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * gain(u[i]);
  return s;
}

// Pairwise redistribution until no pair improves.
double polish(std::span<const double> w, std::vector<double>& u, int grid) {
  double best = split_value(w, u);
  for (int pass = 0; pass < 50; ++pass) {
    const double before = best;
    for (std::size_t a = 0; a < u.size(); ++a) {
      for (std::size_t b = a + 1; b < u.size(); ++b) {
        const double s = u[a] + u[b];
        if (s <= 0.0) continue;
        const double rest = best - w[a] * gain(u[a]) - w[b] * gain(u[b]);
        auto f = [&](double x) { return w[a] * gain(x) + w[b] * gain(s - x); };
        const LineResult lr = grid_golden_maximize(f, 0.0, s, grid, 1e-12 * (1.0 + s));
        if (rest + lr.value > best) {
          u[a] = lr.x;
          u[b] = s - lr.x;
          best = rest + lr.value;
        }
      }
    }
    if (best - before <= 1e-13 * (1.0 + best)) break;
  }
  return best;
}

}  // namespace

Eigen::Matrix2cd reduce_to_site(const PureState& psi, int site) {
  const Space& s = *psi.space;
  if (site < 0 || site >= s.emitters()) throw std::invalid_argument("reduce_to_site: site out of range");
  const Mask bit = Mask{1} << site;
  double pe = 0.0, pg = 0.0;
  cplx eg(0.0, 0.0);
  for (Eigen::Index k = 0; k < s.dim(); ++k) {
    const cplx a = psi.amplitudes(k);
    const Mask m = s.mask(k);
    if (m & bit) {
      pe += std::norm(a);
      if (const auto j = s.index_of(m ^ bit)) eg += a * std::conj(psi.amplitudes(*j));
    } else {
      pg += std::norm(a);
    }
  }
  const double norm = pe + pg;
  Eigen::Matrix2cd r;
  r << pg / norm, std::conj(eg) / norm, eg / norm, pe / norm;
  return r;
}

Eigen::Matrix2cd reduce_to_site(const DensityMatrix& rho, int site) {
  const Space& s = *rho.space;
  if (site < 0 || site >= s.emitters()) throw std::invalid_argument("reduce_to_site: site out of range");
  const Mask bit = Mask{1} << site;
  double pe = 0.0, pg = 0.0;
  cplx eg(0.0, 0.0);
  for (Eigen::Index k = 0; k < s.dim(); ++k) {
    const Mask m = s.mask(k);
    if (m & bit) {
      pe += rho.rho(k, k).real();
      if (const auto j = s.index_of(m ^ bit)) eg += rho.rho(k, *j);
    } else {
      pg += rho.rho(k, k).real();
    }
  }
  const double norm = pe + pg;
  Eigen::Matrix2cd r;
  r << pg / norm, std::conj(eg) / norm, eg / norm, pe / norm;
  return r;
}

double von_neumann_entropy(const Eigen::Matrix2cd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double l = std::clamp(es.eigenvalues()(i), 0.0, 1.0);
    if (l > 0.0) s -= l * std::log2(l);
  }
  return std::clamp(s, 0.0, 1.0);
}

std::vector<double> site_entropies(const PureState& psi) {
  std::vector<double> out;
  for (int i = 0; i < psi.space->emitters(); ++i) out.push_back(von_neumann_entropy(reduce_to_site(psi, i)));
  return out;
}

double min_site_entropy(const PureState& psi) {
  const auto s = site_entropies(psi);
  return *std::min_element(s.begin(), s.end());
}

double dicke_entropy(int n_emitters, int n_exc) {
  if (n_emitters < 1 || n_exc < 0 || n_exc > n_emitters) {
    throw std::invalid_argument("dicke_entropy: need 0 <= n <= N");
  }
  if (n_exc == 0 || n_exc == n_emitters) return 0.0;
  const double p = static_cast<double>(n_exc) / n_emitters;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double DepthBoundary::at(double p_ground) const {
  if (ground.empty()) throw std::logic_error("DepthBoundary: empty boundary");
  if (p_ground <= ground.front()) return hull.front();
  if (p_ground >= ground.back()) return hull.back();
  const auto it = std::upper_bound(ground.begin(), ground.end(), p_ground);
  const std::size_t i = static_cast<std::size_t>(it - ground.begin());
  const double x0 = ground[i - 1], x1 = ground[i];
  const double t = (p_ground - x0) / (x1 - x0);
  return hull[i - 1] + t * (hull[i] - hull[i - 1]);
}

std::vector<double> default_ground_grid(int points) {
  if (points < 2) throw std::invalid_argument("default_ground_grid: need at least two points");
  std::vector<double> g;
  for (int i = 0; i < points; ++i) g.push_back(static_cast<double>(i) / (points - 1));
  return g;
}

double maximize_split(std::span<const double> weights, double total, const DepthOptions& options) {
  const std::size_t m = weights.size();
  if (m == 0) return 0.0;
  if (total <= 0.0) return 0.0;
  if (m == 1) return weights[0] * gain(total);

  // Deterministic starts (all budget on one set, even split), then random ones.
  std::vector<std::vector<double>> starts;
  for (std::size_t s = 0; s < m; ++s) {
    std::vector<double> u(m, 0.0);
    u[s] = total;
    starts.push_back(u);
  }
  starts.emplace_back(m, total / static_cast<double>(m));
  auto engine = make_engine(substream_seed(options.seed, {m, static_cast<std::uint64_t>(total * 1e12)}));
  std::exponential_distribution<double> expo(1.0);
  while (static_cast<int>(starts.size()) < std::max(options.restarts, static_cast<int>(m) + 1)) {
    std::vector<double> u(m);
    double sum = 0.0;
    for (auto& x : u) sum += (x = expo(engine));
    for (auto& x : u) x *= total / sum;
    starts.push_back(u);
  }
  double best = 0.0;
  for (auto& u : starts) best = std::max(best, polish(weights, u, options.pair_grid));
  return best;
}

std::vector<std::vector<std::vector<int>>> depth_partitions(int n, int k) {
  if (n < 1 || k < 1 || k > n) throw std::invalid_argument("depth_partitions: need 1 <= k <= N");
  const int sets = (n + k - 1) / k;
  std::vector<int> sizes(static_cast<std::size_t>(sets), k);
  sizes.back() = n - k * (sets - 1);

  std::vector<std::vector<std::vector<int>>> out;
  std::vector<std::vector<int>> current(static_cast<std::size_t>(sets));
  // Assign emitters in order; sets of equal size are filled in order of their
  // first element to avoid listing the same partition twice.
  std::function<void(int)> place = [&](int site) {
    if (site == n) {
      out.push_back(current);
      return;
    }
    for (std::size_t s = 0; s < current.size(); ++s) {
      if (static_cast<int>(current[s].size()) >= sizes[s]) continue;
      if (current[s].empty()) {
        bool earlier_empty_twin = false;
        for (std::size_t q = 0; q < s; ++q)
          if (current[q].empty() && sizes[q] == sizes[s]) earlier_empty_twin = true;
        if (earlier_empty_twin) continue;
      }
      current[s].push_back(site);
      place(site + 1);
      current[s].pop_back();
    }
  };
  place(0);
  return out;
}

std::vector<double> upper_concave_hull(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.empty()) throw std::invalid_argument("upper_concave_hull: bad input");
  std::vector<std::size_t> h;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    while (h.size() >= 2) {
      const std::size_t a = h[h.size() - 2], b = h.back();
      const double cross = (xs[b] - xs[a]) * (ys[i] - ys[a]) - (ys[b] - ys[a]) * (xs[i] - xs[a]);
      if (cross >= 0.0) h.pop_back();
      else break;
    }
    h.push_back(i);
  }
  std::vector<double> out(xs.size());
  std::size_t seg = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    while (seg + 1 < h.size() && xs[h[seg + 1]] < xs[i]) ++seg;
    if (seg + 1 >= h.size()) {
      out[i] = ys[h.back()];
      continue;
    }
    const std::size_t a = h[seg], b = h[seg + 1];
    const double t = xs[b] > xs[a] ? (xs[i] - xs[a]) / (xs[b] - xs[a]) : 0.0;
    out[i] = std::max(ys[i], ys[a] + t * (ys[b] - ys[a]));
  }
  return out;
}

DepthBoundary depth_boundary_from_weights(const Eigen::VectorXd& magnitudes, int k,
                                          std::span<const double> ground_grid, const DepthOptions& options) {
  const int n = static_cast<int>(magnitudes.size());
  if (k < 1 || k > n) throw std::invalid_argument("depth_boundary: k must lie in [1, N]");
  for (std::size_t i = 1; i < ground_grid.size(); ++i)
    if (!(ground_grid[i] > ground_grid[i - 1])) throw std::invalid_argument("depth_boundary: grid must ascend");

  const Eigen::VectorXd c = magnitudes.cwiseAbs() / magnitudes.norm();
  std::vector<std::vector<double>> weight_sets;
  for (const auto& partition : depth_partitions(n, k)) {
    std::vector<double> w;
    for (const auto& set : partition) {
      double s = 0.0;
      for (int i : set) s += c(i) * c(i);
      w.push_back(std::sqrt(s));
    }
    std::sort(w.begin(), w.end());
    if (std::find(weight_sets.begin(), weight_sets.end(), w) == weight_sets.end()) weight_sets.push_back(w);
  }

  DepthBoundary b;
  b.k = k;
  b.ground.assign(ground_grid.begin(), ground_grid.end());
  for (double pg : ground_grid) {
    if (pg < 0.0 || pg > 1.0) throw std::invalid_argument("depth_boundary: P_G outside [0, 1]");
    double best = 0.0;
    if (pg == 0.0) {
      for (const auto& w : weight_sets) best = std::max(best, w.back() * w.back());
    } else if (pg < 1.0) {
      const double total = -0.5 * std::log(pg);
      for (const auto& w : weight_sets) {
        const double f = maximize_split(w, total, options);
        best = std::max(best, pg * f * f);
      }
    }
    b.raw.push_back(std::min(best, 1.0 - pg));
  }
  b.hull = upper_concave_hull(b.ground, b.raw);
  return b;
}

DepthBoundary depth_boundary_k1(std::span<const cplx> coefficients, std::span<const double> ground_grid,
                                const DepthOptions& options) {
  Eigen::VectorXd m(static_cast<Eigen::Index>(coefficients.size()));
  for (std::size_t i = 0; i < coefficients.size(); ++i) m(static_cast<Eigen::Index>(i)) = std::abs(coefficients[i]);
  if (m.size() == 0 || m.norm() == 0.0) throw std::invalid_argument("depth_boundary_k1: empty target");
  return depth_boundary_from_weights(m, 1, ground_grid, options);
}

DepthBoundary depth_boundary_general(const PureState& target, int k, std::span<const double> ground_grid,
                                     const DepthOptions& options) {
  const auto n = definite_excitation(target);
  if (!n || *n != 1) throw std::invalid_argument("depth_boundary_general: target must lie in block 1");
  const Space& s = *target.space;
  Eigen::VectorXd m(s.emitters());
  for (int i = 0; i < s.emitters(); ++i) m(i) = std::abs(target.amplitudes(*s.index_of(Mask{1} << i)));
  return depth_boundary_from_weights(m, k, ground_grid, options);
}

DepthPoint depth_point(const DensityMatrix& prepared, const PureState& target) {
  DepthPoint p;
  p.p_target = prepared.population(target);
  const auto g = prepared.space->index_of(0);
  p.p_ground = g ? prepared.rho(*g, *g).real() : 0.0;
  return p;
}

int classify_depth(DepthPoint point, std::span<const DepthBoundary> boundaries) {
  int depth = 0;
  for (const auto& b : boundaries)
    if (point.p_target > b.at(point.p_ground) + kAbove) depth = std::max(depth, b.k);
  return depth;
}

int classify_depth(const DensityMatrix& prepared, const PureState& target,
                   std::span<const DepthBoundary> boundaries) {
  return classify_depth(depth_point(prepared, target), boundaries);
}

}  // namespace darkchain
