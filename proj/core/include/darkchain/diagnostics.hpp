#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "darkchain/hilbert.hpp"

namespace darkchain {

/// Single-emitter reduced density matrix in the basis (|g>, |e>).
[[nodiscard]] Eigen::Matrix2cd reduce_to_site(const PureState& psi, int site);
[[nodiscard]] Eigen::Matrix2cd reduce_to_site(const DensityMatrix& rho, int site);

/// −Σ λ log2 λ over the eigenvalues (0 log 0 = 0).
[[nodiscard]] double von_neumann_entropy(const Eigen::Matrix2cd& rho);

[[nodiscard]] std::vector<double> site_entropies(const PureState& psi);
[[nodiscard]] double min_site_entropy(const PureState& psi);

/// Single-site entropy of the symmetric n-excitation Dicke state of N emitters.
[[nodiscard]] double dicke_entropy(int n_emitters, int n_exc);

/// Maximum target population of a prepared state with at most k-atom
/// entanglement, as a function of its ground-state population.
struct DepthBoundary {
  int k = 1;
  std::vector<double> ground;  ///< P_G grid, ascending in [0, 1]
  std::vector<double> raw;     ///< pure-state maximum of P_t
  std::vector<double> hull;    ///< upper concave envelope of (ground, raw)

  /// Hull interpolated at P_G.
  [[nodiscard]] double at(double p_ground) const;
};

struct DepthOptions {
  int restarts = 20;
  std::uint64_t seed = 0x5eed;
  int pair_grid = 41;
};

[[nodiscard]] std::vector<double> default_ground_grid(int points = 101);

/// Separable (k = 1) boundary for a block-1 target with coefficients c_i.
[[nodiscard]] DepthBoundary depth_boundary_k1(std::span<const cplx> coefficients,
                                              std::span<const double> ground_grid,
                                              const DepthOptions& options = {});

/// k-producible boundary for a block-1 target. Every assignment of the
/// emitters to M−1 sets of size k and one of size N−k(M−1) is tried.
[[nodiscard]] DepthBoundary depth_boundary_general(const PureState& target, int k,
                                                   std::span<const double> ground_grid,
                                                   const DepthOptions& options = {});

/// Same, from the magnitudes |c_i| directly.
[[nodiscard]] DepthBoundary depth_boundary_from_weights(const Eigen::VectorXd& magnitudes, int k,
                                                        std::span<const double> ground_grid,
                                                        const DepthOptions& options = {});

/// max over u >= 0 with Σu = total of Σ_s w_s sqrt(exp(2u_s) − 1).
[[nodiscard]] double maximize_split(std::span<const double> weights, double total, const DepthOptions& options);

/// All ways to split {0..n-1} into M−1 sets of size k and one of size n−k(M−1).
[[nodiscard]] std::vector<std::vector<std::vector<int>>> depth_partitions(int n, int k);

/// Upper concave envelope of the points, evaluated back on xs.
[[nodiscard]] std::vector<double> upper_concave_hull(std::span<const double> xs, std::span<const double> ys);

struct DepthPoint {
  double p_ground = 0.0;
  double p_target = 0.0;
};

[[nodiscard]] DepthPoint depth_point(const DensityMatrix& prepared, const PureState& target);

/// Largest k whose hull the (P_G, P_t) point lies strictly above, i.e. the
/// state has more than k-atom entanglement; 0 if it exceeds none.
[[nodiscard]] int classify_depth(const DensityMatrix& prepared, const PureState& target,
                                 std::span<const DepthBoundary> boundaries);
[[nodiscard]] int classify_depth(DepthPoint point, std::span<const DepthBoundary> boundaries);

}  // namespace darkchain
