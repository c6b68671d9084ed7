#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace darkchain {

using Vec3 = Eigen::Vector3d;

/// Emitter chain. Lengths are in units of the transition wavelength λ0; the
/// chain axis is x.
struct ChainGeometry {
  std::vector<Vec3> positions;
  Vec3 dipole{0.0, 0.0, 1.0};  ///< unit vector, perpendicular to the axis by default
  double spacing = 0.0;        ///< nominal lattice constant a

  [[nodiscard]] int size() const noexcept { return static_cast<int>(positions.size()); }
};

/// Axial positional disorder: each emitter is displaced by N(0, (strength*a)^2).
struct DisorderSpec {
  double strength = 0.0;
  std::uint64_t seed = 0;
};

/// Collective couplings in units of the single-emitter rate Γ.
struct CouplingMatrices {
  Eigen::MatrixXd omega;  ///< coherent exchange Ω_ij, zero diagonal
  Eigen::MatrixXd gamma;  ///< collective decay γ_ij, diagonal Γ
  double single_rate = 1.0;

  [[nodiscard]] int size() const noexcept { return static_cast<int>(omega.rows()); }
};

struct DecayChannels {
  Eigen::VectorXd rates;     ///< ascending
  Eigen::MatrixXd channels;  ///< orthonormal columns
};

/// Value of the free-space dipole kernel for one pair.
struct PairCoupling {
  double omega;
  double gamma;
};

/// Free-space kernel at separation `distance` (in λ0) for parallel dipoles
/// making angle acos(cos_alpha) with the separation vector.
[[nodiscard]] PairCoupling dipole_kernel(double distance, double cos_alpha);

/// Smallest pairwise distance accepted by coupling_matrices.
inline constexpr double kMinSeparation = 1e-6;
/// Gamma eigenvalues in (-kRateClip, 0) are treated as rounding noise.
inline constexpr double kRateClip = 1e-10;

[[nodiscard]] ChainGeometry build_chain(int n, double spacing);
/// `dipole_angle` is the angle (radians) between dipole and chain axis.
[[nodiscard]] ChainGeometry build_chain(int n, double spacing, double dipole_angle);

[[nodiscard]] ChainGeometry perturb_positions(const ChainGeometry& geom, const DisorderSpec& disorder);

[[nodiscard]] CouplingMatrices coupling_matrices(const ChainGeometry& geom);

/// Keeps only nearest-neighbour Ω; γ is untouched.
[[nodiscard]] CouplingMatrices nn_truncate(const CouplingMatrices& c);

[[nodiscard]] DecayChannels decay_channels(const CouplingMatrices& c);

/// Smallest eigenvalue of γ after clipping.
[[nodiscard]] double min_decay_rate(const CouplingMatrices& c);

}  // namespace darkchain
