#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "darkchain/geometry.hpp"

namespace darkchain {

using cplx = std::complex<double>;
using SparseOp = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;
using Mask = std::uint32_t;

/// Largest chain for which the full 2^N space may be materialized.
inline constexpr int kMaxFullSpaceEmitters = 14;
/// Largest chain for single-block work.
inline constexpr int kMaxEmitters = 24;

/// Product basis of N two-level emitters restricted to the excitation blocks
/// [lowest, highest]. Bit j of a mask set means emitter j is excited. States are
/// ordered by excitation number, then by ascending mask.
class Space {
 public:
  Space(int emitters, int lowest, int highest);

  static std::shared_ptr<const Space> full(int emitters);
  static std::shared_ptr<const Space> blocks(int emitters, int lowest, int highest);
  static std::shared_ptr<const Space> block(int emitters, int n) { return blocks(emitters, n, n); }

  [[nodiscard]] int emitters() const noexcept { return emitters_; }
  [[nodiscard]] int lowest() const noexcept { return lowest_; }
  [[nodiscard]] int highest() const noexcept { return highest_; }
  [[nodiscard]] Eigen::Index dim() const noexcept { return static_cast<Eigen::Index>(masks_.size()); }
  [[nodiscard]] bool contains_block(int n) const noexcept { return n >= lowest_ && n <= highest_; }

  [[nodiscard]] Mask mask(Eigen::Index k) const { return masks_[static_cast<std::size_t>(k)]; }
  [[nodiscard]] int excitation(Eigen::Index k) const;
  [[nodiscard]] std::optional<Eigen::Index> index_of(Mask m) const;

  [[nodiscard]] Eigen::Index block_offset(int n) const;
  [[nodiscard]] Eigen::Index block_size(int n) const;

  friend bool operator==(const Space& a, const Space& b) noexcept {
    return a.emitters_ == b.emitters_ && a.lowest_ == b.lowest_ && a.highest_ == b.highest_;
  }

 private:
  int emitters_;
  int lowest_;
  int highest_;
  std::vector<Mask> masks_;
  std::vector<Eigen::Index> offsets_;  // block n starts at offsets_[n - lowest_]
};

using SpacePtr = std::shared_ptr<const Space>;

/// All masks of N emitters with n_exc set bits, ascending.
[[nodiscard]] std::vector<Mask> manifold_basis(int n_emitters, int n_exc);

[[nodiscard]] long long binomial(int n, int k);

struct PureState {
  SpacePtr space;
  Eigen::VectorXcd amplitudes;
  std::optional<int> block;  ///< set when the state lives in one excitation block

  [[nodiscard]] double norm() const { return amplitudes.norm(); }
};

struct DensityMatrix {
  SpacePtr space;
  Eigen::MatrixXcd rho;

  [[nodiscard]] static DensityMatrix from_pure(const PureState& psi);
  [[nodiscard]] double trace() const { return rho.trace().real(); }
  [[nodiscard]] double population(const PureState& psi) const;
};

/// |G>, the all-ground state.
[[nodiscard]] PureState ground_state(SpacePtr space);
/// Product basis state.
[[nodiscard]] PureState basis_state(SpacePtr space, Mask m);
/// Re-expresses `psi` on another space; amplitudes outside `target` must vanish.
[[nodiscard]] PureState embed(const PureState& psi, SpacePtr target);
/// Excitation number of `psi` if its weight outside one block is below tol.
[[nodiscard]] std::optional<int> definite_excitation(const PureState& psi, double tol = 1e-10);
/// Symmetric Dicke state with n excitations.
[[nodiscard]] PureState dicke_state(SpacePtr space, int n);

/// Coherent model in the frame rotating at the laser frequency.
/// `static_part` conserves excitation number; `drive_part` couples n <-> n±1.
struct HamiltonianModel {
  SpacePtr space;
  SparseOp static_part;
  SparseOp drive_part;

  [[nodiscard]] SparseOp total() const { return static_part + drive_part; }
};

/// σ_site^- on `space` (transitions leaving the space are dropped).
[[nodiscard]] SparseOp lowering(const Space& space, int site);
/// Σ_ij w_ij σ_i^+ σ_j^- for a real symmetric or general weight matrix.
[[nodiscard]] SparseOp hopping(const Space& space, const Eigen::MatrixXd& weights);

/// Static part: Σ_i (Δ_i + 2 Δ_B i) σ_i^+σ_i^- + Σ_{i≠j} Ω_ij σ_i^+σ_j^- with
/// zero-based site index i, Δ = ω0 − ωl.
[[nodiscard]] HamiltonianModel assemble_static(SpacePtr space, const CouplingMatrices& c,
                                               std::span<const double> detuning, double gradient);
/// Uniform detuning overload.
[[nodiscard]] HamiltonianModel assemble_static(SpacePtr space, const CouplingMatrices& c,
                                               double detuning, double gradient);

/// Drive Σ_j (η_j σ_j^+ + η_j^* σ_j^-).
[[nodiscard]] SparseOp assemble_drive(const Space& space, std::span<const cplx> amplitudes);

/// Static model plus drive.
[[nodiscard]] HamiltonianModel with_drive(HamiltonianModel h, std::span<const cplx> amplitudes);

/// Nearest-neighbour exciton |m>, f_j = sqrt(2/(N+1)) sin(π m j/(N+1)), j = 1..N.
[[nodiscard]] PureState nn_exciton(int m, SpacePtr space);
[[nodiscard]] Eigen::VectorXd nn_exciton_coefficients(int m, int n_emitters);
/// NN exciton shift 2Ω cos(π m/(N+1)).
[[nodiscard]] double nn_exciton_shift(int m, int n_emitters, double omega);

struct Eigenpair {
  double energy;
  PureState state;
};

/// Eigenpairs of the static part restricted to block n, ascending in energy.
/// States are returned on h.space. Degenerate subspaces get a canonical basis
/// (Gram-Schmidt of the projected unit vectors; first nonzero coefficient real
/// and positive), so the output does not depend on the LAPACK rotation.
[[nodiscard]] std::vector<Eigenpair> block_eigensystem(const HamiltonianModel& h, int n_exc);

/// C_ij = <ψ|σ_i^+ σ_j^-|ψ>, evaluated directly on the amplitudes.
[[nodiscard]] Eigen::MatrixXcd excitation_correlations(const PureState& psi);

/// <ψ|H_dip|ψ> with H_dip = Σ_{i≠j} Ω_ij σ_i^+σ_j^-.
[[nodiscard]] double dip_expectation(const PureState& psi, const CouplingMatrices& c);

/// Largest |A - A^†| entry.
[[nodiscard]] double hermiticity_defect(const SparseOp& a);
[[nodiscard]] double hermiticity_defect(const Eigen::MatrixXcd& a);

}  // namespace darkchain
