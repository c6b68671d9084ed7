#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "darkchain/geometry.hpp"
#include "darkchain/hilbert.hpp"
#include "darkchain/ode.hpp"

namespace darkchain {

/// Population of `state` recorded under `name` at every sample.
struct Projector {
  std::string name;
  PureState state;
};

struct EvolveOptions {
  int samples = 400;                ///< uniform grid over [0, duration], both ends included
  std::vector<double> sample_times; ///< overrides `samples` when non-empty
  StepControl control;
  std::vector<Projector> projectors;
  bool keep_states = false;
  bool check_positivity = true;
  double positivity_tolerance = 1e-6;
};

/// Sampled run. Observables always include "ground_population" (when block 0
/// is in the space) and "total_excitation", plus one series per projector.
struct Trajectory {
  std::vector<double> times;
  std::map<std::string, std::vector<double>> observables;
  std::vector<PureState> pure_states;
  std::vector<DensityMatrix> mixed_states;

  double max_norm_drift = 0.0;   ///< |norm - 1| or |trace - 1|
  double max_hermiticity = 0.0;  ///< density-matrix runs only
  double min_eigenvalue = 0.0;   ///< density-matrix runs with positivity checks
  IntegrationStats stats;

  [[nodiscard]] const std::vector<double>& series(const std::string& name) const;
  /// Appends `later`, shifting its times by the last time of this trajectory
  /// and skipping its first sample.
  void append(const Trajectory& later);
};

[[nodiscard]] std::vector<double> uniform_times(double duration, int samples);

/// i dψ/dt = H ψ with H = h.total().
[[nodiscard]] Trajectory schrodinger_evolve(const HamiltonianModel& h, const PureState& initial,
                                            double duration, const EvolveOptions& options = {});

/// Master equation with collective decay γ. The density matrix lives on
/// h.space; jumps that leave the space are dropped.
[[nodiscard]] Trajectory lindblad_evolve(const HamiltonianModel& h, const CouplingMatrices& c,
                                         const DensityMatrix& initial, double duration,
                                         const EvolveOptions& options = {});

/// Precomputed pieces of the Lindblad right-hand side, exposed for benchmarks.
/// The jump term J(a, b) = Σ_ij γ_ij ρ(a+i, b+j) is evaluated over the list of
/// allowed raisings (a, i) rather than through decay-channel operators.
class LindbladGenerator {
 public:
  LindbladGenerator(const HamiltonianModel& h, const CouplingMatrices& c);
  void operator()(const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& drho) const;

 private:
  SparseOp h_eff_;
  std::vector<Eigen::Index> row_;     // basis index a of raising p
  std::vector<Eigen::Index> raised_;  // index of a with emitter i_p excited
  Eigen::MatrixXd pair_gamma_;        // γ(i_p, i_q)
  mutable Eigen::MatrixXcd work_;
};

/// Γ_ψ = Σ_ij γ_ij <ψ|σ_i^+σ_j^-|ψ>; `state` must have a definite excitation number.
[[nodiscard]] double eigenstate_decay_rate(const PureState& state, const CouplingMatrices& c);

/// Dicke-limit rate of the NN exciton m: 2Γ cot²(mπ/(2N+2))/(N+1) for odd m, 0 for even m.
[[nodiscard]] double dicke_decay_rate(int m, int n_emitters);

struct LevelRate {
  double energy;
  double rate;
};

/// Energies and decay rates of all block-n eigenstates of the dipole Hamiltonian
/// (zero detuning, no gradient), ascending in energy.
[[nodiscard]] std::vector<LevelRate> manifold_rate_spectrum(const CouplingMatrices& c, int n_exc);

/// Excited population of a single-excitation state (amplitude f_i on emitter i)
/// under drive-free master-equation dynamics. The block-1 part of ρ evolves
/// with H_eff = Ω − iγ/2 alone, so the population is |exp(−i H_eff t) f|².
[[nodiscard]] std::vector<double> single_excitation_decay(const CouplingMatrices& c,
                                                          const Eigen::VectorXcd& site_amplitudes,
                                                          std::span<const double> times);

/// Exact propagator exp(-iHt) of a time-independent Hermitian generator via
/// one eigendecomposition; cheap repeated evaluation for scans.
class SpectralPropagator {
 public:
  explicit SpectralPropagator(const SparseOp& h);
  explicit SpectralPropagator(const Eigen::MatrixXcd& h);

  [[nodiscard]] Eigen::VectorXcd evolve(const Eigen::VectorXcd& psi0, double t) const;
  /// |<target|exp(-iHt)|psi0>|² for every t.
  [[nodiscard]] std::vector<double> populations(const Eigen::VectorXcd& psi0,
                                                const Eigen::VectorXcd& target,
                                                std::span<const double> times) const;
  [[nodiscard]] double population(const Eigen::VectorXcd& psi0, const Eigen::VectorXcd& target,
                                  double t) const;

 private:
  Eigen::VectorXd energies_;
  Eigen::MatrixXcd vectors_;
};

}  // namespace darkchain
