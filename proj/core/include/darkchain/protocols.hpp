#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "darkchain/dynamics.hpp"
#include "darkchain/geometry.hpp"
#include "darkchain/hilbert.hpp"
#include "darkchain/optimize.hpp"

namespace darkchain {

/// Eigenstate `index` (0 = lowest energy) of the dipole Hamiltonian in block n_exc.
struct TargetSpec {
  int n_exc = 1;
  int index = 0;
};

/// Rectangular pulse. Δ = ω0 − ωl, gradient Δ_B shifts emitter i (zero-based)
/// by 2Δ_B·i while the pulse is on.
struct DriveProtocol {
  std::vector<cplx> amplitudes;
  double detuning = 0.0;
  double gradient = 0.0;
  double duration = 0.0;
  TargetSpec target;
};

/// Adiabatically eliminated two-level description of a gradient protocol.
struct EffectiveModel {
  double resonance = 0.0;  ///< Δ at which |G> and the target are resonant
  double rabi = 0.0;       ///< ν_R
  double pi_time = 0.0;    ///< π/(2ν_R); +inf when ν_R = 0
  double target_rate = 0.0;
  bool weak_drive = false;     ///< η and Δ_B at most a tenth of Ω
  bool fast_transfer = false;  ///< ν_R at least ten times the target decay rate

  // Many-atom quantities (the two-atom model fills the analogous fields).
  double eps_dark = 0.0;
  double eps_bright = 0.0;
  double coupling_db = 0.0;  ///< Δ_db
  double chi_bright = 0.0;   ///< χ_b
  double chi_ratio = 0.0;    ///< χ_{d-1}/χ_{d+1}; +inf if d = N
  bool bright_partner_dominant = true;
};

/// η_j = η sin(π m j/(N+1)), j = 1..N.
[[nodiscard]] std::vector<cplx> tailored_amplitudes(int m, int n_emitters, double strength);
/// η_j = η(−1)^j, j = 1..N.
[[nodiscard]] std::vector<cplx> alternating_amplitudes(int n_emitters, double strength);
[[nodiscard]] std::vector<cplx> uniform_amplitudes(int n_emitters, double strength);

/// χ_m = √2η cot(mπ/(2N+2))/√(N+1) for odd m, 0 for even m.
[[nodiscard]] double symmetric_coupling(int m, int n_emitters, double strength);
[[nodiscard]] inline bool is_dark(int m) { return m % 2 == 0; }

/// ω_l − ω_0 = δω_ψ/n for an n-photon resonance with `target`; a protocol
/// uses detuning = −two_photon_resonance(...).
[[nodiscard]] double two_photon_resonance(const PureState& target, int n_exc, const CouplingMatrices& c);

[[nodiscard]] EffectiveModel two_atom_effective(double omega, double strength, double gradient,
                                                double target_rate = 0.0);
/// Dark NN exciton d (even) reached through b = d − 1.
[[nodiscard]] EffectiveModel many_atom_effective(int dark, int n_emitters, double strength, double gradient,
                                                 const CouplingMatrices& c);

/// Three-amplitude linear model i ċ = M c, solved exactly.
struct ThreeLevelTrajectory {
  std::vector<double> times;
  std::vector<Eigen::Vector3cd> amplitudes;
};

/// Basis (S, A, G).
[[nodiscard]] Eigen::Matrix3cd two_atom_three_level(double omega, double strength, double gradient,
                                                    double detuning);
/// Basis (b, d, G).
[[nodiscard]] Eigen::Matrix3cd many_atom_three_level(const EffectiveModel& m, int n_emitters, double gradient,
                                                     double detuning);
[[nodiscard]] ThreeLevelTrajectory reduced_three_level_evolve(const Eigen::Matrix3cd& m,
                                                              const Eigen::Vector3cd& initial,
                                                              std::span<const double> times);

/// Target eigenstate on the single block space.
[[nodiscard]] PureState resolve_target(const CouplingMatrices& c, const TargetSpec& target);

/// Space used for protocol runs: blocks 0 .. n_target + 1.
[[nodiscard]] SpacePtr protocol_space(int n_emitters, const TargetSpec& target);

struct PreparationOptions {
  double tail_duration = 10.0;  ///< drive-free evolution after the pulse
  int pulse_samples = 400;
  int tail_samples = 200;
  std::optional<int> highest_block;  ///< override of the n_target + 1 truncation
  StepControl control;
  bool keep_states = false;
};

struct PreparationResult {
  Trajectory trajectory;  ///< observables include "target_population"
  double fidelity = 0.0;  ///< target population at the end of the pulse
  double tail_rate = 0.0; ///< least-squares slope of −ln P_target over the tail
  double target_rate = 0.0;
  PureState target;
  std::optional<DensityMatrix> state_at_pulse_end;
  std::optional<PureState> pure_at_pulse_end;
};

/// Drive on during [0, T], then drive and gradient off. Starts in |G>.
[[nodiscard]] PreparationResult run_preparation(const DriveProtocol& protocol, const CouplingMatrices& c,
                                                bool dissipative, const PreparationOptions& options = {});

/// Hamiltonian of a protocol while the pulse is on.
[[nodiscard]] HamiltonianModel protocol_hamiltonian(const DriveProtocol& protocol, const CouplingMatrices& c,
                                                    SpacePtr space);

struct Range {
  double lo = 0.0;
  double hi = 0.0;
  int grid = 41;
};

/// Free parameters of optimize_pulse; unset ones keep the template value.
struct PulseSearch {
  std::optional<Range> duration;
  std::optional<Range> gradient;
  std::optional<Range> detuning;
  int sweeps = 2;
  /// When the duration is free it is profiled on this many uniform points for
  /// every trial of the other parameters, then refined by golden section.
  int duration_profile = 2001;
  /// Detuning as a function of gradient (e.g. the two-atom resonance); used
  /// when the gradient is free and the detuning is not.
  std::function<double(double)> detuning_rule;
};

struct OptimizedPulse {
  DriveProtocol protocol;
  double population = 0.0;  ///< coherent target population at the optimum
  bool degenerate = false;
  int evaluations = 0;
};

/// Maximizes the coherent target population (exact propagator on the protocol space).
[[nodiscard]] OptimizedPulse optimize_pulse(const DriveProtocol& base, const CouplingMatrices& c,
                                            const PulseSearch& search);

/// Uniform-drive preparation of a dark exciton with a gradient. The detuning
/// is searched in [resonance − below, resonance + above] around the adiabatic
/// prediction, the duration in [duration_lo, duration_factor · T_π].
struct GradientSearch {
  double detuning_below = 60.0;
  double detuning_above = 20.0;
  int detuning_grid = 1601;
  double duration_lo = 1.0;
  double duration_factor = 2.0;
  int duration_profile = 2001;
};

struct GradientPulse {
  EffectiveModel model;  ///< two-atom model for N = 2, NN many-atom model otherwise
  int dark = 0;          ///< NN exciton index of the target (largest even m <= N)
  OptimizedPulse pulse;
};

/// Target: block-1 eigenstate N − dark (the dark exciton in NN energy order).
[[nodiscard]] GradientPulse optimize_gradient_pulse(const CouplingMatrices& c, double strength, double gradient,
                                                    const GradientSearch& search = {});

/// Coherent target population of a protocol at times `t` (spectral propagator).
[[nodiscard]] std::vector<double> coherent_populations(const DriveProtocol& protocol, const CouplingMatrices& c,
                                                       std::span<const double> times);

/// Least-squares slope of −ln y against t (points with y <= 0 are skipped).
[[nodiscard]] double fit_decay_rate(std::span<const double> t, std::span<const double> y);

}  // namespace darkchain
