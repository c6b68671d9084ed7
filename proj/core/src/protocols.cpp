#include "darkchain/protocols.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "darkchain/errors.hpp"

namespace darkchain {
namespace {

void require_index(int m, int n, const char* who) {
  if (n < 1 || m < 1 || m > n) throw std::invalid_argument(std::string(who) + ": index m must lie in [1, N]");
}

constexpr double kRegimeFactor = 10.0;

}  // namespace

std::vector<cplx> tailored_amplitudes(int m, int n_emitters, double strength) {
  require_index(m, n_emitters, "tailored_amplitudes");
  std::vector<cplx> eta;
  for (int j = 1; j <= n_emitters; ++j) eta.emplace_back(strength * std::sin(std::numbers::pi * m * j / (n_emitters + 1)));
  return eta;
}

std::vector<cplx> alternating_amplitudes(int n_emitters, double strength) {
  if (n_emitters < 2) throw std::invalid_argument("alternating_amplitudes: need at least two emitters");
  std::vector<cplx> eta;
  for (int j = 1; j <= n_emitters; ++j) eta.emplace_back(j % 2 == 0 ? strength : -strength);
  return eta;
}

std::vector<cplx> uniform_amplitudes(int n_emitters, double strength) {
  if (n_emitters < 1) throw std::invalid_argument("uniform_amplitudes: need at least one emitter");
  return std::vector<cplx>(static_cast<std::size_t>(n_emitters), cplx(strength, 0.0));
}

double symmetric_coupling(int m, int n_emitters, double strength) {
  require_index(m, n_emitters, "symmetric_coupling");
  if (is_dark(m)) return 0.0;
  return std::sqrt(2.0) * strength / std::sqrt(n_emitters + 1.0) /
         std::tan(m * std::numbers::pi / (2.0 * n_emitters + 2.0));
}

double two_photon_resonance(const PureState& target, int n_exc, const CouplingMatrices& c) {
  if (n_exc <= 0) throw std::invalid_argument("two_photon_resonance: target must contain excitations");
  const auto n = definite_excitation(target);
  if (!n || *n != n_exc) throw std::invalid_argument("two_photon_resonance: target is not in block n");
  return dip_expectation(target, c) / n_exc;
}

EffectiveModel two_atom_effective(double omega, double strength, double gradient, double target_rate) {
  const double arg = gradient * gradient + omega * omega - 2.0 * strength * strength;
  if (arg < 0.0) throw RegimeViolation("two_atom_effective: Δ_B² + Ω² − 2η² is negative");
  const double root = std::sqrt(arg);
  EffectiveModel m;
  m.resonance = -gradient + root;
  m.rabi = std::abs(std::sqrt(2.0) * strength * gradient / (omega + root));
  m.pi_time = m.rabi > 0.0 ? std::numbers::pi / (2.0 * m.rabi) : std::numeric_limits<double>::infinity();
  m.target_rate = target_rate;
  m.weak_drive = std::max(std::abs(strength), std::abs(gradient)) * kRegimeFactor <= std::abs(omega);
  m.fast_transfer = m.rabi >= kRegimeFactor * target_rate;
  m.eps_dark = -omega;
  m.eps_bright = omega;
  m.coupling_db = -gradient;
  m.chi_bright = std::sqrt(2.0) * strength;
  m.chi_ratio = std::numeric_limits<double>::infinity();
  return m;
}

EffectiveModel many_atom_effective(int dark, int n_emitters, double strength, double gradient,
                                   const CouplingMatrices& c) {
  require_index(dark, n_emitters, "many_atom_effective");
  if (!is_dark(dark)) throw std::invalid_argument("many_atom_effective: dark index must be even");
  if (c.size() != n_emitters) throw std::invalid_argument("many_atom_effective: couplings do not match N");
  const int bright = dark - 1;
  const double omega = c.omega(0, 1);
  EffectiveModel m;
  m.eps_dark = nn_exciton_shift(dark, n_emitters, omega);
  m.eps_bright = nn_exciton_shift(bright, n_emitters, omega);
  const Eigen::VectorXd fd = nn_exciton_coefficients(dark, n_emitters);
  const Eigen::VectorXd fb = nn_exciton_coefficients(bright, n_emitters);
  double s = 0.0;
  for (int i = 0; i < n_emitters; ++i) s += i * fd(i) * fb(i);
  m.coupling_db = 2.0 * gradient * s;
  m.chi_bright = symmetric_coupling(bright, n_emitters, strength);
  const double eps_db = m.eps_dark - m.eps_bright;
  const double arg = eps_db * eps_db / 4.0 + m.coupling_db * m.coupling_db - m.chi_bright * m.chi_bright;
  if (arg < 0.0) throw RegimeViolation("many_atom_effective: ε_db²/4 + Δ_db² − χ_b² is negative");
  const double shift = gradient * (n_emitters - 1);
  m.resonance = -shift - (m.eps_dark + m.eps_bright) / 2.0 + std::sqrt(arg);
  m.rabi = std::abs(m.chi_bright * std::abs(m.coupling_db) / (m.resonance + m.eps_bright + shift));
  m.pi_time = m.rabi > 0.0 ? std::numbers::pi / (2.0 * m.rabi) : std::numeric_limits<double>::infinity();

  const auto space = Space::block(n_emitters, 1);
  m.target_rate = eigenstate_decay_rate(nn_exciton(dark, space), c);
  m.weak_drive = std::max(std::abs(strength), std::abs(gradient)) * kRegimeFactor <= std::abs(omega);
  m.fast_transfer = m.rabi >= kRegimeFactor * m.target_rate;
  if (dark + 1 <= n_emitters) {
    const double other = symmetric_coupling(dark + 1, n_emitters, strength);
    m.chi_ratio = other != 0.0 ? std::abs(m.chi_bright / other) : std::numeric_limits<double>::infinity();
  } else {
    m.chi_ratio = std::numeric_limits<double>::infinity();
  }
  m.bright_partner_dominant = m.chi_ratio >= kRegimeFactor;
  return m;
}

Eigen::Matrix3cd two_atom_three_level(double omega, double strength, double gradient, double detuning) {
  const double x = std::sqrt(2.0) * strength;
  Eigen::Matrix3cd m;
  m << detuning + gradient + omega, -gradient, x,
       -gradient, detuning + gradient - omega, 0.0,
       x, 0.0, 0.0;
  return m;
}

Eigen::Matrix3cd many_atom_three_level(const EffectiveModel& e, int n_emitters, double gradient,
                                       double detuning) {
  const double shift = gradient * (n_emitters - 1);
  Eigen::Matrix3cd m;
  m << detuning + e.eps_bright + shift, e.coupling_db, e.chi_bright,
       e.coupling_db, detuning + e.eps_dark + shift, 0.0,
       e.chi_bright, 0.0, 0.0;
  return m;
}

ThreeLevelTrajectory reduced_three_level_evolve(const Eigen::Matrix3cd& m, const Eigen::Vector3cd& initial,
                                                std::span<const double> times) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(0.5 * (m + m.adjoint()));
  const Eigen::Vector3cd a = es.eigenvectors().adjoint() * initial;
  ThreeLevelTrajectory out;
  for (double t : times) {
    Eigen::Vector3cd phased;
    for (int k = 0; k < 3; ++k) phased(k) = a(k) * std::exp(cplx(0.0, -es.eigenvalues()(k) * t));
    out.times.push_back(t);
    out.amplitudes.push_back(es.eigenvectors() * phased);
  }
  return out;
}

PureState resolve_target(const CouplingMatrices& c, const TargetSpec& target) {
  const auto space = Space::block(c.size(), target.n_exc);
  const auto h = assemble_static(space, c, 0.0, 0.0);
  const auto eig = block_eigensystem(h, target.n_exc);
  if (target.index < 0 || target.index >= static_cast<int>(eig.size())) {
    throw std::invalid_argument("resolve_target: eigenstate index out of range");
  }
  return eig[static_cast<std::size_t>(target.index)].state;
}

SpacePtr protocol_space(int n_emitters, const TargetSpec& target) {
  return Space::blocks(n_emitters, 0, std::min(n_emitters, target.n_exc + 1));
}

HamiltonianModel protocol_hamiltonian(const DriveProtocol& p, const CouplingMatrices& c, SpacePtr space) {
  return with_drive(assemble_static(std::move(space), c, p.detuning, p.gradient), p.amplitudes);
}

double fit_decay_rate(std::span<const double> t, std::span<const double> y) {
  double st = 0, sy = 0, stt = 0, sty = 0;
  int n = 0;
  for (std::size_t k = 0; k < std::min(t.size(), y.size()); ++k) {
    if (!(y[k] > 0.0)) continue;
    const double ly = std::log(y[k]);
    st += t[k];
    sy += ly;
    stt += t[k] * t[k];
    sty += t[k] * ly;
    ++n;
  }
  if (n < 2) throw std::invalid_argument("fit_decay_rate: need two positive samples");
  const double denom = n * stt - st * st;
  if (denom <= 0.0) throw std::invalid_argument("fit_decay_rate: degenerate time grid");
  return -(n * sty - st * sy) / denom;
}

PreparationResult run_preparation(const DriveProtocol& protocol, const CouplingMatrices& c, bool dissipative,
                                  const PreparationOptions& options) {
  const int n = c.size();
  if (!(protocol.duration > 0.0)) throw std::invalid_argument("run_preparation: duration must be positive");
  if (static_cast<int>(protocol.amplitudes.size()) != n) {
    throw std::invalid_argument("run_preparation: need one amplitude per emitter");
  }
  PreparationResult r;
  r.target = resolve_target(c, protocol.target);
  r.target_rate = eigenstate_decay_rate(r.target, c);
  const int top = options.highest_block.value_or(protocol.target.n_exc + 1);
  const auto space = Space::blocks(n, 0, std::min(n, std::max(top, protocol.target.n_exc)));
  const PureState target = embed(r.target, space);

  const HamiltonianModel pulse = protocol_hamiltonian(protocol, c, space);
  const HamiltonianModel free = assemble_static(space, c, protocol.detuning, 0.0);

  EvolveOptions on;
  on.samples = options.pulse_samples;
  on.control = options.control;
  on.projectors.push_back({"target_population", target});
  on.keep_states = true;
  EvolveOptions off = on;
  off.samples = options.tail_samples;
  off.keep_states = options.keep_states;

  if (dissipative) {
    const DensityMatrix rho0 = DensityMatrix::from_pure(ground_state(space));
    r.trajectory = lindblad_evolve(pulse, c, rho0, protocol.duration, on);
    r.state_at_pulse_end = r.trajectory.mixed_states.back();
    if (!options.keep_states) r.trajectory.mixed_states.clear();
    if (options.tail_duration > 0.0) {
      r.trajectory.append(lindblad_evolve(free, c, *r.state_at_pulse_end, options.tail_duration, off));
    }
  } else {
    r.trajectory = schrodinger_evolve(pulse, ground_state(space), protocol.duration, on);
    r.pure_at_pulse_end = r.trajectory.pure_states.back();
    if (!options.keep_states) r.trajectory.pure_states.clear();
    if (options.tail_duration > 0.0) {
      r.trajectory.append(schrodinger_evolve(free, *r.pure_at_pulse_end, options.tail_duration, off));
    }
  }
  const auto& pop = r.trajectory.series("target_population");
  r.fidelity = pop[static_cast<std::size_t>(options.pulse_samples - 1)];
  if (options.tail_duration > 0.0) {
    const std::size_t first = static_cast<std::size_t>(options.pulse_samples - 1);
    r.tail_rate = fit_decay_rate(std::span(r.trajectory.times).subspan(first), std::span(pop).subspan(first));
  }
  return r;
}

std::vector<double> coherent_populations(const DriveProtocol& protocol, const CouplingMatrices& c,
                                         std::span<const double> times) {
  const auto space = protocol_space(c.size(), protocol.target);
  const PureState target = embed(resolve_target(c, protocol.target), space);
  const SpectralPropagator prop(protocol_hamiltonian(protocol, c, space).total());
  return prop.populations(ground_state(space).amplitudes, target.amplitudes, times);
}

OptimizedPulse optimize_pulse(const DriveProtocol& base, const CouplingMatrices& c, const PulseSearch& search) {
  const auto space = protocol_space(c.size(), base.target);
  const Eigen::VectorXcd target = embed(resolve_target(c, base.target), space).amplitudes;
  const Eigen::VectorXcd ground = ground_state(space).amplitudes;

  OptimizedPulse out;
  out.protocol = base;
  int evaluations = 0;

  auto with = [&](DriveProtocol p, double gradient, double detuning) {
    p.gradient = gradient;
    p.detuning = detuning;
    return p;
  };
  auto detuning_for = [&](double gradient, double detuning) {
    if (!search.detuning && search.gradient && search.detuning_rule) return search.detuning_rule(gradient);
    return detuning;
  };

  std::vector<double> profile;
  if (search.duration) {
    if (!(search.duration->hi > search.duration->lo) || search.duration->lo < 0.0) {
      throw std::invalid_argument("optimize_pulse: empty duration interval");
    }
    profile = uniform_times(search.duration->hi - search.duration->lo, std::max(search.duration_profile, 3));
    for (double& t : profile) t += search.duration->lo;
  }

  // Population for given (Δ_B, Δ): fixed T, or the best T on the profile grid.
  double best_t = base.duration;
  auto objective = [&](double gradient, double detuning, double* argmax_t) {
    ++evaluations;
    const DriveProtocol p = with(base, gradient, detuning_for(gradient, detuning));
    const SpectralPropagator prop(protocol_hamiltonian(p, c, space).total());
    if (!search.duration) return prop.population(ground, target, p.duration);
    const auto pops = prop.populations(ground, target, profile);
    const auto it = std::max_element(pops.begin(), pops.end());
    if (argmax_t) *argmax_t = profile[static_cast<std::size_t>(it - pops.begin())];
    return *it;
  };

  std::vector<SearchParameter> params;
  std::vector<int> roles;  // 0 gradient, 1 detuning
  if (search.gradient) {
    params.push_back({"gradient", search.gradient->lo, search.gradient->hi, base.gradient, search.gradient->grid});
    roles.push_back(0);
  }
  if (search.detuning) {
    params.push_back({"detuning", search.detuning->lo, search.detuning->hi, base.detuning, search.detuning->grid});
    roles.push_back(1);
  }
  double gradient = base.gradient, detuning = base.detuning;
  bool degenerate = false;
  if (!params.empty()) {
    auto f = [&](const std::vector<double>& x) {
      double g = gradient, d = detuning;
      for (std::size_t k = 0; k < x.size(); ++k) (roles[k] == 0 ? g : d) = x[k];
      return objective(g, d, nullptr);
    };
    const AscentResult a = coordinate_ascent(f, params, search.sweeps);
    for (std::size_t k = 0; k < a.x.size(); ++k) (roles[k] == 0 ? gradient : detuning) = a.x[k];
    degenerate = a.degenerate;
  }
  detuning = detuning_for(gradient, detuning);

  DriveProtocol best = with(base, gradient, detuning);
  double value;
  if (search.duration) {
    objective(gradient, detuning, &best_t);
    const SpectralPropagator prop(protocol_hamiltonian(best, c, space).total());
    const double step = (search.duration->hi - search.duration->lo) / (static_cast<double>(profile.size()) - 1);
    const double lo = std::max(search.duration->lo, best_t - step);
    const double hi = std::min(search.duration->hi, best_t + step);
    const LineResult lr = golden_section_maximize(
        [&](double t) { return prop.population(ground, target, t); }, lo, hi, 1e-10);
    evaluations += lr.evaluations;
    best.duration = lr.x;
    value = lr.value;
  } else {
    value = objective(gradient, detuning, nullptr);
  }
  out.protocol = best;
  out.population = value;
  out.degenerate = degenerate;
  out.evaluations = evaluations;
  return out;
}

GradientPulse optimize_gradient_pulse(const CouplingMatrices& c, double strength, double gradient,
                                      const GradientSearch& search) {
  const int n = c.size();
  if (n < 2) throw std::invalid_argument("optimize_gradient_pulse: need at least two emitters");
  GradientPulse out;
  out.dark = n % 2 == 0 ? n : n - 1;
  const TargetSpec target{1, n - out.dark};
  if (n == 2) {
    const double rate = eigenstate_decay_rate(resolve_target(c, target), c);
    out.model = two_atom_effective(c.omega(0, 1), strength, gradient, rate);
  } else {
    out.model = many_atom_effective(out.dark, n, strength, gradient, c);
  }
  if (!std::isfinite(out.model.pi_time)) throw RegimeViolation("optimize_gradient_pulse: no transfer without gradient");

  const DriveProtocol base{uniform_amplitudes(n, strength), out.model.resonance, gradient, out.model.pi_time, target};
  PulseSearch s;
  s.detuning = Range{out.model.resonance - search.detuning_below, out.model.resonance + search.detuning_above,
                     search.detuning_grid};
  s.duration = Range{search.duration_lo, search.duration_factor * out.model.pi_time};
  s.duration_profile = search.duration_profile;
  s.sweeps = 1;
  out.pulse = optimize_pulse(base, c, s);
  return out;
}

}  // namespace darkchain
