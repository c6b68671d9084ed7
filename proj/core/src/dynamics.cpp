#include "darkchain/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "darkchain/errors.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace darkchain {
namespace {

const cplx kI(0.0, 1.0);

std::vector<double> resolve_times(double duration, const EvolveOptions& options) {
  if (!(duration >= 0.0) || !std::isfinite(duration)) {
    throw std::invalid_argument("evolve: duration must be finite and non-negative");
  }
  if (!options.sample_times.empty()) return options.sample_times;
  return uniform_times(duration, options.samples);
}

Eigen::VectorXd excitation_numbers(const Space& s) {
  Eigen::VectorXd n(s.dim());
  for (Eigen::Index k = 0; k < s.dim(); ++k) n(k) = s.excitation(k);
  return n;
}

std::vector<Eigen::VectorXcd> projector_vectors(const SpacePtr& s, const EvolveOptions& options) {
  std::vector<Eigen::VectorXcd> out;
  for (const auto& p : options.projectors) {
    const PureState on = (*p.state.space == *s) ? p.state : embed(p.state, s);
    out.push_back(on.amplitudes / on.amplitudes.norm());
  }
  return out;
}

}  // namespace

const std::vector<double>& Trajectory::series(const std::string& name) const {
  const auto it = observables.find(name);
  if (it == observables.end()) throw std::out_of_range("Trajectory: no observable named " + name);
  return it->second;
}

void Trajectory::append(const Trajectory& later) {
  const double shift = times.empty() ? 0.0 : times.back();
  for (std::size_t k = 1; k < later.times.size(); ++k) times.push_back(later.times[k] + shift);
  for (const auto& [name, values] : later.observables) {
    auto& dst = observables[name];
    dst.insert(dst.end(), values.begin() + (values.empty() ? 0 : 1), values.end());
  }
  if (!later.pure_states.empty())
    pure_states.insert(pure_states.end(), later.pure_states.begin() + 1, later.pure_states.end());
  if (!later.mixed_states.empty())
    mixed_states.insert(mixed_states.end(), later.mixed_states.begin() + 1, later.mixed_states.end());
  max_norm_drift = std::max(max_norm_drift, later.max_norm_drift);
  max_hermiticity = std::max(max_hermiticity, later.max_hermiticity);
  min_eigenvalue = std::min(min_eigenvalue, later.min_eigenvalue);
  stats.accepted += later.stats.accepted;
  stats.rejected += later.stats.rejected;
  stats.rhs_calls += later.stats.rhs_calls;
}

std::vector<double> uniform_times(double duration, int samples) {
  if (samples < 2) throw std::invalid_argument("uniform_times: need at least two samples");
  std::vector<double> t(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) t[static_cast<std::size_t>(k)] = duration * k / (samples - 1);
  t.back() = duration;
  return t;
}

Trajectory schrodinger_evolve(const HamiltonianModel& h, const PureState& initial, double duration,
                              const EvolveOptions& options) {
  if (!(*initial.space == *h.space)) throw std::invalid_argument("schrodinger_evolve: space mismatch");
  const auto times = resolve_times(duration, options);
  const SparseOp hm = h.total();
  const Space& s = *h.space;
  const auto proj = projector_vectors(h.space, options);
  const Eigen::VectorXd nexc = excitation_numbers(s);
  const auto ground = s.index_of(0);

  Trajectory traj;
  traj.times = times;
  for (const auto& p : options.projectors) traj.observables[p.name].reserve(times.size());

  auto rhs = [&](double, const Eigen::VectorXcd& y, Eigen::VectorXcd& dy) { dy.noalias() = -kI * (hm * y); };
  auto observe = [&](std::size_t, double, const Eigen::VectorXcd& y) {
    const Eigen::VectorXd pop = y.cwiseAbs2();
    traj.max_norm_drift = std::max(traj.max_norm_drift, std::abs(std::sqrt(pop.sum()) - 1.0));
    if (ground) traj.observables["ground_population"].push_back(pop(*ground));
    traj.observables["total_excitation"].push_back(pop.dot(nexc));
    for (std::size_t i = 0; i < proj.size(); ++i) {
      traj.observables[options.projectors[i].name].push_back(std::norm(proj[i].dot(y)));
    }
    if (options.keep_states) traj.pure_states.push_back({h.space, y, definite_excitation({h.space, y, {}})});
  };
  traj.stats = dormand_prince(rhs, Eigen::VectorXcd(initial.amplitudes), std::span<const double>(times),
                              observe, options.control);
  return traj;
}

LindbladGenerator::LindbladGenerator(const HamiltonianModel& h, const CouplingMatrices& c) {
  const Space& s = *h.space;
  const int n = s.emitters();
  if (c.size() != n) throw std::invalid_argument("lindblad: couplings do not match the chain");
  (void)decay_channels(c);  // rejects a γ that is not positive semidefinite
  h_eff_ = h.total() - cplx(0.0, 0.5) * hopping(s, c.gamma);
  h_eff_.makeCompressed();
  std::vector<int> site;
  for (Eigen::Index a = 0; a < s.dim(); ++a) {
    const Mask m = s.mask(a);
    for (int i = 0; i < n; ++i) {
      const Mask bit = Mask{1} << i;
      if (m & bit) continue;
      if (const auto up = s.index_of(m | bit)) {
        row_.push_back(a);
        raised_.push_back(*up);
        site.push_back(i);
      }
    }
  }
  const auto np = static_cast<Eigen::Index>(site.size());
  pair_gamma_.resize(np, np);
  for (Eigen::Index p = 0; p < np; ++p)
    for (Eigen::Index q = 0; q < np; ++q) pair_gamma_(p, q) = c.gamma(site[static_cast<std::size_t>(p)], site[static_cast<std::size_t>(q)]);
  work_.resize(s.dim(), s.dim());
}

void LindbladGenerator::operator()(const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& drho) const {
  const Eigen::Index dim = rho.rows();
  drho.resize(dim, dim);
  // A = H_eff ρ, column by column so that ρ is read contiguously.
  const auto* outer = h_eff_.outerIndexPtr();
  const auto* inner = h_eff_.innerIndexPtr();
  const cplx* val = h_eff_.valuePtr();
  for (Eigen::Index k = 0; k < dim; ++k) {
    const cplx* x = rho.col(k).data();
    cplx* y = work_.col(k).data();
    for (Eigen::Index r = 0; r < dim; ++r) {
      cplx acc(0.0, 0.0);
      for (auto z = outer[r]; z < outer[r + 1]; ++z) acc += val[z] * x[inner[z]];
      y[r] = acc;
    }
  }
  // -i(H_eff ρ - ρ H_eff^†) = -i(A - A^†) for Hermitian ρ.
  for (Eigen::Index k = 0; k < dim; ++k)
    for (Eigen::Index r = 0; r < dim; ++r) {
      const cplx d = work_(r, k) - std::conj(work_(k, r));
      drho(r, k) = cplx(d.imag(), -d.real());
    }
  const auto np = static_cast<Eigen::Index>(row_.size());
  for (Eigen::Index q = 0; q < np; ++q) {
    const cplx* col = rho.col(raised_[static_cast<std::size_t>(q)]).data();
    const double* g = pair_gamma_.col(q).data();
    cplx* out = drho.col(row_[static_cast<std::size_t>(q)]).data();
    for (Eigen::Index p = 0; p < np; ++p) out[row_[static_cast<std::size_t>(p)]] += g[p] * col[raised_[static_cast<std::size_t>(p)]];
  }
  // The two triangles above are summed in different orders; restore exact Hermiticity.
  for (Eigen::Index k = 0; k < dim; ++k) {
    drho(k, k) = cplx(drho(k, k).real(), 0.0);
    for (Eigen::Index r = k + 1; r < dim; ++r) {
      const cplx m = 0.5 * (drho(r, k) + std::conj(drho(k, r)));
      drho(r, k) = m;
      drho(k, r) = std::conj(m);
    }
  }
}

Trajectory lindblad_evolve(const HamiltonianModel& h, const CouplingMatrices& c,
                           const DensityMatrix& initial, double duration, const EvolveOptions& options) {
  if (!(*initial.space == *h.space)) throw std::invalid_argument("lindblad_evolve: space mismatch");
  if (std::abs(initial.trace() - 1.0) > 1e-8) {
    throw std::invalid_argument("lindblad_evolve: initial state must have unit trace");
  }
  const auto times = resolve_times(duration, options);
  const LindbladGenerator gen(h, c);
  const Space& s = *h.space;
  const auto proj = projector_vectors(h.space, options);
  const Eigen::VectorXd nexc = excitation_numbers(s);
  const auto ground = s.index_of(0);

  Trajectory traj;
  traj.times = times;
  traj.min_eigenvalue = 0.0;

  auto rhs = [&](double, const Eigen::MatrixXcd& y, Eigen::MatrixXcd& dy) { gen(y, dy); };
  auto observe = [&](std::size_t, double t, const Eigen::MatrixXcd& rho) {
    const Eigen::VectorXd diag = rho.diagonal().real();
    traj.max_norm_drift = std::max(traj.max_norm_drift, std::abs(diag.sum() - 1.0));
    traj.max_hermiticity = std::max(traj.max_hermiticity, hermiticity_defect(rho));
    if (options.check_positivity) {
      const Eigen::MatrixXcd herm = 0.5 * (rho + rho.adjoint());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm, Eigen::EigenvaluesOnly);
      const double lo = es.eigenvalues()(0);
      traj.min_eigenvalue = std::min(traj.min_eigenvalue, lo);
      if (lo < -options.positivity_tolerance) {
        std::ostringstream msg;
        msg << "lindblad_evolve: density matrix eigenvalue " << lo << " at t = " << t;
        throw PositivityViolation(msg.str());
      }
    }
    if (ground) traj.observables["ground_population"].push_back(diag(*ground));
    traj.observables["total_excitation"].push_back(diag.dot(nexc));
    for (std::size_t i = 0; i < proj.size(); ++i) {
      traj.observables[options.projectors[i].name].push_back(
          (proj[i].adjoint() * rho * proj[i])(0, 0).real());
    }
    if (options.keep_states) traj.mixed_states.push_back({h.space, rho});
  };
  traj.stats = dormand_prince(rhs, Eigen::MatrixXcd(initial.rho), std::span<const double>(times), observe,
                              options.control);
  return traj;
}

double eigenstate_decay_rate(const PureState& state, const CouplingMatrices& c) {
  if (!definite_excitation(state)) {
    throw std::invalid_argument(
        "eigenstate_decay_rate: state mixes excitation numbers; the rate formula needs a definite one");
  }
  if (c.size() != state.space->emitters()) {
    throw std::invalid_argument("eigenstate_decay_rate: couplings do not match the chain");
  }
  const Eigen::MatrixXcd corr = excitation_correlations(state);
  double rate = 0.0;
  for (int i = 0; i < c.size(); ++i)
    for (int j = 0; j < c.size(); ++j) rate += c.gamma(i, j) * corr(i, j).real();
  return std::max(0.0, rate / state.amplitudes.squaredNorm());
}

double dicke_decay_rate(int m, int n_emitters) {
  if (n_emitters < 1 || m < 1 || m > n_emitters) {
    throw std::invalid_argument("dicke_decay_rate: index m must lie in [1, N]");
  }
  if (m % 2 == 0) return 0.0;
  const double cot = 1.0 / std::tan(m * std::numbers::pi / (2.0 * n_emitters + 2.0));
  return 2.0 * cot * cot / (n_emitters + 1);
}

std::vector<double> single_excitation_decay(const CouplingMatrices& c, const Eigen::VectorXcd& site_amplitudes,
                                            std::span<const double> times) {
  const int n = c.size();
  if (site_amplitudes.size() != n) throw std::invalid_argument("single_excitation_decay: need one amplitude per emitter");
  const Eigen::MatrixXcd h_eff = c.omega.cast<cplx>() - 0.5 * kI * c.gamma.cast<cplx>();
  std::vector<double> out;
  out.reserve(times.size());
  for (double t : times) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("single_excitation_decay: bad time");
    const Eigen::MatrixXcd u = (-kI * t * h_eff).exp();
    out.push_back((u * site_amplitudes).squaredNorm());
  }
  return out;
}

std::vector<LevelRate> manifold_rate_spectrum(const CouplingMatrices& c, int n_exc) {
  const auto space = Space::block(c.size(), n_exc);
  const auto h = assemble_static(space, c, 0.0, 0.0);
  std::vector<LevelRate> out;
  for (const auto& e : block_eigensystem(h, n_exc)) out.push_back({e.energy, eigenstate_decay_rate(e.state, c)});
  return out;
}

SpectralPropagator::SpectralPropagator(const SparseOp& h) : SpectralPropagator(Eigen::MatrixXcd(h)) {}

SpectralPropagator::SpectralPropagator(const Eigen::MatrixXcd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (h + h.adjoint()));
  if (es.info() != Eigen::Success) throw std::runtime_error("SpectralPropagator: eigensolver failed");
  energies_ = es.eigenvalues();
  vectors_ = es.eigenvectors();
}

Eigen::VectorXcd SpectralPropagator::evolve(const Eigen::VectorXcd& psi0, double t) const {
  Eigen::VectorXcd a = vectors_.adjoint() * psi0;
  for (Eigen::Index k = 0; k < a.size(); ++k) a(k) *= std::exp(-kI * (energies_(k) * t));
  return vectors_ * a;
}

std::vector<double> SpectralPropagator::populations(const Eigen::VectorXcd& psi0, const Eigen::VectorXcd& target,
                                                    std::span<const double> times) const {
  const Eigen::VectorXcd a = vectors_.adjoint() * psi0;
  const Eigen::VectorXcd b = vectors_.adjoint() * target;
  const Eigen::VectorXcd w = b.conjugate().cwiseProduct(a);
  std::vector<double> out;
  out.reserve(times.size());
  for (double t : times) {
    cplx amp(0.0, 0.0);
    for (Eigen::Index k = 0; k < w.size(); ++k) amp += w(k) * std::exp(-kI * (energies_(k) * t));
    out.push_back(std::norm(amp));
  }
  return out;
}

double SpectralPropagator::population(const Eigen::VectorXcd& psi0, const Eigen::VectorXcd& target,
                                      double t) const {
  const double times[1] = {t};
  return populations(psi0, target, times).front();
}

}  // namespace darkchain
