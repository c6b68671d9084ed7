#include "darkchain/hilbert.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace darkchain {
namespace {

constexpr Eigen::Index kMaxDimension = Eigen::Index{1} << kMaxFullSpaceEmitters;

int popcount(Mask m) { return std::popcount(m); }

using Triplets = std::vector<Eigen::Triplet<cplx>>;

SparseOp from_triplets(Eigen::Index dim, const Triplets& t) {
  SparseOp op(dim, dim);
  op.setFromTriplets(t.begin(), t.end());
  op.prune(cplx(0.0, 0.0));
  return op;
}

void require_site(const Space& space, int site, const char* who) {
  if (site < 0 || site >= space.emitters()) {
    std::ostringstream msg;
    msg << who << ": site " << site << " outside chain of " << space.emitters();
    throw std::invalid_argument(msg.str());
  }
}

// Multiplies by a phase so the first non-negligible entry is real and positive.
void fix_phase(Eigen::VectorXcd& v) {
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const double mag = std::abs(v(k));
    if (mag > 1e-10) {
      v *= std::conj(v(k)) / mag;
      v(k) = cplx(std::abs(v(k)), 0.0);
      return;
    }
  }
}

}  // namespace

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<Mask> manifold_basis(int n_emitters, int n_exc) {
  if (n_emitters < 0 || n_emitters > kMaxEmitters) {
    throw std::invalid_argument("manifold_basis: unsupported number of emitters");
  }
  if (n_exc < 0 || n_exc > n_emitters) {
    throw std::invalid_argument("manifold_basis: excitation number out of range");
  }
  std::vector<Mask> out;
  out.reserve(static_cast<std::size_t>(binomial(n_emitters, n_exc)));
  if (n_exc == 0) {
    out.push_back(0);
    return out;
  }
  // Gosper's hack enumerates equal-popcount masks in ascending order.
  const std::uint64_t limit = std::uint64_t{1} << n_emitters;
  std::uint64_t m = (std::uint64_t{1} << n_exc) - 1;
  while (m < limit) {
    out.push_back(static_cast<Mask>(m));
    const std::uint64_t c = m & (~m + 1);
    const std::uint64_t r = m + c;
    m = (((r ^ m) >> 2) / c) | r;
  }
  return out;
}

Space::Space(int emitters, int lowest, int highest)
    : emitters_(emitters), lowest_(lowest), highest_(highest) {
  if (emitters < 1 || emitters > kMaxEmitters) {
    throw std::invalid_argument("Space: number of emitters must be in [1, 24]");
  }
  if (lowest < 0 || highest > emitters || lowest > highest) {
    throw std::invalid_argument("Space: invalid excitation range");
  }
  Eigen::Index total = 0;
  for (int n = lowest; n <= highest; ++n) total += binomial(emitters, n);
  if (total > kMaxDimension) {
    std::ostringstream msg;
    msg << "Space: dimension " << total << " exceeds the dense limit " << kMaxDimension;
    throw std::invalid_argument(msg.str());
  }
  masks_.reserve(static_cast<std::size_t>(total));
  for (int n = lowest; n <= highest; ++n) {
    offsets_.push_back(static_cast<Eigen::Index>(masks_.size()));
    const auto block = manifold_basis(emitters, n);
    masks_.insert(masks_.end(), block.begin(), block.end());
  }
  offsets_.push_back(static_cast<Eigen::Index>(masks_.size()));
}

std::shared_ptr<const Space> Space::full(int emitters) {
  if (emitters > kMaxFullSpaceEmitters) {
    throw std::invalid_argument("Space::full: chain too long for the full product space");
  }
  return std::make_shared<const Space>(emitters, 0, emitters);
}

std::shared_ptr<const Space> Space::blocks(int emitters, int lowest, int highest) {
  return std::make_shared<const Space>(emitters, lowest, std::min(highest, emitters));
}

int Space::excitation(Eigen::Index k) const { return popcount(mask(k)); }

std::optional<Eigen::Index> Space::index_of(Mask m) const {
  const int n = popcount(m);
  if (!contains_block(n) || (emitters_ < 32 && (m >> emitters_) != 0)) return std::nullopt;
  const auto first = masks_.begin() + offsets_[static_cast<std::size_t>(n - lowest_)];
  const auto last = masks_.begin() + offsets_[static_cast<std::size_t>(n - lowest_ + 1)];
  const auto it = std::lower_bound(first, last, m);
  if (it == last || *it != m) return std::nullopt;
  return static_cast<Eigen::Index>(it - masks_.begin());
}

Eigen::Index Space::block_offset(int n) const {
  if (!contains_block(n)) throw std::invalid_argument("Space::block_offset: block not in space");
  return offsets_[static_cast<std::size_t>(n - lowest_)];
}

Eigen::Index Space::block_size(int n) const {
  if (!contains_block(n)) throw std::invalid_argument("Space::block_size: block not in space");
  return offsets_[static_cast<std::size_t>(n - lowest_ + 1)] -
         offsets_[static_cast<std::size_t>(n - lowest_)];
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return {psi.space, psi.amplitudes * psi.amplitudes.adjoint()};
}

double DensityMatrix::population(const PureState& psi) const {
  const PureState on_space = (*psi.space == *space) ? psi : embed(psi, space);
  return (on_space.amplitudes.adjoint() * rho * on_space.amplitudes)(0, 0).real();
}

PureState ground_state(SpacePtr space) { return basis_state(std::move(space), 0); }

PureState basis_state(SpacePtr space, Mask m) {
  const auto k = space->index_of(m);
  if (!k) throw std::invalid_argument("basis_state: mask not in space");
  PureState psi{space, Eigen::VectorXcd::Zero(space->dim()), popcount(m)};
  psi.amplitudes(*k) = 1.0;
  return psi;
}

PureState embed(const PureState& psi, SpacePtr target) {
  if (psi.space->emitters() != target->emitters()) {
    throw std::invalid_argument("embed: spaces describe different chains");
  }
  PureState out{target, Eigen::VectorXcd::Zero(target->dim()), psi.block};
  for (Eigen::Index k = 0; k < psi.space->dim(); ++k) {
    const cplx a = psi.amplitudes(k);
    if (a == cplx(0.0, 0.0)) continue;
    const auto j = target->index_of(psi.space->mask(k));
    if (j) {
      out.amplitudes(*j) = a;
    } else if (std::abs(a) > 1e-12) {
      throw std::invalid_argument("embed: state has weight outside the target space");
    }
  }
  return out;
}

std::optional<int> definite_excitation(const PureState& psi, double tol) {
  const Space& s = *psi.space;
  double total = 0.0;
  double best = -1.0;
  int best_n = -1;
  for (int n = s.lowest(); n <= s.highest(); ++n) {
    const double w = psi.amplitudes.segment(s.block_offset(n), s.block_size(n)).squaredNorm();
    total += w;
    if (w > best) {
      best = w;
      best_n = n;
    }
  }
  if (total <= 0.0) return std::nullopt;
  if (total - best > tol * total) return std::nullopt;
  return best_n;
}

PureState dicke_state(SpacePtr space, int n) {
  if (!space->contains_block(n)) throw std::invalid_argument("dicke_state: block not in space");
  PureState psi{space, Eigen::VectorXcd::Zero(space->dim()), n};
  const Eigen::Index size = space->block_size(n);
  psi.amplitudes.segment(space->block_offset(n), size).setConstant(1.0 / std::sqrt(double(size)));
  return psi;
}

SparseOp lowering(const Space& space, int site) {
  require_site(space, site, "lowering");
  const Mask bit = Mask{1} << site;
  Triplets t;
  for (Eigen::Index k = 0; k < space.dim(); ++k) {
    const Mask m = space.mask(k);
    if (!(m & bit)) continue;
    if (const auto j = space.index_of(m ^ bit)) t.emplace_back(*j, k, 1.0);
  }
  return from_triplets(space.dim(), t);
}

SparseOp hopping(const Space& space, const Eigen::MatrixXd& weights) {
  const int n = space.emitters();
  if (weights.rows() != n || weights.cols() != n) {
    throw std::invalid_argument("hopping: weight matrix does not match the chain");
  }
  Triplets t;
  for (Eigen::Index k = 0; k < space.dim(); ++k) {
    const Mask m = space.mask(k);
    double diag = 0.0;
    for (int j = 0; j < n; ++j) {
      const Mask bj = Mask{1} << j;
      if (!(m & bj)) continue;
      diag += weights(j, j);
      const Mask lowered = m ^ bj;
      for (int i = 0; i < n; ++i) {
        const Mask bi = Mask{1} << i;
        if (i == j || (lowered & bi) || weights(i, j) == 0.0) continue;
        if (const auto target = space.index_of(lowered | bi)) t.emplace_back(*target, k, weights(i, j));
      }
    }
    if (diag != 0.0) t.emplace_back(k, k, diag);
  }
  return from_triplets(space.dim(), t);
}

HamiltonianModel assemble_static(SpacePtr space, const CouplingMatrices& c,
                                 std::span<const double> detuning, double gradient) {
  const int n = space->emitters();
  if (c.size() != n) throw std::invalid_argument("assemble_static: couplings do not match the chain");
  if (static_cast<int>(detuning.size()) != n) {
    throw std::invalid_argument("assemble_static: need one detuning per emitter");
  }
  Eigen::MatrixXd w = c.omega;
  for (int i = 0; i < n; ++i) w(i, i) = detuning[static_cast<std::size_t>(i)] + 2.0 * gradient * i;
  HamiltonianModel h{space, hopping(*space, w), SparseOp(space->dim(), space->dim())};
  return h;
}

HamiltonianModel assemble_static(SpacePtr space, const CouplingMatrices& c, double detuning,
                                 double gradient) {
  const std::vector<double> d(static_cast<std::size_t>(space->emitters()), detuning);
  return assemble_static(std::move(space), c, d, gradient);
}

SparseOp assemble_drive(const Space& space, std::span<const cplx> amplitudes) {
  const int n = space.emitters();
  if (static_cast<int>(amplitudes.size()) != n) {
    throw std::invalid_argument("assemble_drive: need one amplitude per emitter");
  }
  Triplets t;
  for (Eigen::Index k = 0; k < space.dim(); ++k) {
    const Mask m = space.mask(k);
    for (int j = 0; j < n; ++j) {
      const cplx eta = amplitudes[static_cast<std::size_t>(j)];
      if (eta == cplx(0.0, 0.0)) continue;
      const Mask bj = Mask{1} << j;
      if (const auto target = space.index_of(m ^ bj)) {
        t.emplace_back(*target, k, (m & bj) ? std::conj(eta) : eta);
      }
    }
  }
  return from_triplets(space.dim(), t);
}

HamiltonianModel with_drive(HamiltonianModel h, std::span<const cplx> amplitudes) {
  h.drive_part = assemble_drive(*h.space, amplitudes);
  return h;
}

Eigen::VectorXd nn_exciton_coefficients(int m, int n_emitters) {
  if (n_emitters < 1 || m < 1 || m > n_emitters) {
    throw std::invalid_argument("nn_exciton: index m must lie in [1, N]");
  }
  Eigen::VectorXd f(n_emitters);
  const double norm = std::sqrt(2.0 / (n_emitters + 1));
  for (int j = 1; j <= n_emitters; ++j) {
    f(j - 1) = norm * std::sin(std::numbers::pi * m * j / (n_emitters + 1));
  }
  return f;
}

double nn_exciton_shift(int m, int n_emitters, double omega) {
  if (n_emitters < 1 || m < 1 || m > n_emitters) {
    throw std::invalid_argument("nn_exciton_shift: index m must lie in [1, N]");
  }
  return 2.0 * omega * std::cos(std::numbers::pi * m / (n_emitters + 1));
}

PureState nn_exciton(int m, SpacePtr space) {
  if (!space->contains_block(1)) throw std::invalid_argument("nn_exciton: space lacks block 1");
  const Eigen::VectorXd f = nn_exciton_coefficients(m, space->emitters());
  PureState psi{space, Eigen::VectorXcd::Zero(space->dim()), 1};
  for (int j = 0; j < space->emitters(); ++j) psi.amplitudes(*space->index_of(Mask{1} << j)) = f(j);
  return psi;
}

std::vector<Eigenpair> block_eigensystem(const HamiltonianModel& h, int n_exc) {
  const Space& s = *h.space;
  if (!s.contains_block(n_exc)) throw std::invalid_argument("block_eigensystem: block not in space");
  const Eigen::Index off = s.block_offset(n_exc);
  const Eigen::Index size = s.block_size(n_exc);
  const Eigen::MatrixXcd dense = Eigen::MatrixXcd(h.static_part).block(off, off, size, size);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense);
  if (solver.info() != Eigen::Success) throw std::runtime_error("block_eigensystem: eigensolver failed");
  const Eigen::VectorXd& e = solver.eigenvalues();
  Eigen::MatrixXcd v = solver.eigenvectors();

  const double scale = std::max(1.0, e.cwiseAbs().maxCoeff());
  const double tol = 1e-9 * scale;
  for (Eigen::Index start = 0; start < size;) {
    Eigen::Index stop = start + 1;
    while (stop < size && e(stop) - e(stop - 1) < tol) ++stop;
    const Eigen::Index d = stop - start;
    if (d > 1) {
      const Eigen::MatrixXcd sub = v.middleCols(start, d);
      Eigen::MatrixXcd basis(size, d);
      Eigen::Index found = 0;
      for (Eigen::Index u = 0; u < size && found < d; ++u) {
        Eigen::VectorXcd x = sub * sub.row(u).adjoint();
        for (Eigen::Index q = 0; q < found; ++q) x -= basis.col(q) * basis.col(q).dot(x);
        const double nx = x.norm();
        if (nx > 1e-6) basis.col(found++) = x / nx;
      }
      v.middleCols(start, d) = basis;
    }
    start = stop;
  }

  std::vector<Eigenpair> out;
  out.reserve(static_cast<std::size_t>(size));
  for (Eigen::Index k = 0; k < size; ++k) {
    Eigen::VectorXcd col = v.col(k);
    fix_phase(col);
    PureState psi{h.space, Eigen::VectorXcd::Zero(s.dim()), n_exc};
    psi.amplitudes.segment(off, size) = col;
    out.push_back({e(k), std::move(psi)});
  }
  return out;
}

Eigen::MatrixXcd excitation_correlations(const PureState& psi) {
  const Space& s = *psi.space;
  const int n = s.emitters();
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index k = 0; k < s.dim(); ++k) {
    const cplx a = psi.amplitudes(k);
    if (a == cplx(0.0, 0.0)) continue;
    const Mask m = s.mask(k);
    for (int j = 0; j < n; ++j) {
      const Mask bj = Mask{1} << j;
      if (!(m & bj)) continue;
      c(j, j) += std::norm(a);
      const Mask lowered = m ^ bj;
      for (int i = 0; i < n; ++i) {
        const Mask bi = Mask{1} << i;
        if (i == j || (lowered & bi)) continue;
        if (const auto t = s.index_of(lowered | bi)) c(i, j) += std::conj(psi.amplitudes(*t)) * a;
      }
    }
  }
  return c;
}

double dip_expectation(const PureState& psi, const CouplingMatrices& c) {
  if (c.size() != psi.space->emitters()) {
    throw std::invalid_argument("dip_expectation: couplings do not match the chain");
  }
  const Eigen::MatrixXcd corr = excitation_correlations(psi);
  double sum = 0.0;
  for (int i = 0; i < c.size(); ++i)
    for (int j = 0; j < c.size(); ++j)
      if (i != j) sum += c.omega(i, j) * corr(i, j).real();
  return sum / psi.amplitudes.squaredNorm();
}

double hermiticity_defect(const SparseOp& a) {
  const SparseOp adj = a.adjoint();
  const SparseOp diff = a - adj;
  double worst = 0.0;
  for (int k = 0; k < diff.outerSize(); ++k)
    for (SparseOp::InnerIterator it(diff, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
  return worst;
}

double hermiticity_defect(const Eigen::MatrixXcd& a) {
  if (a.size() == 0) return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace darkchain
