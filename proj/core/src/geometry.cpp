#include "darkchain/geometry.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "darkchain/errors.hpp"
#include "darkchain/rng.hpp"

namespace darkchain {
namespace {

// cos(x)/x^2 - sin(x)/x^3, which cancels catastrophically for small x.
double near_field_term(double x) {
  if (x < 0.1) {
    // sum_{k>=1} (-1)^k 2k x^(2k-2) / (2k+1)!
    double sum = 0.0;
    double pow = 1.0;
    double fact = 6.0;  // (2k+1)! for k = 1
    for (int k = 1; k <= 7; ++k) {
      const double term = 2.0 * k * pow / fact;
      sum += (k % 2 == 1) ? -term : term;
      pow *= x * x;
      fact *= (2.0 * k + 2.0) * (2.0 * k + 3.0);
    }
    return sum;
  }
  return std::cos(x) / (x * x) - std::sin(x) / (x * x * x);
}

double sinc(double x) {
  if (x < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

}  // namespace

PairCoupling dipole_kernel(double distance, double cos_alpha) {
  const double x = 2.0 * std::numbers::pi * distance;
  const double c2 = cos_alpha * cos_alpha;
  const double transverse = 1.0 - c2;
  const double longitudinal = 1.0 - 3.0 * c2;
  const double omega =
      0.75 * (-transverse * std::cos(x) / x +
              longitudinal * (std::sin(x) / (x * x) + std::cos(x) / (x * x * x)));
  const double gamma = 1.5 * (transverse * sinc(x) + longitudinal * near_field_term(x));
  return {omega, gamma};
}

ChainGeometry build_chain(int n, double spacing) {
  return build_chain(n, spacing, std::numbers::pi / 2.0);
}

ChainGeometry build_chain(int n, double spacing, double dipole_angle) {
  if (n < 1) throw std::invalid_argument("build_chain: need at least one emitter");
  if (!(spacing > 0.0)) throw std::invalid_argument("build_chain: spacing must be positive");
  ChainGeometry g;
  g.spacing = spacing;
  g.dipole = Vec3(std::cos(dipole_angle), 0.0, std::sin(dipole_angle));
  g.positions.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g.positions.emplace_back(i * spacing, 0.0, 0.0);
  return g;
}

ChainGeometry perturb_positions(const ChainGeometry& geom, const DisorderSpec& disorder) {
  if (disorder.strength < 0.0) {
    throw std::invalid_argument("perturb_positions: disorder strength must be non-negative");
  }
  ChainGeometry out = geom;
  if (disorder.strength == 0.0) return out;
  auto engine = make_engine(disorder.seed);
  std::normal_distribution<double> normal(0.0, disorder.strength * geom.spacing);
  for (auto& p : out.positions) p.x() += normal(engine);
  return out;
}

CouplingMatrices coupling_matrices(const ChainGeometry& geom) {
  const int n = geom.size();
  CouplingMatrices c;
  c.omega = Eigen::MatrixXd::Zero(n, n);
  c.gamma = Eigen::MatrixXd::Identity(n, n) * c.single_rate;
  const Vec3 d = geom.dipole.normalized();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Vec3 sep = geom.positions[j] - geom.positions[i];
      const double r = sep.norm();
      if (r < kMinSeparation) {
        std::ostringstream msg;
        msg << "coupling_matrices: emitters " << i << " and " << j << " are " << r
            << " lambda0 apart";
        throw SingularGeometry(msg.str());
      }
      const auto k = dipole_kernel(r, d.dot(sep) / r);
      c.omega(i, j) = c.omega(j, i) = k.omega * c.single_rate;
      c.gamma(i, j) = c.gamma(j, i) = k.gamma * c.single_rate;
    }
  }
  return c;
}

CouplingMatrices nn_truncate(const CouplingMatrices& c) {
  CouplingMatrices out = c;
  const int n = c.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (std::abs(i - j) > 1) out.omega(i, j) = 0.0;
  return out;
}

DecayChannels decay_channels(const CouplingMatrices& c) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(c.gamma);
  if (solver.info() != Eigen::Success) throw std::runtime_error("decay_channels: eigensolver failed");
  DecayChannels out{solver.eigenvalues(), solver.eigenvectors()};
  for (Eigen::Index k = 0; k < out.rates.size(); ++k) {
    double& r = out.rates(k);
    if (r < 0.0) {
      if (r < -kRateClip * c.single_rate) {
        std::ostringstream msg;
        msg << "decay_channels: gamma has eigenvalue " << r << " (not positive semidefinite)";
        throw std::domain_error(msg.str());
      }
      r = 0.0;
    }
  }
  return out;
}

double min_decay_rate(const CouplingMatrices& c) { return decay_channels(c).rates(0); }

}  // namespace darkchain
