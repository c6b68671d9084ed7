#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "darkchain/errors.hpp"
#include "darkchain/geometry.hpp"
#include "kernel_oracle.hpp"

using namespace darkchain;

TEST(Kernel, MatchesGreenTensor) {
  for (double r : {0.003, 0.02, 0.05, 0.1, 0.25, 0.4, 0.77, 1.3, 4.0}) {
    for (double angle : {0.0, 0.3, 0.9, std::numbers::pi / 2}) {
      const Vec3 d(std::cos(angle), 0.0, std::sin(angle));
      const auto ref = oracle::green_coupling(Vec3(r, 0, 0), d);
      const auto got = dipole_kernel(r, std::cos(angle));
      EXPECT_NEAR(got.omega, ref.omega, 1e-9 * (1 + std::abs(ref.omega))) << r << " " << angle;
      EXPECT_NEAR(got.gamma, ref.gamma, 1e-9) << r << " " << angle;
    }
  }
}

TEST(Kernel, SmallSeparationBranchIsContinuous) {
  // x = 2π r crosses the series cutoff at x = 0.1
  const double r0 = 0.1 / (2 * std::numbers::pi);
  for (double c : {0.0, 1.0}) {
    const auto lo = dipole_kernel(r0 * (1 - 1e-9), c);
    const auto hi = dipole_kernel(r0 * (1 + 1e-9), c);
    EXPECT_NEAR(lo.gamma, hi.gamma, 1e-9);
  }
  EXPECT_NEAR(dipole_kernel(1e-6, 0.0).gamma, 1.0, 1e-9);
  EXPECT_NEAR(dipole_kernel(1e-6, 1.0).gamma, 1.0, 1e-9);
}

TEST(Couplings, TwoAtomReference) {
  const auto c = coupling_matrices(build_chain(2, 0.05));
  EXPECT_NEAR(c.omega(0, 1), 23.08, 0.01);
  EXPECT_NEAR(1.0 - c.gamma(0, 1), 0.019, 0.001);
}

TEST(Couplings, SymmetricWithUnitDiagonal) {
  const auto c = coupling_matrices(build_chain(7, 0.13, 0.4));
  EXPECT_LT((c.omega - c.omega.transpose()).norm(), 1e-14);
  EXPECT_LT((c.gamma - c.gamma.transpose()).norm(), 1e-14);
  for (int i = 0; i < 7; ++i) {
    EXPECT_EQ(c.omega(i, i), 0.0);
    EXPECT_EQ(c.gamma(i, i), 1.0);
  }
  // translation invariance of an equidistant chain
  EXPECT_NEAR(c.omega(0, 2), c.omega(3, 5), 1e-12);
}

TEST(Couplings, NearestNeighbourTruncation) {
  const auto c = coupling_matrices(build_chain(5, 0.1));
  const auto t = nn_truncate(c);
  EXPECT_EQ(t.gamma, c.gamma);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) EXPECT_EQ(t.omega(i, j), std::abs(i - j) == 1 ? c.omega(i, j) : 0.0);
}

TEST(Couplings, DecayChannelsArePositiveAndSumToN) {
  for (double a : {1e-4, 0.02, 0.4}) {
    const auto c = coupling_matrices(build_chain(6, a));
    const auto ch = decay_channels(c);
    EXPECT_NEAR(ch.rates.sum(), 6.0, 1e-10);
    EXPECT_GE(ch.rates.minCoeff(), 0.0);
    for (Eigen::Index i = 1; i < ch.rates.size(); ++i) EXPECT_LE(ch.rates(i - 1), ch.rates(i));
    EXPECT_LT((ch.channels.transpose() * ch.channels - Eigen::MatrixXd::Identity(6, 6)).norm(), 1e-10);
    EXPECT_DOUBLE_EQ(min_decay_rate(c), ch.rates(0));
  }
}

TEST(Couplings, CoincidentEmittersAreRejected) {
  ChainGeometry g = build_chain(3, 0.1);
  g.positions[2] = g.positions[1];
  EXPECT_THROW((void)coupling_matrices(g), SingularGeometry);
}

TEST(Couplings, InvalidChains) {
  EXPECT_THROW((void)build_chain(0, 0.1), std::invalid_argument);
  EXPECT_THROW((void)build_chain(3, 0.0), std::invalid_argument);
  EXPECT_THROW((void)perturb_positions(build_chain(3, 0.1), {-0.1, 1}), std::invalid_argument);
}

TEST(Disorder, AxialDisplacementsAreGaussian) {
  // E|x| = σ sqrt(2/π) for x ~ N(0, σ²); 10^5 draws.
  const double a = 0.4, s = 0.3, sigma = s * a;
  const auto chain = build_chain(1000, a);
  double sum = 0.0, sq = 0.0;
  int count = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto g = perturb_positions(chain, {s, seed});
    for (int i = 0; i < g.size(); ++i) {
      const Vec3 d = g.positions[i] - chain.positions[i];
      EXPECT_EQ(d.y(), 0.0);
      EXPECT_EQ(d.z(), 0.0);
      sum += std::abs(d.x());
      sq += d.x() * d.x();
      ++count;
    }
  }
  const double mean = sum / count;
  const double expected = sigma * std::sqrt(2.0 / std::numbers::pi);
  const double se = sigma * std::sqrt(1.0 - 2.0 / std::numbers::pi) / std::sqrt(count);
  EXPECT_NEAR(mean, expected, 4 * se);
  EXPECT_NEAR(std::sqrt(sq / count), sigma, 0.01 * sigma);
}

TEST(Disorder, ZeroStrengthKeepsChain) {
  const auto chain = build_chain(4, 0.4);
  const auto g = perturb_positions(chain, {0.0, 9});
  for (int i = 0; i < 4; ++i) EXPECT_EQ(g.positions[i], chain.positions[i]);
}
