#include <cmath>
#include <complex>
#include <vector>

#include <gtest/gtest.h>

#include "darkchain/ode.hpp"

using namespace darkchain;

TEST(DormandPrince, ComplexExponential) {
  const std::complex<double> lambda(-0.3, 2.0);
  Eigen::VectorXcd y0(1);
  y0(0) = 1.0;
  const std::vector<double> times{0.0, 0.5, 1.7, 4.0};
  std::vector<std::complex<double>> got;
  auto rhs = [&](double, const Eigen::VectorXcd& y, Eigen::VectorXcd& dy) { dy = lambda * y; };
  auto obs = [&](std::size_t, double, const Eigen::VectorXcd& y) { got.push_back(y(0)); };
  const auto stats = dormand_prince(rhs, y0, times, obs);
  ASSERT_EQ(got.size(), times.size());
  for (std::size_t k = 0; k < times.size(); ++k) EXPECT_LT(std::abs(got[k] - std::exp(lambda * times[k])), 1e-8);
  EXPECT_GT(stats.accepted, 0);
  EXPECT_EQ(stats.rhs_calls, 1 + 6 * (stats.accepted + stats.rejected));
}

TEST(DormandPrince, HarmonicOscillatorLandsOnSamples) {
  Eigen::VectorXd y0(2);
  y0 << 1.0, 0.0;
  std::vector<double> times;
  for (int k = 0; k <= 50; ++k) times.push_back(0.2 * k);
  std::vector<double> seen;
  double worst = 0.0;
  auto rhs = [](double, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
    dy.resize(2);
    dy << y(1), -y(0);
  };
  auto obs = [&](std::size_t i, double t, const Eigen::VectorXd& y) {
    seen.push_back(t);
    EXPECT_EQ(t, times[i]);
    worst = std::max(worst, std::abs(y(0) - std::cos(t)));
  };
  (void)dormand_prince(rhs, y0, times, obs);
  EXPECT_EQ(seen.size(), times.size());
  EXPECT_LT(worst, 1e-7);
}

TEST(DormandPrince, RepeatedSampleTimes) {
  Eigen::VectorXd y0 = Eigen::VectorXd::Ones(1);
  const std::vector<double> times{0.0, 1.0, 1.0, 2.0};
  int calls = 0;
  (void)dormand_prince([](double, const Eigen::VectorXd& y, Eigen::VectorXd& dy) { dy = -y; }, y0, times,
                       [&](std::size_t, double, const Eigen::VectorXd&) { ++calls; });
  EXPECT_EQ(calls, 4);
}

TEST(DormandPrince, Failures) {
  Eigen::VectorXd y0 = Eigen::VectorXd::Ones(1);
  const std::vector<double> times{0.0, 10.0};
  auto noop = [](std::size_t, double, const Eigen::VectorXd&) {};
  StepControl tight;
  tight.max_steps = 3;
  EXPECT_THROW((void)dormand_prince([](double, const Eigen::VectorXd& y, Eigen::VectorXd& dy) { dy = std::cos(50.0) * y; },
                                    y0, times, noop, tight),
               IntegrationFailure);
  EXPECT_THROW((void)dormand_prince(
                   [](double, const Eigen::VectorXd& y, Eigen::VectorXd& dy) { dy = y * std::nan(""); }, y0, times,
                   noop),
               IntegrationFailure);
  // finite-time blow-up y' = y² at t = 1 drives the step below min_step
  EXPECT_THROW((void)dormand_prince([](double, const Eigen::VectorXd& y, Eigen::VectorXd& dy) { dy = y.cwiseAbs2(); },
                                    y0, std::vector<double>{0.0, 2.0}, noop),
               IntegrationFailure);
  EXPECT_THROW((void)dormand_prince([](double, const Eigen::VectorXd& y, Eigen::VectorXd& dy) { dy = y; }, y0,
                                    std::vector<double>{1.0, 0.0}, noop),
               std::invalid_argument);
}
