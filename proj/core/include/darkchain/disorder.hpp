#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "darkchain/geometry.hpp"

namespace darkchain {

/// Runs body(k) for k in [0, count) on `threads` workers (0 = hardware
/// concurrency). The first exception thrown by any call is rethrown.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

/// Neumaier-compensated sum, evaluated in index order.
[[nodiscard]] double compensated_sum(std::span<const double> values);

/// Disordered chain number `sample` of the ensemble (N, a, s, seed). Geometries
/// with coincident emitters are redrawn from the next substream.
[[nodiscard]] ChainGeometry disordered_chain(int n, double spacing, double strength, std::uint64_t seed,
                                             std::uint64_t sample);

struct MinRateEnsemble {
  int n_emitters = 0;
  double spacing = 0.0;
  double strength = 0.0;
  std::vector<double> min_rates;  ///< per sample, after clipping
  double mean_log = 0.0;          ///< mean of ln(max(rate, floor))
  double stderr_log = 0.0;
  int floored = 0;                ///< samples whose rate hit the floor
};

/// Floor applied before taking logarithms of clipped rates.
inline constexpr double kLogRateFloor = 1e-10;

[[nodiscard]] std::vector<MinRateEnsemble> min_rate_statistics(std::span<const int> sizes, double spacing,
                                                               std::span<const double> strengths, int samples,
                                                               std::uint64_t seed, unsigned threads = 1);

struct DecayTrace {
  int n_emitters = 0;
  double spacing = 0.0;
  double strength = 0.0;
  int samples = 0;
  std::vector<double> times;
  std::vector<double> population;  ///< ensemble mean of the excited population
  std::vector<double> min_rates;   ///< per sample
};

/// Ordered-chain |m=N> exciton decaying under drive-free master-equation
/// dynamics with disordered couplings (blocks 0 and 1), averaged over samples.
[[nodiscard]] DecayTrace disordered_decay_trace(int n, double spacing, double strength, int samples,
                                                std::span<const double> times, std::uint64_t seed,
                                                unsigned threads = 1);

}  // namespace darkchain
