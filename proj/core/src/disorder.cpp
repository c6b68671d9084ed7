#include "darkchain/disorder.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "darkchain/dynamics.hpp"
#include "darkchain/errors.hpp"
#include "darkchain/rng.hpp"

namespace darkchain {
namespace {

constexpr int kMaxRedraws = 64;

}  // namespace

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  if (threads <= 1) {
    for (std::size_t k = 0; k < count; ++k) body(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= count) return;
      try {
        body(k);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = count;
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

double compensated_sum(std::span<const double> values) {
  double sum = 0.0, carry = 0.0;
  for (double v : values) {
    const double t = sum + v;
    carry += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  return sum + carry;
}

ChainGeometry disordered_chain(int n, double spacing, double strength, std::uint64_t seed, std::uint64_t sample) {
  const ChainGeometry ordered = build_chain(n, spacing);
  for (std::uint64_t attempt = 0; attempt < kMaxRedraws; ++attempt) {
    const std::uint64_t sub = substream_seed(seed, {static_cast<std::uint64_t>(n), sample, attempt});
    ChainGeometry g = perturb_positions(ordered, {strength, sub});
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = i + 1; j < n && ok; ++j)
        if ((g.positions[j] - g.positions[i]).norm() < kMinSeparation) ok = false;
    if (ok) return g;
  }
  throw SingularGeometry("disordered_chain: could not draw a non-singular geometry");
}

std::vector<MinRateEnsemble> min_rate_statistics(std::span<const int> sizes, double spacing,
                                                 std::span<const double> strengths, int samples,
                                                 std::uint64_t seed, unsigned threads) {
  if (samples < 1) throw std::invalid_argument("min_rate_statistics: need at least one sample");
  std::vector<MinRateEnsemble> out;
  for (int n : sizes) {
    for (double s : strengths) {
      MinRateEnsemble e;
      e.n_emitters = n;
      e.spacing = spacing;
      e.strength = s;
      e.min_rates.resize(static_cast<std::size_t>(samples));
      parallel_for(e.min_rates.size(), threads, [&](std::size_t k) {
        e.min_rates[k] = min_decay_rate(coupling_matrices(disordered_chain(n, spacing, s, seed, k)));
      });
      std::vector<double> logs;
      for (double r : e.min_rates) {
        if (r < kLogRateFloor) ++e.floored;
        logs.push_back(std::log(std::max(r, kLogRateFloor)));
      }
      e.mean_log = compensated_sum(logs) / samples;
      std::vector<double> sq;
      for (double l : logs) sq.push_back((l - e.mean_log) * (l - e.mean_log));
      e.stderr_log = samples > 1 ? std::sqrt(compensated_sum(sq) / (samples - 1) / samples) : 0.0;
      out.push_back(std::move(e));
    }
  }
  return out;
}

DecayTrace disordered_decay_trace(int n, double spacing, double strength, int samples,
                                  std::span<const double> times, std::uint64_t seed, unsigned threads) {
  if (samples < 1) throw std::invalid_argument("disordered_decay_trace: need at least one sample");
  if (times.size() < 2 || times.front() != 0.0) {
    throw std::invalid_argument("disordered_decay_trace: times must start at 0 and hold two or more points");
  }
  const Eigen::VectorXcd f = nn_exciton_coefficients(n, n).cast<cplx>();

  DecayTrace out;
  out.n_emitters = n;
  out.spacing = spacing;
  out.strength = strength;
  out.samples = samples;
  out.times.assign(times.begin(), times.end());
  out.min_rates.resize(static_cast<std::size_t>(samples));

  std::vector<std::vector<double>> traces(static_cast<std::size_t>(samples));
  parallel_for(traces.size(), threads, [&](std::size_t k) {
    const CouplingMatrices c = coupling_matrices(disordered_chain(n, spacing, strength, seed, k));
    out.min_rates[k] = min_decay_rate(c);
    traces[k] = single_excitation_decay(c, f, out.times);
  });

  out.population.resize(times.size());
  std::vector<double> column(static_cast<std::size_t>(samples));
  for (std::size_t t = 0; t < times.size(); ++t) {
    for (std::size_t k = 0; k < traces.size(); ++k) column[k] = traces[k][t];
    out.population[t] = compensated_sum(column) / samples;
  }
  return out;
}

}  // namespace darkchain
