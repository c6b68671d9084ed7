#include "darkchain/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace darkchain {
namespace {

void require_interval(double lo, double hi, const char* who) {
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::invalid_argument(std::string(who) + ": empty search interval");
  }
}

}  // namespace

LineResult golden_section_maximize(const std::function<double(double)>& f, double lo, double hi,
                                   double tol, int max_iter) {
  require_interval(lo, hi, "golden_section_maximize");
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  LineResult r;
  r.evaluations = 2;
  for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
    ++r.evaluations;
  }
  if (fc >= fd) {
    r.x = c;
    r.value = fc;
  } else {
    r.x = d;
    r.value = fd;
  }
  return r;
}

LineResult grid_golden_maximize(const std::function<double(double)>& f, double lo, double hi, int grid,
                                double tol) {
  require_interval(lo, hi, "grid_golden_maximize");
  grid = std::max(grid, 3);
  std::vector<double> xs(static_cast<std::size_t>(grid)), fs(xs.size());
  for (int i = 0; i < grid; ++i) {
    xs[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (grid - 1);
    fs[static_cast<std::size_t>(i)] = f(xs[static_cast<std::size_t>(i)]);
  }
  const auto best = std::max_element(fs.begin(), fs.end());
  const auto worst = std::min_element(fs.begin(), fs.end());
  LineResult r;
  r.evaluations = grid;
  if (*best - *worst <= 1e-12 * (1.0 + std::abs(*best))) {
    r.x = 0.5 * (lo + hi);
    r.value = f(r.x);
    r.degenerate = true;
    ++r.evaluations;
    return r;
  }
  const auto i = static_cast<std::size_t>(best - fs.begin());
  const double a = xs[i == 0 ? 0 : i - 1];
  const double b = xs[std::min(i + 1, xs.size() - 1)];
  const LineResult g = golden_section_maximize(f, a, b, tol);
  r.evaluations += g.evaluations;
  if (g.value >= *best) {
    r.x = g.x;
    r.value = g.value;
  } else {
    r.x = xs[i];
    r.value = *best;
  }
  return r;
}

AscentResult coordinate_ascent(const std::function<double(const std::vector<double>&)>& f,
                               const std::vector<SearchParameter>& params, int sweeps) {
  AscentResult r;
  for (const auto& p : params) {
    require_interval(p.lo, p.hi, "coordinate_ascent");
    r.x.push_back(std::clamp(p.start, p.lo, p.hi));
  }
  r.value = f(r.x);
  r.evaluations = 1;
  r.degenerate = true;
  for (int s = 0; s < sweeps; ++s) {
    for (std::size_t k = 0; k < params.size(); ++k) {
      auto line = [&](double v) {
        std::vector<double> x = r.x;
        x[k] = v;
        return f(x);
      };
      const LineResult lr = grid_golden_maximize(line, params[k].lo, params[k].hi, params[k].grid, params[k].tol);
      r.evaluations += lr.evaluations;
      if (!lr.degenerate) r.degenerate = false;
      if (lr.value >= r.value || lr.degenerate) {
        r.x[k] = lr.x;
        r.value = lr.value;
      }
    }
  }
  return r;
}

}  // namespace darkchain
