#pragma once

#include <functional>
#include <string>
#include <vector>

namespace darkchain {

struct LineResult {
  double x = 0.0;
  double value = 0.0;
  bool degenerate = false;  ///< objective flat over the grid; x is the interval midpoint
  int evaluations = 0;
};

/// Golden-section search for a maximum of a unimodal f on [lo, hi].
[[nodiscard]] LineResult golden_section_maximize(const std::function<double(double)>& f, double lo,
                                                 double hi, double tol = 1e-8, int max_iter = 200);

/// Uniform grid scan followed by golden-section refinement around the best
/// grid point. Throws std::invalid_argument for an empty interval.
[[nodiscard]] LineResult grid_golden_maximize(const std::function<double(double)>& f, double lo,
                                              double hi, int grid = 41, double tol = 1e-8);

struct SearchParameter {
  std::string name;
  double lo = 0.0;
  double hi = 0.0;
  double start = 0.0;
  int grid = 41;
  double tol = 1e-8;
};

struct AscentResult {
  std::vector<double> x;
  double value = 0.0;
  bool degenerate = false;  ///< every line search was flat
  int evaluations = 0;
};

/// Deterministic coordinate ascent: each sweep runs grid_golden_maximize over
/// every parameter in turn with the others held fixed.
[[nodiscard]] AscentResult coordinate_ascent(const std::function<double(const std::vector<double>&)>& f,
                                             const std::vector<SearchParameter>& params, int sweeps = 2);

}  // namespace darkchain
