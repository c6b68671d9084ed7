#pragma once

#include <string>
#include <vector>

#include "recipes.hpp"

namespace darkchain::runner {

enum class Bound { Window, AtLeast, AtMost };

/// Reference value for one metric of a recipe run on its defaults. Window:
/// |v − expected| <= tol; AtLeast: v >= expected − tol; AtMost: v <= expected + tol.
/// The tolerance is multiplied by check.tolerance_scale.
struct Golden {
  std::string metric;
  Bound bound;
  double expected;
  double tolerance;
};

struct CheckLine {
  Golden golden;
  bool found = false;
  double value = 0.0;
  bool pass = false;
};

/// nullptr when the recipe has no registered references.
[[nodiscard]] const std::vector<Golden>* goldens(const std::string& recipe);

[[nodiscard]] std::vector<CheckLine> check(const RecipeResult& result, const std::vector<Golden>& refs, double scale);

}  // namespace darkchain::runner
