#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "config.hpp"

namespace darkchain::runner {

using Cell = std::variant<long long, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::string> units;  ///< one per column ("" for dimensionless)
  std::vector<std::vector<Cell>> rows;
};

struct RecipeResult {
  Table table;
  std::vector<std::pair<std::string, double>> metrics;  ///< in insertion order

  [[nodiscard]] const double* metric(const std::string& name) const;
};

struct RunContext {
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

struct Recipe {
  std::string name;
  std::string summary;
  std::map<std::string, std::string> defaults;
  std::function<RecipeResult(const Config&, const RunContext&)> run;
};

[[nodiscard]] const std::vector<Recipe>& recipes();
/// nullptr if unknown.
[[nodiscard]] const Recipe* find_recipe(const std::string& name);

}  // namespace darkchain::runner
