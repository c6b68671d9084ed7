#pragma once

#include <ostream>
#include <string>

#include "config.hpp"
#include "recipes.hpp"

namespace darkchain::runner {

/// Delimiter-separated table with a '#' header: recipe, config hash, seed,
/// parameter echo, metrics, units, then the column names.
void write_table(std::ostream& out, const std::string& recipe, const Config& cfg, const RecipeResult& result);

}  // namespace darkchain::runner
