#include "golden.hpp"

#include <cmath>
#include <map>

namespace darkchain::runner {

const std::vector<Golden>* goldens(const std::string& recipe) {
  using B = Bound;
  static const std::map<std::string, std::vector<Golden>> table{
      {"couplings", {{"omega_12", B::Window, 23.08, 0.01}, {"gamma_antisymmetric", B::Window, 0.019, 0.001}}},
      {"fig1d", {{"block1_index0_rate", B::Window, 0.0009, 0.0002}, {"block2_index0_rate", B::Window, 0.0402, 0.004}}},
      {"fig1e",
       {{"population_a", B::Window, 0.9994, 0.0005},
        {"tail_rate_a", B::Window, 0.0009, 0.0002},
        {"population_b", B::AtLeast, 0.9836, 0.0086},
        {"target_rate_b", B::Window, 0.0402, 0.004}}},
      {"fig2d",
       {{"max_population", B::AtLeast, 0.994, 0.004},
        {"best_time", B::Window, 16.19, 0.3},
        {"pi_time_closed_form", B::Window, 16.179, 0.01}}},
      {"fig2e", {{"population", B::AtLeast, 0.91, 0.02}}},
      {"fig3a",
       {{"dicke_n2_m1", B::Window, 1.0, 1e-12},
        {"min_entropy", B::AtLeast, 0.0, 1e-12},
        {"max_entropy", B::AtMost, 1.0, 1e-12},
        {"max_excess_over_dicke", B::AtMost, 0.0, 1e-9},
        {"trend_correlation", B::AtLeast, 0.9, 0.0}}},
      {"fig3b", {{"depth_exceeded", B::Window, 3.0, 0.5}, {"margin_above_k3", B::AtLeast, 0.0, 0.0}}},
      {"fig4a",
       {{"ordered_slope", B::AtMost, 0.0, 0.0},
        {"ordered_linearity_r2", B::AtLeast, 0.95, 0.0},
        {"strongest_below_ordered_fraction", B::AtLeast, 1.0, 0.0}}},
      {"fig4b", {{"early_below_fraction", B::AtLeast, 1.0, 0.0}, {"late_above_fraction", B::AtLeast, 1.0, 0.0}}},
  };
  const auto it = table.find(recipe);
  return it == table.end() ? nullptr : &it->second;
}

std::vector<CheckLine> check(const RecipeResult& result, const std::vector<Golden>& refs, double scale) {
  std::vector<CheckLine> out;
  for (const auto& g : refs) {
    CheckLine line{g};
    if (const double* v = result.metric(g.metric)) {
      line.found = true;
      line.value = *v;
      const double tol = g.tolerance * scale;
      switch (g.bound) {
        case Bound::Window: line.pass = std::abs(*v - g.expected) <= tol; break;
        case Bound::AtLeast: line.pass = *v >= g.expected - tol; break;
        case Bound::AtMost: line.pass = *v <= g.expected + tol; break;
      }
    }
    out.push_back(line);
  }
  return out;
}

}  // namespace darkchain::runner
