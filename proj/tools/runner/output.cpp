#include "output.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace darkchain::runner {
namespace {

std::string format_cell(const Cell& c, int precision) {
  if (const auto* i = std::get_if<long long>(&c)) return fmt::format("{}", *i);
  if (const auto* d = std::get_if<double>(&c)) return fmt::format("{:.{}g}", *d, precision);
  return std::get<std::string>(c);
}

}  // namespace

void write_table(std::ostream& out, const std::string& recipe, const Config& cfg, const RecipeResult& result) {
  const std::string delim = cfg.text("output.delimiter").empty() ? "," : cfg.text("output.delimiter");
  const int precision = cfg.integer("output.precision");
  fmt::print(out, "# recipe: {}\n", recipe);
  fmt::print(out, "# config_hash: {:016x}\n", cfg.hash());
  fmt::print(out, "# seed: {}\n", cfg.text("run.seed"));
  for (const auto& [k, v] : cfg.echo()) fmt::print(out, "# param {} = {}\n", k, v);
  for (const auto& [k, v] : result.metrics) fmt::print(out, "# metric {} = {:.{}g}\n", k, v, precision);
  std::string units;
  for (std::size_t i = 0; i < result.table.columns.size(); ++i) {
    const std::string& u = i < result.table.units.size() ? result.table.units[i] : std::string();
    units += fmt::format("{}{}[{}]", i ? " " : "", result.table.columns[i], u.empty() ? "1" : u);
  }
  fmt::print(out, "# units: {}\n", units);
  for (std::size_t i = 0; i < result.table.columns.size(); ++i)
    fmt::print(out, "{}{}", i ? delim : "", result.table.columns[i]);
  out << '\n';
  for (const auto& row : result.table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) fmt::print(out, "{}{}", i ? delim : "", format_cell(row[i], precision));
    out << '\n';
  }
}

}  // namespace darkchain::runner
