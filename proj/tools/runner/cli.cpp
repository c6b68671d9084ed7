#include "cli.hpp"

#include <fstream>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "config.hpp"
#include "darkchain/errors.hpp"
#include "golden.hpp"
#include "output.hpp"
#include "recipes.hpp"

namespace darkchain::runner {
namespace {

const char* bound_name(Bound b) {
  switch (b) {
    case Bound::Window: return "window";
    case Bound::AtLeast: return "at_least";
    case Bound::AtMost: return "at_most";
  }
  return "?";
}

int execute(const Recipe& recipe, const std::optional<std::string>& config_path, const std::vector<std::string>& sets,
            const std::optional<std::uint64_t>& seed, const std::optional<std::string>& out_path, bool check_mode,
            const std::optional<unsigned>& threads, std::ostream& out, std::ostream& err) {
  Config cfg = Config::resolve(recipe.defaults, config_path, sets);
  if (seed) cfg.set("run.seed", std::to_string(*seed));
  if (threads) cfg.set("run.threads", std::to_string(*threads));
  if (out_path) cfg.set("output.path", *out_path);

  const std::vector<Golden>* refs = nullptr;
  if (check_mode) {
    refs = goldens(recipe.name);
    if (!refs) throw ConfigError("check: recipe '" + recipe.name + "' has no reference values");
  }
  const double scale = cfg.real("check.tolerance_scale");
  if (!(scale >= 0.0)) throw ConfigError("config: check.tolerance_scale must be non-negative");

  RunContext ctx;
  ctx.seed = cfg.u64("run.seed");
  const int t = cfg.integer("run.threads");
  if (t < 0) throw ConfigError("config: run.threads must be >= 0");
  ctx.threads = static_cast<unsigned>(t);

  const RecipeResult result = recipe.run(cfg, ctx);

  const std::string& path = cfg.text("output.path");
  if (path.empty() || path == "-") {
    write_table(out, recipe.name, cfg, result);
  } else {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw ConfigError("output: cannot open " + path);
    write_table(file, recipe.name, cfg, result);
  }

  if (!refs) return kPass;
  bool all = true;
  for (const auto& line : check(result, *refs, scale)) {
    all = all && line.pass;
    fmt::print(err, "check {} {} metric={} value={} expected={} tolerance={} bound={}\n", recipe.name,
               line.pass ? "PASS" : "FAIL", line.golden.metric, line.found ? fmt::format("{:.10g}", line.value) : "missing",
               line.golden.expected, line.golden.tolerance * scale, bound_name(line.golden.bound));
  }
  return all ? kPass : kCheckFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"darkchain: subradiant state preparation in emitter chains", "darkchain"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::optional<std::string> config_path, out_path;
  std::vector<std::string> sets;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  bool check_mode = false;
  app.add_option("--config", config_path, "INI file with [section] key = value entries");
  app.add_option("--set", sets, "override, section.key=value (repeatable)");
  app.add_option("--seed", seed, "master seed (run.seed)");
  app.add_option("--out", out_path, "output table path (default stdout)");
  app.add_flag("--check", check_mode, "compare metrics with the registered reference values");
  app.add_option("--threads", threads, "worker threads, 0 = hardware concurrency");

  const Recipe* chosen = nullptr;
  for (const auto& r : recipes()) {
    CLI::App* sub = app.add_subcommand(r.name, r.summary);
    sub->callback([&chosen, &r] { chosen = &r; });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    fmt::print(err, "darkchain: {}\n", e.what());
    return kConfigError;
  }
  if (!chosen) {
    fmt::print(err, "darkchain: no recipe given\n");
    return kConfigError;
  }

  try {
    return execute(*chosen, config_path, sets, seed, out_path, check_mode, threads, out, err);
  } catch (const ConfigError& e) {
    fmt::print(err, "darkchain: {}\n", e.what());
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    fmt::print(err, "darkchain: invalid parameters: {}\n", e.what());
    return kConfigError;
  } catch (const IntegrationFailure& e) {
    fmt::print(err, "darkchain: numerical failure: {}\n", e.what());
    return kNumericFailure;
  } catch (const PositivityViolation& e) {
    fmt::print(err, "darkchain: numerical failure: {}\n", e.what());
    return kNumericFailure;
  } catch (const SingularGeometry& e) {
    fmt::print(err, "darkchain: numerical failure: {}\n", e.what());
    return kNumericFailure;
  } catch (const RegimeViolation& e) {
    fmt::print(err, "darkchain: numerical failure: {}\n", e.what());
    return kNumericFailure;
  }
}

}  // namespace darkchain::runner
