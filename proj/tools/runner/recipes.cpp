#include "recipes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "darkchain/diagnostics.hpp"
#include "darkchain/disorder.hpp"
#include "darkchain/dynamics.hpp"
#include "darkchain/protocols.hpp"

namespace darkchain::runner {
namespace {

CouplingMatrices chain_couplings(const Config& cfg) {
  const double angle = cfg.real("chain.dipole_angle") * std::numbers::pi / 180.0;
  return coupling_matrices(build_chain(cfg.integer("chain.n"), cfg.real("chain.spacing"), angle));
}

std::vector<cplx> drive_profile(const std::string& kind, int mode, int n, double eta) {
  if (kind == "tailored") return tailored_amplitudes(mode > 0 ? mode : n, n, eta);
  if (kind == "alternating") return alternating_amplitudes(n, eta);
  if (kind == "uniform") return uniform_amplitudes(n, eta);
  throw ConfigError("config: protocol.drive must be tailored, alternating or uniform");
}

// Detuning that makes |G> and the target resonant through n photons.
double resonant_detuning(const CouplingMatrices& c, const TargetSpec& t) {
  return -two_photon_resonance(resolve_target(c, t), t.n_exc, c);
}

PreparationOptions preparation_options(const Config& cfg) {
  PreparationOptions o;
  o.tail_duration = cfg.real("protocol.tail");
  o.pulse_samples = cfg.integer("protocol.samples");
  o.tail_samples = cfg.integer("protocol.tail_samples");
  return o;
}

GradientSearch gradient_search(const Config& cfg) {
  GradientSearch s;
  s.detuning_below = cfg.real("optimize.detuning_below");
  s.detuning_above = cfg.real("optimize.detuning_above");
  s.detuning_grid = cfg.integer("optimize.detuning_grid");
  s.duration_lo = cfg.real("optimize.duration_lo");
  s.duration_factor = cfg.real("optimize.duration_factor");
  s.duration_profile = cfg.integer("optimize.duration_profile");
  return s;
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y, double* r2 = nullptr) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (r2) *r2 = syy > 0 ? sxy * sxy / (sxx * syy) : 1.0;
  return sxy / sxx;
}

RecipeResult couplings(const Config& cfg, const RunContext&) {
  const auto c = chain_couplings(cfg);
  const double a = cfg.real("chain.spacing");
  RecipeResult r;
  r.table.columns = {"i", "j", "distance", "omega", "gamma"};
  r.table.units = {"", "", "lambda0", "Gamma", "Gamma"};
  for (int i = 0; i < c.size(); ++i)
    for (int j = i + 1; j < c.size(); ++j)
      r.table.rows.push_back({static_cast<long long>(i), static_cast<long long>(j), (j - i) * a, c.omega(i, j), c.gamma(i, j)});
  if (c.size() >= 2) {
    r.metrics.emplace_back("omega_12", c.omega(0, 1));
    r.metrics.emplace_back("gamma_12", c.gamma(0, 1));
    r.metrics.emplace_back("gamma_antisymmetric", 1.0 - c.gamma(0, 1));
  }
  r.metrics.emplace_back("min_decay_rate", min_decay_rate(c));
  return r;
}

RecipeResult spectrum(const Config& cfg, const RunContext&) {
  const auto c = chain_couplings(cfg);
  RecipeResult r;
  r.table.columns = {"block", "index", "energy", "rate"};
  r.table.units = {"", "", "Gamma", "Gamma"};
  for (int b : cfg.integers("spectrum.blocks")) {
    const auto levels = manifold_rate_spectrum(c, b);
    double lo = levels.front().rate;
    for (std::size_t k = 0; k < levels.size(); ++k) {
      r.table.rows.push_back({static_cast<long long>(b), static_cast<long long>(k), levels[k].energy, levels[k].rate});
      lo = std::min(lo, levels[k].rate);
    }
    r.metrics.emplace_back("block" + std::to_string(b) + "_index0_rate", levels.front().rate);
    r.metrics.emplace_back("block" + std::to_string(b) + "_min_rate", lo);
  }
  return r;
}

void append_trace(Table& t, const std::string& label, const Trajectory& tr) {
  const auto& target = tr.series("target_population");
  const auto& ground = tr.series("ground_population");
  const auto& exc = tr.series("total_excitation");
  for (std::size_t k = 0; k < tr.times.size(); ++k) t.rows.push_back({label, tr.times[k], target[k], ground[k], exc[k]});
}

Table trace_table() {
  Table t;
  t.columns = {"series", "t", "target_population", "ground_population", "total_excitation"};
  t.units = {"", "1/Gamma", "", "", ""};
  return t;
}

RecipeResult prepare(const Config& cfg, const RunContext&) {
  const auto c = chain_couplings(cfg);
  const int n = c.size();
  DriveProtocol p;
  p.target = {cfg.integer("protocol.target_n"), cfg.integer("protocol.target_index")};
  p.amplitudes = drive_profile(cfg.text("protocol.drive"), cfg.integer("protocol.mode"), n, cfg.real("protocol.eta"));
  p.duration = cfg.real("protocol.duration");
  p.gradient = cfg.real("protocol.gradient");
  p.detuning = cfg.text("protocol.detuning") == "auto" ? resonant_detuning(c, p.target) : cfg.real("protocol.detuning");
  const auto res = run_preparation(p, c, cfg.flag("protocol.dissipative"), preparation_options(cfg));
  RecipeResult r;
  r.table = trace_table();
  append_trace(r.table, "prepare", res.trajectory);
  r.metrics = {{"detuning", p.detuning},
               {"fidelity", res.fidelity},
               {"coherent_fidelity", coherent_populations(p, c, std::vector<double>{p.duration})[0]},
               {"tail_rate", res.tail_rate},
               {"target_rate", res.target_rate}};
  return r;
}

RecipeResult fig1e(const Config& cfg, const RunContext&) {
  const auto c = chain_couplings(cfg);
  const int n = c.size();
  const auto opt = preparation_options(cfg);
  RecipeResult r;
  r.table = trace_table();
  struct Spec {
    std::string label;
    DriveProtocol p;
  };
  std::vector<Spec> specs{
      {"a", {tailored_amplitudes(n, n, cfg.real("fig1e.eta_a")), 0.0, 0.0, cfg.real("fig1e.duration_a"), {1, 0}}},
      {"b", {alternating_amplitudes(n, cfg.real("fig1e.eta_b")), 0.0, 0.0, cfg.real("fig1e.duration_b"), {2, 0}}}};
  for (auto& s : specs) {
    s.p.detuning = resonant_detuning(c, s.p.target);
    const auto res = run_preparation(s.p, c, true, opt);
    append_trace(r.table, "protocol_" + s.label, res.trajectory);
    r.metrics.emplace_back("population_" + s.label, res.fidelity);
    r.metrics.emplace_back("coherent_population_" + s.label,
                           coherent_populations(s.p, c, std::vector<double>{s.p.duration})[0]);
    r.metrics.emplace_back("tail_rate_" + s.label, res.tail_rate);
    r.metrics.emplace_back("target_rate_" + s.label, res.target_rate);
  }
  return r;
}

struct GradientRun {
  GradientPulse pulse;
  PreparationResult prep;
};

GradientRun gradient_run(const Config& cfg, const CouplingMatrices& c) {
  GradientRun g;
  g.pulse = optimize_gradient_pulse(c, cfg.real("protocol.eta"), cfg.real("protocol.gradient"), gradient_search(cfg));
  g.prep = run_preparation(g.pulse.pulse.protocol, c, true, preparation_options(cfg));
  return g;
}

RecipeResult gradient_prepare(const Config& cfg, const RunContext&) {
  const auto c = chain_couplings(cfg);
  const auto g = gradient_run(cfg, c);
  const auto pt = depth_point(*g.prep.state_at_pulse_end, g.prep.target);
  RecipeResult r;
  r.table = trace_table();
  append_trace(r.table, "gradient", g.prep.trajectory);
  const auto& m = g.pulse.model;
  r.metrics = {{"dark_exciton", static_cast<double>(g.pulse.dark)},
               {"adiabatic_resonance", m.resonance},
               {"adiabatic_pi_time", m.pi_time},
               {"rabi", m.rabi},
               {"weak_drive", m.weak_drive ? 1.0 : 0.0},
               {"fast_transfer", m.fast_transfer ? 1.0 : 0.0},
               {"bright_partner_dominant", m.bright_partner_dominant ? 1.0 : 0.0},
               {"detuning", g.pulse.pulse.protocol.detuning},
               {"duration", g.pulse.pulse.protocol.duration},
               {"coherent_population", g.pulse.pulse.population},
               {"population", g.prep.fidelity},
               {"ground_population", pt.p_ground},
               {"tail_rate", g.prep.tail_rate},
               {"target_rate", g.prep.target_rate}};
  return r;
}

RecipeResult fig2d(const Config& cfg, const RunContext&) {
  const auto c = chain_couplings(cfg);
  if (c.size() != 2) throw ConfigError("config: the two-atom gradient scan needs chain.n = 2");
  const double omega = c.omega(0, 1), eta = cfg.real("protocol.eta"), t = cfg.real("scan.duration");
  const double lo = cfg.real("scan.lo"), hi = cfg.real("scan.hi");
  const int points = cfg.integer("scan.points");
  if (points < 2 || !(hi > lo)) throw ConfigError("config: scan needs hi > lo and at least two points");
  const TargetSpec target{1, 0};
  const auto rule = [&](double g) { return two_atom_effective(omega, eta, g).resonance; };

  RecipeResult r;
  r.table.columns = {"gradient", "exact_population", "three_level_population", "adiabatic_population"};
  r.table.units = {"Gamma", "", "", ""};
  const std::vector<double> at{t};
  for (int k = 0; k < points; ++k) {
    const double g = lo + (hi - lo) * k / (points - 1);
    const auto e = two_atom_effective(omega, eta, g);
    const DriveProtocol p{uniform_amplitudes(2, eta), e.resonance, g, t, target};
    const auto three = reduced_three_level_evolve(two_atom_three_level(omega, eta, g, e.resonance),
                                                  Eigen::Vector3cd(0, 0, 1), at);
    r.table.rows.push_back({g, coherent_populations(p, c, at)[0], std::norm(three.amplitudes[0](1)),
                            std::pow(std::sin(e.rabi * t), 2)});
  }

  PulseSearch s;
  s.gradient = Range{lo, hi, points};
  s.detuning_rule = rule;
  const DriveProtocol base{uniform_amplitudes(2, eta), rule(lo), lo, t, target};
  const auto best = optimize_pulse(base, c, s);
  PulseSearch ts;
  ts.duration = Range{0.5 * t, 1.5 * t};
  const auto timed = optimize_pulse(best.protocol, c, ts);
  const auto e = two_atom_effective(omega, eta, best.protocol.gradient);
  PreparationOptions po = preparation_options(cfg);
  po.tail_duration = 0.0;
  const auto lind = run_preparation(best.protocol, c, true, po);
  r.metrics = {{"max_population", best.population},
               {"best_gradient", best.protocol.gradient},
               {"best_time", timed.protocol.duration},
               {"pi_time_closed_form", e.pi_time},
               {"lindblad_population", lind.fidelity}};
  return r;
}

RecipeResult entropy(const Config& cfg, const RunContext&) {
  const int lo = cfg.integer("entropy.n_min"), hi = cfg.integer("entropy.n_max");
  if (lo < 2 || hi < lo) throw ConfigError("config: entropy needs 2 <= n_min <= n_max");
  RecipeResult r;
  r.table.columns = {"n_emitters", "n_exc", "energy", "rate", "min_site_entropy", "dicke_entropy"};
  r.table.units = {"", "", "Gamma", "Gamma", "bits", "bits"};
  std::vector<double> numeric, dicke;
  double excess = -1.0;
  for (int n = lo; n <= hi; ++n) {
    const auto c = coupling_matrices(build_chain(n, cfg.real("entropy.spacing")));
    std::vector<int> blocks{1};
    if (n / 2 != 1) blocks.push_back(n / 2);
    for (int b : blocks) {
      // most subradiant eigenstate of the block
      const auto eig = block_eigensystem(assemble_static(Space::block(n, b), c, 0.0, 0.0), b);
      std::size_t best = 0;
      double rate = eigenstate_decay_rate(eig[0].state, c);
      for (std::size_t k = 1; k < eig.size(); ++k) {
        const double x = eigenstate_decay_rate(eig[k].state, c);
        if (x < rate) rate = x, best = k;
      }
      const double s = min_site_entropy(eig[best].state);
      const double d = dicke_entropy(n, b);
      r.table.rows.push_back({static_cast<long long>(n), static_cast<long long>(b), eig[best].energy, rate, s, d});
      numeric.push_back(s);
      dicke.push_back(d);
      excess = std::max(excess, s - d);
    }
  }
  double r2 = 0.0;
  const double slope = least_squares_slope(dicke, numeric, &r2);
  r.metrics = {{"dicke_n2_m1", dicke_entropy(2, 1)},
               {"min_entropy", *std::min_element(numeric.begin(), numeric.end())},
               {"max_entropy", *std::max_element(numeric.begin(), numeric.end())},
               {"max_excess_over_dicke", excess},
               {"trend_correlation", slope > 0 ? std::sqrt(r2) : -std::sqrt(r2)}};
  return r;
}

RecipeResult depth(const Config& cfg, const RunContext& ctx) {
  const auto c = chain_couplings(cfg);
  const int n = c.size();
  const auto g = gradient_run(cfg, c);
  const auto pt = depth_point(*g.prep.state_at_pulse_end, g.prep.target);
  const int kmax = cfg.integer("depth.k_max") > 0 ? std::min(cfg.integer("depth.k_max"), n) : n;
  DepthOptions opt;
  opt.restarts = cfg.integer("depth.restarts");
  opt.seed = ctx.seed;
  const auto grid = default_ground_grid(cfg.integer("depth.points"));
  std::vector<DepthBoundary> bounds;
  RecipeResult r;
  r.table.columns = {"k", "ground_population", "raw_boundary", "hull_boundary"};
  r.table.units = {"", "", "", ""};
  for (int k = 1; k <= kmax; ++k) {
    bounds.push_back(depth_boundary_general(g.prep.target, k, grid, opt));
    const auto& b = bounds.back();
    for (std::size_t i = 0; i < grid.size(); ++i) r.table.rows.push_back({static_cast<long long>(k), grid[i], b.raw[i], b.hull[i]});
  }
  const int exceeded = classify_depth(pt, bounds);
  r.metrics = {{"ground_population", pt.p_ground}, {"target_population", pt.p_target}, {"depth_exceeded", static_cast<double>(exceeded)}};
  if (n >= 2 && kmax >= n - 1) {
    r.metrics.emplace_back("margin_above_k" + std::to_string(n - 1), pt.p_target - bounds[static_cast<std::size_t>(n - 2)].at(pt.p_ground));
  }
  return r;
}

RecipeResult disorder(const Config& cfg, const RunContext& ctx) {
  std::vector<int> sizes;
  for (int n = cfg.integer("disorder.n_min"); n <= cfg.integer("disorder.n_max"); ++n) sizes.push_back(n);
  if (sizes.empty() || sizes.front() < 2) throw ConfigError("config: disorder needs 2 <= n_min <= n_max");
  const auto strengths = cfg.reals("disorder.strengths");
  const auto stats = min_rate_statistics(sizes, cfg.real("disorder.spacing"), strengths, cfg.integer("disorder.samples"),
                                         ctx.seed, ctx.threads);
  RecipeResult r;
  r.table.columns = {"n_emitters", "strength", "mean_log_min_rate", "stderr_log_min_rate", "floored", "samples"};
  r.table.units = {"", "a", "ln(Gamma)", "ln(Gamma)", "", ""};
  std::map<double, std::map<int, double>> by_s;
  for (const auto& e : stats) {
    r.table.rows.push_back({static_cast<long long>(e.n_emitters), e.strength, e.mean_log, e.stderr_log,
                            static_cast<long long>(e.floored), static_cast<long long>(e.min_rates.size())});
    by_s[e.strength][e.n_emitters] = e.mean_log;
  }
  if (by_s.contains(0.0) && sizes.size() >= 3) {
    std::vector<double> x, y;
    for (const auto& [n, v] : by_s[0.0]) x.push_back(n), y.push_back(v);
    double r2 = 0.0;
    r.metrics.emplace_back("ordered_slope", least_squares_slope(x, y, &r2));
    r.metrics.emplace_back("ordered_linearity_r2", r2);
  }
  const double smax = *std::max_element(strengths.begin(), strengths.end());
  if (by_s.contains(0.0) && smax > 0.0) {
    int count = 0, below = 0;
    for (const auto& [n, v] : by_s[smax])
      if (n >= 6) ++count, below += v < by_s[0.0][n] ? 1 : 0;
    if (count > 0) r.metrics.emplace_back("strongest_below_ordered_fraction", static_cast<double>(below) / count);
  }
  return r;
}

RecipeResult fig4b(const Config& cfg, const RunContext& ctx) {
  const int n = cfg.integer("disorder.trace_n");
  const auto strengths = cfg.reals("disorder.strengths");
  const auto times = uniform_times(cfg.real("disorder.horizon"), cfg.integer("disorder.trace_points"));
  RecipeResult r;
  r.table.columns = {"strength", "t", "excited_population"};
  r.table.units = {"a", "1/Gamma", ""};
  std::map<double, std::vector<double>> pop;
  for (double s : strengths) {
    const auto tr = disordered_decay_trace(n, cfg.real("disorder.spacing"), s, cfg.integer("disorder.samples"), times,
                                           ctx.seed, ctx.threads);
    for (std::size_t k = 0; k < times.size(); ++k) r.table.rows.push_back({s, times[k], tr.population[k]});
    pop[s] = tr.population;
  }
  const double smax = *std::max_element(strengths.begin(), strengths.end());
  if (pop.contains(0.0) && smax > 0.0) {
    const double early = cfg.real("disorder.early_end"), late = cfg.real("disorder.late_start");
    int ne = 0, be = 0, nl = 0, al = 0;
    for (std::size_t k = 0; k < times.size(); ++k) {
      if (times[k] > 0.0 && times[k] <= early) ++ne, be += pop[smax][k] <= pop[0.0][k] ? 1 : 0;
      if (times[k] >= late) ++nl, al += pop[smax][k] > pop[0.0][k] ? 1 : 0;
    }
    if (ne > 0) r.metrics.emplace_back("early_below_fraction", static_cast<double>(be) / ne);
    if (nl > 0) r.metrics.emplace_back("late_above_fraction", static_cast<double>(al) / nl);
  }
  return r;
}

const std::map<std::string, std::string> kTwoAtom{{"chain.n", "2"}, {"chain.spacing", "0.05"}};
const std::map<std::string, std::string> kFourAtomGradient{{"chain.n", "4"},
                                                           {"chain.spacing", "0.025"},
                                                           {"protocol.eta", "40"},
                                                           {"protocol.gradient", "0.98"}};

}  // namespace

const double* RecipeResult::metric(const std::string& name) const {
  for (const auto& [k, v] : metrics)
    if (k == name) return &v;
  return nullptr;
}

const std::vector<Recipe>& recipes() {
  static const std::vector<Recipe> all{
      {"couplings", "pair couplings of a chain", kTwoAtom, couplings},
      {"spectrum", "energies and decay rates of excitation blocks", {}, spectrum},
      {"prepare", "single driven preparation with decay tail", {}, prepare},
      {"gradient-prepare", "uniform drive plus gradient into the dark exciton", kFourAtomGradient, gradient_prepare},
      {"entropy", "minimal single-site entropy against the Dicke value", {}, entropy},
      {"depth", "entanglement-depth boundaries and the gradient-prepared point", kFourAtomGradient, depth},
      {"disorder", "minimal decay rate under positional disorder", {}, disorder},
      {"fig1d", "rate spectra of blocks 1 and 2, N = 6", {{"spectrum.blocks", "1, 2"}}, spectrum},
      {"fig1e", "protocols A and B with decay tails", {}, fig1e},
      {"fig2d", "two-atom gradient scan against the adiabatic curve",
       {{"chain.n", "2"}, {"chain.spacing", "0.05"}, {"protocol.eta", "1"}}, fig2d},
      {"fig2e", "four-atom gradient preparation", kFourAtomGradient, gradient_prepare},
      {"fig3a", "entropy against N", {}, entropy},
      {"fig3b", "depth of entanglement of the four-atom state", kFourAtomGradient, depth},
      {"fig4a", "mean log minimal rate against N", {}, disorder},
      {"fig4b", "disorder-averaged decay of the m = N exciton", {}, fig4b},
  };
  return all;
}

const Recipe* find_recipe(const std::string& name) {
  for (const auto& r : recipes())
    if (r.name == name) return &r;
  return nullptr;
}

}  // namespace darkchain::runner
