#include "lrlab/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "lrlab/report.hpp"

namespace lrlab {

using nlohmann::json;

namespace {

constexpr Command kAllCommands[] = {Command::check,    Command::constants, Command::chains,
                                    Command::bound,    Command::simulate,  Command::verify};

/// Everything a command needs, built once from the configuration.
struct Setup {
  TwoFamilyHamiltonian h;
  NoncommutingAdjacency adjacency;
  BoundConstants consts;
  ResolvedObservables obs;
  std::vector<double> times;
  std::filesystem::path out_dir;

  double t_max() const {
    double m = 0.0;
    for (double t : times) m = std::max(m, std::abs(t));
    return m;
  }
};

Setup make_setup(const RunConfig& cfg, const CommandOverrides& overrides) {
  TwoFamilyHamiltonian h = build_model(cfg.model);
  NoncommutingAdjacency adjacency = noncommuting_adjacency(h);
  const std::optional<double> lambda = overrides.lambda ? overrides.lambda : cfg.lambda;
  BoundConstants consts = compute_bound_constants(h, adjacency, lambda);
  ResolvedObservables obs = resolve_observables(h, cfg);
  std::filesystem::path out_dir = overrides.out ? *overrides.out : cfg.output_dir;
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error("cannot create output directory " + out_dir.string() + ": " + ec.message());
  return Setup{std::move(h), std::move(adjacency), consts, std::move(obs), cfg.time_grid.samples(),
               std::move(out_dir)};
}

std::filesystem::path emit(CommandResult& result, const Setup& s, const std::string& name,
                           const std::string& content) {
  const auto path = s.out_dir / name;
  write_text_file(path, content);
  result.artifacts.push_back(path);
  return path;
}

/// Bound evaluators for the placements with d > R; null for the others.
std::vector<std::unique_ptr<ObservableBounds>> observable_bounds(const Setup& s,
                                                                 const RunConfig& cfg) {
  std::vector<std::unique_ptr<ObservableBounds>> out;
  for (const auto& q : s.obs.q) {
    if (region_distance(s.h.graph(), s.obs.p.support, q.support) <= s.consts.R) {
      out.push_back(nullptr);
      continue;
    }
    out.push_back(std::make_unique<ObservableBounds>(s.h, s.adjacency, s.consts, s.obs.p, q,
                                                     s.t_max(), cfg.tolerances.series_tol,
                                                     cfg.tolerances.chain_n_max));
  }
  return out;
}

CommandResult run_check(const Setup& s) {
  CommandResult r;
  const ValidationReport report = validate_two_family(s.h);
  json doc = to_json(report);
  doc["model_notes"] = s.h.notes();
  emit(r, s, "validation.json", to_json_text(doc));
  r.exit_code = report.passed ? kExitPass : kExitFail;
  r.summary.push_back(std::string("validation ") + (report.passed ? "passed" : "failed") + " (" +
                      std::to_string(report.violations.size()) + " violations)");
  return r;
}

CommandResult run_constants(const Setup& s) {
  CommandResult r;
  json doc = to_json(s.consts);
  const double v_lr = lr_velocity(s.consts);
  doc["v_LR"] = v_lr;
  doc["cone_velocity"] = cone_velocity(s.consts);
  const LambdaOptimum opt = optimize_lambda(s.consts);
  doc["lambda_star"] = opt.lambda_star;
  doc["v_min"] = opt.v_min;
  const BoundednessReport b = bounded_implies_cb_check(s.h, s.consts);
  doc["boundedness"] = {{"K_tilde", b.K_tilde}, {"K_limit", b.K_limit}, {"Q_limit", b.Q_limit},
                        {"K_margin", b.K_margin}, {"Q_margin", b.Q_margin}, {"passed", b.passed}};
  doc["model_notes"] = s.h.notes();
  emit(r, s, "constants.json", to_json_text(doc));
  r.exit_code = b.passed ? kExitPass : kExitFail;
  r.summary.push_back("K = " + format_real(s.consts.K) + ", Q = " + format_real(s.consts.Q) +
                      ", nu = " + std::to_string(s.consts.nu) + ", R = " +
                      std::to_string(s.consts.R) + ", v_LR = " + format_real(v_lr));
  return r;
}

CommandResult run_chains(const Setup& s, const RunConfig& cfg) {
  CommandResult r;
  const LocalAlgebra algebra(s.h);
  std::vector<int> starts;
  for (int i = 0; i < s.h.term_count(); ++i) {
    if (algebra.commutator_norm(s.obs.p, s.h.terms()[static_cast<std::size_t>(i)].op) >
        kNonzeroCommutator) {
      starts.push_back(i);
    }
  }
  std::vector<ChainCountTable> tables;
  for (const auto& q : s.obs.q) {
    if (starts.empty()) break;
    int d_min = std::numeric_limits<int>::max();
    for (int k : starts) {
      d_min = std::min(d_min, region_distance(s.h.graph(), s.adjacency.support(k), q.support));
    }
    int order = kBruteForceMaxOrder;
    if (cfg.tolerances.chain_n_max) {
      order = *cfg.tolerances.chain_n_max;
    } else if (!s.consts.zero_velocity) {
      order = required_series_order(s.consts, s.t_max(), d_min, cfg.tolerances.series_tol);
    }
    std::vector<ChainCountTable> per_start;
    for (int k : starts) per_start.push_back(count_chains_dp(s.h.graph(), s.adjacency, k, q.support, order));
    tables.push_back(max_over_starts(per_start));
  }
  emit(r, s, "chains.csv", chains_csv(tables, s.consts));
  r.summary.push_back(std::to_string(tables.size()) + " chain tables from " +
                      std::to_string(starts.size()) + " start terms");
  return r;
}

CommandResult run_bound(const Setup& s, const RunConfig& cfg) {
  CommandResult r;
  const auto bounds = observable_bounds(s, cfg);
  std::vector<BoundCurve> curves;
  for (std::size_t q = 0; q < bounds.size(); ++q) {
    if (!bounds[q]) {
      r.summary.push_back("excluded " + s.obs.q[q].label + ": d <= R");
      continue;
    }
    BoundCurve c = bounds[q]->curve(cfg.bound_method, s.times);
    for (auto& sample : c.samples) sample.second *= cfg.bound_scale;
    curves.push_back(std::move(c));
  }
  emit(r, s, "bound.csv", bound_csv(curves));
  r.summary.push_back(std::to_string(curves.size()) + " bound curves (" +
                      to_string(cfg.bound_method) + ")");
  return r;
}

SimulationSweep simulate(const Setup& s, const RunConfig& cfg) {
  SweepOptions options;
  options.max_initial_occupation = cfg.max_initial_occupation;
  SimulationSweep sweep = commutator_norm_sweep(s.h, s.obs.p, s.obs.q, s.times, options);
  sweep.model = cfg.model.name;
  return sweep;
}

CommandResult run_simulate(const Setup& s, const RunConfig& cfg) {
  CommandResult r;
  const SimulationSweep sweep = simulate(s, cfg);
  emit(r, s, "sweep.csv", sweep_csv(sweep));
  r.summary.push_back("swept " + std::to_string(sweep.d.size()) + " placements over " +
                      std::to_string(sweep.t.size()) + " times (dim " +
                      std::to_string(sweep.hilbert_dim) + ", " + std::to_string(sweep.sectors) +
                      " sectors)");
  return r;
}

CommandResult run_verify(const Setup& s, const RunConfig& cfg) {
  CommandResult r;
  const SimulationSweep sweep = simulate(s, cfg);
  const auto bounds = observable_bounds(s, cfg);

  VerifyOptions options;
  options.slack = cfg.tolerances.margin_slack;
  options.bound_scale = cfg.bound_scale;
  std::vector<VerificationReport> reports;
  bool passed = true;
  json methods = json::object();
  for (BoundMethod m : cfg.methods) {
    auto eval = [&](std::size_t q, double t) { return bounds[q]->evaluate(m, t); };
    reports.push_back(verify_bound(sweep, m, s.consts.R, eval, options));
    const auto& rep = reports.back();
    passed = passed && rep.passed;
    methods[to_string(m)] = to_json(rep);
    r.summary.push_back(to_string(m) + ": " + (rep.passed ? "pass" : "FAIL") + " (min margin " +
                        format_real(rep.min_margin) + ")");
  }

  json doc;
  doc["model"] = cfg.model.name;
  doc["model_notes"] = s.h.notes();
  doc["hilbert_dim"] = sweep.hilbert_dim;
  doc["sectors"] = sweep.sectors;
  doc["constants"] = to_json(s.consts);
  doc["bound_scale"] = cfg.bound_scale;
  doc["methods"] = methods;
  json placements = json::array();
  for (std::size_t q = 0; q < sweep.d.size(); ++q) {
    placements.push_back({{"label", sweep.o_q[q]}, {"d", sweep.d[q]}});
  }
  doc["observables"] = {{"p", sweep.o_p}, {"q", placements}};
  if (sweep.max_initial_occupation) doc["max_initial_occupation"] = *sweep.max_initial_occupation;

  const double v_lr = lr_velocity(s.consts);
  doc["v_LR"] = v_lr;
  json velocity;
  velocity["method"] = "empirical threshold-crossing fit (not a bound)";
  bool ordering = true;
  try {
    const VelocityEstimate v = extract_velocity(sweep, cfg.tolerances.velocity_threshold);
    velocity.update(to_json(v));
    doc["v_emp"] = v.v_emp;
    ordering = v.v_emp <= v_lr;
    r.summary.push_back("v_emp = " + format_real(v.v_emp) + ", v_LR = " + format_real(v_lr));
  } catch (const Error& e) {
    velocity["error"] = e.what();
    velocity["threshold"] = cfg.tolerances.velocity_threshold;
    doc["v_emp"] = nullptr;
    r.summary.push_back(std::string("v_emp unavailable: ") + e.what() + "; v_LR = " +
                        format_real(v_lr));
  }
  velocity["ordering_holds"] = ordering;
  doc["velocity"] = velocity;
  passed = passed && ordering;
  doc["passed"] = passed;

  emit(r, s, "verify.json", to_json_text(doc));
  emit(r, s, "margins.csv", margins_csv(reports));
  r.exit_code = passed ? kExitPass : kExitFail;
  return r;
}

}  // namespace

std::string to_string(Command command) {
  switch (command) {
    case Command::check: return "check";
    case Command::constants: return "constants";
    case Command::chains: return "chains";
    case Command::bound: return "bound";
    case Command::simulate: return "simulate";
    case Command::verify: return "verify";
  }
  return "unknown";
}

Command parse_command(const std::string& name) {
  for (Command c : kAllCommands) {
    if (to_string(c) == name) return c;
  }
  throw ConfigError("unknown command '" + name +
                    "' (expected check, constants, chains, bound, simulate or verify)");
}

CommandResult run_command(Command command, const RunConfig& cfg,
                          const CommandOverrides& overrides) {
  const Setup s = make_setup(cfg, overrides);
  switch (command) {
    case Command::check: return run_check(s);
    case Command::constants: return run_constants(s);
    case Command::chains: return run_chains(s, cfg);
    case Command::bound: return run_bound(s, cfg);
    case Command::simulate: return run_simulate(s, cfg);
    case Command::verify: return run_verify(s, cfg);
  }
  throw Error("unknown command");
}

}  // namespace lrlab
