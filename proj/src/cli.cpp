#include "pbitsa/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "pbitsa/csv.hpp"
#include "pbitsa/engine.hpp"
#include "pbitsa/gset.hpp"

namespace pbitsa::cli {
namespace {

/// Failures in user-supplied data files (graph, registry).
struct InputDataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CliConfig {
  std::string graph_path;
  std::string registry_path;
  std::string algo = "tapsa";
  int cycles = 1000;
  int trials = 100;
  double sigma_lambda = 0.0;
  double sigma_delta = 0.0;
  double sigma_nu = 0.0;
  int t_res = 10;
  int alpha = 4;
  double p_stall = 0.5;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  bool fixed_variability = false;
  std::string trace_out;
  std::string summary_out;
  std::string axis;
  std::vector<double> values;
};

void add_experiment_options(CLI::App& cmd, CliConfig& cfg) {
  cmd.add_option("--graph", cfg.graph_path, "G-set graph file")->required();
  cmd.add_option("--registry", cfg.registry_path, "best-known cut registry (name value per line)");
  cmd.add_option("--algo", cfg.algo, "psa | tapsa | spsa")
      ->capture_default_str()
      ->check(CLI::IsMember({"psa", "tapsa", "spsa"}, CLI::ignore_case));
  cmd.add_option("--cycles", cfg.cycles, "annealing cycles")->capture_default_str()->check(CLI::Range(2, 1 << 30));
  cmd.add_option("--trials", cfg.trials, "independent trials")->capture_default_str()->check(CLI::PositiveNumber);
  cmd.add_option("--sigma-lambda", cfg.sigma_lambda, "std-dev of intensity")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  cmd.add_option("--sigma-delta", cfg.sigma_delta, "std-dev of offset")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  cmd.add_option("--sigma-nu", cfg.sigma_nu, "std-dev of timing")->capture_default_str()->check(CLI::NonNegativeNumber);
  cmd.add_option("--t-res", cfg.t_res, "sub-steps per cycle")->capture_default_str()->check(CLI::PositiveNumber);
  cmd.add_option("--alpha", cfg.alpha, "TApSA window length")->capture_default_str()->check(CLI::PositiveNumber);
  cmd.add_option("--p-stall", cfg.p_stall, "SpSA stall probability")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--seed", cfg.seed, "base seed")->capture_default_str();
  cmd.add_option("--threads", cfg.threads, "worker threads (0 = all cores)")->capture_default_str();
  cmd.add_flag("--fixed-variability", cfg.fixed_variability, "share one device realization across all trials");
  cmd.add_option("--trace-out", cfg.trace_out, "per-cycle trace CSV");
  cmd.add_option("--summary-out", cfg.summary_out, "summary CSV");
}

ExperimentSpec make_spec(const CliConfig& cfg, const std::string& graph_name) {
  ExperimentSpec spec;
  spec.graph = graph_name;
  spec.algo.kind = *parse_algorithm(cfg.algo);
  spec.algo.alpha = cfg.alpha;
  spec.algo.p_stall = cfg.p_stall;
  spec.variability = {cfg.sigma_lambda, cfg.sigma_delta, cfg.sigma_nu, cfg.t_res};
  spec.cycles = cfg.cycles;
  spec.trials = cfg.trials;
  spec.base_seed = cfg.seed;
  spec.threads = cfg.threads;
  spec.variability_mode = cfg.fixed_variability ? VariabilityMode::kFixed : VariabilityMode::kPerTrial;
  spec.validate();
  return spec;
}

const Problem& load_problem(ProblemCatalog& catalog, const std::string& path) {
  try {
    return catalog.add_file(path);
  } catch (const std::exception& e) {
    throw InputDataError(path + ": " + e.what());
  }
}

std::optional<gset::BestKnownRegistry> load_registry(const std::string& path) {
  if (path.empty()) return std::nullopt;
  try {
    return gset::load_best_known_file(path);
  } catch (const std::exception& e) {
    throw InputDataError(path + ": " + e.what());
  }
}

AnnealSchedule schedule_for(const Problem& problem, int cycles, int t_res) {
  try {
    return derive_schedule(problem.model, cycles, t_res);
  } catch (const std::invalid_argument& e) {
    throw InputDataError(problem.name + ": " + e.what());
  }
}

std::ofstream open_output(const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + path);
  return file;
}

/// Writes rows to stdout and, if requested, to the summary file.
void emit_summary(const std::vector<std::vector<std::string>>& rows, const std::string& path, std::ostream& out) {
  auto write_all = [&](std::ostream& os) {
    for (const auto& row : rows) csv::write_row(os, row);
  };
  write_all(out);
  if (!path.empty()) {
    auto file = open_output(path);
    write_all(file);
  }
}

int cmd_run(const CliConfig& cfg, std::ostream& out) {
  ProblemCatalog catalog;
  const Problem& problem = load_problem(catalog, cfg.graph_path);
  const auto registry = load_registry(cfg.registry_path);
  const auto spec = make_spec(cfg, problem.name);
  (void)schedule_for(problem, spec.cycles, spec.variability.t_res);

  const auto summary = run_trials(spec, catalog, registry ? &*registry : nullptr);
  if (!cfg.trace_out.empty()) {
    auto file = open_output(cfg.trace_out);
    csv::write_trace(file, summary.trials);
  }
  emit_summary({csv::summary_columns(false), csv::summary_fields(spec, summary)}, cfg.summary_out, out);
  return kSuccess;
}

int cmd_sweep(const CliConfig& cfg, std::ostream& out) {
  const auto axis = parse_sweep_axis(cfg.axis);
  if (!axis) throw CLI::ValidationError("--axis", "expected sigma_lambda, sigma_delta or sigma_nu");
  std::vector<double> values = cfg.values;
  std::stable_sort(values.begin(), values.end());

  ProblemCatalog catalog;
  const Problem& problem = load_problem(catalog, cfg.graph_path);
  const auto registry = load_registry(cfg.registry_path);
  const auto base = make_spec(cfg, problem.name);
  (void)schedule_for(problem, base.cycles, base.variability.t_res);

  const auto summaries = sweep(base, *axis, values, catalog, registry ? &*registry : nullptr);

  std::vector<std::vector<std::string>> rows{csv::summary_columns(true)};
  std::optional<std::ofstream> trace;
  if (!cfg.trace_out.empty()) {
    trace = open_output(cfg.trace_out);
    *trace << "axis_value,trial,cycle,i0,energy,cut\n";
  }
  for (std::size_t k = 0; k < values.size(); ++k) {
    const auto spec = with_axis_value(base, *axis, values[k]);
    rows.push_back(csv::summary_fields(spec, summaries[k], csv::AxisValue{*axis, values[k]}));
    if (trace) {
      std::ostringstream block;
      csv::write_trace(block, summaries[k].trials, false);
      std::istringstream lines(block.str());
      const auto prefix = csv::format_number(values[k]) + ",";
      for (std::string line; std::getline(lines, line);) *trace << prefix << line << '\n';
    }
  }
  emit_summary(rows, cfg.summary_out, out);
  return kSuccess;
}

int cmd_info(const std::string& graph_path, int cycles, int t_res, std::ostream& out) {
  ProblemCatalog catalog;
  const Problem& problem = load_problem(catalog, graph_path);
  std::vector<std::int64_t> weights;
  for (const auto& e : problem.graph.edges()) weights.push_back(e.weight);
  std::sort(weights.begin(), weights.end());
  weights.erase(std::unique(weights.begin(), weights.end()), weights.end());

  out << "graph: " << problem.name << '\n';
  out << "n: " << problem.graph.size() << '\n';
  out << "m: " << problem.graph.edges().size() << '\n';
  out << "weights: {";
  for (std::size_t k = 0; k < weights.size(); ++k) out << (k ? ", " : "") << weights[k];
  out << "}\n";
  out << "total_weight: " << problem.graph.total_weight() << '\n';

  const auto schedule = schedule_for(problem, cycles, t_res);
  char ratio[32];
  std::snprintf(ratio, sizeof ratio, "%.1f", schedule.i0_max / schedule.i0_min);
  out << "cycles: " << cycles << '\n';
  out << "i0_min: " << csv::format_number(schedule.i0_min) << '\n';
  out << "i0_max: " << csv::format_number(schedule.i0_max) << '\n';
  out << "beta: " << csv::format_number(schedule.beta) << '\n';
  out << "i0_ratio: " << ratio << '\n';
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"p-bit simulated annealing with device variability"};
  app.name("pbitsa");
  app.require_subcommand(1);

  CliConfig cfg;
  auto* run_cmd = app.add_subcommand("run", "run one experiment (trials on one graph)");
  add_experiment_options(*run_cmd, cfg);

  auto* sweep_cmd = app.add_subcommand("sweep", "repeat an experiment across values of one variability sigma");
  add_experiment_options(*sweep_cmd, cfg);
  sweep_cmd->add_option("--axis", cfg.axis, "sigma_lambda | sigma_delta | sigma_nu")->required();
  sweep_cmd->add_option("--values", cfg.values, "comma-separated sigma values")
      ->required()
      ->delimiter(',')
      ->check(CLI::NonNegativeNumber);

  std::string info_graph;
  int info_cycles = 1000;
  int info_t_res = 10;
  auto* info_cmd = app.add_subcommand("info", "print graph statistics and the derived schedule");
  info_cmd->add_option("--graph", info_graph, "G-set graph file")->required();
  info_cmd->add_option("--cycles", info_cycles, "annealing cycles")->capture_default_str()->check(CLI::Range(2, 1 << 30));
  info_cmd->add_option("--t-res", info_t_res, "sub-steps per cycle")->capture_default_str()->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (*run_cmd) return cmd_run(cfg, out);
    if (*sweep_cmd) return cmd_sweep(cfg, out);
    return cmd_info(info_graph, info_cycles, info_t_res, out);
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const InputDataError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputDataError;
  } catch (const std::invalid_argument& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace pbitsa::cli
