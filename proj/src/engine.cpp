#include "pbitsa/engine.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <utility>

#include "pbitsa/random.hpp"

namespace pbitsa {

const Problem& ProblemCatalog::add(std::string name, MaxCutGraph graph) {
  if (problems_.contains(name)) throw std::invalid_argument("graph " + name + " is already registered");
  IsingModel model = maxcut_to_ising(graph);
  auto key = name;
  auto [it, inserted] = problems_.emplace(std::move(key), Problem{std::move(name), std::move(graph), std::move(model)});
  return it->second;
}

const Problem& ProblemCatalog::add_file(const std::filesystem::path& path) {
  auto file = gset::read_gset_file(path);
  auto graph = gset::to_graph(file);
  return add(std::move(file.name), std::move(graph));
}

const Problem* ProblemCatalog::find(const std::string& name) const {
  const auto it = problems_.find(name);
  return it == problems_.end() ? nullptr : &it->second;
}

void ExperimentSpec::validate() const {
  if (trials < 1) throw std::invalid_argument("ExperimentSpec: trials must be at least 1");
  if (cycles < 2) throw std::invalid_argument("ExperimentSpec: cycles must be at least 2");
  algo.validate();
  variability.validate();
}

ExperimentSummary summarize(std::span<const TrialResult> results, std::optional<std::int64_t> best_known) {
  if (results.empty()) throw std::invalid_argument("summarize: no trial results");
  const auto count = static_cast<double>(results.size());

  ExperimentSummary summary;
  double cut_sum = 0.0;
  double energy_sum = 0.0;
  double best_sum = 0.0;
  for (const auto& r : results) {
    cut_sum += r.final_cut;
    energy_sum += r.final_energy;
    best_sum += r.best_cut;
  }
  summary.mean_cut = cut_sum / count;
  summary.mean_final_energy = energy_sum / count;
  summary.mean_best_cut = best_sum / count;

  if (results.size() > 1) {
    double squares = 0.0;
    for (const auto& r : results) {
      const double d = r.final_cut - summary.mean_cut;
      squares += d * d;
    }
    summary.std_cut = std::sqrt(squares / (count - 1.0));
  }
  if (best_known) summary.normalized_mean_cut = summary.mean_cut / static_cast<double>(*best_known);
  return summary;
}

VariabilityProfile trial_variability(const ExperimentSpec& spec, std::size_t n, int trial) {
  const std::uint64_t seed = spec.variability_mode == VariabilityMode::kFixed
                                 ? spec.base_seed
                                 : derive_trial_seed(spec.base_seed, static_cast<std::uint64_t>(trial));
  return sample_variability(spec.variability, n, RandomStream(seed));
}

ExperimentSummary run_trials(const ExperimentSpec& spec, const ProblemCatalog& catalog,
                             const gset::BestKnownRegistry* registry) {
  spec.validate();
  const Problem* problem = catalog.find(spec.graph);
  if (!problem) throw std::invalid_argument("unknown graph \"" + spec.graph + "\"");

  const auto schedule = derive_schedule(problem->model, spec.cycles, spec.variability.t_res);
  const auto trials = static_cast<unsigned>(spec.trials);
  const unsigned budget = spec.threads > 0 ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  const unsigned trial_workers = std::min(budget, trials);
  const AnnealOptions options{std::max(1u, budget / trial_workers)};

  std::vector<TrialResult> results(trials);
  std::atomic<unsigned> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  unsigned failed_trial = 0;

  auto work = [&] {
    for (unsigned k = next++; k < trials; k = next++) {
      try {
        const auto profile = trial_variability(spec, problem->model.size(), static_cast<int>(k));
        results[k] = run_anneal(problem->model, schedule, spec.algo, profile, derive_trial_seed(spec.base_seed, k),
                                options);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error || k < failed_trial) {
          first_error = std::current_exception();
          failed_trial = k;
        }
        next = trials;
      }
    }
  };

  const auto start = std::chrono::steady_clock::now();
  {
    std::vector<std::jthread> workers;
    for (unsigned w = 1; w < trial_workers; ++w) workers.emplace_back(work);
    work();
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

  if (first_error) {
    try {
      std::rethrow_exception(first_error);
    } catch (const std::exception& e) {
      throw std::runtime_error("trial " + std::to_string(failed_trial) + " on " + spec.graph + ": " + e.what());
    }
  }

  const auto best_known = registry ? registry->lookup(spec.graph) : std::nullopt;
  auto summary = summarize(results, best_known);
  summary.anneal_seconds = elapsed.count();
  summary.trials = std::move(results);
  return summary;
}

std::string_view to_string(SweepAxis axis) noexcept {
  switch (axis) {
    case SweepAxis::kSigmaLambda:
      return "sigma_lambda";
    case SweepAxis::kSigmaDelta:
      return "sigma_delta";
    case SweepAxis::kSigmaNu:
      return "sigma_nu";
  }
  return "unknown";
}

std::optional<SweepAxis> parse_sweep_axis(std::string_view text) noexcept {
  std::string key(text);
  std::replace(key.begin(), key.end(), '-', '_');
  if (key == "sigma_lambda") return SweepAxis::kSigmaLambda;
  if (key == "sigma_delta") return SweepAxis::kSigmaDelta;
  if (key == "sigma_nu") return SweepAxis::kSigmaNu;
  return std::nullopt;
}

ExperimentSpec with_axis_value(ExperimentSpec spec, SweepAxis axis, double value) {
  switch (axis) {
    case SweepAxis::kSigmaLambda:
      spec.variability.sigma_lambda = value;
      break;
    case SweepAxis::kSigmaDelta:
      spec.variability.sigma_delta = value;
      break;
    case SweepAxis::kSigmaNu:
      spec.variability.sigma_nu = value;
      break;
  }
  return spec;
}

std::vector<ExperimentSummary> sweep(const ExperimentSpec& base, SweepAxis axis, std::span<const double> values,
                                     const ProblemCatalog& catalog, const gset::BestKnownRegistry* registry) {
  if (values.empty()) throw std::invalid_argument("sweep: no axis values");
  for (double v : values) {
    if (!(v >= 0.0)) throw std::invalid_argument("sweep: axis values must be non-negative");
  }
  std::vector<ExperimentSummary> out;
  out.reserve(values.size());
  for (double v : values) out.push_back(run_trials(with_axis_value(base, axis, v), catalog, registry));
  return out;
}

}  // namespace pbitsa
