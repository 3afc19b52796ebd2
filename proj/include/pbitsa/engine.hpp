#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pbitsa/annealer.hpp"
#include "pbitsa/gset.hpp"
#include "pbitsa/model.hpp"
#include "pbitsa/pbit.hpp"

namespace pbitsa {

/// A named MAX-CUT instance together with its Ising form.
struct Problem {
  std::string name;
  MaxCutGraph graph;
  IsingModel model;
};

/// Graphs that experiments can refer to by name. References returned by
/// add/find stay valid for the catalog's lifetime.
class ProblemCatalog {
 public:
  /// Throws std::invalid_argument if the name is already taken.
  const Problem& add(std::string name, MaxCutGraph graph);
  /// Parses a G-set file and registers it under its file stem.
  const Problem& add_file(const std::filesystem::path& path);
  [[nodiscard]] const Problem* find(const std::string& name) const;

 private:
  std::map<std::string, Problem, std::less<>> problems_;
};

enum class VariabilityMode {
  kPerTrial,  // every trial draws its own device realization
  kFixed,     // one realization shared by all trials (debugging aid)
};

struct ExperimentSpec {
  std::string graph;
  AlgorithmConfig algo;
  VariabilityConfig variability;
  int cycles = 1000;
  int trials = 100;
  std::uint64_t base_seed = 0;
  unsigned threads = 0;  // 0 picks std::thread::hardware_concurrency()
  VariabilityMode variability_mode = VariabilityMode::kPerTrial;

  void validate() const;
};

struct ExperimentSummary {
  double mean_cut = 0.0;
  double std_cut = 0.0;  // sample (n - 1) standard deviation; 0 for one trial
  std::optional<double> normalized_mean_cut;
  double mean_final_energy = 0.0;
  double mean_best_cut = 0.0;
  double anneal_seconds = 0.0;  // wall clock of the annealing loop only
  std::vector<TrialResult> trials;
};

/// Aggregates final cuts. Throws std::invalid_argument on an empty list.
[[nodiscard]] ExperimentSummary summarize(std::span<const TrialResult> results,
                                          std::optional<std::int64_t> best_known);

/// Realization used by trial `trial` of `spec` on an n-node problem.
[[nodiscard]] VariabilityProfile trial_variability(const ExperimentSpec& spec, std::size_t n, int trial);

/// Runs spec.trials independent trials. Trial k anneals with seed
/// derive_trial_seed(base_seed, k); the outcome does not depend on
/// spec.threads. Throws std::invalid_argument for an unknown graph and
/// std::runtime_error naming the trial if one fails.
[[nodiscard]] ExperimentSummary run_trials(const ExperimentSpec& spec, const ProblemCatalog& catalog,
                                           const gset::BestKnownRegistry* registry = nullptr);

enum class SweepAxis { kSigmaLambda, kSigmaDelta, kSigmaNu };

[[nodiscard]] std::string_view to_string(SweepAxis axis) noexcept;
/// Accepts "sigma_lambda"/"sigma-lambda" and the delta/nu equivalents.
[[nodiscard]] std::optional<SweepAxis> parse_sweep_axis(std::string_view text) noexcept;
[[nodiscard]] ExperimentSpec with_axis_value(ExperimentSpec spec, SweepAxis axis, double value);

/// One run_trials per value, all sharing base_seed.
[[nodiscard]] std::vector<ExperimentSummary> sweep(const ExperimentSpec& base, SweepAxis axis,
                                                   std::span<const double> values, const ProblemCatalog& catalog,
                                                   const gset::BestKnownRegistry* registry = nullptr);

}  // namespace pbitsa
