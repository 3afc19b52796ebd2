#include "pbitsa/annealer.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "worker_team.hpp"

namespace pbitsa {
namespace {

// Below this many simultaneous updates the fork-join overhead dominates.
constexpr std::size_t kMinParallelUpdates = 2048;

}  // namespace

AnnealSchedule AnnealSchedule::geometric(double i0_min, double i0_max, int cycles, int t_res) {
  if (cycles < 2) throw std::invalid_argument("AnnealSchedule: cycles must be at least 2");
  if (!(i0_min > 0.0) || !(i0_max > i0_min)) {
    throw std::invalid_argument("AnnealSchedule: need 0 < i0_min < i0_max");
  }
  AnnealSchedule s{i0_min, i0_max, std::pow(i0_min / i0_max, 1.0 / (cycles - 1)), cycles, t_res};
  s.validate();
  return s;
}

void AnnealSchedule::validate() const {
  if (cycles < 2) throw std::invalid_argument("AnnealSchedule: cycles must be at least 2");
  if (t_res < 1) throw std::invalid_argument("AnnealSchedule: t_res must be at least 1");
  if (!(i0_min > 0.0) || !(i0_max > i0_min) || !std::isfinite(i0_max)) {
    throw std::invalid_argument("AnnealSchedule: need 0 < i0_min < i0_max");
  }
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("AnnealSchedule: beta must lie in (0, 1)");
  if (static_cast<std::uint64_t>(cycles) * static_cast<std::uint64_t>(t_res) >
      std::numeric_limits<std::uint32_t>::max()) {
    throw std::invalid_argument("AnnealSchedule: cycles * t_res exceeds the sub-step counter range");
  }
  const double last = i0_sequence().back();
  if (std::abs(last - i0_max) > 1e-9 * i0_max) {
    throw std::invalid_argument("AnnealSchedule: beta does not carry i0_min to i0_max in cycles - 1 steps");
  }
}

std::vector<double> AnnealSchedule::i0_sequence() const {
  std::vector<double> seq;
  seq.reserve(static_cast<std::size_t>(std::max(cycles, 0)));
  double i0 = i0_min;
  for (int c = 0; c < cycles; ++c) {
    seq.push_back(i0);
    if (c + 1 < cycles) i0 /= beta;
  }
  return seq;
}

std::vector<double> coupling_scales(const IsingModel& model) {
  const auto n = static_cast<double>(model.size());
  std::vector<double> scales(model.size(), 0.0);
  for (std::size_t i = 0; i < model.size(); ++i) {
    double sum = 0.0;
    double sum_sq = 0.0;
    for (const auto& nb : model.neighbors(i)) {
      sum += nb.weight;
      sum_sq += nb.weight * nb.weight;
    }
    const double mean = sum / n;
    const double variance = std::max(0.0, sum_sq / n - mean * mean);
    scales[i] = std::sqrt((n - 1.0) * variance);
  }
  return scales;
}

AnnealSchedule derive_schedule(const IsingModel& model, int cycles, int t_res) {
  if (cycles < 2) throw std::invalid_argument("derive_schedule: cycles must be at least 2");
  if (model.edges().empty()) throw std::invalid_argument("derive_schedule: model has no nonzero coupling");
  const auto scales = coupling_scales(model);
  double total = 0.0;
  for (double s : scales) total += s;
  const double mean_scale = total / static_cast<double>(scales.size());
  if (!(mean_scale > 0.0)) throw std::invalid_argument("derive_schedule: mean coupling scale is zero");
  return AnnealSchedule::geometric(0.1 / mean_scale, 10.0 / mean_scale, cycles, t_res);
}

std::string_view to_string(Algorithm kind) noexcept {
  switch (kind) {
    case Algorithm::kPsa:
      return "psa";
    case Algorithm::kTapsa:
      return "tapsa";
    case Algorithm::kSpsa:
      return "spsa";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view text) noexcept {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "psa") return Algorithm::kPsa;
  if (lower == "tapsa") return Algorithm::kTapsa;
  if (lower == "spsa") return Algorithm::kSpsa;
  return std::nullopt;
}

void AlgorithmConfig::validate() const {
  if (alpha < 1) throw std::invalid_argument("AlgorithmConfig: alpha must be at least 1");
  if (!(p_stall >= 0.0 && p_stall <= 1.0)) throw std::invalid_argument("AlgorithmConfig: p_stall must lie in [0, 1]");
}

double next_input_tapsa(std::span<const double> history, double i0) noexcept {
  if (history.empty()) return 0.0;
  double sum = 0.0;
  for (double v : history) sum += v;
  return i0 * (sum / static_cast<double>(history.size()));
}

Annealer::Annealer(const IsingModel& model, const AnnealSchedule& schedule, const AlgorithmConfig& algo,
                   VariabilityProfile profile, std::uint64_t seed, const AnnealOptions& options)
    : model_(model), schedule_(schedule), algo_(algo), profile_(std::move(profile)), rng_(seed) {
  schedule_.validate();
  algo_.validate();
  const std::size_t n = model_.size();
  if (n > std::numeric_limits<std::uint32_t>::max()) {
    throw std::invalid_argument("Annealer: node count exceeds the 32-bit index range");
  }
  profile_.validate(n);

  spins_.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    spins_[i] = (rng_.block(i, 0, StreamPurpose::kSpinInit)[0] & 1u) ? Spin{1} : Spin{-1};
  }
  inputs_.assign(n, 0.0);
  has_input_.assign(n, 0);
  if (algo_.kind == Algorithm::kTapsa) {
    window_.assign(n * static_cast<std::size_t>(algo_.alpha), 0.0);
    window_len_.assign(n, 0);
  }

  std::map<std::uint32_t, std::vector<std::uint32_t>> by_period;
  for (std::uint32_t i = 0; i < n; ++i) by_period[profile_.period[i]].push_back(i);
  for (auto& [period, nodes] : by_period) groups_.push_back({period, std::move(nodes)});

  active_.reserve(n);
  proposals_.resize(n);
  trace_.reserve(static_cast<std::size_t>(schedule_.cycles));
  i0_ = schedule_.i0_min;

  if (options.threads > 1) team_ = std::make_unique<detail::WorkerTeam>(options.threads);
}

Annealer::~Annealer() = default;

std::span<const double> Annealer::history(std::size_t i) const {
  if (i >= spins_.size()) throw std::out_of_range("Annealer::history: node out of range");
  if (algo_.kind != Algorithm::kTapsa) return {};
  return {window_.data() + i * static_cast<std::size_t>(algo_.alpha), window_len_[i]};
}

Spin Annealer::propose(std::uint32_t node, std::uint32_t count) {
  const double raw = compute_raw_input(model_, spins_, node);
  const auto block = rng_.block(node, count, StreamPurpose::kUpdate);
  const double r = to_signed_unit(block[0], block[1]);

  double input = 0.0;
  switch (algo_.kind) {
    case Algorithm::kPsa:
      input = next_input_psa(raw, i0_);
      break;
    case Algorithm::kTapsa: {
      const auto alpha = static_cast<std::size_t>(algo_.alpha);
      double* window = window_.data() + node * alpha;
      auto& len = window_len_[node];
      if (len < alpha) {
        window[len++] = raw;
      } else {
        std::move(window + 1, window + alpha, window);
        window[alpha - 1] = raw;
      }
      input = next_input_tapsa({window, len}, i0_);
      break;
    }
    case Algorithm::kSpsa: {
      // Before the first update the "previous" input is the fresh one.
      const double fresh = next_input_psa(raw, i0_);
      const double u = to_unit(block[2], block[3]);
      input = has_input_[node] ? next_input_spsa(inputs_[node], raw, i0_, u, algo_.p_stall) : fresh;
      break;
    }
  }
  inputs_[node] = input;
  has_input_[node] = 1;
  return pbit_update(input, r, profile_.lambda[node], profile_.delta[node]);
}

void Annealer::run_substep() {
  const auto count = static_cast<std::uint32_t>(substep_);
  active_.clear();
  for (const auto& group : groups_) {
    if (count % group.period == 0) active_.insert(active_.end(), group.nodes.begin(), group.nodes.end());
  }
  ++substep_;
  if (active_.empty()) return;

  // Proposals only read spins_; nothing is written back until all are done.
  if (team_ && active_.size() >= kMinParallelUpdates) {
    team_->run([&](unsigned worker) {
      const auto [begin, end] = detail::split_range(active_.size(), worker, team_->size());
      for (std::size_t k = begin; k < end; ++k) proposals_[k] = propose(active_[k], count);
    });
  } else {
    for (std::size_t k = 0; k < active_.size(); ++k) proposals_[k] = propose(active_[k], count);
  }
  for (std::size_t k = 0; k < active_.size(); ++k) spins_[active_[k]] = proposals_[k];
  updates_ += active_.size();
}

void Annealer::run_cycle() {
  if (finished()) throw std::logic_error("Annealer::run_cycle: schedule already completed");
  for (int s = 0; s < schedule_.t_res; ++s) run_substep();

  const auto [energy, cut] = evaluate(model_, spins_);
  trace_.push_back({cycle_, i0_, energy, cut});
  best_cut_ = cycle_ == 0 ? cut : std::max(best_cut_, cut);
  ++cycle_;
  if (!finished()) i0_ /= schedule_.beta;
}

TrialResult Annealer::take_result() {
  TrialResult result;
  if (!trace_.empty()) {
    result.final_energy = trace_.back().energy;
    result.final_cut = trace_.back().cut;
  } else {
    const auto ec = evaluate(model_, spins_);
    result.final_energy = ec.energy;
    result.final_cut = ec.cut;
  }
  result.best_cut = trace_.empty() ? result.final_cut : best_cut_;
  result.updates = updates_;
  result.final_state = SpinState(spins_);
  result.trace = std::move(trace_);
  trace_.clear();
  return result;
}

TrialResult run_anneal(const IsingModel& model, const AnnealSchedule& schedule, const AlgorithmConfig& algo,
                       const VariabilityProfile& profile, std::uint64_t seed, const AnnealOptions& options) {
  Annealer annealer(model, schedule, algo, profile, seed, options);
  while (!annealer.finished()) annealer.run_cycle();
  return annealer.take_result();
}

}  // namespace pbitsa
