#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pbitsa/model.hpp"
#include "pbitsa/pbit.hpp"
#include "pbitsa/random.hpp"

namespace pbitsa {

/// Geometric ramp of the pseudo inverse temperature: I0 starts at i0_min and
/// is divided by beta after every cycle but the last, ending at i0_max.
struct AnnealSchedule {
  double i0_min = 0.0;
  double i0_max = 0.0;
  double beta = 0.0;
  int cycles = 0;
  int t_res = 10;

  /// beta = (i0_min / i0_max)^(1 / (cycles - 1)).
  static AnnealSchedule geometric(double i0_min, double i0_max, int cycles, int t_res);
  /// Throws std::invalid_argument unless 0 < i0_min < i0_max, 0 < beta < 1,
  /// cycles >= 2, t_res >= 1 and cycles * t_res fits the 32-bit step counter.
  void validate() const;
  /// I0 used during every cycle, computed by the same repeated division the
  /// annealer performs.
  [[nodiscard]] std::vector<double> i0_sequence() const;
};

/// Per-node scale s_i = sqrt((n - 1) * Var(J_i,:)) over the full length-n row
/// (zeros included, population variance).
[[nodiscard]] std::vector<double> coupling_scales(const IsingModel& model);

/// i0_min = 0.1 / mean(s), i0_max = 10 / mean(s). Throws std::invalid_argument
/// when J is all zero or cycles < 2.
[[nodiscard]] AnnealSchedule derive_schedule(const IsingModel& model, int cycles, int t_res = 10);

enum class Algorithm { kPsa, kTapsa, kSpsa };

[[nodiscard]] std::string_view to_string(Algorithm kind) noexcept;
/// Accepts "psa", "tapsa", "spsa" (case-insensitive).
[[nodiscard]] std::optional<Algorithm> parse_algorithm(std::string_view text) noexcept;

struct AlgorithmConfig {
  Algorithm kind = Algorithm::kTapsa;
  int alpha = 4;         // TApSA window length
  double p_stall = 0.5;  // SpSA stall probability

  void validate() const;
};

/// Raw p-bit input h_i + sum_j J_ij s_j over the neighbors of i.
[[nodiscard]] inline double compute_raw_input(const IsingModel& model, std::span<const Spin> spins,
                                              std::size_t i) noexcept {
  double sum = model.bias()[i];
  for (const auto& nb : model.neighbors(i)) sum += nb.weight * spins[nb.node];
  return sum;
}

[[nodiscard]] inline double next_input_psa(double raw, double i0) noexcept { return i0 * raw; }

/// i0 times the mean of the recorded raw inputs; `history` holds only the
/// updates that actually happened (never zero-padded). Empty history gives 0.
[[nodiscard]] double next_input_tapsa(std::span<const double> history, double i0) noexcept;

/// Keeps `prev_input` when u < p_stall, otherwise i0 * raw.
[[nodiscard]] inline double next_input_spsa(double prev_input, double raw, double i0, double u,
                                            double p_stall) noexcept {
  return u < p_stall ? prev_input : i0 * raw;
}

struct TraceRecord {
  int cycle = 0;
  double i0 = 0.0;
  double energy = 0.0;
  double cut = 0.0;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

struct TrialResult {
  std::vector<TraceRecord> trace;
  SpinState final_state;
  double final_energy = 0.0;
  double final_cut = 0.0;
  double best_cut = 0.0;
  std::uint64_t updates = 0;  // p-bit update events over the whole run
};

struct AnnealOptions {
  /// Workers used inside one trial; 1 keeps everything on the calling thread.
  /// The result does not depend on this value.
  unsigned threads = 1;
};

namespace detail {
class WorkerTeam;
}

/// Stepwise annealer holding the evolving state of one trial.
///
/// Spins start i.i.d. uniform from `seed`. Each cycle has t_res sub-steps;
/// at global sub-step `count` every p-bit with count % period == 0 reads the
/// spins as they were at the start of that sub-step, forms its input with the
/// configured rule and redraws its spin. Energy and cut (for the graph with
/// weights -J) are recorded after every cycle, then I0 advances.
///
/// The model must outlive the annealer.
class Annealer {
 public:
  Annealer(const IsingModel& model, const AnnealSchedule& schedule, const AlgorithmConfig& algo,
           VariabilityProfile profile, std::uint64_t seed, const AnnealOptions& options = {});
  ~Annealer();
  Annealer(const Annealer&) = delete;
  Annealer& operator=(const Annealer&) = delete;

  /// Advances one main cycle. Throws std::logic_error once finished().
  void run_cycle();
  [[nodiscard]] bool finished() const noexcept { return cycle_ == schedule_.cycles; }

  [[nodiscard]] int cycle() const noexcept { return cycle_; }
  [[nodiscard]] double i0() const noexcept { return i0_; }
  [[nodiscard]] std::uint64_t substep() const noexcept { return substep_; }
  [[nodiscard]] std::uint64_t updates() const noexcept { return updates_; }
  [[nodiscard]] std::span<const Spin> spins() const noexcept { return spins_; }
  /// Last input I_i of every p-bit (0 before its first update).
  [[nodiscard]] std::span<const double> inputs() const noexcept { return inputs_; }
  /// Raw inputs currently averaged by p-bit i, oldest first (TApSA only;
  /// empty for the other rules).
  [[nodiscard]] std::span<const double> history(std::size_t i) const;
  [[nodiscard]] std::span<const TraceRecord> trace() const noexcept { return trace_; }

  /// Moves the accumulated trace and final state out.
  [[nodiscard]] TrialResult take_result();

 private:
  struct PeriodGroup {
    std::uint32_t period;
    std::vector<std::uint32_t> nodes;
  };

  void run_substep();
  Spin propose(std::uint32_t node, std::uint32_t count);

  const IsingModel& model_;
  AnnealSchedule schedule_;
  AlgorithmConfig algo_;
  VariabilityProfile profile_;
  RandomStream rng_;
  std::unique_ptr<detail::WorkerTeam> team_;

  std::vector<Spin> spins_;
  std::vector<double> inputs_;
  std::vector<std::uint8_t> has_input_;
  std::vector<double> window_;            // n * alpha, oldest first per p-bit
  std::vector<std::uint32_t> window_len_;
  std::vector<PeriodGroup> groups_;
  std::vector<std::uint32_t> active_;
  std::vector<Spin> proposals_;

  std::vector<TraceRecord> trace_;
  double i0_ = 0.0;
  int cycle_ = 0;
  std::uint64_t substep_ = 0;
  std::uint64_t updates_ = 0;
  double best_cut_ = 0.0;
};

/// Runs a whole trial: Annealer until finished, then take_result().
[[nodiscard]] TrialResult run_anneal(const IsingModel& model, const AnnealSchedule& schedule,
                                     const AlgorithmConfig& algo, const VariabilityProfile& profile,
                                     std::uint64_t seed, const AnnealOptions& options = {});

}  // namespace pbitsa
