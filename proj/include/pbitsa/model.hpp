#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace pbitsa {

using Spin = std::int8_t;

/// One undirected coupling, stored with i < j.
struct Coupling {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  double weight = 0.0;

  friend bool operator==(const Coupling&, const Coupling&) = default;
};

struct Neighbor {
  std::uint32_t node = 0;
  double weight = 0.0;
};

/// Sparse Ising instance H(s) = -sum_i h_i s_i - sum_{i<j} J_ij s_i s_j.
///
/// Couplings are canonicalized to i < j, sorted, and zero weights dropped.
/// Neighbor lists are held in CSR form so each row of J is one contiguous
/// span. Immutable after construction.
class IsingModel {
 public:
  /// Throws std::invalid_argument on n == 0, a bias vector of the wrong
  /// length, out-of-range indices, self-couplings or repeated pairs.
  /// An empty `bias` means h = 0.
  IsingModel(std::size_t n, std::vector<double> bias, std::vector<Coupling> couplings);

  [[nodiscard]] std::size_t size() const noexcept { return bias_.size(); }
  [[nodiscard]] std::span<const double> bias() const noexcept { return bias_; }
  [[nodiscard]] std::span<const Coupling> edges() const noexcept { return edges_; }
  [[nodiscard]] std::span<const Neighbor> neighbors(std::size_t i) const noexcept {
    return {adjacency_.data() + offsets_[i], adjacency_.data() + offsets_[i + 1]};
  }
  /// J_ij (0 when absent, including i == j).
  [[nodiscard]] double coupling(std::size_t i, std::size_t j) const;
  [[nodiscard]] bool has_bias() const noexcept { return has_bias_; }

 private:
  std::vector<double> bias_;
  std::vector<Coupling> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> adjacency_;
  bool has_bias_ = false;
};

/// Spin configuration with every entry in {-1, +1}.
class SpinState {
 public:
  SpinState() = default;
  /// Throws std::invalid_argument if any entry is not -1 or +1.
  explicit SpinState(std::vector<Spin> spins);

  static SpinState filled(std::size_t n, Spin value = 1);

  [[nodiscard]] std::size_t size() const noexcept { return spins_.size(); }
  [[nodiscard]] Spin operator[](std::size_t i) const noexcept { return spins_[i]; }
  [[nodiscard]] std::span<const Spin> spins() const noexcept { return spins_; }
  void set(std::size_t i, Spin value);
  [[nodiscard]] SpinState flipped() const;

  friend bool operator==(const SpinState&, const SpinState&) = default;

 private:
  std::vector<Spin> spins_;
};

struct WeightedEdge {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  std::int64_t weight = 0;

  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

/// Undirected integer-weighted graph, 0-based.
class MaxCutGraph {
 public:
  /// Throws std::invalid_argument on self-loops, repeated undirected edges or
  /// indices outside [0, n).
  MaxCutGraph(std::size_t n, std::vector<WeightedEdge> edges);

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] std::span<const WeightedEdge> edges() const noexcept { return edges_; }
  [[nodiscard]] std::int64_t total_weight() const noexcept;

 private:
  std::size_t n_;
  std::vector<WeightedEdge> edges_;
};

[[nodiscard]] double energy(const IsingModel& model, const SpinState& state);
[[nodiscard]] std::int64_t cut_value(const MaxCutGraph& graph, const SpinState& state);

/// h = 0, J_ij = -w_ij: minimizing H maximizes the cut, and
/// 2 * cut(s) == W - H(s) for every state, where W is the total weight.
[[nodiscard]] IsingModel maxcut_to_ising(const MaxCutGraph& graph);

/// Cut of the graph whose weights are -J (the inverse of maxcut_to_ising).
[[nodiscard]] double ising_cut(const IsingModel& model, const SpinState& state);

/// Energy and cut in one pass over the edges; no validation of `spins`.
struct EnergyCut {
  double energy = 0.0;
  double cut = 0.0;
};
[[nodiscard]] EnergyCut evaluate(const IsingModel& model, std::span<const Spin> spins) noexcept;

}  // namespace pbitsa
