#include "pbitsa/model.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

namespace pbitsa {
namespace {

void require_same_size(std::size_t expected, std::size_t actual, const char* what) {
  if (expected != actual) {
    throw std::invalid_argument(std::string(what) + ": state has " + std::to_string(actual) +
                                " spins, expected " + std::to_string(expected));
  }
}

std::string pair_text(std::uint32_t i, std::uint32_t j) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

}  // namespace

IsingModel::IsingModel(std::size_t n, std::vector<double> bias, std::vector<Coupling> couplings)
    : bias_(std::move(bias)) {
  if (n == 0) throw std::invalid_argument("IsingModel: n must be at least 1");
  if (bias_.empty()) bias_.assign(n, 0.0);
  if (bias_.size() != n) {
    throw std::invalid_argument("IsingModel: bias has " + std::to_string(bias_.size()) +
                                " entries, expected " + std::to_string(n));
  }
  has_bias_ = std::any_of(bias_.begin(), bias_.end(), [](double h) { return h != 0.0; });

  edges_.reserve(couplings.size());
  for (auto c : couplings) {
    if (c.i >= n || c.j >= n) {
      throw std::invalid_argument("IsingModel: coupling " + pair_text(c.i, c.j) +
                                  " out of range for n = " + std::to_string(n));
    }
    if (c.i == c.j) throw std::invalid_argument("IsingModel: self-coupling at " + pair_text(c.i, c.j));
    if (c.i > c.j) std::swap(c.i, c.j);
    if (c.weight != 0.0) edges_.push_back(c);
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Coupling& a, const Coupling& b) { return std::pair(a.i, a.j) < std::pair(b.i, b.j); });
  auto dup = std::adjacent_find(edges_.begin(), edges_.end(), [](const Coupling& a, const Coupling& b) {
    return a.i == b.i && a.j == b.j;
  });
  if (dup != edges_.end()) throw std::invalid_argument("IsingModel: repeated coupling " + pair_text(dup->i, dup->j));

  offsets_.assign(n + 1, 0);
  for (const auto& c : edges_) {
    ++offsets_[c.i + 1];
    ++offsets_[c.j + 1];
  }
  for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
  adjacency_.resize(offsets_[n]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& c : edges_) adjacency_[fill[c.j]++] = {c.i, c.weight};
  for (const auto& c : edges_) adjacency_[fill[c.i]++] = {c.j, c.weight};
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(adjacency_.begin() + offsets_[i], adjacency_.begin() + offsets_[i + 1],
              [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
  }
}

double IsingModel::coupling(std::size_t i, std::size_t j) const {
  if (i >= size() || j >= size()) throw std::out_of_range("IsingModel::coupling: index out of range");
  auto row = neighbors(i);
  auto it = std::lower_bound(row.begin(), row.end(), j,
                             [](const Neighbor& nb, std::size_t node) { return nb.node < node; });
  return (it != row.end() && it->node == j) ? it->weight : 0.0;
}

SpinState::SpinState(std::vector<Spin> spins) : spins_(std::move(spins)) {
  for (std::size_t i = 0; i < spins_.size(); ++i) {
    if (spins_[i] != 1 && spins_[i] != -1) {
      throw std::invalid_argument("SpinState: entry " + std::to_string(i) + " is " +
                                  std::to_string(int{spins_[i]}) + ", expected -1 or +1");
    }
  }
}

SpinState SpinState::filled(std::size_t n, Spin value) { return SpinState(std::vector<Spin>(n, value)); }

void SpinState::set(std::size_t i, Spin value) {
  if (value != 1 && value != -1) throw std::invalid_argument("SpinState::set: spin must be -1 or +1");
  spins_.at(i) = value;
}

SpinState SpinState::flipped() const {
  SpinState out = *this;
  for (auto& s : out.spins_) s = static_cast<Spin>(-s);
  return out;
}

MaxCutGraph::MaxCutGraph(std::size_t n, std::vector<WeightedEdge> edges) : n_(n), edges_(std::move(edges)) {
  if (n_ == 0) throw std::invalid_argument("MaxCutGraph: n must be at least 1");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> keys;
  keys.reserve(edges_.size());
  for (const auto& e : edges_) {
    if (e.i >= n_ || e.j >= n_) {
      throw std::invalid_argument("MaxCutGraph: edge " + pair_text(e.i, e.j) + " out of range for n = " +
                                  std::to_string(n_));
    }
    if (e.i == e.j) throw std::invalid_argument("MaxCutGraph: self-loop at node " + std::to_string(e.i));
    keys.emplace_back(std::min(e.i, e.j), std::max(e.i, e.j));
  }
  std::sort(keys.begin(), keys.end());
  auto dup = std::adjacent_find(keys.begin(), keys.end());
  if (dup != keys.end()) throw std::invalid_argument("MaxCutGraph: repeated edge " + pair_text(dup->first, dup->second));
}

std::int64_t MaxCutGraph::total_weight() const noexcept {
  std::int64_t total = 0;
  for (const auto& e : edges_) total += e.weight;
  return total;
}

EnergyCut evaluate(const IsingModel& model, std::span<const Spin> spins) noexcept {
  double field = 0.0;
  if (model.has_bias()) {
    auto h = model.bias();
    for (std::size_t i = 0; i < h.size(); ++i) field += h[i] * spins[i];
  }
  double aligned = 0.0;  // sum J_ij s_i s_j
  double total = 0.0;    // sum J_ij
  for (const auto& c : model.edges()) {
    aligned += c.weight * (spins[c.i] * spins[c.j]);
    total += c.weight;
  }
  return {-field - aligned, 0.5 * (aligned - total)};
}

double energy(const IsingModel& model, const SpinState& state) {
  require_same_size(model.size(), state.size(), "energy");
  return evaluate(model, state.spins()).energy;
}

double ising_cut(const IsingModel& model, const SpinState& state) {
  require_same_size(model.size(), state.size(), "ising_cut");
  return evaluate(model, state.spins()).cut;
}

std::int64_t cut_value(const MaxCutGraph& graph, const SpinState& state) {
  require_same_size(graph.size(), state.size(), "cut_value");
  std::int64_t cut = 0;
  for (const auto& e : graph.edges()) {
    if (state[e.i] != state[e.j]) cut += e.weight;
  }
  return cut;
}

IsingModel maxcut_to_ising(const MaxCutGraph& graph) {
  std::vector<Coupling> couplings;
  couplings.reserve(graph.edges().size());
  for (const auto& e : graph.edges()) {
    couplings.push_back({e.i, e.j, -static_cast<double>(e.weight)});
  }
  return IsingModel(graph.size(), {}, std::move(couplings));
}

}  // namespace pbitsa
