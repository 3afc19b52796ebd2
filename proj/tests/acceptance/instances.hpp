#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pbitsa/engine.hpp"
#include "pbitsa/gset.hpp"

namespace pbitsa::acceptance {

struct BenchmarkInfo {
  std::string name;
  std::size_t n;
  std::size_t m;
  bool toroidal;
  std::size_t rows;  // torus shape; 0 for random graphs
  std::size_t cols;
};

/// Graph list of the benchmark table (name, nodes, edges, structure).
const std::vector<BenchmarkInfo>& benchmark_table();

/// Locates <dir>/<name>, <name>.txt, <name>.gset or <name>.rud.
std::optional<std::filesystem::path> find_benchmark_file(const std::filesystem::path& dir, const std::string& name);

/// Synthetic graph with the same size, structure type and weight set as the
/// named benchmark. Deterministic across runs.
MaxCutGraph surrogate_graph(const BenchmarkInfo& info);

}  // namespace pbitsa::acceptance
