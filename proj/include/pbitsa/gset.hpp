#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pbitsa/model.hpp"

namespace pbitsa::gset {

/// Edge exactly as stored on disk (1-based endpoints).
struct FileEdge {
  std::int64_t i = 0;
  std::int64_t j = 0;
  std::int64_t weight = 0;

  friend bool operator==(const FileEdge&, const FileEdge&) = default;
};

struct GsetFile {
  std::string name;
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<FileEdge> edges;
};

/// Malformed input. `line()` is 1-based; 0 when the problem is not tied to a
/// single line (e.g. the file ended early).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message);
  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Reads "n m" followed by m lines "i j w". Blank lines are ignored.
/// Indices stay 1-based; see to_graph for the 0-based view.
[[nodiscard]] GsetFile parse_gset(std::istream& in, std::string name = {});
/// Opens `path` and names the result after the file stem. Throws
/// std::runtime_error if the file cannot be opened.
[[nodiscard]] GsetFile read_gset_file(const std::filesystem::path& path);
/// Inverse of parse_gset.
void write_gset(std::ostream& out, const GsetFile& file);

/// 1-based file edges to a 0-based MaxCutGraph. Throws std::invalid_argument
/// on repeated edges.
[[nodiscard]] MaxCutGraph to_graph(const GsetFile& file);

/// Best-known cut per graph name.
class BestKnownRegistry {
 public:
  /// Throws std::invalid_argument on a repeated name or a value <= 0.
  void insert(const std::string& name, std::int64_t value);
  [[nodiscard]] std::optional<std::int64_t> lookup(const std::string& name) const;
  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] const std::map<std::string, std::int64_t>& entries() const noexcept { return values_; }

 private:
  std::map<std::string, std::int64_t> values_;
};

/// Lines "name value"; '#' starts a comment; blank lines allowed.
[[nodiscard]] BestKnownRegistry load_best_known(std::istream& in);
[[nodiscard]] BestKnownRegistry load_best_known_file(const std::filesystem::path& path);

}  // namespace pbitsa::gset
