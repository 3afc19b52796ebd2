#include "pbitsa/gset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <string_view>
#include <system_error>

namespace pbitsa::gset {
namespace {

constexpr std::string_view kSpace = " \t\r\f\v";

/// Splits `line` on whitespace into at most `max_fields + 1` fields so that
/// trailing junk is still detected.
std::vector<std::string_view> split_fields(std::string_view line, std::size_t max_fields) {
  std::vector<std::string_view> fields;
  std::size_t pos = line.find_first_not_of(kSpace);
  while (pos != std::string_view::npos && fields.size() <= max_fields) {
    const std::size_t end = line.find_first_of(kSpace, pos);
    fields.push_back(line.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos));
    pos = end == std::string_view::npos ? end : line.find_first_not_of(kSpace, end);
  }
  return fields;
}

std::optional<std::int64_t> parse_int(std::string_view text) {
  std::int64_t value = 0;
  const char* first = text.data();
  if (!text.empty() && text.front() == '+') ++first;
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last) return std::nullopt;
  return value;
}

bool is_blank(std::string_view line) { return line.find_first_not_of(kSpace) == std::string_view::npos; }

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return in;
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

GsetFile parse_gset(std::istream& in, std::string name) {
  GsetFile file;
  file.name = std::move(name);

  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    const auto fields = split_fields(line, 3);

    if (!have_header) {
      if (fields.size() != 2) throw ParseError(line_no, "expected header \"n m\"");
      const auto n = parse_int(fields[0]);
      const auto m = parse_int(fields[1]);
      if (!n || !m) throw ParseError(line_no, "header fields must be integers");
      if (*n < 1) throw ParseError(line_no, "node count must be positive");
      if (*n > std::int64_t{std::numeric_limits<std::uint32_t>::max()}) {
        throw ParseError(line_no, "node count exceeds the 32-bit index range");
      }
      if (*m < 0) throw ParseError(line_no, "edge count must be non-negative");
      file.n = static_cast<std::size_t>(*n);
      file.m = static_cast<std::size_t>(*m);
      // A corrupt header must not trigger a huge allocation up front.
      file.edges.reserve(std::min<std::size_t>(file.m, std::size_t{1} << 20));
      have_header = true;
      continue;
    }

    if (fields.size() != 3) throw ParseError(line_no, "expected \"i j w\"");
    const auto i = parse_int(fields[0]);
    const auto j = parse_int(fields[1]);
    const auto w = parse_int(fields[2]);
    if (!i || !j || !w) throw ParseError(line_no, "edge fields must be integers");
    const auto n = static_cast<std::int64_t>(file.n);
    if (*i < 1 || *i > n || *j < 1 || *j > n) {
      throw ParseError(line_no, "endpoint out of range [1, " + std::to_string(n) + "]");
    }
    if (*i == *j) throw ParseError(line_no, "self-loop at node " + std::to_string(*i));
    if (file.edges.size() == file.m) {
      throw ParseError(line_no, "more edges than the " + std::to_string(file.m) + " declared in the header");
    }
    file.edges.push_back({*i, *j, *w});
  }

  if (!have_header) throw ParseError(0, "empty input, expected header \"n m\"");
  if (file.edges.size() != file.m) {
    throw ParseError(0, "header declares " + std::to_string(file.m) + " edges but " +
                            std::to_string(file.edges.size()) + " were found");
  }
  return file;
}

GsetFile read_gset_file(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return parse_gset(in, path.stem().string());
}

void write_gset(std::ostream& out, const GsetFile& file) {
  out << file.n << ' ' << file.m << '\n';
  for (const auto& e : file.edges) out << e.i << ' ' << e.j << ' ' << e.weight << '\n';
}

MaxCutGraph to_graph(const GsetFile& file) {
  std::vector<WeightedEdge> edges;
  edges.reserve(file.edges.size());
  for (const auto& e : file.edges) {
    edges.push_back({static_cast<std::uint32_t>(e.i - 1), static_cast<std::uint32_t>(e.j - 1), e.weight});
  }
  return MaxCutGraph(file.n, std::move(edges));
}

void BestKnownRegistry::insert(const std::string& name, std::int64_t value) {
  if (value <= 0) throw std::invalid_argument("best-known cut for " + name + " must be positive");
  if (!values_.emplace(name, value).second) throw std::invalid_argument("duplicate best-known entry " + name);
}

std::optional<std::int64_t> BestKnownRegistry::lookup(const std::string& name) const {
  const auto it = values_.find(name);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

BestKnownRegistry load_best_known(std::istream& in) {
  BestKnownRegistry registry;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    if (is_blank(view)) continue;
    const auto fields = split_fields(view, 2);
    if (fields.size() != 2) throw ParseError(line_no, "expected \"name value\"");
    const auto value = parse_int(fields[1]);
    if (!value) throw ParseError(line_no, "value is not an integer");
    try {
      registry.insert(std::string(fields[0]), *value);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return registry;
}

BestKnownRegistry load_best_known_file(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return load_best_known(in);
}

}  // namespace pbitsa::gset
