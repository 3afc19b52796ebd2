#include "pbitsa/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace pbitsa::csv {
namespace {

std::string quote_if_needed(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";  // folds -0
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  if (ec != std::errc{}) throw std::runtime_error("format_number: conversion failed");
  return {buffer, ptr};
}

std::vector<std::string> summary_columns(bool with_axis) {
  std::vector<std::string> cols{"graph",   "algo",     "sigma_lambda", "sigma_delta",         "sigma_nu",
                                "cycles",  "trials",   "seed",         "mean_cut",            "std_cut",
                                "normalized_mean_cut", "mean_final_energy", "anneal_seconds"};
  if (with_axis) {
    cols.emplace_back("axis");
    cols.emplace_back("axis_value");
  }
  return cols;
}

std::vector<std::string> summary_fields(const ExperimentSpec& spec, const ExperimentSummary& summary,
                                        std::optional<AxisValue> axis) {
  std::vector<std::string> fields{
      spec.graph,
      std::string(to_string(spec.algo.kind)),
      format_number(spec.variability.sigma_lambda),
      format_number(spec.variability.sigma_delta),
      format_number(spec.variability.sigma_nu),
      std::to_string(spec.cycles),
      std::to_string(spec.trials),
      std::to_string(spec.base_seed),
      format_number(summary.mean_cut),
      format_number(summary.std_cut),
      summary.normalized_mean_cut ? format_number(*summary.normalized_mean_cut) : std::string{},
      format_number(summary.mean_final_energy),
      format_number(summary.anneal_seconds),
  };
  if (axis) {
    fields.emplace_back(to_string(axis->axis));
    fields.push_back(format_number(axis->value));
  }
  return fields;
}

void write_row(std::ostream& out, std::span<const std::string> fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    out << quote_if_needed(fields[i]);
  }
  out << '\n';
}

void write_trace(std::ostream& out, std::span<const TrialResult> trials, bool header) {
  if (header) out << "trial,cycle,i0,energy,cut\n";
  for (std::size_t t = 0; t < trials.size(); ++t) {
    for (const auto& rec : trials[t].trace) {
      out << t << ',' << rec.cycle << ',' << format_number(rec.i0) << ',' << format_number(rec.energy) << ','
          << format_number(rec.cut) << '\n';
    }
  }
}

std::vector<std::vector<std::string>> read_rows(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char c = line[i];
      if (quoted) {
        if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
          fields.back() += '"';
          ++i;
        } else if (c == '"') {
          quoted = false;
        } else {
          fields.back() += c;
        }
      } else if (c == '"') {
        quoted = true;
      } else if (c == ',') {
        fields.emplace_back();
      } else {
        fields.back() += c;
      }
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

}  // namespace pbitsa::csv
