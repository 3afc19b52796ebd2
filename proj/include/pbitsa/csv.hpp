#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pbitsa/engine.hpp"

namespace pbitsa::csv {

/// Shortest decimal that round-trips to the same double; never depends on
/// the process locale.
[[nodiscard]] std::string format_number(double value);

/// graph,algo,sigma_lambda,sigma_delta,sigma_nu,cycles,trials,seed,mean_cut,
/// std_cut,normalized_mean_cut,mean_final_energy,anneal_seconds
/// plus axis,axis_value for sweeps.
[[nodiscard]] std::vector<std::string> summary_columns(bool with_axis);

struct AxisValue {
  SweepAxis axis;
  double value;
};

[[nodiscard]] std::vector<std::string> summary_fields(const ExperimentSpec& spec, const ExperimentSummary& summary,
                                                      std::optional<AxisValue> axis = std::nullopt);

void write_row(std::ostream& out, std::span<const std::string> fields);

/// trial,cycle,i0,energy,cut with one row per (trial, cycle).
void write_trace(std::ostream& out, std::span<const TrialResult> trials, bool header = true);

/// Comma-separated rows; double quotes group fields containing commas.
[[nodiscard]] std::vector<std::vector<std::string>> read_rows(std::istream& in);

}  // namespace pbitsa::csv
