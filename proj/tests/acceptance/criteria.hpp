#pragma once

#include <set>
#include <string>

#include "pbitsa/engine.hpp"
#include "pbitsa/gset.hpp"

namespace pbitsa::acceptance {

enum class Status { kPass, kFail, kSkip };

struct Verdict {
  Status status = Status::kSkip;
  std::string detail;
};

/// Graphs the benchmark-dependent criteria run on, keyed by benchmark name.
/// `label` prefixes every reported line (e.g. "G-set" or "surrogate").
struct Bench {
  std::string label;
  ProblemCatalog catalog;
  gset::BestKnownRegistry registry;
  std::set<std::string> available;
};

Verdict oracle_equivalence();         // 1
Verdict degeneracy();                 // 2
Verdict thread_invariance();          // 7
Verdict sampler_statistics();         // 9

Verdict ordering_without_variability(const Bench& bench);  // 3
Verdict timing_variability_helps_psa(const Bench& bench);  // 4
Verdict offset_robustness(const Bench& bench);             // 5
Verdict schedule_property(const Bench& bench);             // 6
Verdict scale_check(const Bench& bench);                   // 8

}  // namespace pbitsa::acceptance
