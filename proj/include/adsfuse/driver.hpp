#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "adsfuse/frontend.hpp"
#include "adsfuse/fusion.hpp"

namespace adsfuse {

struct RunOptions {
  FusionEngineKind engine = FusionEngineKind::Auto;
  FusionOptions fusion;
};

struct RunOutcome {
  Verdict verdict;
  // "component" (single component), "typed", "covering" or "universal".
  std::string route;
  std::optional<FusionResult> fusion;
  FusionStats stats;
  std::uint64_t component_calls[2] = {0, 0};
};

// Decides the translation's query. A one-component document goes straight to
// its reasoner; documents using the universal role go through lift_universal.
// Throws Precondition when the engine cannot take the query (covering-term search with term
// assertions or the universal role) and ResourceError when a cap is hit.
RunOutcome run_query(const dl::Translation& tr, const RunOptions& opts = {});

}  // namespace adsfuse
