#pragma once

#include "json.hpp"
#include "lsqb/bounds.hpp"
#include "lsqb/montecarlo.hpp"

namespace lsqb {

/// JSON document printed by `lsqbound bound-n`. Inapplicable terms are null.
nlohmann::json bound_to_json(const BoundBreakdown& bound, const ProblemParams& params,
                             const Accuracy& acc);

/// JSON document printed by `lsqbound bound-eps`.
nlohmann::json outage_to_json(const OutageBreakdown& outage, const ProblemParams& params, double r,
                              std::int64_t N, BetaForm form);

nlohmann::json params_to_json(const ProblemParams& params);

nlohmann::json diagnostics_to_json(const EventDiagnostics& d);

}  // namespace lsqb
