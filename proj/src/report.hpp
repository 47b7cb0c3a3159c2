#pragma once

#include "scenario.hpp"

namespace coxlink {

// Deterministic JSON report of a scenario run: byte-identical for identical
// (scenario, prime, seed).
Json make_report(const RunResult& rr);
std::string report_text(const RunResult& rr);

// One DOT digraph from several reports: nodes are models, solid edges the
// morphisms (blow-ups, contractions, fibrations), dashed edges the flips and
// flops with their type labels, plus an equality edge between endpoint models
// whose canonical data agree. Throws when two reports name the same model
// with different canonical data.
std::string diagram_dot(const std::vector<Json>& reports);

}  // namespace coxlink
