#pragma once

#include <optional>
#include <string>

#include "simproj/estimate.hpp"
#include "simproj/graph.hpp"

namespace simproj {

struct RenderOptions {
    bool show_durations = true;
    bool show_teams = true;
    bool annotate_critical_path = true;
};

// Graphviz DOT rendering. Node shapes per kind (process = box, splitter /
// integrator = triangle variants, checker = diamond, start/end = circle) with
// the text symbol in every label. With an estimate, labels carry durations
// and critical-path edges are emphasized.
std::string to_dot(const PlanGraph& graph, const std::optional<Estimate>& estimate,
                   const RenderOptions& opts = {});

// Deterministic text view: one line per topological stage, parallel members
// bracketed together, text symbols shown.
std::string to_ascii(const PlanGraph& graph);

// Compact report of the critical-path stages, e.g. "1+1+0*+1**+1*+0".
// "*" marks function-computed integration terms, "**" a collapsed parallel
// group, "0*" a promoted sub-unit stage, "0" a zero-duration gate.
std::string sum_expression(const Estimate& estimate);

}  // namespace simproj
