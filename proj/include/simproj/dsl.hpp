#pragma once

#include <map>
#include <string>

#include "simproj/graph.hpp"
#include "simproj/params.hpp"

namespace simproj {

// A parsed plan file: declared params, the graph, and a source span for every
// declared node so downstream diagnostics can cite positions.
struct PlanDocument {
    ParamsFragment params;
    PlanGraph graph;
    std::map<std::string, SourceSpan> source_spans;

    // Node span lookup; returns an unknown span for ids declared elsewhere.
    SourceSpan span_of(const std::string& id) const;
};

// Parses the line-oriented plan format:
//
//   ; comment to end of line
//   plan { x=1d alpha=5 cycles=5 }
//   <word> <symbol> <id> [x=<int><unit>] [cycles=<int>] [dur=<int><unit>] [team=<label>:<size>]
//   <id> -> <id>
//
// Symbols: # agile, * SI-mounted, { splitter, } integrator, C checker,
// @ start/end (start when in-degree 0, end when out-degree 0). Unit suffixes
// d/w/m/y. Identifiers are ASCII alphanumerics plus underscore. The word
// before the symbol is a free-form label and does not affect the kind.
//
// Throws ParseError (syntax, unknown symbol, duplicate key) or GraphError
// (structural violations) with source spans.
PlanDocument parse_plan(const std::string& text);

// Canonical serialization: full params block first, nodes in topological
// order, then edges in lexicographic (from, to) order. Reparsing the output
// reproduces the document's graph and resolved params exactly, and the
// canonical form is a byte-stable fixed point.
std::string serialize_plan(const PlanDocument& doc);

}  // namespace simproj
