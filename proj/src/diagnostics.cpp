#include "simproj/diagnostics.hpp"

#include <sstream>

namespace simproj {

std::string to_string(DiagCode code) {
    switch (code) {
        case DiagCode::duplicate_id: return "DuplicateId";
        case DiagCode::unknown_endpoint: return "UnknownEndpoint";
        case DiagCode::self_edge: return "SelfEdge";
        case DiagCode::duplicate_edge: return "DuplicateEdge";
        case DiagCode::cycle_detected: return "CycleDetected";
        case DiagCode::syntax_error: return "SyntaxError";
        case DiagCode::unknown_symbol: return "UnknownSymbol";
        case DiagCode::duplicate_param: return "DuplicateParam";
        case DiagCode::no_start: return "NoStart";
        case DiagCode::multiple_starts: return "MultipleStarts";
        case DiagCode::no_end: return "NoEnd";
        case DiagCode::multiple_ends: return "MultipleEnds";
        case DiagCode::interior_start_end: return "InteriorStartEnd";
        case DiagCode::integrator_underfed: return "IntegratorUnderfed";
        case DiagCode::integrator_fanout: return "IntegratorFanout";
        case DiagCode::splitter_underfed: return "SplitterUnderfed";
        case DiagCode::splitter_fanin: return "SplitterFanin";
        case DiagCode::bad_degree: return "BadDegree";
        case DiagCode::unreachable: return "Unreachable";
        case DiagCode::misplaced_attribute: return "MisplacedAttribute";
        case DiagCode::unit_mismatch: return "UnitMismatch";
        case DiagCode::team_size_conflict: return "TeamSizeConflict";
        case DiagCode::missing_team: return "MissingTeam";
        case DiagCode::inexact_conversion: return "InexactConversion";
        case DiagCode::invalid_params: return "InvalidParams";
        case DiagCode::not_validated: return "NotValidated";
        case DiagCode::unknown_node: return "UnknownNode";
        case DiagCode::illegal_attribute: return "IllegalAttribute";
    }
    return "Unknown";
}

std::string format_diagnostic(const Diagnostic& d) {
    std::ostringstream out;
    out << (d.severity == Severity::error ? "error" : "warning");
    if (d.span.known()) {
        out << " at line " << d.span.line << ":" << d.span.column;
    }
    out << " [" << to_string(d.code) << "] " << d.message;
    return out.str();
}

namespace {

std::string summarize(const std::vector<Diagnostic>& diags) {
    if (diags.empty()) {
        return "unspecified plan error";
    }
    std::string text = format_diagnostic(diags.front());
    if (diags.size() > 1) {
        text += " (+" + std::to_string(diags.size() - 1) + " more)";
    }
    return text;
}

}  // namespace

PlanError::PlanError(std::vector<Diagnostic> diags)
    : std::runtime_error(summarize(diags)), diags_(std::move(diags)) {}

}  // namespace simproj
