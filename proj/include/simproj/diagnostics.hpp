#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace simproj {

enum class Severity { error, warning };

// Machine-matchable diagnostic codes. Printed with to_string() below; tests
// and CLI consumers match on the printed name.
enum class DiagCode {
    // graph construction
    duplicate_id,
    unknown_endpoint,
    self_edge,
    duplicate_edge,
    cycle_detected,
    // parsing
    syntax_error,
    unknown_symbol,
    duplicate_param,
    // structural validation
    no_start,
    multiple_starts,
    no_end,
    multiple_ends,
    interior_start_end,
    integrator_underfed,
    integrator_fanout,
    splitter_underfed,
    splitter_fanin,
    bad_degree,
    unreachable,
    misplaced_attribute,
    unit_mismatch,
    team_size_conflict,
    // lint
    missing_team,
    // unit arithmetic and estimation
    inexact_conversion,
    invalid_params,
    not_validated,
    unknown_node,
    illegal_attribute,
};

std::string to_string(DiagCode code);

// 1-based source position; line 0 means "no span available".
struct SourceSpan {
    int line = 0;
    int column = 0;

    bool known() const { return line > 0; }
    auto operator<=>(const SourceSpan&) const = default;
};

struct Diagnostic {
    Severity severity = Severity::error;
    DiagCode code = DiagCode::syntax_error;
    std::string message;
    std::vector<std::string> nodes;  // ids involved, if any
    SourceSpan span;

    bool operator==(const Diagnostic&) const = default;
};

std::string format_diagnostic(const Diagnostic& d);

// Base error for all failing operations. Carries the full diagnostic list so
// callers can report every violation, not just the first.
class PlanError : public std::runtime_error {
public:
    explicit PlanError(std::vector<Diagnostic> diags);

    const std::vector<Diagnostic>& diagnostics() const { return diags_; }

private:
    std::vector<Diagnostic> diags_;
};

class ParseError : public PlanError {
public:
    using PlanError::PlanError;
};

class GraphError : public PlanError {
public:
    using PlanError::PlanError;
};

class EstimateError : public PlanError {
public:
    using PlanError::PlanError;
};

class ConversionError : public PlanError {
public:
    using PlanError::PlanError;
};

}  // namespace simproj
