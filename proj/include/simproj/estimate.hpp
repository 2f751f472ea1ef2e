#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "simproj/graph.hpp"
#include "simproj/params.hpp"

namespace simproj {

// ---------------------------------------------------------------------------
// Duration formulas
// ---------------------------------------------------------------------------

// Nearest integer to num/den (both nonnegative, den > 0); ties round away
// from zero. This is the single place the rounding tie rule lives.
long long round_half_away(long long num, long long den);

// Duration of one module process: Round(cycles * X / alpha), counted in the
// unit one step above X's unit. A full module of alpha cycles yields exactly
// one unit. Throws ConversionError(invalid_params) on bad inputs.
long long module_duration(long long cycles, const Duration& cycle_period, long long alpha);

// Integration duration for n incoming workstreams:
// Round(X * n*(n-1) / (2*alpha)), counted one unit above X's unit.
// Requires n >= 2.
long long integration_duration(const Duration& cycle_period, long long alpha, long long n);

// Sub-unit promotion: a raw count of zero becomes one full cycle period
// (marked promoted) — work is never free. Nonzero counts pass through in the
// module unit.
Duration promote_subunit(long long raw, const Duration& cycle_period);

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

// Structural rules, all reported together: acyclicity; exactly one start and
// one end; integrator in-degree >= 2 with out-degree 1; splitter in-degree 1
// with out-degree >= 2; process modules and checkers with in/out degree 1;
// every node on some start-to-end path; attributes only on the kinds that
// take them; consistent team sizes per label. Empty result means valid.
std::vector<Diagnostic> validate(const PlanGraph& graph);

// validate() plus unit-coherence checks that need the global params: node
// cycle periods must share the global cycle unit and divide evenly into it,
// and explicit durations must convert exactly to cycle units.
std::vector<Diagnostic> validate(const PlanGraph& graph, const EstimateParams& params);

// Non-fatal findings: process modules without a team (counted as headcount 0).
std::vector<Diagnostic> lint(const PlanGraph& graph);

// ---------------------------------------------------------------------------
// Estimates
// ---------------------------------------------------------------------------

enum class StageKind { serial, parallel_group, integration, gate };
enum class StageMark { plain, star, double_star, promoted };

std::string_view to_string(StageKind k);
std::string_view to_string(StageMark m);

// One stage of the critical path. `terms` holds the stage's contribution to
// the sum expression ("1", "1*", "1**", "0*", "0").
struct Stage {
    std::vector<std::string> nodes;  // sorted ids; >1 for a collapsed group
    StageKind kind = StageKind::serial;
    Duration duration;
    StageMark mark = StageMark::plain;
    std::vector<std::string> terms;

    bool operator==(const Stage&) const = default;
};

struct UnitCount {
    long long n = 0;
    TimeUnit unit = TimeUnit::day;

    bool operator==(const UnitCount&) const = default;
};

// Total reported as major units plus a residual of cycle units,
// e.g. 4 weeks + 1 day, with residual overflow carried into the major count
// (5 months 5 weeks reads as 6 months 1 week).
struct TotalPair {
    UnitCount major;
    UnitCount residual;

    bool operator==(const TotalPair&) const = default;
};

std::string format_total(const TotalPair& total);

struct CheckerScenario {
    std::string id;
    Duration elapsed;  // normalized to days; sunk cost if terminated here

    bool operator==(const CheckerScenario&) const = default;
};

struct Estimate {
    TotalPair total;
    long long headcount = 0;
    std::vector<Stage> stages;
    std::string sum_expression;
    std::vector<CheckerScenario> checker_scenarios;
    std::vector<std::string> critical_path;        // node ids, start to end
    std::map<std::string, Duration> node_durations;  // every node, formulas applied

    bool operator==(const Estimate&) const = default;
};

// Full plan estimate: per-node durations from the formulas above, total as
// the longest start-to-end path (parallel branches collapse to their maximum
// under the unlimited-resources assumption), headcount, stage breakdown,
// sum expression, and checker scenarios. Throws EstimateError(not_validated)
// when validation reports errors.
Estimate estimate(const PlanGraph& graph, const EstimateParams& params);

// Sum of team sizes over distinct team labels; modules sharing a label share
// the people and count once. Teamless process modules contribute zero.
long long headcount(const PlanGraph& graph);

// For every checker, the critical-path elapsed duration from start up to and
// including the checker, ordered ascending. Empty when there are no checkers.
std::vector<CheckerScenario> checker_scenarios(const PlanGraph& graph, const EstimateParams& params);

// What-if overrides for a single node.
struct AttributeChange {
    std::optional<long long> cycles;
    std::optional<Duration> cycle_period;
    std::optional<Duration> explicit_duration;
    std::optional<Team> team;

    bool operator==(const AttributeChange&) const = default;
};

using Overrides = std::map<std::string, AttributeChange>;

// Applies overrides to a copy of the graph and re-estimates; the original is
// untouched. Throws EstimateError(unknown_node) for ids not in the graph and
// EstimateError(illegal_attribute) for attributes the node's kind cannot take.
Estimate what_if(const PlanGraph& graph, const EstimateParams& params, const Overrides& overrides);

// Applies overrides only (shared by what_if and the CLI). Same error contract.
PlanGraph apply_overrides(const PlanGraph& graph, const Overrides& overrides);

// Stable JSON export: {total: {major: {n, unit}, residual: {n, unit}},
// headcount, stages: [...], sum_expression, checker_scenarios: [...]}.
// Schema in docs/estimate.schema.json.
std::string estimate_json(const Estimate& est);

}  // namespace simproj
