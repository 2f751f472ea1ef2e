#include "simproj/estimate.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "json.hpp"

namespace simproj {

// ---------------------------------------------------------------------------
// Duration formulas
// ---------------------------------------------------------------------------

long long round_half_away(long long num, long long den) {
    if (num < 0 || den <= 0) {
        throw ConversionError({{Severity::error, DiagCode::invalid_params,
                                "rounding requires a nonnegative numerator and positive denominator",
                                {},
                                {}}});
    }
    return (2 * num + den) / (2 * den);
}

namespace {

void require_formula_inputs(const Duration& cycle_period, long long alpha) {
    if (cycle_period.magnitude < 1 || alpha < 1) {
        throw ConversionError({{Severity::error, DiagCode::invalid_params,
                                "duration formulas require a positive cycle period and alpha",
                                {},
                                {}}});
    }
}

}  // namespace

long long module_duration(long long cycles, const Duration& cycle_period, long long alpha) {
    require_formula_inputs(cycle_period, alpha);
    if (cycles < 1) {
        throw ConversionError({{Severity::error, DiagCode::invalid_params,
                                "module duration requires at least one cycle",
                                {},
                                {}}});
    }
    return round_half_away(cycles * cycle_period.magnitude, alpha);
}

long long integration_duration(const Duration& cycle_period, long long alpha, long long n) {
    require_formula_inputs(cycle_period, alpha);
    if (n < 2) {
        throw ConversionError({{Severity::error, DiagCode::invalid_params,
                                "integration requires at least two incoming workstreams",
                                {},
                                {}}});
    }
    return round_half_away(cycle_period.magnitude * n * (n - 1), 2 * alpha);
}

Duration promote_subunit(long long raw, const Duration& cycle_period) {
    if (raw == 0) {
        return Duration{cycle_period.magnitude, cycle_period.unit, true};
    }
    return Duration{raw, unit_above(cycle_period.unit), false};
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

namespace {

void push(std::vector<Diagnostic>& out, DiagCode code, std::string message,
          std::vector<std::string> nodes = {}, Severity severity = Severity::error) {
    out.push_back({severity, code, std::move(message), std::move(nodes), {}});
}

std::string kind_label(ModuleKind k) {
    switch (k) {
        case ModuleKind::agile: return "agile module";
        case ModuleKind::si_mounted: return "SI-mounted module";
        case ModuleKind::integrator: return "integrator";
        case ModuleKind::splitter: return "splitter";
        case ModuleKind::checker: return "checker";
        case ModuleKind::start: return "start";
        case ModuleKind::end: return "end";
    }
    return "module";
}

void check_terminals(const PlanGraph& graph, std::vector<Diagnostic>& out) {
    std::vector<std::string> starts;
    std::vector<std::string> ends;
    for (const auto& [id, node] : graph.nodes) {
        if (node.kind == ModuleKind::start) {
            starts.push_back(id);
        } else if (node.kind == ModuleKind::end) {
            ends.push_back(id);
        }
    }
    if (starts.empty()) {
        push(out, DiagCode::no_start, "plan has no start node");
    } else if (starts.size() > 1) {
        push(out, DiagCode::multiple_starts,
             "plan has " + std::to_string(starts.size()) + " start nodes", starts);
    }
    if (ends.empty()) {
        push(out, DiagCode::no_end, "plan has no end node");
    } else if (ends.size() > 1) {
        push(out, DiagCode::multiple_ends,
             "plan has " + std::to_string(ends.size()) + " end nodes", ends);
    }
    for (const auto& id : starts) {
        if (graph.in_degree(id) > 0) {
            push(out, DiagCode::interior_start_end,
                 "start node '" + id + "' has incoming edges", {id});
        }
    }
    for (const auto& id : ends) {
        if (graph.out_degree(id) > 0) {
            push(out, DiagCode::interior_start_end,
                 "end node '" + id + "' has outgoing edges", {id});
        }
    }
}

void check_degrees(const PlanGraph& graph, std::vector<Diagnostic>& out) {
    for (const auto& [id, node] : graph.nodes) {
        const long long in = graph.in_degree(id);
        const long long outd = graph.out_degree(id);
        switch (node.kind) {
            case ModuleKind::integrator:
                if (in < 2) {
                    push(out, DiagCode::integrator_underfed,
                         "integrator '" + id + "' merges " + std::to_string(in) +
                             " workstream(s); needs at least 2", {id});
                }
                if (outd != 1) {
                    push(out, DiagCode::integrator_fanout,
                         "integrator '" + id + "' must have exactly one outgoing edge (has " +
                             std::to_string(outd) + ")", {id});
                }
                break;
            case ModuleKind::splitter:
                if (outd < 2) {
                    push(out, DiagCode::splitter_underfed,
                         "splitter '" + id + "' fans out to " + std::to_string(outd) +
                             " workstream(s); needs at least 2", {id});
                }
                if (in != 1) {
                    push(out, DiagCode::splitter_fanin,
                         "splitter '" + id + "' must have exactly one incoming edge (has " +
                             std::to_string(in) + ")", {id});
                }
                break;
            case ModuleKind::agile:
            case ModuleKind::si_mounted:
            case ModuleKind::checker:
                if (in != 1 || outd != 1) {
                    push(out, DiagCode::bad_degree,
                         kind_label(node.kind) + " '" + id +
                             "' must have exactly one incoming and one outgoing edge (has " +
                             std::to_string(in) + " in, " + std::to_string(outd) + " out)",
                         {id});
                }
                break;
            case ModuleKind::start:
            case ModuleKind::end:
                break;  // covered by terminal and reachability checks
        }
    }
}

std::set<std::string> reach(const PlanGraph& graph, const std::string& from, bool forward) {
    std::set<std::string> seen{from};
    std::deque<std::string> queue{from};
    while (!queue.empty()) {
        const std::string id = queue.front();
        queue.pop_front();
        for (const auto& next : forward ? graph.successors(id) : graph.predecessors(id)) {
            if (seen.insert(next).second) {
                queue.push_back(next);
            }
        }
    }
    return seen;
}

void check_reachability(const PlanGraph& graph, std::vector<Diagnostic>& out) {
    std::string start, end;
    for (const auto& [id, node] : graph.nodes) {
        if (node.kind == ModuleKind::start) {
            start = start.empty() ? id : start;
        } else if (node.kind == ModuleKind::end) {
            end = end.empty() ? id : end;
        }
    }
    if (start.empty() || end.empty()) {
        return;  // terminal checks already reported the plan as broken
    }
    const auto from_start = reach(graph, start, true);
    const auto to_end = reach(graph, end, false);
    for (const auto& [id, node] : graph.nodes) {
        if (!from_start.count(id) || !to_end.count(id)) {
            push(out, DiagCode::unreachable,
                 "node '" + id + "' is not on any start-to-end path", {id});
        }
    }
}

void check_attributes(const PlanGraph& graph, std::vector<Diagnostic>& out) {
    for (const auto& [id, node] : graph.nodes) {
        const bool process = is_process(node.kind);
        if (node.cycles && !process) {
            push(out, DiagCode::misplaced_attribute,
                 "cycles has no effect on a " + kind_label(node.kind) + " ('" + id + "')", {id});
        }
        if (node.team && !process) {
            push(out, DiagCode::misplaced_attribute,
                 "team has no effect on a " + kind_label(node.kind) + " ('" + id + "')", {id});
        }
        if (node.explicit_duration &&
            node.kind != ModuleKind::splitter && node.kind != ModuleKind::checker) {
            push(out, DiagCode::misplaced_attribute,
                 "dur has no effect on a " + kind_label(node.kind) + " ('" + id + "')", {id});
        }
        if (node.cycle_period && !process && node.kind != ModuleKind::integrator) {
            push(out, DiagCode::misplaced_attribute,
                 "x has no effect on a " + kind_label(node.kind) + " ('" + id + "')", {id});
        }
    }

    std::map<std::string, std::map<long long, std::vector<std::string>>> by_label;
    for (const auto& [id, node] : graph.nodes) {
        if (node.team) {
            by_label[node.team->label][node.team->size].push_back(id);
        }
    }
    for (const auto& [label, sizes] : by_label) {
        if (sizes.size() > 1) {
            std::vector<std::string> ids;
            std::ostringstream msg;
            msg << "team '" << label << "' declared with conflicting sizes:";
            for (const auto& [size, members] : sizes) {
                msg << " " << size;
                ids.insert(ids.end(), members.begin(), members.end());
            }
            std::sort(ids.begin(), ids.end());
            push(out, DiagCode::team_size_conflict, msg.str(), std::move(ids));
        }
    }
}

}  // namespace

std::vector<Diagnostic> validate(const PlanGraph& graph) {
    std::vector<Diagnostic> out;
    check_terminals(graph, out);
    try {
        topological_order(graph);
    } catch (const GraphError& err) {
        out.insert(out.end(), err.diagnostics().begin(), err.diagnostics().end());
    }
    check_degrees(graph, out);
    check_reachability(graph, out);
    check_attributes(graph, out);
    return out;
}

std::vector<Diagnostic> validate(const PlanGraph& graph, const EstimateParams& params) {
    std::vector<Diagnostic> out = validate(graph);
    const TimeUnit u = params.default_cycle_period.unit;
    const long long g = params.default_cycle_period.magnitude;
    const long long unit_days = params.calendar.days_per(u);
    const long long per =
        u == TimeUnit::year ? 1 : params.calendar.ratio(u, unit_above(u));

    for (const auto& [id, node] : graph.nodes) {
        if (node.cycle_period) {
            if (node.cycle_period->magnitude < 1) {
                push(out, DiagCode::invalid_params,
                     "cycle period on '" + id + "' must be positive", {id});
            } else if (node.cycle_period->unit != u) {
                push(out, DiagCode::unit_mismatch,
                     "cycle period " + format_compact(*node.cycle_period) + " on '" + id +
                         "' must use the plan cycle unit (" + std::string(unit_name(u)) + ")",
                     {id});
            } else if (node.cycle_period->magnitude % g != 0) {
                push(out, DiagCode::unit_mismatch,
                     "cycle period " + format_compact(*node.cycle_period) + " on '" + id +
                         "' must be a multiple of the plan cycle period (" +
                         format_compact(params.default_cycle_period) + ")", {id});
            }
        }
        if (node.explicit_duration && node.explicit_duration->magnitude > 0) {
            const long long d = normalize_to_days(*node.explicit_duration, params.calendar);
            if (d % unit_days != 0) {
                push(out, DiagCode::unit_mismatch,
                     "duration " + format_compact(*node.explicit_duration) + " on '" + id +
                         "' is not a whole number of " + std::string(unit_name(u)) + "s", {id});
            } else if ((d / unit_days % per) % g != 0) {
                push(out, DiagCode::unit_mismatch,
                     "duration " + format_compact(*node.explicit_duration) + " on '" + id +
                         "' does not break into whole cycle periods (" +
                         format_compact(params.default_cycle_period) + ")", {id});
            }
        }
    }
    return out;
}

std::vector<Diagnostic> lint(const PlanGraph& graph) {
    std::vector<Diagnostic> out;
    for (const auto& [id, node] : graph.nodes) {
        if (is_process(node.kind) && !node.team) {
            push(out, DiagCode::missing_team,
                 kind_label(node.kind) + " '" + id + "' has no team; counted as zero headcount",
                 {id}, Severity::warning);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Estimates
// ---------------------------------------------------------------------------

std::string_view to_string(StageKind k) {
    switch (k) {
        case StageKind::serial: return "serial";
        case StageKind::parallel_group: return "parallel_group";
        case StageKind::integration: return "integration";
        case StageKind::gate: return "gate";
    }
    return "serial";
}

std::string_view to_string(StageMark m) {
    switch (m) {
        case StageMark::plain: return "plain";
        case StageMark::star: return "star";
        case StageMark::double_star: return "double_star";
        case StageMark::promoted: return "promoted";
    }
    return "plain";
}

namespace {

std::string plural_unit(long long n, TimeUnit u) {
    std::string s(unit_name(u));
    if (n != 1) {
        s += "s";
    }
    return s;
}

// Shared estimation state: one pass computes durations, the longest-path
// table, and the critical path; the public functions pick what they need.
struct Engine {
    const PlanGraph& graph;
    const EstimateParams& params;
    std::string start_id, end_id;
    std::map<std::string, Duration> durations;
    std::map<std::string, long long> day_len;
    std::map<std::string, long long> dist;       // longest start-to-node, days
    std::map<std::string, std::string> best_pred;
    std::vector<std::string> path;               // start to end

    Engine(const PlanGraph& g, const EstimateParams& p) : graph(g), params(p) {
        gate_on_validation();
        compute_durations();
        longest_paths();
        backtrack();
    }

    void gate_on_validation() {
        auto diags = validate(graph, params);
        if (!diags.empty()) {
            std::vector<Diagnostic> out;
            out.push_back({Severity::error, DiagCode::not_validated,
                           "plan failed validation with " + std::to_string(diags.size()) +
                               " finding(s); fix these before estimating",
                           {},
                           {}});
            out.insert(out.end(), diags.begin(), diags.end());
            throw EstimateError(std::move(out));
        }
        for (const auto& [id, node] : graph.nodes) {
            if (node.kind == ModuleKind::start) {
                start_id = id;
            } else if (node.kind == ModuleKind::end) {
                end_id = id;
            }
        }
    }

    Duration cycle_period_of(const PlanNode& node) const {
        return node.cycle_period.value_or(params.default_cycle_period);
    }

    void compute_durations() {
        for (const auto& [id, node] : graph.nodes) {
            Duration d{0, params.default_cycle_period.unit, false};
            switch (node.kind) {
                case ModuleKind::agile:
                case ModuleKind::si_mounted: {
                    const Duration x = cycle_period_of(node);
                    const long long cycles = node.cycles.value_or(params.default_cycles);
                    d = promote_subunit(module_duration(cycles, x, params.alpha), x);
                    break;
                }
                case ModuleKind::integrator: {
                    const Duration x = cycle_period_of(node);
                    const long long n = graph.in_degree(id);
                    d = promote_subunit(integration_duration(x, params.alpha, n), x);
                    break;
                }
                case ModuleKind::splitter:
                case ModuleKind::checker:
                    if (node.explicit_duration) {
                        d = *node.explicit_duration;
                    }
                    break;
                case ModuleKind::start:
                case ModuleKind::end:
                    break;
            }
            durations.emplace(id, d);
            day_len.emplace(id, normalize_to_days(d, params.calendar));
        }
    }

    void longest_paths() {
        for (const auto& id : topological_order(graph)) {
            long long best = 0;
            std::string pred;
            // predecessors() is sorted, so with a strict > the first maximum
            // wins and ties resolve to the lexicographically smallest id
            for (const auto& p : graph.predecessors(id)) {
                if (pred.empty() || dist.at(p) > best) {
                    best = dist.at(p);
                    pred = p;
                }
            }
            dist[id] = best + day_len.at(id);
            if (!pred.empty()) {
                best_pred[id] = pred;
            }
        }
    }

    void backtrack() {
        std::string cursor = end_id;
        path.push_back(cursor);
        while (cursor != start_id) {
            cursor = best_pred.at(cursor);
            path.push_back(cursor);
        }
        std::reverse(path.begin(), path.end());
    }

    // True when the path runs splitter -> node -> integrator and at least one
    // sibling single-node branch matches the node's duration; fills `members`.
    bool parallel_members(size_t i, std::vector<std::string>& members) const {
        const std::string& id = path[i];
        if (!is_process(graph.node(id).kind) || i == 0 || i + 1 >= path.size()) {
            return false;
        }
        const std::string& before = path[i - 1];
        const std::string& after = path[i + 1];
        if (graph.node(before).kind != ModuleKind::splitter ||
            graph.node(after).kind != ModuleKind::integrator) {
            return false;
        }
        for (const auto& sibling : graph.successors(before)) {
            if (is_process(graph.node(sibling).kind) &&
                graph.edges.count({sibling, after}) > 0 &&
                day_len.at(sibling) == day_len.at(id)) {
                members.push_back(sibling);
            }
        }
        return members.size() >= 2;
    }

    // A promoted duration is the owning node's cycle period, which unit
    // coherence pins to a whole number of global cycle periods; printing one
    // 0* per period keeps the sum expression re-evaluable on its own.
    std::vector<std::string> promoted_terms(const Duration& d, const char* suffix) const {
        const long long period_days =
            params.default_cycle_period.magnitude *
            params.calendar.days_per(params.default_cycle_period.unit);
        const long long chunks = normalize_to_days(d, params.calendar) / period_days;
        return std::vector<std::string>(static_cast<size_t>(chunks),
                                        std::string("0*") + suffix);
    }

    // Terms for an explicit (gate) duration: whole units one step above the
    // cycle unit print as a count; leftover cycle periods print as 0* each.
    std::vector<std::string> gate_terms(const Duration& d) const {
        if (d.is_zero()) {
            return {"0"};
        }
        const TimeUnit u = params.default_cycle_period.unit;
        const long long g = params.default_cycle_period.magnitude;
        const long long per =
            u == TimeUnit::year ? 1 : params.calendar.ratio(u, unit_above(u));
        const long long c = normalize_to_days(d, params.calendar) / params.calendar.days_per(u);
        std::vector<std::string> terms;
        if (c / per > 0) {
            terms.push_back(std::to_string(c / per));
        }
        for (long long k = 0; k < c % per / g; ++k) {
            terms.push_back("0*");
        }
        return terms;
    }

    std::vector<Stage> stages() const {
        std::vector<Stage> out;
        for (size_t i = 0; i + 1 < path.size(); ++i) {
            if (i == 0) {
                continue;  // skip the start node; the loop bound skips the end
            }
            const std::string& id = path[i];
            const PlanNode& node = graph.node(id);
            const Duration& d = durations.at(id);
            Stage stage;
            stage.nodes = {id};
            stage.duration = d;
            switch (node.kind) {
                case ModuleKind::agile:
                case ModuleKind::si_mounted: {
                    std::vector<std::string> members;
                    if (parallel_members(i, members)) {
                        stage.kind = StageKind::parallel_group;
                        stage.nodes = members;
                        stage.mark = StageMark::double_star;
                        stage.terms = d.promoted
                                          ? promoted_terms(d, "**")
                                          : std::vector<std::string>{
                                                std::to_string(d.magnitude) + "**"};
                    } else {
                        stage.kind = StageKind::serial;
                        stage.mark = d.promoted ? StageMark::promoted : StageMark::plain;
                        stage.terms = d.promoted
                                          ? promoted_terms(d, "")
                                          : std::vector<std::string>{
                                                std::to_string(d.magnitude)};
                    }
                    break;
                }
                case ModuleKind::integrator:
                    stage.kind = StageKind::integration;
                    stage.mark = d.promoted ? StageMark::promoted : StageMark::star;
                    stage.terms = d.promoted ? promoted_terms(d, "")
                                             : std::vector<std::string>{
                                                   std::to_string(d.magnitude) + "*"};
                    break;
                case ModuleKind::splitter:
                    if (d.is_zero()) {
                        continue;  // free fan-out: no stage, no term
                    }
                    stage.kind = StageKind::gate;
                    stage.terms = gate_terms(d);
                    stage.mark = std::count(stage.terms.begin(), stage.terms.end(), "0*") > 0
                                     ? StageMark::promoted
                                     : StageMark::plain;
                    break;
                case ModuleKind::checker:
                    stage.kind = StageKind::gate;
                    stage.terms = gate_terms(d);
                    stage.mark = std::count(stage.terms.begin(), stage.terms.end(), "0*") > 0
                                     ? StageMark::promoted
                                     : StageMark::plain;
                    break;
                case ModuleKind::start:
                case ModuleKind::end:
                    continue;
            }
            out.push_back(std::move(stage));
        }
        return out;
    }

    TotalPair total() const {
        const TimeUnit u = params.default_cycle_period.unit;
        const long long total_days = dist.at(end_id);
        const long long unit_days = params.calendar.days_per(u);
        if (total_days % unit_days != 0) {
            throw ConversionError({{Severity::error, DiagCode::inexact_conversion,
                                    "total of " + std::to_string(total_days) +
                                        " day(s) is not a whole number of " +
                                        std::string(unit_name(u)) + "s",
                                    {},
                                    {}}});
        }
        const long long c = total_days / unit_days;
        if (u == TimeUnit::year) {
            return {{c, u}, {0, u}};
        }
        const TimeUnit major = unit_above(u);
        const long long per = params.calendar.ratio(u, major);
        return {{c / per, major}, {c % per, u}};
    }

    std::vector<CheckerScenario> scenarios() const {
        std::vector<CheckerScenario> out;
        for (const auto& [id, node] : graph.nodes) {
            if (node.kind == ModuleKind::checker) {
                out.push_back({id, days(dist.at(id))});
            }
        }
        std::sort(out.begin(), out.end(), [](const CheckerScenario& a, const CheckerScenario& b) {
            return a.elapsed.magnitude != b.elapsed.magnitude
                       ? a.elapsed.magnitude < b.elapsed.magnitude
                       : a.id < b.id;
        });
        return out;
    }
};

}  // namespace

std::string format_total(const TotalPair& total) {
    std::ostringstream out;
    if (total.major.n > 0) {
        out << total.major.n << " " << plural_unit(total.major.n, total.major.unit);
    }
    if (total.residual.n > 0) {
        if (total.major.n > 0) {
            out << " ";
        }
        out << total.residual.n << " " << plural_unit(total.residual.n, total.residual.unit);
    }
    if (total.major.n == 0 && total.residual.n == 0) {
        out << "0 " << plural_unit(0, total.residual.unit);
    }
    return out.str();
}

Estimate estimate(const PlanGraph& graph, const EstimateParams& params) {
    Engine engine(graph, params);
    Estimate est;
    est.total = engine.total();
    est.headcount = headcount(graph);
    est.stages = engine.stages();
    est.checker_scenarios = engine.scenarios();
    est.critical_path = engine.path;
    est.node_durations = engine.durations;

    std::ostringstream sum;
    bool first = true;
    for (const auto& stage : est.stages) {
        for (const auto& term : stage.terms) {
            sum << (first ? "" : "+") << term;
            first = false;
        }
    }
    est.sum_expression = first ? "0" : sum.str();
    return est;
}

long long headcount(const PlanGraph& graph) {
    std::map<std::string, long long> sizes;
    for (const auto& [id, node] : graph.nodes) {
        if (node.team) {
            sizes[node.team->label] = std::max(sizes[node.team->label], node.team->size);
        }
    }
    long long total = 0;
    for (const auto& [label, size] : sizes) {
        total += size;
    }
    return total;
}

std::vector<CheckerScenario> checker_scenarios(const PlanGraph& graph,
                                               const EstimateParams& params) {
    return Engine(graph, params).scenarios();
}

PlanGraph apply_overrides(const PlanGraph& graph, const Overrides& overrides) {
    PlanGraph out = graph;
    std::vector<Diagnostic> errs;
    for (const auto& [id, change] : overrides) {
        auto it = out.nodes.find(id);
        if (it == out.nodes.end()) {
            push(errs, DiagCode::unknown_node, "no node named '" + id + "' in the plan", {id});
            continue;
        }
        PlanNode& node = it->second;
        const bool process = is_process(node.kind);
        if (change.cycles) {
            if (!process) {
                push(errs, DiagCode::illegal_attribute,
                     "cannot set cycles on a " + kind_label(node.kind) + " ('" + id + "')", {id});
            } else {
                node.cycles = change.cycles;
            }
        }
        if (change.team) {
            if (!process) {
                push(errs, DiagCode::illegal_attribute,
                     "cannot set team on a " + kind_label(node.kind) + " ('" + id + "')", {id});
            } else {
                node.team = change.team;
            }
        }
        if (change.cycle_period) {
            if (!process && node.kind != ModuleKind::integrator) {
                push(errs, DiagCode::illegal_attribute,
                     "cannot set x on a " + kind_label(node.kind) + " ('" + id + "')", {id});
            } else {
                node.cycle_period = change.cycle_period;
            }
        }
        if (change.explicit_duration) {
            if (node.kind != ModuleKind::splitter && node.kind != ModuleKind::checker) {
                push(errs, DiagCode::illegal_attribute,
                     "cannot set dur on a " + kind_label(node.kind) + " ('" + id + "')", {id});
            } else {
                node.explicit_duration = change.explicit_duration;
            }
        }
    }
    if (!errs.empty()) {
        throw EstimateError(std::move(errs));
    }
    return out;
}

Estimate what_if(const PlanGraph& graph, const EstimateParams& params,
                 const Overrides& overrides) {
    return estimate(apply_overrides(graph, overrides), params);
}

std::string estimate_json(const Estimate& est) {
    using json = nlohmann::ordered_json;
    auto unit_count = [](const UnitCount& uc) {
        return json{{"n", uc.n}, {"unit", unit_name(uc.unit)}};
    };
    auto duration = [](const Duration& d) {
        return json{{"magnitude", d.magnitude},
                    {"unit", unit_name(d.unit)},
                    {"promoted", d.promoted}};
    };

    json out;
    out["total"] = {{"major", unit_count(est.total.major)},
                    {"residual", unit_count(est.total.residual)},
                    {"text", format_total(est.total)}};
    out["headcount"] = est.headcount;
    out["stages"] = json::array();
    for (const auto& stage : est.stages) {
        out["stages"].push_back({{"nodes", stage.nodes},
                                 {"kind", to_string(stage.kind)},
                                 {"duration", duration(stage.duration)},
                                 {"mark", to_string(stage.mark)},
                                 {"terms", stage.terms}});
    }
    out["sum_expression"] = est.sum_expression;
    out["checker_scenarios"] = json::array();
    for (const auto& scenario : est.checker_scenarios) {
        out["checker_scenarios"].push_back(
            {{"id", scenario.id}, {"elapsed_days", scenario.elapsed.magnitude}});
    }
    out["critical_path"] = est.critical_path;
    return out.dump(2) + "\n";
}

}  // namespace simproj
