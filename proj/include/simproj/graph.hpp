#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "simproj/time.hpp"

namespace simproj {

// The six module kinds. Start and End share one text symbol (`@`) and are
// told apart by graph position.
enum class ModuleKind { agile, si_mounted, integrator, splitter, checker, start, end };

// Fixed symbol table: # * } { C @
char kind_symbol(ModuleKind k);
std::string_view kind_word(ModuleKind k);  // canonical word for plan files

bool is_process(ModuleKind k);  // agile or si_mounted
bool is_terminal(ModuleKind k);  // start or end

struct Team {
    std::string label;
    long long size = 0;

    bool operator==(const Team&) const = default;
};

// One module instance. Attribute legality per kind (cycles/team on process
// modules, explicit duration on splitters and checkers) is checked by
// validation, not by construction.
struct PlanNode {
    std::string id;
    ModuleKind kind = ModuleKind::agile;
    std::optional<Duration> cycle_period;      // node-level X
    std::optional<long long> cycles;           // iterations per module process
    std::optional<Duration> explicit_duration; // splitter/checker duration
    std::optional<Team> team;

    bool operator==(const PlanNode&) const = default;
};

using Edge = std::pair<std::string, std::string>;

// Directed plan graph. Only build_graph produces one, so the structural
// invariants (known endpoints, no self or duplicate edges) always hold.
// Acyclicity is checked by validation and enforced before estimation.
struct PlanGraph {
    std::map<std::string, PlanNode> nodes;
    std::set<Edge> edges;

    bool has_node(const std::string& id) const { return nodes.count(id) > 0; }
    const PlanNode& node(const std::string& id) const;

    std::vector<std::string> predecessors(const std::string& id) const;
    std::vector<std::string> successors(const std::string& id) const;
    long long in_degree(const std::string& id) const;
    long long out_degree(const std::string& id) const;

    bool operator==(const PlanGraph&) const = default;
};

// Builds a graph from node and edge lists, or throws GraphError listing every
// structural violation (DuplicateId, UnknownEndpoint, SelfEdge, DuplicateEdge).
PlanGraph build_graph(const std::vector<PlanNode>& nodes, const std::vector<Edge>& edges);

// Deterministic topological order: edge order respected, ties broken by
// lexicographic node id. Throws GraphError(CycleDetected) with one cycle's
// node ids if the graph is cyclic.
std::vector<std::string> topological_order(const PlanGraph& graph);

}  // namespace simproj
