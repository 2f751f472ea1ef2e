#include "simproj/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace simproj {

char kind_symbol(ModuleKind k) {
    switch (k) {
        case ModuleKind::agile: return '#';
        case ModuleKind::si_mounted: return '*';
        case ModuleKind::integrator: return '}';
        case ModuleKind::splitter: return '{';
        case ModuleKind::checker: return 'C';
        case ModuleKind::start:
        case ModuleKind::end: return '@';
    }
    return '?';
}

std::string_view kind_word(ModuleKind k) {
    switch (k) {
        case ModuleKind::agile: return "agile";
        case ModuleKind::si_mounted: return "sim";
        case ModuleKind::integrator: return "integrate";
        case ModuleKind::splitter: return "split";
        case ModuleKind::checker: return "check";
        case ModuleKind::start: return "start";
        case ModuleKind::end: return "end";
    }
    return "node";
}

bool is_process(ModuleKind k) {
    return k == ModuleKind::agile || k == ModuleKind::si_mounted;
}

bool is_terminal(ModuleKind k) {
    return k == ModuleKind::start || k == ModuleKind::end;
}

const PlanNode& PlanGraph::node(const std::string& id) const {
    auto it = nodes.find(id);
    if (it == nodes.end()) {
        throw std::out_of_range("no such node: " + id);
    }
    return it->second;
}

std::vector<std::string> PlanGraph::predecessors(const std::string& id) const {
    std::vector<std::string> result;
    for (const auto& [from, to] : edges) {
        if (to == id) {
            result.push_back(from);
        }
    }
    return result;
}

std::vector<std::string> PlanGraph::successors(const std::string& id) const {
    std::vector<std::string> result;
    for (const auto& [from, to] : edges) {
        if (from == id) {
            result.push_back(to);
        }
    }
    return result;
}

long long PlanGraph::in_degree(const std::string& id) const {
    return static_cast<long long>(predecessors(id).size());
}

long long PlanGraph::out_degree(const std::string& id) const {
    return static_cast<long long>(successors(id).size());
}

PlanGraph build_graph(const std::vector<PlanNode>& nodes, const std::vector<Edge>& edges) {
    std::vector<Diagnostic> diags;
    PlanGraph graph;

    for (const auto& node : nodes) {
        if (!graph.nodes.emplace(node.id, node).second) {
            diags.push_back({Severity::error, DiagCode::duplicate_id,
                             "duplicate node id '" + node.id + "'",
                             {node.id},
                             {}});
        }
    }

    for (const auto& edge : edges) {
        const auto& [from, to] = edge;
        bool endpoints_ok = true;
        for (const auto& endpoint : {from, to}) {
            if (!graph.has_node(endpoint)) {
                diags.push_back({Severity::error, DiagCode::unknown_endpoint,
                                 "edge references unknown node '" + endpoint + "'",
                                 {endpoint},
                                 {}});
                endpoints_ok = false;
            }
        }
        if (!endpoints_ok) {
            continue;
        }
        if (from == to) {
            diags.push_back({Severity::error, DiagCode::self_edge,
                             "self edge on '" + from + "'",
                             {from},
                             {}});
            continue;
        }
        if (!graph.edges.insert(edge).second) {
            diags.push_back({Severity::error, DiagCode::duplicate_edge,
                             "duplicate edge " + from + " -> " + to,
                             {from, to},
                             {}});
        }
    }

    if (!diags.empty()) {
        throw GraphError(std::move(diags));
    }
    return graph;
}

namespace {

// Every node left behind by the sort still has an unprocessed predecessor, so
// walking predecessors inside the residual set must close a loop; clip the
// walk there and flip it to follow edge direction.
std::vector<std::string> extract_cycle(const PlanGraph& graph,
                                       const std::set<std::string>& residual) {
    std::vector<std::string> walk;
    std::map<std::string, size_t> seen;
    std::string current = *residual.begin();
    while (seen.find(current) == seen.end()) {
        seen[current] = walk.size();
        walk.push_back(current);
        for (const auto& prev : graph.predecessors(current)) {
            if (residual.count(prev)) {
                current = prev;
                break;
            }
        }
    }
    std::vector<std::string> cycle(walk.begin() + static_cast<long>(seen[current]), walk.end());
    std::reverse(cycle.begin(), cycle.end());
    return cycle;
}

}  // namespace

std::vector<std::string> topological_order(const PlanGraph& graph) {
    std::map<std::string, long long> indegree;
    for (const auto& [id, node] : graph.nodes) {
        indegree[id] = 0;
    }
    for (const auto& [from, to] : graph.edges) {
        ++indegree[to];
    }

    std::set<std::string> ready;  // ordered: lexicographic tie-break
    for (const auto& [id, degree] : indegree) {
        if (degree == 0) {
            ready.insert(id);
        }
    }

    std::vector<std::string> order;
    order.reserve(graph.nodes.size());
    while (!ready.empty()) {
        const std::string id = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(id);
        for (const auto& next : graph.successors(id)) {
            if (--indegree[next] == 0) {
                ready.insert(next);
            }
        }
    }

    if (order.size() != graph.nodes.size()) {
        std::set<std::string> residual;
        for (const auto& [id, degree] : indegree) {
            if (degree > 0) {
                residual.insert(id);
            }
        }
        auto cycle = extract_cycle(graph, residual);
        std::string names;
        for (const auto& id : cycle) {
            if (!names.empty()) {
                names += " -> ";
            }
            names += id;
        }
        throw GraphError({Diagnostic{Severity::error, DiagCode::cycle_detected,
                                     "cycle: " + names, std::move(cycle),
                                     {}}});
    }
    return order;
}

}  // namespace simproj
