#include "simproj/render.hpp"

#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace simproj {

namespace {

std::string_view dot_shape(ModuleKind k) {
    switch (k) {
        case ModuleKind::agile:
        case ModuleKind::si_mounted: return "box";
        case ModuleKind::splitter: return "invtriangle";
        case ModuleKind::integrator: return "triangle";
        case ModuleKind::checker: return "diamond";
        case ModuleKind::start:
        case ModuleKind::end: return "circle";
    }
    return "box";
}

std::string quoted(const std::string& id) {
    return "\"" + id + "\"";
}

}  // namespace

std::string to_dot(const PlanGraph& graph, const std::optional<Estimate>& estimate,
                   const RenderOptions& opts) {
    std::ostringstream out;
    out << "digraph plan {\n";
    out << "  rankdir=LR;\n";
    out << "  node [fontname=\"Helvetica\"];\n";

    for (const auto& [id, node] : graph.nodes) {
        std::string label = id + " " + kind_symbol(node.kind);
        if (estimate && opts.show_durations) {
            auto it = estimate->node_durations.find(id);
            if (it != estimate->node_durations.end() && !it->second.is_zero()) {
                label += "\\n" + format_long(it->second);
                if (it->second.promoted) {
                    label += " (0*)";
                }
            }
        }
        if (opts.show_teams && node.team) {
            label += "\\n" + node.team->label + ":" + std::to_string(node.team->size);
        }
        out << "  " << quoted(id) << " [label=\"" << label << "\", shape="
            << dot_shape(node.kind) << "];\n";
    }

    std::set<Edge> critical;
    if (estimate && opts.annotate_critical_path) {
        const auto& path = estimate->critical_path;
        for (size_t i = 0; i + 1 < path.size(); ++i) {
            critical.insert({path[i], path[i + 1]});
        }
    }
    for (const auto& edge : graph.edges) {
        out << "  " << quoted(edge.first) << " -> " << quoted(edge.second);
        if (critical.count(edge)) {
            out << " [color=crimson, penwidth=2.0]";
        }
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

std::string to_ascii(const PlanGraph& graph) {
    // Depth = longest edge count from any source; nodes sharing a depth share
    // a line, so parallel branches of even length sit side by side.
    std::map<std::string, long long> depth;
    for (const auto& id : topological_order(graph)) {
        long long d = 0;
        for (const auto& p : graph.predecessors(id)) {
            d = std::max(d, depth.at(p) + 1);
        }
        depth[id] = d;
    }
    std::map<long long, std::vector<std::string>> levels;
    for (const auto& [id, d] : depth) {
        levels[d].push_back(id);  // map order keeps each level sorted
    }

    std::ostringstream out;
    for (const auto& [d, ids] : levels) {
        out << "[";
        for (size_t i = 0; i < ids.size(); ++i) {
            if (i > 0) {
                out << " | ";
            }
            out << ids[i] << " " << kind_symbol(graph.node(ids[i]).kind);
        }
        out << "]\n";
    }
    return out.str();
}

std::string sum_expression(const Estimate& estimate) {
    return estimate.sum_expression;
}

}  // namespace simproj
