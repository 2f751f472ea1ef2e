#pragma once

// Shared test machinery: an independently implemented duration/path oracle,
// a random generator of valid plans, and a harness for running the CLI.

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "simproj/dsl.hpp"
#include "simproj/estimate.hpp"

namespace testsupport {

using namespace simproj;

// ---------------------------------------------------------------------------
// Brute-force oracle. Deliberately reimplements the arithmetic from scratch
// (double division + llround, its own day table, exhaustive path enumeration)
// so agreement with the library is evidence, not tautology.
// ---------------------------------------------------------------------------

inline long long oracle_days_per(TimeUnit u) {
    switch (u) {
        case TimeUnit::day: return 1;
        case TimeUnit::week: return 5;
        case TimeUnit::month: return 5 * 4;
        case TimeUnit::year: return 5 * 4 * 12;
    }
    return 1;
}

inline long long oracle_days_above(TimeUnit u) {
    switch (u) {
        case TimeUnit::day: return oracle_days_per(TimeUnit::week);
        case TimeUnit::week: return oracle_days_per(TimeUnit::month);
        case TimeUnit::month: return oracle_days_per(TimeUnit::year);
        case TimeUnit::year: return oracle_days_per(TimeUnit::year);  // not exercised
    }
    return 1;
}

inline long long oracle_node_days(const PlanNode& node, const PlanGraph& graph,
                                  const EstimateParams& params) {
    const Duration x = node.cycle_period.value_or(params.default_cycle_period);
    auto rounded = [](double q) { return std::llround(q); };  // ties away from zero
    auto finish = [&](long long raw) {
        return raw == 0 ? x.magnitude * oracle_days_per(x.unit)
                        : raw * oracle_days_above(x.unit);
    };
    switch (node.kind) {
        case ModuleKind::agile:
        case ModuleKind::si_mounted: {
            const long long cycles = node.cycles.value_or(params.default_cycles);
            return finish(rounded(static_cast<double>(cycles * x.magnitude) /
                                  static_cast<double>(params.alpha)));
        }
        case ModuleKind::integrator: {
            long long n = 0;
            for (const auto& e : graph.edges) {
                n += e.second == node.id ? 1 : 0;
            }
            return finish(rounded(static_cast<double>(x.magnitude * n * (n - 1)) /
                                  static_cast<double>(2 * params.alpha)));
        }
        case ModuleKind::splitter:
        case ModuleKind::checker:
            return node.explicit_duration
                       ? node.explicit_duration->magnitude *
                             oracle_days_per(node.explicit_duration->unit)
                       : 0;
        case ModuleKind::start:
        case ModuleKind::end:
            return 0;
    }
    return 0;
}

inline void oracle_walk(const PlanGraph& graph, const std::map<std::string, long long>& len,
                        const std::string& cur, const std::string& target, long long acc,
                        long long& best) {
    acc += len.at(cur);
    if (cur == target) {
        best = std::max(best, acc);
        return;
    }
    for (const auto& e : graph.edges) {
        if (e.first == cur) {
            oracle_walk(graph, len, e.second, target, acc, best);
        }
    }
}

// Maximum path sum in days over every path from the start node to `target`
// (the end node when target is empty), by full enumeration.
inline long long oracle_longest_days(const PlanGraph& graph, const EstimateParams& params,
                                     std::string target = "") {
    std::map<std::string, long long> len;
    std::string start;
    for (const auto& [id, node] : graph.nodes) {
        len[id] = oracle_node_days(node, graph, params);
        if (node.kind == ModuleKind::start) {
            start = id;
        }
        if (target.empty() && node.kind == ModuleKind::end) {
            target = id;
        }
    }
    long long best = -1;
    oracle_walk(graph, len, start, target, 0, best);
    return best;
}

inline long long total_as_days(const TotalPair& total) {
    return total.major.n * oracle_days_per(total.major.unit) +
           total.residual.n * oracle_days_per(total.residual.unit);
}

// ---------------------------------------------------------------------------
// Random valid plan generator: start, a series of segments, end. A segment is
// a process module, a checker, or a splitter/integrator block whose branches
// are short chains (occasionally with a direct splitter-to-integrator edge).
// Valid by construction; every plan re-validates clean.
// ---------------------------------------------------------------------------

struct GeneratedPlan {
    PlanDocument doc;       // params fragment + graph, as a parse would yield
    EstimateParams params;  // resolved
};

class PlanGenerator {
public:
    explicit PlanGenerator(unsigned seed) : rng_(seed) {}

    GeneratedPlan next(int max_nodes = 12) {
        nodes_.clear();
        edges_.clear();
        team_sizes_.clear();
        counter_ = 0;
        budget_ = max_nodes - 2;

        ParamsFragment fragment;
        fragment.cycle_period = Duration{1, chance(0.5) ? TimeUnit::day : TimeUnit::week, false};
        fragment.alpha = range(1, 6);
        if (chance(0.5)) {
            fragment.cycles = range(1, 8);
        }
        params_ = resolve_params(fragment);

        add(make_node("s", ModuleKind::start));
        std::string tail = chain("s", static_cast<int>(range(1, 3)));
        add(make_node("e", ModuleKind::end));
        edges_.emplace_back(tail, "e");

        GeneratedPlan out;
        out.doc.params = fragment;
        out.doc.graph = build_graph(nodes_, edges_);
        out.params = params_;
        return out;
    }

private:
    long long range(long long lo, long long hi) {
        return std::uniform_int_distribution<long long>(lo, hi)(rng_);
    }
    bool chance(double p) { return std::uniform_real_distribution<>(0.0, 1.0)(rng_) < p; }

    std::string fresh(const char* prefix) { return prefix + std::to_string(counter_++); }

    static PlanNode make_node(std::string id, ModuleKind kind) {
        PlanNode n;
        n.id = std::move(id);
        n.kind = kind;
        return n;
    }

    void add(PlanNode n) { nodes_.push_back(std::move(n)); }

    Team pick_team() {
        const std::string label = "t" + std::to_string(range(0, 3));
        auto [it, inserted] = team_sizes_.try_emplace(label, range(1, 4));
        return Team{label, it->second};
    }

    std::string chain(std::string from, int segments) {
        for (int i = 0; i < segments && budget_ > 0; ++i) {
            from = segment(from);
        }
        return from;
    }

    std::string segment(const std::string& from) {
        if (budget_ >= 4 && chance(0.3)) {
            return parallel_block(from);
        }
        if (chance(0.2)) {
            return checker(from);
        }
        return process(from);
    }

    std::string process(const std::string& from) {
        PlanNode n = make_node(fresh("p"), chance(0.5) ? ModuleKind::agile : ModuleKind::si_mounted);
        if (chance(0.6)) {
            n.cycles = range(1, 8);
        }
        if (chance(0.25)) {  // whole multiples of the plan cycle period
            n.cycle_period = Duration{params_.default_cycle_period.magnitude * range(1, 3),
                                      params_.default_cycle_period.unit, false};
        }
        if (chance(0.7)) {
            n.team = pick_team();
        }
        edges_.emplace_back(from, n.id);
        --budget_;
        add(n);
        return nodes_.back().id;
    }

    std::string checker(const std::string& from) {
        PlanNode n = make_node(fresh("c"), ModuleKind::checker);
        if (chance(0.6)) {
            n.explicit_duration =
                Duration{range(0, 7), params_.default_cycle_period.unit, false};
        }
        edges_.emplace_back(from, n.id);
        --budget_;
        add(n);
        return nodes_.back().id;
    }

    std::string parallel_block(const std::string& from) {
        PlanNode sp = make_node(fresh("sp"), ModuleKind::splitter);
        edges_.emplace_back(from, sp.id);
        add(sp);
        --budget_;

        const bool direct = chance(0.25);
        const long long room = budget_ - 1;  // keep a slot for the integrator
        const long long min_branches = direct ? 1 : 2;
        const long long branches = range(min_branches, std::max(min_branches, std::min(room, 3LL)));

        std::vector<std::string> tails;
        for (long long b = 0; b < branches; ++b) {
            const long long reserve = branches - b - 1 + 1;  // later branches + integrator
            std::string tail = branch_node(sp.id);
            if (budget_ - reserve > 0 && chance(0.3)) {
                tail = branch_node(tail);
            }
            tails.push_back(tail);
        }

        PlanNode in = make_node(fresh("i"), ModuleKind::integrator);
        for (const auto& t : tails) {
            edges_.emplace_back(t, in.id);
        }
        if (direct) {
            edges_.emplace_back(sp.id, in.id);
        }
        add(in);
        --budget_;
        return nodes_.back().id;
    }

    // One branch step hanging off `from`: process module or checker.
    std::string branch_node(const std::string& from) {
        return chance(0.2) ? checker(from) : process(from);
    }

    std::mt19937 rng_;
    long long counter_ = 0;
    long long budget_ = 0;
    std::vector<PlanNode> nodes_;
    std::vector<Edge> edges_;
    std::map<std::string, long long> team_sizes_;
    EstimateParams params_;
};

// Re-evaluates a sum expression by its published reading: a count is that many
// units one step above the cycle unit, "0*" is one cycle period, "0" is
// nothing; "*" and "**" annotations are cosmetic. Returns days.
inline long long eval_sum_expression(const std::string& expr, const EstimateParams& params) {
    const TimeUnit u = params.default_cycle_period.unit;
    long long total = 0;
    size_t i = 0;
    while (i < expr.size()) {
        const size_t j = expr.find('+', i);
        std::string term =
            expr.substr(i, j == std::string::npos ? std::string::npos : j - i);
        i = j == std::string::npos ? expr.size() : j + 1;
        if (term.ends_with("**")) {
            term.resize(term.size() - 2);
        }
        if (term == "0*") {
            total += params.default_cycle_period.magnitude * oracle_days_per(u);
        } else {
            if (term.ends_with("*")) {
                term.pop_back();
            }
            total += std::stoll(term) * oracle_days_above(u);
        }
    }
    return total;
}

inline bool has_code(const std::vector<Diagnostic>& diags, DiagCode code) {
    for (const auto& d : diags) {
        if (d.code == code) {
            return true;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// File and CLI helpers
// ---------------------------------------------------------------------------

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline void spit(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

inline std::string temp_path(const std::string& stem) {
    static long long counter = 0;
    return (std::filesystem::temp_directory_path() /
            (stem + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++)))
        .string();
}

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

// ---------------------------------------------------------------------------
// A checker for the draft-07 subset docs/estimate.schema.json actually uses:
// type, required, properties, additionalProperties:false, items, enum,
// minimum, minItems, pattern, and $ref into #/definitions.
// ---------------------------------------------------------------------------

class SchemaChecker {
public:
    explicit SchemaChecker(nlohmann::json schema) : root_(std::move(schema)) {}

    std::vector<std::string> check(const nlohmann::json& value) const {
        std::vector<std::string> errors;
        visit(root_, value, "$", errors);
        return errors;
    }

private:
    using json = nlohmann::json;

    static bool type_matches(const std::string& type, const json& value) {
        if (type == "object") return value.is_object();
        if (type == "array") return value.is_array();
        if (type == "string") return value.is_string();
        if (type == "integer") return value.is_number_integer();
        if (type == "boolean") return value.is_boolean();
        return false;
    }

    void visit(const json& schema_in, const json& value, const std::string& where,
               std::vector<std::string>& errors) const {
        const json* schema = &schema_in;
        if (schema->contains("$ref")) {
            const std::string ref = schema->at("$ref").get<std::string>();
            const std::string prefix = "#/definitions/";
            if (ref.rfind(prefix, 0) != 0) {
                errors.push_back(where + ": unsupported $ref '" + ref + "'");
                return;
            }
            schema = &root_.at("definitions").at(ref.substr(prefix.size()));
        }
        if (schema->contains("type") &&
            !type_matches(schema->at("type").get<std::string>(), value)) {
            errors.push_back(where + ": expected " + schema->at("type").get<std::string>());
            return;
        }
        if (schema->contains("enum")) {
            bool matched = false;
            for (const auto& option : schema->at("enum")) {
                matched = matched || option == value;
            }
            if (!matched) {
                errors.push_back(where + ": not an allowed value");
            }
        }
        if (schema->contains("minimum") && value.is_number_integer() &&
            value.get<long long>() < schema->at("minimum").get<long long>()) {
            errors.push_back(where + ": below minimum");
        }
        if (schema->contains("pattern") && value.is_string() &&
            !std::regex_search(value.get<std::string>(),
                               std::regex(schema->at("pattern").get<std::string>()))) {
            errors.push_back(where + ": does not match pattern");
        }
        if (value.is_object()) {
            for (const auto& name : schema->value("required", json::array())) {
                if (!value.contains(name.get<std::string>())) {
                    errors.push_back(where + ": missing '" + name.get<std::string>() + "'");
                }
            }
            const json props = schema->value("properties", json::object());
            const bool sealed = schema->value("additionalProperties", json(true)) == json(false);
            for (const auto& [key, member] : value.items()) {
                if (props.contains(key)) {
                    visit(props.at(key), member, where + "." + key, errors);
                } else if (sealed) {
                    errors.push_back(where + ": unexpected member '" + key + "'");
                }
            }
        }
        if (value.is_array()) {
            if (schema->contains("minItems") &&
                value.size() < schema->at("minItems").get<size_t>()) {
                errors.push_back(where + ": fewer than minItems elements");
            }
            if (schema->contains("items")) {
                for (size_t i = 0; i < value.size(); ++i) {
                    visit(schema->at("items"), value[i],
                          where + "[" + std::to_string(i) + "]", errors);
                }
            }
        }
    }

    json root_;
};

#ifdef SCHEMA_PATH
// Validation errors for an `estimate --json` payload against the committed
// schema; empty means valid.
inline std::vector<std::string> schema_errors(const std::string& json_text) {
    static const SchemaChecker checker(nlohmann::json::parse(slurp(SCHEMA_PATH)));
    return checker.check(nlohmann::json::parse(json_text));
}
#endif

#ifdef SIMPROJ_BIN
// Runs the CLI with shell-ready arguments, capturing exit code and streams.
inline RunResult run_cli(const std::string& args) {
    const std::string out_path = temp_path("stdout");
    const std::string err_path = temp_path("stderr");
    const std::string cmd =
        std::string(SIMPROJ_BIN) + " " + args + " >" + out_path + " 2>" + err_path;
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    std::filesystem::remove(out_path);
    std::filesystem::remove(err_path);
    return r;
}
#endif

}  // namespace testsupport
