#include "simproj/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace simproj {

namespace {

struct Token {
    std::string text;
    int column = 0;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> tokens;
    size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
        }
        tokens.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return tokens;
}

bool is_identifier(std::string_view text) {
    if (text.empty()) {
        return false;
    }
    return std::all_of(text.begin(), text.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

struct NodeRecord {
    char symbol = '\0';
    std::string id;
    PlanNode node;  // kind of '@' records resolved later
    SourceSpan span;
};

struct EdgeRecord {
    Edge edge;
    SourceSpan span;
};

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    PlanDocument run() {
        std::istringstream in(text_);
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') {
                line.pop_back();
            }
            if (auto semi = line.find(';'); semi != std::string::npos) {
                line.erase(semi);
            }
            parse_line(line, line_no);
        }
        if (!syntax_errors_.empty()) {
            throw ParseError(std::move(syntax_errors_));
        }

        resolve_terminals();
        check_structure();

        PlanDocument doc;
        doc.params = params_;
        std::vector<PlanNode> nodes;
        std::vector<Edge> edges;
        for (const auto& record : nodes_) {
            nodes.push_back(record.node);
            doc.source_spans.emplace(record.id, record.span);
        }
        for (const auto& record : edges_) {
            edges.push_back(record.edge);
        }
        doc.graph = build_graph(nodes, edges);
        return doc;
    }

private:
    void fail(int line, int column, DiagCode code, std::string message) {
        syntax_errors_.push_back({Severity::error, code, std::move(message),
                                  {},
                                  SourceSpan{line, column}});
    }

    void parse_line(const std::string& line, int line_no) {
        auto tokens = tokenize(line);
        if (tokens.empty()) {
            return;
        }
        if (tokens.size() >= 2 && tokens[1].text == "->") {
            parse_edge(tokens, line_no);
        } else if (tokens[0].text == "plan") {
            parse_params(tokens, line_no);
        } else {
            parse_node(tokens, line_no);
        }
    }

    void parse_edge(const std::vector<Token>& tokens, int line_no) {
        if (tokens.size() != 3 || !is_identifier(tokens[0].text) || !is_identifier(tokens[2].text)) {
            fail(line_no, tokens[0].column, DiagCode::syntax_error,
                 "expected edge line '<id> -> <id>'");
            return;
        }
        edges_.push_back({{tokens[0].text, tokens[2].text}, {line_no, tokens[0].column}});
    }

    void parse_params(const std::vector<Token>& tokens, int line_no) {
        if (seen_params_) {
            fail(line_no, tokens[0].column, DiagCode::duplicate_param,
                 "params block already declared");
            return;
        }
        seen_params_ = true;
        if (tokens.size() < 3 || tokens[1].text != "{" || tokens.back().text != "}") {
            fail(line_no, tokens[0].column, DiagCode::syntax_error,
                 "expected 'plan { [x=<dur>] [alpha=<n>] [cycles=<n>] }'");
            return;
        }
        for (size_t i = 2; i + 1 < tokens.size(); ++i) {
            const auto& tok = tokens[i];
            auto eq = tok.text.find('=');
            if (eq == std::string::npos) {
                fail(line_no, tok.column, DiagCode::syntax_error, "expected key=value");
                continue;
            }
            const std::string key = tok.text.substr(0, eq);
            const std::string value = tok.text.substr(eq + 1);
            if (key == "x") {
                if (params_.cycle_period) {
                    fail(line_no, tok.column, DiagCode::duplicate_param, "duplicate key 'x'");
                } else if (auto d = parse_positive_duration(value)) {
                    params_.cycle_period = d;
                } else {
                    fail(line_no, tok.column, DiagCode::syntax_error,
                         "expected duration like 1d, 2w, 1m");
                }
            } else if (key == "alpha") {
                parse_count_param(params_.alpha, "alpha", value, tok, line_no);
            } else if (key == "cycles") {
                parse_count_param(params_.cycles, "cycles", value, tok, line_no);
            } else {
                fail(line_no, tok.column, DiagCode::syntax_error,
                     "unknown param '" + key + "' (expected x, alpha, cycles)");
            }
        }
    }

    void parse_count_param(std::optional<long long>& slot, const std::string& key,
                           const std::string& value, const Token& tok, int line_no) {
        if (slot) {
            fail(line_no, tok.column, DiagCode::duplicate_param, "duplicate key '" + key + "'");
            return;
        }
        if (auto n = parse_positive_int(value)) {
            slot = n;
        } else {
            fail(line_no, tok.column, DiagCode::syntax_error,
                 "expected positive integer for '" + key + "'");
        }
    }

    void parse_node(const std::vector<Token>& tokens, int line_no) {
        if (tokens.size() < 3 || !is_identifier(tokens[0].text)) {
            fail(line_no, tokens[0].column, DiagCode::syntax_error,
                 "expected '<word> <symbol> <id> [key=value ...]'");
            return;
        }
        const auto& symbol_tok = tokens[1];
        if (symbol_tok.text.size() != 1 || !symbol_from_char(symbol_tok.text[0])) {
            fail(line_no, symbol_tok.column, DiagCode::unknown_symbol,
                 "unknown module symbol '" + symbol_tok.text + "'");
            return;
        }
        const auto& id_tok = tokens[2];
        if (!is_identifier(id_tok.text)) {
            fail(line_no, id_tok.column, DiagCode::syntax_error,
                 "expected node identifier");
            return;
        }

        NodeRecord record;
        record.symbol = symbol_tok.text[0];
        record.id = id_tok.text;
        record.span = {line_no, id_tok.column};
        record.node.id = id_tok.text;
        record.node.kind = *symbol_from_char(record.symbol);

        for (size_t i = 3; i < tokens.size(); ++i) {
            parse_node_key(record.node, tokens[i], line_no);
        }
        nodes_.push_back(std::move(record));
    }

    void parse_node_key(PlanNode& node, const Token& tok, int line_no) {
        auto eq = tok.text.find('=');
        if (eq == std::string::npos) {
            fail(line_no, tok.column, DiagCode::syntax_error, "expected key=value");
            return;
        }
        const std::string key = tok.text.substr(0, eq);
        const std::string value = tok.text.substr(eq + 1);
        if (key == "x") {
            if (node.cycle_period) {
                fail(line_no, tok.column, DiagCode::duplicate_param, "duplicate key 'x'");
            } else if (auto d = parse_positive_duration(value)) {
                node.cycle_period = d;
            } else {
                fail(line_no, tok.column, DiagCode::syntax_error,
                     "expected duration like 1d, 2w, 1m");
            }
        } else if (key == "cycles") {
            if (node.cycles) {
                fail(line_no, tok.column, DiagCode::duplicate_param, "duplicate key 'cycles'");
            } else if (auto n = parse_positive_int(value)) {
                node.cycles = n;
            } else {
                fail(line_no, tok.column, DiagCode::syntax_error,
                     "expected positive integer for 'cycles'");
            }
        } else if (key == "dur") {
            if (node.explicit_duration) {
                fail(line_no, tok.column, DiagCode::duplicate_param, "duplicate key 'dur'");
            } else if (auto d = parse_compact_duration(value)) {
                node.explicit_duration = d;
            } else {
                fail(line_no, tok.column, DiagCode::syntax_error,
                     "expected duration like 1d, 2w, 1m");
            }
        } else if (key == "team") {
            if (node.team) {
                fail(line_no, tok.column, DiagCode::duplicate_param, "duplicate key 'team'");
            } else if (auto team = parse_team(value)) {
                node.team = team;
            } else {
                fail(line_no, tok.column, DiagCode::syntax_error,
                     "expected team '<label>:<size>'");
            }
        } else {
            fail(line_no, tok.column, DiagCode::syntax_error,
                 "unknown key '" + key + "' (expected x, cycles, dur, team)");
        }
    }

    static std::optional<ModuleKind> symbol_from_char(char c) {
        switch (c) {
            case '#': return ModuleKind::agile;
            case '*': return ModuleKind::si_mounted;
            case '}': return ModuleKind::integrator;
            case '{': return ModuleKind::splitter;
            case 'C': return ModuleKind::checker;
            case '@': return ModuleKind::start;  // split into start/end later
            default: return std::nullopt;
        }
    }

    static std::optional<long long> parse_positive_int(const std::string& value) {
        if (value.empty() || value.size() > 9) {
            return std::nullopt;
        }
        long long n = 0;
        for (char c : value) {
            if (!std::isdigit(static_cast<unsigned char>(c))) {
                return std::nullopt;
            }
            n = n * 10 + (c - '0');
        }
        return n >= 1 ? std::optional<long long>(n) : std::nullopt;
    }

    static std::optional<Duration> parse_positive_duration(const std::string& value) {
        auto d = parse_compact_duration(value);
        if (!d || d->magnitude < 1) {
            return std::nullopt;
        }
        return d;
    }

    static std::optional<Team> parse_team(const std::string& value) {
        auto colon = value.find(':');
        if (colon == std::string::npos) {
            return std::nullopt;
        }
        const std::string label = value.substr(0, colon);
        if (!is_identifier(label)) {
            return std::nullopt;
        }
        auto size = parse_positive_int(value.substr(colon + 1));
        if (!size) {
            return std::nullopt;
        }
        return Team{label, *size};
    }

    // `@` means start at in-degree 0 and end at out-degree 0; an interior `@`
    // is recorded as start and flagged by validation.
    void resolve_terminals() {
        std::map<std::string, std::pair<long long, long long>> degrees;  // id -> (in, out)
        for (const auto& record : edges_) {
            degrees[record.edge.second].first++;
            degrees[record.edge.first].second++;
        }
        for (auto& record : nodes_) {
            if (record.symbol != '@') {
                continue;
            }
            const auto [in, out] = degrees[record.id];
            record.node.kind =
                (out == 0 && in > 0) ? ModuleKind::end : ModuleKind::start;
        }
    }

    // Span-aware structural checks mirroring build_graph so every violation
    // in a file carries a position.
    void check_structure() {
        std::vector<Diagnostic> diags;
        std::map<std::string, int> declared;
        for (const auto& record : nodes_) {
            if (++declared[record.id] > 1) {
                diags.push_back({Severity::error, DiagCode::duplicate_id,
                                 "duplicate node id '" + record.id + "'",
                                 {record.id},
                                 record.span});
            }
        }
        std::set<Edge> seen_edges;
        for (const auto& record : edges_) {
            const auto& [from, to] = record.edge;
            bool ok = true;
            for (const auto& endpoint : {from, to}) {
                if (!declared.count(endpoint)) {
                    diags.push_back({Severity::error, DiagCode::unknown_endpoint,
                                     "edge references unknown node '" + endpoint + "'",
                                     {endpoint},
                                     record.span});
                    ok = false;
                }
            }
            if (!ok) {
                continue;
            }
            if (from == to) {
                diags.push_back({Severity::error, DiagCode::self_edge,
                                 "self edge on '" + from + "'",
                                 {from},
                                 record.span});
            } else if (!seen_edges.insert(record.edge).second) {
                diags.push_back({Severity::error, DiagCode::duplicate_edge,
                                 "duplicate edge " + from + " -> " + to,
                                 {from, to},
                                 record.span});
            }
        }
        if (!diags.empty()) {
            throw GraphError(std::move(diags));
        }
    }

    const std::string& text_;
    std::vector<Diagnostic> syntax_errors_;
    ParamsFragment params_;
    bool seen_params_ = false;
    std::vector<NodeRecord> nodes_;
    std::vector<EdgeRecord> edges_;
};

}  // namespace

SourceSpan PlanDocument::span_of(const std::string& id) const {
    auto it = source_spans.find(id);
    return it == source_spans.end() ? SourceSpan{} : it->second;
}

PlanDocument parse_plan(const std::string& text) {
    return Parser(text).run();
}

std::string serialize_plan(const PlanDocument& doc) {
    const EstimateParams params = resolve_params(doc.params);

    std::ostringstream out;
    out << "plan { x=" << format_compact(params.default_cycle_period)
        << " alpha=" << params.alpha << " cycles=" << params.default_cycles << " }\n";

    for (const auto& id : topological_order(doc.graph)) {
        const PlanNode& node = doc.graph.node(id);
        out << kind_word(node.kind) << " " << kind_symbol(node.kind) << " " << id;
        if (node.cycle_period) {
            out << " x=" << format_compact(*node.cycle_period);
        }
        if (node.cycles) {
            out << " cycles=" << *node.cycles;
        }
        if (node.explicit_duration) {
            out << " dur=" << format_compact(*node.explicit_duration);
        }
        if (node.team) {
            out << " team=" << node.team->label << ":" << node.team->size;
        }
        out << "\n";
    }

    for (const auto& [from, to] : doc.graph.edges) {
        out << from << " -> " << to << "\n";
    }
    return out.str();
}

}  // namespace simproj
