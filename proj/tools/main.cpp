#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "simproj/dsl.hpp"
#include "simproj/estimate.hpp"
#include "simproj/render.hpp"

namespace {

using namespace simproj;

// Exit codes: 0 success, 1 domain/validation failure, 2 usage/IO/syntax failure.
constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return std::nullopt;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Diagnostics go to stderr. Validation diagnostics are produced on the graph
// and carry node ids but no positions; when the document is at hand, borrow
// the declaring line of the first involved node.
void print_diagnostics(const std::vector<Diagnostic>& diags, const PlanDocument* doc) {
    for (const Diagnostic& d : diags) {
        Diagnostic shown = d;
        if (!shown.span.known() && doc && !shown.nodes.empty()) {
            shown.span = doc->span_of(shown.nodes.front());
        }
        std::cerr << format_diagnostic(shown) << "\n";
    }
}

// Loads and parses, reporting failures itself. Returns nonzero exit code on
// failure; 0 means `doc` is filled in.
int load_plan(const std::string& path, PlanDocument& doc) {
    auto text = read_file(path);
    if (!text) {
        std::cerr << "error: cannot read '" << path << "'\n";
        return kExitUsage;
    }
    try {
        doc = parse_plan(*text);
    } catch (const PlanError& e) {
        print_diagnostics(e.diagnostics(), nullptr);
        return kExitUsage;
    }
    return kExitOk;
}

long long total_days(const TotalPair& total, const Calendar& cal) {
    return total.major.n * cal.days_per(total.major.unit) +
           total.residual.n * cal.days_per(total.residual.unit);
}

std::string joined(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (const auto& p : parts) {
        out += (out.empty() ? "" : sep) + p;
    }
    return out;
}

std::string duration_text(const Duration& d) {
    std::string s = format_long(d);
    if (d.promoted) {
        s += " (0*)";
    }
    return s;
}

struct EstimateFlags {
    std::string cycle_period;
    long long alpha = 0;
    long long cycles = 0;
    bool json = false;
};

int resolve_flag_params(const PlanDocument& doc, const EstimateFlags& flags,
                        EstimateParams& params) {
    ParamsFragment overrides;
    if (!flags.cycle_period.empty()) {
        auto d = parse_compact_duration(flags.cycle_period);
        if (!d || d->magnitude < 1) {
            std::cerr << "error: --x expects a duration like 1d, 2w, 1m\n";
            return kExitUsage;
        }
        overrides.cycle_period = d;
    }
    if (flags.alpha > 0) {
        overrides.alpha = flags.alpha;
    }
    if (flags.cycles > 0) {
        overrides.cycles = flags.cycles;
    }
    try {
        params = resolve_params(doc.params, overrides);
    } catch (const PlanError& e) {
        print_diagnostics(e.diagnostics(), &doc);
        return kExitDomain;
    }
    return kExitOk;
}

void print_estimate_report(const Estimate& est) {
    std::cout << "total: " << format_total(est.total) << "\n";
    std::cout << "headcount: " << est.headcount << "\n";
    std::cout << "sum: " << est.sum_expression << "\n";
    std::cout << "critical path: " << joined(est.critical_path, " -> ") << "\n";
    if (!est.stages.empty()) {
        std::cout << "stages:\n";
        size_t width = 0;
        for (const auto& stage : est.stages) {
            width = std::max(width, joined(stage.nodes, ", ").size());
        }
        for (const auto& stage : est.stages) {
            std::cout << "  " << std::left << std::setw(static_cast<int>(width) + 2)
                      << joined(stage.nodes, ", ") << std::setw(16)
                      << to_string(stage.kind) << std::setw(18)
                      << duration_text(stage.duration) << joined(stage.terms, "+") << "\n";
        }
    }
    if (!est.checker_scenarios.empty()) {
        std::cout << "checker scenarios:\n";
        for (const auto& s : est.checker_scenarios) {
            std::cout << "  " << s.id << ": " << format_long(s.elapsed) << " elapsed\n";
        }
    }
}

int run_check(const std::string& path) {
    PlanDocument doc;
    if (int rc = load_plan(path, doc)) {
        return rc;
    }
    EstimateParams params;
    if (int rc = resolve_flag_params(doc, {}, params)) {
        return rc;
    }
    const auto errors = validate(doc.graph, params);
    print_diagnostics(errors, &doc);
    print_diagnostics(lint(doc.graph), &doc);
    if (!errors.empty()) {
        return kExitDomain;
    }
    std::cout << "ok: " << path << " (" << doc.graph.nodes.size() << " nodes, "
              << doc.graph.edges.size() << " edges)\n";
    return kExitOk;
}

int run_estimate(const std::string& path, const EstimateFlags& flags) {
    PlanDocument doc;
    if (int rc = load_plan(path, doc)) {
        return rc;
    }
    EstimateParams params;
    if (int rc = resolve_flag_params(doc, flags, params)) {
        return rc;
    }
    Estimate est;
    try {
        est = estimate(doc.graph, params);
    } catch (const PlanError& e) {
        print_diagnostics(e.diagnostics(), &doc);
        return kExitDomain;
    }
    print_diagnostics(lint(doc.graph), &doc);
    if (flags.json) {
        std::cout << estimate_json(est);
    } else {
        print_estimate_report(est);
    }
    return kExitOk;
}

int run_render(const std::string& path, const std::string& format, const std::string& out_path) {
    PlanDocument doc;
    if (int rc = load_plan(path, doc)) {
        return rc;
    }
    EstimateParams params;
    if (int rc = resolve_flag_params(doc, {}, params)) {
        return rc;
    }
    std::string rendered;
    try {
        if (format == "dot") {
            rendered = to_dot(doc.graph, estimate(doc.graph, params));
        } else {
            const auto errors = validate(doc.graph, params);
            if (!errors.empty()) {
                print_diagnostics(errors, &doc);
                return kExitDomain;
            }
            rendered = to_ascii(doc.graph);
        }
    } catch (const PlanError& e) {
        print_diagnostics(e.diagnostics(), &doc);
        return kExitDomain;
    }
    if (out_path.empty()) {
        std::cout << rendered;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write '" << out_path << "'\n";
            return kExitUsage;
        }
        out << rendered;
        std::cout << "wrote " << out_path << "\n";
    }
    return kExitOk;
}

bool parse_set_spec(const std::string& spec, Overrides& overrides, std::string& error) {
    const auto dot = spec.find('.');
    const auto eq = spec.find('=', dot == std::string::npos ? 0 : dot);
    if (dot == std::string::npos || eq == std::string::npos || dot == 0 || eq <= dot + 1) {
        error = "expected '<node>.<attr>=<value>'";
        return false;
    }
    const std::string node = spec.substr(0, dot);
    const std::string attr = spec.substr(dot + 1, eq - dot - 1);
    const std::string value = spec.substr(eq + 1);
    AttributeChange& change = overrides[node];

    auto positive_int = [&](std::optional<long long>& slot) {
        try {
            size_t used = 0;
            long long n = std::stoll(value, &used);
            if (used != value.size() || n < 1) {
                return false;
            }
            slot = n;
            return true;
        } catch (const std::exception&) {
            return false;
        }
    };

    if (attr == "cycles") {
        if (!positive_int(change.cycles)) {
            error = "cycles expects a positive integer";
            return false;
        }
    } else if (attr == "x") {
        auto d = parse_compact_duration(value);
        if (!d || d->magnitude < 1) {
            error = "x expects a duration like 1d, 2w, 1m";
            return false;
        }
        change.cycle_period = d;
    } else if (attr == "dur") {
        auto d = parse_compact_duration(value);
        if (!d) {
            error = "dur expects a duration like 1d, 2w, 1m";
            return false;
        }
        change.explicit_duration = d;
    } else if (attr == "team") {
        const auto colon = value.find(':');
        std::optional<long long> size;
        const std::string size_text = colon == std::string::npos ? "" : value.substr(colon + 1);
        try {
            size_t used = 0;
            long long n = std::stoll(size_text, &used);
            if (used == size_text.size() && n >= 1) {
                size = n;
            }
        } catch (const std::exception&) {
        }
        if (colon == std::string::npos || colon == 0 || !size) {
            error = "team expects '<label>:<size>'";
            return false;
        }
        change.team = Team{value.substr(0, colon), *size};
    } else {
        error = "unknown attribute '" + attr + "' (expected cycles, x, dur, team)";
        return false;
    }
    return true;
}

int run_whatif(const std::string& path, const std::vector<std::string>& set_specs) {
    PlanDocument doc;
    if (int rc = load_plan(path, doc)) {
        return rc;
    }
    EstimateParams params;
    if (int rc = resolve_flag_params(doc, {}, params)) {
        return rc;
    }
    Overrides overrides;
    for (const auto& spec : set_specs) {
        std::string error;
        if (!parse_set_spec(spec, overrides, error)) {
            std::cerr << "error: bad --set '" << spec << "': " << error << "\n";
            return kExitUsage;
        }
    }
    Estimate base, mod;
    try {
        base = estimate(doc.graph, params);
        mod = what_if(doc.graph, params, overrides);
    } catch (const PlanError& e) {
        print_diagnostics(e.diagnostics(), &doc);
        return kExitDomain;
    }
    std::cout << "baseline: total " << format_total(base.total) << " | headcount "
              << base.headcount << " | sum " << base.sum_expression << "\n";
    std::cout << "modified: total " << format_total(mod.total) << " | headcount "
              << mod.headcount << " | sum " << mod.sum_expression << "\n";
    const long long day_delta =
        total_days(mod.total, params.calendar) - total_days(base.total, params.calendar);
    const long long head_delta = mod.headcount - base.headcount;
    std::cout << "delta: total " << (day_delta >= 0 ? "+" : "") << day_delta << " day(s)"
              << " | headcount " << (head_delta >= 0 ? "+" : "") << head_delta << "\n";
    return kExitOk;
}

constexpr std::string_view kStarterPlan =
    R"(; Starter plan. Lines are '<word> <symbol> <id> [key=value ...]' or
; '<from> -> <to>'. Symbols: # agile, * SI-mounted, { split, } integrate,
; C check, @ start/end. Keys: x=<cycle period>, cycles=<n>, dur=<duration>,
; team=<label>:<size>. Durations use d/w/m/y suffixes, e.g. 1d, 2w.
plan { x=1d alpha=5 cycles=5 }

start @ s
discovery * discover team=core:2
split { fan_out
build_a # track_a team=core:2
build_b # track_b team=platform:2
integrate } merge
review C gate
end @ e

s -> discover
discover -> fan_out
fan_out -> track_a
fan_out -> track_b
track_a -> merge
track_b -> merge
merge -> gate
gate -> e
)";

int run_init(const std::string& path, bool force) {
    if (!force && std::ifstream(path).good()) {
        std::cerr << "error: '" << path << "' already exists (use --force to overwrite)\n";
        return kExitDomain;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write '" << path << "'\n";
        return kExitUsage;
    }
    out << kStarterPlan;
    std::cout << "wrote " << path << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"simproj — plan-file estimation: critical paths, durations, teams"};
    app.require_subcommand(1);
    int rc = kExitOk;

    std::string path;
    EstimateFlags flags;
    std::string format = "ascii";
    std::string out_path;
    std::vector<std::string> set_specs;
    bool force = false;

    auto* check = app.add_subcommand("check", "Parse and validate a plan file");
    check->add_option("path", path, "plan file")->required();
    check->callback([&] { rc = run_check(path); });

    auto* est = app.add_subcommand("estimate", "Estimate duration and headcount");
    est->add_option("path", path, "plan file")->required();
    est->add_option("--x", flags.cycle_period,
                    "cycle period override (overrides the file's params block)");
    est->add_option("--alpha", flags.alpha, "cycles-per-unit ratio override")
        ->check(CLI::PositiveNumber);
    est->add_option("--cycles", flags.cycles, "default cycle count override")
        ->check(CLI::PositiveNumber);
    est->add_flag("--json", flags.json, "emit the estimate as JSON only");
    est->callback([&] { rc = run_estimate(path, flags); });

    auto* render = app.add_subcommand("render", "Render a plan as ascii or dot");
    render->add_option("path", path, "plan file")->required();
    render->add_option("--format", format, "output format: ascii or dot")
        ->check(CLI::IsMember({"ascii", "dot"}));
    render->add_option("--out", out_path, "write to a file instead of stdout");
    render->callback([&] { rc = run_render(path, format, out_path); });

    auto* whatif = app.add_subcommand("whatif", "Re-estimate with node attribute overrides");
    whatif->add_option("path", path, "plan file")->required();
    whatif->add_option("--set", set_specs, "override, e.g. --set dev.cycles=10")
        ->take_all();
    whatif->callback([&] { rc = run_whatif(path, set_specs); });

    auto* init = app.add_subcommand("init", "Write a commented starter plan");
    init->add_option("path", path, "file to create")->required();
    init->add_flag("--force", force, "overwrite an existing file");
    init->callback([&] { rc = run_init(path, force); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::cerr << "run '" << app.get_name() << " --help' for usage\n";
        return kExitUsage;
    }
    return rc;
}
