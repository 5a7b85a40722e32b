#include "txdiag/cli.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "txdiag/diagnosability.hpp"
#include "txdiag/error.hpp"
#include "txdiag/fault_sim.hpp"
#include "txdiag/hier_engine.hpp"
#include "txdiag/io.hpp"
#include "txdiag/report.hpp"
#include "txdiag/synthesis.hpp"
#include "txdiag/xor_diagnosis.hpp"

namespace txdiag::cli {

namespace {

struct Options {
    std::string format;  // empty: per-command default
    std::string output;

    std::string graph;
    std::string matrix;
    std::string response;
    std::string tests_file;
    std::string monitors;
    std::string from;
    std::string to;
    std::string style = "csv";
    std::string faults;
    std::string mode = "positive";
    std::string responses_dir;
    std::string policy = "money";
    unsigned max_depth = 0;
    std::size_t k = 1;
    std::size_t k_max = 3;
    std::uint64_t budget = 1'000'000;
    std::size_t threshold = 0;
    std::uint64_t seed = 0;
    bool transpose = false;
};

// Result of a subcommand: the primary output plus its exit code.
struct Outcome {
    std::string text;
    int code = kExitOk;
};

std::string join(const std::vector<std::string>& items, const std::string& sep = ",") {
    std::string out;
    for (const auto& s : items) out += (out.empty() ? "" : sep) + s;
    return out;
}

std::string braces(const std::vector<std::string>& items) { return "{" + join(items) + "}"; }

bool want_json(const Options& o, bool json_default = false) {
    if (o.format.empty()) return json_default;
    return o.format == "json";
}

struct LoadedModel {
    TransactionGraph graph;
    std::vector<TestSegment> tests;
    std::vector<NodeId> monitors;
};

// Graph plus the tests and monitors a command should use: explicit --tests /
// --monitors first, then those stored in the graph file, then synthesized
// tests and sink monitors.
LoadedModel load_model(const Options& o) {
    auto file = io::parse_model_json(io::read_file(o.graph));
    require_valid(file.graph);
    LoadedModel m;
    m.graph = file.graph;
    if (!o.tests_file.empty()) {
        m.tests = io::parse_tests_json(io::read_file(o.tests_file));
    } else if (!file.tests.empty()) {
        m.tests = file.tests;
    } else {
        m.tests = synth_tests(file.graph);
    }
    if (!o.monitors.empty()) {
        m.monitors = io::split_list(o.monitors);
    } else if (!file.graph.monitors().empty()) {
        m.monitors = file.graph.monitors();
    } else {
        m.monitors = structural_features(file.graph).sinks;
    }
    return m;
}

ActivationMatrix model_matrix(const LoadedModel& m) { return build_matrix(m.graph.with_monitors(m.monitors), m.tests); }

// A matrix argument may be a CSV file or a graph JSON file.
ActivationMatrix load_matrix(const Options& o, const std::string& path) {
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
        Options copy = o;
        copy.graph = path;
        return model_matrix(load_model(copy));
    }
    return io::parse_matrix_csv(io::read_file(path), o.transpose);
}

std::string classes_text(const std::vector<std::vector<BlockId>>& classes) {
    std::string out;
    std::size_t singletons = 0;
    for (const auto& c : classes) {
        if (c.size() > 1) {
            out += (out.empty() ? "" : " ") + braces(c);
        } else {
            ++singletons;
        }
    }
    if (out.empty()) return "all " + std::to_string(singletons) + " singletons";
    return out + " + " + std::to_string(singletons) + " singletons";
}

std::string rational_text(const Rational& q) { return format_rational(q) + " (" + format_decimal(q) + ")"; }

Outcome cmd_analyze(const Options& o) {
    const auto model = load_model(o);
    const auto features = structural_features(model.graph);
    const auto met = metrics(model.graph, model.tests, model.monitors);
    const auto matrix = model_matrix(model);
    const auto audit = audit_matrix(matrix);
    if (want_json(o)) return {report::analysis_json(features, met, audit, matrix)};

    std::ostringstream s;
    s << "blocks           N  = " << met.n_blocks << "\n";
    s << "transit nodes    Nn = " << met.n_transit << " " << braces(features.transit_nodes) << "\n";
    s << "sources " << braces(features.sources) << ", sinks " << braces(features.sinks) << "\n";
    s << "tests           |T| = " << met.test_len << "\n";
    s << "monitors        |A| = " << met.monitor_count << " " << braces(model.monitors) << "\n";
    s << "diagnosability   D  = " << rational_text(met.d_structural) << "\n";
    s << "efficiency       E  = " << rational_text(met.efficiency) << "  [ceil(log2 N) = " << met.log2_ceil << "]\n";
    s << "quality          Q  = " << rational_text(met.quality) << "\n";
    s << "optimal: " << (met.optimal ? "yes" : "no") << "\n";
    s << "matrix " << matrix.row_count() << "x" << matrix.col_count() << ", equivalence classes: "
      << classes_text(class_block_ids(matrix, audit.equivalence_classes)) << "\n";
    for (const auto& w : met.warnings) s << "warning: " << w << "\n";
    return {s.str()};
}

Outcome cmd_paths(const Options& o) {
    const auto file = io::parse_model_json(io::read_file(o.graph));
    require_valid(file.graph);
    const auto features = structural_features(file.graph);
    std::vector<NodeId> starts = o.from.empty() ? features.sources : std::vector<NodeId>{o.from};
    std::vector<NodeId> targets = o.to.empty() ? features.sinks : io::split_list(o.to);

    std::vector<TestSegment> paths;
    for (const auto& start : starts) {
        for (auto& p : enumerate_paths(file.graph, start, targets)) paths.push_back(std::move(p));
    }
    for (std::size_t k = 0; k < paths.size(); ++k) paths[k].id = "T" + std::to_string(k + 1);
    if (want_json(o)) return {report::paths_json(file.graph, paths)};

    std::string out;
    for (const auto& p : paths) {
        out += p.id + ": " + join(p.path, " ") + "  [" + join(blocks_on_path(file.graph, p), " ") + "]\n";
    }
    return {out};
}

Outcome cmd_matrix(const Options& o) {
    const auto m = model_matrix(load_model(o));
    if (want_json(o)) return {report::matrix_json(m)};
    if (o.style == "text") return {io::render_matrix_text(m)};
    return {io::matrix_to_csv(m)};
}

Outcome cmd_audit(const Options& o) {
    const auto m = load_matrix(o, o.matrix);
    const auto audit = audit_matrix(m);
    if (want_json(o)) return {report::audit_json(audit, m)};

    std::ostringstream s;
    s << "matrix " << m.row_count() << "x" << m.col_count() << "\n";
    s << "coverage: " << (audit.coverage_ok ? "ok" : "uncovered " + braces(audit.uncovered)) << "\n";
    s << "duplicate rows: ";
    if (audit.duplicate_rows.empty()) s << "none";
    for (const auto& group : audit.duplicate_rows) {
        std::vector<std::string> keys;
        for (std::size_t i : group) keys.push_back(to_string(m.rows()[i]));
        s << braces(keys) << " ";
    }
    s << "\n";
    s << "equivalence classes: " << classes_text(class_block_ids(m, audit.equivalence_classes)) << "\n";
    s << "log2 bound: rows " << audit.row_count << " >= ceil(log2 " << m.col_count() << ") = " << audit.log2_ceil
      << (audit.log2_bound_ok ? " ok" : " violated") << "\n";
    return {s.str()};
}

Outcome cmd_diagnose(const Options& o) {
    const auto m = load_matrix(o, o.matrix);
    const auto r = io::parse_response(io::read_file(o.response), m);
    DiagnoseOptions opts;
    opts.k_max = o.k_max;
    opts.budget = o.budget;
    opts.deficiency_threshold = o.threshold;
    const auto v = diagnose(m, r, opts);
    const int code = v.kind == VerdictKind::TestDeficient ? kExitDomain : kExitOk;
    if (want_json(o)) return {report::verdict_json(v), code};

    std::ostringstream s;
    s << "verdict: " << to_string(v.kind) << "\n";
    for (const auto& c : v.candidates) {
        if (c.distance != 0 && !v.candidates.empty() && v.candidates.front().distance == 0) break;
        s << "candidate " << braces(c.blocks) << " distance " << c.distance << "\n";
    }
    if (v.deficiency_note) s << "note: no single block explains the response exactly\n";
    for (const auto& cover : v.covers) {
        if (cover.size() > 1) s << "multiple-fault cover " << braces(cover) << "\n";
    }
    return {s.str(), code};
}

Outcome cmd_simulate(const Options& o) {
    const auto model = load_model(o);
    const auto m = model_matrix(model);
    const auto r = simulate(m, FaultSet(io::split_list(o.faults)));
    return {io::response_to_text(m, r)};
}

Outcome cmd_campaign(const Options& o) {
    const auto model = load_model(o);
    CampaignOptions opts;
    opts.seed = o.seed;
    opts.cover_budget = o.budget;
    const auto c = campaign(model.graph, model.tests, model.monitors, o.k, opts);
    if (want_json(o, true)) return {report::campaign_json(c)};

    std::ostringstream s;
    s << "fault multiplicity k = " << c.k << (c.sampled ? " (sampled, seed " + std::to_string(c.seed) + ")" : "")
      << "\n";
    s << "fault sets " << c.n_total << ", detected N_d = " << c.n_detected << ", uniquely identified "
      << c.n_unique << "\n";
    s << "detection rate " << rational_text(c.detection_rate)
      << "\n";
    return {s.str()};
}

Outcome cmd_synth_tests(const Options& o) {
    const auto file = io::parse_model_json(io::read_file(o.graph));
    const auto tests = synth_tests(file.graph);
    if (want_json(o, true)) return {io::tests_to_json(tests)};
    std::string out;
    for (const auto& t : tests) out += t.id + ": " + join(t.path, " ") + "  [" + join(t.blocks, " ") + "]\n";
    return {out};
}

Outcome cmd_synth_monitors(const Options& o) {
    const auto model = load_model(o);
    const auto plan = synth_monitors(model.graph, model.tests);
    if (want_json(o)) return {report::monitor_plan_json(plan)};
    std::ostringstream s;
    s << "base monitors:  " << braces(plan.base_monitors) << "\n";
    s << "added monitors: " << braces(plan.added_monitors) << "\n";
    s << "classes: " << classes_text(plan.resulting_classes) << "\n";
    return {s.str()};
}

Outcome cmd_synth_logic(const Options& o) {
    const auto m = load_matrix(o, o.matrix);
    const auto mode = o.mode == "minterm" ? LogicMode::FullMinterm : LogicMode::PositiveOnly;
    const auto functions = synth_logic(m, mode);
    if (want_json(o)) return {report::logic_json(functions)};
    std::string out;
    for (const auto& f : functions) out += render_function(f) + "\n";
    return {out};
}

Outcome cmd_rules(const Options& o) {
    const auto model = load_model(o);
    const auto report = rule_check(model.graph, model.tests, model.monitors);
    const bool failed = std::any_of(report.rules.begin(), report.rules.end(),
                                    [](const RuleResult& r) { return r.status == RuleStatus::Fail; });
    const int code = failed ? kExitDomain : kExitOk;
    if (want_json(o)) return {report::rules_json(report), code};
    std::ostringstream s;
    for (const auto& r : report.rules) {
        std::string status(to_string(r.status));
        status.resize(9, ' ');
        s << "rule " << r.rule << "  " << status << r.evidence << "\n";
    }
    return {s.str(), code};
}

Outcome cmd_tree_diagnose(const Options& o) {
    const auto tree = io::load_tree(o.matrix);
    const io::DirectoryResponseProvider provider(o.responses_dir);
    CostPolicy policy;
    policy.kind = o.policy == "time" ? Policy::Time : Policy::Money;
    if (o.max_depth > 0) policy.max_depth = o.max_depth;
    const auto t = traverse(tree, provider, policy);
    const int code = t.kind == OutcomeKind::TestCorrectionNeeded ? kExitDomain : kExitOk;
    if (want_json(o)) return {report::traversal_json(t), code};

    std::ostringstream s;
    for (const auto& step : t.trace) {
        s << "level " << step.level << " " << step.branch << ": " << to_string(step.action);
        if (!step.column.empty()) s << " " << step.column << " distance " << step.distance;
        if (!step.equivalents.empty()) s << " (equivalent " << braces(step.equivalents) << ")";
        s << "\n";
    }
    s << "outcome: " << to_string(t.kind);
    if (t.kind == OutcomeKind::Repair) s << " " << join(t.repair_path, " > ");
    if (t.kind == OutcomeKind::TestCorrectionNeeded) s << " at level " << t.correction_level << " " << t.correction_branch;
    s << "\n";
    return {s.str(), code};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Transaction-graph fault diagnosis toolkit", "txdiag"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("-o,--output", o.output, "Write the report to a file instead of standard output");

    std::function<Outcome(const Options&)> handler;
    auto sub = [&](const char* name, const char* help, Outcome (*fn)(const Options&)) {
        CLI::App* s = app.add_subcommand(name, help);
        s->callback([&handler, fn] { handler = fn; });
        return s;
    };
    auto graph_inputs = [&](CLI::App* s) {
        s->add_option("graph", o.graph, "Graph JSON file")->required();
        s->add_option("--tests", o.tests_file, "Tests JSON file (default: tests in the graph file, else synthesized)");
        s->add_option("--monitors", o.monitors, "Comma-separated monitor nodes (default: graph monitors, else sinks)");
    };
    auto matrix_input = [&](CLI::App* s) {
        s->add_option("matrix", o.matrix, "Matrix CSV (or graph JSON)")->required();
        s->add_flag("--transpose", o.transpose, "The CSV is stored transposed (blocks as rows)");
        s->add_option("--tests", o.tests_file, "Tests JSON file when the input is a graph");
        s->add_option("--monitors", o.monitors, "Monitor nodes when the input is a graph");
    };

    graph_inputs(sub("analyze", "Structural features, diagnosability metrics and matrix audit", cmd_analyze));

    auto* paths = sub("paths", "Enumerate activation paths", cmd_paths);
    paths->add_option("graph", o.graph, "Graph JSON file")->required();
    paths->add_option("--from", o.from, "Start node (default: every source)");
    paths->add_option("--to", o.to, "Comma-separated end nodes (default: sinks)");

    auto* matrix = sub("matrix", "Build the activation matrix", cmd_matrix);
    graph_inputs(matrix);
    matrix->add_option("--style", o.style, "csv or text")->check(CLI::IsMember({"csv", "text"}));

    matrix_input(sub("audit", "Check matrix coverage, redundancy and equivalence", cmd_audit));

    auto* diag = sub("diagnose", "Localize faulty blocks from a response file", cmd_diagnose);
    matrix_input(diag);
    diag->add_option("response", o.response, "Response file")->required();
    diag->add_option("--k-max", o.k_max, "Largest multiple-fault cover")->check(CLI::PositiveNumber);
    diag->add_option("--budget", o.budget, "Subset budget for the cover search");
    diag->add_option("--threshold", o.threshold, "Distance above which a deficiency note is raised");

    auto* simulate_cmd = sub("simulate", "Simulate monitor responses for injected faults", cmd_simulate);
    graph_inputs(simulate_cmd);
    simulate_cmd->add_option("--fault", o.faults, "Comma-separated faulty blocks")->required();

    auto* campaign_cmd = sub("campaign", "Inject every fault set of size k and diagnose it", cmd_campaign);
    graph_inputs(campaign_cmd);
    campaign_cmd->add_option("-k", o.k, "Fault multiplicity")->check(CLI::PositiveNumber);
    campaign_cmd->add_option("--seed", o.seed, "Sampling seed");
    campaign_cmd->add_option("--budget", o.budget, "Subset budget for the cover search");

    auto* st = sub("synth-tests", "Minimum path-cover test set", cmd_synth_tests);
    st->add_option("graph", o.graph, "Graph JSON file")->required();

    graph_inputs(sub("synth-monitors", "Monitor placement that splits equivalence classes", cmd_synth_monitors));

    auto* logic = sub("synth-logic", "Per-block diagnosis functions", cmd_synth_logic);
    matrix_input(logic);
    logic->add_option("--mode", o.mode, "positive or minterm")->check(CLI::IsMember({"positive", "minterm"}));

    graph_inputs(sub("rules", "Check the diagnosability design rules", cmd_rules));

    auto* tree = sub("tree-diagnose", "Traverse a hierarchy of activation matrices", cmd_tree_diagnose);
    tree->add_option("tree", o.matrix, "Tree JSON file")->required();
    tree->add_option("--responses", o.responses_dir, "Directory of <branch>.resp files")->required();
    tree->add_option("--policy", o.policy, "time or money")->check(CLI::IsMember({"time", "money"}));
    tree->add_option("--max-depth", o.max_depth, "Deepest level to descend to")->check(CLI::PositiveNumber);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        const Outcome result = handler(o);
        if (o.output.empty()) {
            out << result.text;
        } else {
            io::write_file(o.output, result.text);
        }
        return result.code;
    } catch (const io::IoError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.code() == ErrorCode::Format ? kExitUsage : kExitDomain;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitDomain;
    }
}

}  // namespace txdiag::cli
