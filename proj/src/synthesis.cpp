#include "txdiag/synthesis.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <set>

#include "txdiag/error.hpp"

namespace txdiag {

namespace {

// Flow network over the graph nodes plus a super source and super sink. Every
// graph arc has lower bound 1 and unbounded capacity; the min flow value is
// the minimum number of source-to-sink paths covering all arcs.
class CoverFlow {
public:
    explicit CoverFlow(const TransactionGraph& g) : g_(g), source_(g.nodes().size()), sink_(source_ + 1) {
        adj_.resize(sink_ + 1);
        for (std::size_t a = 0; a < g.arcs().size(); ++a) {
            add_edge(*g.node_index(g.arcs()[a].from), *g.node_index(g.arcs()[a].to), 1, a);
        }
        for (std::size_t v = 0; v < g.nodes().size(); ++v) {
            if (g.in_arcs(v).empty() && !g.out_arcs(v).empty()) add_edge(source_, v, 0, kNoArc);
        }
        for (std::size_t v = 0; v < g.nodes().size(); ++v) {
            if (g.out_arcs(v).empty() && !g.in_arcs(v).empty()) add_edge(v, sink_, 0, kNoArc);
        }
    }

    std::vector<std::vector<std::size_t>> min_cover() {
        seed_feasible_flow();
        while (cancel_one_path()) {
        }
        return decompose();
    }

private:
    static constexpr std::size_t kNoArc = std::numeric_limits<std::size_t>::max();

    struct Edge {
        std::size_t from;
        std::size_t to;
        long lower;
        long flow;
        std::size_t arc;
    };

    void add_edge(std::size_t from, std::size_t to, long lower, std::size_t arc) {
        adj_[from].push_back(edges_.size());
        radj_[to].push_back(edges_.size());
        edges_.push_back({from, to, lower, 0, arc});
    }

    std::size_t edge_of_arc(std::size_t arc) const {
        // Arc edges are added first, in arc order.
        return arc;
    }

    // One unit through each arc that has no flow yet, routed along the first
    // in-arcs back to a source and first out-arcs forward to a sink.
    void seed_feasible_flow() {
        for (std::size_t a = 0; a < g_.arcs().size(); ++a) {
            if (edges_[edge_of_arc(a)].flow > 0) continue;
            std::vector<std::size_t> path{edge_of_arc(a)};
            std::size_t v = edges_[edge_of_arc(a)].from;
            while (!g_.in_arcs(v).empty()) {
                const std::size_t in = g_.in_arcs(v).front();
                path.push_back(edge_of_arc(in));
                v = edges_[edge_of_arc(in)].from;
            }
            path.push_back(find_edge(source_, v));
            v = edges_[edge_of_arc(a)].to;
            while (!g_.out_arcs(v).empty()) {
                const std::size_t out = g_.out_arcs(v).front();
                path.push_back(edge_of_arc(out));
                v = edges_[edge_of_arc(out)].to;
            }
            path.push_back(find_edge(v, sink_));
            for (std::size_t e : path) ++edges_[e].flow;
        }
    }

    std::size_t find_edge(std::size_t from, std::size_t to) const {
        for (std::size_t e : adj_[from]) {
            if (edges_[e].to == to) return e;
        }
        throw Error(ErrorCode::UncoverableArc, "no terminal edge for node " + g_.nodes()[from == source_ ? to : from]);
    }

    // Finds a residual path sink -> source (breadth first) and pushes one unit
    // back along it, reducing the total flow by one.
    bool cancel_one_path() {
        const std::size_t n = sink_ + 1;
        // parent[v] = (edge, forward?) used to reach v
        std::vector<std::pair<std::size_t, bool>> parent(n, {kNoArc, false});
        std::vector<bool> seen(n, false);
        std::deque<std::size_t> queue{sink_};
        seen[sink_] = true;
        while (!queue.empty() && !seen[source_]) {
            const std::size_t v = queue.front();
            queue.pop_front();
            // Forward residual: increase flow on v -> w (unbounded).
            for (std::size_t e : adj_[v]) {
                const std::size_t w = edges_[e].to;
                if (!seen[w]) {
                    seen[w] = true;
                    parent[w] = {e, true};
                    queue.push_back(w);
                }
            }
            // Backward residual: decrease flow on u -> v while above its lower bound.
            for (std::size_t e : radj_[v]) {
                const std::size_t u = edges_[e].from;
                if (!seen[u] && edges_[e].flow > edges_[e].lower) {
                    seen[u] = true;
                    parent[u] = {e, false};
                    queue.push_back(u);
                }
            }
        }
        if (!seen[source_]) return false;
        for (std::size_t v = source_; v != sink_;) {
            const auto [e, forward] = parent[v];
            edges_[e].flow += forward ? 1 : -1;
            v = forward ? edges_[e].from : edges_[e].to;
        }
        return true;
    }

    std::vector<std::vector<std::size_t>> decompose() {
        std::vector<std::vector<std::size_t>> paths;
        while (true) {
            std::size_t v = source_;
            std::vector<std::size_t> arcs;
            bool any = false;
            while (v != sink_) {
                std::size_t next = kNoArc;
                for (std::size_t e : adj_[v]) {
                    if (edges_[e].flow > 0) {
                        next = e;
                        break;
                    }
                }
                if (next == kNoArc) break;
                any = true;
                --edges_[next].flow;
                if (edges_[next].arc != kNoArc) arcs.push_back(edges_[next].arc);
                v = edges_[next].to;
            }
            if (!any) break;
            paths.push_back(std::move(arcs));
        }
        return paths;
    }

    const TransactionGraph& g_;
    std::size_t source_;
    std::size_t sink_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> adj_;
    std::vector<std::vector<std::size_t>> radj_ = std::vector<std::vector<std::size_t>>(sink_ + 1);
};

std::vector<std::vector<std::size_t>> partition_of(const ActivationMatrix& m) {
    return audit_matrix(m).equivalence_classes;
}

}  // namespace

std::vector<TestSegment> synth_tests(const TransactionGraph& g) {
    require_valid(g);
    auto arc_paths = CoverFlow(g).min_cover();

    std::vector<bool> covered(g.arcs().size(), false);
    for (const auto& p : arc_paths) {
        for (std::size_t a : p) covered[a] = true;
    }
    for (std::size_t a = 0; a < covered.size(); ++a) {
        if (!covered[a]) throw Error(ErrorCode::UncoverableArc, g.arcs()[a].id);
    }

    // (arc sequence, start node) so isolated nodes order among themselves.
    std::vector<std::pair<std::vector<std::size_t>, std::size_t>> keyed;
    for (auto& p : arc_paths) {
        const std::size_t start = *g.node_index(g.arcs()[p.front()].from);
        keyed.emplace_back(std::move(p), start);
    }
    for (std::size_t v = 0; v < g.nodes().size(); ++v) {
        if (g.in_arcs(v).empty() && g.out_arcs(v).empty()) keyed.emplace_back(std::vector<std::size_t>{}, v);
    }
    std::sort(keyed.begin(), keyed.end());

    std::vector<TestSegment> tests;
    for (const auto& [arcs, start] : keyed) {
        TestSegment t;
        t.id = "T" + std::to_string(tests.size() + 1);
        t.path.push_back(g.nodes()[start]);
        for (std::size_t a : arcs) {
            t.path.push_back(g.arcs()[a].to);
            t.blocks.push_back(g.arcs()[a].id);
        }
        tests.push_back(std::move(t));
    }
    return tests;
}

std::vector<NodeId> MonitorPlan::all_monitors() const {
    std::vector<NodeId> out = base_monitors;
    out.insert(out.end(), added_monitors.begin(), added_monitors.end());
    return out;
}

MonitorPlan synth_monitors(const TransactionGraph& g, const std::vector<TestSegment>& tests) {
    require_valid(g);
    const auto features = structural_features(g);
    MonitorPlan plan;
    plan.base_monitors = features.sinks;

    std::set<NodeId> on_tests;
    for (const auto& t : tests) on_tests.insert(t.path.begin(), t.path.end());
    std::vector<NodeId> candidates;
    for (const auto& v : features.transit_nodes) {
        if (on_tests.contains(v)) candidates.push_back(v);
    }

    std::vector<NodeId> current = plan.base_monitors;
    auto classes = partition_of(build_matrix(g.with_monitors(current), tests));
    auto non_singleton = [](const auto& parts) {
        return std::any_of(parts.begin(), parts.end(), [](const auto& c) { return c.size() > 1; });
    };

    while (non_singleton(classes) && !candidates.empty()) {
        std::size_t best = 0;
        std::size_t best_splits = 0;
        std::vector<std::vector<std::size_t>> best_classes;
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            auto trial = current;
            trial.push_back(candidates[c]);
            auto refined = partition_of(build_matrix(g.with_monitors(trial), tests));
            std::vector<std::size_t> class_of(g.arcs().size());
            for (std::size_t k = 0; k < refined.size(); ++k) {
                for (std::size_t j : refined[k]) class_of[j] = k;
            }
            std::size_t splits = 0;
            for (const auto& cls : classes) {
                if (cls.size() < 2) continue;
                const bool split = std::any_of(cls.begin(), cls.end(),
                                               [&](std::size_t j) { return class_of[j] != class_of[cls.front()]; });
                splits += split ? 1 : 0;
            }
            // Candidates are in node declaration order; strict > keeps the first on ties.
            if (splits > best_splits) {
                best = c;
                best_splits = splits;
                best_classes = std::move(refined);
            }
        }
        if (best_splits == 0) break;
        current.push_back(candidates[best]);
        plan.added_monitors.push_back(candidates[best]);
        candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(best));
        classes = std::move(best_classes);
    }

    const auto final_matrix = build_matrix(g.with_monitors(current), tests);
    plan.resulting_classes = class_block_ids(final_matrix, classes);
    return plan;
}

std::vector<DiagnosisFunction> synth_logic(const ActivationMatrix& m, LogicMode mode) {
    if (mode == LogicMode::PositiveOnly) {
        for (const auto& cls : audit_matrix(m).equivalence_classes) {
            if (cls.size() > 1) {
                std::string members;
                for (std::size_t j : cls) members += (members.empty() ? "" : ",") + m.cols()[j];
                throw Error(ErrorCode::EquivalentColumns, "columns {" + members + "} are identical");
            }
        }
    }
    std::vector<DiagnosisFunction> out;
    out.reserve(m.col_count());
    for (std::size_t j = 0; j < m.col_count(); ++j) {
        DiagnosisFunction f;
        f.block = m.cols()[j];
        for (std::size_t i = 0; i < m.row_count(); ++i) {
            if (m.bit(i, j)) {
                f.positive_literals.push_back(m.rows()[i]);
            } else if (mode == LogicMode::FullMinterm) {
                f.negative_literals.push_back(m.rows()[i]);
            }
        }
        out.push_back(std::move(f));
    }
    return out;
}

bool evaluate(const DiagnosisFunction& f, const ActivationMatrix& m, const ResponseVector& r) {
    if (r.size() != m.row_count()) throw Error(ErrorCode::LengthMismatch, "response length differs from rows");
    auto row_of = [&](const RowKey& key) {
        auto i = m.row_index(key);
        if (!i) throw Error(ErrorCode::UnknownTest, to_string(key));
        return *i;
    };
    for (const auto& key : f.positive_literals) {
        if (!r.test(row_of(key))) return false;
    }
    for (const auto& key : f.negative_literals) {
        if (r.test(row_of(key))) return false;
    }
    return true;
}

std::string render_function(const DiagnosisFunction& f) {
    std::string out = f.block + " =";
    bool first = true;
    auto lit = [&](const RowKey& key, char value) {
        out += first ? " " : " & ";
        out += to_string(key) + "=" + value;
        first = false;
    };
    for (const auto& key : f.positive_literals) lit(key, '1');
    for (const auto& key : f.negative_literals) lit(key, '0');
    if (first) out += " 1";
    return out;
}

std::string_view to_string(RuleStatus s) {
    switch (s) {
        case RuleStatus::Pass: return "pass";
        case RuleStatus::Fail: return "fail";
        case RuleStatus::Advisory: return "advisory";
        case RuleStatus::NotApplicable: return "n/a";
    }
    return "unknown";
}

namespace {

std::string join(const std::vector<std::string>& items, const char* sep = ",") {
    std::string out;
    for (const auto& s : items) out += (out.empty() ? "" : sep) + s;
    return out;
}

}  // namespace

RuleReport rule_check(const TransactionGraph& g, const std::vector<TestSegment>& tests,
                      const std::vector<NodeId>& monitors) {
    require_valid(g);
    const auto features = structural_features(g);
    const std::set<NodeId> monitor_set(monitors.begin(), monitors.end());
    RuleReport report;
    report.rules.resize(8);
    for (int k = 0; k < 8; ++k) report.rules[static_cast<std::size_t>(k)].rule = k + 1;

    // Resolve every test once; a broken test is evidence against rule 1.
    std::vector<std::vector<std::size_t>> test_arcs;
    std::vector<std::string> broken;
    std::set<NodeId> nodes_hit;
    std::vector<bool> arc_hit(g.arcs().size(), false);
    for (const auto& t : tests) {
        try {
            test_arcs.push_back(arc_indices_on_path(g, t));
            for (std::size_t a : test_arcs.back()) arc_hit[a] = true;
            nodes_hit.insert(t.path.begin(), t.path.end());
        } catch (const Error&) {
            test_arcs.emplace_back();
            broken.push_back(t.id);
        }
    }

    {
        auto& r = report.rules[0];
        for (std::size_t a = 0; a < arc_hit.size(); ++a) {
            if (!arc_hit[a]) r.items.push_back(g.arcs()[a].id);
        }
        for (const auto& v : g.nodes()) {
            if (!nodes_hit.contains(v)) r.items.push_back(v);
        }
        r.items.insert(r.items.end(), broken.begin(), broken.end());
        const std::size_t minimum = synth_tests(g).size();
        r.status = r.items.empty() ? RuleStatus::Pass : RuleStatus::Fail;
        r.evidence = std::to_string(tests.size()) + " tests, minimum cover " + std::to_string(minimum) +
                     (r.items.empty() ? "; all arcs and nodes covered" : "; uncovered or invalid: " + join(r.items));
    }
    {
        auto& r = report.rules[1];
        for (const auto& s : features.sinks) {
            if (!monitor_set.contains(s)) r.items.push_back(s);
        }
        r.status = r.items.empty() ? RuleStatus::Pass : RuleStatus::Fail;
        r.evidence = "sinks {" + join(features.sinks) + "}" +
                     (r.items.empty() ? " all monitored" : ", unmonitored {" + join(r.items) + "}");
    }
    {
        auto& r = report.rules[2];
        r.items = features.transit_nodes;
        std::vector<std::string> open;
        for (const auto& v : features.transit_nodes) {
            if (!monitor_set.contains(v)) open.push_back(v);
        }
        if (features.transit_nodes.empty()) {
            r.status = RuleStatus::NotApplicable;
            r.evidence = "no transit nodes";
        } else {
            r.status = open.empty() ? RuleStatus::Pass : RuleStatus::Advisory;
            r.evidence = "transit nodes {" + join(features.transit_nodes) + "}" +
                         (open.empty() ? " all monitored" : ", candidates for added monitors {" + join(open) + "}");
        }
    }

    // Rows and columns for rules 4 and 5; monitors outside the graph are
    // ignored here (rule 2 already reports sinks).
    std::vector<NodeId> valid_monitors;
    for (const auto& v : monitors) {
        if (g.node_index(v)) valid_monitors.push_back(v);
    }
    std::vector<TestSegment> good_tests;
    for (const auto& t : tests) {
        if (std::find(broken.begin(), broken.end(), t.id) == broken.end()) good_tests.push_back(t);
    }
    const auto m = build_matrix(g.with_monitors(valid_monitors), good_tests);

    {
        auto& r = report.rules[3];
        std::size_t forks = 0;
        for (std::size_t v = 0; v < g.nodes().size(); ++v) {
            const auto& outs = g.out_arcs(v);
            if (outs.size() < 2) continue;
            ++forks;
            std::set<BitVector> seen;
            for (std::size_t a : outs) {
                const BitVector& col = m.column(a);
                if (col.none() || !seen.insert(col).second) r.items.push_back(g.arcs()[a].id);
            }
        }
        if (forks == 0) {
            r.status = RuleStatus::NotApplicable;
            r.evidence = "no branching nodes";
        } else {
            r.status = r.items.empty() ? RuleStatus::Pass : RuleStatus::Advisory;
            r.evidence = std::to_string(forks) + " branching nodes" +
                         (r.items.empty() ? "; every branch observed separately"
                                          : "; branches not separately observed: " + join(r.items));
        }
    }
    {
        auto& r = report.rules[4];
        const std::set<NodeId> transit(features.transit_nodes.begin(), features.transit_nodes.end());
        std::size_t chains = 0;
        for (std::size_t a = 0; a < g.arcs().size(); ++a) {
            const Arc& first = g.arcs()[a];
            if (transit.contains(first.from) || !transit.contains(first.to)) continue;
            // Maximal chain starting at arc a through consecutive transit nodes.
            std::vector<std::string> blocks{first.id};
            std::vector<NodeId> interior;
            NodeId v = first.to;
            while (transit.contains(v)) {
                interior.push_back(v);
                const Arc& next = g.arcs()[g.out_arcs(*g.node_index(v)).front()];
                blocks.push_back(next.id);
                v = next.to;
            }
            ++chains;
            const auto monitored = std::count_if(interior.begin(), interior.end(),
                                                 [&](const NodeId& n) { return monitor_set.contains(n); });
            if (static_cast<std::size_t>(monitored) + 1 < blocks.size()) {
                r.items.push_back(join(blocks, "-") + " (" + std::to_string(monitored) + "/" +
                                  std::to_string(interior.size()) + " interior monitors)");
            }
        }
        if (chains == 0) {
            r.status = RuleStatus::NotApplicable;
            r.evidence = "no serial chains";
        } else {
            r.status = r.items.empty() ? RuleStatus::Pass : RuleStatus::Advisory;
            r.evidence = std::to_string(chains) + " serial chains" +
                         (r.items.empty() ? "; all interior nodes monitored" : "; under-monitored: " + join(r.items, "; "));
        }
    }
    {
        auto& r = report.rules[5];
        for (std::size_t v = 0; v < g.nodes().size(); ++v) {
            if (g.in_arcs(v).size() != g.out_arcs(v).size()) r.items.push_back(g.nodes()[v]);
        }
        r.status = r.items.empty() ? RuleStatus::NotApplicable : RuleStatus::Pass;
        r.evidence = r.items.empty() ? "every node has equal in/out degree"
                                     : "self-diagnosable nodes {" + join(r.items) + "}";
    }
    {
        auto& r = report.rules[6];
        for (const auto& v : g.nodes()) {
            if (!nodes_hit.contains(v)) r.items.push_back(v);
        }
        r.status = r.items.empty() ? RuleStatus::Pass : RuleStatus::Fail;
        r.evidence = std::to_string(g.nodes().size() - r.items.size()) + "/" + std::to_string(g.nodes().size()) +
                     " nodes reached by tests";
    }
    {
        auto& r = report.rules[7];
        if (g.arcs().empty()) {
            r.status = RuleStatus::NotApplicable;
            r.evidence = "no blocks";
        } else {
            const std::size_t bits = ceil_log2(g.arcs().size());
            const std::size_t budget = tests.size() * monitor_set.size();
            r.items = {std::to_string(bits), std::to_string(budget)};
            r.status = bits <= budget ? RuleStatus::Pass : RuleStatus::Fail;
            r.evidence = "ceil(log2 N) = " + std::to_string(bits) + " vs |T|x|A| = " + std::to_string(budget) +
                         (bits == budget ? " (optimal)" : "");
        }
    }
    return report;
}

}  // namespace txdiag
