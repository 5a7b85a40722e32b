#include "txdiag/graph.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "txdiag/error.hpp"

namespace txdiag {

TransactionGraph::TransactionGraph(std::vector<NodeId> nodes, std::vector<Arc> arcs,
                                   std::vector<NodeId> monitors)
    : nodes_(std::move(nodes)), arcs_(std::move(arcs)), monitors_(std::move(monitors)) {
    out_.resize(nodes_.size());
    in_.resize(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) node_pos_.try_emplace(nodes_[i], i);
    for (std::size_t a = 0; a < arcs_.size(); ++a) {
        arc_pos_.try_emplace(arcs_[a].id, a);
        auto from = node_index(arcs_[a].from);
        auto to = node_index(arcs_[a].to);
        if (from && to) {
            out_[*from].push_back(a);
            in_[*to].push_back(a);
        }
    }
    monitor_set_.insert(monitors_.begin(), monitors_.end());
}

std::optional<std::size_t> TransactionGraph::node_index(const NodeId& id) const {
    auto it = node_pos_.find(id);
    if (it == node_pos_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> TransactionGraph::arc_index(const BlockId& id) const {
    auto it = arc_pos_.find(id);
    if (it == arc_pos_.end()) return std::nullopt;
    return it->second;
}

bool TransactionGraph::is_monitor(const NodeId& id) const { return monitor_set_.contains(id); }

TransactionGraph TransactionGraph::with_monitors(std::vector<NodeId> monitors) const {
    return TransactionGraph(nodes_, arcs_, std::move(monitors));
}

namespace {

// Kahn's algorithm over the arcs whose endpoints resolve. Returns the order and
// leaves `stuck` holding nodes that never became ready (i.e. on or behind a cycle).
std::vector<std::size_t> kahn(const TransactionGraph& g, std::vector<std::size_t>* stuck) {
    const std::size_t n = g.nodes().size();
    std::vector<std::size_t> indeg(n, 0);
    for (std::size_t v = 0; v < n; ++v) indeg[v] = g.in_arcs(v).size();

    // Ready set ordered by declaration index for a deterministic order.
    std::set<std::size_t> ready;
    for (std::size_t v = 0; v < n; ++v) {
        if (indeg[v] == 0) ready.insert(v);
    }
    std::vector<std::size_t> order;
    order.reserve(n);
    while (!ready.empty()) {
        const std::size_t v = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(v);
        for (std::size_t a : g.out_arcs(v)) {
            const std::size_t w = *g.node_index(g.arcs()[a].to);
            if (--indeg[w] == 0) ready.insert(w);
        }
    }
    if (stuck != nullptr) {
        stuck->clear();
        for (std::size_t v = 0; v < n; ++v) {
            if (indeg[v] != 0) stuck->push_back(v);
        }
    }
    return order;
}

}  // namespace

ValidationReport validate_graph(const TransactionGraph& g) {
    ValidationReport report;
    auto add = [&](ViolationKind kind, std::string msg) {
        report.violations.push_back({kind, std::move(msg)});
    };

    std::set<NodeId> seen_nodes;
    for (const auto& node : g.nodes()) {
        if (node.empty()) add(ViolationKind::EmptyId, "node with empty id");
        if (!seen_nodes.insert(node).second) add(ViolationKind::DuplicateNode, "duplicate node '" + node + "'");
    }
    std::set<BlockId> seen_blocks;
    for (const auto& arc : g.arcs()) {
        if (arc.id.empty()) add(ViolationKind::EmptyId, "arc with empty block id");
        if (!seen_blocks.insert(arc.id).second) {
            add(ViolationKind::DuplicateBlock, "duplicate block '" + arc.id + "'");
        }
        for (const NodeId* end : {&arc.from, &arc.to}) {
            if (!g.node_index(*end)) {
                add(ViolationKind::DanglingEndpoint,
                    "block '" + arc.id + "' references undeclared node '" + *end + "'");
            }
        }
    }
    for (const auto& m : g.monitors()) {
        if (!g.node_index(m)) add(ViolationKind::MonitorNotNode, "monitor '" + m + "' is not a node");
    }

    std::vector<std::size_t> stuck;
    kahn(g, &stuck);
    if (!stuck.empty()) {
        std::string msg = "cycle through nodes";
        for (std::size_t v : stuck) msg += " " + g.nodes()[v];
        add(ViolationKind::Cycle, msg);
    }
    return report;
}

void require_valid(const TransactionGraph& g) {
    auto report = validate_graph(g);
    if (!report.ok()) throw Error(ErrorCode::InvalidGraph, report.violations.front().message);
}

std::vector<std::size_t> topological_order(const TransactionGraph& g) {
    std::vector<std::size_t> stuck;
    auto order = kahn(g, &stuck);
    if (!stuck.empty()) throw Error(ErrorCode::InvalidGraph, "graph contains a cycle");
    return order;
}

std::vector<TestSegment> enumerate_paths(const TransactionGraph& g, const NodeId& from,
                                         const std::vector<NodeId>& to_set) {
    require_valid(g);
    auto start = g.node_index(from);
    if (!start) throw Error(ErrorCode::UnknownNode, from);
    std::vector<bool> is_target(g.nodes().size(), false);
    for (const auto& t : to_set) {
        auto idx = g.node_index(t);
        if (!idx) throw Error(ErrorCode::UnknownNode, t);
        is_target[*idx] = true;
    }

    std::vector<TestSegment> out;
    std::vector<NodeId> nodes{from};
    std::vector<BlockId> blocks;
    // Depth-first over out-arcs in declaration order yields the lexicographic
    // arc-index order directly; acyclicity guarantees every path is simple.
    std::function<void(std::size_t)> dfs = [&](std::size_t v) {
        if (is_target[v]) {
            out.push_back({"T" + std::to_string(out.size() + 1), nodes, blocks});
        }
        for (std::size_t a : g.out_arcs(v)) {
            const Arc& arc = g.arcs()[a];
            nodes.push_back(arc.to);
            blocks.push_back(arc.id);
            dfs(*g.node_index(arc.to));
            nodes.pop_back();
            blocks.pop_back();
        }
    };
    dfs(*start);
    return out;
}

std::vector<std::size_t> arc_indices_on_path(const TransactionGraph& g, const TestSegment& t) {
    if (t.path.empty()) throw Error(ErrorCode::InvalidPath, "test '" + t.id + "' has an empty path");
    std::set<NodeId> visited;
    for (const auto& node : t.path) {
        if (!g.node_index(node)) throw Error(ErrorCode::UnknownNode, node + " (test '" + t.id + "')");
        if (!visited.insert(node).second) {
            throw Error(ErrorCode::InvalidPath, "test '" + t.id + "' visits '" + node + "' twice");
        }
    }
    if (!t.blocks.empty() && t.blocks.size() + 1 != t.path.size()) {
        throw Error(ErrorCode::InvalidPath, "test '" + t.id + "' names " + std::to_string(t.blocks.size()) +
                                                " blocks for " + std::to_string(t.path.size()) + " nodes");
    }

    std::vector<std::size_t> out;
    out.reserve(t.path.size() - 1);
    for (std::size_t k = 0; k + 1 < t.path.size(); ++k) {
        const NodeId& from = t.path[k];
        const NodeId& to = t.path[k + 1];
        if (!t.blocks.empty()) {
            auto a = g.arc_index(t.blocks[k]);
            if (!a || g.arcs()[*a].from != from || g.arcs()[*a].to != to) {
                throw Error(ErrorCode::InvalidPath, "test '" + t.id + "': block '" + t.blocks[k] +
                                                        "' does not join " + from + " -> " + to);
            }
            out.push_back(*a);
            continue;
        }
        std::optional<std::size_t> found;
        for (std::size_t a : g.out_arcs(*g.node_index(from))) {
            if (g.arcs()[a].to != to) continue;
            if (found) {
                throw Error(ErrorCode::InvalidPath, "test '" + t.id + "': parallel arcs " + from + " -> " + to +
                                                        " need an explicit block");
            }
            found = a;
        }
        if (!found) throw Error(ErrorCode::InvalidPath, "test '" + t.id + "': no arc " + from + " -> " + to);
        out.push_back(*found);
    }
    return out;
}

std::vector<BlockId> blocks_on_path(const TransactionGraph& g, const TestSegment& t) {
    std::vector<BlockId> out;
    for (std::size_t a : arc_indices_on_path(g, t)) out.push_back(g.arcs()[a].id);
    return out;
}

StructuralFeatures structural_features(const TransactionGraph& g) {
    StructuralFeatures f;
    for (std::size_t v = 0; v < g.nodes().size(); ++v) {
        const std::size_t in = g.in_arcs(v).size();
        const std::size_t out = g.out_arcs(v).size();
        if (in == 0) f.sources.push_back(g.nodes()[v]);
        if (out == 0) f.sinks.push_back(g.nodes()[v]);
        if (in == 1 && out == 1) f.transit_nodes.push_back(g.nodes()[v]);
    }
    f.n_arcs = g.arcs().size();
    f.n_transit = f.transit_nodes.size();
    return f;
}

}  // namespace txdiag
