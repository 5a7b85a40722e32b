#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace txdiag {

using NodeId = std::string;
using BlockId = std::string;

// A functional block: one arc of the transaction graph.
struct Arc {
    BlockId id;
    NodeId from;
    NodeId to;

    bool operator==(const Arc&) const = default;
};

// One activation path. `blocks` is either empty (plain node form; each hop is
// resolved to the unique arc between its endpoints) or names the arc of every
// hop explicitly, which is required when parallel arcs exist.
struct TestSegment {
    std::string id;
    std::vector<NodeId> path;
    std::vector<BlockId> blocks;

    bool operator==(const TestSegment&) const = default;
};

// Directed graph whose nodes are observable states and whose arcs are
// functional blocks. Construction never fails; use validate_graph() to check
// well-formedness. Lookups tolerate malformed input (first declaration wins).
class TransactionGraph {
public:
    TransactionGraph() = default;
    TransactionGraph(std::vector<NodeId> nodes, std::vector<Arc> arcs, std::vector<NodeId> monitors);

    const std::vector<NodeId>& nodes() const noexcept { return nodes_; }
    const std::vector<Arc>& arcs() const noexcept { return arcs_; }
    const std::vector<NodeId>& monitors() const noexcept { return monitors_; }

    std::optional<std::size_t> node_index(const NodeId& id) const;
    std::optional<std::size_t> arc_index(const BlockId& id) const;
    bool is_monitor(const NodeId& id) const;

    // Arc indices leaving / entering a node, in declaration order.
    const std::vector<std::size_t>& out_arcs(std::size_t node) const { return out_[node]; }
    const std::vector<std::size_t>& in_arcs(std::size_t node) const { return in_[node]; }

    // Copy of this graph with a different monitor set.
    TransactionGraph with_monitors(std::vector<NodeId> monitors) const;

    bool operator==(const TransactionGraph& other) const {
        return nodes_ == other.nodes_ && arcs_ == other.arcs_ && monitors_ == other.monitors_;
    }

private:
    std::vector<NodeId> nodes_;
    std::vector<Arc> arcs_;
    std::vector<NodeId> monitors_;
    std::vector<std::vector<std::size_t>> out_;
    std::vector<std::vector<std::size_t>> in_;
    std::unordered_map<NodeId, std::size_t> node_pos_;
    std::unordered_map<BlockId, std::size_t> arc_pos_;
    std::unordered_set<NodeId> monitor_set_;
};

enum class ViolationKind { EmptyId, DuplicateNode, DuplicateBlock, DanglingEndpoint, Cycle, MonitorNotNode };

struct Violation {
    ViolationKind kind;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const noexcept { return violations.empty(); }
};

struct StructuralFeatures {
    std::vector<NodeId> sources;
    std::vector<NodeId> sinks;
    std::vector<NodeId> transit_nodes;
    std::size_t n_arcs = 0;
    std::size_t n_transit = 0;
};

ValidationReport validate_graph(const TransactionGraph& g);

// Throws InvalidGraph with the first violation when g is not well-formed.
void require_valid(const TransactionGraph& g);

// Every simple path from `from` to any node of `to_set`, ordered
// lexicographically by the declaration index of the arcs traversed. Returned
// segments carry explicit blocks and ids T1, T2, ...
std::vector<TestSegment> enumerate_paths(const TransactionGraph& g, const NodeId& from,
                                         const std::vector<NodeId>& to_set);

// Arc ids traversed by t, in order. Throws InvalidPath / UnknownNode.
std::vector<BlockId> blocks_on_path(const TransactionGraph& g, const TestSegment& t);

// Same as blocks_on_path but returns arc indices.
std::vector<std::size_t> arc_indices_on_path(const TransactionGraph& g, const TestSegment& t);

StructuralFeatures structural_features(const TransactionGraph& g);

// Node indices in a topological order (declaration order among ready nodes).
// Throws InvalidGraph on a cycle.
std::vector<std::size_t> topological_order(const TransactionGraph& g);

}  // namespace txdiag
