#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "txdiag/matrix.hpp"
#include "txdiag/xor_diagnosis.hpp"

namespace txdiag {

// A level of the diagnosis multi-tree: an activation matrix whose blocks may
// each expand into a finer matrix one level down. Children are owned, so the
// tree is finite and acyclic by construction.
class DiagnosisTree {
public:
    explicit DiagnosisTree(ActivationMatrix matrix);

    DiagnosisTree(DiagnosisTree&&) noexcept = default;
    DiagnosisTree& operator=(DiagnosisTree&&) noexcept = default;

    // Attaches `child` under block b (which must be a column of this matrix)
    // and relevels the child subtree. Throws UnknownBlock / InvalidArgument.
    DiagnosisTree& add_child(const BlockId& b, DiagnosisTree child);

    const ActivationMatrix& matrix() const noexcept { return matrix_; }
    const DiagnosisTree* child(const BlockId& b) const;
    const std::map<BlockId, std::unique_ptr<DiagnosisTree>>& children() const noexcept { return children_; }
    unsigned level() const noexcept { return level_; }
    std::size_t size() const;  // node count

private:
    void set_level(unsigned level);

    ActivationMatrix matrix_;
    std::map<BlockId, std::unique_ptr<DiagnosisTree>> children_;
    unsigned level_ = 0;
};

// Position of a tree node: its depth and its dotted path from the root,
// e.g. "root", "root.B4", "root.B4.B4.2".
struct TreeLocation {
    unsigned level = 0;
    std::string branch;
};

class ResponseProvider {
public:
    virtual ~ResponseProvider() = default;
    virtual ResponseVector response(const TreeLocation& where, const ActivationMatrix& matrix) const = 0;
};

// Responses looked up by branch path; missing branches answer all-zero.
class MapResponseProvider : public ResponseProvider {
public:
    explicit MapResponseProvider(std::map<std::string, ResponseVector> responses)
        : responses_(std::move(responses)) {}
    ResponseVector response(const TreeLocation& where, const ActivationMatrix& matrix) const override;

private:
    std::map<std::string, ResponseVector> responses_;
};

// Simulates a single faulty leaf: fault_path[r] is the faulty block at level
// r. Nodes on the fault path respond with that block's column, all others are
// fault-free.
class FaultPathProvider : public ResponseProvider {
public:
    explicit FaultPathProvider(std::vector<BlockId> fault_path) : fault_path_(std::move(fault_path)) {}
    ResponseVector response(const TreeLocation& where, const ActivationMatrix& matrix) const override;

private:
    std::vector<BlockId> fault_path_;
};

enum class Policy { Time, Money };

struct CostPolicy {
    Policy kind = Policy::Money;
    std::optional<unsigned> max_depth;  // unset: unlimited
};

enum class OutcomeKind { FaultFree, Repair, TestCorrectionNeeded };
enum class StepAction { ZeroResponse, Advance, Descend, Repair, Exhausted };

std::string_view to_string(OutcomeKind kind);
std::string_view to_string(StepAction action);

struct TraceStep {
    unsigned level = 0;
    std::string branch;
    BlockId column;  // empty for ZeroResponse / Exhausted
    std::size_t distance = 0;
    StepAction action = StepAction::Advance;
    std::vector<BlockId> equivalents;  // other columns identical to `column`

    bool operator==(const TraceStep&) const = default;
};

struct TraversalOutcome {
    OutcomeKind kind = OutcomeKind::FaultFree;
    std::vector<BlockId> repair_path;  // root to repaired block
    unsigned correction_level = 0;
    std::string correction_branch;
    std::vector<TraceStep> trace;
    std::size_t xor_evaluations = 0;  // bit XORs performed (rows per column examined)
    std::size_t visited_cells = 0;    // sum of rows x cols over visited nodes
    std::size_t visited_nodes = 0;
};

// Depth-first scan of the tree: a node whose response is all-zero is
// exonerated (fault-free at the root); otherwise its columns are scanned in
// order and the first at XOR distance 0 is repaired or descended into,
// according to the policy. No distance-0 column means the tests at that node
// need correction.
TraversalOutcome traverse(const DiagnosisTree& tree, const ResponseProvider& provider, const CostPolicy& policy);

}  // namespace txdiag
