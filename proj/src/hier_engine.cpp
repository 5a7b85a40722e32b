#include "txdiag/hier_engine.hpp"

#include "txdiag/error.hpp"

namespace txdiag {

DiagnosisTree::DiagnosisTree(ActivationMatrix matrix) : matrix_(std::move(matrix)) {}

DiagnosisTree& DiagnosisTree::add_child(const BlockId& b, DiagnosisTree child) {
    if (!matrix_.col_index(b)) throw Error(ErrorCode::UnknownBlock, b + " is not a column of this level");
    if (children_.contains(b)) throw Error(ErrorCode::InvalidArgument, "block " + b + " already has a child");
    auto node = std::make_unique<DiagnosisTree>(std::move(child));
    node->set_level(level_ + 1);
    return *children_.emplace(b, std::move(node)).first->second;
}

const DiagnosisTree* DiagnosisTree::child(const BlockId& b) const {
    auto it = children_.find(b);
    return it == children_.end() ? nullptr : it->second.get();
}

std::size_t DiagnosisTree::size() const {
    std::size_t n = 1;
    for (const auto& [_, c] : children_) n += c->size();
    return n;
}

void DiagnosisTree::set_level(unsigned level) {
    level_ = level;
    for (auto& [_, c] : children_) c->set_level(level + 1);
}

ResponseVector MapResponseProvider::response(const TreeLocation& where, const ActivationMatrix& matrix) const {
    auto it = responses_.find(where.branch);
    if (it == responses_.end()) return ResponseVector(matrix.row_count());
    return it->second;
}

ResponseVector FaultPathProvider::response(const TreeLocation& where, const ActivationMatrix& matrix) const {
    // The node is on the fault path iff its branch is "root" followed by the
    // first `level` blocks of the path.
    std::string expected = "root";
    for (unsigned r = 0; r < where.level && r < fault_path_.size(); ++r) expected += "." + fault_path_[r];
    if (where.level >= fault_path_.size() || expected != where.branch) return ResponseVector(matrix.row_count());
    return column(matrix, fault_path_[where.level]);
}

std::string_view to_string(OutcomeKind kind) {
    switch (kind) {
        case OutcomeKind::FaultFree: return "FaultFree";
        case OutcomeKind::Repair: return "Repair";
        case OutcomeKind::TestCorrectionNeeded: return "TestCorrectionNeeded";
    }
    return "Unknown";
}

std::string_view to_string(StepAction action) {
    switch (action) {
        case StepAction::ZeroResponse: return "zero-response";
        case StepAction::Advance: return "advance";
        case StepAction::Descend: return "descend";
        case StepAction::Repair: return "repair";
        case StepAction::Exhausted: return "exhausted";
    }
    return "unknown";
}

namespace {

enum class NodeResult { Exonerated, Repair, Correction };

class Traversal {
public:
    Traversal(const ResponseProvider& provider, const CostPolicy& policy, TraversalOutcome& out)
        : provider_(provider), policy_(policy), out_(out) {}

    NodeResult visit(const DiagnosisTree& node, const std::string& branch) {
        const ActivationMatrix& m = node.matrix();
        const unsigned level = node.level();
        ++out_.visited_nodes;
        out_.visited_cells += m.row_count() * m.col_count();

        const ResponseVector r = provider_.response({level, branch}, m);
        if (r.size() != m.row_count()) {
            throw Error(ErrorCode::ProviderLengthMismatch, branch + ": provider returned " + std::to_string(r.size()) +
                                                               " bits for " + std::to_string(m.row_count()) + " rows");
        }
        if (r.none()) {
            out_.trace.push_back({level, branch, {}, 0, StepAction::ZeroResponse, {}});
            return NodeResult::Exonerated;
        }

        for (std::size_t j = 0; j < m.col_count(); ++j) {
            const BlockId& block = m.cols()[j];
            const std::size_t d = m.column(j).xor_distance(r);
            out_.xor_evaluations += m.row_count();
            if (d != 0) {
                out_.trace.push_back({level, branch, block, d, StepAction::Advance, {}});
                continue;
            }
            std::vector<BlockId> equivalents;
            for (std::size_t k = 0; k < m.col_count(); ++k) {
                if (k != j && m.column(k) == m.column(j)) equivalents.push_back(m.cols()[k]);
            }

            const DiagnosisTree* child = node.child(block);
            const bool at_limit = policy_.max_depth && level >= *policy_.max_depth;
            if (policy_.kind == Policy::Time || child == nullptr || at_limit) {
                out_.trace.push_back({level, branch, block, d, StepAction::Repair, std::move(equivalents)});
                out_.repair_path.insert(out_.repair_path.begin(), block);
                return NodeResult::Repair;
            }
            out_.trace.push_back({level, branch, block, d, StepAction::Descend, std::move(equivalents)});
            switch (visit(*child, branch + "." + block)) {
                case NodeResult::Repair:
                    out_.repair_path.insert(out_.repair_path.begin(), block);
                    return NodeResult::Repair;
                case NodeResult::Correction:
                    return NodeResult::Correction;
                case NodeResult::Exonerated:
                    break;  // resume scanning this level's remaining columns
            }
        }
        out_.trace.push_back({level, branch, {}, 0, StepAction::Exhausted, {}});
        out_.correction_level = level;
        out_.correction_branch = branch;
        return NodeResult::Correction;
    }

private:
    const ResponseProvider& provider_;
    const CostPolicy& policy_;
    TraversalOutcome& out_;
};

}  // namespace

TraversalOutcome traverse(const DiagnosisTree& tree, const ResponseProvider& provider, const CostPolicy& policy) {
    TraversalOutcome out;
    switch (Traversal(provider, policy, out).visit(tree, "root")) {
        case NodeResult::Exonerated: out.kind = OutcomeKind::FaultFree; break;
        case NodeResult::Repair: out.kind = OutcomeKind::Repair; break;
        case NodeResult::Correction: out.kind = OutcomeKind::TestCorrectionNeeded; break;
    }
    return out;
}

}  // namespace txdiag
