#include "txdiag/matrix.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "txdiag/error.hpp"

namespace txdiag {

std::string to_string(const RowKey& key) { return "(" + key.test + "," + key.monitor + ")"; }

ActivationMatrix::ActivationMatrix(std::vector<RowKey> rows, std::vector<BlockId> cols,
                                   std::vector<BitVector> row_bits)
    : rows_(std::move(rows)), cols_(std::move(cols)), row_bits_(std::move(row_bits)) {
    if (row_bits_.size() != rows_.size()) {
        throw Error(ErrorCode::LengthMismatch, "row key count differs from row bit count");
    }
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (!row_pos_.try_emplace(rows_[i], i).second) {
            throw Error(ErrorCode::DuplicateRow, to_string(rows_[i]));
        }
        if (row_bits_[i].size() != cols_.size()) {
            throw Error(ErrorCode::LengthMismatch, "row " + to_string(rows_[i]) + " has " +
                                                       std::to_string(row_bits_[i].size()) + " bits, expected " +
                                                       std::to_string(cols_.size()));
        }
    }
    for (std::size_t j = 0; j < cols_.size(); ++j) {
        if (cols_[j].empty()) throw Error(ErrorCode::InvalidArgument, "empty block id");
        if (!col_pos_.try_emplace(cols_[j], j).second) {
            throw Error(ErrorCode::InvalidArgument, "duplicate block column '" + cols_[j] + "'");
        }
    }
    col_bits_.assign(cols_.size(), BitVector(rows_.size()));
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        for (std::size_t j : row_bits_[i].ones()) col_bits_[j].set(i);
    }
}

std::optional<std::size_t> ActivationMatrix::col_index(const BlockId& b) const {
    auto it = col_pos_.find(b);
    if (it == col_pos_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> ActivationMatrix::row_index(const RowKey& key) const {
    auto it = row_pos_.find(key);
    if (it == row_pos_.end()) return std::nullopt;
    return it->second;
}

std::size_t ceil_log2(std::size_t n) {
    if (n <= 1) return 0;
    return static_cast<std::size_t>(std::bit_width(n - 1));
}

std::vector<RowKey> assign_monitors(const TransactionGraph& g, const std::vector<TestSegment>& tests,
                                    const std::vector<NodeId>& monitors) {
    std::set<NodeId> wanted(monitors.begin(), monitors.end());
    std::vector<RowKey> rows;
    for (const auto& t : tests) {
        std::set<NodeId> on_path(t.path.begin(), t.path.end());
        for (const auto& node : g.nodes()) {
            if (wanted.contains(node) && on_path.contains(node)) rows.push_back({t.id, node});
        }
    }
    return rows;
}

ActivationMatrix build_matrix(const TransactionGraph& g, const std::vector<TestSegment>& tests,
                              const std::vector<RowKey>& assignment) {
    require_valid(g);
    std::map<std::string, std::size_t> test_pos;
    std::vector<std::vector<std::size_t>> test_arcs;
    for (const auto& t : tests) {
        if (!test_pos.try_emplace(t.id, test_arcs.size()).second) {
            throw Error(ErrorCode::InvalidArgument, "duplicate test id '" + t.id + "'");
        }
        test_arcs.push_back(arc_indices_on_path(g, t));
    }

    std::vector<BitVector> bits;
    bits.reserve(assignment.size());
    for (const auto& key : assignment) {
        auto tp = test_pos.find(key.test);
        if (tp == test_pos.end()) throw Error(ErrorCode::UnknownTest, key.test);
        if (!g.is_monitor(key.monitor)) throw Error(ErrorCode::UnknownMonitor, key.monitor);
        const TestSegment& t = tests[tp->second];
        auto pos = std::find(t.path.begin(), t.path.end(), key.monitor);
        if (pos == t.path.end()) {
            throw Error(ErrorCode::MonitorOffPath, key.monitor + " is not on test '" + t.id + "'");
        }
        // The prefix ending at path position p traverses the first p arcs.
        const auto prefix_arcs = static_cast<std::size_t>(pos - t.path.begin());
        BitVector row(g.arcs().size());
        for (std::size_t k = 0; k < prefix_arcs; ++k) row.set(test_arcs[tp->second][k]);
        bits.push_back(std::move(row));
    }

    std::vector<BlockId> cols;
    cols.reserve(g.arcs().size());
    for (const auto& arc : g.arcs()) cols.push_back(arc.id);
    return ActivationMatrix(assignment, std::move(cols), std::move(bits));
}

ActivationMatrix build_matrix(const TransactionGraph& g, const std::vector<TestSegment>& tests) {
    return build_matrix(g, tests, assign_monitors(g, tests, g.monitors()));
}

namespace {

// Groups indices of equal vectors; groups ordered by first index.
std::vector<std::vector<std::size_t>> group_equal(std::size_t n, const auto& vec_at) {
    std::map<BitVector, std::size_t> slot;
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < n; ++i) {
        auto [it, inserted] = slot.try_emplace(vec_at(i), groups.size());
        if (inserted) groups.emplace_back();
        groups[it->second].push_back(i);
    }
    return groups;
}

}  // namespace

MatrixAudit audit_matrix(const ActivationMatrix& m) {
    MatrixAudit audit;
    BitVector any(m.col_count());
    for (std::size_t i = 0; i < m.row_count(); ++i) any |= m.row(i);
    audit.coverage_ok = any.all();
    for (std::size_t j = 0; j < m.col_count(); ++j) {
        if (!any.test(j)) audit.uncovered.push_back(m.cols()[j]);
    }

    for (auto& group : group_equal(m.row_count(), [&](std::size_t i) -> const BitVector& { return m.row(i); })) {
        if (group.size() > 1) audit.duplicate_rows.push_back(std::move(group));
    }
    audit.equivalence_classes =
        group_equal(m.col_count(), [&](std::size_t j) -> const BitVector& { return m.column(j); });

    audit.row_count = m.row_count();
    audit.log2_ceil = m.col_count() == 0 ? 0 : ceil_log2(m.col_count());
    audit.log2_bound_ok = audit.row_count >= audit.log2_ceil;
    return audit;
}

const BitVector& column(const ActivationMatrix& m, const BlockId& b) {
    auto j = m.col_index(b);
    if (!j) throw Error(ErrorCode::UnknownBlock, b);
    return m.column(*j);
}

std::vector<std::vector<BlockId>> class_block_ids(const ActivationMatrix& m,
                                                  const std::vector<std::vector<std::size_t>>& classes) {
    std::vector<std::vector<BlockId>> out;
    out.reserve(classes.size());
    for (const auto& c : classes) {
        auto& ids = out.emplace_back();
        for (std::size_t j : c) ids.push_back(m.cols()[j]);
    }
    return out;
}

}  // namespace txdiag
