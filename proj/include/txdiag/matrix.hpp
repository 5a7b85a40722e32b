#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "txdiag/bitvec.hpp"
#include "txdiag/graph.hpp"

namespace txdiag {

// One matrix row: a test segment observed at one monitor node.
struct RowKey {
    std::string test;
    NodeId monitor;

    auto operator<=>(const RowKey&) const = default;
};

std::string to_string(const RowKey& key);  // "(test,monitor)"

// (test, monitor) x block bit matrix. Immutable once built; rows and columns
// are stored both row-major and column-major so either axis is a word scan.
class ActivationMatrix {
public:
    ActivationMatrix() = default;
    // Each entry of `row_bits` must have cols.size() bits. Throws DuplicateRow,
    // LengthMismatch, or InvalidArgument on duplicate/empty column ids.
    ActivationMatrix(std::vector<RowKey> rows, std::vector<BlockId> cols, std::vector<BitVector> row_bits);

    std::size_t row_count() const noexcept { return rows_.size(); }
    std::size_t col_count() const noexcept { return cols_.size(); }
    const std::vector<RowKey>& rows() const noexcept { return rows_; }
    const std::vector<BlockId>& cols() const noexcept { return cols_; }

    bool bit(std::size_t row, std::size_t col) const { return row_bits_[row].test(col); }
    const BitVector& row(std::size_t i) const { return row_bits_[i]; }
    const BitVector& column(std::size_t j) const { return col_bits_[j]; }

    std::optional<std::size_t> col_index(const BlockId& b) const;
    std::optional<std::size_t> row_index(const RowKey& key) const;

    bool operator==(const ActivationMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && row_bits_ == other.row_bits_;
    }

private:
    std::vector<RowKey> rows_;
    std::vector<BlockId> cols_;
    std::vector<BitVector> row_bits_;
    std::vector<BitVector> col_bits_;
    std::map<RowKey, std::size_t> row_pos_;
    std::map<BlockId, std::size_t> col_pos_;
};

struct MatrixAudit {
    bool coverage_ok = true;
    std::vector<BlockId> uncovered;
    // Groups of row indices sharing identical bits (size >= 2 only).
    std::vector<std::vector<std::size_t>> duplicate_rows;
    // Partition of column indices into identical-column classes, each class
    // ascending, classes ordered by their smallest member.
    std::vector<std::vector<std::size_t>> equivalence_classes;
    std::size_t log2_ceil = 0;  // ceil(log2(column count)); 0 for <= 1 column
    std::size_t row_count = 0;
    bool log2_bound_ok = true;

    bool all_columns_distinct() const noexcept {
        for (const auto& c : equivalence_classes) {
            if (c.size() > 1) return false;
        }
        return true;
    }
};

// ceil(log2(n)) for n >= 1.
std::size_t ceil_log2(std::size_t n);

// Rows for every (test, monitor) pair where the monitor lies on the test's
// path: tests in the given order, monitors in node declaration order.
std::vector<RowKey> assign_monitors(const TransactionGraph& g, const std::vector<TestSegment>& tests,
                                    const std::vector<NodeId>& monitors);

// Row (T, A) activates the blocks on T's path prefix ending at node A.
ActivationMatrix build_matrix(const TransactionGraph& g, const std::vector<TestSegment>& tests,
                              const std::vector<RowKey>& assignment);

// Convenience: build_matrix over assign_monitors(g, tests, g.monitors()).
ActivationMatrix build_matrix(const TransactionGraph& g, const std::vector<TestSegment>& tests);

MatrixAudit audit_matrix(const ActivationMatrix& m);

// Column of block b in row order. Throws UnknownBlock.
const BitVector& column(const ActivationMatrix& m, const BlockId& b);

// Block ids of each class, for reporting.
std::vector<std::vector<BlockId>> class_block_ids(const ActivationMatrix& m,
                                                  const std::vector<std::vector<std::size_t>>& classes);

}  // namespace txdiag
