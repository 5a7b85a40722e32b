#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "txdiag/bitvec.hpp"
#include "txdiag/matrix.hpp"

namespace txdiag {

// Observed monitor outcomes, one bit per matrix row in row order.
using ResponseVector = BitVector;

enum class VerdictKind { FaultFree, Candidates, TestDeficient };

std::string_view to_string(VerdictKind kind);

struct Candidate {
    std::vector<BlockId> blocks;  // one equivalence class, in column order
    std::size_t distance = 0;     // XOR (Hamming) distance to the response

    bool operator==(const Candidate&) const = default;
};

struct DiagnosisVerdict {
    VerdictKind kind = VerdictKind::FaultFree;
    // All classes, ascending by distance then by first column index.
    std::vector<Candidate> candidates;
    // Set when the best distance exceeds the configured threshold.
    bool deficiency_note = false;
    // Minimal OR-covers (class representatives); filled by diagnose() only.
    std::vector<std::vector<BlockId>> covers;

    bool operator==(const DiagnosisVerdict&) const = default;
};

struct DiagnoseOptions {
    std::size_t k_max = 3;
    std::uint64_t budget = 1'000'000;  // max subsets examined by the cover search
    std::size_t deficiency_threshold = 0;
};

// Ranks every column-equivalence class by XOR distance to r.
DiagnosisVerdict diagnose_single(const ActivationMatrix& m, const ResponseVector& r,
                                 std::size_t deficiency_threshold = 0);

// Every inclusion-minimal set of at most k_max class representatives whose
// columns OR to exactly r; ordered by size, then lexicographically by column
// index. Empty for an all-zero response. Throws SearchBudgetExceeded.
std::vector<std::vector<BlockId>> diagnose_multiple(const ActivationMatrix& m, const ResponseVector& r,
                                                    std::size_t k_max, std::uint64_t budget = 1'000'000);

// Single-fault ranking plus the cover search: TestDeficient when the response
// is non-zero and no cover of size <= k_max reproduces it.
DiagnosisVerdict diagnose(const ActivationMatrix& m, const ResponseVector& r, const DiagnoseOptions& options = {});

}  // namespace txdiag
