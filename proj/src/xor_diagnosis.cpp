#include "txdiag/xor_diagnosis.hpp"

#include <algorithm>
#include <functional>

#include "txdiag/error.hpp"

namespace txdiag {

std::string_view to_string(VerdictKind kind) {
    switch (kind) {
        case VerdictKind::FaultFree: return "FaultFree";
        case VerdictKind::Candidates: return "Candidates";
        case VerdictKind::TestDeficient: return "TestDeficient";
    }
    return "Unknown";
}

namespace {

void check_length(const ActivationMatrix& m, const ResponseVector& r) {
    if (r.size() != m.row_count()) {
        throw Error(ErrorCode::LengthMismatch, "response has " + std::to_string(r.size()) + " bits, matrix has " +
                                                   std::to_string(m.row_count()) + " rows");
    }
}

}  // namespace

DiagnosisVerdict diagnose_single(const ActivationMatrix& m, const ResponseVector& r,
                                 std::size_t deficiency_threshold) {
    check_length(m, r);
    DiagnosisVerdict verdict;
    if (r.none()) return verdict;

    verdict.kind = VerdictKind::Candidates;
    const auto classes = audit_matrix(m).equivalence_classes;
    for (const auto& cls : classes) {
        Candidate c;
        c.distance = m.column(cls.front()).xor_distance(r);
        for (std::size_t j : cls) c.blocks.push_back(m.cols()[j]);
        verdict.candidates.push_back(std::move(c));
    }
    // Classes arrive ordered by first column, so a stable sort on distance
    // yields the (distance, first block) order.
    std::stable_sort(verdict.candidates.begin(), verdict.candidates.end(),
                     [](const Candidate& a, const Candidate& b) { return a.distance < b.distance; });
    verdict.deficiency_note =
        verdict.candidates.empty() || verdict.candidates.front().distance > deficiency_threshold;
    return verdict;
}

std::vector<std::vector<BlockId>> diagnose_multiple(const ActivationMatrix& m, const ResponseVector& r,
                                                    std::size_t k_max, std::uint64_t budget) {
    check_length(m, r);
    if (k_max == 0) throw Error(ErrorCode::InvalidArgument, "k_max must be at least 1");
    if (r.none()) return {};

    // A column with a 1 where r is 0 can never be part of an exact cover, and
    // an all-zero column is redundant in any cover.
    std::vector<std::size_t> usable;
    BitVector reachable(m.row_count());
    for (const auto& cls : audit_matrix(m).equivalence_classes) {
        const BitVector& col = m.column(cls.front());
        if (!col.none() && col.is_subset_of(r)) {
            usable.push_back(cls.front());
            reachable |= col;
        }
    }
    if (reachable != r) return {};

    std::vector<std::vector<std::size_t>> found;
    std::uint64_t examined = 0;
    std::vector<std::size_t> chosen;

    std::function<void(std::size_t, std::size_t, const BitVector&)> extend =
        [&](std::size_t start, std::size_t size, const BitVector& acc) {
            if (chosen.size() == size) {
                if (++examined > budget) {
                    throw Error(ErrorCode::SearchBudgetExceeded,
                                "more than " + std::to_string(budget) + " subsets examined");
                }
                if (acc != r) return;
                for (const auto& prev : found) {
                    if (std::includes(chosen.begin(), chosen.end(), prev.begin(), prev.end())) return;
                }
                found.push_back(chosen);
                return;
            }
            for (std::size_t k = start; k + (size - chosen.size()) <= usable.size(); ++k) {
                chosen.push_back(usable[k]);
                extend(k + 1, size, acc | m.column(usable[k]));
                chosen.pop_back();
            }
        };
    const std::size_t max_size = std::min(k_max, usable.size());
    for (std::size_t size = 1; size <= max_size; ++size) extend(0, size, BitVector(m.row_count()));

    std::vector<std::vector<BlockId>> out;
    out.reserve(found.size());
    for (const auto& cover : found) {
        auto& ids = out.emplace_back();
        for (std::size_t j : cover) ids.push_back(m.cols()[j]);
    }
    return out;
}

DiagnosisVerdict diagnose(const ActivationMatrix& m, const ResponseVector& r, const DiagnoseOptions& options) {
    DiagnosisVerdict verdict = diagnose_single(m, r, options.deficiency_threshold);
    if (verdict.kind == VerdictKind::FaultFree) return verdict;
    verdict.covers = diagnose_multiple(m, r, options.k_max, options.budget);
    if (verdict.covers.empty()) verdict.kind = VerdictKind::TestDeficient;
    return verdict;
}

}  // namespace txdiag
