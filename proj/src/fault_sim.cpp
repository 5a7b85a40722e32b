#include "txdiag/fault_sim.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <set>

#include "txdiag/error.hpp"

namespace txdiag {

FaultSet::FaultSet(std::vector<BlockId> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.empty()) throw Error(ErrorCode::InvalidArgument, "fault set must not be empty");
    std::sort(blocks_.begin(), blocks_.end());
    blocks_.erase(std::unique(blocks_.begin(), blocks_.end()), blocks_.end());
}

ResponseVector simulate(const ActivationMatrix& m, const FaultSet& f) {
    ResponseVector r(m.row_count());
    for (const auto& b : f.blocks()) r |= column(m, b);
    return r;
}

namespace {

std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        // result * (n - k + i) / i stays integral at each step.
        const std::uint64_t num = n - k + i;
        if (result > kMax / num) return kMax;
        result = result * num / i;
    }
    return result;
}

// Uniform integer in [0, bound) from raw engine output, so that samples do
// not depend on the standard library's distribution implementation.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x = rng();
    while (x >= limit) x = rng();
    return x % bound;
}

std::vector<std::vector<std::size_t>> all_combinations(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        out.push_back(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

std::vector<std::vector<std::size_t>> sample_combinations(std::size_t n, std::size_t k, std::size_t count,
                                                          std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::set<std::vector<std::size_t>> picked;
    std::vector<std::size_t> pool(n);
    while (picked.size() < count) {
        for (std::size_t i = 0; i < n; ++i) pool[i] = i;
        for (std::size_t i = 0; i < k; ++i) {
            std::swap(pool[i], pool[i + uniform_below(rng, n - i)]);
        }
        std::vector<std::size_t> combo(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
        std::sort(combo.begin(), combo.end());
        picked.insert(std::move(combo));
    }
    return {picked.begin(), picked.end()};
}

}  // namespace

CampaignResult campaign(const ActivationMatrix& m, std::size_t k, const CampaignOptions& options) {
    if (k == 0) throw Error(ErrorCode::InvalidArgument, "fault multiplicity must be at least 1");
    CampaignResult result;
    result.k = k;
    result.seed = options.seed;
    const std::size_t n = m.col_count();
    if (k > n) return result;

    // Representative (first member) and class size for each column.
    std::vector<std::size_t> rep(n);
    std::vector<std::size_t> class_size(n);
    for (const auto& cls : audit_matrix(m).equivalence_classes) {
        for (std::size_t j : cls) {
            rep[j] = cls.front();
            class_size[j] = cls.size();
        }
    }

    const std::uint64_t total = binomial_saturating(n, k);
    std::vector<std::vector<std::size_t>> fault_sets;
    if (total > options.exhaustive_limit) {
        result.sampled = true;
        fault_sets = sample_combinations(n, k, static_cast<std::size_t>(std::min<std::uint64_t>(options.sample_size, total)),
                                         options.seed);
    } else {
        fault_sets = all_combinations(n, k);
    }

    for (const auto& fs : fault_sets) {
        CampaignEntry entry;
        std::vector<BlockId> ids;
        std::vector<std::size_t> reps;
        for (std::size_t j : fs) {
            ids.push_back(m.cols()[j]);
            reps.push_back(rep[j]);
        }
        std::sort(reps.begin(), reps.end());
        reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
        entry.faults = ids;

        const ResponseVector r = simulate(m, FaultSet(ids));
        DiagnoseOptions opts;
        opts.k_max = k;
        opts.budget = options.cover_budget;
        try {
            const auto verdict = diagnose(m, r, opts);
            entry.kind = verdict.kind;
            std::size_t matching = 0;
            for (const auto& cover : verdict.covers) {
                std::vector<std::size_t> cols;
                for (const auto& b : cover) cols.push_back(*m.col_index(b));
                if (cols == reps) ++matching;
                if (std::includes(reps.begin(), reps.end(), cols.begin(), cols.end())) entry.consistent = true;
            }
            entry.detected = matching > 0;
            entry.unique = entry.detected && verdict.covers.size() == 1 &&
                           std::all_of(reps.begin(), reps.end(), [&](std::size_t j) { return class_size[j] == 1; });
        } catch (const Error& e) {
            if (e.code() != ErrorCode::SearchBudgetExceeded) throw;
            entry.kind = VerdictKind::Candidates;
            entry.budget_exceeded = true;
        }

        ++result.n_total;
        result.n_detected += entry.detected ? 1 : 0;
        result.n_unique += entry.unique ? 1 : 0;
        result.n_consistent += entry.consistent ? 1 : 0;
        result.entries.push_back(std::move(entry));
    }
    if (result.n_total > 0) {
        result.detection_rate = boost::rational<std::int64_t>(static_cast<std::int64_t>(result.n_detected),
                                                              static_cast<std::int64_t>(result.n_total));
    }
    return result;
}

CampaignResult campaign(const TransactionGraph& g, const std::vector<TestSegment>& tests,
                        const std::vector<NodeId>& monitors, std::size_t k, const CampaignOptions& options) {
    const TransactionGraph monitored = g.with_monitors(monitors);
    return campaign(build_matrix(monitored, tests), k, options);
}

}  // namespace txdiag
