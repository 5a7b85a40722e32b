#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/rational.hpp>

#include "txdiag/graph.hpp"
#include "txdiag/matrix.hpp"
#include "txdiag/xor_diagnosis.hpp"

namespace txdiag {

// Non-empty set of faulty blocks. The constructor sorts and deduplicates.
class FaultSet {
public:
    explicit FaultSet(std::vector<BlockId> blocks);
    const std::vector<BlockId>& blocks() const noexcept { return blocks_; }

private:
    std::vector<BlockId> blocks_;
};

// A row fires iff any faulty block is activated on it.
ResponseVector simulate(const ActivationMatrix& m, const FaultSet& f);

struct CampaignEntry {
    std::vector<BlockId> faults;
    VerdictKind kind = VerdictKind::FaultFree;
    bool detected = false;    // injected set (up to equivalence) is a minimal cover
    bool unique = false;      // ... and it is the only one, with singleton classes
    bool consistent = false;  // some minimal cover is contained in the injected set
    bool budget_exceeded = false;
};

struct CampaignResult {
    std::size_t k = 1;
    bool sampled = false;
    std::uint64_t seed = 0;
    std::size_t n_total = 0;
    std::size_t n_detected = 0;  // N_d
    std::size_t n_unique = 0;
    std::size_t n_consistent = 0;
    boost::rational<std::int64_t> detection_rate{0};
    std::vector<CampaignEntry> entries;
};

struct CampaignOptions {
    std::size_t exhaustive_limit = 100'000;  // above this many fault sets, sample
    std::size_t sample_size = 100'000;
    std::uint64_t seed = 0;
    std::uint64_t cover_budget = 1'000'000;
};

// Injects every fault set of size k (or a seeded sample of distinct sets),
// diagnoses it with k_max = k, and tallies detection.
CampaignResult campaign(const ActivationMatrix& m, std::size_t k, const CampaignOptions& options = {});

CampaignResult campaign(const TransactionGraph& g, const std::vector<TestSegment>& tests,
                        const std::vector<NodeId>& monitors, std::size_t k, const CampaignOptions& options = {});

}  // namespace txdiag
