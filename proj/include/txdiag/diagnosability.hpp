#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "txdiag/graph.hpp"

namespace txdiag {

using Rational = boost::rational<std::int64_t>;

// "num/den", or just "num" when den == 1.
std::string format_rational(const Rational& q);
// Decimal rendering with four fractional digits, for display only.
std::string format_decimal(const Rational& q);

struct DiagMetrics {
    std::size_t n_blocks = 0;       // N
    std::size_t n_transit = 0;      // transit node count
    std::size_t test_len = 0;       // |T|
    std::size_t monitor_count = 0;  // |A|
    std::size_t log2_ceil = 0;      // ceil(log2 N)
    Rational d_structural{0};       // (N - transit) / N
    Rational efficiency{0};         // ceil(log2 N) / (|T| * |A|)
    Rational quality{0};            // efficiency * d_structural
    bool optimal = false;           // ceil(log2 N) == |T| * |A|
    std::vector<std::string> warnings;

    bool operator==(const DiagMetrics&) const = default;
};

// Throws EmptyModel when the graph has no arcs or tests/monitors are empty.
DiagMetrics metrics(const TransactionGraph& g, const std::vector<TestSegment>& tests,
                    const std::vector<NodeId>& monitors);

// ceil(log2 n_total) / (test_len * monitor_count) * n_detected / n_total.
Rational detection_quality(std::size_t n_detected, std::size_t n_total, std::size_t test_len,
                           std::size_t monitor_count);

struct CoverageRecord {
    NodeId node;
    std::size_t reached_states = 0;
    std::size_t potential_states = 0;
};

// Sum of reached over sum of potential states.
Rational coverage_ratio(const std::vector<CoverageRecord>& records);

}  // namespace txdiag
