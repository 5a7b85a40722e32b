#include "txdiag/diagnosability.hpp"

#include <set>

#include "txdiag/error.hpp"
#include "txdiag/matrix.hpp"

namespace txdiag {

std::string format_rational(const Rational& q) {
    if (q.denominator() == 1) return std::to_string(q.numerator());
    return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

std::string format_decimal(const Rational& q) {
    // Round half away from zero at the fourth fractional digit.
    const bool negative = q < 0;
    const std::int64_t num = negative ? -q.numerator() : q.numerator();
    const std::int64_t den = q.denominator();
    const std::int64_t scaled = (num * 10000 * 2 + den) / (2 * den);
    std::string frac = std::to_string(scaled % 10000);
    frac.insert(0, 4 - frac.size(), '0');
    return (negative ? "-" : "") + std::to_string(scaled / 10000) + "." + frac;
}

namespace {

Rational ratio(std::size_t num, std::size_t den) {
    return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

}  // namespace

DiagMetrics metrics(const TransactionGraph& g, const std::vector<TestSegment>& tests,
                    const std::vector<NodeId>& monitors) {
    require_valid(g);
    if (g.arcs().empty()) throw Error(ErrorCode::EmptyModel, "graph has no blocks");
    if (tests.empty()) throw Error(ErrorCode::EmptyModel, "no test segments");
    const std::set<NodeId> distinct_monitors(monitors.begin(), monitors.end());
    if (distinct_monitors.empty()) throw Error(ErrorCode::EmptyModel, "no monitors");

    const auto features = structural_features(g);
    DiagMetrics out;
    out.n_blocks = features.n_arcs;
    out.n_transit = features.n_transit;
    out.test_len = tests.size();
    out.monitor_count = distinct_monitors.size();
    out.log2_ceil = ceil_log2(out.n_blocks);
    out.d_structural = ratio(out.n_blocks - out.n_transit, out.n_blocks);
    out.efficiency = ratio(out.log2_ceil, out.test_len * out.monitor_count);
    out.quality = out.efficiency * out.d_structural;
    out.optimal = out.log2_ceil == out.test_len * out.monitor_count;
    if (out.log2_ceil == 0) {
        out.warnings.push_back("single block: ceil(log2 N) = 0, so efficiency and quality are 0");
    }
    return out;
}

Rational detection_quality(std::size_t n_detected, std::size_t n_total, std::size_t test_len,
                           std::size_t monitor_count) {
    if (n_total == 0) throw Error(ErrorCode::ZeroDenominator, "total block count is 0");
    if (test_len == 0 || monitor_count == 0) {
        throw Error(ErrorCode::ZeroDenominator, "test length and monitor count must be positive");
    }
    if (n_detected > n_total) throw Error(ErrorCode::InvalidArgument, "detected count exceeds total");
    return ratio(ceil_log2(n_total), test_len * monitor_count) * ratio(n_detected, n_total);
}

Rational coverage_ratio(const std::vector<CoverageRecord>& records) {
    std::size_t reached = 0;
    std::size_t potential = 0;
    for (const auto& r : records) {
        if (r.reached_states > r.potential_states) {
            throw Error(ErrorCode::InvalidArgument, "node '" + r.node + "' reaches more states than possible");
        }
        reached += r.reached_states;
        potential += r.potential_states;
    }
    if (potential == 0) throw Error(ErrorCode::ZeroDenominator, "no potential states");
    return ratio(reached, potential);
}

}  // namespace txdiag
