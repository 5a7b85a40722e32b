#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "txdiag/graph.hpp"
#include "txdiag/matrix.hpp"
#include "txdiag/xor_diagnosis.hpp"

namespace txdiag {

// Minimum set of source-to-sink paths covering every arc (plus a one-node
// segment per isolated node). Computed as a minimum flow with unit lower
// bounds on arcs, so the cardinality is exact for any graph size. Segments are
// ordered by arc-index sequence and named T1, T2, ...
std::vector<TestSegment> synth_tests(const TransactionGraph& g);

struct MonitorPlan {
    std::vector<NodeId> base_monitors;   // sinks
    std::vector<NodeId> added_monitors;  // in selection order
    std::vector<std::vector<BlockId>> resulting_classes;

    std::vector<NodeId> all_monitors() const;
};

// Sinks first, then greedily the transit node that splits the most
// non-singleton equivalence classes (ties: node declaration order), until all
// classes are singletons or no candidate splits anything.
MonitorPlan synth_monitors(const TransactionGraph& g, const std::vector<TestSegment>& tests);

enum class LogicMode { PositiveOnly, FullMinterm };

struct DiagnosisFunction {
    BlockId block;
    std::vector<RowKey> positive_literals;  // rows where the column is 1
    std::vector<RowKey> negative_literals;  // rows where it is 0 (FullMinterm only)

    bool operator==(const DiagnosisFunction&) const = default;
};

// One conjunction per column. PositiveOnly throws EquivalentColumns when two
// columns are identical.
std::vector<DiagnosisFunction> synth_logic(const ActivationMatrix& m, LogicMode mode);

// Value of the conjunction on an observed response.
bool evaluate(const DiagnosisFunction& f, const ActivationMatrix& m, const ResponseVector& r);

// "<block> = (t,m)=1 & (t,m)=0 ..."; an empty conjunction renders as "1".
std::string render_function(const DiagnosisFunction& f);

enum class RuleStatus { Pass, Fail, Advisory, NotApplicable };

std::string_view to_string(RuleStatus s);

struct RuleResult {
    int rule = 0;
    RuleStatus status = RuleStatus::NotApplicable;
    std::string evidence;
    std::vector<std::string> items;
};

struct RuleReport {
    std::vector<RuleResult> rules;  // rules 1..8 in order

    const RuleResult& rule(int n) const { return rules.at(static_cast<std::size_t>(n - 1)); }
};

// Evaluates the eight design-for-diagnosability rules. Rules 3-6 are
// structural advice and never report Fail.
RuleReport rule_check(const TransactionGraph& g, const std::vector<TestSegment>& tests,
                      const std::vector<NodeId>& monitors);

}  // namespace txdiag
