#pragma once

#include <string>
#include <vector>

#include "txdiag/diagnosability.hpp"
#include "txdiag/fault_sim.hpp"
#include "txdiag/graph.hpp"
#include "txdiag/hier_engine.hpp"
#include "txdiag/matrix.hpp"
#include "txdiag/synthesis.hpp"
#include "txdiag/xor_diagnosis.hpp"

// Machine-readable JSON reports. Every function returns a complete document
// (pretty-printed, trailing newline) whose shape is described by the schema
// of the same name under schemas/.
namespace txdiag::report {

std::string metrics_json(const DiagMetrics& m);
DiagMetrics parse_metrics_json(const std::string& text);

std::string analysis_json(const StructuralFeatures& f, const DiagMetrics& m, const MatrixAudit& audit,
                          const ActivationMatrix& matrix);
std::string audit_json(const MatrixAudit& audit, const ActivationMatrix& m);
std::string verdict_json(const DiagnosisVerdict& v);
std::string campaign_json(const CampaignResult& c);
std::string monitor_plan_json(const MonitorPlan& p);
std::string logic_json(const std::vector<DiagnosisFunction>& functions);
std::string rules_json(const RuleReport& r);
std::string traversal_json(const TraversalOutcome& t);
std::string paths_json(const TransactionGraph& g, const std::vector<TestSegment>& paths);
std::string matrix_json(const ActivationMatrix& m);

}  // namespace txdiag::report
