#include "txdiag/report.hpp"

#include <json.hpp>

#include "txdiag/error.hpp"

namespace txdiag::report {

using json = nlohmann::ordered_json;

namespace {

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json rational(const Rational& q) { return json{{"num", q.numerator()}, {"den", q.denominator()}}; }

Rational parse_rational(const json& j) {
    try {
        return Rational(j.at("num").get<std::int64_t>(), j.at("den").get<std::int64_t>());
    } catch (const std::exception& e) {
        throw Error(ErrorCode::Format, std::string("bad rational: ") + e.what());
    }
}

json metrics_object(const DiagMetrics& m) {
    return json{{"n_blocks", m.n_blocks},
                {"n_transit", m.n_transit},
                {"test_len", m.test_len},
                {"monitor_count", m.monitor_count},
                {"log2_ceil", m.log2_ceil},
                {"d_structural", rational(m.d_structural)},
                {"efficiency", rational(m.efficiency)},
                {"quality", rational(m.quality)},
                {"optimal", m.optimal},
                {"warnings", m.warnings}};
}

json row_key(const RowKey& k) { return json{{"test", k.test}, {"monitor", k.monitor}}; }

json audit_object(const MatrixAudit& audit, const ActivationMatrix& m) {
    json dup = json::array();
    for (const auto& group : audit.duplicate_rows) {
        json g = json::array();
        for (std::size_t i : group) g.push_back(row_key(m.rows()[i]));
        dup.push_back(g);
    }
    return json{{"rows", m.row_count()},
                {"cols", m.col_count()},
                {"coverage_ok", audit.coverage_ok},
                {"uncovered", audit.uncovered},
                {"duplicate_rows", dup},
                {"equivalence_classes", class_block_ids(m, audit.equivalence_classes)},
                {"log2_ceil", audit.log2_ceil},
                {"log2_bound_ok", audit.log2_bound_ok}};
}

}  // namespace

std::string metrics_json(const DiagMetrics& m) { return dump(metrics_object(m)); }

DiagMetrics parse_metrics_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
        DiagMetrics m;
        m.n_blocks = j.at("n_blocks").get<std::size_t>();
        m.n_transit = j.at("n_transit").get<std::size_t>();
        m.test_len = j.at("test_len").get<std::size_t>();
        m.monitor_count = j.at("monitor_count").get<std::size_t>();
        m.log2_ceil = j.at("log2_ceil").get<std::size_t>();
        m.d_structural = parse_rational(j.at("d_structural"));
        m.efficiency = parse_rational(j.at("efficiency"));
        m.quality = parse_rational(j.at("quality"));
        m.optimal = j.at("optimal").get<bool>();
        m.warnings = j.at("warnings").get<std::vector<std::string>>();
        return m;
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw Error(ErrorCode::Format, std::string("bad metrics report: ") + e.what());
    }
}

std::string analysis_json(const StructuralFeatures& f, const DiagMetrics& m, const MatrixAudit& audit,
                          const ActivationMatrix& matrix) {
    json j;
    j["features"] = json{{"sources", f.sources},
                         {"sinks", f.sinks},
                         {"transit_nodes", f.transit_nodes},
                         {"n_arcs", f.n_arcs},
                         {"n_transit", f.n_transit}};
    j["metrics"] = metrics_object(m);
    j["audit"] = audit_object(audit, matrix);
    return dump(j);
}

std::string audit_json(const MatrixAudit& audit, const ActivationMatrix& m) { return dump(audit_object(audit, m)); }

std::string verdict_json(const DiagnosisVerdict& v) {
    json candidates = json::array();
    for (const auto& c : v.candidates) candidates.push_back(json{{"blocks", c.blocks}, {"distance", c.distance}});
    return dump(json{{"kind", std::string(to_string(v.kind))},
                     {"deficiency_note", v.deficiency_note},
                     {"candidates", candidates},
                     {"covers", v.covers}});
}

std::string campaign_json(const CampaignResult& c) {
    json entries = json::array();
    for (const auto& e : c.entries) {
        entries.push_back(json{{"faults", e.faults},
                               {"kind", std::string(to_string(e.kind))},
                               {"detected", e.detected},
                               {"unique", e.unique},
                               {"consistent", e.consistent},
                               {"budget_exceeded", e.budget_exceeded}});
    }
    return dump(json{{"k", c.k},
                     {"sampled", c.sampled},
                     {"seed", c.seed},
                     {"n_total", c.n_total},
                     {"n_detected", c.n_detected},
                     {"n_unique", c.n_unique},
                     {"n_consistent", c.n_consistent},
                     {"detection_rate", rational(c.detection_rate)},
                     {"entries", entries}});
}

std::string monitor_plan_json(const MonitorPlan& p) {
    return dump(json{{"base_monitors", p.base_monitors},
                     {"added_monitors", p.added_monitors},
                     {"resulting_classes", p.resulting_classes}});
}

std::string logic_json(const std::vector<DiagnosisFunction>& functions) {
    json arr = json::array();
    for (const auto& f : functions) {
        json pos = json::array();
        json neg = json::array();
        for (const auto& k : f.positive_literals) pos.push_back(row_key(k));
        for (const auto& k : f.negative_literals) neg.push_back(row_key(k));
        arr.push_back(json{{"block", f.block}, {"positive", pos}, {"negative", neg}});
    }
    return dump(json{{"functions", arr}});
}

std::string rules_json(const RuleReport& r) {
    json arr = json::array();
    for (const auto& rule : r.rules) {
        arr.push_back(json{{"rule", rule.rule},
                           {"status", std::string(to_string(rule.status))},
                           {"evidence", rule.evidence},
                           {"items", rule.items}});
    }
    return dump(json{{"rules", arr}});
}

std::string traversal_json(const TraversalOutcome& t) {
    json trace = json::array();
    for (const auto& s : t.trace) {
        trace.push_back(json{{"level", s.level},
                             {"branch", s.branch},
                             {"column", s.column},
                             {"distance", s.distance},
                             {"action", std::string(to_string(s.action))},
                             {"equivalents", s.equivalents}});
    }
    json j{{"kind", std::string(to_string(t.kind))}};
    if (t.kind == OutcomeKind::Repair) j["repair_path"] = t.repair_path;
    if (t.kind == OutcomeKind::TestCorrectionNeeded) {
        j["correction"] = json{{"level", t.correction_level}, {"branch", t.correction_branch}};
    }
    j["visited_nodes"] = t.visited_nodes;
    j["xor_evaluations"] = t.xor_evaluations;
    j["visited_cells"] = t.visited_cells;
    j["trace"] = trace;
    return dump(j);
}

std::string paths_json(const TransactionGraph& g, const std::vector<TestSegment>& paths) {
    json arr = json::array();
    for (const auto& p : paths) {
        arr.push_back(json{{"id", p.id}, {"nodes", p.path}, {"blocks", blocks_on_path(g, p)}});
    }
    return dump(json{{"paths", arr}});
}

std::string matrix_json(const ActivationMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.row_count(); ++i) {
        json r = row_key(m.rows()[i]);
        r["bits"] = m.row(i).to_string();
        rows.push_back(r);
    }
    return dump(json{{"cols", m.cols()}, {"rows", rows}});
}

}  // namespace txdiag::report
