#include <doctest.h>

#include "../fixtures.hpp"
#include "txdiag/fault_sim.hpp"
#include "txdiag/hier_engine.hpp"

using namespace txdiag;
using fixtures::error_of;

namespace {

ActivationMatrix root_matrix() { return build_matrix(fixtures::example_graph({"S3", "S6", "S9"}), fixtures::example_tests()); }

// Three sub-blocks of B4 observed by three tests at one monitor.
ActivationMatrix b4_matrix() {
    return ActivationMatrix({{"U1", "M"}, {"U2", "M"}, {"U3", "M"}}, {"B4.1", "B4.2", "B4.3"},
                            {BitVector::from_string("110"), BitVector::from_string("011"),
                             BitVector::from_string("001")});
}

DiagnosisTree two_level() {
    DiagnosisTree t(root_matrix());
    t.add_child("B4", DiagnosisTree(b4_matrix()));
    return t;
}

}  // namespace

TEST_CASE("tree construction") {
    auto t = two_level();
    CHECK(t.size() == 2);
    CHECK(t.level() == 0);
    REQUIRE(t.child("B4") != nullptr);
    CHECK(t.child("B4")->level() == 1);
    CHECK(t.child("B1") == nullptr);
    CHECK(error_of([&] { t.add_child("B99", DiagnosisTree(b4_matrix())); }) == ErrorCode::UnknownBlock);
    CHECK(error_of([&] { t.add_child("B4", DiagnosisTree(b4_matrix())); }) == ErrorCode::InvalidArgument);

    DiagnosisTree deep(b4_matrix());
    deep.add_child("B4.1", DiagnosisTree(b4_matrix()));
    DiagnosisTree top(root_matrix());
    top.add_child("B4", std::move(deep));
    CHECK(top.child("B4")->child("B4.1")->level() == 2);
}

TEST_CASE("policies") {
    const auto t = two_level();
    const FaultPathProvider fault({"B4", "B4.2"});

    const auto time = traverse(t, fault, {Policy::Time, {}});
    CHECK(time.kind == OutcomeKind::Repair);
    CHECK(time.repair_path == std::vector<BlockId>{"B4"});
    CHECK(time.visited_nodes == 1);

    const auto money = traverse(t, fault, {Policy::Money, {}});
    CHECK(money.kind == OutcomeKind::Repair);
    CHECK(money.repair_path == std::vector<BlockId>{"B4", "B4.2"});
    CHECK(money.visited_nodes == 2);

    const auto capped = traverse(t, fault, {Policy::Money, 0U});
    CHECK(capped.repair_path == std::vector<BlockId>{"B4"});
}

TEST_CASE("fault free and correction verdicts") {
    const auto t = two_level();
    const auto ok = traverse(t, MapResponseProvider({}), {});
    CHECK(ok.kind == OutcomeKind::FaultFree);
    CHECK(ok.trace.size() == 1);
    CHECK(ok.trace[0].action == StepAction::ZeroResponse);

    const auto r = BitVector(root_matrix().row_count(), true);
    const auto bad = traverse(t, MapResponseProvider({{"root", r}}), {});
    CHECK(bad.kind == OutcomeKind::TestCorrectionNeeded);
    CHECK(bad.correction_level == 0);
    CHECK(bad.correction_branch == "root");

    // the child exonerates B4 and nothing else at the root matches
    const auto exo = traverse(t, MapResponseProvider({{"root", column(root_matrix(), "B4")}}), {});
    CHECK(exo.kind == OutcomeKind::TestCorrectionNeeded);
    CHECK(exo.visited_nodes == 2);
    CHECK(std::any_of(exo.trace.begin(), exo.trace.end(), [](const TraceStep& s) {
        return s.level == 1 && s.action == StepAction::ZeroResponse;
    }));
    CHECK(exo.trace.back().action == StepAction::Exhausted);

    const auto child_bad = traverse(
        t, MapResponseProvider({{"root", column(root_matrix(), "B4")}, {"root.B4", BitVector(3, true)}}), {});
    CHECK(child_bad.kind == OutcomeKind::TestCorrectionNeeded);
    CHECK(child_bad.correction_level == 1);
    CHECK(child_bad.correction_branch == "root.B4");

    CHECK(error_of([&] { traverse(t, MapResponseProvider({{"root", BitVector(2, true)}}), {}); }) ==
          ErrorCode::ProviderLengthMismatch);
}

TEST_CASE("trace replay and step bound") {
    const auto t = two_level();
    for (const auto& leaf : {"B4.1", "B4.2", "B4.3"}) {
        const auto out = traverse(t, FaultPathProvider({"B4", leaf}), {});
        for (const auto& step : out.trace) {
            const ActivationMatrix& m = step.level == 0 ? t.matrix() : t.child("B4")->matrix();
            if (step.column.empty()) continue;
            const auto r = simulate(m, FaultSet({step.level == 0 ? std::string("B4") : std::string(leaf)}));
            CHECK(fixtures::naive_distance(m, *m.col_index(step.column), r) == step.distance);
            CHECK((step.action == StepAction::Advance) == (step.distance != 0));
        }
        CHECK(out.visited_cells == t.matrix().row_count() * t.matrix().col_count() + 9);
        CHECK(out.xor_evaluations <= out.visited_cells);
        CHECK(out.repair_path.back() == leaf);
    }
}

TEST_CASE("property: a single level tree agrees with flat diagnosis") {
    std::mt19937_64 rng(41);
    for (int iter = 0; iter < 100; ++iter) {
        const auto g = fixtures::random_dag(rng, 10, 14);
        auto m = build_matrix(g, enumerate_paths(g, g.nodes()[0], g.monitors()));
        if (m.row_count() == 0) continue;
        const std::size_t j = rng() % m.col_count();
        const auto r = m.column(j);
        const DiagnosisTree tree(m);
        const auto out = traverse(tree, MapResponseProvider({{"root", r}}), {});
        CHECK(out.xor_evaluations <= out.visited_cells);
        if (r.none()) {
            CHECK(out.kind == OutcomeKind::FaultFree);
            continue;
        }
        const auto flat = diagnose_single(m, r);
        REQUIRE(out.kind == OutcomeKind::Repair);
        CHECK(out.repair_path == std::vector<BlockId>{flat.candidates[0].blocks.front()});
        CHECK(out.trace.back().equivalents.size() + 1 == flat.candidates[0].blocks.size());
    }
}
