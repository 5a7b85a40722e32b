#include <doctest.h>

#include "../fixtures.hpp"
#include "txdiag/diagnosability.hpp"
#include "txdiag/report.hpp"

using namespace txdiag;
using fixtures::error_of;

TEST_CASE("metrics of the example graph") {
    const auto m = metrics(fixtures::example_graph(), fixtures::example_tests(), {"S9"});
    CHECK(m.n_blocks == 14);
    CHECK(m.n_transit == 2);
    CHECK(m.log2_ceil == 4);
    CHECK(m.d_structural == Rational(6, 7));
    CHECK(m.efficiency == Rational(2, 3));
    CHECK(m.quality == Rational(4, 7));
    CHECK_FALSE(m.optimal);
    CHECK(m.warnings.empty());
    CHECK(format_rational(m.quality) == "4/7");
    CHECK(format_decimal(m.quality) == "0.5714");

    const auto three = metrics(fixtures::example_graph(), fixtures::example_tests(), {"S3", "S6", "S9"});
    CHECK(three.efficiency == Rational(2, 9));
}

TEST_CASE("degenerate models") {
    const TransactionGraph one({"S0", "S1"}, {{"B1", "S0", "S1"}}, {"S1"});
    const auto m = metrics(one, enumerate_paths(one, "S0", {"S1"}), {"S1"});
    CHECK(m.log2_ceil == 0);
    CHECK(m.efficiency == Rational(0));
    CHECK(m.d_structural == Rational(1));
    CHECK(m.warnings.size() == 1);

    CHECK(error_of([&] { metrics(TransactionGraph({"A"}, {}, {"A"}), {}, {"A"}); }) == ErrorCode::EmptyModel);
    CHECK(error_of([&] { metrics(fixtures::example_graph(), {}, {"S9"}); }) == ErrorCode::EmptyModel);
    CHECK(error_of([&] { metrics(fixtures::example_graph(), fixtures::example_tests(), {}); }) == ErrorCode::EmptyModel);
}

TEST_CASE("detection quality") {
    CHECK(detection_quality(12, 14, 6, 1) == Rational(4, 7));
    CHECK(detection_quality(14, 14, 6, 1) == Rational(2, 3));
    CHECK(detection_quality(0, 14, 6, 1) == Rational(0));
    CHECK(error_of([] { detection_quality(1, 0, 6, 1); }) == ErrorCode::ZeroDenominator);
    CHECK(error_of([] { detection_quality(1, 4, 0, 1); }) == ErrorCode::ZeroDenominator);
    CHECK(error_of([] { detection_quality(5, 4, 2, 1); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("coverage ratio") {
    CHECK(coverage_ratio({{"S1", 1, 2}, {"S2", 1, 2}}) == Rational(1, 2));
    CHECK(coverage_ratio({{"S1", 3, 4}, {"S2", 0, 2}}) == Rational(1, 2));
    CHECK(error_of([] { coverage_ratio({}); }) == ErrorCode::ZeroDenominator);
    CHECK(error_of([] { coverage_ratio({{"S1", 0, 0}}); }) == ErrorCode::ZeroDenominator);
}

TEST_CASE("metrics JSON round trip") {
    const auto m = metrics(fixtures::example_graph(), fixtures::example_tests(), {"S9"});
    const auto text = report::metrics_json(m);
    CHECK(report::parse_metrics_json(text) == m);
    CHECK(report::metrics_json(report::parse_metrics_json(text)) == text);
    CHECK(error_of([] { report::parse_metrics_json("{}"); }) == ErrorCode::Format);
}

TEST_CASE("property: quality bounds") {
    std::mt19937_64 rng(21);
    for (int iter = 0; iter < 100; ++iter) {
        const auto g = fixtures::random_dag(rng, 12, 20);
        const auto tests = enumerate_paths(g, g.nodes()[0], g.monitors());
        if (tests.empty()) continue;
        const auto m = metrics(g, tests, g.monitors());
        CHECK(m.d_structural >= Rational(0));
        CHECK(m.d_structural <= Rational(1));
        CHECK(m.quality == m.efficiency * m.d_structural);
        CHECK(m.quality <= m.efficiency);
    }
}
