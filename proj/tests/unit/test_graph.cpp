#include <doctest.h>

#include "../fixtures.hpp"
#include "txdiag/graph.hpp"

using namespace txdiag;
using fixtures::error_of;

namespace {

bool has_violation(const ValidationReport& r, ViolationKind k) {
    for (const auto& v : r.violations) {
        if (v.kind == k) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("validation") {
    CHECK(validate_graph(fixtures::example_graph()).ok());

    auto g = fixtures::example_graph();
    auto arcs = g.arcs();
    arcs.push_back({"B15", "S1", "S0"});
    const TransactionGraph cyclic(g.nodes(), arcs, g.monitors());
    CHECK(has_violation(validate_graph(cyclic), ViolationKind::Cycle));
    CHECK(error_of([&] { require_valid(cyclic); }) == ErrorCode::InvalidGraph);

    CHECK(validate_graph(TransactionGraph{}).ok());

    const TransactionGraph dup({"A", "A", "B"}, {{"X", "A", "B"}, {"X", "A", "B"}}, {"C"});
    const auto r = validate_graph(dup);
    CHECK(has_violation(r, ViolationKind::DuplicateNode));
    CHECK(has_violation(r, ViolationKind::DuplicateBlock));
    CHECK(has_violation(r, ViolationKind::MonitorNotNode));

    const TransactionGraph dangling({"A"}, {{"X", "A", "Z"}}, {});
    CHECK(has_violation(validate_graph(dangling), ViolationKind::DanglingEndpoint));
    const TransactionGraph empty_id({""}, {}, {});
    CHECK(has_violation(validate_graph(empty_id), ViolationKind::EmptyId));
}

TEST_CASE("path enumeration on the example graph") {
    const auto g = fixtures::example_graph();
    const auto paths = enumerate_paths(g, "S0", {"S9"});
    REQUIRE(paths.size() == 6);
    const auto products = fixtures::example_products();
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(paths[i].id == "T" + std::to_string(i + 1));
        CHECK(paths[i].path == fixtures::example_tests()[i].path);
        CHECK(paths[i].blocks == products[i]);
    }

    const TransactionGraph one({"S0", "S1"}, {{"B1", "S0", "S1"}}, {"S1"});
    const auto single = enumerate_paths(one, "S0", {"S1"});
    REQUIRE(single.size() == 1);
    CHECK(single[0].path == std::vector<NodeId>{"S0", "S1"});

    const auto to_s3 = enumerate_paths(g, "S0", {"S3"});
    REQUIRE(to_s3.size() == 1);
    CHECK(to_s3[0].path == std::vector<NodeId>{"S0", "S1", "S3"});

    CHECK(error_of([&] { enumerate_paths(g, "nope", {"S9"}); }) == ErrorCode::UnknownNode);
}

TEST_CASE("blocks on path") {
    const auto g = fixtures::example_graph();
    const auto tests = fixtures::example_tests();
    const auto products = fixtures::example_products();
    for (std::size_t i = 0; i < tests.size(); ++i) CHECK(blocks_on_path(g, tests[i]) == products[i]);

    CHECK(error_of([&] { blocks_on_path(g, {"T", {"S0", "S3"}, {}}); }) == ErrorCode::InvalidPath);
    CHECK(error_of([&] { blocks_on_path(g, {"T", {"S0", "Q"}, {}}); }) == ErrorCode::UnknownNode);
    CHECK(error_of([&] { blocks_on_path(g, {"T", {"S0", "S1"}, {"B2"}}); }) == ErrorCode::InvalidPath);
    CHECK(error_of([&] { blocks_on_path(g, {"T", {"S0", "S1"}, {"B1", "B3"}}); }) == ErrorCode::InvalidPath);

    const TransactionGraph par({"A", "B"}, {{"X", "A", "B"}, {"Y", "A", "B"}}, {"B"});
    CHECK(error_of([&] { blocks_on_path(par, {"T", {"A", "B"}, {}}); }) == ErrorCode::InvalidPath);
    CHECK(blocks_on_path(par, {"T", {"A", "B"}, {"Y"}}) == std::vector<BlockId>{"Y"});
}

TEST_CASE("structural features") {
    const auto f = structural_features(fixtures::example_graph());
    CHECK(f.sources == std::vector<NodeId>{"S0"});
    CHECK(f.sinks == std::vector<NodeId>{"S9"});
    CHECK(f.transit_nodes == std::vector<NodeId>{"S3", "S6"});
    CHECK(f.n_arcs == 14);
    CHECK(f.n_transit == 2);

    const TransactionGraph chain({"A", "B", "C", "D"}, {{"X", "A", "B"}, {"Y", "B", "C"}, {"Z", "C", "D"}}, {"D"});
    CHECK(structural_features(chain).n_transit == 2);

    const TransactionGraph star({"H", "L1", "L2", "L3"}, {{"X", "H", "L1"}, {"Y", "H", "L2"}, {"Z", "H", "L3"}},
                                {});
    const auto s = structural_features(star);
    CHECK(s.n_transit == 0);
    CHECK(s.sinks.size() == 3);
}

TEST_CASE("property: enumeration matches the arc-subset oracle") {
    std::mt19937_64 rng(2024);
    for (int iter = 0; iter < 150; ++iter) {
        const auto g = fixtures::random_dag(rng, 12, 14);
        const auto f = structural_features(g);
        const std::size_t from = rng() % g.nodes().size();
        std::set<std::size_t> to_idx;
        std::vector<NodeId> to;
        for (const auto& s : f.sinks) {
            to.push_back(s);
            to_idx.insert(*g.node_index(s));
        }
        std::set<std::vector<std::size_t>> got;
        std::vector<std::vector<std::size_t>> ordered;
        for (const auto& p : enumerate_paths(g, g.nodes()[from], to)) {
            ordered.push_back(arc_indices_on_path(g, p));
            got.insert(ordered.back());
        }
        CHECK(got == fixtures::brute_force_paths(g, from, to_idx));
        CHECK(got.size() == ordered.size());
        CHECK(std::is_sorted(ordered.begin(), ordered.end()));
    }
}

TEST_CASE("topological order respects arcs") {
    std::mt19937_64 rng(5);
    for (int iter = 0; iter < 50; ++iter) {
        const auto g = fixtures::random_dag(rng, 12, 20);
        const auto order = topological_order(g);
        std::vector<std::size_t> pos(order.size());
        for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
        for (const auto& a : g.arcs()) CHECK(pos[*g.node_index(a.from)] < pos[*g.node_index(a.to)]);
    }
}
