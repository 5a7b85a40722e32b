#pragma once

// Shared fixtures and brute-force oracles for the unit and acceptance suites.
// The oracles deliberately avoid the library's algorithms: they work on raw
// arc subsets and per-bit loops.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "txdiag/error.hpp"
#include "txdiag/graph.hpp"
#include "txdiag/matrix.hpp"

namespace fixtures {

using txdiag::Arc;
using txdiag::TestSegment;
using txdiag::TransactionGraph;

// Error code raised by f, or nullopt when it returns normally.
template <class F>
std::optional<txdiag::ErrorCode> error_of(F&& f) {
    try {
        f();
    } catch (const txdiag::Error& e) {
        return e.code();
    }
    return std::nullopt;
}

// Ten-state, fourteen-block example graph with a single monitor at S9.
inline TransactionGraph example_graph(std::vector<std::string> monitors = {"S9"}) {
    std::vector<std::string> nodes;
    for (int i = 0; i < 10; ++i) nodes.push_back("S" + std::to_string(i));
    std::vector<Arc> arcs{{"B1", "S0", "S1"},  {"B2", "S0", "S2"},  {"B3", "S1", "S3"},  {"B4", "S1", "S4"},
                          {"B5", "S1", "S5"},  {"B6", "S2", "S4"},  {"B7", "S2", "S5"},  {"B8", "S2", "S6"},
                          {"B9", "S3", "S7"},  {"B10", "S4", "S8"}, {"B11", "S5", "S7"}, {"B12", "S6", "S8"},
                          {"B13", "S7", "S9"}, {"B14", "S8", "S9"}};
    return TransactionGraph(nodes, arcs, std::move(monitors));
}

inline std::vector<std::string> words(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ' ') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

// The six reference test segments, node form.
inline std::vector<TestSegment> example_tests() {
    const char* paths[] = {"S0 S1 S3 S7 S9", "S0 S1 S4 S8 S9", "S0 S1 S5 S7 S9",
                           "S0 S2 S4 S8 S9", "S0 S2 S5 S7 S9", "S0 S2 S6 S8 S9"};
    std::vector<TestSegment> tests;
    for (int i = 0; i < 6; ++i) tests.push_back({"T" + std::to_string(i + 1), words(paths[i]), {}});
    return tests;
}

// Expected block products, one per test segment.
inline std::vector<std::vector<std::string>> example_products() {
    return {{"B1", "B3", "B9", "B13"}, {"B1", "B4", "B10", "B14"}, {"B1", "B5", "B11", "B13"},
            {"B2", "B6", "B10", "B14"}, {"B2", "B7", "B11", "B13"}, {"B2", "B8", "B12", "B14"}};
}

// Random DAG over nodes N0..N{n-1}; every arc goes from a lower to a higher
// index, so the graph is acyclic. Parallel arcs are allowed.
inline TransactionGraph random_dag(std::mt19937_64& rng, std::size_t max_nodes, std::size_t max_arcs) {
    auto pick = [&](std::size_t lo, std::size_t hi) { return lo + rng() % (hi - lo + 1); };
    const std::size_t n = pick(2, max_nodes);
    const std::size_t m = pick(1, max_arcs);
    std::vector<std::string> nodes;
    for (std::size_t i = 0; i < n; ++i) nodes.push_back("N" + std::to_string(i));
    std::vector<Arc> arcs;
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t a = pick(0, n - 2);
        const std::size_t b = pick(a + 1, n - 1);
        arcs.push_back({"B" + std::to_string(k + 1), nodes[a], nodes[b]});
    }
    TransactionGraph g(nodes, arcs, {});
    std::vector<std::string> sinks;
    for (std::size_t v = 0; v < n; ++v) {
        if (g.out_arcs(v).empty()) sinks.push_back(nodes[v]);
    }
    return g.with_monitors(sinks);
}

// Arc-index sequences of all simple paths from `from` to any node in `to`,
// found by testing every subset of arcs for being a single chain. Only for
// graphs with few arcs.
inline std::set<std::vector<std::size_t>> brute_force_paths(const TransactionGraph& g, std::size_t from,
                                                             const std::set<std::size_t>& to) {
    std::set<std::vector<std::size_t>> out;
    if (to.contains(from)) out.insert(std::vector<std::size_t>{});
    const std::size_t m = g.arcs().size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
        std::map<std::size_t, std::size_t> next;  // tail node -> arc
        bool ok = true;
        for (std::size_t a = 0; a < m && ok; ++a) {
            if (!(mask >> a & 1U)) continue;
            const std::size_t tail = *g.node_index(g.arcs()[a].from);
            ok = next.emplace(tail, a).second;  // at most one chosen arc leaves each node
        }
        if (!ok) continue;
        std::vector<std::size_t> seq;
        std::set<std::size_t> visited{from};
        std::size_t v = from;
        while (next.contains(v)) {
            const std::size_t a = next[v];
            seq.push_back(a);
            v = *g.node_index(g.arcs()[a].to);
            if (!visited.insert(v).second) break;
        }
        if (seq.size() == static_cast<std::size_t>(std::popcount(mask)) && to.contains(v)) out.insert(seq);
    }
    return out;
}

// Smallest number of source-to-sink paths covering every arc, by trying all
// path combinations of increasing size.
inline std::size_t brute_force_min_cover(const TransactionGraph& g) {
    std::set<std::size_t> sinks;
    std::vector<std::vector<std::size_t>> paths;
    for (std::size_t v = 0; v < g.nodes().size(); ++v) {
        if (g.out_arcs(v).empty()) sinks.insert(v);
    }
    for (std::size_t v = 0; v < g.nodes().size(); ++v) {
        if (!g.in_arcs(v).empty() || g.out_arcs(v).empty()) continue;
        for (const auto& p : brute_force_paths(g, v, sinks)) paths.push_back(p);
    }
    const std::size_t m = g.arcs().size();
    if (m == 0) return 0;
    for (std::size_t k = 1; k <= paths.size(); ++k) {
        std::vector<bool> choose(paths.size(), false);
        std::fill(choose.begin(), choose.begin() + static_cast<std::ptrdiff_t>(k), true);
        do {
            std::vector<bool> hit(m, false);
            for (std::size_t p = 0; p < paths.size(); ++p) {
                if (!choose[p]) continue;
                for (std::size_t a : paths[p]) hit[a] = true;
            }
            if (std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) return k;
        } while (std::prev_permutation(choose.begin(), choose.end()));
    }
    return paths.size() + 1;  // unreachable for a DAG
}

// Per-bit XOR distance between column j and a response.
inline std::size_t naive_distance(const txdiag::ActivationMatrix& m, std::size_t j, const txdiag::BitVector& r) {
    std::size_t d = 0;
    for (std::size_t i = 0; i < m.row_count(); ++i) d += (m.bit(i, j) != r.test(i)) ? 1 : 0;
    return d;
}

// Columns identical to column j, by per-bit comparison.
inline std::vector<std::string> naive_class_of(const txdiag::ActivationMatrix& m, std::size_t j) {
    std::vector<std::string> out;
    for (std::size_t k = 0; k < m.col_count(); ++k) {
        bool same = true;
        for (std::size_t i = 0; i < m.row_count() && same; ++i) same = m.bit(i, k) == m.bit(i, j);
        if (same) out.push_back(m.cols()[k]);
    }
    return out;
}

// Per-bit OR of a set of columns.
inline txdiag::BitVector naive_or(const txdiag::ActivationMatrix& m, const std::vector<std::size_t>& cols) {
    txdiag::BitVector r(m.row_count());
    for (std::size_t i = 0; i < m.row_count(); ++i) {
        for (std::size_t j : cols) {
            if (m.bit(i, j)) r.set(i);
        }
    }
    return r;
}

// Inclusion-minimal column sets of size <= k whose OR equals r, found by
// enumerating every subset of columns, then reduced to the first member of
// each identical-column class. Sorted, deduplicated.
inline std::set<std::vector<std::string>> brute_force_covers(const txdiag::ActivationMatrix& m,
                                                               const txdiag::BitVector& r, std::size_t k) {
    if (r.none()) return {};  // a silent response needs no explanation
    const std::size_t n = m.col_count();
    std::vector<std::vector<std::size_t>> exact;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) > k) continue;
        std::vector<std::size_t> cols;
        for (std::size_t j = 0; j < n; ++j) {
            if (mask >> j & 1U) cols.push_back(j);
        }
        if (naive_or(m, cols) == r) exact.push_back(cols);
    }
    std::set<std::vector<std::string>> out;
    for (const auto& s : exact) {
        bool minimal = true;
        for (const auto& t : exact) {
            if (t.size() < s.size() && std::includes(s.begin(), s.end(), t.begin(), t.end())) minimal = false;
        }
        if (!minimal) continue;
        std::set<std::string> reps;
        for (std::size_t j : s) reps.insert(naive_class_of(m, j).front());
        if (reps.size() != s.size()) continue;  // two members of one class: not minimal
        out.insert(std::vector<std::string>(reps.begin(), reps.end()));
    }
    return out;
}

}  // namespace fixtures
