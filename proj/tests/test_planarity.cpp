#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "oracles.hpp"
#include "techmap/planarity.hpp"
#include "techmap/rng.hpp"

using namespace techmap;

namespace {

std::vector<Edge> complete_graph(std::uint32_t n) {
    std::vector<Edge> es;
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j) es.push_back({i, j, 0.5});
    return es;
}

std::vector<Edge> index_edges(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& ps) {
    std::vector<Edge> es;
    for (const auto& [a, b] : ps) es.push_back({a, b, 0.5});
    return es;
}

}  // namespace

TEST_CASE("textbook planarity cases") {
    REQUIRE(is_planar(4, complete_graph(4)).planar);
    auto k5 = is_planar(5, complete_graph(5));
    REQUIRE_FALSE(k5.planar);  // Euler bound path: 10 > 3*5-6
    // K3,3: 9 edges = 3n-6 exactly, so the exact test must run
    std::vector<Edge> k33;
    for (std::uint32_t i = 0; i < 3; ++i)
        for (std::uint32_t j = 3; j < 6; ++j) k33.push_back({i, j, 0.5});
    auto r = is_planar(6, k33);
    REQUIRE_FALSE(r.planar);
    SECTION("witness is a nonplanar subgraph of the input") {
        REQUIRE_FALSE(r.witness.empty());
        std::set<std::pair<std::uint32_t, std::uint32_t>> input;
        for (const auto& e : k33) input.insert(std::minmax(e.a, e.b));
        for (auto [a, b] : r.witness) REQUIRE(input.count(std::minmax(a, b)));
        REQUIRE_FALSE(oracles::brute_force_planar(6, r.witness));
    }
}

TEST_CASE("is_planar agrees with the brute-force checker on random graphs") {
    Rng rng(37);
    int nonplanar_seen = 0;
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = 5 + rng.uniform_index(3);  // 5..7
        auto pairs = oracles::random_pairs(n, 0.55 + 0.35 * rng.uniform_real(), rng);
        bool expected = oracles::brute_force_planar(n, pairs);
        nonplanar_seen += !expected;
        REQUIRE(is_planar(n, index_edges(pairs)).planar == expected);
    }
    REQUIRE(nonplanar_seen >= 5);  // the sample must exercise both outcomes
}

TEST_CASE("pmfg") {
    SECTION("K5 with distinct weights drops exactly the weakest edge") {
        auto vocab = oracles::letter_vocab(5);
        std::vector<std::tuple<std::string, std::string, double>> es;
        double w = 0.95;
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = i + 1; j < 5; ++j) {
                es.emplace_back(vocab[i], vocab[j], w);
                w -= 0.05;
            }
        auto net = oracles::make_network(vocab, es);
        auto fn = pmfg(net);
        REQUIRE(fn.kept_edges.size() == 9);  // 3n-6
        double min_w = 2.0;
        for (const auto& e : net.edges) min_w = std::min(min_w, e.weight);
        for (const auto& e : fn.kept_edges) REQUIRE(e.weight > min_w);
        // brute-force check: what remains is planar
        std::vector<std::pair<std::uint32_t, std::uint32_t>> kept;
        for (const auto& e : fn.kept_edges) kept.emplace_back(e.a, e.b);
        REQUIRE(oracles::brute_force_planar(5, kept));
    }
    SECTION("tree input is returned unchanged") {
        auto tree = oracles::make_network({"a", "b", "c", "d"},
                                          {{"a", "b", 0.4}, {"b", "c", 0.2}, {"c", "d", 0.9}});
        REQUIRE(pmfg(tree).kept_edges == tree.edges);
    }
    SECTION("output is planar, within the edge cap, and greedily maximal") {
        Rng rng(41);
        for (int trial = 0; trial < 15; ++trial) {
            auto net = oracles::random_connected_graph(7, 0.8, rng);
            auto fn = pmfg(net);
            std::size_t n = net.node_count();
            REQUIRE(fn.kept_edges.size() <= 3 * n - 6);
            REQUIRE(is_planar(n, fn.kept_edges).planar);
            // every rejected edge would break planarity when added back
            std::set<std::pair<std::uint32_t, std::uint32_t>> kept;
            for (const auto& e : fn.kept_edges) kept.insert({e.a, e.b});
            if (fn.kept_edges.size() < 3 * n - 6) {
                for (const auto& e : net.edges) {
                    if (kept.count({e.a, e.b})) continue;
                    auto with = fn.kept_edges;
                    with.push_back(e);
                    REQUIRE_FALSE(is_planar(n, with).planar);
                }
            }
        }
    }
}
