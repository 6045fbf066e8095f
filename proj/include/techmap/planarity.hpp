#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "techmap/filtering.hpp"
#include "techmap/network.hpp"

namespace techmap {

struct PlanarityResult {
    bool planar = true;
    // Edges of a Kuratowski subgraph (a K5 or K3,3 subdivision) when the
    // graph is not planar.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> witness;
};

namespace detail {

using BoostGraph =
    boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                          boost::property<boost::vertex_index_t, int>,
                          boost::property<boost::edge_index_t, int>>;

inline BoostGraph to_boost_graph(std::size_t n, const std::vector<Edge>& edges) {
    BoostGraph g(n);
    int idx = 0;
    for (const auto& e : edges) boost::add_edge(e.a, e.b, idx++, g);
    return g;
}

}  // namespace detail

// Exact planarity decision (Boyer-Myrvold). The Euler bound |E| > 3n - 6
// short-circuits to false for n >= 3.
inline PlanarityResult is_planar(std::size_t n_vertices, const std::vector<Edge>& edges) {
    PlanarityResult res;
    if (n_vertices >= 3 && edges.size() > 3 * n_vertices - 6) {
        res.planar = false;  // Euler bound; no witness extracted on this path
        return res;
    }
    // A nonplanar graph needs >= 5 vertices and >= 9 edges (K3,3).
    if (n_vertices < 5 || edges.size() < 9) return res;
    auto g = detail::to_boost_graph(n_vertices, edges);
    std::vector<boost::graph_traits<detail::BoostGraph>::edge_descriptor> kuratowski;
    res.planar = boost::boyer_myrvold_planarity_test(
        boost::boyer_myrvold_params::graph = g,
        boost::boyer_myrvold_params::kuratowski_subgraph = std::back_inserter(kuratowski));
    for (const auto& ed : kuratowski)
        res.witness.emplace_back(static_cast<std::uint32_t>(boost::source(ed, g)),
                                 static_cast<std::uint32_t>(boost::target(ed, g)));
    return res;
}

// Planar maximally filtered graph: scan edges in canonical descending order
// and keep each one iff the accumulated graph stays planar. Contains the
// MST; at most 3n - 6 edges.
inline FilteredNetwork pmfg(const TechNetwork& net) {
    std::size_t n = net.node_count();
    if (n < 3) throw ValidationError("pmfg needs at least 3 classes");
    FilteredNetwork out;
    out.vocabulary = net.vocabulary;
    out.method = FilterMethod::pmfg;
    std::size_t cap = 3 * n - 6;
    for (const auto& e : net.edges) {
        if (out.kept_edges.size() == cap) break;
        out.kept_edges.push_back(e);
        if (!is_planar(n, out.kept_edges).planar) out.kept_edges.pop_back();
    }
    return out;
}

}  // namespace techmap
