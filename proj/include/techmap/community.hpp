#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "techmap/network.hpp"
#include "techmap/rng.hpp"

namespace techmap {

struct Partition {
    std::vector<std::string> vocabulary;
    std::vector<int> assignment;  // class index -> community id, dense from 0
    double modularity = 0.0;
    std::uint64_t seed = 0;
    double resolution = 1.0;
    std::vector<double> pass_modularity;  // per-pass trajectory, nondecreasing

    int community_count() const {
        return assignment.empty() ? 0 : *std::max_element(assignment.begin(), assignment.end()) + 1;
    }
};

namespace detail {

inline std::vector<int> renumber_dense(std::vector<int> labels) {
    std::map<int, int> remap;
    for (int l : labels)
        if (!remap.count(l)) {
            int next = static_cast<int>(remap.size());
            remap[l] = next;
        }
    for (auto& l : labels) l = remap[l];
    return labels;
}

}  // namespace detail

// Weighted Newman-Girvan modularity:
//   Q = (1/2m) sum_ij [w_ij - r * s_i s_j / (2m)] delta(c_i, c_j)
inline double modularity(const TechNetwork& net, const std::vector<int>& assignment,
                         double resolution = 1.0) {
    std::size_t n = net.node_count();
    if (assignment.size() != n) throw VocabularyMismatchError("partition does not cover vocabulary");
    double two_m = 0.0;
    std::vector<double> strength(n, 0.0);
    for (const auto& e : net.edges) {
        strength[e.a] += e.weight;
        strength[e.b] += e.weight;
        two_m += 2.0 * e.weight;
    }
    if (two_m <= 0.0) throw ValidationError("modularity: zero total weight");

    double q = 0.0;
    for (const auto& e : net.edges)
        if (assignment[e.a] == assignment[e.b]) q += 2.0 * e.weight / two_m;
    std::map<int, double> community_strength;
    for (std::size_t i = 0; i < n; ++i) community_strength[assignment[i]] += strength[i];
    for (const auto& [c, s] : community_strength) q -= resolution * (s / two_m) * (s / two_m);
    return q;
}

inline double modularity(const TechNetwork& net, const Partition& p) {
    return modularity(net, p.assignment, p.resolution);
}

namespace detail {

struct LouvainGraph {
    std::size_t n = 0;
    std::vector<std::vector<std::pair<std::size_t, double>>> adj;  // no self loops here
    std::vector<double> self_loop;                                 // aggregated intra weight
    double two_m = 0.0;

    std::vector<double> strengths() const {
        std::vector<double> s(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (const auto& [j, w] : adj[i]) s[i] += w;
            s[i] += 2.0 * self_loop[i];
        }
        return s;
    }
};

// One local-move phase. Returns the community labels (not dense).
inline std::vector<int> local_moves(const LouvainGraph& g, double resolution, Rng& rng) {
    std::vector<int> comm(g.n);
    std::iota(comm.begin(), comm.end(), 0);
    auto strength = g.strengths();
    std::vector<double> comm_tot(strength);  // total strength per community

    std::vector<std::size_t> order(g.n);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);

    bool moved = true;
    while (moved) {
        moved = false;
        for (std::size_t u : order) {
            int cu = comm[u];
            // weight from u to each neighboring community
            std::map<int, double> to_comm;
            to_comm[cu];  // staying put must be a candidate
            for (const auto& [v, w] : g.adj[u]) to_comm[comm[v]] += w;

            comm_tot[static_cast<std::size_t>(cu)] -= strength[u];
            double base = to_comm[cu] -
                          resolution * strength[u] * comm_tot[static_cast<std::size_t>(cu)] / g.two_m;
            int best = cu;
            double best_gain = 0.0;
            // to_comm iterates in ascending community id, so keeping only
            // strictly better gains gives the lowest-id tie rule for free.
            for (const auto& [c, w_uc] : to_comm) {
                if (c == cu) continue;
                double gain = (w_uc - resolution * strength[u] *
                                          comm_tot[static_cast<std::size_t>(c)] / g.two_m) -
                              base;
                if (gain > best_gain + 1e-12) {
                    best_gain = gain;
                    best = c;
                }
            }
            comm_tot[static_cast<std::size_t>(best)] += strength[u];
            if (best != cu) {
                comm[u] = best;
                moved = true;
            }
        }
    }
    return comm;
}

inline LouvainGraph aggregate(const LouvainGraph& g, const std::vector<int>& dense_comm,
                              std::size_t n_comm) {
    LouvainGraph out;
    out.n = n_comm;
    out.adj.assign(n_comm, {});
    out.self_loop.assign(n_comm, 0.0);
    out.two_m = g.two_m;
    std::map<std::pair<std::size_t, std::size_t>, double> agg;
    for (std::size_t u = 0; u < g.n; ++u) {
        auto cu = static_cast<std::size_t>(dense_comm[u]);
        out.self_loop[cu] += g.self_loop[u];
        for (const auto& [v, w] : g.adj[u]) {
            if (v < u) continue;  // undirected, count once
            auto cv = static_cast<std::size_t>(dense_comm[v]);
            if (cu == cv)
                out.self_loop[cu] += w;
            else
                agg[{std::min(cu, cv), std::max(cu, cv)}] += w;
        }
    }
    for (const auto& [pair, w] : agg) {
        out.adj[pair.first].emplace_back(pair.second, w);
        out.adj[pair.second].emplace_back(pair.first, w);
    }
    return out;
}

}  // namespace detail

// Standard two-phase Louvain: local moves until no single-node move
// improves modularity, then community aggregation, repeated to a fixed
// point. Node visitation order is shuffled deterministically by seed.
inline Partition louvain(const TechNetwork& net, std::uint64_t seed, double resolution = 1.0) {
    std::size_t n = net.node_count();
    if (n == 0) throw ValidationError("louvain: empty network");

    detail::LouvainGraph g;
    g.n = n;
    g.adj.assign(n, {});
    g.self_loop.assign(n, 0.0);
    for (const auto& e : net.edges) {
        g.adj[e.a].emplace_back(e.b, e.weight);
        g.adj[e.b].emplace_back(e.a, e.weight);
        g.two_m += 2.0 * e.weight;
    }
    if (g.two_m <= 0.0) throw ValidationError("louvain: zero total weight");

    Rng rng(seed);
    Partition p;
    p.vocabulary = net.vocabulary;
    p.seed = seed;
    p.resolution = resolution;
    p.assignment.resize(n);
    std::iota(p.assignment.begin(), p.assignment.end(), 0);

    p.pass_modularity.push_back(modularity(net, p.assignment, resolution));
    while (true) {
        auto comm = detail::local_moves(g, resolution, rng);
        auto dense = detail::renumber_dense(comm);
        std::size_t n_comm =
            static_cast<std::size_t>(*std::max_element(dense.begin(), dense.end())) + 1;

        // project onto the original nodes
        for (auto& a : p.assignment) a = dense[static_cast<std::size_t>(a)];
        double q = modularity(net, p.assignment, resolution);
        if (n_comm == g.n || q <= p.pass_modularity.back() + 1e-12) {
            if (q > p.pass_modularity.back()) p.pass_modularity.push_back(q);
            break;
        }
        p.pass_modularity.push_back(q);
        g = detail::aggregate(g, dense, n_comm);
    }
    p.assignment = detail::renumber_dense(p.assignment);
    p.modularity = modularity(net, p.assignment, resolution);
    return p;
}

}  // namespace techmap
