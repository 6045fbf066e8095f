#pragma once

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "techmap/network.hpp"

namespace techmap {

struct LinkageMerge {
    std::size_t left = 0;   // node id: leaf i < n, merge k = n + k
    std::size_t right = 0;
    double height = 0.0;
};

struct MatrixOrdering {
    std::vector<std::string> order;  // left-to-right leaf order of the merge tree
    std::vector<LinkageMerge> linkage_tree;
};

// Agglomerative average-linkage clustering on d(i,j) = 1 - w(i,j), with
// absent pairs at distance 1. Ties merge the pair whose least leaf label is
// lexicographically smallest; each merge puts the lexicographically smaller
// leaf-set on the left, which fixes the output order completely.
inline MatrixOrdering reorder_matrix(const TechNetwork& net) {
    std::size_t n = net.node_count();
    if (n < 2) throw ValidationError("matrix ordering needs at least 2 classes");
    auto w = weight_matrix(net);

    struct Cluster {
        std::size_t node_id;
        std::size_t size;
        std::vector<std::string> leaves;  // sorted labels, for tie-breaking
    };
    std::vector<Cluster> active;
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 1.0));
    for (std::size_t i = 0; i < n; ++i) {
        active.push_back({i, 1, {net.vocabulary[i]}});
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) dist[i][j] = 1.0 - w[i][j];
    }

    MatrixOrdering out;
    // dist is indexed by position in `active`; rows are compacted on merge.
    while (active.size() > 1) {
        std::size_t bi = 0, bj = 1;
        double best = std::numeric_limits<double>::infinity();
        auto tie_key = [&](std::size_t i, std::size_t j) {
            const std::string& mi = active[i].leaves.front();
            const std::string& mj = active[j].leaves.front();
            return std::minmax(mi, mj);
        };
        for (std::size_t i = 0; i < active.size(); ++i) {
            for (std::size_t j = i + 1; j < active.size(); ++j) {
                double d = dist[i][j];
                if (d < best || (d == best && tie_key(i, j) < tie_key(bi, bj))) {
                    best = d;
                    bi = i;
                    bj = j;
                }
            }
        }

        Cluster merged;
        merged.node_id = n + out.linkage_tree.size();
        merged.size = active[bi].size + active[bj].size;
        merged.leaves.resize(merged.size);
        std::merge(active[bi].leaves.begin(), active[bi].leaves.end(),
                   active[bj].leaves.begin(), active[bj].leaves.end(),
                   merged.leaves.begin());

        bool bi_left = active[bi].leaves < active[bj].leaves;
        out.linkage_tree.push_back({bi_left ? active[bi].node_id : active[bj].node_id,
                                    bi_left ? active[bj].node_id : active[bi].node_id,
                                    best});

        // Lance-Williams update for average linkage.
        for (std::size_t k = 0; k < active.size(); ++k) {
            if (k == bi || k == bj) continue;
            double d = (static_cast<double>(active[bi].size) * dist[bi][k] +
                        static_cast<double>(active[bj].size) * dist[bj][k]) /
                       static_cast<double>(merged.size);
            dist[bi][k] = dist[k][bi] = d;
        }
        active[bi] = std::move(merged);
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(bj));
        for (auto& row : dist) row.erase(row.begin() + static_cast<std::ptrdiff_t>(bj));
        dist.erase(dist.begin() + static_cast<std::ptrdiff_t>(bj));
    }

    // In-order walk of the final tree yields the display order.
    std::vector<std::size_t> stack{active.front().node_id};
    while (!stack.empty()) {
        std::size_t id = stack.back();
        stack.pop_back();
        if (id < n) {
            out.order.push_back(net.vocabulary[id]);
        } else {
            const auto& m = out.linkage_tree[id - n];
            stack.push_back(m.right);
            stack.push_back(m.left);
        }
    }
    return out;
}

}  // namespace techmap
