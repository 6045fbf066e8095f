#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "techmap/corpus.hpp"
#include "techmap/network.hpp"

namespace techmap {

// Union of the reference sets of all patents carrying each class. A patent
// listing several classes counts fully in every one of them.
inline std::map<std::string, std::set<std::string>> class_reference_sets(const Corpus& c) {
    std::map<std::string, std::set<std::string>> sets;
    for (const auto& cls : c.vocabulary) sets[cls];
    for (const auto& r : c.records)
        for (const auto& cls : r.classes)
            sets[cls].insert(r.references.begin(), r.references.end());
    return sets;
}

namespace detail {

inline std::string window_tag(const Corpus& c) {
    return c.provenance + " [" + std::to_string(c.min_year) + ":" +
           std::to_string(c.max_year) + "]";
}

}  // namespace detail

// weight(i,j) = |C_i ∩ C_j| / |C_i ∪ C_j| over class reference sets.
// Zero-overlap pairs and pairs of empty sets produce no edge.
inline TechNetwork jaccard_network(const Corpus& c) {
    auto sets = class_reference_sets(c);
    TechNetwork net;
    net.measure = Measure::jaccard;
    net.provenance = detail::window_tag(c);
    net.vocabulary = c.vocabulary;
    std::size_t n = net.vocabulary.size();
    std::vector<const std::set<std::string>*> byidx(n);
    for (std::size_t i = 0; i < n; ++i) byidx[i] = &sets.at(net.vocabulary[i]);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto& si = *byidx[i];
            const auto& sj = *byidx[j];
            if (si.empty() && sj.empty()) continue;
            std::size_t inter = 0;
            const auto& small = si.size() <= sj.size() ? si : sj;
            const auto& large = si.size() <= sj.size() ? sj : si;
            for (const auto& r : small) inter += large.count(r);
            if (inter == 0) continue;
            double uni = static_cast<double>(si.size() + sj.size() - inter);
            net.edges.push_back({static_cast<std::uint32_t>(i),
                                 static_cast<std::uint32_t>(j),
                                 static_cast<double>(inter) / uni});
        }
    }
    canonicalize_edges(net.edges);
    return net;
}

// Class-level citation vectors: v_i[k] counts citations from patents in
// class i to corpus patents in class k, expanded over every class of the
// cited patent. Citations to patents outside the corpus are dropped (their
// class is unknown), unlike Jaccard which keeps raw reference ids.
inline TechNetwork cosine_network(const Corpus& c, bool drop_focal = false) {
    std::size_t n = c.vocabulary.size();
    std::unordered_map<std::string, const PatentRecord*> by_id;
    for (const auto& r : c.records) by_id.emplace(r.patent_id, &r);
    std::unordered_map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i) idx.emplace(c.vocabulary[i], i);

    std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
    for (const auto& r : c.records) {
        for (const auto& ref : r.references) {
            auto it = by_id.find(ref);
            if (it == by_id.end()) continue;
            for (const auto& src : r.classes)
                for (const auto& dst : it->second->classes) v[idx[src]][idx[dst]] += 1.0;
        }
    }

    TechNetwork net;
    net.measure = Measure::cosine;
    net.provenance = detail::window_tag(c);
    net.vocabulary = c.vocabulary;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double dot = 0.0, ni = 0.0, nj = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                if (drop_focal && (k == i || k == j)) continue;
                dot += v[i][k] * v[j][k];
                ni += v[i][k] * v[i][k];
                nj += v[j][k] * v[j][k];
            }
            if (dot == 0.0 || ni == 0.0 || nj == 0.0) continue;
            double w = dot / (std::sqrt(ni) * std::sqrt(nj));
            net.edges.push_back({static_cast<std::uint32_t>(i),
                                 static_cast<std::uint32_t>(j), std::min(w, 1.0)});
        }
    }
    canonicalize_edges(net.edges);
    return net;
}

struct DistributionStats {
    std::size_t total_possible_pairs = 0;
    std::size_t nonzero_count = 0;
    std::map<double, double> fraction_below;  // threshold -> fraction of pairs with w < t
    double max_weight = 0.0;
    std::vector<double> bin_edges;
    std::vector<std::size_t> bin_counts;  // nonzero links per [e_k, e_k+1) bin
};

// Fractions are over all n(n-1)/2 possible pairs; absent pairs count as
// weight zero. The histogram covers present (nonzero) links only.
inline DistributionStats weight_distribution(const TechNetwork& net,
                                             const std::vector<double>& thresholds,
                                             std::size_t n_bins = 20) {
    std::size_t n = net.node_count();
    DistributionStats st;
    st.total_possible_pairs = n * (n - 1) / 2;
    st.nonzero_count = net.edges.size();
    for (const auto& e : net.edges) st.max_weight = std::max(st.max_weight, e.weight);

    for (double t : thresholds) {
        std::size_t below = st.total_possible_pairs - st.nonzero_count;  // zeros
        for (const auto& e : net.edges)
            if (e.weight < t) ++below;
        if (t <= 0.0) below = 0;
        st.fraction_below[t] =
            st.total_possible_pairs == 0
                ? 0.0
                : static_cast<double>(below) / static_cast<double>(st.total_possible_pairs);
    }

    double hi = st.max_weight > 0.0 ? st.max_weight : 1.0;
    st.bin_edges.resize(n_bins + 1);
    for (std::size_t k = 0; k <= n_bins; ++k)
        st.bin_edges[k] = hi * static_cast<double>(k) / static_cast<double>(n_bins);
    st.bin_counts.assign(n_bins, 0);
    for (const auto& e : net.edges) {
        std::size_t k = static_cast<std::size_t>(e.weight / hi * static_cast<double>(n_bins));
        if (k >= n_bins) k = n_bins - 1;  // max weight lands in the last bin
        ++st.bin_counts[k];
    }
    return st;
}

}  // namespace techmap
