#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "techmap/errors.hpp"

namespace techmap {

// Node endpoints are indices into the owning network's sorted vocabulary,
// with a < b. Since the vocabulary is lexicographically sorted, index order
// equals the lexicographic canonical form required of edges.
struct Edge {
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    double weight = 0.0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

enum class Measure { jaccard, cosine };

inline std::string measure_name(Measure m) {
    return m == Measure::jaccard ? "jaccard" : "cosine";
}

// Weighted undirected class-proximity network. Zero-weight pairs are
// absent; weights are in (0, 1].
struct TechNetwork {
    std::vector<std::string> vocabulary;  // sorted
    std::vector<Edge> edges;              // canonical descending order
    Measure measure = Measure::jaccard;
    std::string provenance;

    std::size_t node_count() const { return vocabulary.size(); }

    std::size_t index_of(const std::string& cls) const {
        auto it = std::lower_bound(vocabulary.begin(), vocabulary.end(), cls);
        if (it == vocabulary.end() || *it != cls)
            throw VocabularyMismatchError("class not in vocabulary: " + cls);
        return static_cast<std::size_t>(it - vocabulary.begin());
    }
};

// Descending weight; ties broken by (a, b), i.e. lexicographic on the
// sorted vocabulary. Every weight-ordered scan in the toolkit uses this.
inline bool canonical_edge_less(const Edge& x, const Edge& y) {
    if (x.weight != y.weight) return x.weight > y.weight;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
}

inline void canonicalize_edges(std::vector<Edge>& edges) {
    for (auto& e : edges)
        if (e.a > e.b) std::swap(e.a, e.b);
    std::sort(edges.begin(), edges.end(), canonical_edge_less);
}

inline std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) {
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

// Dense symmetric weight lookup; absent pairs are 0.
inline std::vector<std::vector<double>> weight_matrix(const TechNetwork& net) {
    std::size_t n = net.node_count();
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    for (const auto& e : net.edges) {
        m[e.a][e.b] = e.weight;
        m[e.b][e.a] = e.weight;
    }
    return m;
}

// 17 significant digits: round-trips a double exactly.
inline std::string format_weight(double w) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", w);
    return buf;
}

inline std::string edges_to_csv(const TechNetwork& net, const std::vector<Edge>& edges) {
    std::ostringstream out;
    out << "source,target,weight\n";
    for (const auto& e : edges)
        out << net.vocabulary[e.a] << ',' << net.vocabulary[e.b] << ','
            << format_weight(e.weight) << "\n";
    return out.str();
}

inline std::string network_to_csv(const TechNetwork& net) {
    return edges_to_csv(net, net.edges);
}

inline TechNetwork network_from_csv(const std::string& path,
                                    Measure measure = Measure::jaccard) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open network file: " + path);
    std::string line;
    if (!std::getline(in, line) || line != "source,target,weight")
        throw ParseError("expected edge CSV header 'source,target,weight' in " + path, 1);
    struct Raw {
        std::string a, b;
        double w;
    };
    std::vector<Raw> raws;
    std::set<std::string> classes;
    long lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto c1 = line.find(',');
        auto c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw ParseError("expected 3 columns", lineno);
        Raw r;
        r.a = line.substr(0, c1);
        r.b = line.substr(c1 + 1, c2 - c1 - 1);
        try {
            r.w = std::stod(line.substr(c2 + 1));
        } catch (const std::exception&) {
            throw ParseError("bad weight: " + line.substr(c2 + 1), lineno);
        }
        if (r.a == r.b) throw ParseError("self edge " + r.a, lineno);
        if (r.w <= 0.0 || r.w > 1.0) throw ParseError("weight out of (0,1]", lineno);
        classes.insert(r.a);
        classes.insert(r.b);
        raws.push_back(std::move(r));
    }
    TechNetwork net;
    net.measure = measure;
    net.provenance = path;
    net.vocabulary.assign(classes.begin(), classes.end());
    std::set<std::uint64_t> seen;
    for (const auto& r : raws) {
        Edge e;
        e.a = static_cast<std::uint32_t>(net.index_of(r.a));
        e.b = static_cast<std::uint32_t>(net.index_of(r.b));
        if (e.a > e.b) std::swap(e.a, e.b);
        e.weight = r.w;
        if (!seen.insert(pair_key(e.a, e.b)).second)
            throw ParseError("duplicate pair " + r.a + "," + r.b);
        net.edges.push_back(e);
    }
    canonicalize_edges(net.edges);
    return net;
}

}  // namespace techmap
