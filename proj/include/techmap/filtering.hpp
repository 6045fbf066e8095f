#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "techmap/diversification.hpp"
#include "techmap/network.hpp"

namespace techmap {

enum class FilterMethod { mst, sweep_threshold, pmfg, hidalgo, klavans_boyack, full };

inline std::string filter_method_name(FilterMethod m) {
    switch (m) {
        case FilterMethod::mst: return "mst";
        case FilterMethod::sweep_threshold: return "sweep_threshold";
        case FilterMethod::pmfg: return "pmfg";
        case FilterMethod::hidalgo: return "hidalgo";
        case FilterMethod::klavans_boyack: return "klavans_boyack";
        case FilterMethod::full: return "full";
    }
    return "?";
}

struct FilteredNetwork {
    std::vector<std::string> vocabulary;
    std::vector<Edge> kept_edges;  // canonical order, weights identical to the source
    FilterMethod method = FilterMethod::full;
    std::map<std::string, std::string> parameters;
    std::map<std::string, double> recorded_powers;  // per agent kind, where computed
    std::vector<std::string> warnings;
};

namespace detail {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0), components_(n) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
        --components_;
        return true;
    }

    std::size_t components() const { return components_; }

    std::vector<std::size_t> component_sizes() {
        std::map<std::size_t, std::size_t> sizes;
        for (std::size_t i = 0; i < parent_.size(); ++i) ++sizes[find(i)];
        std::vector<std::size_t> out;
        for (auto& [root, s] : sizes) out.push_back(s);
        std::sort(out.rbegin(), out.rend());
        return out;
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> rank_;
    std::size_t components_;
};

inline void require_connected(const TechNetwork& net) {
    UnionFind uf(net.node_count());
    for (const auto& e : net.edges) uf.unite(e.a, e.b);
    if (uf.components() > 1) {
        auto sizes = uf.component_sizes();
        std::string msg = "network is disconnected; component sizes:";
        for (auto s : sizes) msg += " " + std::to_string(s);
        throw DisconnectedError(msg, std::move(sizes));
    }
}

}  // namespace detail

// Kruskal on the canonical descending edge order: n-1 edges of maximum
// total weight, deterministic under ties.
inline FilteredNetwork maximum_spanning_tree(const TechNetwork& net) {
    detail::require_connected(net);
    std::size_t n = net.node_count();
    detail::UnionFind uf(n);
    FilteredNetwork out;
    out.vocabulary = net.vocabulary;
    out.method = FilterMethod::mst;
    for (const auto& e : net.edges) {
        if (uf.unite(e.a, e.b)) out.kept_edges.push_back(e);
        if (out.kept_edges.size() == n - 1) break;
    }
    return out;
}

struct CurvePoint {
    std::size_t links_total = 0;
    std::optional<double> added_weight;  // absent on the MST point
    std::optional<double> power;         // absent when the correlation is undefined
};

// Output of the MST-seeded add-back sweep. mst_edges + the first k entries
// of added_edges materialize the network at links_total = |MST| + k.
struct FilterCurve {
    AgentKind kind = AgentKind::inventor;
    PowerMode mode = PowerMode::present_links;
    std::vector<std::string> vocabulary;
    std::vector<Edge> mst_edges;
    std::vector<Edge> added_edges;  // non-MST edges in canonical descending order
    std::vector<CurvePoint> points;
};

namespace detail {

// O(1)-per-step Pearson over (weight, likelihood) pairs via running sums.
class RunningPearson {
public:
    void add(double x, double y) {
        ++n_;
        sx_ += x;
        sy_ += y;
        sxx_ += x * x;
        syy_ += y * y;
        sxy_ += x * y;
    }

    std::optional<double> value() const {
        if (n_ < 2) return std::nullopt;
        long double n = static_cast<long double>(n_);
        long double vx = sxx_ - sx_ * sx_ / n;
        long double vy = syy_ - sy_ * sy_ / n;
        long double cov = sxy_ - sx_ * sy_ / n;
        if (vx <= 0.0L || vy <= 0.0L) return std::nullopt;
        return static_cast<double>(cov / std::sqrt(vx * vy));
    }

private:
    std::size_t n_ = 0;
    long double sx_ = 0, sy_ = 0, sxx_ = 0, syy_ = 0, sxy_ = 0;
};

}  // namespace detail

// Adds non-MST edges back one at a time in decreasing weight order and
// records the explanatory power of every prefix. Undefined correlations
// (possible on the earliest points) become gap points.
inline FilterCurve sweep_curve(const TechNetwork& net, const LikelihoodMatrix& L,
                               PowerMode mode = PowerMode::present_links) {
    if (net.vocabulary != L.vocabulary)
        throw VocabularyMismatchError("sweep: network and likelihood vocabularies differ");
    auto mst = maximum_spanning_tree(net);

    FilterCurve curve;
    curve.kind = L.kind;
    curve.mode = mode;
    curve.vocabulary = net.vocabulary;
    curve.mst_edges = mst.kept_edges;

    std::set<std::uint64_t> in_mst;
    for (const auto& e : mst.kept_edges) in_mst.insert(pair_key(e.a, e.b));
    for (const auto& e : net.edges)
        if (!in_mst.count(pair_key(e.a, e.b))) curve.added_edges.push_back(e);

    if (mode == PowerMode::present_links) {
        detail::RunningPearson rp;
        auto record = [&](std::size_t links, std::optional<double> w) {
            curve.points.push_back({links, w, rp.value()});
        };
        for (const auto& e : curve.mst_edges) rp.add(e.weight, L.at(e.a, e.b));
        record(curve.mst_edges.size(), std::nullopt);
        std::size_t k = 0;
        for (const auto& e : curve.added_edges) {
            rp.add(e.weight, L.at(e.a, e.b));
            record(curve.mst_edges.size() + (++k), e.weight);
        }
    } else {
        // Imputed mode: the sample is all n(n-1)/2 pairs, with absent pairs
        // at weight 0. Adding edge e moves its x from 0 to w, which only
        // touches the x-dependent sums; n and the y sums are fixed upfront.
        struct Sums {
            long double n = 0, sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
        } s;
        std::size_t n = net.node_count();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                double y = L.at(i, j);
                s.n += 1;
                s.sy += y;
                s.syy += y * y;
            }
        auto power_of = [&]() -> std::optional<double> {
            if (s.n < 2) return std::nullopt;
            long double vx = s.sxx - s.sx * s.sx / s.n;
            long double vy = s.syy - s.sy * s.sy / s.n;
            long double cov = s.sxy - s.sx * s.sy / s.n;
            if (vx <= 0.0L || vy <= 0.0L) return std::nullopt;
            return static_cast<double>(cov / std::sqrt(vx * vy));
        };
        auto apply = [&](const Edge& e) {
            double y = L.at(e.a, e.b);
            s.sx += e.weight;
            s.sxx += e.weight * e.weight;
            s.sxy += e.weight * y;
        };
        for (const auto& e : curve.mst_edges) apply(e);
        curve.points.push_back({curve.mst_edges.size(), std::nullopt, power_of()});
        std::size_t k = 0;
        for (const auto& e : curve.added_edges) {
            apply(e);
            curve.points.push_back({curve.mst_edges.size() + (++k), e.weight, power_of()});
        }
    }
    return curve;
}

enum class ThresholdPolicy { min_power, link_budget, peak };

// Materializes the sweep prefix selected by the policy: the fewest links
// reaching a target power, a link budget, or the curve's peak.
inline FilteredNetwork select_threshold(const FilterCurve& curve, ThresholdPolicy policy,
                                        double min_power = 0.0, std::size_t link_budget = 0) {
    if (curve.points.empty()) throw ValidationError("empty filter curve");
    const CurvePoint* chosen = nullptr;
    if (policy == ThresholdPolicy::min_power) {
        for (const auto& pt : curve.points)
            if (pt.power && *pt.power >= min_power) {
                chosen = &pt;
                break;
            }
        if (!chosen)
            throw UnattainablePowerError("no sweep point reaches power " +
                                         std::to_string(min_power));
    } else if (policy == ThresholdPolicy::link_budget) {
        for (const auto& pt : curve.points)
            if (pt.links_total <= link_budget) chosen = &pt;
        if (!chosen)
            throw ValidationError("link budget below the MST size " +
                                  std::to_string(curve.points.front().links_total));
    } else {
        double best = -2.0;
        for (const auto& pt : curve.points)
            if (pt.power && *pt.power > best) {
                best = *pt.power;
                chosen = &pt;
            }
        if (!chosen) throw UndefinedCorrelationError("curve has no defined power points");
    }

    FilteredNetwork out;
    out.vocabulary = curve.vocabulary;
    out.method = FilterMethod::sweep_threshold;
    out.kept_edges = curve.mst_edges;
    std::size_t extra = chosen->links_total - curve.mst_edges.size();
    out.kept_edges.insert(out.kept_edges.end(), curve.added_edges.begin(),
                          curve.added_edges.begin() + static_cast<std::ptrdiff_t>(extra));
    canonicalize_edges(out.kept_edges);
    switch (policy) {
        case ThresholdPolicy::min_power:
            out.parameters["policy"] = "min_power";
            out.parameters["min_power"] = format_weight(min_power);
            break;
        case ThresholdPolicy::link_budget:
            out.parameters["policy"] = "link_budget";
            out.parameters["link_budget"] = std::to_string(link_budget);
            break;
        case ThresholdPolicy::peak:
            out.parameters["policy"] = "peak";
            break;
    }
    out.parameters["links_total"] = std::to_string(chosen->links_total);
    if (chosen->power)
        out.recorded_powers[agent_kind_name(curve.kind)] = *chosen->power;
    return out;
}

// MST plus strongest remaining edges up to 2n total links (Hidalgo et al.
// average-degree-4 rule). Falls short with a warning on sparse inputs.
inline FilteredNetwork hidalgo_filter(const TechNetwork& net) {
    auto out = maximum_spanning_tree(net);
    out.method = FilterMethod::hidalgo;
    std::size_t target = 2 * net.node_count();
    std::set<std::uint64_t> kept;
    for (const auto& e : out.kept_edges) kept.insert(pair_key(e.a, e.b));
    for (const auto& e : net.edges) {
        if (out.kept_edges.size() >= target) break;
        if (kept.insert(pair_key(e.a, e.b)).second) out.kept_edges.push_back(e);
    }
    if (out.kept_edges.size() < target)
        out.warnings.push_back("only " + std::to_string(out.kept_edges.size()) +
                               " edges available, target " + std::to_string(target));
    canonicalize_edges(out.kept_edges);
    return out;
}

// Shortest prefix of the canonical descending edge order forming a single
// connected component over the whole vocabulary (Klavans & Boyack).
inline FilteredNetwork klavans_boyack_filter(const TechNetwork& net) {
    detail::require_connected(net);
    detail::UnionFind uf(net.node_count());
    FilteredNetwork out;
    out.vocabulary = net.vocabulary;
    out.method = FilterMethod::klavans_boyack;
    for (const auto& e : net.edges) {
        out.kept_edges.push_back(e);
        uf.unite(e.a, e.b);
        if (uf.components() == 1) break;
    }
    return out;
}

struct ComparisonRow {
    std::string method;
    std::size_t link_count = 0;
    std::optional<double> inventor_power;
    std::optional<double> organization_power;
    bool tuned_for_inventor = false;
    bool tuned_for_organization = false;
};

struct ComparisonReport {
    std::vector<ComparisonRow> rows;
};

// Defined in planarity.hpp; include it (or techmap.hpp) when calling
// compare_methods or pmfg.
inline FilteredNetwork pmfg(const TechNetwork& net);

// Table-2 style comparison. Sweep-threshold networks (tuned per kind) may
// be appended by the caller; all cells are computed in present_links mode,
// with undefined correlations recorded as missing values.
inline ComparisonReport compare_methods(
    const TechNetwork& net, const LikelihoodMatrix& L_inventor,
    const LikelihoodMatrix& L_organization,
    const std::vector<std::pair<std::string, const FilteredNetwork*>>& extra = {}) {
    if (net.vocabulary != L_inventor.vocabulary || net.vocabulary != L_organization.vocabulary)
        throw VocabularyMismatchError("compare: vocabulary mismatch");

    auto power_cell = [&](const std::vector<Edge>& edges,
                          const LikelihoodMatrix& L) -> std::optional<double> {
        try {
            return explanatory_power(edges, L, PowerMode::present_links);
        } catch (const UndefinedCorrelationError&) {
            return std::nullopt;
        }
    };
    auto row_for = [&](const std::string& name, const std::vector<Edge>& edges) {
        ComparisonRow row;
        row.method = name;
        row.link_count = edges.size();
        row.inventor_power = power_cell(edges, L_inventor);
        row.organization_power = power_cell(edges, L_organization);
        return row;
    };

    ComparisonReport report;
    report.rows.push_back(row_for("full", net.edges));
    report.rows.push_back(row_for("mst", maximum_spanning_tree(net).kept_edges));
    report.rows.push_back(row_for("pmfg", pmfg(net).kept_edges));
    report.rows.push_back(row_for("hidalgo", hidalgo_filter(net).kept_edges));
    report.rows.push_back(row_for("klavans_boyack", klavans_boyack_filter(net).kept_edges));
    for (const auto& [name, fn] : extra) {
        auto row = row_for(name, fn->kept_edges);
        auto it = fn->recorded_powers.find("inventor");
        row.tuned_for_inventor = it != fn->recorded_powers.end();
        row.tuned_for_organization = fn->recorded_powers.count("organization") > 0;
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace techmap
