#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "techmap/diversification.hpp"
#include "techmap/filtering.hpp"
#include "techmap/network.hpp"

namespace techmap {

struct PathHop {
    std::string target_class;
    int entry_year = 0;
    // Absent when no previously entered class was active and linked to the
    // target (the overlay renders such targets without an arrow).
    std::optional<std::string> source_class;
    double link_weight = 0.0;
    double p_percentile = 0.0;
    bool present_in_filtered = false;
};

struct PathOverlay {
    std::string agent_id;
    AgentKind kind = AgentKind::inventor;
    std::map<std::string, int> class_patent_counts;  // node shading data
    std::vector<PathHop> hops;
    int activity_window = 5;
};

// p = fraction of the source class's non-zero links with weight <= the
// queried weight.
inline double link_percentile(const TechNetwork& net, const std::string& source_class,
                              double weight) {
    auto src = static_cast<std::uint32_t>(net.index_of(source_class));
    std::size_t total = 0, at_or_below = 0;
    for (const auto& e : net.edges) {
        if (e.a != src && e.b != src) continue;
        ++total;
        if (e.weight <= weight) ++at_or_below;
    }
    if (total == 0)
        throw IsolatedClassError("class has no non-zero links: " + source_class);
    return static_cast<double>(at_or_below) / static_cast<double>(total);
}

namespace detail {

// Entry order: by entry year, ties by class code.
inline std::vector<std::pair<std::string, int>> sorted_entries(const AgentProfile& profile) {
    std::vector<std::pair<std::string, int>> entries(profile.entry_year.begin(),
                                                     profile.entry_year.end());
    std::sort(entries.begin(), entries.end(), [](const auto& x, const auto& y) {
        return x.second != y.second ? x.second < y.second : x.first < y.first;
    });
    return entries;
}

}  // namespace detail

// For each class the agent entered after its first, find the strongest
// scoring_net link from a previously entered class that was still active in
// the W years before the target's entry. Sources entering in the same year
// as the target are not eligible (arrows point strictly forward in time).
inline PathOverlay diversification_paths(const AgentProfile& profile,
                                         const TechNetwork& scoring_net,
                                         const FilteredNetwork& filtered, int window_years = 5) {
    if (profile.entry_year.empty()) throw EmptyProfileError("agent has no entered classes");

    PathOverlay overlay;
    overlay.agent_id = profile.agent_id;
    overlay.kind = profile.kind;
    overlay.activity_window = window_years;
    for (const auto& [key, count] : profile.patents_by_class_year)
        overlay.class_patent_counts[key.first] += count;

    auto w = weight_matrix(scoring_net);
    std::set<std::uint64_t> filtered_pairs;
    for (const auto& e : filtered.kept_edges) filtered_pairs.insert(pair_key(e.a, e.b));

    auto entries = detail::sorted_entries(profile);
    for (std::size_t t = 1; t < entries.size(); ++t) {
        const auto& [target, ty] = entries[t];
        PathHop hop;
        hop.target_class = target;
        hop.entry_year = ty;
        auto ti = scoring_net.index_of(target);

        for (std::size_t s = 0; s < t; ++s) {
            const auto& [source, sy] = entries[s];
            if (sy >= ty) continue;  // strictly earlier entries only
            if (!profile.active_in(source, ty - window_years, ty - 1)) continue;
            auto si = scoring_net.index_of(source);
            double weight = w[si][ti];
            if (weight <= 0.0) continue;
            // ties: earlier entry year wins, then lexicographic class code;
            // `entries` is already in that order, so strictly-greater keeps
            // the first of equals.
            if (!hop.source_class || weight > hop.link_weight) {
                hop.source_class = source;
                hop.link_weight = weight;
            }
        }
        if (hop.source_class) {
            auto si = scoring_net.index_of(*hop.source_class);
            hop.p_percentile = link_percentile(scoring_net, *hop.source_class, hop.link_weight);
            auto a = static_cast<std::uint32_t>(std::min(si, ti));
            auto b = static_cast<std::uint32_t>(std::max(si, ti));
            hop.present_in_filtered = filtered_pairs.count(pair_key(a, b)) > 0;
        }
        overlay.hops.push_back(std::move(hop));
    }
    return overlay;
}

struct ForecastCandidate {
    std::string target_class;
    std::string best_source_class;
    double link_weight = 0.0;
    double p_percentile = 0.0;
};

struct Forecast {
    std::string agent_id;
    AgentKind kind = AgentKind::inventor;
    int as_of_year = 0;
    int activity_window = 5;
    std::vector<ForecastCandidate> candidates;  // descending by weight
};

// Ranks unentered classes by their strongest link from any class the agent
// is still active in at the as-of year.
inline Forecast forecast(const AgentProfile& profile, const TechNetwork& scoring_net,
                         int as_of_year, int window_years = 5, std::size_t top_k = 10) {
    Forecast fc;
    fc.agent_id = profile.agent_id;
    fc.kind = profile.kind;
    fc.as_of_year = as_of_year;
    fc.activity_window = window_years;

    std::vector<std::string> active;
    for (const auto& [cls, year] : profile.entry_year)
        if (year <= as_of_year && profile.active_in(cls, as_of_year - window_years, as_of_year))
            active.push_back(cls);
    if (active.empty())
        throw NoActiveFieldsError("agent " + profile.agent_id + " has no active fields in [" +
                                  std::to_string(as_of_year - window_years) + "," +
                                  std::to_string(as_of_year) + "]");

    auto w = weight_matrix(scoring_net);
    std::set<std::string> entered;
    for (const auto& [cls, year] : profile.entry_year)
        if (year <= as_of_year) entered.insert(cls);

    for (const auto& cls : scoring_net.vocabulary) {
        if (entered.count(cls)) continue;
        auto ti = scoring_net.index_of(cls);
        ForecastCandidate cand;
        cand.target_class = cls;
        for (const auto& src : active) {
            double weight = w[scoring_net.index_of(src)][ti];
            if (weight > cand.link_weight) {
                cand.link_weight = weight;
                cand.best_source_class = src;
            }
        }
        if (cand.link_weight <= 0.0) continue;  // no link from any active field
        cand.p_percentile = link_percentile(scoring_net, cand.best_source_class, cand.link_weight);
        fc.candidates.push_back(std::move(cand));
    }
    std::sort(fc.candidates.begin(), fc.candidates.end(), [](const auto& x, const auto& y) {
        return x.link_weight != y.link_weight ? x.link_weight > y.link_weight
                                              : x.target_class < y.target_class;
    });
    if (fc.candidates.size() > top_k) fc.candidates.resize(top_k);
    return fc;
}

}  // namespace techmap
