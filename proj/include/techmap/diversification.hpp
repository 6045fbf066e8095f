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

enum class AgentKind { inventor, organization };

inline std::string agent_kind_name(AgentKind k) {
    return k == AgentKind::inventor ? "inventor" : "organization";
}

inline AgentKind parse_agent_kind(const std::string& s) {
    if (s == "inventor") return AgentKind::inventor;
    if (s == "organization") return AgentKind::organization;
    throw ConfigError("unknown agent kind: " + s);
}

struct AgentProfile {
    std::string agent_id;
    AgentKind kind = AgentKind::inventor;
    std::map<std::pair<std::string, int>, int> patents_by_class_year;
    std::map<std::string, int> entry_year;  // first grant year per class

    bool active_in(const std::string& cls, int from_year, int to_year) const {
        for (int y = from_year; y <= to_year; ++y)
            if (patents_by_class_year.count({cls, y})) return true;
        return false;
    }
};

// One profile per distinct agent id of the requested kind. A patent listing
// k classes and m agents contributes to all k*m combinations.
inline std::vector<AgentProfile> build_profiles(const Corpus& c, AgentKind kind) {
    std::map<std::string, AgentProfile> by_id;
    for (const auto& r : c.records) {
        const auto& ids = kind == AgentKind::inventor ? r.inventor_ids : r.assignee_ids;
        for (const auto& id : ids) {
            auto& p = by_id[id];
            p.agent_id = id;
            p.kind = kind;
            for (const auto& cls : r.classes) {
                ++p.patents_by_class_year[{cls, r.grant_year}];
                auto it = p.entry_year.find(cls);
                if (it == p.entry_year.end() || r.grant_year < it->second)
                    p.entry_year[cls] = r.grant_year;
            }
        }
    }
    std::vector<AgentProfile> out;
    out.reserve(by_id.size());
    for (auto& [id, p] : by_id) out.push_back(std::move(p));
    return out;
}

struct LikelihoodMatrix {
    std::vector<std::string> vocabulary;    // sorted
    std::vector<std::vector<double>> values;  // symmetric, zero diagonal
    AgentKind kind = AgentKind::inventor;
    int window_start = 0;
    int window_end = 0;

    double at(std::size_t i, std::size_t j) const { return values[i][j]; }
};

// L(i,j) = |A_i ∩ A_j| / max(|A_i|, |A_j|), the minimum of the two
// conditional probabilities that an agent with patents in one class also
// holds patents in the other. Classes no agent entered give L = 0.
inline LikelihoodMatrix diversification_likelihood(const std::vector<AgentProfile>& profiles,
                                                   const std::vector<std::string>& vocabulary) {
    std::size_t n = vocabulary.size();
    std::unordered_map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i) idx.emplace(vocabulary[i], i);

    std::vector<std::set<std::size_t>> agents_in_class(n);
    std::size_t agent_no = 0;
    for (const auto& p : profiles) {
        for (const auto& [cls, year] : p.entry_year) {
            auto it = idx.find(cls);
            if (it != idx.end()) agents_in_class[it->second].insert(agent_no);
        }
        ++agent_no;
    }

    LikelihoodMatrix L;
    L.vocabulary = vocabulary;
    L.values.assign(n, std::vector<double>(n, 0.0));
    if (!profiles.empty()) L.kind = profiles.front().kind;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto& ai = agents_in_class[i];
            const auto& aj = agents_in_class[j];
            if (ai.empty() || aj.empty()) continue;
            const auto& small = ai.size() <= aj.size() ? ai : aj;
            const auto& large = ai.size() <= aj.size() ? aj : ai;
            std::size_t inter = 0;
            for (auto a : small) inter += large.count(a);
            double v = static_cast<double>(inter) /
                       static_cast<double>(std::max(ai.size(), aj.size()));
            L.values[i][j] = L.values[j][i] = v;
        }
    }
    return L;
}

// Product-moment correlation; throws when either side has zero variance.
inline double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw ValidationError("pearson: length mismatch");
    std::size_t n = xs.size();
    if (n < 2) throw UndefinedCorrelationError("pearson needs at least 2 samples");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = xs[i] - mx;
        double dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw UndefinedCorrelationError("pearson: zero variance sequence");
    return sxy / std::sqrt(sxx * syy);
}

enum class PowerMode { present_links, all_pairs_zero_imputed };

inline std::string power_mode_name(PowerMode m) {
    return m == PowerMode::present_links ? "present_links" : "all_pairs_zero_imputed";
}

// Pearson correlation between edge weights and diversification likelihoods.
// present_links samples only the pairs carrying an edge in the evaluated
// (possibly filtered) network; the imputed mode samples every pair with
// absent edges at weight 0.
inline double explanatory_power(const std::vector<Edge>& edges, const LikelihoodMatrix& L,
                                PowerMode mode = PowerMode::present_links) {
    std::vector<double> ws, ls;
    if (mode == PowerMode::present_links) {
        if (edges.empty()) throw ValidationError("explanatory_power: empty edge set");
        ws.reserve(edges.size());
        ls.reserve(edges.size());
        for (const auto& e : edges) {
            ws.push_back(e.weight);
            ls.push_back(L.at(e.a, e.b));
        }
    } else {
        std::size_t n = L.vocabulary.size();
        std::map<std::uint64_t, double> present;
        for (const auto& e : edges) present[pair_key(e.a, e.b)] = e.weight;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                auto it = present.find(pair_key(static_cast<std::uint32_t>(i),
                                                static_cast<std::uint32_t>(j)));
                ws.push_back(it == present.end() ? 0.0 : it->second);
                ls.push_back(L.at(i, j));
            }
        }
    }
    return pearson(ws, ls);
}

}  // namespace techmap
