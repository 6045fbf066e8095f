#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "techmap/corpus.hpp"
#include "techmap/errors.hpp"
#include "techmap/rng.hpp"

namespace techmap {

struct GeneratorConfig {
    std::size_t n_classes = 30;
    std::size_t n_communities = 6;
    std::size_t patents_per_class = 30;
    std::size_t shared_pool_size = 160;
    double intra_community_reference_bias = 0.85;
    std::size_t n_inventors = 200;
    std::size_t n_organizations = 80;
    double diversification_proximity_exponent = 2.0;
    std::uint64_t seed = 20260826;

    void validate() const {
        if (n_classes == 0 || n_communities == 0 || patents_per_class == 0 ||
            shared_pool_size == 0 || n_inventors == 0 || n_organizations == 0)
            throw ConfigError("generator counts must be positive");
        if (n_communities > n_classes)
            throw ConfigError("n_communities exceeds n_classes");
        if (intra_community_reference_bias < 0.0 || intra_community_reference_bias > 1.0)
            throw ConfigError("reference bias must lie in [0,1]");
        if (diversification_proximity_exponent < 0.0)
            throw ConfigError("proximity exponent must be nonnegative");
    }
};

struct GroundTruth {
    std::map<std::string, int> planted_partition;       // class -> community id
    std::vector<std::string> vocabulary;                // sorted
    std::vector<std::vector<double>> planted_proximity; // indexed by vocabulary order
};

namespace detail {

struct ClassLayout {
    int community = 0;
    std::size_t pool_begin = 0;  // window into the community reference pool
    std::size_t pool_end = 0;
};

inline std::string class_code(std::size_t k) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "C%03zu", k);
    return buf;
}

// Classes within a community draw references from overlapping windows of a
// shared pool; window overlap decays with the within-community distance, so
// the planted proximity has graded structure instead of a flat block.
inline std::vector<ClassLayout> layout_classes(const GeneratorConfig& cfg) {
    std::vector<ClassLayout> layout(cfg.n_classes);
    std::size_t base = cfg.n_classes / cfg.n_communities;
    std::size_t rem = cfg.n_classes % cfg.n_communities;
    std::size_t k = 0;
    for (std::size_t c = 0; c < cfg.n_communities; ++c) {
        std::size_t members = base + (c < rem ? 1 : 0);
        std::size_t width = std::max<std::size_t>(cfg.shared_pool_size / 2, 1);
        for (std::size_t t = 0; t < members; ++t, ++k) {
            std::size_t slack = cfg.shared_pool_size - width;
            std::size_t offset =
                members > 1 ? (t * slack + (members - 1) / 2) / (members - 1) : 0;
            layout[k] = {static_cast<int>(c), offset, offset + width};
        }
    }
    return layout;
}

inline double interval_jaccard(const ClassLayout& x, const ClassLayout& y) {
    if (x.community != y.community) return 0.02;  // small positive cross-community floor
    std::size_t lo = std::max(x.pool_begin, y.pool_begin);
    std::size_t hi = std::min(x.pool_end, y.pool_end);
    double inter = hi > lo ? static_cast<double>(hi - lo) : 0.0;
    double uni = static_cast<double>((x.pool_end - x.pool_begin) +
                                     (y.pool_end - y.pool_begin)) - inter;
    return std::max(inter / uni, 0.02);
}

}  // namespace detail

// Deterministic synthetic corpus with planted community structure and
// planted proximity-driven agent diversification. Classes in the same
// community share reference pools (expected intra-community Jaccard exceeds
// inter-community); agents enter classes with probability proportional to
// planted proximity raised to the configured exponent.
inline std::pair<Corpus, GroundTruth> generate_synthetic(const GeneratorConfig& cfg) {
    cfg.validate();
    Rng rng(cfg.seed);

    auto layout = detail::layout_classes(cfg);
    GroundTruth gt;
    for (std::size_t k = 0; k < cfg.n_classes; ++k) {
        gt.vocabulary.push_back(detail::class_code(k));
        gt.planted_partition[detail::class_code(k)] = layout[k].community;
    }
    gt.planted_proximity.assign(cfg.n_classes, std::vector<double>(cfg.n_classes, 0.0));
    for (std::size_t i = 0; i < cfg.n_classes; ++i)
        for (std::size_t j = 0; j < cfg.n_classes; ++j)
            if (i != j)
                gt.planted_proximity[i][j] = detail::interval_jaccard(layout[i], layout[j]);

    constexpr std::size_t kRefsPerPatent = 8;
    constexpr int kFirstYear = 1980;
    constexpr int kYearSpan = 30;

    std::vector<PatentRecord> records;
    std::uint64_t next_patent = 0;
    auto make_patent = [&](std::size_t cls, int year, const std::string& inventor,
                           const std::string& assignee) {
        PatentRecord r;
        r.patent_id = "P" + std::to_string(next_patent++);
        r.grant_year = year;
        r.classes.insert(detail::class_code(cls));
        const auto& lay = layout[cls];
        for (std::size_t d = 0; d < kRefsPerPatent; ++d) {
            if (rng.uniform_real() < cfg.intra_community_reference_bias) {
                std::size_t span = lay.pool_end - lay.pool_begin;
                std::size_t slot = lay.pool_begin + rng.uniform_index(span);
                r.references.insert("R" + std::to_string(lay.community) + "_" +
                                    std::to_string(slot));
            } else {
                r.references.insert("G_" + std::to_string(rng.uniform_index(cfg.shared_pool_size)));
            }
        }
        if (!inventor.empty()) r.inventor_ids.insert(inventor);
        if (!assignee.empty()) r.assignee_ids.insert(assignee);
        records.push_back(std::move(r));
    };

    // Background patents carrying the class-level reference structure.
    for (std::size_t cls = 0; cls < cfg.n_classes; ++cls)
        for (std::size_t p = 0; p < cfg.patents_per_class; ++p)
            make_patent(cls, kFirstYear + static_cast<int>(rng.uniform_index(kYearSpan)), "", "");

    // Agents enter classes sequentially; every entry gets its own patent so
    // profiles reconstruct the planted trajectories exactly.
    auto simulate_agent = [&](const std::string& id, bool is_inventor) {
        std::size_t max_entries = std::min<std::size_t>(cfg.n_classes, 6);
        std::size_t n_entries = 2 + rng.uniform_index(max_entries - 1);
        int year = kFirstYear + 1 + static_cast<int>(rng.uniform_index(15));
        std::vector<std::size_t> entered;
        std::vector<bool> is_entered(cfg.n_classes, false);

        std::size_t first = rng.uniform_index(cfg.n_classes);
        entered.push_back(first);
        is_entered[first] = true;
        make_patent(first, year, is_inventor ? id : "", is_inventor ? "" : id);

        for (std::size_t e = 1; e < n_entries; ++e) {
            year += 1 + static_cast<int>(rng.uniform_index(3));
            std::vector<double> weights;
            std::vector<std::size_t> candidates;
            for (std::size_t c = 0; c < cfg.n_classes; ++c) {
                if (is_entered[c]) continue;
                double prox = 0.0;
                for (std::size_t s : entered)
                    prox = std::max(prox, gt.planted_proximity[s][c]);
                candidates.push_back(c);
                weights.push_back(std::pow(prox, cfg.diversification_proximity_exponent));
            }
            if (candidates.empty()) break;
            std::size_t chosen = candidates[rng.weighted_index(weights)];
            entered.push_back(chosen);
            is_entered[chosen] = true;
            make_patent(chosen, year, is_inventor ? id : "", is_inventor ? "" : id);
            // keep the home field alive so overlay activity windows see it
            make_patent(entered.front(), year, is_inventor ? id : "", is_inventor ? "" : id);
        }
    };

    for (std::size_t i = 0; i < cfg.n_inventors; ++i)
        simulate_agent("I" + std::to_string(i), true);
    for (std::size_t o = 0; o < cfg.n_organizations; ++o)
        simulate_agent("O" + std::to_string(o), false);

    return {make_corpus(std::move(records), "synthetic seed=" + std::to_string(cfg.seed)), gt};
}

}  // namespace techmap
