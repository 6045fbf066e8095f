#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "techmap/errors.hpp"

namespace techmap {

// One granted patent. Class codes and agent ids are opaque strings; the
// toolkit never parses classification hierarchies or disambiguates names.
struct PatentRecord {
    std::string patent_id;
    int grant_year = 0;
    std::set<std::string> classes;
    std::set<std::string> references;
    std::set<std::string> inventor_ids;
    std::set<std::string> assignee_ids;
};

struct Corpus {
    std::vector<PatentRecord> records;
    std::vector<std::string> vocabulary;  // sorted distinct class codes
    int min_year = 0;
    int max_year = 0;
    std::string provenance;
};

namespace detail {

inline void validate_record(const PatentRecord& r, long index) {
    if (r.patent_id.empty())
        throw ValidationError("record " + std::to_string(index) + ": empty patent id");
    if (r.classes.empty())
        throw ValidationError("record " + std::to_string(index) + " (" + r.patent_id +
                              "): classes list is empty");
    if (r.references.count(r.patent_id))
        throw ValidationError("record " + std::to_string(index) + " (" + r.patent_id +
                              "): patent references itself");
}

}  // namespace detail

// Recomputes vocabulary and year range from the records and enforces the
// per-record and corpus-level invariants.
inline Corpus make_corpus(std::vector<PatentRecord> records, std::string provenance) {
    if (records.empty()) throw EmptyResultError("corpus has no records");
    std::unordered_set<std::string> seen_ids;
    std::set<std::string> classes;
    int lo = records.front().grant_year;
    int hi = lo;
    long index = 0;
    for (const auto& r : records) {
        detail::validate_record(r, index++);
        if (!seen_ids.insert(r.patent_id).second)
            throw ValidationError("duplicate patent id: " + r.patent_id);
        classes.insert(r.classes.begin(), r.classes.end());
        lo = std::min(lo, r.grant_year);
        hi = std::max(hi, r.grant_year);
    }
    Corpus c;
    c.records = std::move(records);
    c.vocabulary.assign(classes.begin(), classes.end());
    c.min_year = lo;
    c.max_year = hi;
    c.provenance = std::move(provenance);
    return c;
}

// Removes the listed class codes from every record (for dropping catch-all
// categories like "subject matter not otherwise provided"). Records left
// with no classes are dropped entirely.
inline Corpus exclude_classes(const Corpus& c, const std::set<std::string>& excluded) {
    if (excluded.empty()) return c;
    std::vector<PatentRecord> kept;
    for (auto r : c.records) {
        for (const auto& cls : excluded) r.classes.erase(cls);
        if (!r.classes.empty()) kept.push_back(std::move(r));
    }
    if (kept.empty()) throw EmptyResultError("class exclusion removed every record");
    std::string tag = c.provenance + " excluding";
    for (const auto& cls : excluded) tag += " " + cls;
    return make_corpus(std::move(kept), std::move(tag));
}

// Keeps records with start <= grant_year <= end. Vocabulary is recomputed,
// so classes appearing only outside the window disappear.
inline Corpus window_corpus(const Corpus& c, int start, int end) {
    if (start > end) throw ValidationError("window start exceeds end");
    std::vector<PatentRecord> kept;
    for (const auto& r : c.records)
        if (r.grant_year >= start && r.grant_year <= end) kept.push_back(r);
    if (kept.empty())
        throw EmptyResultError("no records in window [" + std::to_string(start) + "," +
                               std::to_string(end) + "]");
    return make_corpus(std::move(kept), c.provenance + " window " + std::to_string(start) +
                                            ":" + std::to_string(end));
}

}  // namespace techmap
