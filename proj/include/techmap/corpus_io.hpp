#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "techmap/corpus.hpp"
#include "techmap/errors.hpp"

namespace techmap {

enum class CorpusFormat { jsonl, csv };

inline CorpusFormat parse_corpus_format(const std::string& s) {
    if (s == "jsonl") return CorpusFormat::jsonl;
    if (s == "csv") return CorpusFormat::csv;
    throw ConfigError("unknown corpus format: " + s);
}

namespace detail {

inline std::set<std::string> string_set(const nlohmann::json& arr, const char* field,
                                        long line) {
    if (!arr.is_array()) throw ParseError(std::string("field '") + field + "' is not an array", line);
    std::set<std::string> out;
    for (const auto& v : arr) {
        if (!v.is_string()) throw ParseError(std::string("non-string entry in '") + field + "'", line);
        out.insert(v.get<std::string>());
    }
    return out;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

inline std::set<std::string> semi_set(const std::string& field) {
    std::set<std::string> out;
    for (auto& part : split(field, ';'))
        if (!part.empty()) out.insert(part);
    return out;
}

}  // namespace detail

inline PatentRecord record_from_json(const nlohmann::json& j, long line) {
    if (!j.is_object()) throw ParseError("record is not a JSON object", line);
    PatentRecord r;
    try {
        r.patent_id = j.at("id").get<std::string>();
        r.grant_year = j.at("year").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad record: ") + e.what(), line);
    }
    r.classes = detail::string_set(j.at("classes"), "classes", line);
    if (j.contains("refs")) r.references = detail::string_set(j["refs"], "refs", line);
    if (j.contains("inventors"))
        r.inventor_ids = detail::string_set(j["inventors"], "inventors", line);
    if (j.contains("assignees"))
        r.assignee_ids = detail::string_set(j["assignees"], "assignees", line);
    return r;
}

inline Corpus load_corpus(const std::string& path, CorpusFormat format) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open corpus file: " + path);
    std::vector<PatentRecord> records;
    std::string linebuf;
    long line = 0;
    if (format == CorpusFormat::jsonl) {
        while (std::getline(in, linebuf)) {
            ++line;
            if (linebuf.empty()) continue;
            nlohmann::json j = nlohmann::json::parse(linebuf, nullptr, false);
            if (j.is_discarded()) throw ParseError("invalid JSON", line);
            records.push_back(record_from_json(j, line));
        }
    } else {
        if (!std::getline(in, linebuf)) throw ParseError("empty CSV file: " + path);
        ++line;
        if (linebuf != "id,year,classes,refs,inventors,assignees")
            throw ParseError("unexpected CSV header: " + linebuf, line);
        while (std::getline(in, linebuf)) {
            ++line;
            if (linebuf.empty()) continue;
            auto cols = detail::split(linebuf, ',');
            if (cols.size() != 6) throw ParseError("expected 6 columns", line);
            PatentRecord r;
            r.patent_id = cols[0];
            try {
                r.grant_year = std::stoi(cols[1]);
            } catch (const std::exception&) {
                throw ParseError("bad year: " + cols[1], line);
            }
            r.classes = detail::semi_set(cols[2]);
            r.references = detail::semi_set(cols[3]);
            r.inventor_ids = detail::semi_set(cols[4]);
            r.assignee_ids = detail::semi_set(cols[5]);
            records.push_back(std::move(r));
        }
    }
    return make_corpus(std::move(records), path);
}

inline std::string record_to_json_line(const PatentRecord& r) {
    nlohmann::ordered_json j;
    j["id"] = r.patent_id;
    j["year"] = r.grant_year;
    j["classes"] = r.classes;
    j["refs"] = r.references;
    j["inventors"] = r.inventor_ids;
    j["assignees"] = r.assignee_ids;
    return j.dump();
}

inline std::string corpus_to_jsonl(const Corpus& c) {
    std::ostringstream out;
    for (const auto& r : c.records) out << record_to_json_line(r) << "\n";
    return out.str();
}

inline std::string corpus_to_csv(const Corpus& c) {
    auto join = [](const std::set<std::string>& xs) {
        std::string s;
        for (const auto& x : xs) {
            if (!s.empty()) s += ';';
            s += x;
        }
        return s;
    };
    std::ostringstream out;
    out << "id,year,classes,refs,inventors,assignees\n";
    for (const auto& r : c.records)
        out << r.patent_id << ',' << r.grant_year << ',' << join(r.classes) << ','
            << join(r.references) << ',' << join(r.inventor_ids) << ','
            << join(r.assignee_ids) << "\n";
    return out.str();
}

}  // namespace techmap
