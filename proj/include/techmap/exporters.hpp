#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "techmap/community.hpp"
#include "techmap/diversification.hpp"
#include "techmap/filtering.hpp"
#include "techmap/linkage.hpp"
#include "techmap/network.hpp"
#include "techmap/overlay.hpp"

namespace techmap {

// FNV-1a, used for input content hashes in sidecars. Not cryptographic;
// only determinism matters here.
inline std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : data) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string fnv1a_hex(const std::string& data) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a(data)));
    return buf;
}

// Single-writer atomic file write: temp file in the same directory, then
// rename over the target.
inline void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp.string());
        out << content;
    }
    fs::rename(tmp, target);
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---- matrix CSV (proximity and likelihood share the square format) ----

inline std::string matrix_to_csv(const std::vector<std::string>& vocabulary,
                                 const std::vector<std::vector<double>>& values,
                                 const std::vector<std::string>* order = nullptr) {
    const std::vector<std::string>& cols = order ? *order : vocabulary;
    std::map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < vocabulary.size(); ++i) idx[vocabulary[i]] = i;
    for (const auto& c : cols)
        if (!idx.count(c)) throw VocabularyMismatchError("ordering class not in vocabulary: " + c);
    if (cols.size() != vocabulary.size())
        throw VocabularyMismatchError("ordering does not cover the vocabulary");

    std::ostringstream out;
    out << "class";
    for (const auto& c : cols) out << ',' << c;
    out << "\n";
    for (const auto& r : cols) {
        out << r;
        for (const auto& c : cols) out << ',' << format_weight(values[idx[r]][idx[c]]);
        out << "\n";
    }
    return out.str();
}

inline std::string network_matrix_csv(const TechNetwork& net,
                                      const MatrixOrdering* ordering = nullptr) {
    auto m = weight_matrix(net);
    return matrix_to_csv(net.vocabulary, m, ordering ? &ordering->order : nullptr);
}

inline std::string likelihood_to_csv(const LikelihoodMatrix& L) {
    return matrix_to_csv(L.vocabulary, L.values);
}

inline LikelihoodMatrix likelihood_from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open matrix file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty matrix file: " + path);
    std::vector<std::string> cols;
    {
        std::istringstream header(line);
        std::string cell;
        std::getline(header, cell, ',');
        if (cell != "class") throw ParseError("expected 'class' header in " + path, 1);
        while (std::getline(header, cell, ',')) cols.push_back(cell);
    }
    LikelihoodMatrix L;
    L.vocabulary = cols;
    std::sort(L.vocabulary.begin(), L.vocabulary.end());
    if (L.vocabulary != cols)
        throw ParseError("matrix columns must be sorted class codes", 1);
    std::size_t n = cols.size();
    L.values.assign(n, std::vector<double>(n, 0.0));
    long lineno = 1;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (row >= n) throw ParseError("too many matrix rows", lineno);
        std::istringstream ss(line);
        std::string cell;
        std::getline(ss, cell, ',');
        if (cell != cols[row]) throw ParseError("row label mismatch: " + cell, lineno);
        for (std::size_t j = 0; j < n; ++j) {
            if (!std::getline(ss, cell, ',')) throw ParseError("short matrix row", lineno);
            L.values[row][j] = std::stod(cell);
        }
        ++row;
    }
    if (row != n) throw ParseError("matrix has " + std::to_string(row) + " rows, expected " +
                                   std::to_string(n));
    return L;
}

// ---- annotated graph exports ----

struct GraphAnnotations {
    const Partition* partition = nullptr;
    const PathOverlay* overlay = nullptr;
    const std::set<std::uint64_t>* mst_pairs = nullptr;
};

namespace detail {

inline std::string xml_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

struct EdgeAnnotation {
    bool on_path = false;
    bool ghost = false;  // overlay hop edge missing from the exported network
    std::optional<double> p_percentile;
};

struct AnnotationIndex {
    std::map<std::string, int> community;
    std::map<std::string, int> agent_counts;
    std::map<std::string, int> entry_year;
    std::map<std::pair<std::string, std::string>, EdgeAnnotation> edge_info;
    std::vector<std::pair<std::string, std::string>> ghost_edges;  // on-path, absent edges
    std::map<std::pair<std::string, std::string>, double> ghost_weights;
};

inline std::pair<std::string, std::string> ordered_pair(const std::string& a,
                                                        const std::string& b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

inline AnnotationIndex build_annotation_index(const std::vector<std::string>& vocabulary,
                                              const std::set<std::pair<std::string, std::string>>& present,
                                              const GraphAnnotations& ann) {
    AnnotationIndex ix;
    if (ann.partition) {
        if (ann.partition->vocabulary != vocabulary)
            throw VocabularyMismatchError("partition vocabulary does not match network");
        for (std::size_t i = 0; i < vocabulary.size(); ++i)
            ix.community[vocabulary[i]] = ann.partition->assignment[i];
    }
    if (ann.overlay) {
        for (const auto& [cls, count] : ann.overlay->class_patent_counts) {
            if (std::find(vocabulary.begin(), vocabulary.end(), cls) == vocabulary.end())
                throw VocabularyMismatchError("overlay class not in network: " + cls);
            ix.agent_counts[cls] = count;
        }
        for (const auto& hop : ann.overlay->hops) {
            ix.entry_year[hop.target_class] = hop.entry_year;
            if (!hop.source_class) continue;
            auto key = ordered_pair(*hop.source_class, hop.target_class);
            auto& info = ix.edge_info[key];
            info.on_path = true;
            info.p_percentile = hop.p_percentile;
            if (!present.count(key)) {
                info.ghost = true;
                ix.ghost_edges.push_back(key);
                ix.ghost_weights[key] = hop.link_weight;  // weight the hop was chosen with
            }
        }
    }
    return ix;
}

}  // namespace detail

enum class GraphFormat { graphml, dot, edge_csv };

inline GraphFormat parse_graph_format(const std::string& s) {
    if (s == "graphml") return GraphFormat::graphml;
    if (s == "dot") return GraphFormat::dot;
    if (s == "edge_csv") return GraphFormat::edge_csv;
    throw ConfigError("unknown graph format: " + s);
}

// Deterministic annotated export. Node attributes: patent_count, community,
// agent_patent_count, entry_year. Edge attributes: weight, in_mst, on_path,
// p_percentile, ghost. Overlay hop edges absent from the exported edge set
// are emitted anyway, marked ghost = true.
inline std::string export_graph(const std::vector<std::string>& vocabulary,
                                const std::vector<Edge>& edges, GraphFormat format,
                                const GraphAnnotations& ann = {},
                                const std::map<std::string, int>* patent_counts = nullptr) {
    std::set<std::pair<std::string, std::string>> present;
    for (const auto& e : edges)
        present.insert({vocabulary[e.a], vocabulary[e.b]});
    auto ix = detail::build_annotation_index(vocabulary, present, ann);

    std::set<std::uint64_t> mst;
    if (ann.mst_pairs) mst = *ann.mst_pairs;

    struct Row {
        std::string a, b;
        double w;
        bool in_mst, on_path, ghost;
        std::optional<double> p;
    };
    std::vector<Row> rows;
    for (const auto& e : edges) {
        Row r{vocabulary[e.a], vocabulary[e.b], e.weight, mst.count(pair_key(e.a, e.b)) > 0,
              false, false, std::nullopt};
        auto it = ix.edge_info.find({r.a, r.b});
        if (it != ix.edge_info.end()) {
            r.on_path = it->second.on_path;
            r.p = it->second.p_percentile;
        }
        rows.push_back(std::move(r));
    }
    for (const auto& key : ix.ghost_edges) {
        Row r{key.first, key.second, ix.ghost_weights.at(key), false, true, true,
              ix.edge_info.at(key).p_percentile};
        rows.push_back(std::move(r));
    }

    std::ostringstream out;
    if (format == GraphFormat::edge_csv) {
        out << "source,target,weight\n";
        for (const auto& r : rows)
            out << r.a << ',' << r.b << ',' << format_weight(r.w) << "\n";
        return out.str();
    }

    auto node_count = [&](const std::string& cls) -> std::optional<int> {
        if (!patent_counts) return std::nullopt;
        auto it = patent_counts->find(cls);
        return it == patent_counts->end() ? 0 : it->second;
    };

    if (format == GraphFormat::dot) {
        out << "graph techmap {\n";
        for (const auto& cls : vocabulary) {
            out << "  \"" << cls << "\" [";
            bool first = true;
            auto attr = [&](const std::string& k, const std::string& v) {
                if (!first) out << ", ";
                out << k << "=\"" << v << "\"";
                first = false;
            };
            if (auto pc = node_count(cls)) attr("patent_count", std::to_string(*pc));
            if (ix.community.count(cls)) attr("community", std::to_string(ix.community[cls]));
            if (ix.agent_counts.count(cls))
                attr("agent_patent_count", std::to_string(ix.agent_counts[cls]));
            if (ix.entry_year.count(cls)) attr("entry_year", std::to_string(ix.entry_year[cls]));
            out << "];\n";
        }
        for (const auto& r : rows) {
            out << "  \"" << r.a << "\" -- \"" << r.b << "\" [weight=\"" << format_weight(r.w)
                << "\", in_mst=\"" << (r.in_mst ? "true" : "false") << "\", on_path=\""
                << (r.on_path ? "true" : "false") << "\"";
            if (r.p) out << ", p_percentile=\"" << format_weight(*r.p) << "\"";
            if (r.ghost) out << ", ghost=\"true\"";
            out << "];\n";
        }
        out << "}\n";
        return out.str();
    }

    // graphml
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
        << "  <key id=\"patent_count\" for=\"node\" attr.name=\"patent_count\" attr.type=\"int\"/>\n"
        << "  <key id=\"community\" for=\"node\" attr.name=\"community\" attr.type=\"int\"/>\n"
        << "  <key id=\"agent_patent_count\" for=\"node\" attr.name=\"agent_patent_count\" attr.type=\"int\"/>\n"
        << "  <key id=\"entry_year\" for=\"node\" attr.name=\"entry_year\" attr.type=\"int\"/>\n"
        << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n"
        << "  <key id=\"in_mst\" for=\"edge\" attr.name=\"in_mst\" attr.type=\"boolean\"/>\n"
        << "  <key id=\"on_path\" for=\"edge\" attr.name=\"on_path\" attr.type=\"boolean\"/>\n"
        << "  <key id=\"p_percentile\" for=\"edge\" attr.name=\"p_percentile\" attr.type=\"double\"/>\n"
        << "  <key id=\"ghost\" for=\"edge\" attr.name=\"ghost\" attr.type=\"boolean\"/>\n"
        << "  <graph edgedefault=\"undirected\">\n";
    for (const auto& cls : vocabulary) {
        out << "    <node id=\"" << detail::xml_escape(cls) << "\">";
        if (auto pc = node_count(cls))
            out << "<data key=\"patent_count\">" << *pc << "</data>";
        if (ix.community.count(cls))
            out << "<data key=\"community\">" << ix.community[cls] << "</data>";
        if (ix.agent_counts.count(cls))
            out << "<data key=\"agent_patent_count\">" << ix.agent_counts[cls] << "</data>";
        if (ix.entry_year.count(cls))
            out << "<data key=\"entry_year\">" << ix.entry_year[cls] << "</data>";
        out << "</node>\n";
    }
    for (const auto& r : rows) {
        out << "    <edge source=\"" << detail::xml_escape(r.a) << "\" target=\""
            << detail::xml_escape(r.b) << "\">"
            << "<data key=\"weight\">" << format_weight(r.w) << "</data>"
            << "<data key=\"in_mst\">" << (r.in_mst ? "true" : "false") << "</data>"
            << "<data key=\"on_path\">" << (r.on_path ? "true" : "false") << "</data>";
        if (r.p) out << "<data key=\"p_percentile\">" << format_weight(*r.p) << "</data>";
        if (r.ghost) out << "<data key=\"ghost\">true</data>";
        out << "</edge>\n";
    }
    out << "  </graph>\n</graphml>\n";
    return out.str();
}

// ---- curve exports ----

inline std::string curve_to_csv(const FilterCurve& curve) {
    std::ostringstream out;
    out << "links_total,added_weight,power\n";
    for (const auto& pt : curve.points) {
        out << pt.links_total << ',';
        if (pt.added_weight) out << format_weight(*pt.added_weight);
        out << ',';
        if (pt.power) out << format_weight(*pt.power);
        out << "\n";
    }
    return out.str();
}

// Static polyline chart of power vs links_total. Gap points (undefined
// power) are omitted from the polyline.
inline std::string curve_to_svg(const FilterCurve& curve,
                                const std::vector<std::size_t>& marked_links = {}) {
    if (curve.points.empty()) throw ValidationError("empty filter curve");
    const double width = 640, height = 400, ml = 60, mr = 20, mt = 20, mb = 45;
    double x_min = static_cast<double>(curve.points.front().links_total);
    double x_max = static_cast<double>(curve.points.back().links_total);
    if (x_max == x_min) x_max = x_min + 1;
    double y_min = 1.0, y_max = -1.0;
    for (const auto& pt : curve.points)
        if (pt.power) {
            y_min = std::min(y_min, *pt.power);
            y_max = std::max(y_max, *pt.power);
        }
    if (y_min > y_max) {
        y_min = 0.0;
        y_max = 1.0;
    }
    if (y_max == y_min) y_max = y_min + 1e-6;

    auto sx = [&](double x) {
        return ml + (x - x_min) / (x_max - x_min) * (width - ml - mr);
    };
    auto sy = [&](double y) {
        return height - mb - (y - y_min) / (y_max - y_min) * (height - mt - mb);
    };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\">\n";
    out << "  <line x1=\"" << sx(x_min) << "\" y1=\"" << sy(y_min) << "\" x2=\"" << sx(x_max)
        << "\" y2=\"" << sy(y_min) << "\" stroke=\"black\"/>\n";
    out << "  <line x1=\"" << sx(x_min) << "\" y1=\"" << sy(y_min) << "\" x2=\"" << sx(x_min)
        << "\" y2=\"" << sy(y_max) << "\" stroke=\"black\"/>\n";
    out << "  <text x=\"" << (width / 2) << "\" y=\"" << (height - 8)
        << "\" text-anchor=\"middle\">links_total</text>\n";
    out << "  <text x=\"14\" y=\"" << (height / 2)
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 " << (height / 2)
        << ")\">explanatory power</text>\n";
    out << "  <polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    for (const auto& pt : curve.points) {
        if (!pt.power) continue;
        out << sx(static_cast<double>(pt.links_total)) << ',' << sy(*pt.power) << ' ';
    }
    out << "\"/>\n";
    for (auto links : marked_links) {
        for (const auto& pt : curve.points) {
            if (pt.links_total != links || !pt.power) continue;
            out << "  <circle cx=\"" << sx(static_cast<double>(pt.links_total)) << "\" cy=\""
                << sy(*pt.power) << "\" r=\"4\" fill=\"crimson\"/>\n";
        }
    }
    out << "</svg>\n";
    return out.str();
}

// ---- partition / comparison / overlay serialization ----

inline std::string partition_to_csv(const Partition& p) {
    std::ostringstream out;
    out << "class,community\n";
    for (std::size_t i = 0; i < p.vocabulary.size(); ++i)
        out << p.vocabulary[i] << ',' << p.assignment[i] << "\n";
    return out.str();
}

inline std::string comparison_to_csv(const ComparisonReport& report) {
    std::ostringstream out;
    out << "method,link_count,inventor_power,organization_power,tuned_for\n";
    for (const auto& row : report.rows) {
        out << row.method << ',' << row.link_count << ',';
        if (row.inventor_power) out << format_weight(*row.inventor_power);
        out << ',';
        if (row.organization_power) out << format_weight(*row.organization_power);
        out << ',';
        if (row.tuned_for_inventor) out << "inventor";
        if (row.tuned_for_organization) out << (row.tuned_for_inventor ? ";organization" : "organization");
        out << "\n";
    }
    return out.str();
}

inline std::string comparison_to_text(const ComparisonReport& report) {
    std::ostringstream out;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-24s %10s %16s %20s\n", "method", "links",
                  "inventor_power", "organization_power");
    out << buf;
    for (const auto& row : report.rows) {
        auto cell = [](const std::optional<double>& v) {
            if (!v) return std::string("n/a");
            char b[32];
            std::snprintf(b, sizeof(b), "%.4f", *v);
            return std::string(b);
        };
        std::snprintf(buf, sizeof(buf), "%-24s %10zu %16s %20s\n", row.method.c_str(),
                      row.link_count, cell(row.inventor_power).c_str(),
                      cell(row.organization_power).c_str());
        out << buf;
    }
    return out.str();
}

inline nlohmann::ordered_json overlay_to_json(const PathOverlay& overlay) {
    nlohmann::ordered_json j;
    j["agent"] = overlay.agent_id;
    j["kind"] = agent_kind_name(overlay.kind);
    j["activity_window"] = overlay.activity_window;
    j["class_patent_counts"] = overlay.class_patent_counts;
    j["hops"] = nlohmann::ordered_json::array();
    for (const auto& hop : overlay.hops) {
        nlohmann::ordered_json h;
        h["target"] = hop.target_class;
        h["entry_year"] = hop.entry_year;
        if (hop.source_class) {
            h["source"] = *hop.source_class;
            h["link_weight"] = hop.link_weight;
            h["p_percentile"] = hop.p_percentile;
            h["present_in_filtered"] = hop.present_in_filtered;
        } else {
            h["no_path"] = true;
        }
        j["hops"].push_back(std::move(h));
    }
    return j;
}

inline nlohmann::ordered_json forecast_to_json(const Forecast& fc) {
    nlohmann::ordered_json j;
    j["agent"] = fc.agent_id;
    j["kind"] = agent_kind_name(fc.kind);
    j["as_of"] = fc.as_of_year;
    j["activity_window"] = fc.activity_window;
    j["candidates"] = nlohmann::ordered_json::array();
    for (const auto& c : fc.candidates) {
        nlohmann::ordered_json e;
        e["class"] = c.target_class;
        e["source"] = c.best_source_class;
        e["link_weight"] = c.link_weight;
        e["p_percentile"] = c.p_percentile;
        j["candidates"].push_back(std::move(e));
    }
    return j;
}

inline std::string profiles_to_jsonl(const std::vector<AgentProfile>& profiles) {
    std::ostringstream out;
    for (const auto& p : profiles) {
        nlohmann::ordered_json j;
        j["agent"] = p.agent_id;
        j["kind"] = agent_kind_name(p.kind);
        j["entries"] = p.entry_year;
        out << j.dump() << "\n";
    }
    return out.str();
}

// Sidecar carries enough to re-run the producing command byte-identically:
// the command, its parameters (seeds included), and input content hashes.
inline void write_sidecar(const std::string& artifact_path, const std::string& command,
                          const std::map<std::string, std::string>& parameters,
                          const std::map<std::string, std::string>& input_hashes) {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["parameters"] = parameters;
    j["inputs"] = input_hashes;
    write_file_atomic(artifact_path + ".json", j.dump(2) + "\n");
}

}  // namespace techmap
