#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "techmap/community.hpp"
#include "techmap/corpus_io.hpp"
#include "techmap/diversification.hpp"
#include "techmap/exporters.hpp"
#include "techmap/filtering.hpp"
#include "techmap/generator.hpp"
#include "techmap/linkage.hpp"
#include "techmap/overlay.hpp"
#include "techmap/planarity.hpp"
#include "techmap/proximity.hpp"

namespace techmap::cli {

inline std::map<std::string, std::string> parse_kv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\r')) line.pop_back();
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected key=value at " + path + ":" + std::to_string(lineno));
        kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return kv;
}

inline GeneratorConfig generator_config_from_kv(const std::map<std::string, std::string>& kv) {
    GeneratorConfig cfg;
    auto get_sz = [&](const char* key, std::size_t& dst) {
        auto it = kv.find(key);
        if (it != kv.end()) dst = static_cast<std::size_t>(std::stoull(it->second));
    };
    auto get_d = [&](const char* key, double& dst) {
        auto it = kv.find(key);
        if (it != kv.end()) dst = std::stod(it->second);
    };
    get_sz("n_classes", cfg.n_classes);
    get_sz("n_communities", cfg.n_communities);
    get_sz("patents_per_class", cfg.patents_per_class);
    get_sz("shared_pool_size", cfg.shared_pool_size);
    get_d("intra_community_reference_bias", cfg.intra_community_reference_bias);
    get_sz("n_inventors", cfg.n_inventors);
    get_sz("n_organizations", cfg.n_organizations);
    get_d("diversification_proximity_exponent", cfg.diversification_proximity_exponent);
    auto it = kv.find("seed");
    if (it != kv.end()) cfg.seed = std::stoull(it->second);
    return cfg;
}

inline std::map<std::string, std::string> generator_config_params(const GeneratorConfig& cfg) {
    return {{"n_classes", std::to_string(cfg.n_classes)},
            {"n_communities", std::to_string(cfg.n_communities)},
            {"patents_per_class", std::to_string(cfg.patents_per_class)},
            {"shared_pool_size", std::to_string(cfg.shared_pool_size)},
            {"intra_community_reference_bias", format_weight(cfg.intra_community_reference_bias)},
            {"n_inventors", std::to_string(cfg.n_inventors)},
            {"n_organizations", std::to_string(cfg.n_organizations)},
            {"diversification_proximity_exponent",
             format_weight(cfg.diversification_proximity_exponent)},
            {"seed", std::to_string(cfg.seed)}};
}

namespace detail {

inline std::pair<int, int> parse_window(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw ConfigError("window must be Y1:Y2, got " + spec);
    return {std::stoi(spec.substr(0, colon)), std::stoi(spec.substr(colon + 1))};
}

inline std::set<std::string> parse_exclusions(const std::string& csv) {
    std::set<std::string> out;
    std::istringstream ss(csv);
    std::string cls;
    while (std::getline(ss, cls, ','))
        if (!cls.empty()) out.insert(cls);
    return out;
}

inline Corpus load_input(const std::string& path, const std::string& format,
                         const std::optional<std::string>& window,
                         const std::string& exclude = "") {
    auto corpus = load_corpus(path, parse_corpus_format(format));
    corpus = exclude_classes(corpus, parse_exclusions(exclude));
    if (window) {
        auto [y1, y2] = parse_window(*window);
        corpus = window_corpus(corpus, y1, y2);
    }
    return corpus;
}

inline std::map<std::string, std::string> hash_inputs(
    const std::vector<std::string>& paths) {
    std::map<std::string, std::string> hashes;
    for (const auto& p : paths) hashes[p] = fnv1a_hex(read_file(p));
    return hashes;
}

inline void emit(const std::string& path, const std::string& content,
                 const std::string& command,
                 const std::map<std::string, std::string>& params,
                 const std::vector<std::string>& input_paths) {
    write_file_atomic(path, content);
    write_sidecar(path, command, params, hash_inputs(input_paths));
}

inline LikelihoodMatrix load_likelihood(const std::string& path, AgentKind kind) {
    auto L = likelihood_from_csv(path);
    L.kind = kind;
    return L;
}

}  // namespace detail

// ---- subcommand bodies (shared by the CLI binary and the test suite) ----

inline int run_generate(const GeneratorConfig& cfg, const std::string& out,
                        const std::optional<std::string>& ground_truth_out) {
    auto [corpus, gt] = generate_synthetic(cfg);
    auto params = generator_config_params(cfg);
    detail::emit(out, corpus_to_jsonl(corpus), "generate", params, {});
    if (ground_truth_out) {
        nlohmann::ordered_json j;
        j["planted_partition"] = gt.planted_partition;
        j["vocabulary"] = gt.vocabulary;
        j["planted_proximity"] = gt.planted_proximity;
        detail::emit(*ground_truth_out, j.dump(2) + "\n", "generate", params, {});
    }
    std::cout << "generate: " << corpus.records.size() << " records, "
              << corpus.vocabulary.size() << " classes -> " << out << "\n";
    return 0;
}

struct BuildOptions {
    std::string measure = "jaccard";
    bool cosine_drop_focal = false;
    std::string input;
    std::string format = "jsonl";
    std::optional<std::string> window;
    std::string exclude;  // comma-separated class codes to drop
    std::string out;
    std::optional<std::string> matrix_out;
    bool cluster_order = false;
};

inline int run_build(const BuildOptions& opt) {
    auto corpus = detail::load_input(opt.input, opt.format, opt.window, opt.exclude);
    TechNetwork net = opt.measure == "jaccard" ? jaccard_network(corpus)
                                               : cosine_network(corpus, opt.cosine_drop_focal);
    std::map<std::string, std::string> params{{"measure", opt.measure},
                                              {"format", opt.format}};
    if (opt.measure == "cosine")
        params["cosine_drop_focal"] = opt.cosine_drop_focal ? "true" : "false";
    if (opt.window) params["window"] = *opt.window;
    if (!opt.exclude.empty()) params["exclude"] = opt.exclude;
    detail::emit(opt.out, network_to_csv(net), "build", params, {opt.input});
    if (opt.matrix_out) {
        std::optional<MatrixOrdering> ordering;
        if (opt.cluster_order) ordering = reorder_matrix(net);
        params["cluster_order"] = opt.cluster_order ? "true" : "false";
        detail::emit(*opt.matrix_out,
                     network_matrix_csv(net, ordering ? &*ordering : nullptr), "build",
                     params, {opt.input});
    }
    std::cout << "build: " << net.node_count() << " classes, " << net.edges.size()
              << " links (" << opt.measure << ") -> " << opt.out << "\n";
    return 0;
}

inline int run_likelihood(const std::string& kind_name, const std::string& input,
                          const std::string& format, const std::optional<std::string>& window,
                          const std::string& out,
                          const std::optional<std::string>& profiles_out = {},
                          const std::string& exclude = "") {
    auto kind = parse_agent_kind(kind_name);
    auto corpus = detail::load_input(input, format, window, exclude);
    auto profiles = build_profiles(corpus, kind);
    if (profiles.empty())
        std::cerr << "warning: no agents of kind " << kind_name << " in " << input << "\n";
    auto L = diversification_likelihood(profiles, corpus.vocabulary);
    L.kind = kind;
    L.window_start = corpus.min_year;
    L.window_end = corpus.max_year;
    std::map<std::string, std::string> params{{"kind", kind_name}, {"format", format}};
    if (window) params["window"] = *window;
    if (!exclude.empty()) params["exclude"] = exclude;
    detail::emit(out, likelihood_to_csv(L), "likelihood", params, {input});
    if (profiles_out)
        detail::emit(*profiles_out, profiles_to_jsonl(profiles), "likelihood", params, {input});
    std::cout << "likelihood: " << profiles.size() << " " << kind_name << " profiles over "
              << corpus.vocabulary.size() << " classes -> " << out << "\n";
    return 0;
}

inline int run_sweep(const std::string& net_path, const std::string& likelihood_path,
                     const std::string& kind_name, const std::string& mode_name,
                     const std::string& out, const std::optional<std::string>& svg_out) {
    auto net = network_from_csv(net_path);
    auto L = detail::load_likelihood(likelihood_path, parse_agent_kind(kind_name));
    PowerMode mode =
        mode_name == "imputed" ? PowerMode::all_pairs_zero_imputed : PowerMode::present_links;
    auto curve = sweep_curve(net, L, mode);
    std::map<std::string, std::string> params{
        {"kind", kind_name}, {"mode", power_mode_name(mode)}};
    detail::emit(out, curve_to_csv(curve), "sweep", params, {net_path, likelihood_path});
    if (svg_out)
        detail::emit(*svg_out, curve_to_svg(curve), "sweep", params,
                     {net_path, likelihood_path});
    std::cout << "sweep: " << curve.points.size() << " points, links "
              << curve.points.front().links_total << ".." << curve.points.back().links_total
              << " -> " << out << "\n";
    return 0;
}

struct FilterOptions {
    std::string method;  // mst|pmfg|hidalgo|kb|threshold
    std::string net_path;
    std::optional<std::string> likelihood_path;  // threshold only
    std::string kind = "inventor";
    std::optional<double> min_power;
    std::optional<std::size_t> links;
    bool peak = false;
    std::string out;
};

inline FilteredNetwork apply_filter(const FilterOptions& opt, const TechNetwork& net) {
    if (opt.method == "mst") return maximum_spanning_tree(net);
    if (opt.method == "pmfg") return pmfg(net);
    if (opt.method == "hidalgo") return hidalgo_filter(net);
    if (opt.method == "kb") return klavans_boyack_filter(net);
    if (opt.method == "threshold") {
        if (!opt.likelihood_path)
            throw ConfigError("--method threshold requires --likelihood");
        auto L = detail::load_likelihood(*opt.likelihood_path, parse_agent_kind(opt.kind));
        auto curve = sweep_curve(net, L);
        if (opt.min_power)
            return select_threshold(curve, ThresholdPolicy::min_power, *opt.min_power);
        if (opt.links)
            return select_threshold(curve, ThresholdPolicy::link_budget, 0.0, *opt.links);
        if (opt.peak) return select_threshold(curve, ThresholdPolicy::peak);
        throw ConfigError("--method threshold requires --min-power, --links or --peak");
    }
    throw ConfigError("unknown filter method: " + opt.method);
}

inline int run_filter(const FilterOptions& opt) {
    auto net = network_from_csv(opt.net_path);
    auto filtered = apply_filter(opt, net);
    std::map<std::string, std::string> params{{"method", filter_method_name(filtered.method)}};
    for (const auto& [k, v] : filtered.parameters) params[k] = v;
    for (const auto& [k, v] : filtered.recorded_powers) params["power_" + k] = format_weight(v);
    for (const auto& w : filtered.warnings) std::cerr << "warning: " << w << "\n";
    std::vector<std::string> inputs{opt.net_path};
    if (opt.method == "threshold") inputs.push_back(*opt.likelihood_path);
    detail::emit(opt.out, edges_to_csv(net, filtered.kept_edges), "filter", params, inputs);
    std::cout << "filter: " << filter_method_name(filtered.method) << " kept "
              << filtered.kept_edges.size() << "/" << net.edges.size() << " links -> "
              << opt.out << "\n";
    return 0;
}

inline int run_compare(const std::string& net_path, const std::string& li_path,
                       const std::string& lo_path, const std::string& out,
                       const std::optional<std::string>& text_out) {
    auto net = network_from_csv(net_path);
    auto Li = detail::load_likelihood(li_path, AgentKind::inventor);
    auto Lo = detail::load_likelihood(lo_path, AgentKind::organization);
    auto report = compare_methods(net, Li, Lo);
    std::map<std::string, std::string> params{{"mode", "present_links"}};
    detail::emit(out, comparison_to_csv(report), "compare", params,
                 {net_path, li_path, lo_path});
    if (text_out)
        detail::emit(*text_out, comparison_to_text(report), "compare", params,
                     {net_path, li_path, lo_path});
    std::cout << "compare: " << report.rows.size() << " methods -> " << out << "\n";
    return 0;
}

inline int run_communities(const std::string& net_path, std::uint64_t seed, double resolution,
                           const std::string& out) {
    auto net = network_from_csv(net_path);
    auto partition = louvain(net, seed, resolution);
    std::map<std::string, std::string> params{{"seed", std::to_string(seed)},
                                              {"resolution", format_weight(resolution)},
                                              {"modularity", format_weight(partition.modularity)}};
    detail::emit(out, partition_to_csv(partition), "communities", params, {net_path});
    std::cout << "communities: " << partition.community_count() << " communities, Q="
              << partition.modularity << " -> " << out << "\n";
    return 0;
}

struct OverlayOptions {
    std::string agent;
    std::string kind = "inventor";
    int window_years = 5;
    std::string input;
    std::string format = "jsonl";
    std::string net_path;
    std::string filtered_path;
    std::string out;
    std::optional<std::string> graphml_out;
    std::optional<std::string> dot_out;
};

inline AgentProfile find_profile(const Corpus& corpus, AgentKind kind,
                                 const std::string& agent_id) {
    for (auto& p : build_profiles(corpus, kind))
        if (p.agent_id == agent_id) return p;
    throw EmptyProfileError("agent not found in corpus: " + agent_id);
}

inline int run_overlay(const OverlayOptions& opt) {
    auto corpus = detail::load_input(opt.input, opt.format, std::nullopt);
    auto kind = parse_agent_kind(opt.kind);
    auto profile = find_profile(corpus, kind, opt.agent);
    auto net = network_from_csv(opt.net_path);
    auto filtered_net = network_from_csv(opt.filtered_path);
    if (filtered_net.vocabulary != net.vocabulary) {
        // a filtered edge list may omit isolated classes; align on the
        // scoring network's vocabulary
        std::vector<Edge> remapped;
        for (const auto& e : filtered_net.edges) {
            Edge r;
            r.a = static_cast<std::uint32_t>(net.index_of(filtered_net.vocabulary[e.a]));
            r.b = static_cast<std::uint32_t>(net.index_of(filtered_net.vocabulary[e.b]));
            if (r.a > r.b) std::swap(r.a, r.b);
            r.weight = e.weight;
            remapped.push_back(r);
        }
        filtered_net.vocabulary = net.vocabulary;
        filtered_net.edges = std::move(remapped);
        canonicalize_edges(filtered_net.edges);
    }
    FilteredNetwork filtered;
    filtered.vocabulary = filtered_net.vocabulary;
    filtered.kept_edges = filtered_net.edges;

    auto overlay = diversification_paths(profile, net, filtered, opt.window_years);
    std::map<std::string, std::string> params{{"agent", opt.agent},
                                              {"kind", opt.kind},
                                              {"window_years", std::to_string(opt.window_years)}};
    std::vector<std::string> inputs{opt.input, opt.net_path, opt.filtered_path};
    detail::emit(opt.out, overlay_to_json(overlay).dump(2) + "\n", "overlay", params, inputs);

    if (opt.graphml_out || opt.dot_out) {
        std::map<std::string, int> patent_counts;
        for (const auto& r : corpus.records)
            for (const auto& cls : r.classes) ++patent_counts[cls];
        auto mst = maximum_spanning_tree(net);
        std::set<std::uint64_t> mst_pairs;
        for (const auto& e : mst.kept_edges) mst_pairs.insert(pair_key(e.a, e.b));
        GraphAnnotations ann;
        ann.overlay = &overlay;
        ann.mst_pairs = &mst_pairs;
        if (opt.graphml_out)
            detail::emit(*opt.graphml_out,
                         export_graph(filtered.vocabulary, filtered.kept_edges,
                                      GraphFormat::graphml, ann, &patent_counts),
                         "overlay", params, inputs);
        if (opt.dot_out)
            detail::emit(*opt.dot_out,
                         export_graph(filtered.vocabulary, filtered.kept_edges, GraphFormat::dot,
                                      ann, &patent_counts),
                         "overlay", params, inputs);
    }
    std::cout << "overlay: agent " << opt.agent << ", " << overlay.hops.size() << " hops -> "
              << opt.out << "\n";
    return 0;
}

inline int run_forecast(const std::string& agent, const std::string& kind_name, int as_of,
                        std::size_t top_k, int window_years, const std::string& input,
                        const std::string& format, const std::string& net_path,
                        const std::string& out) {
    auto corpus = detail::load_input(input, format, std::nullopt);
    auto profile = find_profile(corpus, parse_agent_kind(kind_name), agent);
    auto net = network_from_csv(net_path);
    auto fc = forecast(profile, net, as_of, window_years, top_k);
    std::map<std::string, std::string> params{{"agent", agent},
                                              {"kind", kind_name},
                                              {"as_of", std::to_string(as_of)},
                                              {"top_k", std::to_string(top_k)},
                                              {"window_years", std::to_string(window_years)}};
    detail::emit(out, forecast_to_json(fc).dump(2) + "\n", "forecast", params,
                 {input, net_path});
    std::cout << "forecast: agent " << agent << ", " << fc.candidates.size()
              << " candidates -> " << out << "\n";
    return 0;
}

// End-to-end pipeline on a synthetic corpus; emits every artifact type.
inline int run_report(const GeneratorConfig& cfg, const std::string& out_dir,
                      std::size_t overlay_agents = 3) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    auto path = [&](const std::string& name) { return (fs::path(out_dir) / name).string(); };

    run_generate(cfg, path("corpus.jsonl"), path("ground_truth.json"));

    BuildOptions build;
    build.input = path("corpus.jsonl");
    build.out = path("network.csv");
    build.matrix_out = path("matrix.csv");
    build.cluster_order = true;
    run_build(build);

    run_likelihood("inventor", path("corpus.jsonl"), "jsonl", std::nullopt,
                   path("likelihood_inventor.csv"), path("profiles_inventor.jsonl"));
    run_likelihood("organization", path("corpus.jsonl"), "jsonl", std::nullopt,
                   path("likelihood_organization.csv"), path("profiles_organization.jsonl"));

    run_sweep(path("network.csv"), path("likelihood_inventor.csv"), "inventor", "present",
              path("curve_inventor.csv"), path("curve_inventor.svg"));
    run_sweep(path("network.csv"), path("likelihood_organization.csv"), "organization",
              "present", path("curve_organization.csv"), path("curve_organization.svg"));

    FilterOptions filt;
    filt.method = "threshold";
    filt.net_path = path("network.csv");
    filt.likelihood_path = path("likelihood_inventor.csv");
    filt.kind = "inventor";
    filt.peak = true;
    filt.out = path("filtered_inventor.csv");
    run_filter(filt);
    filt.likelihood_path = path("likelihood_organization.csv");
    filt.kind = "organization";
    filt.out = path("filtered_organization.csv");
    run_filter(filt);

    run_compare(path("network.csv"), path("likelihood_inventor.csv"),
                path("likelihood_organization.csv"), path("comparison.csv"),
                path("comparison.txt"));
    run_communities(path("network.csv"), cfg.seed, 1.0, path("communities.csv"));

    // overlay + forecast for the first few inventors with at least two
    // entered classes
    auto corpus = load_corpus(path("corpus.jsonl"), CorpusFormat::jsonl);
    auto profiles = build_profiles(corpus, AgentKind::inventor);
    std::size_t emitted = 0;
    for (const auto& p : profiles) {
        if (emitted == overlay_agents) break;
        if (p.entry_year.size() < 2) continue;
        OverlayOptions ov;
        ov.agent = p.agent_id;
        ov.input = path("corpus.jsonl");
        ov.net_path = path("network.csv");
        ov.filtered_path = path("filtered_inventor.csv");
        ov.out = path("overlay_" + p.agent_id + ".json");
        ov.graphml_out = path("overlay_" + p.agent_id + ".graphml");
        ov.dot_out = path("overlay_" + p.agent_id + ".dot");
        run_overlay(ov);
        int last_entry = 0;
        for (const auto& [cls, year] : p.entry_year) last_entry = std::max(last_entry, year);
        try {
            run_forecast(p.agent_id, "inventor", last_entry, 5, 5, path("corpus.jsonl"),
                         "jsonl", path("network.csv"), path("forecast_" + p.agent_id + ".json"));
        } catch (const NoActiveFieldsError&) {
            // agent inactive at its last entry year under the default window
        }
        ++emitted;
    }
    std::cout << "report: artifacts in " << out_dir << "\n";
    return 0;
}

// ---- argv-level dispatch ----

inline int dispatch(std::vector<std::string> args) {
    CLI::App app{"patent technology map construction, filtering and overlay toolkit"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "generate a synthetic corpus");
    std::string gen_config, gen_out, gen_gt;
    GeneratorConfig gcfg;
    gen->add_option("--config", gen_config, "key=value generator config");
    gen->add_option("--out", gen_out, "output corpus JSONL")->required();
    gen->add_option("--ground-truth", gen_gt, "planted ground truth JSON");
    gen->add_option("--seed", gcfg.seed, "generator seed");
    gen->add_option("--n-classes", gcfg.n_classes);
    gen->add_option("--n-communities", gcfg.n_communities);
    gen->add_option("--patents-per-class", gcfg.patents_per_class);
    gen->add_option("--shared-pool-size", gcfg.shared_pool_size);
    gen->add_option("--bias", gcfg.intra_community_reference_bias);
    gen->add_option("--n-inventors", gcfg.n_inventors);
    gen->add_option("--n-organizations", gcfg.n_organizations);
    gen->add_option("--exponent", gcfg.diversification_proximity_exponent);

    // build
    auto* build = app.add_subcommand("build", "build a proximity network");
    BuildOptions bopt;
    std::string bwindow, bmatrix;
    build->add_option("--measure", bopt.measure)->check(CLI::IsMember({"jaccard", "cosine"}));
    build->add_flag("--cosine-drop-focal", bopt.cosine_drop_focal);
    build->add_option("--input", bopt.input)->required();
    build->add_option("--format", bopt.format)->check(CLI::IsMember({"jsonl", "csv"}));
    build->add_option("--window", bwindow, "grant year window Y1:Y2");
    build->add_option("--exclude", bopt.exclude, "comma-separated class codes to drop");
    build->add_option("--out", bopt.out)->required();
    build->add_option("--matrix-out", bmatrix, "square matrix CSV");
    build->add_flag("--cluster-order", bopt.cluster_order,
                    "permute the matrix by average-linkage leaf order");

    // likelihood
    auto* lk = app.add_subcommand("likelihood", "diversification likelihood matrix");
    std::string lk_kind = "inventor", lk_input, lk_format = "jsonl", lk_window, lk_out,
                lk_profiles, lk_exclude;
    lk->add_option("--kind", lk_kind)->check(CLI::IsMember({"inventor", "organization"}));
    lk->add_option("--input", lk_input)->required();
    lk->add_option("--format", lk_format)->check(CLI::IsMember({"jsonl", "csv"}));
    lk->add_option("--window", lk_window);
    lk->add_option("--exclude", lk_exclude, "comma-separated class codes to drop");
    lk->add_option("--out", lk_out)->required();
    lk->add_option("--profiles-out", lk_profiles, "agent profiles JSONL");

    // sweep
    auto* sw = app.add_subcommand("sweep", "MST-seeded link add-back curve");
    std::string sw_net, sw_lik, sw_kind = "inventor", sw_mode = "present", sw_out, sw_svg;
    sw->add_option("--net", sw_net)->required();
    sw->add_option("--likelihood", sw_lik)->required();
    sw->add_option("--kind", sw_kind)->check(CLI::IsMember({"inventor", "organization"}));
    sw->add_option("--mode", sw_mode)->check(CLI::IsMember({"present", "imputed"}));
    sw->add_option("--out", sw_out)->required();
    sw->add_option("--svg", sw_svg, "curve SVG chart");

    // filter
    auto* ft = app.add_subcommand("filter", "extract a filtered backbone");
    FilterOptions fopt;
    std::string ft_lik;
    double ft_min_power = 0.0;
    std::size_t ft_links = 0;
    ft->add_option("--method", fopt.method)
        ->required()
        ->check(CLI::IsMember({"mst", "pmfg", "hidalgo", "kb", "threshold"}));
    ft->add_option("--net", fopt.net_path)->required();
    ft->add_option("--likelihood", ft_lik, "needed by --method threshold");
    ft->add_option("--kind", fopt.kind)->check(CLI::IsMember({"inventor", "organization"}));
    auto* opt_min_power = ft->add_option("--min-power", ft_min_power);
    auto* opt_links = ft->add_option("--links", ft_links);
    ft->add_flag("--peak", fopt.peak, "stop at the curve's power peak");
    ft->add_option("--out", fopt.out)->required();

    // compare
    auto* cp = app.add_subcommand("compare", "compare filtering methods");
    std::string cp_net, cp_li, cp_lo, cp_out, cp_text;
    cp->add_option("--net", cp_net)->required();
    cp->add_option("--likelihood-inventor", cp_li)->required();
    cp->add_option("--likelihood-organization", cp_lo)->required();
    cp->add_option("--out", cp_out)->required();
    cp->add_option("--text", cp_text, "aligned text table");

    // communities
    auto* cm = app.add_subcommand("communities", "Louvain community detection");
    std::string cm_net, cm_out;
    std::uint64_t cm_seed = 1;
    double cm_resolution = 1.0;
    cm->add_option("--net", cm_net)->required();
    cm->add_option("--seed", cm_seed);
    cm->add_option("--resolution", cm_resolution);
    cm->add_option("--out", cm_out)->required();

    // overlay
    auto* ov = app.add_subcommand("overlay", "agent diversification path overlay");
    OverlayOptions oopt;
    std::string ov_graphml, ov_dot;
    ov->add_option("--agent", oopt.agent)->required();
    ov->add_option("--kind", oopt.kind)->check(CLI::IsMember({"inventor", "organization"}));
    ov->add_option("--window-years", oopt.window_years);
    ov->add_option("--input", oopt.input)->required();
    ov->add_option("--format", oopt.format)->check(CLI::IsMember({"jsonl", "csv"}));
    ov->add_option("--net", oopt.net_path)->required();
    ov->add_option("--filtered", oopt.filtered_path)->required();
    ov->add_option("--out", oopt.out)->required();
    ov->add_option("--graphml", ov_graphml, "annotated GraphML export");
    ov->add_option("--dot", ov_dot, "annotated DOT export");

    // forecast
    auto* fcst = app.add_subcommand("forecast", "rank likely next fields");
    std::string fc_agent, fc_kind = "inventor", fc_input, fc_format = "jsonl", fc_net, fc_out;
    int fc_as_of = 0, fc_window = 5;
    std::size_t fc_top = 10;
    fcst->add_option("--agent", fc_agent)->required();
    fcst->add_option("--kind", fc_kind)->check(CLI::IsMember({"inventor", "organization"}));
    fcst->add_option("--as-of", fc_as_of)->required();
    fcst->add_option("--top", fc_top);
    fcst->add_option("--window-years", fc_window);
    fcst->add_option("--input", fc_input)->required();
    fcst->add_option("--format", fc_format)->check(CLI::IsMember({"jsonl", "csv"}));
    fcst->add_option("--net", fc_net)->required();
    fcst->add_option("--out", fc_out)->required();

    // report
    auto* rp = app.add_subcommand("report", "end-to-end pipeline on a synthetic corpus");
    std::string rp_config, rp_out_dir;
    rp->add_option("--config", rp_config, "key=value generator config");
    rp->add_option("--out-dir", rp_out_dir)->required();

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) {
            if (!gen_config.empty()) {
                auto cfg = generator_config_from_kv(parse_kv_file(gen_config));
                // explicit flags override the file
                if (gen->count("--seed")) cfg.seed = gcfg.seed;
                if (gen->count("--n-classes")) cfg.n_classes = gcfg.n_classes;
                if (gen->count("--n-communities")) cfg.n_communities = gcfg.n_communities;
                if (gen->count("--patents-per-class"))
                    cfg.patents_per_class = gcfg.patents_per_class;
                if (gen->count("--shared-pool-size"))
                    cfg.shared_pool_size = gcfg.shared_pool_size;
                if (gen->count("--bias"))
                    cfg.intra_community_reference_bias = gcfg.intra_community_reference_bias;
                if (gen->count("--n-inventors")) cfg.n_inventors = gcfg.n_inventors;
                if (gen->count("--n-organizations")) cfg.n_organizations = gcfg.n_organizations;
                if (gen->count("--exponent"))
                    cfg.diversification_proximity_exponent =
                        gcfg.diversification_proximity_exponent;
                gcfg = cfg;
            }
            return run_generate(gcfg, gen_out,
                                gen_gt.empty() ? std::nullopt : std::optional(gen_gt));
        }
        if (build->parsed()) {
            if (!bwindow.empty()) bopt.window = bwindow;
            if (!bmatrix.empty()) bopt.matrix_out = bmatrix;
            return run_build(bopt);
        }
        if (lk->parsed())
            return run_likelihood(lk_kind, lk_input, lk_format,
                                  lk_window.empty() ? std::nullopt : std::optional(lk_window),
                                  lk_out,
                                  lk_profiles.empty() ? std::nullopt
                                                      : std::optional(lk_profiles),
                                  lk_exclude);
        if (sw->parsed())
            return run_sweep(sw_net, sw_lik, sw_kind, sw_mode, sw_out,
                             sw_svg.empty() ? std::nullopt : std::optional(sw_svg));
        if (ft->parsed()) {
            if (!ft_lik.empty()) fopt.likelihood_path = ft_lik;
            if (opt_min_power->count()) fopt.min_power = ft_min_power;
            if (opt_links->count()) fopt.links = ft_links;
            return run_filter(fopt);
        }
        if (cp->parsed())
            return run_compare(cp_net, cp_li, cp_lo, cp_out,
                               cp_text.empty() ? std::nullopt : std::optional(cp_text));
        if (cm->parsed()) return run_communities(cm_net, cm_seed, cm_resolution, cm_out);
        if (ov->parsed()) {
            if (!ov_graphml.empty()) oopt.graphml_out = ov_graphml;
            if (!ov_dot.empty()) oopt.dot_out = ov_dot;
            return run_overlay(oopt);
        }
        if (fcst->parsed())
            return run_forecast(fc_agent, fc_kind, fc_as_of, fc_top, fc_window, fc_input,
                                fc_format, fc_net, fc_out);
        if (rp->parsed()) {
            GeneratorConfig cfg;
            if (!rp_config.empty()) cfg = generator_config_from_kv(parse_kv_file(rp_config));
            return run_report(cfg, rp_out_dir);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace techmap::cli
