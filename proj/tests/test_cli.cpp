#include <catch2/catch_amalgamated.hpp>

#include <unistd.h>

#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "techmap/cli.hpp"

using namespace techmap;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() / ("techmap_cli_" + std::to_string(::getpid()) + "_" +
                                            std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

GeneratorConfig small_config() {
    GeneratorConfig cfg;
    cfg.n_classes = 10;
    cfg.n_communities = 2;
    cfg.patents_per_class = 10;
    cfg.n_inventors = 40;
    cfg.n_organizations = 15;
    return cfg;
}

}  // namespace

TEST_CASE("generate emits a loadable corpus, ground truth and sidecar") {
    TempDir dir;
    auto cfg = small_config();
    REQUIRE(cli::run_generate(cfg, dir.file("c.jsonl"), dir.file("gt.json")) == 0);

    auto corpus = load_corpus(dir.file("c.jsonl"), CorpusFormat::jsonl);
    REQUIRE(corpus.vocabulary.size() == 10);

    auto gt = nlohmann::json::parse(read_file(dir.file("gt.json")));
    REQUIRE(gt["vocabulary"].size() == 10);
    REQUIRE(gt["planted_partition"].size() == 10);

    auto sidecar = nlohmann::json::parse(read_file(dir.file("c.jsonl") + ".json"));
    REQUIRE(sidecar["command"] == "generate");
    REQUIRE(sidecar["parameters"]["seed"] == std::to_string(cfg.seed));

    // same config, byte-identical artifact
    REQUIRE(cli::run_generate(cfg, dir.file("c2.jsonl"), {}) == 0);
    REQUIRE(read_file(dir.file("c.jsonl")) == read_file(dir.file("c2.jsonl")));
}

TEST_CASE("build writes a re-loadable network and an ordered matrix") {
    TempDir dir;
    cli::run_generate(small_config(), dir.file("c.jsonl"), {});

    cli::BuildOptions opt;
    opt.input = dir.file("c.jsonl");
    opt.out = dir.file("net.csv");
    opt.matrix_out = dir.file("matrix.csv");
    opt.cluster_order = true;
    REQUIRE(cli::run_build(opt) == 0);

    auto corpus = load_corpus(dir.file("c.jsonl"), CorpusFormat::jsonl);
    auto net = network_from_csv(dir.file("net.csv"));
    auto direct = jaccard_network(corpus);
    REQUIRE(net.vocabulary == direct.vocabulary);
    REQUIRE(net.edges == direct.edges);  // 17 significant digits round-trip

    auto matrix = read_file(dir.file("matrix.csv"));
    auto mo = reorder_matrix(direct);
    REQUIRE(matrix == network_matrix_csv(direct, &mo));

    SECTION("cosine measure and year window are honored") {
        opt.measure = "cosine";
        opt.window = "1980:1995";
        opt.out = dir.file("net_cos.csv");
        opt.matrix_out.reset();
        REQUIRE(cli::run_build(opt) == 0);
        auto windowed = window_corpus(corpus, 1980, 1995);
        auto expected = cosine_network(windowed);
        auto got = network_from_csv(dir.file("net_cos.csv"));
        REQUIRE(got.edges == expected.edges);
    }
}

TEST_CASE("likelihood emits matrix and profiles that match direct computation") {
    TempDir dir;
    cli::run_generate(small_config(), dir.file("c.jsonl"), {});
    REQUIRE(cli::run_likelihood("inventor", dir.file("c.jsonl"), "jsonl", std::nullopt,
                                dir.file("L.csv"), dir.file("profiles.jsonl")) == 0);

    auto corpus = load_corpus(dir.file("c.jsonl"), CorpusFormat::jsonl);
    auto profiles = build_profiles(corpus, AgentKind::inventor);
    auto direct = diversification_likelihood(profiles, corpus.vocabulary);
    auto loaded = likelihood_from_csv(dir.file("L.csv"));
    REQUIRE(loaded.vocabulary == direct.vocabulary);
    REQUIRE(loaded.values == direct.values);
    REQUIRE(read_file(dir.file("profiles.jsonl")) == profiles_to_jsonl(profiles));
}

TEST_CASE("sweep, filter, compare, communities pipeline") {
    TempDir dir;
    cli::run_generate(small_config(), dir.file("c.jsonl"), {});
    cli::BuildOptions bopt;
    bopt.input = dir.file("c.jsonl");
    bopt.out = dir.file("net.csv");
    cli::run_build(bopt);
    cli::run_likelihood("inventor", dir.file("c.jsonl"), "jsonl", std::nullopt,
                        dir.file("Li.csv"), {});
    cli::run_likelihood("organization", dir.file("c.jsonl"), "jsonl", std::nullopt,
                        dir.file("Lo.csv"), {});

    REQUIRE(cli::run_sweep(dir.file("net.csv"), dir.file("Li.csv"), "inventor", "present",
                           dir.file("curve.csv"), dir.file("curve.svg")) == 0);
    auto curve_csv = read_file(dir.file("curve.csv"));
    auto net = network_from_csv(dir.file("net.csv"));
    auto Li = likelihood_from_csv(dir.file("Li.csv"));
    REQUIRE(curve_csv == curve_to_csv(sweep_curve(net, Li)));
    REQUIRE(read_file(dir.file("curve.svg")).find("<svg") == 0);

    for (std::string method : {"mst", "pmfg", "hidalgo", "kb"}) {
        cli::FilterOptions fopt;
        fopt.method = method;
        fopt.net_path = dir.file("net.csv");
        fopt.out = dir.file("f_" + method + ".csv");
        REQUIRE(cli::run_filter(fopt) == 0);
        auto filtered = network_from_csv(dir.file("f_" + method + ".csv"));
        REQUIRE(filtered.edges.size() <= net.edges.size());
        if (method == "mst") REQUIRE(filtered.edges.size() == net.node_count() - 1);
    }

    cli::FilterOptions fopt;
    fopt.method = "threshold";
    fopt.net_path = dir.file("net.csv");
    fopt.likelihood_path = dir.file("Li.csv");
    fopt.peak = true;
    fopt.out = dir.file("f_peak.csv");
    REQUIRE(cli::run_filter(fopt) == 0);
    auto sidecar = nlohmann::json::parse(read_file(dir.file("f_peak.csv") + ".json"));
    REQUIRE(sidecar["parameters"]["policy"] == "peak");
    REQUIRE(sidecar["parameters"].contains("power_inventor"));

    REQUIRE(cli::run_compare(dir.file("net.csv"), dir.file("Li.csv"), dir.file("Lo.csv"),
                             dir.file("cmp.csv"), dir.file("cmp.txt")) == 0);
    auto cmp = read_file(dir.file("cmp.csv"));
    REQUIRE(cmp.find("full,") != std::string::npos);
    REQUIRE(cmp.find("klavans_boyack,") != std::string::npos);

    REQUIRE(cli::run_communities(dir.file("net.csv"), 7, 1.0, dir.file("comm.csv")) == 0);
    auto comm = read_file(dir.file("comm.csv"));
    REQUIRE(comm.rfind("class,community", 0) == 0);
}

TEST_CASE("overlay and forecast subcommands") {
    TempDir dir;
    cli::run_generate(small_config(), dir.file("c.jsonl"), {});
    cli::BuildOptions bopt;
    bopt.input = dir.file("c.jsonl");
    bopt.out = dir.file("net.csv");
    cli::run_build(bopt);
    cli::FilterOptions fopt;
    fopt.method = "mst";
    fopt.net_path = dir.file("net.csv");
    fopt.out = dir.file("mst.csv");
    cli::run_filter(fopt);

    auto corpus = load_corpus(dir.file("c.jsonl"), CorpusFormat::jsonl);
    std::string agent;
    int last_entry = 0;
    for (const auto& p : build_profiles(corpus, AgentKind::inventor))
        if (p.entry_year.size() >= 2) {
            agent = p.agent_id;
            for (const auto& [cls, y] : p.entry_year) last_entry = std::max(last_entry, y);
            break;
        }
    REQUIRE_FALSE(agent.empty());

    cli::OverlayOptions oopt;
    oopt.agent = agent;
    oopt.input = dir.file("c.jsonl");
    oopt.net_path = dir.file("net.csv");
    oopt.filtered_path = dir.file("mst.csv");
    oopt.out = dir.file("overlay.json");
    oopt.graphml_out = dir.file("overlay.graphml");
    oopt.dot_out = dir.file("overlay.dot");
    REQUIRE(cli::run_overlay(oopt) == 0);

    auto j = nlohmann::json::parse(read_file(dir.file("overlay.json")));
    REQUIRE(j["agent"] == agent);
    REQUIRE(j["hops"].size() >= 1);
    REQUIRE(read_file(dir.file("overlay.graphml")).find("<graphml") != std::string::npos);
    REQUIRE(oracles::dot_parses(read_file(dir.file("overlay.dot"))));

    REQUIRE(cli::run_forecast(agent, "inventor", last_entry, 5, 5, dir.file("c.jsonl"),
                              "jsonl", dir.file("net.csv"), dir.file("fc.json")) == 0);
    auto fj = nlohmann::json::parse(read_file(dir.file("fc.json")));
    REQUIRE(fj["as_of"] == last_entry);

    SECTION("unknown agent is a domain error") {
        oopt.agent = "NOBODY";
        REQUIRE_THROWS_AS(cli::run_overlay(oopt), EmptyProfileError);
    }
}

TEST_CASE("dispatch handles arguments and exit codes") {
    TempDir dir;
    SECTION("generate via argv") {
        REQUIRE(cli::dispatch({"generate", "--out", dir.file("c.jsonl"), "--n-classes", "8",
                               "--n-communities", "2", "--patents-per-class", "8",
                               "--n-inventors", "20", "--n-organizations", "8",
                               "--seed", "5"}) == 0);
        auto corpus = load_corpus(dir.file("c.jsonl"), CorpusFormat::jsonl);
        REQUIRE(corpus.vocabulary.size() == 8);
    }
    SECTION("config file with flag override") {
        std::ofstream(dir.file("gen.cfg")) << "n_classes=8\nn_communities=2\n"
                                           << "patents_per_class=8\nn_inventors=20\n"
                                           << "n_organizations=8\nseed=5\n";
        REQUIRE(cli::dispatch({"generate", "--config", dir.file("gen.cfg"), "--seed", "6",
                               "--out", dir.file("c.jsonl")}) == 0);
        auto sidecar = nlohmann::json::parse(read_file(dir.file("c.jsonl") + ".json"));
        REQUIRE(sidecar["parameters"]["seed"] == "6");
        REQUIRE(sidecar["parameters"]["n_classes"] == "8");
    }
    SECTION("missing required option exits 2") {
        REQUIRE(cli::dispatch({"generate"}) == 2);
        REQUIRE(cli::dispatch({"no-such-command"}) == 2);
    }
    SECTION("domain errors exit 1") {
        REQUIRE(cli::dispatch({"build", "--input", dir.file("missing.jsonl"), "--out",
                               dir.file("net.csv")}) == 1);
    }
}

TEST_CASE("report emits the full artifact set") {
    TempDir dir;
    auto cfg = small_config();
    REQUIRE(cli::run_report(cfg, dir.file("out"), 1) == 0);
    for (const char* name :
         {"corpus.jsonl", "ground_truth.json", "network.csv", "matrix.csv",
          "likelihood_inventor.csv", "likelihood_organization.csv", "profiles_inventor.jsonl",
          "curve_inventor.csv", "curve_inventor.svg", "curve_organization.csv",
          "filtered_inventor.csv", "filtered_organization.csv", "comparison.csv",
          "comparison.txt", "communities.csv"}) {
        INFO(name);
        REQUIRE(fs::exists(fs::path(dir.file("out")) / name));
        REQUIRE(fs::exists(fs::path(dir.file("out")) / (std::string(name) + ".json")));
    }
    // at least one overlay artifact triple
    bool overlay_found = false;
    for (const auto& entry : fs::directory_iterator(dir.file("out"))) {
        auto name = entry.path().filename().string();
        if (name.rfind("overlay_", 0) == 0 && name.size() > 5 &&
            name.substr(name.size() - 5) == ".json" && name.find(".graphml") == std::string::npos)
            overlay_found = true;
    }
    REQUIRE(overlay_found);
}
