#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "oracles.hpp"
#include "techmap/diversification.hpp"
#include "techmap/generator.hpp"
#include "techmap/proximity.hpp"
#include "techmap/rng.hpp"

using namespace techmap;

namespace {

PatentRecord patent(std::string id, int year, std::set<std::string> classes,
                    std::set<std::string> inventors, std::set<std::string> assignees = {}) {
    PatentRecord r;
    r.patent_id = std::move(id);
    r.grant_year = year;
    r.classes = std::move(classes);
    r.inventor_ids = std::move(inventors);
    r.assignee_ids = std::move(assignees);
    return r;
}

AgentProfile agent_in(std::string id, std::set<std::string> classes) {
    AgentProfile p;
    p.agent_id = std::move(id);
    for (const auto& c : classes) {
        p.entry_year[c] = 2000;
        p.patents_by_class_year[{c, 2000}] = 1;
    }
    return p;
}

}  // namespace

TEST_CASE("build_profiles") {
    SECTION("multi-class patent enters every class") {
        auto c = make_corpus({patent("p1", 2000, {"X", "Y"}, {"a"})}, "t");
        auto ps = build_profiles(c, AgentKind::inventor);
        REQUIRE(ps.size() == 1);
        REQUIRE(ps[0].entry_year.at("X") == 2000);
        REQUIRE(ps[0].entry_year.at("Y") == 2000);
    }
    SECTION("entry year is the minimum grant year") {
        auto c = make_corpus(
            {patent("p1", 1995, {"X"}, {"a"}), patent("p2", 1990, {"X"}, {"a"})}, "t");
        auto ps = build_profiles(c, AgentKind::inventor);
        REQUIRE(ps[0].entry_year.at("X") == 1990);
        REQUIRE(ps[0].patents_by_class_year.at({"X", 1990}) == 1);
        REQUIRE(ps[0].patents_by_class_year.at({"X", 1995}) == 1);
    }
    SECTION("no assignees anywhere -> empty organization profile list") {
        auto c = make_corpus({patent("p1", 2000, {"X"}, {"a"})}, "t");
        REQUIRE(build_profiles(c, AgentKind::organization).empty());
    }
}

TEST_CASE("diversification_likelihood") {
    std::vector<std::string> vocab{"i", "j"};
    SECTION("a1 in both, a2 in i, a3 in j -> 0.5") {
        auto L = diversification_likelihood(
            {agent_in("a1", {"i", "j"}), agent_in("a2", {"i"}), agent_in("a3", {"j"})}, vocab);
        // counting oracle: |A_i|=2, |A_j|=2, intersection 1
        REQUIRE(L.at(0, 1) == Catch::Approx(0.5));
        REQUIRE(L.at(1, 0) == L.at(0, 1));
        REQUIRE(L.at(0, 0) == 0.0);
    }
    SECTION("every agent in both -> 1.0") {
        auto L = diversification_likelihood(
            {agent_in("a1", {"i", "j"}), agent_in("a2", {"i", "j"})}, vocab);
        REQUIRE(L.at(0, 1) == 1.0);
    }
    SECTION("no agent in j -> 0 by convention") {
        auto L = diversification_likelihood({agent_in("a1", {"i"})}, vocab);
        REQUIRE(L.at(0, 1) == 0.0);
    }
    SECTION("order of profiles is irrelevant") {
        std::vector<AgentProfile> ps{agent_in("a1", {"i", "j"}), agent_in("a2", {"i"}),
                                     agent_in("a3", {"j"})};
        auto L1 = diversification_likelihood(ps, vocab);
        std::reverse(ps.begin(), ps.end());
        auto L2 = diversification_likelihood(ps, vocab);
        REQUIRE(L1.values == L2.values);
    }
    SECTION("duplicate patents do not change memberships") {
        auto c1 = make_corpus({patent("p1", 2000, {"X", "Y"}, {"a"}),
                               patent("q1", 2000, {"X"}, {"b"})},
                              "t");
        auto c2 = make_corpus({patent("p1", 2000, {"X", "Y"}, {"a"}),
                               patent("p1dup", 2000, {"X", "Y"}, {"a"}),
                               patent("q1", 2000, {"X"}, {"b"})},
                              "t");
        auto L1 = diversification_likelihood(build_profiles(c1, AgentKind::inventor),
                                             c1.vocabulary);
        auto L2 = diversification_likelihood(build_profiles(c2, AgentKind::inventor),
                                             c2.vocabulary);
        REQUIRE(L1.values == L2.values);
    }
}

TEST_CASE("likelihood counting matches a direct oracle on random memberships") {
    Rng rng(19);
    auto vocab = oracles::letter_vocab(6);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<std::set<std::string>> memberships;
        std::size_t n_agents = 3 + rng.uniform_index(8);
        for (std::size_t a = 0; a < n_agents; ++a) {
            std::set<std::string> cs;
            for (const auto& c : vocab)
                if (rng.uniform_real() < 0.4) cs.insert(c);
            if (cs.empty()) cs.insert(vocab[rng.uniform_index(vocab.size())]);
            memberships.push_back(cs);
        }
        std::vector<AgentProfile> ps;
        for (std::size_t a = 0; a < n_agents; ++a)
            ps.push_back(agent_in("a" + std::to_string(a), memberships[a]));
        auto L = diversification_likelihood(ps, vocab);
        for (std::size_t i = 0; i < vocab.size(); ++i) {
            for (std::size_t j = i + 1; j < vocab.size(); ++j) {
                std::size_t ni = 0, nj = 0, inter = 0;
                for (const auto& m : memberships) {
                    bool in_i = m.count(vocab[i]), in_j = m.count(vocab[j]);
                    ni += in_i;
                    nj += in_j;
                    inter += in_i && in_j;
                }
                double expected =
                    (ni == 0 || nj == 0) ? 0.0 : double(inter) / double(std::max(ni, nj));
                REQUIRE(L.at(i, j) == Catch::Approx(expected));
            }
        }
    }
}

TEST_CASE("pearson") {
    REQUIRE(pearson({1, 2, 3}, {2, 4, 6}) == Catch::Approx(1.0));
    REQUIRE(pearson({1, 2, 3}, {3, 2, 1}) == Catch::Approx(-1.0));
    REQUIRE_THROWS_AS(pearson({1, 2, 3}, {5, 5, 5}), UndefinedCorrelationError);
    REQUIRE_THROWS_AS(pearson({1}, {2}), UndefinedCorrelationError);
    REQUIRE_THROWS_AS(pearson({1, 2}, {1, 2, 3}), ValidationError);
}

TEST_CASE("explanatory_power") {
    auto vocab = oracles::letter_vocab(4);
    LikelihoodMatrix L;
    L.vocabulary = vocab;
    L.values.assign(4, std::vector<double>(4, 0.0));
    auto set_l = [&](std::size_t i, std::size_t j, double v) {
        L.values[i][j] = L.values[j][i] = v;
    };
    set_l(0, 1, 0.9);
    set_l(1, 2, 0.5);
    set_l(2, 3, 0.2);
    set_l(0, 2, 0.4);

    SECTION("weights equal to L give 1.0") {
        auto net = oracles::make_network(vocab, {{"a", "b", 0.9}, {"b", "c", 0.5},
                                                 {"c", "d", 0.2}, {"a", "c", 0.4}});
        REQUIRE(explanatory_power(net.edges, L) == Catch::Approx(1.0));
    }
    SECTION("single edge in present_links is undefined") {
        auto net = oracles::make_network(vocab, {{"a", "b", 0.9}});
        REQUIRE_THROWS_AS(explanatory_power(net.edges, L), UndefinedCorrelationError);
    }
    SECTION("present_links matches the flat reference correlation") {
        auto net = oracles::make_network(vocab, {{"a", "b", 0.7}, {"b", "c", 0.6},
                                                 {"c", "d", 0.1}, {"a", "c", 0.3}});
        std::vector<double> ws, ls;
        for (const auto& e : net.edges) {
            ws.push_back(e.weight);
            ls.push_back(L.at(e.a, e.b));
        }
        REQUIRE(explanatory_power(net.edges, L) ==
                Catch::Approx(oracles::flat_pearson(ws, ls)).margin(1e-12));
    }
    SECTION("zero-imputed mode covers all pairs") {
        auto net = oracles::make_network(vocab, {{"a", "b", 0.7}, {"b", "c", 0.6}});
        std::vector<double> ws, ls;
        auto wm = weight_matrix(net);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = i + 1; j < 4; ++j) {
                ws.push_back(wm[i][j]);
                ls.push_back(L.at(i, j));
            }
        REQUIRE(explanatory_power(net.edges, L, PowerMode::all_pairs_zero_imputed) ==
                Catch::Approx(oracles::flat_pearson(ws, ls)).margin(1e-12));
    }
    SECTION("affine invariance a*w + b, a > 0") {
        auto net = oracles::make_network(vocab, {{"a", "b", 0.7}, {"b", "c", 0.6},
                                                 {"c", "d", 0.1}, {"a", "c", 0.3}});
        double base = explanatory_power(net.edges, L);
        auto scaled = net.edges;
        for (auto& e : scaled) e.weight = 3.7 * e.weight + 0.11;
        REQUIRE(explanatory_power(scaled, L) == Catch::Approx(base).margin(1e-12));
    }
}

TEST_CASE("synthetic power rises with the diversification exponent") {
    std::vector<double> powers;
    for (double exponent : {0.5, 2.0, 6.0}) {
        GeneratorConfig cfg;
        cfg.diversification_proximity_exponent = exponent;
        cfg.n_inventors = 400;
        auto [corpus, gt] = generate_synthetic(cfg);
        auto net = jaccard_network(corpus);
        auto L = diversification_likelihood(build_profiles(corpus, AgentKind::inventor),
                                            net.vocabulary);
        powers.push_back(explanatory_power(net.edges, L));
    }
    REQUIRE(powers[0] > 0.0);
    REQUIRE(powers[1] > powers[0]);
    REQUIRE(powers[2] > powers[1]);
}
