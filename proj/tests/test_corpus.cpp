#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "techmap/corpus.hpp"
#include "techmap/corpus_io.hpp"
#include "techmap/exporters.hpp"

using namespace techmap;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
    auto path = (std::filesystem::temp_directory_path() / name).string();
    std::ofstream out(path, std::ios::trunc);
    out << content;
    return path;
}

PatentRecord patent(std::string id, int year, std::set<std::string> classes,
                    std::set<std::string> refs = {}) {
    PatentRecord r;
    r.patent_id = std::move(id);
    r.grant_year = year;
    r.classes = std::move(classes);
    r.references = std::move(refs);
    return r;
}

}  // namespace

TEST_CASE("load_corpus reads valid jsonl") {
    auto path = write_temp(
        "corpus_ok.jsonl",
        R"({"id":"p1","year":1990,"classes":["H01"],"refs":["r1"],"inventors":["a"],"assignees":[]})"
        "\n"
        R"({"id":"p2","year":2000,"classes":["G06","H01"],"refs":[],"inventors":[],"assignees":["o"]})"
        "\n"
        R"({"id":"p3","year":2010,"classes":["G06"],"refs":["p1"],"inventors":["b"],"assignees":[]})"
        "\n");
    auto c = load_corpus(path, CorpusFormat::jsonl);
    REQUIRE(c.records.size() == 3);
    REQUIRE(c.vocabulary == std::vector<std::string>{"G06", "H01"});
    REQUIRE(c.min_year == 1990);
    REQUIRE(c.max_year == 2010);
}

TEST_CASE("load_corpus rejects duplicate ids naming the id") {
    auto path = write_temp("corpus_dup.jsonl",
                           R"({"id":"p1","year":1990,"classes":["H01"]})"
                           "\n"
                           R"({"id":"p1","year":1991,"classes":["G06"]})"
                           "\n");
    REQUIRE_THROWS_WITH(load_corpus(path, CorpusFormat::jsonl),
                        Catch::Matchers::ContainsSubstring("p1"));
}

TEST_CASE("load_corpus rejects empty class list") {
    auto path = write_temp("corpus_nocls.jsonl",
                           R"({"id":"p1","year":1990,"classes":[]})"
                           "\n");
    REQUIRE_THROWS_AS(load_corpus(path, CorpusFormat::jsonl), ValidationError);
}

TEST_CASE("parse error carries a line number") {
    auto path = write_temp("corpus_bad.jsonl",
                           R"({"id":"p1","year":1990,"classes":["H01"]})"
                           "\nnot json\n");
    REQUIRE_THROWS_WITH(load_corpus(path, CorpusFormat::jsonl),
                        Catch::Matchers::ContainsSubstring("line 2"));
}

TEST_CASE("self-reference rejected") {
    REQUIRE_THROWS_AS(make_corpus({patent("p1", 1990, {"X"}, {"p1"})}, "t"), ValidationError);
}

TEST_CASE("csv format round-trips") {
    auto c = make_corpus({patent("p1", 1990, {"H01", "G06"}, {"r1", "r2"}),
                          patent("p2", 1995, {"H01"})},
                         "t");
    auto path = write_temp("corpus_rt.csv", corpus_to_csv(c));
    auto back = load_corpus(path, CorpusFormat::csv);
    REQUIRE(back.records.size() == 2);
    REQUIRE(back.records[0].classes == c.records[0].classes);
    REQUIRE(back.records[0].references == c.records[0].references);
}

TEST_CASE("jsonl round-trip is the identity on corpus content") {
    auto c = make_corpus({patent("p1", 1990, {"H01"}, {"r1"}),
                          patent("p2", 2000, {"G06", "H01"}, {"p1", "r9"})},
                         "t");
    auto path = write_temp("corpus_rt.jsonl", corpus_to_jsonl(c));
    auto back = load_corpus(path, CorpusFormat::jsonl);
    REQUIRE(corpus_to_jsonl(back) == corpus_to_jsonl(c));
    REQUIRE(back.vocabulary == c.vocabulary);
}

TEST_CASE("window_corpus filters by grant year") {
    auto c = make_corpus({patent("p1", 1990, {"X"}), patent("p2", 2000, {"Y"}),
                          patent("p3", 2010, {"Z"})},
                         "t");
    SECTION("identity window") {
        auto w = window_corpus(c, c.min_year, c.max_year);
        REQUIRE(w.records.size() == 3);
        REQUIRE(w.vocabulary == c.vocabulary);
    }
    SECTION("interior window keeps only matching years") {
        auto w = window_corpus(c, 1995, 2005);
        REQUIRE(w.records.size() == 1);
        REQUIRE(w.records[0].patent_id == "p2");
        REQUIRE(w.vocabulary == std::vector<std::string>{"Y"});
    }
    SECTION("out-of-range window is an error") {
        REQUIRE_THROWS_AS(window_corpus(c, 3000, 3001), EmptyResultError);
    }
    SECTION("windowing composes as intersection") {
        auto w1 = window_corpus(window_corpus(c, 1990, 2005), 1995, 2010);
        auto w2 = window_corpus(c, 1995, 2005);
        REQUIRE(corpus_to_jsonl(w1) == corpus_to_jsonl(w2));
    }
}

TEST_CASE("exclude_classes drops codes and emptied records") {
    auto c = make_corpus({patent("p1", 1990, {"A99", "X"}), patent("p2", 2000, {"A99"}),
                          patent("p3", 2010, {"Y"})},
                         "t");
    auto e = exclude_classes(c, {"A99"});
    REQUIRE(e.records.size() == 2);  // p2 had only the excluded class
    REQUIRE(e.vocabulary == std::vector<std::string>{"X", "Y"});
    REQUIRE(e.records[0].classes == std::set<std::string>{"X"});

    SECTION("empty exclusion set is the identity") {
        REQUIRE(corpus_to_jsonl(exclude_classes(c, {})) == corpus_to_jsonl(c));
    }
    SECTION("excluding everything is an error") {
        REQUIRE_THROWS_AS(exclude_classes(c, {"A99", "X", "Y"}), EmptyResultError);
    }
}
