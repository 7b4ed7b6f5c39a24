#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "vogue/corpus.hpp"

using namespace vogue;

namespace {

Corpus corpus_from(const std::string& jsonl) {
    std::istringstream in(jsonl);
    return load_corpus(in);
}

std::map<std::string, InstitutionRecord> institutions_from(const std::string& csv) {
    std::istringstream in(csv);
    return load_institutions(in);
}

}  // namespace

TEST_CASE("empty corpus file loads as an empty corpus") {
    CHECK(corpus_from("").empty());
    CHECK(corpus_from("\n\n").empty());
}

TEST_CASE("well-formed lines round-trip") {
    const auto corpus = corpus_from(
        R"({"id":"d1","text":"a b","year":2012,"source":"dissertation","institution":"univaa"})"
        "\n"
        R"({"id":"j1","text":"c d","year":2013,"source":"journal","journal":"Acta"})"
        "\n");
    REQUIRE(corpus.size() == 2);
    CHECK(corpus.docs[0].id == "d1");
    CHECK(corpus.docs[0].source == Source::Dissertation);
    CHECK(corpus.docs[0].institution == "univaa");
    CHECK(corpus.docs[1].source == Source::Journal);
    REQUIRE(corpus.docs[1].journal.has_value());
    CHECK(*corpus.docs[1].journal == "Acta");
}

TEST_CASE("missing required field reports the line number") {
    const std::string jsonl =
        R"({"id":"d1","text":"a","year":2012,"source":"dissertation","institution":"u"})"
        "\n"
        R"({"id":"d2","text":"b","year":2012,"source":"dissertation","institution":"u"})"
        "\n"
        R"({"id":"d3","text":"c","source":"dissertation","institution":"u"})"
        "\n";
    try {
        corpus_from(jsonl);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
        CHECK(std::string(e.what()).find("year") != std::string::npos);
    }
}

TEST_CASE("malformed json reports a ParseError with line number") {
    try {
        corpus_from("{\"id\":\"d1\"\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
    }
}

TEST_CASE("duplicate ids are rejected") {
    const std::string line =
        R"({"id":"d1","text":"a","year":2012,"source":"dissertation","institution":"u"})"
        "\n";
    CHECK_THROWS_AS(corpus_from(line + line), ValidationError);
}

TEST_CASE("source-specific requirements are enforced") {
    CHECK_THROWS_AS(
        corpus_from(R"({"id":"d","text":"a","year":2012,"source":"dissertation"})"),
        ValidationError);
    CHECK_THROWS_AS(corpus_from(R"({"id":"j","text":"a","year":2012,"source":"journal"})"),
                    ValidationError);
    CHECK_THROWS_AS(corpus_from(R"({"id":"x","text":"a","year":2012,"source":"blog"})"),
                    ValidationError);
}

TEST_CASE("split_periods boundary semantics") {
    const auto corpus = corpus_from(
        R"({"id":"a","text":"","year":2015,"source":"dissertation","institution":"u"})"
        "\n"
        R"({"id":"b","text":"","year":2016,"source":"dissertation","institution":"u"})"
        "\n"
        R"({"id":"c","text":"","year":2021,"source":"dissertation","institution":"u"})"
        "\n"
        R"({"id":"d","text":"","year":2011,"source":"dissertation","institution":"u"})"
        "\n");
    const auto split = split_periods(corpus, 2011, 2015, 2020);
    CHECK(split.t1 == std::vector<std::string>{"a", "d"});
    CHECK(split.t2 == std::vector<std::string>{"b"});
    CHECK(split.excluded == 1);
    // partition property
    CHECK(split.t1.size() + split.t2.size() + split.excluded == corpus.size());
}

TEST_CASE("split_periods rejects out-of-range boundaries") {
    Corpus empty;
    CHECK_THROWS_AS(split_periods(empty, 2011, 2020, 2020), ConfigError);
    CHECK_THROWS_AS(split_periods(empty, 2011, 2010, 2020), ConfigError);
    CHECK_NOTHROW(split_periods(empty, 2011, 2011, 2020));
}

TEST_CASE("institution metadata loads and validates") {
    const auto recs = institutions_from(
        "name,region,public,private,land_grant,ranking\n"
        "univaa,D1,1,0,1,3\n"
        "univab,D2,0,1,0,7\n");
    REQUIRE(recs.size() == 2);
    CHECK(recs.at("univaa").land_grant);
    CHECK(recs.at("univaa").ranking == 3);
    CHECK(recs.at("univab").is_private);
    CHECK(recs.at("univab").region == "D2");
}

TEST_CASE("institution metadata rejects inconsistent rows") {
    const std::string header = "name,region,public,private,land_grant,ranking\n";
    CHECK_THROWS_AS(institutions_from(header + "u,D1,1,1,0,1\n"), ValidationError);
    CHECK_THROWS_AS(institutions_from(header + "u,D1,0,1,1,1\n"), ValidationError);
    CHECK_THROWS_AS(institutions_from(header + "u,D1,1,0,0,0\n"), ValidationError);
    CHECK_THROWS_AS(institutions_from(header + "u,D1,1,0,0\n"), ParseError);
    CHECK_THROWS_AS(institutions_from(header + "u,D1,yes,0,0,1\n"), ParseError);
    CHECK_THROWS_AS(institutions_from(header + "u,D1,1,0,0,1\nu,D1,1,0,0,2\n"),
                    ValidationError);
}

TEST_CASE("count_sizes counts dissertations only") {
    auto recs = institutions_from(
        "name,region,public,private,land_grant,ranking\n"
        "u,D1,1,0,0,1\n"
        "v,D1,0,1,0,2\n");
    const auto corpus = corpus_from(
        R"({"id":"a","text":"","year":2012,"source":"dissertation","institution":"u"})"
        "\n"
        R"({"id":"b","text":"","year":2013,"source":"dissertation","institution":"u"})"
        "\n"
        R"({"id":"j","text":"","year":2013,"source":"journal","journal":"Acta"})"
        "\n");
    count_sizes(recs, corpus);
    CHECK(recs.at("u").size == 2);
    CHECK(recs.at("v").size == 0);
}
