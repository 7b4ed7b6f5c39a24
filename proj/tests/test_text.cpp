#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "vogue/text.hpp"

using namespace vogue;

TEST_CASE("normalize_text on empty input") {
    CHECK(normalize_text("").empty());
    CHECK(normalize_text("   \t\n  ").empty());
    CHECK(normalize_text("<p></p>").empty());
}

TEST_CASE("normalize_text applies the full cleaning pipeline") {
    const auto tokens =
        normalize_text("<p>This dissertation examines HEALTH-related stigma!</p>");
    CHECK(tokens == std::vector<std::string>{"examines", "health", "related", "stigma"});
}

TEST_CASE("normalize_text applies the lemma dictionary before suffix rules") {
    LemmaMap lemmas{{"women", "woman"}};
    const auto tokens = normalize_text("women woman", default_stopwords(), lemmas);
    CHECK(tokens == std::vector<std::string>{"woman", "woman"});
}

TEST_CASE("domain stopwords are removed") {
    CHECK(normalize_text("chapter one dissertation abstract") ==
          std::vector<std::string>{"one", "abstract"});
}

TEST_CASE("html tags never leak tokens") {
    const auto tokens = normalize_text("prefix<div class=\"x\">inside</div>suffix");
    CHECK(tokens == std::vector<std::string>{"prefix", "inside", "suffix"});
}

TEST_CASE("numbers and punctuation split words") {
    CHECK(normalize_text("covid19 spread") ==
          std::vector<std::string>{"covid", "spread"});
    CHECK(normalize_text("socio-economic") ==
          std::vector<std::string>{"socio", "economic"});
}

TEST_CASE("short tokens are dropped after normalization") {
    CHECK(normalize_text("go ox education").size() == 1);
}

TEST_CASE("plural suffix stripping is conservative") {
    CHECK(normalize_text("stigmas") == std::vector<std::string>{"stigma"});
    CHECK(normalize_text("studies") == std::vector<std::string>{"study"});
    CHECK(normalize_text("classes") == std::vector<std::string>{"class"});
    // verbs and non-sibilant -es words stay intact
    CHECK(normalize_text("examines") == std::vector<std::string>{"examines"});
    CHECK(normalize_text("related") == std::vector<std::string>{"related"});
    // -us / -is / -ss endings are not plurals
    CHECK(normalize_text("analysis") == std::vector<std::string>{"analysis"});
    CHECK(normalize_text("campus") == std::vector<std::string>{"campus"});
}

TEST_CASE("irregular plurals resolve through the shipped dictionary") {
    CHECK(normalize_text("children hypotheses") ==
          std::vector<std::string>{"child", "hypothesis"});
}

TEST_CASE("normalize_text is idempotent on its own output") {
    const std::vector<std::string> samples = {
        "<p>This dissertation examines HEALTH-related stigma!</p>",
        "Women in the workforce: analyses of 2,000 surveys across states",
        "communities studying policies & practices (chapter 3)",
        "class classes campuses theses bodies",
    };
    for (const auto& raw : samples) {
        const auto once = normalize_text(raw);
        std::string joined;
        for (const auto& t : once) {
            if (!joined.empty()) joined += ' ';
            joined += t;
        }
        CHECK(normalize_text(joined) == once);
    }
}

TEST_CASE("stopword and lemma files load with comments and overrides") {
    const auto dir = std::filesystem::temp_directory_path() / "vogue_text_test";
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(dir / "stop.txt");
        out << "# comment\nfoo\n\nbar\n";
    }
    {
        std::ofstream out(dir / "lemma.txt");
        out << "# comment\nran run\n";
    }
    const auto stops = load_stopwords((dir / "stop.txt").string());
    CHECK(stops.count("foo") == 1);
    CHECK(stops.count("bar") == 1);
    CHECK(stops.count("# comment") == 0);
    const auto lemmas = load_lemma_map((dir / "lemma.txt").string());
    CHECK(lemmas.at("ran") == "run");

    CHECK_THROWS_AS(load_stopwords((dir / "missing.txt").string()), IoError);
    {
        std::ofstream out(dir / "bad_lemma.txt");
        out << "loneword\n";
    }
    CHECK_THROWS_AS(load_lemma_map((dir / "bad_lemma.txt").string()), ParseError);
}

TEST_CASE("default lemma values are themselves stable") {
    for (const auto& [from, to] : default_lemma_map()) {
        auto it = default_lemma_map().find(to);
        if (it != default_lemma_map().end()) CHECK(it->second == to);
        // a second pass must not rewrite the base form again
        if (to.size() >= 3 && !default_stopwords().contains(to)) {
            const auto again = normalize_text(to);
            REQUIRE(again.size() == 1);
            CHECK(again[0] == to);
        }
    }
}
