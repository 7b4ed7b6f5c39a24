#pragma once

#include <cstdint>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vogue/errors.hpp"
#include "vogue/semnet.hpp"

namespace vogue {

enum class Regime { Hierarchical, Niche };

struct FixtureParams {
    std::uint64_t seed = 1;
    std::size_t n_schools = 12;
    std::size_t tier_size = 4;           // schools per rank tier / niche group
    std::size_t n_vogue_pairs = 10;
    std::size_t n_foundation_pairs = 6;
    std::size_t noise_docs_per_period = 300;
    std::size_t co_docs_t2 = 12;         // heavy co-use documents per planted pair
    std::size_t solo_docs = 8;           // per endpoint, heavy side
    Regime regime = Regime::Hierarchical;
    int year_start = 2011;
    int year_boundary = 2015;
    int year_end = 2020;
};

struct Fixture {
    std::string corpus_jsonl;
    std::string institutions_csv;
    std::string journals_jsonl;
    std::string ground_truth_json;
};

namespace detail {

// Deterministic pronounceable term: three open syllables, no stopword or
// suffix-rule collisions.
inline std::string fixture_word(std::size_t index) {
    static const char* syllables[20] = {"ba", "ce", "di", "fo", "gu", "ha", "ki",
                                        "lo", "mu", "ne", "po", "ra", "su", "ta",
                                        "vo", "wi", "xa", "yo", "zu", "qe"};
    std::string word;
    for (int i = 0; i < 3; ++i) {
        word += syllables[index % 20];
        index /= 20;
    }
    return word;
}

inline std::string school_name(std::size_t index) {
    std::string name = "univ";
    name += static_cast<char>('a' + index / 26);
    name += static_cast<char>('a' + index % 26);
    return name;
}

}  // namespace detail

// Synthetic corpus with planted vogue pairs, planted foundation pairs, and a
// planted diffusion regime (top-down hierarchical vs within-group niches),
// plus documented ground truth. Byte-identical output for identical params.
inline Fixture make_fixture(const FixtureParams& params) {
    if (params.n_schools < 2 * params.tier_size) {
        throw ConfigError("fixture needs at least two rank tiers");
    }
    std::mt19937_64 rng(params.seed);
    auto pick = [&rng](std::size_t n) { return static_cast<std::size_t>(rng() % n); };

    // vocabulary: planted pair terms, then a noise pool
    std::size_t next_word = 0;
    auto fresh_word = [&] { return detail::fixture_word(next_word++); };
    std::vector<std::pair<std::string, std::string>> vogue_terms, foundation_terms;
    for (std::size_t i = 0; i < params.n_vogue_pairs; ++i) {
        auto a = fresh_word();
        auto b = fresh_word();
        vogue_terms.emplace_back(std::min(a, b), std::max(a, b));
    }
    for (std::size_t i = 0; i < params.n_foundation_pairs; ++i) {
        auto a = fresh_word();
        auto b = fresh_word();
        foundation_terms.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::vector<std::string> noise_pool;
    for (std::size_t i = 0; i < 200; ++i) noise_pool.push_back(fresh_word());
    auto noise = [&] { return noise_pool[pick(noise_pool.size())]; };

    const std::size_t n_groups = params.n_schools / params.tier_size;
    auto group_of = [&](std::size_t school) { return school / params.tier_size; };

    std::ostringstream corpus;
    std::size_t doc_counter = 0;
    std::vector<nlohmann::json> planted_flows;

    auto emit_doc = [&](const std::vector<std::string>& terms, std::size_t school,
                        bool first_period) {
        const int span = first_period ? params.year_boundary - params.year_start + 1
                                      : params.year_end - params.year_boundary;
        const int base = first_period ? params.year_start : params.year_boundary + 1;
        const int year = base + static_cast<int>(doc_counter % static_cast<std::size_t>(span));
        std::string text;
        for (const auto& t : terms) {
            if (!text.empty()) text += ' ';
            text += t;
        }
        nlohmann::json doc = {
            {"id", "doc" + std::to_string(doc_counter)},
            {"text", text},
            {"year", year},
            {"source", "dissertation"},
            {"institution", detail::school_name(school)},
        };
        corpus << doc.dump() << '\n';
        ++doc_counter;
    };

    // heavy co-use block: co-docs with both terms plus solo docs keeping each
    // endpoint's other edges weak, which pushes the pair into the backbone
    auto emit_heavy = [&](const std::string& a, const std::string& b, bool first_period,
                          const std::vector<std::size_t>& co_schools) {
        for (std::size_t i = 0; i < params.co_docs_t2; ++i) {
            emit_doc({a, b, noise(), noise()}, co_schools[i % co_schools.size()],
                     first_period);
        }
        for (std::size_t i = 0; i < params.solo_docs; ++i) {
            emit_doc({a, noise(), noise()}, pick(params.n_schools), first_period);
            emit_doc({b, noise(), noise()}, pick(params.n_schools), first_period);
        }
    };

    // weak co-use block: a single shared document plus solo docs, leaving the
    // pair present but statistically unremarkable
    auto emit_weak = [&](const std::string& a, const std::string& b, bool first_period,
                         const std::vector<std::size_t>& co_schools) {
        for (std::size_t school : co_schools) {
            emit_doc({a, b, noise(), noise()}, school, first_period);
        }
        for (std::size_t i = 0; i < 4; ++i) {
            emit_doc({a, noise(), noise()}, pick(params.n_schools), first_period);
            emit_doc({b, noise(), noise()}, pick(params.n_schools), first_period);
        }
    };

    for (std::size_t i = 0; i < params.n_vogue_pairs; ++i) {
        const auto& [a, b] = vogue_terms[i];
        std::vector<std::size_t> producers, adopters;
        if (params.regime == Regime::Hierarchical) {
            // top tier produces; everyone adopts, so trends flow downward
            producers = {i % params.tier_size, (i + 1) % params.tier_size};
            for (std::size_t s = 0; s < params.n_schools; ++s) adopters.push_back(s);
        } else {
            // production and adoption stay inside one niche group
            const std::size_t g = i % n_groups;
            const std::size_t base = g * params.tier_size;
            producers = {base + i % params.tier_size,
                         base + (i + 1) % params.tier_size};
            for (std::size_t s = 0; s < params.tier_size; ++s) adopters.push_back(base + s);
        }
        emit_weak(a, b, /*first_period=*/true, producers);
        emit_heavy(a, b, /*first_period=*/false, adopters);
        for (std::size_t p : producers) {
            for (std::size_t ad : adopters) {
                if (p == ad) continue;
                planted_flows.push_back({{"producer", detail::school_name(p)},
                                         {"adopter", detail::school_name(ad)},
                                         {"pair", {a, b}}});
            }
        }
    }

    for (std::size_t i = 0; i < params.n_foundation_pairs; ++i) {
        const auto& [a, b] = foundation_terms[i];
        std::vector<std::size_t> schools;
        for (std::size_t s = 0; s < params.n_schools; ++s) schools.push_back(s);
        emit_heavy(a, b, /*first_period=*/true, schools);
        emit_heavy(a, b, /*first_period=*/false, schools);
    }

    for (std::size_t i = 0; i < params.noise_docs_per_period; ++i) {
        emit_doc({noise(), noise(), noise(), noise()}, pick(params.n_schools), true);
        emit_doc({noise(), noise(), noise(), noise()}, pick(params.n_schools), false);
    }

    // institutions: rank = index + 1; tiers share a census division
    std::ostringstream institutions;
    institutions << "name,region,public,private,land_grant,ranking\n";
    for (std::size_t s = 0; s < params.n_schools; ++s) {
        const bool is_public = s % 2 == 0;
        // land-grant schools span regions and rank tiers so that interaction
        // regressors over dyads of them are never degenerate
        const bool land_grant =
            is_public && (s < params.tier_size || s == params.n_schools - 2);
        institutions << detail::school_name(s) << ",D" << (group_of(s) % 9 + 1) << ','
                     << (is_public ? 1 : 0) << ',' << (is_public ? 0 : 1) << ','
                     << (land_grant ? 1 : 0) << ',' << (s + 1) << '\n';
    }

    // journals: one trend-heavy journal reusing planted vogue vocabulary, one
    // with fully disjoint vocabulary (structural zero overlap)
    std::ostringstream journals;
    std::size_t journal_counter = 0;
    auto emit_journal_doc = [&](const std::string& journal,
                                const std::vector<std::string>& terms) {
        std::string text;
        for (const auto& t : terms) {
            if (!text.empty()) text += ' ';
            text += t;
        }
        nlohmann::json doc = {
            {"id", "jdoc" + std::to_string(journal_counter)},
            {"text", text},
            {"year", params.year_start + static_cast<int>(journal_counter % 5)},
            {"source", "journal"},
            {"journal", journal},
        };
        journals << doc.dump() << '\n';
        ++journal_counter;
    };
    for (std::size_t i = 0; i < params.n_vogue_pairs; ++i) {
        const auto& [a, b] = vogue_terms[i];
        emit_journal_doc("Applied Trends Review", {a, b, noise()});
        emit_journal_doc("Applied Trends Review", {a, noise(), noise()});
    }
    std::vector<std::string> method_vocab;
    for (std::size_t i = 0; i < 12; ++i) method_vocab.push_back(fresh_word());
    for (std::size_t i = 0; i < 10; ++i) {
        emit_journal_doc("Methods Quarterly",
                         {method_vocab[i % 12], method_vocab[(i + 1) % 12],
                          method_vocab[(i + 2) % 12]});
    }

    nlohmann::json ground_truth;
    ground_truth["regime"] =
        params.regime == Regime::Hierarchical ? "hierarchical" : "niche";
    ground_truth["seed"] = params.seed;
    for (const auto& [a, b] : vogue_terms) {
        ground_truth["vogue_pairs"].push_back({a, b});
    }
    for (const auto& [a, b] : foundation_terms) {
        ground_truth["foundation_pairs"].push_back({a, b});
    }
    ground_truth["planted_flows"] = planted_flows;
    std::size_t cross_group = 0;
    for (const auto& f : planted_flows) {
        // school names encode their index, so recover groups from rank order
        const std::string p = f.at("producer").get<std::string>();
        const std::string a = f.at("adopter").get<std::string>();
        auto idx = [](const std::string& name) {
            return static_cast<std::size_t>((name[4] - 'a') * 26 + (name[5] - 'a'));
        };
        if (group_of(idx(p)) != group_of(idx(a))) ++cross_group;
    }
    ground_truth["cross_group_flow_count"] = cross_group;
    ground_truth["tier_size"] = params.tier_size;
    ground_truth["n_schools"] = params.n_schools;

    Fixture fixture;
    fixture.corpus_jsonl = corpus.str();
    fixture.institutions_csv = institutions.str();
    fixture.journals_jsonl = journals.str();
    fixture.ground_truth_json = ground_truth.dump(2) + "\n";
    return fixture;
}

}  // namespace vogue
