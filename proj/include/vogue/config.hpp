#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "vogue/diffusion.hpp"
#include "vogue/errors.hpp"
#include "vogue/stats/dyads.hpp"

namespace vogue {

// Flat key=value pipeline configuration. Defaults match the documented
// module defaults; everything is validated up front.
struct PipelineConfig {
    // paths
    std::string corpus_path;
    std::string institutions_path;
    std::string journals_dir;       // optional; empty disables the journal stage
    std::string journal_meta_path;  // optional reputation/impact pass-through CSV
    std::string output_dir = "out";
    std::string stopwords_path;     // optional override
    std::string lemmas_path;        // optional override

    // periods
    int year_start = 2011;
    int year_boundary = 2015;
    int year_end = 2020;

    // extraction
    std::size_t k_terms = 20;
    int min_weight = 1;

    // backbone
    double alpha_t = 0.05;

    // vogue
    bool emergent_as_vogue = false;

    // diffusion
    bool allow_self_flows = false;
    bool fractional_flows = false;
    CoreRule core_rule = CoreRule::LargestScc;
    ProducerRule producer_rule = ProducerRule::All;

    // regression
    stats::FixedEffects fixed_effects = stats::FixedEffects::Adopter;
    bool directed_dyads = true;

    // Monte-Carlo oracles only; the pipeline itself is deterministic
    std::uint64_t seed = 0;

    void validate() const {
        if (corpus_path.empty()) throw ConfigError("corpus path is required");
        if (institutions_path.empty()) throw ConfigError("institutions path is required");
        if (year_boundary < year_start || year_boundary >= year_end) {
            throw ConfigError("year_boundary must lie in [year_start, year_end)");
        }
        if (k_terms < 1) throw ConfigError("k_terms must be >= 1");
        if (min_weight < 1) throw ConfigError("min_weight must be >= 1");
        if (!(alpha_t > 0.0 && alpha_t < 1.0)) throw ConfigError("alpha_t must lie in (0, 1)");
    }

    // Canonical serialization, also used for the manifest's config hash.
    std::string to_string() const {
        std::ostringstream out;
        out << "corpus = " << corpus_path << '\n'
            << "institutions = " << institutions_path << '\n'
            << "journals_dir = " << journals_dir << '\n'
            << "journal_meta = " << journal_meta_path << '\n'
            << "output_dir = " << output_dir << '\n'
            << "stopwords = " << stopwords_path << '\n'
            << "lemmas = " << lemmas_path << '\n'
            << "year_start = " << year_start << '\n'
            << "year_boundary = " << year_boundary << '\n'
            << "year_end = " << year_end << '\n'
            << "k_terms = " << k_terms << '\n'
            << "min_weight = " << min_weight << '\n'
            << "alpha_t = " << alpha_t << '\n'
            << "emergent_as_vogue = " << (emergent_as_vogue ? "true" : "false") << '\n'
            << "allow_self_flows = " << (allow_self_flows ? "true" : "false") << '\n'
            << "fractional_flows = " << (fractional_flows ? "true" : "false") << '\n'
            << "core_rule = "
            << (core_rule == CoreRule::LargestScc ? "largest_scc" : "all_sccs") << '\n'
            << "producer_rule = "
            << (producer_rule == ProducerRule::All ? "all" : "earliest_year") << '\n'
            << "fixed_effects = " << fe_name(fixed_effects) << '\n'
            << "directed_dyads = " << (directed_dyads ? "true" : "false") << '\n'
            << "seed = " << seed << '\n';
        return out.str();
    }

    static const char* fe_name(stats::FixedEffects fe) {
        switch (fe) {
            case stats::FixedEffects::None: return "none";
            case stats::FixedEffects::Adopter: return "adopter";
            case stats::FixedEffects::Producer: return "producer";
            case stats::FixedEffects::Both: return "both";
        }
        return "?";
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t");
    return s.substr(begin, end - begin + 1);
}

inline bool parse_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError("expected true/false for " + key + ", got \"" + v + "\"");
}

}  // namespace detail

inline PipelineConfig parse_config(std::istream& in) {
    PipelineConfig config;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string trimmed = detail::trim(line);
        if (trimmed.empty() || trimmed[0] == '#') continue;
        const auto eq = trimmed.find('=');
        if (eq == std::string::npos) {
            throw ParseError("expected key = value", lineno);
        }
        const std::string key = detail::trim(trimmed.substr(0, eq));
        const std::string value = detail::trim(trimmed.substr(eq + 1));

        if (key == "corpus") config.corpus_path = value;
        else if (key == "institutions") config.institutions_path = value;
        else if (key == "journals_dir") config.journals_dir = value;
        else if (key == "journal_meta") config.journal_meta_path = value;
        else if (key == "output_dir") config.output_dir = value;
        else if (key == "stopwords") config.stopwords_path = value;
        else if (key == "lemmas") config.lemmas_path = value;
        else if (key == "year_start") config.year_start = std::stoi(value);
        else if (key == "year_boundary") config.year_boundary = std::stoi(value);
        else if (key == "year_end") config.year_end = std::stoi(value);
        else if (key == "k_terms") config.k_terms = static_cast<std::size_t>(std::stoul(value));
        else if (key == "min_weight") config.min_weight = std::stoi(value);
        else if (key == "alpha_t") config.alpha_t = std::stod(value);
        else if (key == "emergent_as_vogue") config.emergent_as_vogue = detail::parse_bool(value, key);
        else if (key == "allow_self_flows") config.allow_self_flows = detail::parse_bool(value, key);
        else if (key == "fractional_flows") config.fractional_flows = detail::parse_bool(value, key);
        else if (key == "core_rule") {
            if (value == "largest_scc") config.core_rule = CoreRule::LargestScc;
            else if (value == "all_sccs") config.core_rule = CoreRule::AllSccsGe2;
            else throw ConfigError("unknown core_rule \"" + value + "\"");
        } else if (key == "producer_rule") {
            if (value == "all") config.producer_rule = ProducerRule::All;
            else if (value == "earliest_year") config.producer_rule = ProducerRule::EarliestYear;
            else throw ConfigError("unknown producer_rule \"" + value + "\"");
        } else if (key == "fixed_effects") {
            if (value == "none") config.fixed_effects = stats::FixedEffects::None;
            else if (value == "adopter") config.fixed_effects = stats::FixedEffects::Adopter;
            else if (value == "producer") config.fixed_effects = stats::FixedEffects::Producer;
            else if (value == "both") config.fixed_effects = stats::FixedEffects::Both;
            else throw ConfigError("unknown fixed_effects \"" + value + "\"");
        } else if (key == "directed_dyads") {
            config.directed_dyads = detail::parse_bool(value, key);
        } else if (key == "seed") {
            config.seed = std::stoull(value);
        } else {
            throw ConfigError("unknown config key \"" + key + "\"");
        }
    }
    config.validate();
    return config;
}

inline PipelineConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file: " + path);
    return parse_config(in);
}

}  // namespace vogue
