#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "vogue/errors.hpp"

namespace vogue {

using StopwordSet = std::unordered_set<std::string>;
using LemmaMap = std::unordered_map<std::string, std::string>;

// Standard English stopword list plus "chapter" and "dissertation", which
// carry no substantive meaning in this corpus.
inline const StopwordSet& default_stopwords() {
    static const StopwordSet words = {
        "a", "about", "above", "after", "again", "against", "all", "also", "am", "an",
        "and", "any", "are", "as", "at", "be", "because", "been", "before", "being",
        "below", "between", "both", "but", "by", "can", "cannot", "could", "did", "do",
        "does", "doing", "down", "during", "each", "few", "for", "from", "further",
        "had", "has", "have", "having", "he", "her", "here", "hers", "herself", "him",
        "himself", "his", "how", "however", "i", "if", "in", "into", "is", "it", "its",
        "itself", "just", "may", "me", "might", "more", "most", "must", "my", "myself",
        "no", "nor", "not", "now", "of", "off", "on", "once", "only", "or", "other",
        "our", "ours", "ourselves", "out", "over", "own", "same", "shall", "she",
        "should", "so", "some", "such", "than", "that", "the", "their", "theirs",
        "them", "themselves", "then", "there", "these", "they", "this", "those",
        "through", "to", "too", "under", "until", "up", "upon", "us", "very", "was",
        "we", "were", "what", "when", "where", "which", "while", "who", "whom", "why",
        "will", "with", "within", "without", "would", "you", "your", "yours",
        "yourself", "yourselves",
        // domain stopwords
        "chapter", "dissertation",
    };
    return words;
}

// Irregular plural / base-form dictionary. Values must not themselves be keys
// so that a second normalization pass is a no-op.
inline const LemmaMap& default_lemma_map() {
    static const LemmaMap map = {
        {"women", "woman"},   {"men", "man"},       {"children", "child"},
        {"people", "people"}, {"lives", "life"},    {"wives", "wife"},
        {"selves", "self"},   {"leaves", "leaf"},   {"feet", "foot"},
        {"teeth", "tooth"},   {"mice", "mouse"},    {"criteria", "criterion"},
        {"phenomena", "phenomenon"}, {"analyses", "analysis"},
        {"theses", "thesis"}, {"hypotheses", "hypothesis"},
        {"indices", "index"}, {"matrices", "matrix"},
    };
    return map;
}

namespace detail {

inline bool ends_with(const std::string& s, const char* suffix) {
    std::string_view sv(suffix);
    return s.size() >= sv.size() && s.compare(s.size() - sv.size(), sv.size(), sv) == 0;
}

// Conservative plural stripping; verbs are left alone. Stems shorter than
// 4 characters are never produced.
inline std::string strip_suffix(const std::string& w) {
    if (ends_with(w, "ies") && w.size() >= 7) {
        return w.substr(0, w.size() - 3) + "y";
    }
    if (ends_with(w, "es") && w.size() >= 6) {
        const std::string stem = w.substr(0, w.size() - 2);
        if (ends_with(stem, "ss") || ends_with(stem, "x") || ends_with(stem, "z") ||
            ends_with(stem, "ch") || ends_with(stem, "sh")) {
            if (stem.size() >= 4) return stem;
        }
        return w;  // plain "...es" stays ("examines", "themes")
    }
    if (ends_with(w, "s") && w.size() >= 5 && !ends_with(w, "ss") &&
        !ends_with(w, "us") && !ends_with(w, "is")) {
        return w.substr(0, w.size() - 1);
    }
    return w;
}

}  // namespace detail

// Cleaning pipeline: strip HTML tags, lowercase, drop non-alphabetic
// characters, tokenize, remove stopwords, normalize to base forms, drop
// short tokens. Idempotent on its own output.
inline std::vector<std::string> normalize_text(const std::string& raw,
                                               const StopwordSet& stopwords,
                                               const LemmaMap& lemma_map) {
    std::string cleaned;
    cleaned.reserve(raw.size());
    bool in_tag = false;
    for (char c : raw) {
        if (c == '<') {
            in_tag = true;
            cleaned.push_back(' ');
        } else if (c == '>') {
            in_tag = false;
        } else if (!in_tag) {
            unsigned char uc = static_cast<unsigned char>(c);
            cleaned.push_back(std::isalpha(uc) ? static_cast<char>(std::tolower(uc)) : ' ');
        }
    }

    std::vector<std::string> tokens;
    std::istringstream stream(cleaned);
    std::string word;
    while (stream >> word) {
        if (stopwords.contains(word)) continue;
        auto it = lemma_map.find(word);
        std::string base = (it != lemma_map.end()) ? it->second : detail::strip_suffix(word);
        if (base.size() < 3) continue;
        if (stopwords.contains(base)) continue;
        tokens.push_back(std::move(base));
    }
    return tokens;
}

inline std::vector<std::string> normalize_text(const std::string& raw) {
    return normalize_text(raw, default_stopwords(), default_lemma_map());
}

// One entry per line; blank lines and '#' comments ignored.
inline StopwordSet load_stopwords(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read stopword file: " + path);
    StopwordSet words;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        words.insert(line);
    }
    return words;
}

// One "inflected base" pair per line, whitespace separated.
inline LemmaMap load_lemma_map(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read lemma file: " + path);
    LemmaMap map;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::istringstream stream(line);
        std::string from, to;
        if (!(stream >> from >> to)) {
            throw ParseError("lemma entry needs two tokens", lineno);
        }
        map[from] = to;
    }
    return map;
}

}  // namespace vogue
