#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "vogue/errors.hpp"

namespace vogue {

// TF-IDF scores for one document. Ordered map keeps downstream output stable.
struct TermVector {
    std::string doc_id;
    std::map<std::string, double> scores;
};

// score(t, d) = count(t, d) * ln(N / df(t)). Raw term frequency, natural-log
// idf, no smoothing: a term present in every document scores exactly 0.
inline std::vector<TermVector> tfidf(const std::vector<std::string>& doc_ids,
                                     const std::vector<std::vector<std::string>>& docs) {
    if (docs.empty()) throw EmptyCorpusError();
    if (doc_ids.size() != docs.size()) {
        throw DimensionError("tfidf: ids and token lists differ in length");
    }

    const double n_docs = static_cast<double>(docs.size());
    std::map<std::string, std::size_t> df;
    std::vector<std::map<std::string, std::size_t>> counts(docs.size());
    for (std::size_t d = 0; d < docs.size(); ++d) {
        for (const auto& token : docs[d]) ++counts[d][token];
        for (const auto& [term, c] : counts[d]) ++df[term];
    }

    std::vector<TermVector> result(docs.size());
    for (std::size_t d = 0; d < docs.size(); ++d) {
        result[d].doc_id = doc_ids[d];
        for (const auto& [term, c] : counts[d]) {
            const double idf = std::log(n_docs / static_cast<double>(df.at(term)));
            result[d].scores[term] = static_cast<double>(c) * idf;
        }
    }
    return result;
}

// The K highest-scoring terms with score > 0; ties broken by ascending
// lexicographic order. Fewer than K returned when fewer positive scores exist.
inline std::set<std::string> extract_terms(const TermVector& vec, std::size_t k) {
    if (k < 1) throw ConfigError("extract_terms: K must be >= 1");
    std::vector<std::pair<std::string, double>> positive;
    for (const auto& [term, score] : vec.scores) {
        if (score > 0.0) positive.emplace_back(term, score);
    }
    std::sort(positive.begin(), positive.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (positive.size() > k) positive.resize(k);

    std::set<std::string> terms;
    for (const auto& [term, score] : positive) terms.insert(term);
    return terms;
}

}  // namespace vogue
