#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "vogue/errors.hpp"

namespace vogue {

enum class Source { Dissertation, Journal };

struct Document {
    std::string id;
    std::string text;
    int year = 0;
    std::string institution;           // required for dissertations
    Source source = Source::Dissertation;
    std::optional<std::string> journal;  // required for journal docs
};

struct InstitutionRecord {
    std::string name;
    std::string region;  // census division code
    bool is_public = false;
    bool is_private = false;
    bool land_grant = false;
    int ranking = 1;     // lower = higher status
    int size = 0;        // dissertation count, filled in later
};

// Validated document collection; ids are unique.
struct Corpus {
    std::vector<Document> docs;

    std::size_t size() const { return docs.size(); }
    bool empty() const { return docs.empty(); }
};

struct PeriodSplit {
    std::vector<std::string> t1;  // doc ids with year in [start, boundary]
    std::vector<std::string> t2;  // doc ids with year in (boundary, end]
    std::size_t excluded = 0;     // out-of-range docs, reported not fatal
};

// JSONL loader: one object per line with keys id, text, year, source,
// institution?, journal?. Blank lines are skipped.
inline Corpus load_corpus(std::istream& in) {
    Corpus corpus;
    std::unordered_set<std::string> seen_ids;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        nlohmann::json obj = nlohmann::json::parse(line, nullptr, false);
        if (obj.is_discarded() || !obj.is_object()) {
            throw ParseError("malformed JSON object", lineno);
        }
        for (const char* key : {"id", "text", "year", "source"}) {
            if (!obj.contains(key)) {
                throw ValidationError("line " + std::to_string(lineno) +
                                      ": missing required field \"" + key + "\"");
            }
        }

        Document doc;
        doc.id = obj.at("id").get<std::string>();
        doc.text = obj.at("text").get<std::string>();
        if (!obj.at("year").is_number_integer()) {
            throw ValidationError("line " + std::to_string(lineno) + ": year must be an integer");
        }
        doc.year = obj.at("year").get<int>();

        const std::string source = obj.at("source").get<std::string>();
        if (source == "dissertation") {
            doc.source = Source::Dissertation;
            if (!obj.contains("institution")) {
                throw ValidationError("line " + std::to_string(lineno) +
                                      ": dissertation document requires \"institution\"");
            }
            doc.institution = obj.at("institution").get<std::string>();
        } else if (source == "journal") {
            doc.source = Source::Journal;
            if (!obj.contains("journal")) {
                throw ValidationError("line " + std::to_string(lineno) +
                                      ": journal document requires \"journal\"");
            }
            doc.journal = obj.at("journal").get<std::string>();
            if (obj.contains("institution")) {
                doc.institution = obj.at("institution").get<std::string>();
            }
        } else {
            throw ValidationError("line " + std::to_string(lineno) +
                                  ": unknown source \"" + source + "\"");
        }

        if (!seen_ids.insert(doc.id).second) {
            throw ValidationError("line " + std::to_string(lineno) +
                                  ": duplicate document id \"" + doc.id + "\"");
        }
        corpus.docs.push_back(std::move(doc));
    }
    return corpus;
}

inline Corpus load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read corpus file: " + path);
    return load_corpus(in);
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

inline bool parse_flag(const std::string& s, std::size_t lineno) {
    if (s == "1" || s == "true") return true;
    if (s == "0" || s == "false") return false;
    throw ParseError("expected boolean flag, got \"" + s + "\"", lineno);
}

}  // namespace detail

// Institution metadata CSV: name,region,public,private,land_grant,ranking.
// Exactly one of public/private must be set; land-grant may co-occur with
// public. Keyed by name.
inline std::map<std::string, InstitutionRecord> load_institutions(std::istream& in) {
    std::map<std::string, InstitutionRecord> records;
    std::string line;
    std::size_t lineno = 0;
    bool header = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        auto fields = detail::split_csv_line(line);
        if (fields.size() != 6) {
            throw ParseError("expected 6 columns, got " + std::to_string(fields.size()), lineno);
        }
        InstitutionRecord rec;
        rec.name = fields[0];
        rec.region = fields[1];
        rec.is_public = detail::parse_flag(fields[2], lineno);
        rec.is_private = detail::parse_flag(fields[3], lineno);
        rec.land_grant = detail::parse_flag(fields[4], lineno);
        try {
            rec.ranking = std::stoi(fields[5]);
        } catch (const std::exception&) {
            throw ParseError("bad ranking \"" + fields[5] + "\"", lineno);
        }
        if (rec.is_public == rec.is_private) {
            throw ValidationError("institution \"" + rec.name +
                                  "\": exactly one of public/private must be set");
        }
        if (rec.land_grant && rec.is_private) {
            throw ValidationError("institution \"" + rec.name +
                                  "\": land-grant implies public");
        }
        if (rec.ranking < 1) {
            throw ValidationError("institution \"" + rec.name + "\": ranking must be >= 1");
        }
        if (records.count(rec.name)) {
            throw ValidationError("duplicate institution \"" + rec.name + "\"");
        }
        records.emplace(rec.name, std::move(rec));
    }
    return records;
}

inline std::map<std::string, InstitutionRecord> load_institutions(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read institution file: " + path);
    return load_institutions(in);
}

// Fill the computed size field (dissertation count per institution).
inline void count_sizes(std::map<std::string, InstitutionRecord>& records,
                        const Corpus& corpus) {
    for (auto& [name, rec] : records) rec.size = 0;
    for (const auto& doc : corpus.docs) {
        if (doc.source != Source::Dissertation) continue;
        auto it = records.find(doc.institution);
        if (it != records.end()) ++it->second.size;
    }
}

// Two analysis periods: [start, boundary] and (boundary, end]. Docs outside
// [start, end] are excluded and counted.
inline PeriodSplit split_periods(const Corpus& corpus, int start, int boundary, int end) {
    if (boundary < start || boundary >= end) {
        throw ConfigError("period boundary " + std::to_string(boundary) +
                          " must lie in [" + std::to_string(start) + ", " +
                          std::to_string(end) + ")");
    }
    PeriodSplit split;
    for (const auto& doc : corpus.docs) {
        if (doc.year < start || doc.year > end) {
            ++split.excluded;
        } else if (doc.year <= boundary) {
            split.t1.push_back(doc.id);
        } else {
            split.t2.push_back(doc.id);
        }
    }
    return split;
}

}  // namespace vogue
