#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "vogue/backbone.hpp"
#include "vogue/config.hpp"
#include "vogue/corpus.hpp"
#include "vogue/diffusion.hpp"
#include "vogue/errors.hpp"
#include "vogue/hash.hpp"
#include "vogue/semnet.hpp"
#include "vogue/stats/dyads.hpp"
#include "vogue/text.hpp"
#include "vogue/tfidf.hpp"
#include "vogue/vogue.hpp"

namespace vogue {

enum class Stage { All, Network, Backbone, Vogue, Diffusion, Journals, Regress };

inline Stage parse_stage(const std::string& name) {
    if (name == "all") return Stage::All;
    if (name == "network") return Stage::Network;
    if (name == "backbone") return Stage::Backbone;
    if (name == "vogue") return Stage::Vogue;
    if (name == "diffusion") return Stage::Diffusion;
    if (name == "journals") return Stage::Journals;
    if (name == "regress") return Stage::Regress;
    throw ConfigError("unknown stage \"" + name + "\"");
}

namespace detail {

inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// Apply fn to every index in [0, n) on the requested number of threads.
// Results land in pre-sized slots, so the merge order never matters.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t begin = t * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&fn, begin, end] {
            for (std::size_t i = begin; i < end; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace detail

struct PipelineResult {
    std::vector<std::string> artifacts;  // relative to the output dir
    std::string manifest_path;
};

class Pipeline {
public:
    explicit Pipeline(PipelineConfig config, unsigned threads = 1)
        : config_(std::move(config)), threads_(threads == 0 ? 1 : threads) {
        config_.validate();
        stopwords_ = config_.stopwords_path.empty() ? default_stopwords()
                                                    : load_stopwords(config_.stopwords_path);
        lemmas_ = config_.lemmas_path.empty() ? default_lemma_map()
                                              : load_lemma_map(config_.lemmas_path);
    }

    PipelineResult run(Stage stage) {
        namespace fs = std::filesystem;
        fs::create_directories(config_.output_dir);
        artifacts_.clear();
        inputs_.clear();

        const bool all = stage == Stage::All;
        if (all || stage == Stage::Network) run_network();
        if (all || stage == Stage::Backbone) run_backbone();
        if (all || stage == Stage::Vogue) run_vogue();
        if (all || stage == Stage::Diffusion) run_diffusion();
        if ((all && !config_.journals_dir.empty()) || stage == Stage::Journals) {
            run_journals();
        }
        if (all || stage == Stage::Regress) run_regress();

        PipelineResult result;
        result.artifacts = artifacts_;
        result.manifest_path = write_manifest();
        return result;
    }

    const PipelineConfig& config() const { return config_; }

private:
    // ---- shared helpers -------------------------------------------------

    std::string out_path(const std::string& name) const {
        return (std::filesystem::path(config_.output_dir) / name).string();
    }

    std::ofstream open_artifact(const std::string& name) {
        std::ofstream out(out_path(name), std::ios::binary);
        if (!out) throw IoError("cannot write artifact: " + out_path(name));
        artifacts_.push_back(name);
        return out;
    }

    void note_input(const std::string& path) {
        if (!path.empty()) inputs_.push_back(path);
    }

    void require_artifact(const std::string& name, const std::string& producing_stage) const {
        if (!std::filesystem::exists(out_path(name))) {
            throw ValidationError("missing artifact \"" + name +
                                  "\"; run stage \"" + producing_stage + "\" first");
        }
    }

    std::string write_manifest() {
        nlohmann::json manifest;
        manifest["config_hash"] = hash_string(config_.to_string());
        nlohmann::json inputs = nlohmann::json::object();
        for (const auto& path : inputs_) inputs[path] = hash_file(path);
        manifest["inputs"] = inputs;
        nlohmann::json arts = nlohmann::json::object();
        for (const auto& name : artifacts_) arts[name] = hash_file(out_path(name));
        manifest["artifacts"] = arts;

        const std::string path = out_path("manifest.json");
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoError("cannot write manifest: " + path);
        out << manifest.dump(2) << '\n';
        return path;
    }

    // ---- network stage --------------------------------------------------

    void run_network() {
        note_input(config_.corpus_path);
        note_input(config_.institutions_path);
        note_input(config_.stopwords_path);
        note_input(config_.lemmas_path);

        const Corpus corpus = load_corpus(config_.corpus_path);
        load_institutions(config_.institutions_path);  // validate early
        const PeriodSplit split =
            split_periods(corpus, config_.year_start, config_.year_boundary, config_.year_end);

        std::set<std::string> t1_ids(split.t1.begin(), split.t1.end());
        std::set<std::string> t2_ids(split.t2.begin(), split.t2.end());
        std::vector<const Document*> t1_docs, t2_docs;
        for (const auto& doc : corpus.docs) {
            if (doc.source != Source::Dissertation) continue;
            if (t1_ids.count(doc.id)) t1_docs.push_back(&doc);
            if (t2_ids.count(doc.id)) t2_docs.push_back(&doc);
        }

        write_period(t1_docs, "t1");
        write_period(t2_docs, "t2");
    }

    void write_period(const std::vector<const Document*>& docs, const std::string& label) {
        std::vector<std::vector<std::string>> tokens(docs.size());
        detail::parallel_for(docs.size(), threads_, [&](std::size_t i) {
            tokens[i] = normalize_text(docs[i]->text, stopwords_, lemmas_);
        });

        std::vector<std::string> ids;
        ids.reserve(docs.size());
        for (const auto* doc : docs) ids.push_back(doc->id);

        std::vector<std::set<std::string>> term_sets;
        nlohmann::json term_sets_json = nlohmann::json::array();
        nlohmann::json vectors_json = nlohmann::json::array();
        if (!docs.empty()) {
            const auto vectors = tfidf(ids, tokens);
            term_sets.reserve(vectors.size());
            for (std::size_t i = 0; i < vectors.size(); ++i) {
                term_sets.push_back(extract_terms(vectors[i], config_.k_terms));
                nlohmann::json entry = {
                    {"id", docs[i]->id},
                    {"institution", docs[i]->institution},
                    {"year", docs[i]->year},
                    {"terms", term_sets.back()},
                };
                term_sets_json.push_back(std::move(entry));
                if (label == "t1") {
                    nlohmann::json scores = nlohmann::json::object();
                    for (const auto& [term, score] : vectors[i].scores) scores[term] = score;
                    vectors_json.push_back({{"id", docs[i]->id},
                                            {"institution", docs[i]->institution},
                                            {"scores", std::move(scores)}});
                }
            }
        }

        {
            auto out = open_artifact("term_sets_" + label + ".json");
            out << term_sets_json.dump() << '\n';
        }
        if (label == "t1") {
            auto out = open_artifact("doc_vectors_t1.json");
            out << vectors_json.dump() << '\n';
        }
        const TermNetwork net =
            build_network(term_sets, label, config_.min_weight);
        auto out = open_artifact(label + "_edges.csv");
        write_edge_csv(net, out);
    }

    TermNetwork load_network(const std::string& name, const std::string& label) const {
        std::ifstream in(out_path(name));
        if (!in) throw IoError("cannot read artifact: " + out_path(name));
        TermNetwork net;
        net.label = label;
        std::string line;
        std::getline(in, line);  // header
        std::size_t lineno = 1;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            auto fields = vogue::detail::split_csv_line(line);
            if (fields.size() < 3) throw ParseError("bad edge row", lineno);
            EdgeKey edge(fields[0], fields[1]);
            net.nodes.insert(edge.a);
            net.nodes.insert(edge.b);
            net.edges[edge] = std::stoi(fields[2]);
        }
        return net;
    }

    // ---- backbone stage -------------------------------------------------

    void run_backbone() {
        for (const std::string label : {"t1", "t2"}) {
            require_artifact(label + std::string("_edges.csv"), "network");
            const TermNetwork net = load_network(label + std::string("_edges.csv"), label);
            std::map<EdgeKey, EdgeSignificance> alphas;
            if (!net.edges.empty()) alphas = disparity_alpha(net);

            auto out = open_artifact(label + std::string("_backbone.csv"));
            out << "term_a,term_b,weight,alpha_a,alpha_b,in_backbone\n";
            for (const auto& [edge, sig] : alphas) {
                const bool kept = sig.alpha() < config_.alpha_t;
                out << edge.a << ',' << edge.b << ',' << net.weight(edge) << ','
                    << detail::format_double(sig.alpha_from_a) << ','
                    << detail::format_double(sig.alpha_from_b) << ','
                    << (kept ? 1 : 0) << '\n';
            }
        }
    }

    struct BackboneTable {
        TermNetwork net;
        Backbone backbone;
        std::map<EdgeKey, EdgeSignificance> alphas;
    };

    BackboneTable load_backbone(const std::string& label) const {
        const std::string name = label + "_backbone.csv";
        std::ifstream in(out_path(name));
        if (!in) throw IoError("cannot read artifact: " + out_path(name));
        BackboneTable table;
        table.net.label = label;
        table.backbone.label = label;
        table.backbone.alpha_t = config_.alpha_t;
        std::string line;
        std::getline(in, line);
        std::size_t lineno = 1;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            auto fields = vogue::detail::split_csv_line(line);
            if (fields.size() < 6) throw ParseError("bad backbone row", lineno);
            EdgeKey edge(fields[0], fields[1]);
            table.net.nodes.insert(edge.a);
            table.net.nodes.insert(edge.b);
            table.net.edges[edge] = std::stoi(fields[2]);
            EdgeSignificance sig;
            sig.alpha_from_a = std::stod(fields[3]);
            sig.alpha_from_b = std::stod(fields[4]);
            table.alphas[edge] = sig;
            if (fields[5] == "1") table.backbone.edges.insert(edge);
        }
        return table;
    }

    // ---- vogue stage ----------------------------------------------------

    void run_vogue() {
        require_artifact("t1_backbone.csv", "backbone");
        require_artifact("t2_backbone.csv", "backbone");
        const BackboneTable t1 = load_backbone("t1");
        const BackboneTable t2 = load_backbone("t2");

        const auto classes = classify_edges(t1.net, t1.backbone, t2.net, t2.backbone,
                                            config_.emergent_as_vogue);
        {
            auto out = open_artifact("categories.csv");
            out << "term_a,term_b,w_t1,w_t2,alpha_t1,alpha_t2,category,declined\n";
            for (const auto& [edge, cls] : classes) {
                auto alpha_of = [&](const BackboneTable& table) {
                    auto it = table.alphas.find(edge);
                    return it == table.alphas.end() ? std::string()
                                                    : detail::format_double(it->second.alpha());
                };
                out << edge.a << ',' << edge.b << ',' << t1.net.weight(edge) << ','
                    << t2.net.weight(edge) << ',' << alpha_of(t1) << ',' << alpha_of(t2)
                    << ',' << to_string(cls.category) << ',' << (cls.declined ? 1 : 0)
                    << '\n';
            }
        }

        const VogueReport report = summarize(classes, t1.net, t1.backbone);
        {
            auto out = open_artifact("vogue_report.json");
            nlohmann::json counts = nlohmann::json::object();
            for (const auto& [cat, count] : report.counts) counts[to_string(cat)] = count;
            nlohmann::json doc = {{"counts", counts},
                                  {"weak_tie_share", report.weak_tie_share}};
            out << doc.dump(2) << '\n';
        }

        // per-topic vogue vs foundation neighborhoods for every term that
        // touches a vogue or foundation edge
        std::set<std::string> topics;
        for (const auto& [edge, cls] : classes) {
            if (cls.category == EdgeCategory::Vogue ||
                cls.category == EdgeCategory::Foundation) {
                topics.insert(edge.a);
                topics.insert(edge.b);
            }
        }
        auto out = open_artifact("topics.json");
        nlohmann::json doc = nlohmann::json::object();
        for (const auto& term : topics) {
            const TopicNeighbors neighbors = topic_neighbors(term, classes, t2.net);
            doc[term] = {{"vogue", neighbors.vogue_neighbors},
                         {"foundation", neighbors.foundation_neighbors}};
        }
        out << doc.dump(2) << '\n';
    }

    std::set<EdgeKey> load_vogue_edges() const {
        std::ifstream in(out_path("categories.csv"));
        if (!in) throw IoError("cannot read artifact: " + out_path("categories.csv"));
        std::set<EdgeKey> edges;
        std::string line;
        std::getline(in, line);
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            auto fields = vogue::detail::split_csv_line(line);
            if (fields.size() >= 7 && fields[6] == "vogue") {
                edges.insert(EdgeKey(fields[0], fields[1]));
            }
        }
        return edges;
    }

    std::vector<DocTerms> load_term_sets(const std::string& label) const {
        const std::string name = "term_sets_" + label + ".json";
        std::ifstream in(out_path(name));
        if (!in) throw IoError("cannot read artifact: " + out_path(name));
        nlohmann::json doc = nlohmann::json::parse(in);
        std::vector<DocTerms> result;
        for (const auto& entry : doc) {
            DocTerms dt;
            dt.id = entry.at("id").get<std::string>();
            dt.institution = entry.at("institution").get<std::string>();
            dt.year = entry.at("year").get<int>();
            dt.source = Source::Dissertation;
            for (const auto& t : entry.at("terms")) dt.terms.insert(t.get<std::string>());
            result.push_back(std::move(dt));
        }
        return result;
    }

    // ---- diffusion stage ------------------------------------------------

    void run_diffusion() {
        require_artifact("categories.csv", "vogue");
        require_artifact("term_sets_t1.json", "network");
        require_artifact("term_sets_t2.json", "network");
        note_input(config_.institutions_path);

        const auto vogue_edges = load_vogue_edges();
        const auto docs_t1 = load_term_sets("t1");
        const auto docs_t2 = load_term_sets("t2");
        auto institutions = load_institutions(config_.institutions_path);

        const auto attributions = attribute_pairs(docs_t1, docs_t2, vogue_edges,
                                                  institutions, config_.producer_rule);
        const FlowNetwork flow =
            build_flow(attributions, config_.allow_self_flows, config_.fractional_flows);
        const CoreLabels labels = core_periphery(flow, config_.core_rule);
        const FlowShares shares = flow_shares(flow, labels);

        {
            auto out = open_artifact("flow.csv");
            out << "producer,adopter,weight\n";
            for (const auto& [edge, w] : flow.edges) {
                out << edge.first << ',' << edge.second << ','
                    << detail::format_double(w) << '\n';
            }
        }
        {
            auto out = open_artifact("labels.csv");
            out << "institution,label\n";
            for (const auto& [inst, label] : labels) {
                out << inst << ',' << (label == Label::Core ? "core" : "periphery") << '\n';
            }
        }
        {
            auto out = open_artifact("shares.json");
            nlohmann::json doc = {{"core_core", shares.cc},
                                  {"core_periphery", shares.cp},
                                  {"periphery_core", shares.pc},
                                  {"periphery_periphery", shares.pp}};
            out << doc.dump(2) << '\n';
        }
        {
            // region-tagged node table; map rendering happens elsewhere
            auto out = open_artifact("nodes.csv");
            out << "institution,region,label\n";
            for (const auto& [inst, label] : labels) {
                auto it = institutions.find(inst);
                out << inst << ',' << (it == institutions.end() ? "" : it->second.region)
                    << ',' << (label == Label::Core ? "core" : "periphery") << '\n';
            }
        }
        {
            auto out = open_artifact("flow.dot");
            out << "digraph flows {\n";
            for (const auto& [inst, label] : labels) {
                out << "  \"" << inst << "\" [role="
                    << (label == Label::Core ? "core" : "periphery") << "];\n";
            }
            for (const auto& [edge, w] : flow.edges) {
                out << "  \"" << edge.first << "\" -> \"" << edge.second
                    << "\" [weight=" << detail::format_double(w) << "];\n";
            }
            out << "}\n";
        }
    }

    FlowNetwork load_flow() const {
        std::ifstream in(out_path("flow.csv"));
        if (!in) throw IoError("cannot read artifact: " + out_path("flow.csv"));
        FlowNetwork flow;
        std::string line;
        std::getline(in, line);
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            auto fields = vogue::detail::split_csv_line(line);
            if (fields.size() < 3) continue;
            flow.nodes.insert(fields[0]);
            flow.nodes.insert(fields[1]);
            flow.edges[{fields[0], fields[1]}] = std::stod(fields[2]);
        }
        return flow;
    }

    // ---- journal stage --------------------------------------------------

    void run_journals() {
        namespace fs = std::filesystem;
        require_artifact("categories.csv", "vogue");
        if (config_.journals_dir.empty()) {
            throw ConfigError("journals stage requires journals_dir");
        }
        if (!fs::is_directory(config_.journals_dir)) {
            throw IoError("journals_dir is not a directory: " + config_.journals_dir);
        }

        std::map<std::string, std::vector<std::vector<std::string>>> journal_tokens;
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(config_.journals_dir)) {
            if (entry.path().extension() == ".jsonl") files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
        for (const auto& path : files) {
            note_input(path.string());
            const Corpus corpus = load_corpus(path.string());
            for (const auto& doc : corpus.docs) {
                if (doc.source != Source::Journal || !doc.journal) continue;
                if (doc.year < config_.year_start || doc.year > config_.year_boundary) {
                    continue;  // journal networks use T1 abstracts only
                }
                journal_tokens[*doc.journal].push_back(
                    normalize_text(doc.text, stopwords_, lemmas_));
            }
        }

        std::map<std::string, std::pair<std::optional<double>, std::optional<double>>> meta;
        if (!config_.journal_meta_path.empty()) {
            note_input(config_.journal_meta_path);
            meta = load_journal_meta(config_.journal_meta_path);
        }

        const auto rows = journal_overlap(journal_tokens, load_vogue_edges(),
                                          {config_.k_terms, config_.min_weight});
        auto out = open_artifact("journal_overlap.csv");
        out << "journal,overlap,edges,vogue_edges,reputation,impact_factor\n";
        for (const auto& row : rows) {
            out << '"' << row.journal << "\"," << detail::format_double(row.overlap) << ','
                << row.edge_count << ',' << row.vogue_edge_count << ',';
            auto it = meta.find(row.journal);
            if (it != meta.end() && it->second.first) {
                out << detail::format_double(*it->second.first);
            }
            out << ',';
            if (it != meta.end() && it->second.second) {
                out << detail::format_double(*it->second.second);
            }
            out << '\n';
        }
    }

    static std::map<std::string, std::pair<std::optional<double>, std::optional<double>>>
    load_journal_meta(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw IoError("cannot read journal metadata: " + path);
        std::map<std::string, std::pair<std::optional<double>, std::optional<double>>> meta;
        std::string line;
        std::getline(in, line);  // header
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            auto fields = vogue::detail::split_csv_line(line);
            if (fields.size() < 3) continue;
            auto parse = [](const std::string& s) -> std::optional<double> {
                if (s.empty() || s == "Unavailable") return std::nullopt;
                return std::stod(s);
            };
            meta[fields[0]] = {parse(fields[1]), parse(fields[2])};
        }
        return meta;
    }

    // ---- regression stage -----------------------------------------------

    void run_regress() {
        require_artifact("flow.csv", "diffusion");
        require_artifact("categories.csv", "vogue");
        require_artifact("term_sets_t1.json", "network");
        require_artifact("term_sets_t2.json", "network");
        require_artifact("doc_vectors_t1.json", "network");
        note_input(config_.institutions_path);

        auto institutions = load_institutions(config_.institutions_path);
        const auto docs_t1 = load_term_sets("t1");
        const auto docs_t2 = load_term_sets("t2");
        {
            // sizes come from T1+T2 dissertation counts
            std::map<std::string, int> counts;
            for (const auto& d : docs_t1) ++counts[d.institution];
            for (const auto& d : docs_t2) ++counts[d.institution];
            for (auto& [name, rec] : institutions) {
                auto it = counts.find(name);
                rec.size = it == counts.end() ? 0 : it->second;
            }
        }

        const FlowNetwork flow = load_flow();
        const stats::FitSimilarity fits = load_fit_similarity(institutions);
        const stats::DyadTable table =
            stats::build_dyads(flow, institutions, fits, config_.directed_dyads);

        {
            auto out = open_artifact("dyads.csv");
            out << "producer,adopter,y,same_rank,same_size,same_location,both_public,"
                   "both_private,both_landgrant,fit,rank_gap,size_gap\n";
            for (const auto& row : table.rows) {
                out << row.producer << ',' << row.adopter << ','
                    << detail::format_double(row.y) << ',' << row.same_rank << ','
                    << row.same_size << ',' << row.same_location << ',' << row.both_public
                    << ',' << row.both_private << ',' << row.both_landgrant << ','
                    << detail::format_double(row.fit) << ',' << row.rank_gap << ','
                    << row.size_gap << '\n';
            }
        }

        const auto models = stats::run_table_models(table, config_.fixed_effects);
        {
            auto out = open_artifact("models.csv");
            out << "model,term,estimate,se,p_value,stars\n";
            for (const auto& model : models) {
                for (const auto& coef : model.coefficients) {
                    out << model.label << ',' << coef.name << ','
                        << detail::format_double(coef.estimate) << ','
                        << detail::format_double(coef.se) << ','
                        << detail::format_double(coef.p_value) << ','
                        << std::string(static_cast<std::size_t>(coef.stars), '*') << '\n';
                }
                out << model.label << ",observations," << model.n_obs << ",,,\n";
                out << model.label << ",r_squared,"
                    << detail::format_double(model.r_squared) << ",,,\n";
                out << model.label << ",adj_r_squared,"
                    << detail::format_double(model.adj_r_squared) << ",,,\n";
                out << model.label << ",residual_se,"
                    << detail::format_double(model.residual_se) << " (df="
                    << model.df_residual << "),,,\n";
                out << model.label << ",f_statistic,"
                    << detail::format_double(model.f_statistic) << ",,,\n";
            }
        }
        {
            auto out = open_artifact("models.json");
            out << models_json(models).dump(2) << '\n';
        }

        const auto vogue_edges = load_vogue_edges();
        const auto attributions = attribute_pairs(docs_t1, docs_t2, vogue_edges,
                                                  institutions, config_.producer_rule);
        const auto school_rows = stats::build_school_rows(attributions, institutions);
        auto out = open_artifact("school_models.json");
        nlohmann::json doc;
        for (auto target : {stats::SchoolTarget::Produced, stats::SchoolTarget::Adopted}) {
            const auto result = stats::school_level_regression(school_rows, target);
            nlohmann::json model = models_json({result.fit})[0];
            for (std::size_t i = 0; i < result.confidence_intervals.size(); ++i) {
                model["coefficients"][i]["ci95"] = {result.confidence_intervals[i].first,
                                                    result.confidence_intervals[i].second};
            }
            doc[result.fit.label] = std::move(model);
        }
        out << doc.dump(2) << '\n';
    }

    stats::FitSimilarity load_fit_similarity(
        const std::map<std::string, InstitutionRecord>& institutions) const {
        std::ifstream in(out_path("doc_vectors_t1.json"));
        if (!in) throw IoError("cannot read artifact: " + out_path("doc_vectors_t1.json"));
        nlohmann::json doc = nlohmann::json::parse(in);
        std::map<std::string, std::vector<stats::MeanVector>> by_institution;
        for (const auto& entry : doc) {
            stats::MeanVector vec;
            for (const auto& [term, score] : entry.at("scores").items()) {
                vec[term] = score.get<double>();
            }
            by_institution[entry.at("institution").get<std::string>()].push_back(std::move(vec));
        }
        std::vector<std::string> names;
        for (const auto& [name, rec] : institutions) names.push_back(name);
        return stats::fit_similarity(by_institution, names);
    }

    static nlohmann::json models_json(const std::vector<stats::FitResult>& models) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& model : models) {
            nlohmann::json coefs = nlohmann::json::array();
            for (const auto& coef : model.coefficients) {
                coefs.push_back({{"name", coef.name},
                                 {"estimate", coef.estimate},
                                 {"se", coef.se},
                                 {"p_value", coef.p_value},
                                 {"stars", coef.stars}});
            }
            arr.push_back({{"label", model.label},
                           {"coefficients", coefs},
                           {"r_squared", model.r_squared},
                           {"adj_r_squared", model.adj_r_squared},
                           {"residual_se", model.residual_se},
                           {"df_residual", model.df_residual},
                           {"f_statistic", model.f_statistic},
                           {"n_obs", model.n_obs},
                           {"n_regressors", model.n_regressors},
                           {"non_psd_warning", model.non_psd_warning}});
        }
        return arr;
    }

    PipelineConfig config_;
    unsigned threads_;
    StopwordSet stopwords_;
    LemmaMap lemmas_;
    std::vector<std::string> artifacts_;
    std::vector<std::string> inputs_;
};

}  // namespace vogue
