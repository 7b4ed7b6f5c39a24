#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vogue/corpus.hpp"
#include "vogue/errors.hpp"
#include "vogue/semnet.hpp"
#include "vogue/tfidf.hpp"

namespace vogue {

// A document reduced to what attribution needs.
struct DocTerms {
    std::string id;
    std::string institution;  // empty for journal docs
    Source source = Source::Dissertation;
    int year = 0;
    std::set<std::string> terms;
};

struct PairAttribution {
    EdgeKey edge;
    std::set<std::string> producers;  // institutions using the pair in T1
    std::set<std::string> adopters;   // institutions using the pair in T2
};

// Attribution credit rule for producers: every T1 user, or only users from
// the earliest year the pair appears.
enum class ProducerRule { All, EarliestYear };

namespace detail {

inline void attribute_side(const std::vector<DocTerms>& docs,
                           const std::map<std::string, InstitutionRecord>& institutions,
                           const EdgeKey& edge, bool earliest_only,
                           std::set<std::string>& out) {
    std::map<std::string, int> first_use;  // institution -> earliest year
    int earliest = 0;
    bool any = false;
    for (const auto& doc : docs) {
        if (doc.source != Source::Dissertation) continue;
        if (!doc.terms.count(edge.a) || !doc.terms.count(edge.b)) continue;
        if (!institutions.count(doc.institution)) {
            throw UnknownInstitutionError("document \"" + doc.id +
                                          "\" cites unknown institution \"" +
                                          doc.institution + "\"");
        }
        auto [it, inserted] = first_use.emplace(doc.institution, doc.year);
        if (!inserted) it->second = std::min(it->second, doc.year);
        earliest = any ? std::min(earliest, doc.year) : doc.year;
        any = true;
    }
    for (const auto& [inst, year] : first_use) {
        if (!earliest_only || year == earliest) out.insert(inst);
    }
}

}  // namespace detail

// Producers used the pair in a T1 dissertation, adopters in a T2 one.
// Journal documents never attribute. With ProducerRule::EarliestYear only
// institutions using the pair in its first T1 year are credited.
inline std::vector<PairAttribution> attribute_pairs(
    const std::vector<DocTerms>& docs_t1, const std::vector<DocTerms>& docs_t2,
    const std::set<EdgeKey>& vogue_edges,
    const std::map<std::string, InstitutionRecord>& institutions,
    ProducerRule rule = ProducerRule::All) {
    std::vector<PairAttribution> result;
    result.reserve(vogue_edges.size());
    for (const auto& edge : vogue_edges) {
        PairAttribution attr{edge, {}, {}};
        detail::attribute_side(docs_t1, institutions, edge,
                               rule == ProducerRule::EarliestYear, attr.producers);
        detail::attribute_side(docs_t2, institutions, edge, false, attr.adopters);
        result.push_back(std::move(attr));
    }
    return result;
}

// Directed producer -> adopter flow graph. Nodes cover all known
// institutions so periphery membership is meaningful.
struct FlowNetwork {
    std::set<std::string> nodes;
    std::map<std::pair<std::string, std::string>, double> edges;

    double weight(const std::string& from, const std::string& to) const {
        auto it = edges.find({from, to});
        return it == edges.end() ? 0.0 : it->second;
    }
};

// weight(A->B) = number of vogue pairs with A producing and B adopting.
// Self-flows dropped unless allow_self; fractional divides each pair's
// contribution by |producers| * |adopters|.
inline FlowNetwork build_flow(const std::vector<PairAttribution>& attributions,
                              bool allow_self = false, bool fractional = false) {
    FlowNetwork flow;
    for (const auto& attr : attributions) {
        const double unit =
            fractional && !attr.producers.empty() && !attr.adopters.empty()
                ? 1.0 / (static_cast<double>(attr.producers.size()) *
                         static_cast<double>(attr.adopters.size()))
                : 1.0;
        for (const auto& producer : attr.producers) {
            flow.nodes.insert(producer);
            for (const auto& adopter : attr.adopters) {
                flow.nodes.insert(adopter);
                if (producer == adopter && !allow_self) continue;
                flow.edges[{producer, adopter}] += unit;
            }
        }
        for (const auto& adopter : attr.adopters) flow.nodes.insert(adopter);
    }
    return flow;
}

// Tarjan's algorithm, iterative. Returns components as sorted member sets.
inline std::vector<std::set<std::string>> strongly_connected_components(const FlowNetwork& flow) {
    std::vector<std::string> nodes(flow.nodes.begin(), flow.nodes.end());
    std::map<std::string, int> id;
    for (std::size_t i = 0; i < nodes.size(); ++i) id[nodes[i]] = static_cast<int>(i);

    std::vector<std::vector<int>> adj(nodes.size());
    for (const auto& [edge, w] : flow.edges) {
        adj[id.at(edge.first)].push_back(id.at(edge.second));
    }

    const int n = static_cast<int>(nodes.size());
    std::vector<int> index(n, -1), lowlink(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    std::vector<std::set<std::string>> components;
    int next_index = 0;

    struct Frame {
        int v;
        std::size_t child = 0;
    };
    for (int root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        std::vector<Frame> frames{{root}};
        index[root] = lowlink[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            Frame& frame = frames.back();
            const int v = frame.v;
            if (frame.child < adj[v].size()) {
                const int w = adj[v][frame.child++];
                if (index[w] == -1) {
                    index[w] = lowlink[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w});
                } else if (on_stack[w]) {
                    lowlink[v] = std::min(lowlink[v], index[w]);
                }
            } else {
                if (lowlink[v] == index[v]) {
                    std::set<std::string> comp;
                    int w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp.insert(nodes[w]);
                    } while (w != v);
                    components.push_back(std::move(comp));
                }
                frames.pop_back();
                if (!frames.empty()) {
                    const int parent = frames.back().v;
                    lowlink[parent] = std::min(lowlink[parent], lowlink[v]);
                }
            }
        }
    }
    return components;
}

enum class Label { Core, Periphery };
enum class CoreRule { LargestScc, AllSccsGe2 };

using CoreLabels = std::map<std::string, Label>;

namespace detail {

inline double internal_weight(const FlowNetwork& flow, const std::set<std::string>& comp) {
    double total = 0.0;
    for (const auto& [edge, w] : flow.edges) {
        if (comp.count(edge.first) && comp.count(edge.second)) total += w;
    }
    return total;
}

}  // namespace detail

// Core = members of the largest SCC; ties broken by larger internal flow
// weight, then by lexicographically smallest member set. The AllSccsGe2 rule
// instead marks every SCC of size >= 2 as core.
inline CoreLabels core_periphery(const FlowNetwork& flow,
                                 CoreRule rule = CoreRule::LargestScc) {
    CoreLabels labels;
    for (const auto& node : flow.nodes) labels[node] = Label::Periphery;
    auto components = strongly_connected_components(flow);
    if (components.empty()) return labels;

    if (rule == CoreRule::AllSccsGe2) {
        for (const auto& comp : components) {
            if (comp.size() < 2) continue;
            for (const auto& node : comp) labels[node] = Label::Core;
        }
        return labels;
    }

    const std::set<std::string>* best = nullptr;
    double best_weight = 0.0;
    for (const auto& comp : components) {
        const double w = detail::internal_weight(flow, comp);
        if (best == nullptr || comp.size() > best->size() ||
            (comp.size() == best->size() && w > best_weight) ||
            (comp.size() == best->size() && w == best_weight && comp < *best)) {
            best = &comp;
            best_weight = w;
        }
    }
    for (const auto& node : *best) labels.at(node) = Label::Core;
    return labels;
}

struct FlowShares {
    double cc = 0, cp = 0, pc = 0, pp = 0;
};

// Weight-proportional shares by (source label, target label); all zero on an
// empty network.
inline FlowShares flow_shares(const FlowNetwork& flow, const CoreLabels& labels) {
    for (const auto& node : flow.nodes) {
        if (!labels.count(node)) {
            throw ValidationError("flow node \"" + node + "\" has no core/periphery label");
        }
    }
    FlowShares shares;
    double total = 0.0;
    for (const auto& [edge, w] : flow.edges) {
        total += w;
        const bool src_core = labels.at(edge.first) == Label::Core;
        const bool dst_core = labels.at(edge.second) == Label::Core;
        (src_core ? (dst_core ? shares.cc : shares.cp)
                  : (dst_core ? shares.pc : shares.pp)) += w;
    }
    if (total > 0.0) {
        shares.cc /= total;
        shares.cp /= total;
        shares.pc /= total;
        shares.pp /= total;
    }
    return shares;
}

struct JournalOverlapRow {
    std::string journal;
    double overlap = 0.0;
    std::size_t edge_count = 0;
    std::size_t vogue_edge_count = 0;
    std::optional<double> reputation;
    std::optional<double> impact_factor;
    bool empty_network = false;  // zero edges, overlap reported as 0
};

struct ExtractionConfig {
    std::size_t k_terms = 20;
    int min_weight = 1;
};

// Build each journal's T1 semantic network with the shared pipeline and
// score it by |E_J intersect Vogue| / |E_J|. Rows sorted by overlap
// descending, ties by name.
inline std::vector<JournalOverlapRow> journal_overlap(
    const std::map<std::string, std::vector<std::vector<std::string>>>& journal_tokens_t1,
    const std::set<EdgeKey>& vogue_edges, const ExtractionConfig& config) {
    std::vector<JournalOverlapRow> rows;
    for (const auto& [journal, token_lists] : journal_tokens_t1) {
        JournalOverlapRow row;
        row.journal = journal;
        if (!token_lists.empty()) {
            std::vector<std::string> ids(token_lists.size());
            for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = std::to_string(i);
            std::vector<std::set<std::string>> term_sets;
            for (const auto& vec : tfidf(ids, token_lists)) {
                term_sets.push_back(extract_terms(vec, config.k_terms));
            }
            TermNetwork net = build_network(term_sets, journal, config.min_weight);
            row.edge_count = net.edges.size();
            for (const auto& [edge, w] : net.edges) {
                if (vogue_edges.count(edge)) ++row.vogue_edge_count;
            }
        }
        if (row.edge_count > 0) {
            row.overlap = static_cast<double>(row.vogue_edge_count) /
                          static_cast<double>(row.edge_count);
        } else {
            row.empty_network = true;
        }
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.overlap != b.overlap) return a.overlap > b.overlap;
        return a.journal < b.journal;
    });
    return rows;
}

}  // namespace vogue
