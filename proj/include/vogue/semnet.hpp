#pragma once

#include <algorithm>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "vogue/errors.hpp"

namespace vogue {

// Canonical unordered term pair: first < second, no self-loops.
struct EdgeKey {
    std::string a;
    std::string b;

    EdgeKey(std::string term_a, std::string term_b) {
        if (term_a == term_b) {
            throw ValidationError("self-loop edge on term \"" + term_a + "\"");
        }
        if (term_a < term_b) {
            a = std::move(term_a);
            b = std::move(term_b);
        } else {
            a = std::move(term_b);
            b = std::move(term_a);
        }
    }

    auto operator<=>(const EdgeKey&) const = default;
};

// Undirected weighted co-occurrence network for one period or one journal.
// Weight = number of documents in which both terms were co-extracted.
struct TermNetwork {
    std::string label;
    std::set<std::string> nodes;
    std::map<EdgeKey, int> edges;

    bool has_edge(const EdgeKey& e) const { return edges.count(e) > 0; }
    int weight(const EdgeKey& e) const {
        auto it = edges.find(e);
        return it == edges.end() ? 0 : it->second;
    }
};

// Binary co-occurrence per document; edges below min_weight are dropped but
// isolated nodes are retained so node sets stay comparable across periods.
inline TermNetwork build_network(const std::vector<std::set<std::string>>& term_sets,
                                 const std::string& label, int min_weight = 1) {
    if (min_weight < 1) throw ConfigError("build_network: min_weight must be >= 1");
    TermNetwork net;
    net.label = label;
    for (const auto& terms : term_sets) {
        net.nodes.insert(terms.begin(), terms.end());
        for (auto it_a = terms.begin(); it_a != terms.end(); ++it_a) {
            for (auto it_b = std::next(it_a); it_b != terms.end(); ++it_b) {
                ++net.edges[EdgeKey(*it_a, *it_b)];
            }
        }
    }
    std::erase_if(net.edges, [min_weight](const auto& kv) { return kv.second < min_weight; });
    return net;
}

struct NetworkStats {
    std::size_t node_count = 0;
    std::size_t edge_count = 0;
    long long total_weight = 0;
    // degree distribution quantiles (min, q25, median, q75, max); 0 when empty
    double degree_min = 0, degree_q25 = 0, degree_median = 0, degree_q75 = 0, degree_max = 0;
};

inline NetworkStats network_stats(const TermNetwork& net) {
    NetworkStats stats;
    stats.node_count = net.nodes.size();
    stats.edge_count = net.edges.size();
    std::map<std::string, int> degree;
    for (const auto& node : net.nodes) degree[node] = 0;
    for (const auto& [edge, w] : net.edges) {
        stats.total_weight += w;
        ++degree[edge.a];
        ++degree[edge.b];
    }
    if (!degree.empty()) {
        std::vector<int> degs;
        degs.reserve(degree.size());
        for (const auto& [node, d] : degree) degs.push_back(d);
        std::sort(degs.begin(), degs.end());
        auto quantile = [&](double q) {
            const double pos = q * static_cast<double>(degs.size() - 1);
            const std::size_t lo = static_cast<std::size_t>(pos);
            const std::size_t hi = std::min(lo + 1, degs.size() - 1);
            const double frac = pos - static_cast<double>(lo);
            return (1.0 - frac) * degs[lo] + frac * degs[hi];
        };
        stats.degree_min = degs.front();
        stats.degree_q25 = quantile(0.25);
        stats.degree_median = quantile(0.5);
        stats.degree_q75 = quantile(0.75);
        stats.degree_max = degs.back();
    }
    return stats;
}

// Edge-list CSV: term_a,term_b,weight.
inline void write_edge_csv(const TermNetwork& net, std::ostream& out) {
    out << "term_a,term_b,weight\n";
    for (const auto& [edge, w] : net.edges) {
        out << edge.a << ',' << edge.b << ',' << w << '\n';
    }
}

inline void write_dot(const TermNetwork& net, std::ostream& out) {
    out << "graph \"" << net.label << "\" {\n";
    for (const auto& node : net.nodes) {
        out << "  \"" << node << "\";\n";
    }
    for (const auto& [edge, w] : net.edges) {
        out << "  \"" << edge.a << "\" -- \"" << edge.b << "\" [weight=" << w << "];\n";
    }
    out << "}\n";
}

}  // namespace vogue
