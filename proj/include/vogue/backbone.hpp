#pragma once

#include <cmath>
#include <map>
#include <set>
#include <string>

#include "vogue/errors.hpp"
#include "vogue/semnet.hpp"

namespace vogue {

struct EdgeSignificance {
    double alpha_from_a = 1.0;
    double alpha_from_b = 1.0;
    double alpha() const { return std::min(alpha_from_a, alpha_from_b); }
};

// Disparity-filter significance per edge. Null model: a node's strength is
// spread over its k edges by k-1 uniform break points, so the probability of
// a normalized share of at least p is (1 - p)^(k - 1). Degree-1 endpoints
// are not evaluable and get alpha 1 by convention.
inline std::map<EdgeKey, EdgeSignificance> disparity_alpha(const TermNetwork& net) {
    if (net.edges.empty()) throw EmptyNetworkError();

    std::map<std::string, int> degree;
    std::map<std::string, double> strength;
    for (const auto& [edge, w] : net.edges) {
        ++degree[edge.a];
        ++degree[edge.b];
        strength[edge.a] += w;
        strength[edge.b] += w;
    }

    auto alpha_from = [&](const std::string& node, int w) {
        const int k = degree.at(node);
        if (k < 2) return 1.0;
        const double p = static_cast<double>(w) / strength.at(node);
        return std::pow(1.0 - p, static_cast<double>(k - 1));
    };

    std::map<EdgeKey, EdgeSignificance> result;
    for (const auto& [edge, w] : net.edges) {
        EdgeSignificance sig;
        sig.alpha_from_a = alpha_from(edge.a, w);
        sig.alpha_from_b = alpha_from(edge.b, w);
        result.emplace(edge, sig);
    }
    return result;
}

// Statistically significant edge subset at threshold alpha_t. Monotone in
// alpha_t and invariant to rescaling all weights.
struct Backbone {
    std::string label;
    std::set<EdgeKey> edges;
    double alpha_t = 0.05;

    bool contains(const EdgeKey& e) const { return edges.count(e) > 0; }
};

// Edge kept iff significant from at least one endpoint:
// min(alpha_a, alpha_b) < alpha_t.
inline Backbone extract_backbone(const TermNetwork& net, double alpha_t) {
    if (!(alpha_t > 0.0 && alpha_t < 1.0)) {
        throw ConfigError("extract_backbone: alpha_t must lie in (0, 1)");
    }
    Backbone bb;
    bb.label = net.label;
    bb.alpha_t = alpha_t;
    if (net.edges.empty()) return bb;
    for (const auto& [edge, sig] : disparity_alpha(net)) {
        if (sig.alpha() < alpha_t) bb.edges.insert(edge);
    }
    return bb;
}

}  // namespace vogue
