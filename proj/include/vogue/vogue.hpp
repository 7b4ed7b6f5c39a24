#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "vogue/backbone.hpp"
#include "vogue/errors.hpp"
#include "vogue/semnet.hpp"

namespace vogue {

enum class EdgeCategory {
    Foundation,     // in both backbones
    Vogue,          // T1 periphery -> T2 backbone
    Emergent,       // absent from T1, T2 backbone
    NewPeripheral,  // absent from T1, T2 periphery
    NonVogue,       // present both periods, off the T2 backbone
    Unused,         // present in T1, gone in T2
};

inline const char* to_string(EdgeCategory c) {
    switch (c) {
        case EdgeCategory::Foundation: return "foundation";
        case EdgeCategory::Vogue: return "vogue";
        case EdgeCategory::Emergent: return "emergent";
        case EdgeCategory::NewPeripheral: return "new_peripheral";
        case EdgeCategory::NonVogue: return "non_vogue";
        case EdgeCategory::Unused: return "unused";
    }
    return "?";
}

struct EdgeClassification {
    EdgeCategory category = EdgeCategory::NonVogue;
    bool declined = false;  // was in the T1 backbone, fell out in T2
};

// Temporal career of every edge in E(T1) u E(T2). The six categories form an
// exact partition. With emergent_as_vogue, Emergent edges are reported as
// Vogue for sensitivity analysis.
inline std::map<EdgeKey, EdgeClassification> classify_edges(
    const TermNetwork& net_t1, const Backbone& bb_t1,
    const TermNetwork& net_t2, const Backbone& bb_t2,
    bool emergent_as_vogue = false) {
    for (const auto& e : bb_t1.edges) {
        if (!net_t1.has_edge(e)) {
            throw ContainmentError("T1 backbone edge (" + e.a + ", " + e.b +
                                   ") missing from its network");
        }
    }
    for (const auto& e : bb_t2.edges) {
        if (!net_t2.has_edge(e)) {
            throw ContainmentError("T2 backbone edge (" + e.a + ", " + e.b +
                                   ") missing from its network");
        }
    }

    std::map<EdgeKey, EdgeClassification> result;
    auto classify = [&](const EdgeKey& e) {
        const bool in_t1 = net_t1.has_edge(e);
        const bool in_t2 = net_t2.has_edge(e);
        const bool in_bb1 = bb_t1.contains(e);
        const bool in_bb2 = bb_t2.contains(e);
        EdgeClassification cls;
        if (in_t1 && !in_t2) {
            cls.category = EdgeCategory::Unused;
        } else if (in_bb2) {
            if (in_bb1) {
                cls.category = EdgeCategory::Foundation;
            } else if (in_t1) {
                cls.category = EdgeCategory::Vogue;
            } else {
                cls.category = emergent_as_vogue ? EdgeCategory::Vogue
                                                 : EdgeCategory::Emergent;
            }
        } else if (in_t1) {
            cls.category = EdgeCategory::NonVogue;
            cls.declined = in_bb1;
        } else {
            cls.category = EdgeCategory::NewPeripheral;
        }
        result.emplace(e, cls);
    };
    for (const auto& [e, w] : net_t1.edges) classify(e);
    for (const auto& [e, w] : net_t2.edges) {
        if (!result.count(e)) classify(e);
    }
    return result;
}

inline std::set<EdgeKey> edges_in_category(const std::map<EdgeKey, EdgeClassification>& classes,
                                           EdgeCategory cat) {
    std::set<EdgeKey> edges;
    for (const auto& [e, cls] : classes) {
        if (cls.category == cat) edges.insert(e);
    }
    return edges;
}

// Fraction of vogue edges present in T1 whose endpoints each touch the T1
// backbone while the edge itself does not ("weak ties"). 0 on an empty
// denominator.
inline double weak_tie_share(const std::set<EdgeKey>& vogue_edges,
                             const TermNetwork& net_t1, const Backbone& bb_t1) {
    std::set<std::string> backbone_terms;
    for (const auto& e : bb_t1.edges) {
        backbone_terms.insert(e.a);
        backbone_terms.insert(e.b);
    }
    std::size_t denom = 0, weak = 0;
    for (const auto& e : vogue_edges) {
        if (!net_t1.has_edge(e)) continue;
        ++denom;
        if (backbone_terms.count(e.a) && backbone_terms.count(e.b)) ++weak;
    }
    return denom == 0 ? 0.0 : static_cast<double>(weak) / static_cast<double>(denom);
}

struct VogueReport {
    std::map<EdgeCategory, std::size_t> counts;
    double weak_tie_share = 0.0;
};

inline VogueReport summarize(const std::map<EdgeKey, EdgeClassification>& classes,
                             const TermNetwork& net_t1, const Backbone& bb_t1) {
    VogueReport report;
    for (EdgeCategory c : {EdgeCategory::Foundation, EdgeCategory::Vogue,
                           EdgeCategory::Emergent, EdgeCategory::NewPeripheral,
                           EdgeCategory::NonVogue, EdgeCategory::Unused}) {
        report.counts[c] = 0;
    }
    for (const auto& [e, cls] : classes) ++report.counts[cls.category];
    report.weak_tie_share =
        weak_tie_share(edges_in_category(classes, EdgeCategory::Vogue), net_t1, bb_t1);
    return report;
}

struct TopicNeighbors {
    std::vector<std::string> vogue_neighbors;
    std::vector<std::string> foundation_neighbors;
};

// Neighborhood split for one representative term: partners on Vogue edges vs
// Foundation edges, sorted by T2 weight descending, ties lexicographic.
inline TopicNeighbors topic_neighbors(const std::string& term,
                                      const std::map<EdgeKey, EdgeClassification>& classes,
                                      const TermNetwork& net_t2) {
    std::vector<std::pair<std::string, int>> vogues, foundations;
    for (const auto& [e, cls] : classes) {
        if (e.a != term && e.b != term) continue;
        const std::string& other = (e.a == term) ? e.b : e.a;
        if (cls.category == EdgeCategory::Vogue) {
            vogues.emplace_back(other, net_t2.weight(e));
        } else if (cls.category == EdgeCategory::Foundation) {
            foundations.emplace_back(other, net_t2.weight(e));
        }
    }
    auto by_weight = [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    };
    std::sort(vogues.begin(), vogues.end(), by_weight);
    std::sort(foundations.begin(), foundations.end(), by_weight);

    TopicNeighbors result;
    for (const auto& [t, w] : vogues) result.vogue_neighbors.push_back(t);
    for (const auto& [t, w] : foundations) result.foundation_neighbors.push_back(t);
    return result;
}

}  // namespace vogue
