#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vogue/corpus.hpp"
#include "vogue/diffusion.hpp"
#include "vogue/errors.hpp"
#include "vogue/stats/ols.hpp"

namespace vogue::stats {

using MeanVector = std::map<std::string, double>;

struct FitSimilarity {
    // unordered pair (a < b) -> cosine similarity of mean T1 TF-IDF vectors
    std::map<std::pair<std::string, std::string>, double> fit;
    std::vector<std::string> excluded;  // institutions with no T1 documents

    std::optional<double> get(const std::string& a, const std::string& b) const {
        if (a == b) return 1.0;
        auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
        auto it = fit.find(key);
        if (it == fit.end()) return std::nullopt;
        return it->second;
    }
};

// Prior research fit: cosine similarity between the mean TF-IDF vectors of
// two institutions' T1 abstracts. Values lie in [0, 1] because TF-IDF
// scores are nonnegative.
inline FitSimilarity fit_similarity(
    const std::map<std::string, std::vector<MeanVector>>& docs_by_institution,
    const std::vector<std::string>& all_institutions) {
    FitSimilarity result;
    std::map<std::string, MeanVector> means;
    for (const auto& inst : all_institutions) {
        auto it = docs_by_institution.find(inst);
        if (it == docs_by_institution.end() || it->second.empty()) {
            result.excluded.push_back(inst);
            continue;
        }
        MeanVector mean;
        for (const auto& vec : it->second) {
            for (const auto& [term, score] : vec) mean[term] += score;
        }
        const double n = static_cast<double>(it->second.size());
        for (auto& [term, score] : mean) score /= n;
        means.emplace(inst, std::move(mean));
    }

    auto norm = [](const MeanVector& v) {
        double s = 0.0;
        for (const auto& [term, x] : v) s += x * x;
        return std::sqrt(s);
    };
    for (auto it_a = means.begin(); it_a != means.end(); ++it_a) {
        for (auto it_b = std::next(it_a); it_b != means.end(); ++it_b) {
            double dot = 0.0;
            for (const auto& [term, x] : it_a->second) {
                auto found = it_b->second.find(term);
                if (found != it_b->second.end()) dot += x * found->second;
            }
            const double na = norm(it_a->second), nb = norm(it_b->second);
            const double cos = (na > 0.0 && nb > 0.0) ? dot / (na * nb) : 0.0;
            result.fit.emplace(std::make_pair(it_a->first, it_b->first), cos);
        }
    }
    return result;
}

struct DyadRow {
    std::string producer;
    std::string adopter;
    double y = 0.0;  // adopted-pair count from the flow network
    int same_rank = 0;
    int same_size = 0;
    int same_location = 0;
    int both_public = 0;
    int both_private = 0;
    int both_landgrant = 0;
    double fit = 0.0;
    int rank_gap = 0;
    int size_gap = 0;
};

struct DyadTable {
    std::vector<DyadRow> rows;
    std::size_t excluded_no_fit = 0;  // dyads dropped for undefined fit
    bool directed = true;
};

namespace detail {

// Ranking tiers of 10 (1-10, 11-20, ...).
inline int rank_tier(int rank) { return (rank - 1) / 10; }

// Size terciles from the institution size distribution, nearest-rank
// quantiles at 33.3/66.7 percent; boundary ties fall to the lower tercile.
inline int size_tercile(int size, const std::vector<int>& sorted_sizes) {
    const std::size_t n = sorted_sizes.size();
    const int t1 = sorted_sizes[(n + 2) / 3 - 1];
    const int t2 = sorted_sizes[(2 * n + 2) / 3 - 1];
    if (size <= t1) return 0;
    if (size <= t2) return 1;
    return 2;
}

}  // namespace detail

// One row per ordered (default) or unordered institution pair; y from the
// flow network, 0 when no edge. Undirected rows sum both flow directions.
inline DyadTable build_dyads(const FlowNetwork& flow,
                             const std::map<std::string, InstitutionRecord>& institutions,
                             const FitSimilarity& fits, bool directed = true) {
    if (institutions.empty()) throw MetadataError("no institution metadata");
    for (const auto& node : flow.nodes) {
        if (!institutions.count(node)) {
            throw MetadataError("flow institution \"" + node + "\" missing from metadata");
        }
    }

    std::vector<int> sizes;
    for (const auto& [name, rec] : institutions) sizes.push_back(rec.size);
    std::sort(sizes.begin(), sizes.end());

    DyadTable table;
    table.directed = directed;
    for (const auto& [name_p, prod] : institutions) {
        for (const auto& [name_a, adop] : institutions) {
            if (name_p == name_a) continue;
            if (!directed && name_p > name_a) continue;

            const auto fit = fits.get(name_p, name_a);
            if (!fit) {
                ++table.excluded_no_fit;
                continue;
            }
            DyadRow row;
            row.producer = name_p;
            row.adopter = name_a;
            row.y = flow.weight(name_p, name_a);
            if (!directed) row.y += flow.weight(name_a, name_p);
            row.same_rank = detail::rank_tier(prod.ranking) == detail::rank_tier(adop.ranking);
            row.same_size = detail::size_tercile(prod.size, sizes) ==
                            detail::size_tercile(adop.size, sizes);
            row.same_location = prod.region == adop.region;
            row.both_public = prod.is_public && adop.is_public;
            row.both_private = prod.is_private && adop.is_private;
            row.both_landgrant = prod.land_grant && adop.land_grant;
            row.fit = *fit;
            row.rank_gap = std::abs(prod.ranking - adop.ranking);
            row.size_gap = std::abs(prod.size - adop.size);
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

enum class FixedEffects { None, Adopter, Producer, Both };

struct Coefficient {
    std::string name;
    double estimate = 0.0;
    double se = 0.0;
    double p_value = 1.0;
    int stars = 0;  // 1: p<0.05, 2: p<0.01
};

struct FitResult {
    std::string label;
    std::vector<Coefficient> coefficients;  // fixed-effect dummies excluded
    double r_squared = 0.0;
    double adj_r_squared = 0.0;
    double residual_se = 0.0;
    long df_residual = 0;
    double f_statistic = 0.0;
    std::size_t n_obs = 0;
    std::size_t n_regressors = 0;  // including fixed effects and intercept
    bool non_psd_warning = false;
};

// A model formula over DyadRow features. Interactions are products of two
// base features.
struct ModelSpec {
    std::string label;
    std::vector<std::string> features;
    std::vector<std::pair<std::string, std::string>> interactions;
};

namespace detail {

inline double dyad_feature(const DyadRow& row, const std::string& name) {
    if (name == "fit") return row.fit;
    if (name == "same_rank") return row.same_rank;
    if (name == "same_size") return row.same_size;
    if (name == "same_location") return row.same_location;
    if (name == "both_public") return row.both_public;
    if (name == "both_private") return row.both_private;
    if (name == "both_landgrant") return row.both_landgrant;
    if (name == "rank_gap") return row.rank_gap;
    if (name == "size_gap") return row.size_gap;
    throw ConfigError("unknown dyad feature \"" + name + "\"");
}

inline int stars_for(double p) { return p < 0.01 ? 2 : (p < 0.05 ? 1 : 0); }

}  // namespace detail

// Fit one dyad model: OLS with the requested fixed-effect dummies (one
// reference school dropped per family) and dyadic-cluster-robust standard
// errors.
inline FitResult fit_dyad_model(const DyadTable& table, const ModelSpec& spec,
                                FixedEffects fe = FixedEffects::Adopter) {
    if (table.rows.empty()) throw ValidationError("empty dyad table");

    std::vector<std::string> names{"const"};
    for (const auto& f : spec.features) names.push_back(f);
    for (const auto& [a, b] : spec.interactions) names.push_back(a + "x" + b);
    const std::size_t n_reported = names.size();

    std::set<std::string> adopters, producers;
    for (const auto& row : table.rows) {
        adopters.insert(row.adopter);
        producers.insert(row.producer);
    }
    std::vector<std::pair<std::string, bool>> fe_cols;  // (school, is_adopter)
    if (fe == FixedEffects::Adopter || fe == FixedEffects::Both) {
        bool first = true;  // reference school dropped
        for (const auto& s : adopters) {
            if (!first) fe_cols.emplace_back(s, true);
            first = false;
        }
    }
    if (fe == FixedEffects::Producer || fe == FixedEffects::Both) {
        bool first = true;
        for (const auto& s : producers) {
            if (!first) fe_cols.emplace_back(s, false);
            first = false;
        }
    }
    for (const auto& [s, is_adopter] : fe_cols) {
        names.push_back(std::string(is_adopter ? "fe_adopter_" : "fe_producer_") + s);
    }

    const Eigen::Index n = static_cast<Eigen::Index>(table.rows.size());
    const Eigen::Index p = static_cast<Eigen::Index>(names.size());
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, p);
    Eigen::VectorXd y(n);
    std::vector<std::pair<std::string, std::string>> membership;
    membership.reserve(table.rows.size());
    for (Eigen::Index r = 0; r < n; ++r) {
        const DyadRow& row = table.rows[static_cast<std::size_t>(r)];
        y[r] = row.y;
        Eigen::Index c = 0;
        x(r, c++) = 1.0;
        for (const auto& f : spec.features) x(r, c++) = detail::dyad_feature(row, f);
        for (const auto& [a, b] : spec.interactions) {
            x(r, c++) = detail::dyad_feature(row, a) * detail::dyad_feature(row, b);
        }
        for (const auto& [s, is_adopter] : fe_cols) {
            x(r, c++) = (is_adopter ? row.adopter : row.producer) == s ? 1.0 : 0.0;
        }
        membership.emplace_back(row.producer, row.adopter);
    }

    const OlsFit fit = ols(x, y, names);
    const DcrResult dcr = dcr_variance(x, fit.residuals, membership);

    FitResult result;
    result.label = spec.label;
    result.r_squared = fit.r_squared;
    result.adj_r_squared = fit.adj_r_squared;
    result.residual_se = fit.residual_se;
    result.df_residual = fit.df_residual;
    result.f_statistic = fit.f_statistic;
    result.n_obs = fit.n_obs;
    result.n_regressors = names.size();
    result.non_psd_warning = dcr.non_psd_warning;
    for (std::size_t i = 0; i < n_reported; ++i) {
        Coefficient coef;
        coef.name = names[i];
        coef.estimate = fit.beta[static_cast<Eigen::Index>(i)];
        coef.se = dcr.standard_errors[i];
        const double t = std::isnan(coef.se) || coef.se == 0.0
                             ? std::numeric_limits<double>::quiet_NaN()
                             : coef.estimate / coef.se;
        coef.p_value = std::isnan(t) ? std::numeric_limits<double>::quiet_NaN()
                                     : t_pvalue(t, static_cast<double>(fit.df_residual));
        coef.stars = std::isnan(coef.p_value) ? 0 : detail::stars_for(coef.p_value);
        result.coefficients.push_back(std::move(coef));
    }
    return result;
}

// The thirteen pre-registered dyad specifications: six classification /
// location / rank interaction models and seven research-fit models.
inline std::vector<ModelSpec> table_model_specs() {
    std::vector<ModelSpec> specs;
    const std::vector<std::string> kinds{"both_public", "both_landgrant", "both_private"};
    for (const auto& kind : kinds) {
        specs.push_back({"interaction_location_" + kind,
                         {kind, "same_location"},
                         {{"same_location", kind}}});
    }
    for (const auto& kind : kinds) {
        specs.push_back({"interaction_rank_" + kind,
                         {kind, "same_rank"},
                         {{"same_rank", kind}}});
    }
    specs.push_back({"fit_1", {"fit"}, {}});
    specs.push_back({"fit_2", {"fit", "same_location"}, {}});
    specs.push_back({"fit_3", {"fit", "rank_gap"}, {}});
    specs.push_back({"fit_4", {"fit", "same_location", "rank_gap"}, {}});
    specs.push_back({"fit_5", {"fit", "same_location", "rank_gap", "size_gap"}, {}});
    specs.push_back({"fit_6", {"fit", "both_landgrant", "both_private", "both_public"}, {}});
    specs.push_back({"fit_7",
                     {"fit", "same_location", "rank_gap", "size_gap", "both_landgrant",
                      "both_private", "both_public"},
                     {}});
    return specs;
}

inline std::vector<FitResult> run_table_models(const DyadTable& table,
                                               FixedEffects fe = FixedEffects::Adopter) {
    std::vector<FitResult> results;
    for (const auto& spec : table_model_specs()) {
        results.push_back(fit_dyad_model(table, spec, fe));
    }
    return results;
}

struct SchoolRow {
    std::string institution;
    double produced_count = 0;
    double adopted_count = 0;
    int size = 0;
    int is_private = 0;
    int is_public = 0;
    int land_grant = 0;
    double avg_ranking = 0.0;
};

// Distinct vogue pairs produced / adopted per institution.
inline std::vector<SchoolRow> build_school_rows(
    const std::vector<PairAttribution>& attributions,
    const std::map<std::string, InstitutionRecord>& institutions) {
    std::map<std::string, SchoolRow> rows;
    for (const auto& [name, rec] : institutions) {
        SchoolRow row;
        row.institution = name;
        row.size = rec.size;
        row.is_private = rec.is_private;
        row.is_public = rec.is_public;
        row.land_grant = rec.land_grant;
        row.avg_ranking = static_cast<double>(rec.ranking);
        rows.emplace(name, std::move(row));
    }
    for (const auto& attr : attributions) {
        for (const auto& inst : attr.producers) ++rows.at(inst).produced_count;
        for (const auto& inst : attr.adopters) ++rows.at(inst).adopted_count;
    }
    std::vector<SchoolRow> result;
    result.reserve(rows.size());
    for (auto& [name, row] : rows) result.push_back(std::move(row));
    return result;
}

enum class SchoolTarget { Produced, Adopted };

struct SchoolFitResult {
    FitResult fit;
    std::vector<std::pair<double, double>> confidence_intervals;  // 95%
};

// OLS of the production or adoption count on institutional attributes with
// HC1 standard errors and 95% confidence intervals.
inline SchoolFitResult school_level_regression(const std::vector<SchoolRow>& rows,
                                               SchoolTarget target) {
    const std::vector<std::string> names{"const",      "size",   "private",
                                         "public",     "land_grant", "avg_ranking"};
    const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd x(n, 6);
    Eigen::VectorXd y(n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const SchoolRow& row = rows[static_cast<std::size_t>(r)];
        x(r, 0) = 1.0;
        x(r, 1) = row.size;
        x(r, 2) = row.is_private;
        x(r, 3) = row.is_public;
        x(r, 4) = row.land_grant;
        x(r, 5) = row.avg_ranking;
        y[r] = target == SchoolTarget::Produced ? row.produced_count : row.adopted_count;
    }

    const OlsFit fit = ols_minimum_norm(x, y, names);
    const Eigen::MatrixXd cov =
        hc_covariance(x, fit.residuals, /*hc1=*/true, fit.xtx_inverse);
    const double df = static_cast<double>(fit.df_residual);
    const double t_crit = t_quantile_two_sided(0.05, df);

    SchoolFitResult result;
    result.fit.label = target == SchoolTarget::Produced ? "school_production"
                                                        : "school_adoption";
    result.fit.r_squared = fit.r_squared;
    result.fit.adj_r_squared = fit.adj_r_squared;
    result.fit.residual_se = fit.residual_se;
    result.fit.df_residual = fit.df_residual;
    result.fit.f_statistic = fit.f_statistic;
    result.fit.n_obs = fit.n_obs;
    result.fit.n_regressors = names.size();
    for (std::size_t i = 0; i < names.size(); ++i) {
        Coefficient coef;
        coef.name = names[i];
        coef.estimate = fit.beta[static_cast<Eigen::Index>(i)];
        coef.se = std::sqrt(cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)));
        const double t = coef.se > 0.0 ? coef.estimate / coef.se
                                       : std::numeric_limits<double>::infinity();
        coef.p_value = t_pvalue(t, df);
        coef.stars = detail::stars_for(coef.p_value);
        result.fit.coefficients.push_back(coef);
        result.confidence_intervals.emplace_back(coef.estimate - t_crit * coef.se,
                                                 coef.estimate + t_crit * coef.se);
    }
    return result;
}

}  // namespace vogue::stats
