#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "vogue/errors.hpp"

namespace vogue::stats {

namespace detail {

// Regularized incomplete beta via continued fraction (Lentz's method).
inline double betacf(double a, double b, double x) {
    constexpr int max_iter = 200;
    constexpr double eps = 3e-12, fpmin = 1e-300;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0, d = 1.0 - qab * x / qap;
    if (std::fabs(d) < fpmin) d = fpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return h;
}

inline double incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log(1.0 - x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * betacf(a, b, x) / a;
    }
    return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

}  // namespace detail

// Two-sided p-value for a t statistic with df degrees of freedom.
inline double t_pvalue(double t, double df) {
    if (df <= 0.0) return std::numeric_limits<double>::quiet_NaN();
    const double x = df / (df + t * t);
    return detail::incomplete_beta(df / 2.0, 0.5, x);
}

// Upper-tail t quantile by bisection on the p-value.
inline double t_quantile_two_sided(double alpha, double df) {
    double lo = 0.0, hi = 1e3;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (t_pvalue(mid, df) > alpha) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

struct OlsFit {
    std::vector<std::string> names;
    Eigen::VectorXd beta;
    Eigen::VectorXd residuals;
    Eigen::MatrixXd xtx_inverse;
    double r_squared = 0.0;
    double adj_r_squared = 0.0;
    double residual_se = 0.0;
    long df_residual = 0;
    double f_statistic = 0.0;
    std::size_t n_obs = 0;
};

// Least squares via column-pivoted Householder QR. Throws on rank
// deficiency, naming the offending columns.
inline OlsFit ols(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                  const std::vector<std::string>& names) {
    if (x.rows() != y.size()) throw DimensionError("ols: X rows != y length");
    if (static_cast<std::size_t>(x.cols()) != names.size()) {
        throw DimensionError("ols: column name count mismatch");
    }
    if (x.rows() <= x.cols()) {
        throw ValidationError("ols: need more observations than regressors (n=" +
                              std::to_string(x.rows()) + ", p=" +
                              std::to_string(x.cols()) + ")");
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    qr.setThreshold(1e-10);
    if (qr.rank() < x.cols()) {
        const auto& perm = qr.colsPermutation().indices();
        std::string bad;
        for (Eigen::Index i = qr.rank(); i < x.cols(); ++i) {
            if (!bad.empty()) bad += ", ";
            bad += names[static_cast<std::size_t>(perm[i])];
        }
        throw RankDeficiencyError("collinear design columns: " + bad);
    }

    OlsFit fit;
    fit.names = names;
    fit.beta = qr.solve(y);
    fit.residuals = y - x * fit.beta;
    fit.xtx_inverse = (x.transpose() * x).inverse();
    fit.n_obs = static_cast<std::size_t>(x.rows());

    const double n = static_cast<double>(x.rows());
    const double p = static_cast<double>(x.cols());
    const double ssr = fit.residuals.squaredNorm();
    const double mean_y = y.mean();
    const double tss = (y.array() - mean_y).square().sum();
    fit.r_squared = tss > 0.0 ? 1.0 - ssr / tss : 1.0;
    fit.df_residual = static_cast<long>(n - p);
    fit.adj_r_squared = 1.0 - (1.0 - fit.r_squared) * (n - 1.0) / (n - p);
    fit.residual_se = std::sqrt(ssr / (n - p));
    const double msr = ssr / (n - p);
    fit.f_statistic = msr > 0.0 ? ((tss - ssr) / (p - 1.0)) / msr
                                : std::numeric_limits<double>::infinity();
    return fit;
}

// Minimum-norm least squares via complete orthogonal decomposition. Used
// where the design is collinear by construction (the school-level models
// carry const, private and public together, and private = 1 - public).
// xtx_inverse holds the pseudo-inverse of X'X; df uses the numerical rank.
inline OlsFit ols_minimum_norm(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                               const std::vector<std::string>& names) {
    if (x.rows() != y.size()) throw DimensionError("ols: X rows != y length");
    if (static_cast<std::size_t>(x.cols()) != names.size()) {
        throw DimensionError("ols: column name count mismatch");
    }
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(x);
    cod.setThreshold(1e-10);
    const double rank = static_cast<double>(cod.rank());
    if (x.rows() <= cod.rank()) {
        throw ValidationError("ols: need more observations than the design rank");
    }

    OlsFit fit;
    fit.names = names;
    fit.beta = cod.solve(y);
    fit.residuals = y - x * fit.beta;
    {
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> xtx_cod(
            x.transpose() * x);
        xtx_cod.setThreshold(1e-10);
        fit.xtx_inverse = xtx_cod.pseudoInverse();
    }
    fit.n_obs = static_cast<std::size_t>(x.rows());

    const double n = static_cast<double>(x.rows());
    const double ssr = fit.residuals.squaredNorm();
    const double mean_y = y.mean();
    const double tss = (y.array() - mean_y).square().sum();
    fit.r_squared = tss > 0.0 ? 1.0 - ssr / tss : 1.0;
    fit.df_residual = static_cast<long>(n - rank);
    fit.adj_r_squared = 1.0 - (1.0 - fit.r_squared) * (n - 1.0) / (n - rank);
    fit.residual_se = std::sqrt(ssr / (n - rank));
    const double msr = ssr / (n - rank);
    fit.f_statistic = msr > 0.0 ? ((tss - ssr) / (rank - 1.0)) / msr
                                : std::numeric_limits<double>::infinity();
    return fit;
}

// HC0 heteroskedasticity-robust covariance; HC1 multiplies by n/(n-p).
inline Eigen::MatrixXd hc_covariance(const Eigen::MatrixXd& x,
                                     const Eigen::VectorXd& residuals,
                                     bool hc1, const Eigen::MatrixXd& bread) {
    if (x.rows() != residuals.size()) throw DimensionError("hc_covariance: shape mismatch");
    Eigen::MatrixXd meat = Eigen::MatrixXd::Zero(x.cols(), x.cols());
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
        const Eigen::VectorXd xu = x.row(r).transpose() * residuals[r];
        meat += xu * xu.transpose();
    }
    Eigen::MatrixXd cov = bread * meat * bread;
    if (hc1) {
        cov *= static_cast<double>(x.rows()) /
               static_cast<double>(x.rows() - x.cols());
    }
    return cov;
}

inline Eigen::MatrixXd hc_covariance(const Eigen::MatrixXd& x,
                                     const Eigen::VectorXd& residuals,
                                     bool hc1 = false) {
    return hc_covariance(x, residuals, hc1, (x.transpose() * x).inverse());
}

struct DcrResult {
    Eigen::MatrixXd covariance;
    std::vector<double> standard_errors;  // NaN where the diagonal is negative
    bool non_psd_warning = false;
};

// Dyadic-cluster-robust covariance: the sandwich whose meat sums
// x_r u_r u_s x_s' over every ordered row pair sharing at least one school
// (each pair once). Computed via the member-cluster decomposition
//   meat = sum_c s_c s_c' - sum_d S_d S_d'
// where s_c sums score vectors over rows containing school c and S_d over
// rows of the same unordered dyad; this corrects the double count of
// within-dyad pairs and of the diagonal. Reduces exactly to HC0 when no two
// rows share a school.
inline DcrResult dcr_variance(
    const Eigen::MatrixXd& x, const Eigen::VectorXd& residuals,
    const std::vector<std::pair<std::string, std::string>>& membership) {
    if (x.rows() != residuals.size() ||
        static_cast<std::size_t>(x.rows()) != membership.size()) {
        throw DimensionError("dcr_variance: shape mismatch");
    }

    const Eigen::Index p = x.cols();
    std::map<std::string, Eigen::VectorXd> member_sums;
    std::map<std::pair<std::string, std::string>, Eigen::VectorXd> dyad_sums;
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
        const Eigen::VectorXd xu = x.row(r).transpose() * residuals[r];
        const auto& [i, j] = membership[static_cast<std::size_t>(r)];
        auto add = [&](std::map<std::string, Eigen::VectorXd>& sums, const std::string& key) {
            auto [it, inserted] = sums.emplace(key, xu);
            if (!inserted) it->second += xu;
        };
        add(member_sums, i);
        add(member_sums, j);
        const auto dyad = i < j ? std::make_pair(i, j) : std::make_pair(j, i);
        auto [it, inserted] = dyad_sums.emplace(dyad, xu);
        if (!inserted) it->second += xu;
    }

    Eigen::MatrixXd meat = Eigen::MatrixXd::Zero(p, p);
    for (const auto& [member, s] : member_sums) meat += s * s.transpose();
    for (const auto& [dyad, s] : dyad_sums) meat -= s * s.transpose();

    const Eigen::MatrixXd bread = (x.transpose() * x).inverse();
    DcrResult result;
    result.covariance = bread * meat * bread;
    result.standard_errors.resize(static_cast<std::size_t>(p));
    for (Eigen::Index i = 0; i < p; ++i) {
        const double v = result.covariance(i, i);
        if (v < 0.0) {
            result.non_psd_warning = true;
            result.standard_errors[static_cast<std::size_t>(i)] =
                std::numeric_limits<double>::quiet_NaN();
        } else {
            result.standard_errors[static_cast<std::size_t>(i)] = std::sqrt(v);
        }
    }
    return result;
}

}  // namespace vogue::stats
