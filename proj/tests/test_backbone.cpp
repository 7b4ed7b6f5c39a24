#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "vogue/backbone.hpp"

using namespace vogue;

namespace {

TermNetwork star_8_1_1() {
    TermNetwork net;
    net.label = "star";
    net.nodes = {"hub", "x", "y", "z"};
    net.edges[EdgeKey("hub", "x")] = 8;
    net.edges[EdgeKey("hub", "y")] = 1;
    net.edges[EdgeKey("hub", "z")] = 1;
    return net;
}

// Null-model tail probability by 64-point Gauss-Legendre quadrature of
// (k-1) * integral_p^1 (1-x)^(k-2) dx. Exact for the polynomial integrand
// whenever k - 2 < 128.
double alpha_by_integration(int k, double p) {
    static const auto nodes_weights = [] {
        // Golub-Welsch via symmetric tridiagonal eigenproblem is overkill
        // here; Newton iteration on Legendre polynomials is enough.
        constexpr int n = 64;
        std::array<std::pair<double, double>, n> nw{};
        for (int i = 0; i < n; ++i) {
            double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0, p1 = x;
                for (int j = 2; j <= n; ++j) {
                    const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                    p0 = p1;
                    p1 = p2;
                }
                const double dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::fabs(dx) < 1e-15) break;
            }
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (x * p1 - p0) / (x * x - 1.0);
            nw[i] = {x, 2.0 / ((1.0 - x * x) * dp * dp)};
        }
        return nw;
    }();

    const double a = p, b = 1.0;
    double sum = 0.0;
    for (const auto& [t, w] : nodes_weights) {
        const double x = 0.5 * (b - a) * t + 0.5 * (a + b);
        sum += w * std::pow(1.0 - x, k - 2);
    }
    return (k - 1) * 0.5 * (b - a) * sum;
}

}  // namespace

TEST_CASE("degree-2 node with equal weights gives alpha one half") {
    TermNetwork net;
    net.nodes = {"m", "l", "r"};
    net.edges[EdgeKey("m", "l")] = 3;
    net.edges[EdgeKey("m", "r")] = 3;
    const auto alphas = disparity_alpha(net);
    const auto& left = alphas.at(EdgeKey("m", "l"));
    // from the middle node: p = 0.5, k = 2 -> (1 - 0.5)^1
    const double from_m = EdgeKey("m", "l").a == "m" ? left.alpha_from_a : left.alpha_from_b;
    CHECK(from_m == Catch::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("hub alphas match hand arithmetic and the leaf convention") {
    const auto alphas = disparity_alpha(star_8_1_1());
    const auto& heavy = alphas.at(EdgeKey("hub", "x"));
    const auto& light = alphas.at(EdgeKey("hub", "y"));
    // hub side: p = 0.8 -> 0.2^2; p = 0.1 -> 0.9^2. leaf side: degree 1 -> 1.
    CHECK(heavy.alpha() == Catch::Approx(0.04).epsilon(1e-12));
    CHECK(light.alpha() == Catch::Approx(0.81).epsilon(1e-12));
    CHECK(std::max(heavy.alpha_from_a, heavy.alpha_from_b) == 1.0);
}

TEST_CASE("closed form agrees with numeric integration") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unif(0.001, 0.999);
    for (int rep = 0; rep < 100; ++rep) {
        const int k = 2 + static_cast<int>(rng() % 49);
        const double p = unif(rng);
        const double closed = std::pow(1.0 - p, k - 1);
        CHECK(std::fabs(closed - alpha_by_integration(k, p)) < 1e-9);
    }
}

TEST_CASE("closed form agrees with a stick-breaking Monte-Carlo oracle") {
    // k - 1 uniform break points split the unit strength; alpha is the
    // probability that a given segment reaches length p
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (const auto& [k, p] : std::vector<std::pair<int, double>>{
             {2, 0.5}, {3, 0.8}, {3, 0.1}, {5, 0.3}, {10, 0.05}}) {
        const int samples = 200000;
        int hits = 0;
        std::vector<double> breaks(static_cast<std::size_t>(k - 1));
        for (int s = 0; s < samples; ++s) {
            for (auto& b : breaks) b = unif(rng);
            std::sort(breaks.begin(), breaks.end());
            // first segment length is distributed as any segment by symmetry
            if (breaks.front() >= p) ++hits;
        }
        const double estimate = static_cast<double>(hits) / samples;
        const double alpha = std::pow(1.0 - p, k - 1);
        const double se = std::sqrt(alpha * (1.0 - alpha) / samples);
        CHECK(std::fabs(estimate - alpha) < 3.0 * se + 1e-12);
    }
}

TEST_CASE("backbone keeps only significant edges") {
    const auto bb = extract_backbone(star_8_1_1(), 0.05);
    CHECK(bb.edges == std::set<EdgeKey>{EdgeKey("hub", "x")});
    CHECK(bb.alpha_t == 0.05);
}

TEST_CASE("equal-weight triangle has an empty backbone at 0.05") {
    const auto net = [] {
        TermNetwork t;
        t.nodes = {"a", "b", "c"};
        t.edges[EdgeKey("a", "b")] = 4;
        t.edges[EdgeKey("a", "c")] = 4;
        t.edges[EdgeKey("b", "c")] = 4;
        return t;
    }();
    for (const auto& [e, sig] : disparity_alpha(net)) {
        CHECK(sig.alpha() == Catch::Approx(0.5).epsilon(1e-14));
    }
    CHECK(extract_backbone(net, 0.05).edges.empty());
}

TEST_CASE("empty and invalid inputs") {
    TermNetwork empty;
    CHECK_THROWS_AS(disparity_alpha(empty), EmptyNetworkError);
    CHECK(extract_backbone(empty, 0.05).edges.empty());
    CHECK_THROWS_AS(extract_backbone(empty, 0.0), ConfigError);
    CHECK_THROWS_AS(extract_backbone(empty, 1.0), ConfigError);
}

TEST_CASE("threshold monotonicity and weight-scale invariance") {
    std::mt19937_64 rng(23);
    for (int rep = 0; rep < 25; ++rep) {
        TermNetwork net;
        const int n = 4 + static_cast<int>(rng() % 12);
        for (int i = 0; i < n; ++i) net.nodes.insert("n" + std::to_string(i));
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (rng() % 3 == 0) {
                    net.edges[EdgeKey("n" + std::to_string(i), "n" + std::to_string(j))] =
                        1 + static_cast<int>(rng() % 20);
                }
            }
        }
        if (net.edges.empty()) continue;

        const auto loose = extract_backbone(net, 0.2).edges;
        const auto tight = extract_backbone(net, 0.02).edges;
        for (const auto& e : tight) CHECK(loose.count(e) == 1);

        TermNetwork scaled = net;
        for (auto& [e, w] : scaled.edges) w *= 7;
        CHECK(extract_backbone(scaled, 0.1).edges == extract_backbone(net, 0.1).edges);
    }
}
