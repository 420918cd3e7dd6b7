#include <gtest/gtest.h>

#include <boost/rational.hpp>

#include "oracles.hpp"

using namespace ultrasmall;

TEST(TreeSizes, Values) {
    EXPECT_EQ(i_k_cm(3, 2), 9);
    EXPECT_EQ(i_k_cm(2, 5), 10);
    EXPECT_EQ(i_k_cm(3, 0), 0);
    EXPECT_EQ(i_k_pam(2, 2), 7);
    EXPECT_EQ(i_k(2, 2, Model::PAM), 7);
    EXPECT_THROW(i_k_cm(1, 2), std::invalid_argument);
    EXPECT_THROW(i_k_cm(3, 80), std::overflow_error);
}

TEST(FirstMoment, HandValueFourCubic) {
    DegreeSequence seq({3, 3, 3, 3});
    // 4 (9/11)(6/9)(3/7) evaluated in exact rationals
    auto exact = boost::rational<std::int64_t>(4) * boost::rational<std::int64_t>(9, 11) *
                 boost::rational<std::int64_t>(6, 9) * boost::rational<std::int64_t>(3, 7);
    EXPECT_EQ(exact, boost::rational<std::int64_t>(648, 693));
    EXPECT_NEAR(cm_mk_first_moment(seq, 1), boost::rational_cast<double>(exact), 1e-14);
    EXPECT_DOUBLE_EQ(cm_mk_first_moment(seq, 0), 4.0);
}

TEST(FirstMoment, VanishesWhenTooFewMinimumDegreeVertices) {
    // n_3 = 3 = i_1
    EXPECT_EQ(cm_mk_first_moment(DegreeSequence({3, 3, 3, 5}), 1), 0.0);
    EXPECT_THROW(cm_mk_first_moment(DegreeSequence({1, 1}), 1), std::invalid_argument);
}

TEST(FirstMoment, EnumerationAgreesForSmallMixedSequence) {
    DegreeSequence seq({3, 3, 3, 3, 4});
    double total = 0, cnt = 0;
    oracle::for_each_matching(seq.ell(), [&](const std::vector<std::int64_t>& p) {
        total += static_cast<double>(census_mkc(oracle::graph_from_matching(seq.degrees(), p), 3, 1).count);
        ++cnt;
    });
    EXPECT_NEAR(total / cnt, cm_mk_first_moment(seq, 1), 1e-12);
}

TEST(SecondMoment, BoundDominatesSquareOfMean) {
    auto seq = fix_parity(quantile_sequence({2.5, 3, 2000}));
    for (int k = 0; k <= 2; ++k) {
        const double e = cm_mk_first_moment(seq, k);
        EXPECT_GE(cm_mk_second_moment_bound(seq, k), e * e);
    }
    const double e0 = cm_mk_first_moment(seq, 0);
    EXPECT_DOUBLE_EQ(cm_mk_second_moment_bound(seq, 0), e0 * e0 + e0);
}

TEST(SizeBiased, HandValues) {
    DegreeSequence seq({1, 2, 3});
    EXPECT_DOUBLE_EQ(size_biased_ccdf(seq, 2), 0.5);
    EXPECT_DOUBLE_EQ(truncated_mean_nu(seq, 2), 1.0 / 3.0);
    EXPECT_THROW(size_biased_ccdf(DegreeSequence(), 1), std::invalid_argument);
}

TEST(SizeBiased, PowerTailConstantIsUniformInN) {
    // C_1(n) = max over x <= n^0.4 of (1-F*_n(x)) x^{tau-2-eta}, compared with the same
    // constant for the limiting law evaluated from suffix sums of 1-F
    const double tau = 2.5, eta = 0.1, e = tau - 2 - eta;
    PowerLawSpec spec{tau, 3, 0};
    const std::int64_t K = 2000000;
    std::vector<double> suffix(static_cast<std::size_t>(K) + 1, 0.0);
    auto ccdf = [&](std::int64_t k) { return 1.0 - spec.cdf(static_cast<double>(k)); };
    suffix[K] = 2.0 * std::pow(3.0, tau - 1) / std::sqrt(K + 0.5);
    for (std::int64_t k = K - 1; k >= 0; --k) suffix[k] = suffix[k + 1] + ccdf(k);
    const double mean = suffix[0];
    // E[D 1{D > x}] = (x+1) P(D > x) + sum_{k > x} P(D > k)
    auto limit = [&](std::int64_t x) { return ((x + 1) * ccdf(x) + suffix[x + 1]) / mean; };
    for (std::int64_t n : {10000, 100000, 1000000}) {
        auto seq = quantile_sequence({tau, 3, n});
        const double xmax = std::pow(static_cast<double>(n), 0.4);
        double cn = 0, cl = 0;
        for (std::int64_t x = 1; x <= xmax; ++x) {
            cn = std::max(cn, size_biased_ccdf(seq, static_cast<double>(x)) * std::pow(static_cast<double>(x), e));
            cl = std::max(cl, limit(x) * std::pow(static_cast<double>(x), e));
        }
        EXPECT_NEAR(cn / cl, 1.0, 0.05) << "n=" << n;
    }
}

TEST(DistanceBound, ZeroDepthAndErrors) {
    auto seq = quantile_sequence({2.5, 3, 1000});
    auto g = cm_truncation_sequence(1000, 2.5, 0.05, 6);
    EXPECT_EQ(cm_distance_bound(seq, 3, 3, 0, g), 0.0);
    EXPECT_THROW(cm_distance_bound(seq, 3, 3, -1, g), std::invalid_argument);
    EXPECT_THROW(cm_distance_bound(seq, 1e9, 3, 1, g), std::invalid_argument);
    EXPECT_THROW(cm_distance_bound(DegreeSequence({3, 3}), 3, 3, 2, g), std::domain_error);
}

TEST(DistanceBound, MonotoneInDepth) {
    auto seq = quantile_sequence({2.5, 3, 100000});
    auto g = cm_truncation_sequence(100000, 2.5, 0.05, 10);
    double prev = 0;
    for (int k = 1; k <= 3; ++k) {
        double b = cm_distance_bound(seq, std::log(1e5), std::log(1e5), k, g);
        EXPECT_GT(b, prev);
        prev = b;
    }
}

TEST(DistanceBound, TruncationSaturates) {
    auto g = cm_truncation_sequence(100000, 2.5, 0.05, 40);
    EXPECT_TRUE(std::isinf(g.back()));
    for (std::size_t k = 1; k < g.size(); ++k) EXPECT_GE(g[k], g[k - 1]);
    EXPECT_THROW(cm_truncation_sequence(100000, 2.5, 0.3, 3), std::invalid_argument);
}

TEST(PathWeight, HandValueAndSymmetry) {
    EXPECT_NEAR(pam_path_weight({4, 2}, 1, 2, 2.0 / 3.0), std::pow(2.0, -1.0 / 3.0), 1e-15);
    EXPECT_DOUBLE_EQ(pam_path_weight({4, 9}, 1.3, 2, 0.6), pam_path_weight({9, 4}, 1.3, 2, 0.6));
    EXPECT_THROW(pam_path_weight({3, 3}, 1, 2, 0.6), std::invalid_argument);
    EXPECT_THROW(pam_path_weight({3}, 1, 2, 0.6), std::invalid_argument);
}

TEST(PathWeight, EdgeProbabilityBoundedWithFittedConstant) {
    // t=200, m=2, delta=-1: fit C on pairs with even u, verify on odd u
    const std::int64_t t = 200;
    const int reps = 20000;
    const PamParams p{2, -1.0};
    std::vector<std::pair<vertex_t, vertex_t>> grid;
    for (vertex_t u : {2, 3, 6, 7, 20, 21, 60, 61})
        for (vertex_t v : {10, 40, 100, 199})
            if (u != v) grid.emplace_back(u, v);
    std::vector<int> hits(grid.size(), 0);
    for (int r = 0; r < reps; ++r) {
        auto pg = generate_pam(p, t, static_cast<std::uint64_t>(r));
        for (std::size_t i = 0; i < grid.size(); ++i) {
            auto [u, v] = grid[i];
            auto [a, b] = std::minmax(u, v);
            bool hit = false;
            for (int j = 1; j <= 2; ++j) hit = hit || pg.xi(b, j) == a;
            hits[i] += hit;
        }
    }
    double C = 0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (grid[i].first % 2 == 0)
            C = std::max(C, hits[i] / static_cast<double>(reps) / pam_path_weight({grid[i].first, grid[i].second}, 1, 2, p.gamma()));
    ASSERT_GT(C, 0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i].first % 2 == 0) continue;
        const double ph = hits[i] / static_cast<double>(reps);
        const double sd = std::sqrt(std::max(ph * (1 - ph), 1.0 / reps) / reps);
        EXPECT_LE(ph, pam_path_weight({grid[i].first, grid[i].second}, C, 2, p.gamma()) + 3 * sd)
            << grid[i].first << ',' << grid[i].second;
    }
}

TEST(GrowthSequences, InitialValues) {
    auto s = appendixA_sequences(10000, 2.0, 2.0 / 3.0, 4);
    EXPECT_EQ(s.g[0], 118);
    EXPECT_NEAR(s.alpha[1], 2.0 * std::pow(118.0, -1.0 / 3.0), 1e-15);
    EXPECT_NEAR(s.beta[1], 2.0 * std::pow(118.0, -2.0 / 3.0), 1e-15);
    EXPECT_DOUBLE_EQ(appendix_a_constant(10000, 2.0, 2.0 / 3.0), 8.0);
    for (std::size_t k = 1; k < s.g.size(); ++k) EXPECT_LE(s.g[k], s.g[k - 1]);
    EXPECT_THROW(appendixA_sequences(3, 2, 0.6, 2), std::invalid_argument);
    EXPECT_THROW(appendixA_sequences(100, 2, 0.4, 2), std::invalid_argument);
}

TEST(GrowthSequences, SmallestIntegerDefinition) {
    auto s = appendixA_sequences(10000, 2.0, 2.0 / 3.0, 4);
    const double lt = std::log(10000.0);
    for (int k = 1; k <= 4; ++k) {
        if (s.g[k] < 2) continue;
        const double rhs = 6.0 / (std::numbers::pi * std::numbers::pi * k * k * lt * lt);
        auto lhs = [&](double g) { return s.alpha[k] * std::pow(g, 1.0 / 3.0) * 3.0; };
        EXPECT_GE(lhs(static_cast<double>(s.g[k])), rhs);
        EXPECT_LT(lhs(static_cast<double>(s.g[k] - 1)), rhs);
    }
}

TEST(GrowthSequences, FastRecursionMatchesDirectEvaluation) {
    auto s = appendixA_sequences(300, 2.0, 2.0 / 3.0, 3);
    for (std::int64_t x : {s.g[0], s.g[0] + 17, std::int64_t{300}}) {
        auto direct = oracle::f_recursion_direct(s, x, 3);
        for (int k = 1; k <= 3; ++k) {
            auto fast = f_exact_all(s, x, k);
            for (std::int64_t l = 1; l <= 300; ++l)
                EXPECT_NEAR(fast[l - 1], direct[k - 1][l - 1], 1e-12 * std::max(1.0, direct[k - 1][l - 1]));
        }
    }
}

TEST(GrowthSequences, BoundHoldsOnSmallHorizon) {
    auto s = appendixA_sequences(2000, 2.0, 2.0 / 3.0, 3);
    auto r = check_appendix_a(s, 3);
    EXPECT_GT(r.comparisons, 0);
    EXPECT_EQ(r.violations, 0);
}

TEST(EtaGrowth, BoundAndMonotonicity) {
    auto r = eta_growth_check(1000000, 2.0, 8.0, 6);
    EXPECT_TRUE(r.holds);
    for (std::size_t k = 1; k < r.eta.size(); ++k) EXPECT_GE(r.eta[k], r.eta[k - 1]);
    const double lt = std::log(1e6);
    EXPECT_LE(r.eta[0], lt * lt * (1 + 1e-12));
    EXPECT_THROW(eta_growth_check(1000, 1.0, 8, 3), std::invalid_argument);
}

TEST(PamProbability, InadmissibleTreesRejected) {
    PamParams p{2, -0.5};
    PamTree young{3, 0, {}};
    EXPECT_THROW(pam_mkc_probability(p, 8, young), std::invalid_argument);
    PamTree outside{7, 1, {{7, {2, 4}}}};
    EXPECT_THROW(pam_mkc_probability(p, 8, outside), std::invalid_argument);
    PamTree repeat{7, 1, {{7, {3, 3}}}};
    EXPECT_THROW(pam_mkc_probability(p, 8, repeat), std::invalid_argument);
    PamTree shape{7, 1, {{7, {3}}}};
    EXPECT_THROW(pam_mkc_probability(p, 8, shape), std::invalid_argument);
}

TEST(PamProbability, DepthZeroMatchesDegreeLaw) {
    PamParams p{2, -0.5};
    auto law = oracle::pam_degree_law(2, -0.5, 8, 5);
    double exact = 0;
    for (const auto& [st, pr] : law)
        if (st[4] == 2) exact += pr;
    EXPECT_NEAR(pam_mkc_probability(p, 8, PamTree{5, 0, {}}), exact, 1e-10);
}

TEST(PamProbability, EnumerationOfAdmissibleTrees) {
    auto all = enumerate_admissible(2, 8, 7, 1);
    // children are distinct ordered pairs from {3,4}
    EXPECT_EQ(all.size(), 2u);
    EXPECT_TRUE(enumerate_admissible(2, 8, 4, 1).empty());
}

TEST(Constants, Values) {
    auto cm = cm_constants(2.5, 3);
    EXPECT_NEAR(cm.diam_constant, 4.0 / std::log(2.0), 1e-12);
    EXPECT_NEAR(cm.diam_constant, 5.7708, 1e-4);
    EXPECT_EQ(cm.c_dist, 1.0);
    auto pam = pam_constants({2, -1.0});
    EXPECT_NEAR(pam.diam_constant, 6.0 / std::log(2.0), 1e-12);
    EXPECT_NEAR(pam.diam_constant, 8.6562, 1e-4);
    EXPECT_EQ(pam.c_dist, 2.0);
    EXPECT_THROW(cm_constants(3.5, 3), std::invalid_argument);
}

TEST(Constants, ThresholdsAndH) {
    auto cm = cm_constants(2.5, 3);
    const double n = 1e5, ll = std::log(std::log(n));
    EXPECT_EQ(cm.k_plus(n, 0.1), static_cast<int>(std::floor(1.1 * ll / std::log(2.0) + 0.5)));
    EXPECT_LE(cm.k_minus(n, 0.1), cm.k_plus(n, 0.1));
    EXPECT_EQ(AsymptoticConstants::round_half_up(2.5), 3.0);
    EXPECT_DOUBLE_EQ(default_doubling_rate(2.5), 0.26);
    auto hc = default_h_constants(2.5, 2.2);
    EXPECT_NEAR(hc.B, 1 / 0.26, 1e-12);
    EXPECT_NEAR(hc.C, std::log(2.2 / std::log(2.0)), 1e-12);
}

TEST(PamProbability, DegreeChainAgreesWithOutcomeTree) {
    const int m = 2, t = 6;
    const double delta = -0.5;
    for (int v = 4; v <= t; ++v) {
        auto chain = oracle::pam_degree_law(m, delta, t, v);
        std::map<std::vector<int>, double> tree;
        oracle::for_each_pam_realization(m, delta, t, [&](const std::vector<vertex_t>& xi, double pr) {
            PamGraph g({m, delta}, t, xi);
            auto d = g.degrees_at(t);
            if (d[v - 1] > m) return;
            std::vector<int> key(d.begin(), d.end());
            for (int j = 1; j <= m; ++j) key.push_back(g.xi(v, j));
            tree[key] += pr;
        });
        ASSERT_EQ(chain.size(), tree.size());
        for (const auto& [k, p] : tree) EXPECT_NEAR(chain.at(k), p, 1e-13);
    }
}
