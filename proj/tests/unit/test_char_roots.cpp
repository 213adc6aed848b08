#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "fddestab/boundary.hpp"
#include "fddestab/char_roots.hpp"
#include "fddestab/errors.hpp"
#include "fddestab/scaling.hpp"

using namespace fddestab;
using std::numbers::pi;

namespace {

double oracle_residual(double alpha, double A, double B, Complex beta) {
    return std::abs(std::pow(beta, alpha) - A - B * std::exp(-beta) + B * std::exp(-2.0 * beta));
}

}  // namespace

TEST(CharResidual, Examples) {
    EXPECT_LT(char_residual(0.4, -1.802967, 3.004944, {0.00287472, 5.02187}), 1e-4);
    for (double alpha : {0.1, 0.5, 1.0}) EXPECT_NEAR(char_residual(alpha, 1.0, 0.0, 1.0), 0.0, 1e-15);
    for (double v : {0.5, 2.0, 9.0}) EXPECT_NEAR(char_residual(0.5, 0.0, 0.0, {0.0, v}), std::sqrt(v), 1e-12);
}

TEST(CharResidual, MatchesStdPow) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> al(0.05, 1.0), re(-3.0, 3.0), im(-10.0, 10.0), c(-5.0, 5.0);
    for (int i = 0; i < 500; ++i) {
        const double alpha = al(rng), A = c(rng), B = c(rng);
        const Complex beta{re(rng), im(rng)};
        EXPECT_NEAR(char_residual(alpha, A, B, beta), oracle_residual(alpha, A, B, beta), 1e-10);
    }
}

TEST(CharFunction, ConjugateSymmetry) {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> al(0.05, 1.0), re(-3.0, 3.0), im(0.01, 10.0), c(-5.0, 5.0);
    for (int i = 0; i < 300; ++i) {
        const double alpha = al(rng), A = c(rng), B = c(rng);
        const Complex beta{re(rng), im(rng)};
        const Complex f = char_function(alpha, A, B, beta);
        const Complex g = char_function(alpha, A, B, std::conj(beta));
        EXPECT_NEAR(std::abs(g - std::conj(f)), 0.0, 1e-12 * (1 + std::abs(f)));
    }
}

TEST(CharDerivative, FiniteDifference) {
    const double alpha = 0.6, A = -1.3, B = 2.1;
    for (Complex beta : {Complex{0.2, 1.0}, Complex{-0.5, 4.0}, Complex{1.5, -2.0}}) {
        const double h = 1e-6;
        const Complex fd = (char_function(alpha, A, B, beta + h) - char_function(alpha, A, B, beta - h)) / (2 * h);
        EXPECT_NEAR(std::abs(char_derivative(alpha, A, B, beta) - fd), 0.0, 1e-7);
    }
}

TEST(PQSplit, BoundOnQ) {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> bb(-50.0, 50.0), x(1e-6, 20.0);
    for (int i = 0; i < 1000; ++i) {
        const PQSplit pq{0.5, 0.0, bb(rng)};
        EXPECT_LE(std::abs(pq.Q(x(rng))), std::abs(pq.B) / 4 + 1e-12);
    }
    const PQSplit pq{0.7, 1.0, 8.0};
    EXPECT_NEAR(pq.Q(PQSplit::q_extremum_location()), pq.q_extremum_value(), 1e-14);
    EXPECT_EQ(pq.Q(0.0), 0.0);
    EXPECT_NEAR(pq.P(1.0), 0.0, 1e-15);
}

TEST(RealPositiveRoot, ExistsForPositiveA) {
    const double k = std::pow(0.4, 0.4);
    const auto r = real_positive_root(0.4, 5 * k, 7 * k);
    ASSERT_TRUE(r.has_value());
    EXPECT_GT(r->beta.real(), 0.0);
    EXPECT_EQ(r->beta.imag(), 0.0);
    EXPECT_LT(r->residual, 1e-10);
}

TEST(RealPositiveRoot, LinearCase) {
    const auto r = real_positive_root(1.0, 1.0, 0.0);
    ASSERT_TRUE(r.has_value());
    EXPECT_NEAR(r->beta.real(), 1.0, 1e-12);
}

TEST(RealPositiveRoot, NoneWhenQCannotReachP) {
    EXPECT_FALSE(real_positive_root(0.8, -19.936, 19.538).has_value());
}

TEST(RealPositiveRoot, AlwaysFoundWhenAPositive) {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> al(0.05, 1.0), A(1e-3, 30.0), B(-30.0, 30.0);
    for (int i = 0; i < 200; ++i) {
        const double alpha = al(rng), a = A(rng), b = B(rng);
        const auto r = real_positive_root(alpha, a, b);
        ASSERT_TRUE(r.has_value()) << alpha << ' ' << a << ' ' << b;
        EXPECT_LT(oracle_residual(alpha, a, b, r->beta), 1e-9);
    }
}

TEST(NewtonRoot, WeaklyUnstableComplexRoot) {
    const auto r = newton_root(0.4, -1.802967, 3.004944, {0.01, 5.0});
    EXPECT_NEAR(r.beta.real(), 0.00287472, 1e-4);
    EXPECT_NEAR(r.beta.imag(), 5.02187, 1e-4);
    EXPECT_LT(r.residual, 1e-10);
}

TEST(NewtonRoot, LinearCase) {
    const auto r = newton_root(1.0, -1.0, 0.0, {-0.9, 0.0});
    EXPECT_NEAR(r.beta.real(), -1.0, 1e-12);
    EXPECT_NEAR(r.beta.imag(), 0.0, 1e-12);
}

TEST(NewtonRoot, BoundaryPointIsImaginaryRoot) {
    const auto p = boundary_point(0.5, 2.8);
    const auto r = newton_root(0.5, p.A, p.B, {0.01, 2.79});
    EXPECT_NEAR(r.beta.real(), 0.0, 2.8e-8);
    EXPECT_NEAR(r.beta.imag(), 2.8, 2.8e-8);
}

TEST(NewtonRoot, BranchCut) {
    try {
        newton_root(0.5, 1.0, 0.0, {-0.5, 0.0});
        FAIL() << "expected branch-cut-crossing";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::BranchCutCrossing);
    }
}

TEST(RootScan, FindsWeaklyUnstableRoot) {
    const auto roots = rightmost_root_scan(0.4, -1.802967, 3.004944);
    ASSERT_FALSE(roots.empty());
    EXPECT_NEAR(roots.front().beta.real(), 0.00287, 1e-4);
    EXPECT_NEAR(std::abs(roots.front().beta.imag()), 5.0219, 1e-3);
}

TEST(RootScan, CriticalDelayPutsRootOnAxis) {
    const auto s = scale({0.4, -3.0, 5.0, 0.2716106686491866});
    const auto roots = rightmost_root_scan(0.4, s.A, s.B);
    ASSERT_FALSE(roots.empty());
    EXPECT_LT(std::abs(roots.front().beta.real()), 1e-6);
}

TEST(RootScan, DelayFreeStable) {
    for (const auto& r : rightmost_root_scan(0.5, -1.0, 0.0)) EXPECT_LT(r.beta.real(), 0.0);
}

TEST(RootScan, SortedConjugateClosedDeduplicated) {
    const double alpha = 0.8;
    const auto s = scale({alpha, -30.0, 29.4, 0.6});
    const auto roots = rightmost_root_scan(alpha, s.A, s.B, oracle_window(alpha, s.A, s.B));
    ASSERT_FALSE(roots.empty());
    EXPECT_GT(roots.front().beta.real(), 0.0);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        EXPECT_LT(oracle_residual(alpha, s.A, s.B, roots[i].beta), 1e-9);
        if (i > 0) EXPECT_GE(roots[i - 1].beta.real(), roots[i].beta.real());
        if (roots[i].beta.imag() != 0.0) {
            EXPECT_LT(oracle_residual(alpha, s.A, s.B, std::conj(roots[i].beta)), 1e-9);
            bool paired = false;
            for (const auto& q : roots) paired |= std::abs(q.beta - std::conj(roots[i].beta)) < 1e-9;
            EXPECT_TRUE(paired);
        }
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            EXPECT_GT(std::abs(roots[i].beta - roots[j].beta), 1e-6);
    }
}

TEST(RootScan, UnstableVerdict) {
    const auto s = scale({0.4, -3.0, 5.0, 0.28});
    EXPECT_TRUE(has_unstable_root(0.4, s.A, s.B, oracle_window(0.4, s.A, s.B)));
    const auto t = scale({0.4, -3.0, 5.0, 0.25});
    EXPECT_FALSE(has_unstable_root(0.4, t.A, t.B, oracle_window(0.4, t.A, t.B)));
}
