#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "fddestab/char_roots.hpp"
#include "fddestab/classifier.hpp"
#include "fddestab/errors.hpp"
#include "fddestab/scaling.hpp"

using namespace fddestab;
using std::numbers::pi;

namespace {

// b/a as a function of the crossing frequency.
double ray_slope(double alpha, double v) {
    return 0.5 / std::sin(v / 2) / std::cos((3 * v + pi * alpha) / 2) * std::sin(pi * alpha / 2);
}

// Unscaled characteristic function at lambda = i v / tau.
double unscaled_residual(double alpha, double a, double b, double tau, double v) {
    const std::complex<double> lam{0.0, v / tau};
    return std::abs(std::pow(lam, alpha) - a - b * std::exp(-lam * tau) + b * std::exp(-2.0 * lam * tau));
}

}  // namespace

TEST(CrossingFrequencies, SecondQuadrantExample) {
    const auto xs = crossing_frequencies(0.4, -3.0, 5.0);
    int in_i2 = 0;
    for (const auto& c : xs) {
        EXPECT_TRUE(branch_interval(0.4, c.branch).contains(c.v));
        EXPECT_LT(std::abs(ray_slope(0.4, c.v) - 5.0 / -3.0), 1e-10);
        if (c.branch == BranchId::Gamma2) {
            ++in_i2;
            EXPECT_NEAR(c.v, 5.02, 5e-3);
        }
    }
    EXPECT_EQ(in_i2, 1);
}

TEST(CrossingFrequencies, ThirdQuadrantHasOneInI3) {
    const auto xs = crossing_frequencies(0.8, -8.0, -6.0);
    ASSERT_EQ(xs.size(), 1u);
    EXPECT_EQ(xs[0].branch, BranchId::Gamma3);
}

TEST(CrossingFrequencies, NoneOnAxis) { EXPECT_TRUE(crossing_frequencies(0.5, -1.0, 0.0).empty()); }

TEST(CriticalDelay, ReferenceValues) {
    auto tau_on = [](double alpha, double a, double b, BranchId br) {
        for (const auto& c : crossing_frequencies(alpha, a, b))
            if (c.branch == br) {
                const double t = critical_delay(alpha, a, b, c);
                EXPECT_LT(unscaled_residual(alpha, a, b, t, c.v), 1e-9);
                return t;
            }
        ADD_FAILURE() << "no crossing on requested branch";
        return 0.0;
    };
    EXPECT_NEAR(tau_on(0.4, -3.0, 5.0, BranchId::Gamma2), 0.271611, 1e-4);
    EXPECT_NEAR(tau_on(0.4, -3.0, -4.0, BranchId::Gamma3), 0.0443753, 1e-5);
    EXPECT_NEAR(tau_on(0.8, -5.0, 8.0, BranchId::Gamma1), 0.264173, 1e-4);
    EXPECT_NEAR(tau_on(0.8, -8.0, -6.0, BranchId::Gamma3), 0.264942, 1e-4);
}

TEST(CriticalDelay, SignMismatch) {
    const auto xs = crossing_frequencies(0.4, -3.0, 5.0);
    ASSERT_FALSE(xs.empty());
    try {
        critical_delay(0.4, 3.0, -5.0, xs[0]);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::SignMismatch);
    }
}

TEST(Classify, ReferenceRegions) {
    EXPECT_EQ(classify(0.4, 5.0, 7.0).region, Region::Unstable);
    EXPECT_EQ(classify(0.4, -5.0, 3.0).region, Region::Stable);
    EXPECT_EQ(classify(0.8, -7.0, 4.0).region, Region::Stable);

    const auto ssr = classify(0.4, -3.0, 5.0);
    EXPECT_EQ(ssr.region, Region::SSR);
    ASSERT_EQ(ssr.critical_delays.size(), 1u);
    EXPECT_EQ(ssr.critical_delays[0].branch, BranchId::Gamma2);
    EXPECT_NEAR(ssr.critical_delays[0].tau, 0.271611, 1e-4);

    const auto g1 = classify(0.8, -5.0, 8.0);
    EXPECT_EQ(g1.region, Region::SSR);
    EXPECT_EQ(g1.critical_delays[0].branch, BranchId::Gamma1);

    const auto ss = classify(0.8, -30.0, 29.4);
    EXPECT_EQ(ss.region, Region::SS);
    ASSERT_EQ(ss.critical_delays.size(), 2u);
    EXPECT_NEAR(ss.critical_delays[0].tau, 0.576569, 1e-4);
    EXPECT_NEAR(ss.critical_delays[1].tau, 0.693395, 1e-4);
}

TEST(Classify, MarginalAndDegenerate) {
    EXPECT_EQ(classify(0.5, -2.0, 2.0).region, Region::Marginal);
    EXPECT_EQ(classify(0.5, -2.0, -1.0).region, Region::Marginal);
    EXPECT_EQ(classify(0.5, 0.0, 3.0).region, Region::Marginal);
    EXPECT_EQ(classify(0.8, -1.0, t1_slope(0.8) * -1.0).region, Region::Marginal);
    try {
        classify(0.5, 0.0, 0.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DegenerateInput);
    }
}

TEST(Classify, NoSwitchBelowTwoThirds) {
    for (double alpha : {0.3, 0.5, 0.66})
        for (double r = -0.999; r < 0.5; r += 0.01) EXPECT_EQ(classify(alpha, -10.0, 10.0 * -r).region, Region::Stable);
}

TEST(Classify, AgreementAcrossSeparatingRay) {
    for (double alpha : {0.2, 0.5, 2.0 / 3.0})
        for (double a : {-0.5, -3.0, -40.0}) {
            EXPECT_EQ(classify(alpha, a, -a * (1 - 1e-9)).region, Region::Stable) << alpha << ' ' << a;
            EXPECT_EQ(classify(alpha, a, -a * (1 + 1e-6)).region, Region::SSR) << alpha << ' ' << a;
        }
}

TEST(Classify, ScalingLaw) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> al(0.1, 1.0), coef(-20.0, 20.0), kk(0.2, 5.0);
    int compared = 0;
    for (int i = 0; i < 60; ++i) {
        const double alpha = al(rng), a = coef(rng), b = coef(rng), k = kk(rng);
        const auto base = classify(alpha, a, b);
        const auto scaled = classify(alpha, k * a, k * b);
        ASSERT_EQ(base.region, scaled.region);
        ASSERT_EQ(base.critical_delays.size(), scaled.critical_delays.size());
        for (std::size_t j = 0; j < base.critical_delays.size(); ++j) {
            const double want = std::pow(k, -1.0 / alpha) * base.critical_delays[j].tau;
            EXPECT_NEAR(scaled.critical_delays[j].tau, want, 1e-6 * want);
            ++compared;
        }
    }
    EXPECT_GT(compared, 10);
}

TEST(Classify, SwitchOrdering) {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> al(0.7, 1.0), aa(-40.0, -0.5), u(0.02, 0.98);
    int seen = 0;
    for (int i = 0; i < 40; ++i) {
        const double alpha = al(rng), a = aa(rng);
        const double m1 = t1_slope(alpha);
        const double b = a * (-1.0 + u(rng) * (m1 + 1.0));  // ratio strictly between -1 and m1
        const RegionClassifier rc(alpha);
        const auto v = rc.classify(a, b);
        ASSERT_EQ(v.region, Region::SS) << alpha << ' ' << a << ' ' << b;
        const double t1 = v.critical_delays[0].tau, t2 = v.critical_delays[1].tau;
        EXPECT_LT(t1, t2);
        EXPECT_EQ(rc.stability_at(a, b, 0.5 * (t1 + t2)), PointStability::Unstable);
        EXPECT_EQ(rc.stability_at(a, b, 0.5 * t1), PointStability::Stable);
        EXPECT_EQ(rc.stability_at(a, b, 2.0 * t2), PointStability::Stable);
        ++seen;
    }
    EXPECT_EQ(seen, 40);
}

TEST(Classify, CriticalityOnImaginaryAxis) {
    for (auto [alpha, a, b] : {std::tuple{0.4, -3.0, 5.0}, {0.4, -3.0, -4.0}, {0.8, -5.0, 8.0}, {0.8, -30.0, 29.4}}) {
        for (const auto& d : classify(alpha, a, b).critical_delays) {
            const auto s = scale({alpha, a, b, d.tau});
            const auto r = newton_root(alpha, s.A, s.B, {1e-3, d.v});
            EXPECT_LT(std::abs(r.beta.real()), 1e-8);
            EXPECT_NEAR(r.beta.imag(), d.v, 1e-7);
        }
    }
}

TEST(StabilityAt, ReferenceVerdicts) {
    EXPECT_EQ(stability_at(0.4, -3.0, 5.0, 0.25), PointStability::Stable);
    EXPECT_EQ(stability_at(0.4, -3.0, 5.0, 0.28), PointStability::Unstable);
    EXPECT_EQ(stability_at(0.8, -30.0, 29.4, 0.8), PointStability::Stable);
    EXPECT_EQ(stability_at(0.8, -30.0, 29.4, 0.6), PointStability::Unstable);
    EXPECT_EQ(stability_at(0.8, -30.0, 29.4, 0.2), PointStability::Stable);
    EXPECT_EQ(stability_at(0.4, 5.0, 7.0, 0.4), PointStability::Unstable);
    EXPECT_EQ(stability_at(0.4, -5.0, 3.0, 0.8), PointStability::Stable);
}

TEST(StabilityAt, ZeroDelayAndMarginal) {
    EXPECT_EQ(stability_at(0.5, -1.0, 100.0, 0.0), PointStability::Stable);
    EXPECT_EQ(stability_at(0.5, 1.0, -100.0, 0.0), PointStability::Unstable);
    const double t = classify(0.4, -3.0, 5.0).critical_delays[0].tau;
    EXPECT_EQ(stability_at(0.4, -3.0, 5.0, t), PointStability::Marginal);
    EXPECT_EQ(to_string(PointStability::Marginal), "marginal");
}

TEST(StabilityAt, AgreesWithRootScan) {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> al(0.1, 1.0), coef(-15.0, 15.0), tau(0.02, 2.0);
    for (int i = 0; i < 20; ++i) {
        const double alpha = al(rng), a = coef(rng), b = coef(rng), t = tau(rng);
        const RegionClassifier rc(alpha);
        const auto verdict = rc.classify(a, b);
        bool near_critical = false;
        for (const auto& d : verdict.critical_delays) near_critical |= std::abs(t - d.tau) < 0.01 * d.tau;
        if (near_critical) continue;
        const auto s = scale({alpha, a, b, t});
        const bool unstable = has_unstable_root(alpha, s.A, s.B, oracle_window(alpha, s.A, s.B));
        EXPECT_EQ(rc.stability_at(a, b, t) == PointStability::Unstable, unstable)
            << alpha << ' ' << a << ' ' << b << ' ' << t;
    }
}
