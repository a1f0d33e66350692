#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "genhilbert/criteria.hpp"
#include "genhilbert/errors.hpp"
#include "genhilbert/operators.hpp"
#include "oracles.hpp"

using namespace genhilbert;

TEST(BoundednessProfile, BetaTwoStandardOneTendsToZero) {
    const auto m = MeasureSpec::beta(2.0);
    const auto c = boundedness_profile(m, Weight::standard(1.0), Weight::standard(1.0));
    ASSERT_FALSE(c.divergent);
    const std::size_t N = (1u << 16) - 1;
    const auto ms = moments(MeasureSpec::beta(2.0), N);
    for (std::size_t j = 1; j < c.values.size(); ++j) {
        const double h = std::exp2(-static_cast<double>(j));
        const double r = 1.0 - h;
        EXPECT_NEAR(c.values[j], 2.0 * h * (j * std::log(2.0)) / r, 1e-9) << j;
        if (j <= 10) {
            // int t^n/(1-t) dmu = sum_{k>=n} mu_k, so the profile is sum_k mu_k (1 - r^{k+1});
            // the beta(2) remainder past N is 2/(N+2)
            double series = 2.0 / (N + 2.0), rk = r;
            for (std::size_t k = 0; k <= N; ++k) {
                series += ms[k] * (1.0 - rk);
                rk *= r;
            }
            EXPECT_NEAR(c.values[j], series, 1e-8) << j;
        }
    }
    EXPECT_EQ(profile_bounded(c), Verdict::yes);
    EXPECT_EQ(compactness_limit(c).limit_zero, Verdict::yes);
}

TEST(BoundednessProfile, LebesgueHalfTendsToPi) {
    const auto c = boundedness_profile(MeasureSpec::lebesgue(), Weight::standard(0.5), Weight::standard(0.5));
    ASSERT_FALSE(c.divergent);
    EXPECT_TRUE(std::isfinite(c.sup));
    EXPECT_NEAR(c.values.back(), M_PI, 1e-2);
    EXPECT_EQ(profile_bounded(c), Verdict::yes);
    EXPECT_EQ(compactness_limit(c).limit_zero, Verdict::no);
}

TEST(BoundednessProfile, PointMassAtZero) {
    for (double g : {0.25, 0.5, 1.0}) {
        const auto c = boundedness_profile(MeasureSpec::atomic({{0.0, 1.0}}), Weight::standard(g), Weight::standard(g));
        for (std::size_t j = 0; j < c.values.size(); ++j) {
            EXPECT_NEAR(c.values[j], std::pow(1.0 - c.grid[j], g), 1e-15);
        }
        EXPECT_EQ(compactness_limit(c).limit_zero, Verdict::yes);
    }
}

TEST(BoundednessProfile, DivergentDomainShortCircuits) {
    const auto c = boundedness_profile(MeasureSpec::lebesgue(), Weight::standard(1.0), Weight::standard(1.0));
    EXPECT_TRUE(c.divergent);
    EXPECT_TRUE(c.values.empty());
    EXPECT_EQ(profile_bounded(c), Verdict::no);
}

TEST(CompactnessLimit, IndeterminateBand) {
    ProfileCurve c;
    for (int j = 0; j < 10; ++j) c.push(j, 1.0 + 0.5 * (j % 2));
    c.summarize();
    EXPECT_EQ(compactness_limit(c).limit_zero, Verdict::inconclusive);
}

TEST(CarlesonCheck, Examples) {
    for (double s : {0.5, 1.0, 2.0}) {
        const auto exact = carleson_check(MeasureSpec::beta(s), s);
        EXPECT_NEAR(exact.constant, 1.0, 1e-12);
        EXPECT_EQ(exact.finite, Verdict::yes);
        EXPECT_EQ(exact.vanishing, Verdict::no);
        const auto lower = carleson_check(MeasureSpec::beta(s), s - 0.1);
        EXPECT_EQ(lower.finite, Verdict::yes);
        EXPECT_EQ(lower.vanishing, Verdict::yes);
        const auto higher = carleson_check(MeasureSpec::beta(s), s + 0.25);
        EXPECT_EQ(higher.finite, Verdict::no);
    }
    for (double s : {0.3, 1.0, 5.0}) {
        const auto at = carleson_check(MeasureSpec::atomic({{0.7, 2.0}}), s);
        EXPECT_EQ(at.vanishing, Verdict::yes);
        EXPECT_EQ(at.finite, Verdict::yes);
    }
    EXPECT_THROW(carleson_check(MeasureSpec::lebesgue(), 0.0), DomainError);
}

TEST(CarlesonCheck, LogDensityIsVanishingCarleson) {
    const auto c = carleson_check(MeasureSpec::log_density(), 1.0);
    EXPECT_EQ(c.finite, Verdict::yes);
    EXPECT_EQ(c.vanishing, Verdict::yes);
}

TEST(MomentDecayFit, Examples) {
    for (double s : {0.5, 1.0, 1.5, 2.0}) {
        const auto fit = moment_decay_fit(moments(MeasureSpec::beta(s), 4096));
        EXPECT_NEAR(fit.exponent, s, 0.05) << s;
        EXPECT_EQ(fit.window_lo, 16u);
        EXPECT_EQ(fit.window_hi, 4096u);
    }
    EXPECT_NEAR(moment_decay_fit(moments(MeasureSpec::lebesgue(), 4096)).exponent, 1.0, 0.02);
    const auto ld = moment_decay_fit(moments(MeasureSpec::log_density(), 4096));
    EXPECT_NEAR(ld.exponent, 1.0, 0.25);
    EXPECT_GT(ld.exponent, 1.0);
    EXPECT_GT(ld.drift, 0.0);
}

TEST(MomentDecayFit, ZerosGiveInfiniteExponent) {
    EXPECT_TRUE(std::isinf(moment_decay_fit(moments(MeasureSpec::atomic({{0.0, 1.0}}), 4096)).exponent));
}

TEST(MomentSummability, Examples) {
    const auto b2 = moment_summability(moments(MeasureSpec::beta(2.0), 4096), 1.0);
    EXPECT_TRUE(b2.converged);
    EXPECT_NEAR(b2.sum, 2.0, 1e-3);
    EXPECT_LT(std::abs(b2.sum + b2.tail_estimate - 2.0), 0.1 * std::abs(b2.sum - 2.0));
    EXPECT_FALSE(moment_summability(moments(MeasureSpec::lebesgue(), 4096), 1.0).converged);
    const auto ld = moment_summability(moments(MeasureSpec::log_density(), 4096), 1.0);
    EXPECT_FALSE(ld.converged);
    EXPECT_TRUE(std::isinf(ld.tail_estimate));
}

namespace {

void expect_verdicts(const ClassificationReport& r, Verdict wd, Verdict b, Verdict c) {
    EXPECT_EQ(r.well_defined.verdict, wd) << r.operator_name;
    EXPECT_EQ(r.bounded.verdict, b) << r.operator_name;
    EXPECT_EQ(r.compact.verdict, c) << r.operator_name;
    EXPECT_TRUE(r.ordering_holds());
    for (const Finding* f : {&r.well_defined, &r.bounded, &r.compact, &r.nuclear}) {
        EXPECT_FALSE(f->criterion.empty());
    }
    EXPECT_FALSE(r.bounded.evidence.empty());
}

}  // namespace

TEST(ClassifyGrowth, LebesgueDiagonal) {
    expect_verdicts(classify_growth(MeasureSpec::lebesgue(), 0.5, 0.0), Verdict::yes, Verdict::yes, Verdict::no);
    expect_verdicts(classify_growth(MeasureSpec::lebesgue(), 1.0, 0.0), Verdict::no, Verdict::no, Verdict::no);
}

TEST(ClassifyGrowth, LogDensityNotWellDefinedOnV1) {
    expect_verdicts(classify_growth(MeasureSpec::log_density(), 1.0, 0.0), Verdict::no, Verdict::no, Verdict::no);
}

TEST(ClassifyGrowth, BetaMeasures) {
    // beta(2) is 2-Carleson: vanishing 1-Carleson, and sum mu_n < inf
    expect_verdicts(classify_growth(MeasureSpec::beta(2.0), 0.5, 0.0), Verdict::yes, Verdict::yes, Verdict::yes);
    expect_verdicts(classify_growth(MeasureSpec::beta(2.0), 1.0, 0.0), Verdict::yes, Verdict::yes, Verdict::yes);
    // beta(0.5) is not 1-Carleson
    expect_verdicts(classify_growth(MeasureSpec::beta(0.5), 0.25, 0.0), Verdict::yes, Verdict::no, Verdict::no);
    // boundary delta = 1 - s: exact Carleson, bounded and not compact
    expect_verdicts(classify_growth(MeasureSpec::beta(0.5), 0.25, 0.5), Verdict::yes, Verdict::yes, Verdict::no);
}

TEST(ClassifyGrowth, RejectsOutOfRangeParameters) {
    EXPECT_THROW(classify_growth(MeasureSpec::lebesgue(), 0.0, 0.0), DomainError);
    EXPECT_THROW(classify_growth(MeasureSpec::lebesgue(), 0.5, -0.5), DomainError);
}

TEST(ClassifyGrowth, InvariantUnderScaling) {
    for (const auto& m : {MeasureSpec::lebesgue(), MeasureSpec::beta(2.0), MeasureSpec::log_density()}) {
        for (auto [g, d] : {std::pair{0.5, 0.0}, {1.0, 0.0}, {0.25, 0.25}}) {
            const auto a = classify_growth(m, g, d);
            for (double c : {1e-3, 7.0}) {
                const auto b = classify_growth(m.scaled(c), g, d);
                EXPECT_EQ(a.well_defined.verdict, b.well_defined.verdict);
                EXPECT_EQ(a.bounded.verdict, b.bounded.verdict);
                EXPECT_EQ(a.compact.verdict, b.compact.verdict);
                EXPECT_EQ(a.nuclear.verdict, b.nuclear.verdict);
            }
        }
    }
}

TEST(ClassifyGrowth, OrderingHoldsOnRandomMeasures) {
    std::mt19937_64 rng(99);
    ClassifyOptions opts;
    opts.truncation = 1024;
    for (int trial = 0; trial < 10; ++trial) {
        const auto m = oracle::random_atomic(rng, 8);
        const auto r = classify_growth(m, 0.25 + 0.1 * trial, 0.0, opts);
        EXPECT_TRUE(r.ordering_holds());
        // atoms sit inside [0,1): everything is defined, bounded and compact
        EXPECT_EQ(r.compact.verdict, Verdict::yes);
    }
}

TEST(ClassificationReport, EnforceOrdering) {
    ClassificationReport r;
    r.well_defined.verdict = Verdict::no;
    r.bounded.verdict = Verdict::yes;
    r.compact.verdict = Verdict::inconclusive;
    r.enforce_ordering();
    EXPECT_TRUE(r.ordering_holds());
    EXPECT_EQ(r.compact.verdict, Verdict::no);

    ClassificationReport s;
    s.well_defined.verdict = Verdict::yes;
    s.bounded.verdict = Verdict::inconclusive;
    s.compact.verdict = Verdict::yes;
    s.nuclear.verdict = Verdict::yes;
    s.enforce_ordering();
    EXPECT_TRUE(s.ordering_holds());
}

TEST(KernelCarlesonEquivalence, KernelSupMatchesCarlesonConstant) {
    for (const auto& m : {MeasureSpec::lebesgue(), MeasureSpec::beta(0.5), MeasureSpec::beta(2.0),
                          MeasureSpec::atomic({{0.5, 1.0}})}) {
        for (double g : {0.25, 0.5, 0.75}) {
            for (double d : {-0.25, 0.0, 0.25}) {
                if (!(g + d < 1.0) || !(d > -g)) continue;
                const auto kernel = boundedness_profile(m, Weight::standard(g), Weight::standard(g + d));
                const auto car = carleson_check(m, 1.0 - d);
                const Verdict kv = profile_bounded(kernel);
                EXPECT_NE(kv, Verdict::inconclusive) << m.describe() << " " << g << " " << d;
                EXPECT_EQ(kv, car.finite) << m.describe() << " " << g << " " << d;
            }
        }
    }
}

TEST(OperatorNormWitness, GridNormBelowProfileSup) {
    std::mt19937_64 rng(21);
    GridSpec grid;
    grid.levels = 12;
    grid.angles = 16;
    grid.refine = false;
    for (const auto& m : {MeasureSpec::beta(2.0), MeasureSpec::lebesgue(), MeasureSpec::atomic({{0.3, 1.0}, {0.8, 0.5}})}) {
        const Weight v = Weight::standard(0.5), w = Weight::standard(0.5);
        const auto prof = boundedness_profile(m, v, w, grid);
        for (int trial = 0; trial < 4; ++trial) {
            auto a = oracle::random_vector(rng, 12);
            const double nv = weighted_sup_norm(TaylorFunction(a), v, grid);
            for (double& x : a) x /= nv;
            const IntegralOperator op(m, TaylorFunction(a));
            double out = 0.0;
            for (const auto& p : grid.radii()) {
                for (int k = 0; k < grid.angles; ++k) {
                    const auto z = std::polar(std::min(p.t, 0.999), 2.0 * M_PI * k / grid.angles);
                    out = std::max(out, w(std::abs(z)) * std::abs(op(z).value));
                }
            }
            // the v-norm is a grid lower bound, so allow the grid error of the input normalisation
            EXPECT_LE(out, prof.sup * 1.5) << m.describe();
        }
    }
}

TEST(ClassifyWiener, Examples) {
    const auto b2 = classify_wiener(MeasureSpec::beta(2.0));
    EXPECT_EQ(b2.nuclear.verdict, Verdict::yes);
    EXPECT_TRUE(b2.ordering_holds());
    const auto leb = classify_wiener(MeasureSpec::lebesgue());
    EXPECT_EQ(leb.well_defined.verdict, Verdict::no);
    EXPECT_EQ(leb.nuclear.verdict, Verdict::no);
    EXPECT_EQ(classify_wiener(MeasureSpec::log_density()).well_defined.verdict, Verdict::no);
}

TEST(HankelSectionSvd, RankOneAtom) {
    for (double c : {0.3, 0.9}) {
        const std::size_t N = 128;
        const auto ms = moments(MeasureSpec::atomic({{c, 1.0}}), 2 * N - 2);
        const auto sigma = hankel_section_svd(ms, N);
        EXPECT_NEAR(sigma[0], (1.0 - std::pow(c, 2.0 * N)) / (1.0 - c * c), 1e-10);
        for (std::size_t j = 1; j < N; ++j) EXPECT_NEAR(sigma[j], 0.0, 1e-10);
    }
    const auto d0 = hankel_section_svd(moments(MeasureSpec::atomic({{0.0, 1.0}}), 20), 10);
    EXPECT_DOUBLE_EQ(d0[0], 1.0);
    for (std::size_t j = 1; j < 10; ++j) EXPECT_EQ(d0[j], 0.0);
}

TEST(HankelSectionSvd, LargestValueMonotoneAndRowSumBounded) {
    const auto ms = moments(MeasureSpec::beta(2.0), 1023);
    double prev = 0.0, total = 0.0;
    for (double x : ms.values) total += x;
    for (std::size_t N : {8u, 32u, 128u, 512u}) {
        const auto sigma = hankel_section_svd(ms, N);
        EXPECT_GE(sigma[0], prev * (1.0 - 1e-12));
        EXPECT_LE(sigma[0], total);
        prev = sigma[0];
        for (std::size_t j = 1; j < N; ++j) EXPECT_LE(sigma[j], sigma[j - 1]);
    }
}

TEST(HankelSectionSvd, TraceStabilises) {
    const auto ms = moments(MeasureSpec::beta(2.0), 1023);
    auto trace = [&](std::size_t N) {
        double t = 0.0;
        for (double s : hankel_section_svd(ms, N)) t += s;
        return t;
    };
    const double t256 = trace(256), t512 = trace(512);
    EXPECT_LT(std::abs(t512 - t256), 0.01 * t512);
}

TEST(HankelSectionSvd, Limits) {
    const auto ms = moments(MeasureSpec::lebesgue(), 100);
    EXPECT_THROW(hankel_section_svd(ms, 60), ConfigError);
    EXPECT_THROW(hankel_section_svd(moments(MeasureSpec::lebesgue(), 2100), 1025), ConfigError);
}

TEST(NuclearBoundWiener, Examples) {
    const auto b2 = nuclear_bound_wiener(moments(MeasureSpec::beta(2.0), 4096));
    EXPECT_NEAR(b2.partial, 2.0, 1e-3);
    EXPECT_TRUE(b2.converged);
    const double c = 0.6;
    const auto at = nuclear_bound_wiener(moments(MeasureSpec::atomic({{c, 1.0}}), 4096));
    EXPECT_NEAR(at.partial, 1.0 / (1.0 - c), 1e-12);
    const auto leb = nuclear_bound_wiener(moments(MeasureSpec::lebesgue(), 4096));
    EXPECT_FALSE(leb.converged);
    EXPECT_TRUE(std::isinf(leb.tail_estimate));
}

TEST(LpqRowNorms, Examples) {
    const auto b2 = lpq_row_norms(moments(MeasureSpec::beta(2.0), 4096), 2.0, 1.0, 2048);
    EXPECT_NEAR(b2.exponent, 2.0, 0.05);
    EXPECT_EQ(b2.q_summable, Verdict::yes);
    EXPECT_TRUE(b2.bound_ok);
    const auto b12 = lpq_row_norms(moments(MeasureSpec::beta(1.2), 4096), 2.0, 2.0, 2048);
    EXPECT_EQ(b12.q_summable, Verdict::yes);
    EXPECT_NEAR(b12.condition, 1.4, 0.1);
    const auto d0 = lpq_row_norms(moments(MeasureSpec::atomic({{0.0, 1.0}}), 64), 3.0, 2.0, 32);
    EXPECT_DOUBLE_EQ(d0.row_norms[0], 1.0);
    for (std::size_t k = 1; k < d0.row_norms.size(); ++k) EXPECT_EQ(d0.row_norms[k], 0.0);
    EXPECT_EQ(d0.q_summable, Verdict::yes);
}

TEST(LpqRowNorms, PEqualsOneGivesMoments) {
    const auto ms = moments(MeasureSpec::beta(1.5), 512);
    const auto r = lpq_row_norms(ms, 1.0, 1.0, 100);
    for (std::size_t k = 0; k < 100; ++k) EXPECT_DOUBLE_EQ(r.row_norms[k], ms[k]);
    EXPECT_TRUE(std::isinf(r.p_conjugate));
}

TEST(LpqRowNorms, RowsMatchDirectSums) {
    const auto ms = moments(MeasureSpec::beta(2.0), 300);
    const auto r = lpq_row_norms(ms, 3.0, 1.0, 10);
    for (std::size_t k = 0; k < 10; ++k) {
        double acc = 0.0;
        for (std::size_t n = k; n < ms.size(); ++n) acc += std::pow(ms[n], 1.5);
        EXPECT_NEAR(r.row_norms[k], std::pow(acc, 1.0 / 1.5), 1e-14);
    }
}
