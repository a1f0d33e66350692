#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "genhilbert/errors.hpp"
#include "genhilbert/function_space.hpp"
#include "genhilbert/solid.hpp"
#include "oracles.hpp"

using namespace genhilbert;

TEST(SolidHullNorm, UnitVectorsAndBlocks) {
    std::vector<double> a(16, 0.0);
    a[5] = 3.0;  // block n = 2 holds 4..7
    const auto p = solid_hull_norm(a, 0.5);
    ASSERT_EQ(p.blocks.size(), 4u);
    EXPECT_DOUBLE_EQ(p.blocks[2], 3.0 / std::sqrt(6.0));
    EXPECT_EQ(p.blocks[0], 0.0);
    EXPECT_EQ(p.blocks[3], 0.0);
    EXPECT_DOUBLE_EQ(p.sup, 3.0 / std::sqrt(6.0));
    EXPECT_FALSE(p.partial_tail_dropped);
    a.resize(20, 1.0);
    EXPECT_TRUE(solid_hull_norm(a, 0.5).partial_tail_dropped);
    EXPECT_EQ(solid_hull_norm(a, 0.5).blocks.size(), 4u);

    a.resize(16);
    const auto c = solid_core_norm(a, 1.0);
    EXPECT_DOUBLE_EQ(c.blocks[2], 0.5);
}

TEST(SolidHullNorm, LeadingCoefficientIgnored) {
    std::vector<double> a{100.0, 0.0, 0.0, 0.0};
    EXPECT_EQ(solid_hull_norm(a, 1.0).sup, 0.0);
    EXPECT_EQ(solid_core_norm(a, 1.0).sup, 0.0);
}

TEST(SolidHullNorm, AllOnesApproachesSqrtLog2) {
    const std::vector<double> a((1u << 16) + 7, 1.0);
    const auto p = solid_hull_norm(a, 0.5);
    ASSERT_EQ(p.blocks.size(), 16u);
    for (std::size_t n = 0; n < p.blocks.size(); ++n) {
        // harmonic block sum H(2^{n+1}) - H(2^n)
        long double h = 0.0L;
        for (std::size_t m = std::size_t{1} << n; m < (std::size_t{2} << n); ++m) h += 1.0L / (m + 1);
        EXPECT_NEAR(p.blocks[n], std::sqrt(static_cast<double>(h)), 1e-13);
        if (n >= 10) EXPECT_NEAR(p.blocks[n], std::sqrt(std::log(2.0)), 1e-3);
    }
}

TEST(SolidHullNorm, SolidityUnderContraction) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = oracle::random_vector(rng, 256, -2.0, 2.0);
        std::vector<double> b(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) b[i] = unit(rng) * a[i];
        for (double g : {0.25, 0.5, 1.0}) {
            EXPECT_LE(solid_hull_norm(b, g).sup, solid_hull_norm(a, g).sup * (1 + 1e-15));
            EXPECT_LE(solid_core_norm(b, g).sup, solid_core_norm(a, g).sup * (1 + 1e-15));
        }
    }
}

TEST(SolidHullNorm, CoreControlsHullBlockwise) {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = oracle::random_vector(rng, 1024);
        const auto h = solid_hull_norm(a, 0.75);
        const auto c = solid_core_norm(a, 0.75);
        ASSERT_EQ(h.blocks.size(), c.blocks.size());
        for (std::size_t n = 0; n < h.blocks.size(); ++n) {
            // l2 <= l1 and l1 <= sqrt(len) l2 on each block
            EXPECT_LE(h.blocks[n], c.blocks[n] * (1 + 1e-14));
            EXPECT_LE(c.blocks[n], std::exp2(0.5 * n) * h.blocks[n] * (1 + 1e-14));
        }
    }
}

TEST(SolidHullNorm, ZeroPaddingInvariant) {
    std::mt19937_64 rng(8);
    auto a = oracle::random_vector(rng, 128);
    const auto before = solid_hull_norm(a, 0.5);
    a.resize(256, 0.0);
    const auto after = solid_hull_norm(a, 0.5);
    EXPECT_DOUBLE_EQ(before.sup, after.sup);
    EXPECT_EQ(after.blocks.back(), 0.0);
}

TEST(SolidHullNorm, RejectsNonPositiveGamma) {
    std::vector<double> a(8, 1.0);
    EXPECT_THROW(solid_hull_norm(a, 0.0), DomainError);
    EXPECT_THROW(solid_core_norm(a, -1.0), DomainError);
}

TEST(HullMapping, BoundHoldsForCarlesonMeasures) {
    std::mt19937_64 rng(13);
    const std::size_t N = 1024;
    for (const auto& [m, s] : {std::pair{MeasureSpec::beta(2.0), 2.0}, {MeasureSpec::lebesgue(), 1.0},
                               {MeasureSpec::beta(1.5), 1.5}}) {
        const auto ms = moments(m, 2 * N);
        for (int trial = 0; trial < 10; ++trial) {
            auto a = oracle::random_vector(rng, N);
            const double h = solid_hull_norm(a, 0.5).sup;
            for (double& x : a) x /= h;
            const auto r = hull_mapping_check(ms, a, 0.5, s);
            ASSERT_TRUE(r.bound_ok.has_value());
            EXPECT_TRUE(*r.bound_ok) << m.describe() << " " << r.image_norm << " > " << r.weighted_l1;
            const auto rc = hull_mapping_check(ms, a, 1.0, s, true);
            ASSERT_TRUE(rc.bound_ok.has_value());
            EXPECT_TRUE(*rc.bound_ok);
        }
    }
}

TEST(HullMapping, BelowRangeLeavesBoundUnset) {
    const auto ms = moments(MeasureSpec::lebesgue(), 64);
    std::vector<double> a(32, 1.0);
    EXPECT_FALSE(hull_mapping_check(ms, a, 0.25, 1.0).bound_ok.has_value());
    EXPECT_FALSE(hull_mapping_check(ms, a, 0.75, 1.0, true).bound_ok.has_value());
    EXPECT_THROW(hull_mapping_check(ms, a, 0.5, 0.0), DomainError);
}
