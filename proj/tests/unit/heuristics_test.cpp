#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "extsum/config_gen.hpp"
#include "extsum/error.hpp"
#include "extsum/exact.hpp"
#include "extsum/heuristics.hpp"
#include "test_support.hpp"

namespace extsum {
namespace {

TEST(BangAscent, CertificateOnRandomInputs) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 300; ++trial) {
        const int d = std::uniform_int_distribution<int>(1, 8)(rng);
        const int n = std::uniform_int_distribution<int>(1, 20)(rng);
        const Configuration c = gen_random_uniform(d, n, rng());
        const BangResult b = bang_ascent(c, std::nullopt, rng());
        EXPECT_GE(b.certificate.min_margin, 1.0 - 1e-9);
        EXPECT_GE(b.result.value, std::sqrt(static_cast<double>(n)) - 1e-9);
        EXPECT_EQ(b.result.selection.signs.front(), 1);
        EXPECT_EQ(b.result.selection.size(), c.size());
        // Flip-local maximality, checked from scratch.
        for (std::size_t i = 0; i < c.size(); ++i) {
            SignedSelection flipped = b.result.selection;
            flipped.signs[i] = -flipped.signs[i];
            EXPECT_LE(norm(signed_sum(c, flipped)), b.result.value + 1e-9);
        }
        // |s|^2 = Σ margins.
        double total = 0.0;
        for (double m : b.certificate.margins) total += m;
        EXPECT_NEAR(total, b.result.value * b.result.value, 1e-9);
    }
}

TEST(BangAscent, NeverExceedsExact) {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = std::uniform_int_distribution<int>(1, 12)(rng);
        const Configuration c = gen_random_uniform(3, n, rng());
        EXPECT_LE(bang_ascent(c).result.value, max_over_selections(c, c.size()).value + 1e-12);
    }
}

TEST(BangAscent, InitialSignsAreValidated) {
    const Configuration c = gen_simplex(2);
    EXPECT_THROW(bang_ascent(c, std::vector<int>{1, 1}), PreconditionError);
    EXPECT_THROW(bang_ascent(c, std::vector<int>{1, 0, 1}), PreconditionError);
    const BangResult b = bang_ascent(c, std::vector<int>{1, 1, 1});
    EXPECT_NEAR(b.result.value, 2.0, 1e-12);
}

TEST(BangAscent, DeterministicForSeed) {
    const Configuration c = gen_random_uniform(4, 15, 8);
    EXPECT_EQ(bang_ascent(c, std::nullopt, 3).result.selection, bang_ascent(c, std::nullopt, 3).result.selection);
}

TEST(CapGreedy, NeverExceedsExactAndGuarantee) {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 150; ++trial) {
        const auto inst = testing::random_instance(rng, 2, 5, 1, 10);
        const auto k = static_cast<std::size_t>(inst.k);
        const CapGreedyResult g = cap_greedy_selection(inst.config, k);
        const double exact = max_over_selections(inst.config, k).value;
        EXPECT_LE(g.result.value, exact + 1e-12);
        EXPECT_EQ(g.result.selection.size(), k);
        EXPECT_NEAR(cap_measure(inst.d, g.radius), static_cast<double>(k) / (2.0 * inst.n), 1e-12);
        if (g.guaranteed) {
            EXPECT_GE(g.result.value, k * std::cos(g.radius) - 1e-9);
        }
    }
}

TEST(CapGreedy, RecoversCopies) {
    // Four copies each of e1, e2, e3: a cap around e1 holds 4 points of ±ω.
    const Configuration c = gen_orthonormal_copies(3, 4);
    const CapGreedyResult g = cap_greedy_selection(c, 4);
    EXPECT_NEAR(g.result.value, 4.0, 1e-12);
    EXPECT_TRUE(g.guaranteed);
}

TEST(AveragingBound, Values) {
    EXPECT_NEAR(averaging_lower_bound(gen_random_uniform(2, 5, 1), 4), 2.54647908947032537, 1e-14);
    EXPECT_NEAR(averaging_lower_bound(gen_random_uniform(3, 5, 1), 1), 0.5, 1e-15);
    EXPECT_THROW(averaging_lower_bound(gen_random_uniform(1, 5, 1), 1), PreconditionError);
}

TEST(AveragingBound, BelowExact) {
    std::mt19937_64 rng(34);
    for (int trial = 0; trial < 100; ++trial) {
        const auto inst = testing::random_instance(rng, 2, 6, 1, 9);
        const auto k = static_cast<std::size_t>(inst.k);
        EXPECT_LE(averaging_lower_bound(inst.config, k), max_over_selections(inst.config, k).value + 1e-9);
    }
}

}  // namespace
}  // namespace extsum
