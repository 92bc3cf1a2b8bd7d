#include <gtest/gtest.h>

#include "support.hpp"

using namespace arrangelab;

namespace {
Combinatorics C(std::vector<int> s) { return Combinatorics::from_sizes(std::move(s)); }
}  // namespace

TEST(Invariants, GenericFiberEuler) {
    EXPECT_EQ(euler_generic_fiber(C({1, 1})), 0);
    EXPECT_EQ(euler_generic_fiber(C({1, 1, 1})), -3);
    EXPECT_EQ(euler_generic_fiber(C({3, 2, 1, 1})), -27);
}

TEST(Invariants, ZeroFiberEuler) {
    EXPECT_EQ(euler_zero_fiber(C({1, 1})), 1);
    EXPECT_EQ(euler_zero_fiber(C({1, 1, 1})), 0);
    EXPECT_EQ(euler_zero_fiber(C({3, 2, 1, 1})), -10);
}

TEST(Invariants, MilnorNumber) {
    EXPECT_EQ(mu_zero(C({1, 1})), 1);
    EXPECT_EQ(mu_zero(C({3})), 0);
    EXPECT_EQ(mu_zero(C({3, 2, 1, 1})), 17);
}

TEST(Invariants, GeneralZeroFiberEuler) {
    EXPECT_EQ(euler_zero_fiber_general(example_arrangement(2.0)), -1);
    for (int d = 2; d <= 7; ++d) {
        std::vector<Line> lines;
        for (int k = 0; k < d; ++k) lines.emplace_back(std::cos(0.4 * k), std::sin(0.4 * k), 0.0);
        EXPECT_EQ(euler_zero_fiber_general(Arrangement(lines)), 1) << "d = " << d;
    }
    EXPECT_EQ(euler_zero_fiber_general(Arrangement({Line(1, 0, 0), Line(0, 1, 0), Line(1, 1, -1)})), 0);
}

TEST(Invariants, PredictedBifurcationCount) {
    EXPECT_EQ(predicted_bifurcation_count(1), 1);
    EXPECT_EQ(predicted_bifurcation_count(-1), 3);
    EXPECT_EQ(predicted_bifurcation_count(0), 2);
}

TEST(Invariants, IdentityOverRandomPartitions) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 2000; ++trial) {
        const int d = 2 + static_cast<int>(rng() % 29);
        const auto comb = C(testsupport::random_partition(rng, d));
        ASSERT_EQ(euler_zero_fiber(comb) - euler_generic_fiber(comb), mu_zero(comb));
        ASSERT_EQ(expected_critical_count(comb), 1 - euler_zero_fiber(comb));
        const std::int64_t pairs = [&] {
            std::int64_t s = 0;
            for (std::int64_t p : comb.class_sizes) s += p * (p - 1) / 2;
            return s;
        }();
        ASSERT_EQ(expected_critical_count(comb), std::int64_t(d - 1) * (d - 2) / 2 - pairs);
    }
}

TEST(Invariants, GeneralFormulaAgreesOnGenericArrangements) {
    std::mt19937_64 rng(43);
    for (int k = 0; k < 100; ++k) {
        const int d = 2 + k % 7;
        const auto arr = testsupport::random_generic(rng, testsupport::random_partition(rng, d), k % 2 == 0);
        EXPECT_EQ(euler_zero_fiber_general(arr), euler_zero_fiber(combinatorics(arr)));
    }
}

TEST(InvariantReport, SevenLines) {
    const auto r = invariant_report(
        Arrangement({Line(0, 1, 0), Line(0, 1, -1), Line(0, 1, -2.5), Line(1, 0, 0), Line(1, 0, -1.7), Line(1, 1, -0.3),
                     Line(1, -1, 0.45)}));
    EXPECT_TRUE(r.genericity.is_generic);
    EXPECT_EQ(r.chi_generic_fiber, -27);
    EXPECT_EQ(r.chi_zero_fiber, -10);
    EXPECT_EQ(r.mu_zero, 17);
    EXPECT_EQ(r.predicted_B_count, 12);
    EXPECT_EQ(r.chi_zero_fiber - *r.chi_generic_fiber, *r.mu_zero);
}

TEST(InvariantReport, NonGenericKeepsGeneralFields) {
    const auto r = invariant_report(example_arrangement(2.0));
    EXPECT_FALSE(r.genericity.is_generic);
    EXPECT_FALSE(r.chi_generic_fiber.has_value());
    EXPECT_FALSE(r.mu_zero.has_value());
    EXPECT_EQ(r.chi_zero_fiber, -1);
    EXPECT_EQ(r.predicted_B_count, 3);
}

TEST(InvariantReport, TwoLines) {
    const auto r = invariant_report(Arrangement({Line(1, 0, 0), Line(0, 1, 0)}));
    EXPECT_EQ(r.chi_zero_fiber, 1);
    EXPECT_EQ(r.predicted_B_count, 1);
}

TEST(InvariantReport, AllParallelHasNoBifurcationPrediction) {
    const auto r = invariant_report(Arrangement({Line(1, 0, 0), Line(1, 0, 1)}));
    EXPECT_FALSE(r.predicted_B_count.has_value());
    EXPECT_TRUE(r.genericity.all_parallel);
}
