#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "gof/binning.hpp"
#include "gof/errors.hpp"
#include "gof/normality_tests.hpp"

namespace {

using gof::Sample;

std::vector<double> affine(std::vector<double> x, double a, double b) {
    for (double& v : x) v = a + b * v;
    return x;
}

std::vector<gof::TestResult> battery(const Sample& s) {
    const std::vector<gof::TestKind> tests{gof::TestKind::KS_D,       gof::TestKind::KS_Dminus,
                                           gof::TestKind::KS_Dplus,   gof::TestKind::Kuiper_V,
                                           gof::TestKind::AndersonDarling, gof::TestKind::WilksShapiro,
                                           gof::TestKind::CramerVonMises,  gof::TestKind::JarqueBera,
                                           gof::TestKind::ZSkewness,  gof::TestKind::ZKurtosis};
    return gof::run_battery(s, gof::fit_normal(s), gof::BinningRule::DataplotWidth, 0.05, tests);
}

TEST(Properties, LocationScaleInvariance) {
    std::mt19937_64 rng(2024);
    for (std::size_t n : {12u, 60u, 206u}) {
        const auto raw = gof::testing::normal_draws(rng, n);
        const auto base = battery(Sample::make(raw));
        for (auto [a, b] : std::vector<std::pair<double, double>>{{3.7, 2.5}, {-120.0, 0.01}, {1e4, 300.0}}) {
            const auto moved = battery(Sample::make(affine(raw, a, b)));
            ASSERT_EQ(moved.size(), base.size());
            for (std::size_t i = 0; i < base.size(); ++i) {
                ASSERT_TRUE(base[i].ok() && moved[i].ok());
                EXPECT_NEAR(moved[i].statistic, base[i].statistic, 1e-10 * std::max(1.0, std::abs(base[i].statistic)))
                    << gof::test_key(base[i].test) << " n=" << n << " a=" << a << " b=" << b;
                EXPECT_NEAR(moved[i].p(), base[i].p(), 1e-9) << gof::test_key(base[i].test);
            }
        }
    }
}

TEST(Properties, ChiSquaredClassesScaleWithData) {
    const auto& s = gof::testing::set2();
    const auto moved = Sample::make(affine(std::vector<double>(s.values().begin(), s.values().end()), 1.0, 3.0));
    const auto a = gof::build_classes(s, gof::fit_normal(s), gof::BinningRule::HartleyEqualProbability);
    const auto b = gof::build_classes(moved, gof::fit_normal(moved), gof::BinningRule::HartleyEqualProbability);
    EXPECT_EQ(a.observed, b.observed);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a.expected[i], b.expected[i], 1e-9);
}

TEST(Properties, PermutationInvariance) {
    std::mt19937_64 rng(77);
    auto raw = std::vector<double>(gof::testing::set1().values().begin(), gof::testing::set1().values().end());
    const auto ref = gof::run_battery(gof::testing::set1(), gof::fit_normal(gof::testing::set1()),
                                      gof::BinningRule::DataplotWidth, 0.05, gof::extended_tests());
    for (int rep = 0; rep < 5; ++rep) {
        std::shuffle(raw.begin(), raw.end(), rng);
        const auto s = Sample::make(raw);
        const auto b = gof::run_battery(s, gof::fit_normal(s), gof::BinningRule::DataplotWidth, 0.05,
                                        gof::extended_tests());
        EXPECT_EQ(b, ref);
    }
}

TEST(Properties, MergeIdempotenceRandom) {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<std::size_t> count(0, 12);
    std::uniform_int_distribution<std::size_t> len(2, 15);
    for (int rep = 0; rep < 500; ++rep) {
        gof::FrequencyClasses fc;
        const std::size_t k = len(rng);
        fc.edges.push_back(-INFINITY);
        for (std::size_t i = 0; i < k; ++i) {
            fc.observed.push_back(count(rng));
            fc.expected.push_back(1.0 + static_cast<double>(i));
            fc.edges.push_back(i + 1 == k ? INFINITY : static_cast<double>(i));
        }
        if (fc.total_observed() < 2 * gof::kMinClassCount) continue;
        gof::FrequencyClasses once;
        try {
            once = gof::merge_small_classes(fc);
        } catch (const gof::Error&) {
            continue;
        }
        EXPECT_EQ(gof::merge_small_classes(once), once);
        EXPECT_EQ(once.total_observed(), fc.total_observed());
        EXPECT_DOUBLE_EQ(once.total_expected(), fc.total_expected());
        EXPECT_EQ(once.edges.size(), once.size() + 1);
    }
}

TEST(Properties, PValuesInUnitInterval) {
    std::mt19937_64 rng(31);
    std::exponential_distribution<double> expo(1.0);
    for (int rep = 0; rep < 30; ++rep) {
        std::vector<double> raw(50);
        for (double& v : raw) v = expo(rng);
        const auto s = Sample::make(raw);
        for (const auto& r : gof::run_battery(s, gof::fit_normal(s), gof::BinningRule::HartleyEqualProbability, 0.05,
                                              gof::extended_tests())) {
            for (const auto& p : r.p_values) {
                EXPECT_GE(p.p, 0.0);
                EXPECT_LE(p.p, 1.0);
            }
        }
    }
}

}  // namespace
