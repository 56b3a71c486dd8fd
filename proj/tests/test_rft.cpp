#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "csmp/pursuit.hpp"
#include "csmp/rft.hpp"
#include "csmp/signals.hpp"
#include "oracles.hpp"

using namespace csmp;

TEST(RamanujanTemplate, UnitNormPeriodicExtension) {
    const auto t = ramanujan_template(5, 650);
    EXPECT_NEAR(oracle::energy(t), 1.0, 1e-12);
    for (std::size_t n = 5; n < t.size(); ++n) {
        ASSERT_DOUBLE_EQ(t[n], t[n - 5]);
    }
    EXPECT_GT(t[0], 0.0);
    EXPECT_NEAR(t[1] / t[0], -0.25, 1e-12);  // c_5(1) / c_5(0) = -1 / 4
    EXPECT_THROW((void)ramanujan_template(5, 0), InvalidArgument);
}

TEST(RftSpectrum, SelfProjection) {
    const auto x = ramanujan_template(5, 650);
    const auto s = rft_spectrum(x, 20);
    EXPECT_NEAR(s.strengths.at(5), 1.0, 1e-12);
    // Templates of distinct periods that both divide N are orthogonal.
    for (Period q : {1, 2, 10, 13}) {
        EXPECT_NEAR(s.strengths.at(q), 0.0, 1e-20) << q;
    }
}

TEST(RftSpectrum, ZeroSignal) {
    const auto s = rft_spectrum(std::vector<double>(40, 0.0), 10);
    EXPECT_EQ(s.max_q, 10);
    ASSERT_EQ(s.strengths.size(), 10u);
    for (const auto& [q, v] : s.strengths) {
        EXPECT_EQ(v, 0.0);
    }
}

TEST(RftSpectrum, CapturesOnlyPartOfLargePeriods) {
    const std::vector<Period> gamma = {5, 12, 25, 26, 57, 58, 70, 85};
    const auto x = sum_of_cosines(gamma, 650);
    const auto rft = rft_spectrum(x, 100);
    const auto csmp = periodic_spectrum(decompose(x, {100, 20, 0.0, ToleranceMode::Relative}));
    for (Period q : {57, 70, 85}) {
        EXPECT_LT(rft.strengths.at(q), 0.5 * csmp.strengths.at(q)) << q;
    }
}

TEST(RftSpectrum, Errors) {
    EXPECT_THROW((void)rft_spectrum(std::vector<double>{}, 1), InvalidArgument);
    EXPECT_THROW((void)rft_spectrum(std::vector<double>(5, 1.0), 6), InvalidArgument);
}
