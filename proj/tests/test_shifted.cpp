#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "csmp/shifted.hpp"
#include "csmp/signals.hpp"
#include "oracles.hpp"

using namespace csmp;

TEST(WindowCount, Formula) {
    EXPECT_EQ(window_count(100, 100, 10), 1u);
    EXPECT_EQ(window_count(99, 100, 10), 0u);
    EXPECT_EQ(window_count(801, 150, 37), 18u);
    EXPECT_EQ(default_hop(150), 37u);
    EXPECT_EQ(default_hop(3), 1u);
}

TEST(ShiftedCsmp, ConstantSignal) {
    const std::vector<double> x(400, 1.0);
    const auto plane = shifted_csmp(x, {10, 50, 25, 3});
    for (const auto& p : dominant_track(plane)) {
        EXPECT_EQ(p.period, 1);
        EXPECT_FALSE(p.empty);
    }
}

TEST(ShiftedCsmp, PeriodSwitchAcrossJunction) {
    const auto head = oracle::cosine(5, 2000);
    const auto tail = oracle::cosine(8, 2000);
    std::vector<double> x(4000);
    std::copy(head.begin(), head.end(), x.begin());
    std::copy(tail.begin(), tail.end(), x.begin() + 2000);
    const auto plane = shifted_csmp(x, {20, 100, 50, 10});
    ASSERT_EQ(plane.window_count(), window_count(4000, 100, 50));
    for (const auto& p : dominant_track(plane)) {
        const double start = p.window_center - 49.5;
        if (start + 100 <= 2000) {
            ASSERT_EQ(p.period, 5) << p.window_center;
        } else if (start >= 2000) {
            ASSERT_EQ(p.period, 8) << p.window_center;
        }
    }
}

TEST(ShiftedCsmp, WindowsMatchIndependentPursuits) {
    const auto x = white_noise(600, 5);
    const ShiftedOptions opt{20, 64, 48, 4, 3};
    const auto plane = shifted_csmp(x, opt);
    for (std::size_t w = 0; w < plane.window_count(); ++w) {
        EXPECT_DOUBLE_EQ(plane.window_centers[w], static_cast<double>(w * 48) + 31.5);
        const auto s = periodic_spectrum(
            decompose(std::span(x).subspan(w * 48, 64), {20, 4, 0.0, ToleranceMode::Absolute}));
        for (Period q = 1; q <= 20; ++q) {
            const double expected = s.strengths.contains(q) ? s.strengths.at(q) : 0.0;
            ASSERT_EQ(plane.cell(w, q), expected);
        }
    }
}

TEST(ShiftedCsmp, ThreadCountDoesNotChangeResult) {
    const auto x = white_noise(900, 9);
    ShiftedOptions opt{30, 90, 20, 5, 1};
    const auto serial = shifted_csmp(x, opt);
    opt.threads = 7;
    const auto parallel = shifted_csmp(x, opt);
    EXPECT_EQ(serial.cells, parallel.cells);
    EXPECT_EQ(serial.window_centers, parallel.window_centers);
}

TEST(ShiftedCsmp, DefaultHop) {
    const auto plane = shifted_csmp(std::vector<double>(300, 1.0), {10, 40, 0, 2});
    EXPECT_EQ(plane.hop, 10u);
}

TEST(ShiftedCsmp, Errors) {
    const std::vector<double> x(500, 1.0);
    EXPECT_THROW((void)shifted_csmp(x, {100, 50, 10, 5}), InvalidArgument);
    EXPECT_THROW((void)shifted_csmp(x, {100, 100, 10, 5}), InvalidArgument);
    EXPECT_THROW((void)shifted_csmp(x, {10, 600, 10, 5}), InvalidArgument);
    EXPECT_THROW((void)shifted_csmp(x, {0, 50, 10, 5}), InvalidArgument);
    EXPECT_THROW((void)shifted_csmp(x, {10, 50, 10, 0}), InvalidArgument);
}

TEST(DominantTrack, AllZeroPlaneIsFlaggedEmpty) {
    TimePeriodPlane plane;
    plane.max_q = 4;
    plane.window_centers = {10.0, 20.0};
    plane.cells.assign(8, 0.0);
    const auto track = dominant_track(plane);
    ASSERT_EQ(track.size(), 2u);
    for (const auto& p : track) {
        EXPECT_EQ(p.period, 1);
        EXPECT_TRUE(p.empty);
    }
}

TEST(DominantTrack, TiesGoToSmallerPeriod) {
    TimePeriodPlane plane;
    plane.max_q = 3;
    plane.window_centers = {0.0};
    plane.cells = {0.0, 2.0, 2.0};
    EXPECT_EQ(dominant_track(plane)[0].period, 2);
}

TEST(DominantTrack, ChirpTrackRisesOverTheBand) {
    const double a = 0.01 / (2.0 * std::numbers::pi);
    const auto x = inverse_chirp(a, 2.0, 10.0, 0.01);
    const auto track = dominant_track(shifted_csmp(x, {100, 150, 0, 10}));
    ASSERT_EQ(track.size(), 18u);
    std::vector<Period> band;
    for (const auto& p : track) {
        const double expected = chirp_period_samples(a, 2.0 + p.window_center * 0.01, 0.01);
        if (expected >= 10.0 && expected <= 75.0) {
            band.push_back(p.period);
        }
    }
    ASSERT_GE(band.size(), 10u);
    EXPECT_LT(band.front(), 20);
    EXPECT_GT(band.back(), 60);
    EXPECT_TRUE(std::is_sorted(band.begin(), band.end()));
}
