#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "csmp/pursuit.hpp"
#include "csmp/signals.hpp"
#include "oracles.hpp"

using namespace csmp;

namespace {

std::vector<double> one_atom(Period q, Period i, std::size_t n_len) {
    const auto g = atom_vector(make_atom(q, i, n_len));
    std::vector<double> x(n_len);
    for (std::size_t n = 0; n < n_len; ++n) {
        x[n] = 2.0 * g[n].real();
    }
    return x;
}

double total_strength(const PeriodicSpectrum& s) {
    double t = 0.0;
    for (const auto& [q, v] : s.strengths) {
        t += v;
    }
    return t;
}

}  // namespace

TEST(Decompose, OneAtomSignal) {
    const auto x = one_atom(5, 1, 650);
    const Decomposition d = decompose(x, {10, 20, 0.0, ToleranceMode::Relative});
    ASSERT_GE(d.components.size(), 1u);
    EXPECT_EQ(d.components[0].atom.q, 5);
    EXPECT_LT(d.residual_energy_trace[0], 1e-12 * d.input_energy);
    EXPECT_LT(error_rate_trace(d)[0], 1e-12);
    const auto rec = reconstruct(d);
    for (std::size_t n = 0; n < x.size(); ++n) {
        ASSERT_NEAR(rec[n], x[n], 1e-9);
    }
    const auto s = periodic_spectrum(d);
    EXPECT_NEAR(s.strengths.at(5), d.input_energy, 1e-9 * d.input_energy);
}

TEST(Decompose, OneAtomStopsOnTolerance) {
    const auto x = one_atom(5, 1, 650);
    const Decomposition d = decompose(x, {10, 20, 1e-12, ToleranceMode::Relative});
    EXPECT_EQ(d.components.size(), 1u);
    EXPECT_EQ(d.stop_reason, StopReason::Tolerance);
}

TEST(Decompose, StopsOnceTheResidualIsRoundingNoise) {
    const auto x = one_atom(7, 2, 70);
    const Decomposition d = decompose(x, {10, 8, 0.0, ToleranceMode::Relative});
    EXPECT_EQ(d.components.size(), 1u);
    EXPECT_EQ(d.stop_reason, StopReason::Stalled);
    EXPECT_EQ(periodic_spectrum(d).strengths.size(), 1u);
}

TEST(Decompose, ZeroSignal) {
    const std::vector<double> x(50, 0.0);
    const Decomposition d = decompose(x, {10, 5, 0.0, ToleranceMode::Absolute});
    EXPECT_TRUE(d.components.empty());
    EXPECT_EQ(d.stop_reason, StopReason::Tolerance);
    EXPECT_TRUE(periodic_spectrum(d).strengths.empty());
    EXPECT_EQ(reconstruct(d), x);
    EXPECT_TRUE(error_rate_trace(d).empty());
}

TEST(Decompose, LongExampleRecoversEveryHiddenPeriod) {
    const std::vector<Period> gamma = {5, 12, 25, 26, 57, 58, 70, 85};
    const auto x = sum_of_cosines(gamma, 1950);
    const Decomposition d = decompose(x, {100, 20, 0.0, ToleranceMode::Relative});
    const auto s = periodic_spectrum(d);
    const double total = total_strength(s);
    std::set<Period> support;
    for (const auto& [q, v] : s.strengths) {
        if (v >= 0.05 * total) {
            support.insert(q);
        }
    }
    EXPECT_EQ(support, std::set<Period>(gamma.begin(), gamma.end()));
}

TEST(Decompose, ShortExampleMissesPeriod58) {
    const std::vector<Period> gamma = {5, 12, 25, 26, 57, 58, 70, 85};
    const auto x = sum_of_cosines(gamma, 650);
    const auto s = periodic_spectrum(decompose(x, {100, 20, 0.0, ToleranceMode::Relative}));
    const double total = total_strength(s);
    const double s58 = s.strengths.contains(58) ? s.strengths.at(58) : 0.0;
    EXPECT_LT(s58, 0.05 * total);
    const double reference57 = oracle::pair_projection_energy(oracle::cosine(57, 650), 57, 1);
    EXPECT_GT(s.strengths.at(57), reference57);
}

TEST(Decompose, EnergyBookkeepingAndMonotoneTrace) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        const auto x = oracle::uniform_signal(rng, 120 + static_cast<std::size_t>(trial) * 7);
        const Decomposition d = decompose(x, {30, 15, 0.0, ToleranceMode::Relative});
        double sum = 0.0;
        for (const auto& c : d.components) {
            sum += c.energy;
        }
        EXPECT_NEAR(sum + oracle::energy(d.residual), d.input_energy, 1e-8 * d.input_energy);
        for (std::size_t l = 1; l < d.residual_energy_trace.size(); ++l) {
            ASSERT_LE(d.residual_energy_trace[l], d.residual_energy_trace[l - 1]);
        }
        const auto rec = reconstruct(d);
        for (std::size_t n = 0; n < x.size(); ++n) {
            ASSERT_NEAR(rec[n] + d.residual[n], x[n], 1e-10);
        }
    }
}

TEST(Decompose, AbsoluteTolerance) {
    const auto x = sum_of_cosines({4, 9}, 360);
    const Decomposition d = decompose(x, {20, 50, 1e-6, ToleranceMode::Absolute});
    EXPECT_EQ(d.stop_reason, StopReason::Tolerance);
    EXPECT_LE(std::sqrt(d.residual_energy_trace.back()), 1e-6);
}

TEST(Decompose, InsufficientMaxPeriodPlateaus) {
    const auto x = sum_of_cosines({7, 10, 151, 163}, 400);
    const auto rates = error_rate_trace(decompose(x, {20, 100, 0.0, ToleranceMode::Relative}));
    ASSERT_FALSE(rates.empty());
    EXPECT_GT(rates.back(), 0.4);
}

TEST(Decompose, Errors) {
    const std::vector<double> x(20, 1.0);
    EXPECT_THROW((void)decompose(std::vector<double>{}, {1, 1, 0.0, ToleranceMode::Relative}), InvalidArgument);
    EXPECT_THROW((void)decompose(x, {21, 1, 0.0, ToleranceMode::Relative}), InvalidArgument);
    EXPECT_THROW((void)decompose(x, {0, 1, 0.0, ToleranceMode::Relative}), InvalidArgument);
    EXPECT_THROW((void)decompose(x, {5, 0, 0.0, ToleranceMode::Relative}), InvalidArgument);
    EXPECT_THROW((void)decompose(x, {5, 1, -1.0, ToleranceMode::Relative}), InvalidArgument);
}

TEST(DominantComponent, PicksLargestCoefficient) {
    const auto a = one_atom(9, 1, 90);
    const auto b = one_atom(9, 3, 90);
    std::vector<double> x(90);
    for (std::size_t n = 0; n < 90; ++n) {
        x[n] = 0.5 * a[n] + 2.0 * b[n];
    }
    const Component c = dominant_component(x, 9);
    EXPECT_EQ(c.atom.i, 3);
    EXPECT_NEAR(std::abs(c.alpha), 2.0, 1e-12);
}

TEST(PeriodicSpectrum, SingleComponent) {
    const auto x = one_atom(7, 1, 70);
    Decomposition d;
    d.params.max_q = 10;
    d.residual.assign(70, 0.0);
    d.components.push_back(project(x, make_atom(7, 1, 70)));
    const auto s = periodic_spectrum(d);
    ASSERT_EQ(s.strengths.size(), 1u);
    EXPECT_NEAR(s.strengths.at(7), d.components[0].energy, 1e-12);
    EXPECT_NEAR(s.component_energy.at(7), d.components[0].energy, 1e-12);
}

TEST(ErrorRate, NoiseConvergesSlowerThanPeriodicSignal) {
    const auto noise = white_noise(1000, 3);
    const auto periodic = sum_of_cosines({7, 10, 33, 41}, 1000);
    const PursuitOptions opt{100, 40, 0.0, ToleranceMode::Relative};
    const auto rn = error_rate_trace(decompose(noise, opt));
    const auto rp = error_rate_trace(decompose(periodic, opt));
    EXPECT_GT(rn.back(), 10 * rp.back());
}

TEST(StopReason, Names) {
    EXPECT_STREQ(to_string(StopReason::MaxIterations), "max_iterations");
    EXPECT_STREQ(to_string(StopReason::Tolerance), "tolerance");
    EXPECT_STREQ(to_string(StopReason::NoPeriodicContent), "no_periodic_content");
    EXPECT_STREQ(to_string(StopReason::Stalled), "stalled");
}
