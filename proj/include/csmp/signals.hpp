#pragma once

// Synthetic inputs: sums of cosines with hidden periods, the inverse chirp
// sin(1/(a t)) and seeded Gaussian white noise.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "csmp/error.hpp"
#include "csmp/ramanujan.hpp"

namespace csmp {

/// x[n] = sum_{q in periods} cos(2 pi n / q), n = 0..N-1.
[[nodiscard]] inline std::vector<double> sum_of_cosines(std::span<const Period> periods, std::size_t n_len) {
    detail::require(!periods.empty(), "period set must not be empty");
    detail::require(n_len >= 1, "signal length must be >= 1");
    for (Period q : periods) {
        detail::require(q >= 1, "invalid period " + std::to_string(q) + " in period set");
    }
    std::vector<double> x(n_len, 0.0);
    for (Period q : periods) {
        for (std::size_t n = 0; n < n_len; ++n) {
            // Reduce the phase first so that long signals keep exact periodicity.
            const auto phase = static_cast<double>(static_cast<Period>(n) % q);
            x[n] += std::cos(2.0 * std::numbers::pi * phase / static_cast<double>(q));
        }
    }
    return x;
}

[[nodiscard]] inline std::vector<double> sum_of_cosines(std::initializer_list<Period> periods, std::size_t n_len) {
    return sum_of_cosines(std::span<const Period>(periods.begin(), periods.size()), n_len);
}

/// Number of samples t0, t0 + dt, ... not past t1; t1 itself is kept when it
/// lies within dt/2 of the grid.
[[nodiscard]] inline std::size_t chirp_sample_count(double t0, double t1, double dt) {
    return static_cast<std::size_t>(std::floor((t1 - t0) / dt + 0.5)) + 1;
}

/// sin(1 / (a t)) sampled at t = t0 + n dt. With dt the sample step, the
/// instantaneous period at time t is 2 pi a t^2 / dt samples.
[[nodiscard]] inline std::vector<double> inverse_chirp(double a, double t0, double t1, double dt) {
    detail::require(a > 0.0, "chirp constant a must be > 0");
    detail::require(t0 > 0.0, "chirp start time must be > 0 (singular at t = 0)");
    detail::require(t1 > t0, "chirp end time must exceed start time");
    detail::require(dt > 0.0, "chirp sample step must be > 0");
    const std::size_t count = chirp_sample_count(t0, t1, dt);
    std::vector<double> x(count);
    for (std::size_t n = 0; n < count; ++n) {
        const double t = t0 + static_cast<double>(n) * dt;
        x[n] = std::sin(1.0 / (a * t));
    }
    return x;
}

/// Instantaneous period, in samples, of inverse_chirp(a, ..., dt) at time t.
[[nodiscard]] inline double chirp_period_samples(double a, double t, double dt) {
    return 2.0 * std::numbers::pi * a * t * t / dt;
}

/// Standard normal samples. The stream is std::mt19937_64 (fully specified by
/// the standard) mapped to (0, 1) with 53-bit resolution and transformed by
/// Box-Muller, so a seed gives the same vector on every platform.
[[nodiscard]] inline std::vector<double> white_noise(std::size_t n_len, std::uint64_t seed) {
    detail::require(n_len >= 1, "noise length must be >= 1");
    std::mt19937_64 engine(seed);
    const auto uniform = [&engine] {
        return (static_cast<double>(engine() >> 11) + 0.5) * 0x1.0p-53;
    };
    std::vector<double> x(n_len);
    for (std::size_t n = 0; n < n_len; n += 2) {
        const double radius = std::sqrt(-2.0 * std::log(uniform()));
        const double angle = 2.0 * std::numbers::pi * uniform();
        x[n] = radius * std::cos(angle);
        if (n + 1 < n_len) {
            x[n + 1] = radius * std::sin(angle);
        }
    }
    return x;
}

}  // namespace csmp
