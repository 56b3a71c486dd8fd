#pragma once

// Stage 1 of the pursuit: per-period energy estimates from the autocorrelation,
// the divisor recursion that isolates exactly-periodic energy, and the
// periodicity metric used to rank candidate periods.

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "csmp/error.hpp"
#include "csmp/ramanujan.hpp"

namespace csmp {

/// Per-period tables, indexed directly by q (entry 0 is unused and zero).
struct PeriodEnergyTable {
    Period max_q = 0;
    std::size_t n_len = 0;
    std::vector<double> est_energies;  // autocorrelation estimate of the energy in P_q
    std::vector<double> energies;      // after removing the proper divisors
    std::vector<double> metrics;       // (N + q) / (2q) * energies[q]
};

namespace detail {

inline void fft_in_place(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) {
            j ^= bit;
        }
        j ^= bit;
        if (i < j) {
            std::swap(a[i], a[j]);
        }
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double angle = 2.0 * std::numbers::pi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
        const std::size_t half = len / 2;
        std::vector<std::complex<double>> twiddle(half);
        for (std::size_t k = 0; k < half; ++k) {
            twiddle[k] = std::polar(1.0, angle * static_cast<double>(k));
        }
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < half; ++k) {
                const auto u = a[i + k];
                const auto v = a[i + k + half] * twiddle[k];
                a[i + k] = u + v;
                a[i + k + half] = u - v;
            }
        }
    }
}

inline std::vector<double> autocorrelation_direct(std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<double> r(n, 0.0);
    for (std::size_t lag = 0; lag < n; ++lag) {
        double sum = 0.0;
        for (std::size_t i = 0; i + lag < n; ++i) {
            sum += x[i] * x[i + lag];
        }
        r[lag] = sum;
    }
    return r;
}

inline std::vector<double> autocorrelation_fft(std::span<const double> x) {
    const std::size_t n = x.size();
    const std::size_t size = std::bit_ceil(2 * n);
    std::vector<std::complex<double>> a(size);
    std::copy(x.begin(), x.end(), a.begin());
    fft_in_place(a, false);
    for (auto& v : a) {
        v = std::norm(v);
    }
    fft_in_place(a, true);
    std::vector<double> r(n);
    for (std::size_t lag = 0; lag < n; ++lag) {
        r[lag] = a[lag].real() / static_cast<double>(size);
    }
    return r;
}

/// Above this length the O(N log N) route is used.
inline constexpr std::size_t kDirectAutocorrelationLimit = 2048;

}  // namespace detail

/// Linear (non-circular), un-normalized autocorrelation for lags 0..N-1.
[[nodiscard]] inline std::vector<double> autocorrelation(std::span<const double> x) {
    detail::require(!x.empty(), "autocorrelation of an empty signal");
    if (x.size() <= detail::kDirectAutocorrelationLimit) {
        return detail::autocorrelation_direct(x);
    }
    return detail::autocorrelation_fft(x);
}

/// (q/N) * (phi(0) + 2 * sum_{l=1}^{M-1} phi(l q)), M = floor(N/q), clamped at 0.
[[nodiscard]] inline double periodic_energy_from_autocorrelation(std::span<const double> acf, Period q) {
    const auto n = static_cast<Period>(acf.size());
    detail::require(q >= 1 && q <= n, "period " + std::to_string(q) + " outside [1, N=" + std::to_string(n) + "]");
    const Period repeats = n / q;
    double sum = acf[0];
    for (Period l = 1; l < repeats; ++l) {
        sum += 2.0 * acf[static_cast<std::size_t>(l * q)];
    }
    return std::max(0.0, static_cast<double>(q) / static_cast<double>(n) * sum);
}

[[nodiscard]] inline double periodic_energy_estimate(std::span<const double> x, Period q) {
    detail::require(!x.empty(), "empty signal");
    detail::require(q >= 1 && q <= static_cast<Period>(x.size()),
                    "period " + std::to_string(q) + " exceeds signal length " + std::to_string(x.size()));
    return periodic_energy_from_autocorrelation(autocorrelation(x), q);
}

/// (N + q) / (2q) * energy.
[[nodiscard]] inline double periodicity_metric(double energy, Period q, std::size_t n_len) {
    return (static_cast<double>(n_len) + static_cast<double>(q)) / (2.0 * static_cast<double>(q)) * energy;
}

[[nodiscard]] inline PeriodEnergyTable exact_periodic_energies_from_autocorrelation(std::span<const double> acf,
                                                                                    Period max_q) {
    const auto n = static_cast<Period>(acf.size());
    detail::require(max_q >= 1 && max_q <= n,
                    "max period " + std::to_string(max_q) + " outside [1, N=" + std::to_string(n) + "]");
    const auto size = static_cast<std::size_t>(max_q) + 1;
    PeriodEnergyTable t;
    t.max_q = max_q;
    t.n_len = acf.size();
    t.est_energies.assign(size, 0.0);
    t.energies.assign(size, 0.0);
    t.metrics.assign(size, 0.0);

    // divisor_sum[q] accumulates energies[p] over proper divisors p of q.
    std::vector<double> divisor_sum(size, 0.0);
    for (Period q = 1; q <= max_q; ++q) {
        const auto iq = static_cast<std::size_t>(q);
        t.est_energies[iq] = periodic_energy_from_autocorrelation(acf, q);
        t.energies[iq] = std::max(0.0, t.est_energies[iq] - divisor_sum[iq]);
        t.metrics[iq] = periodicity_metric(t.energies[iq], q, t.n_len);
        for (Period multiple = 2 * q; multiple <= max_q; multiple += q) {
            divisor_sum[static_cast<std::size_t>(multiple)] += t.energies[iq];
        }
    }
    return t;
}

[[nodiscard]] inline PeriodEnergyTable exact_periodic_energies(std::span<const double> x, Period max_q) {
    detail::require(!x.empty(), "empty signal");
    detail::require(max_q >= 1 && max_q <= static_cast<Period>(x.size()),
                    "max period " + std::to_string(max_q) + " outside [1, N=" + std::to_string(x.size()) + "]");
    return exact_periodic_energies_from_autocorrelation(autocorrelation(x), max_q);
}

/// argmax_q metrics[q], ties toward the smaller q; nullopt when every metric is zero.
[[nodiscard]] inline std::optional<Period> dominant_period(const PeriodEnergyTable& table) {
    std::optional<Period> best;
    double best_value = 0.0;
    for (Period q = 1; q <= table.max_q; ++q) {
        const double value = table.metrics[static_cast<std::size_t>(q)];
        if (value > best_value) {
            best_value = value;
            best = q;
        }
    }
    return best;
}

}  // namespace csmp
