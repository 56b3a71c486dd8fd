#pragma once

// Ramanujan Fourier transform baseline: one projection per period onto the
// unit-normalized periodic extension of c_q.

#include <cmath>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "csmp/error.hpp"
#include "csmp/ramanujan.hpp"

namespace csmp {

struct RftSpectrum {
    Period max_q = 0;
    std::map<Period, double> strengths;
};

/// c_q(n), n = 0..N-1, scaled to unit norm.
[[nodiscard]] inline std::vector<double> ramanujan_template(Period q, std::size_t n_len) {
    detail::require(n_len >= 1, "template length must be >= 1");
    std::vector<double> one_period(static_cast<std::size_t>(q));
    for (Period n = 0; n < q; ++n) {
        one_period[static_cast<std::size_t>(n)] = ramanujan_sum(q, n);
    }
    std::vector<double> t(n_len);
    double energy = 0.0;
    for (std::size_t n = 0; n < n_len; ++n) {
        t[n] = one_period[n % static_cast<std::size_t>(q)];
        energy += t[n] * t[n];
    }
    // c_q(0) = phi(q) > 0, so the template is never zero.
    const double scale = 1.0 / std::sqrt(energy);
    for (double& v : t) {
        v *= scale;
    }
    return t;
}

[[nodiscard]] inline RftSpectrum rft_spectrum(std::span<const double> x, Period max_q) {
    detail::require(!x.empty(), "empty signal");
    detail::require(max_q >= 1 && max_q <= static_cast<Period>(x.size()),
                    "max period " + std::to_string(max_q) + " outside [1, N=" + std::to_string(x.size()) + "]");
    RftSpectrum s;
    s.max_q = max_q;
    for (Period q = 1; q <= max_q; ++q) {
        const std::vector<double> t = ramanujan_template(q, x.size());
        double dot = 0.0;
        for (std::size_t n = 0; n < x.size(); ++n) {
            dot += x[n] * t[n];
        }
        s.strengths[q] = dot * dot;
    }
    return s;
}

}  // namespace csmp
