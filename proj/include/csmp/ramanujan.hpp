#pragma once

// Number-theoretic primitives behind the Ramanujan subspaces: Euler's totient,
// coprime residues, Ramanujan sums and the conjugate pairing of residues.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <mutex>
#include <numbers>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "csmp/error.hpp"

namespace csmp {

using Period = std::int64_t;

struct PeriodStructure {
    Period q = 1;
    std::vector<Period> residues;  // sorted, all coprime with q
    Period totient = 1;
    Period pair_count = 1;  // M_q
};

struct ConjugatePair {
    Period index = 1;    // i in [1, M_q]
    Period residue = 1;  // k_i
    Period partner = 1;  // q - k_i, or k_i itself for q <= 2
    bool is_real = false;
};

namespace detail {

inline void require_period(Period q) {
    if (q < 1) {
        throw InvalidArgument("invalid period " + std::to_string(q) + ": period must be >= 1");
    }
}

inline Period totient_by_factorization(Period q) {
    Period result = q;
    Period rest = q;
    for (Period p = 2; p * p <= rest; ++p) {
        if (rest % p == 0) {
            while (rest % p == 0) {
                rest /= p;
            }
            result -= result / p;
        }
    }
    if (rest > 1) {
        result -= result / rest;
    }
    return result;
}

class TotientCache {
public:
    Period get(Period q) {
        {
            std::lock_guard lock(mutex_);
            if (auto it = values_.find(q); it != values_.end()) {
                return it->second;
            }
        }
        const Period value = totient_by_factorization(q);
        std::lock_guard lock(mutex_);
        values_.emplace(q, value);
        return value;
    }

private:
    std::mutex mutex_;
    std::unordered_map<Period, Period> values_;
};

inline TotientCache& totient_cache() {
    static TotientCache cache;
    return cache;
}

}  // namespace detail

/// Number of k in [1, q] with gcd(k, q) = 1. Memoized per process.
[[nodiscard]] inline Period euler_totient(Period q) {
    detail::require_period(q);
    return detail::totient_cache().get(q);
}

/// M_q: 1 for q <= 2, phi(q)/2 otherwise.
[[nodiscard]] inline Period pair_count(Period q) {
    detail::require_period(q);
    return q <= 2 ? 1 : euler_totient(q) / 2;
}

/// Sorted k in [1, q] coprime with q. Both q = 1 and q = 2 give {1}.
[[nodiscard]] inline std::vector<Period> coprime_residues(Period q) {
    detail::require_period(q);
    std::vector<Period> residues;
    residues.reserve(static_cast<std::size_t>(euler_totient(q)));
    for (Period k = 1; k <= q; ++k) {
        if (std::gcd(k, q) == 1) {
            residues.push_back(k);
        }
    }
    return residues;
}

[[nodiscard]] inline PeriodStructure period_structure(Period q) {
    PeriodStructure s;
    s.q = q;
    s.residues = coprime_residues(q);
    s.totient = static_cast<Period>(s.residues.size());
    s.pair_count = pair_count(q);
    return s;
}

/// The defining sum of c_q(n) over the coprime residues, before the
/// imaginary part is discarded.
[[nodiscard]] inline std::complex<double> ramanujan_sum_complex(Period q, std::int64_t n) {
    detail::require_period(q);
    const std::int64_t phase = ((n % q) + q) % q;
    std::complex<double> sum{0.0, 0.0};
    for (Period k = 1; k <= q; ++k) {
        if (std::gcd(k, q) != 1) {
            continue;
        }
        const auto step = static_cast<double>((k * phase) % q);
        sum += std::polar(1.0, 2.0 * std::numbers::pi * step / static_cast<double>(q));
    }
    return sum;
}

/// c_q(n), summed directly over the coprime residues. The imaginary part
/// cancels analytically; it is checked and dropped.
[[nodiscard]] inline double ramanujan_sum(Period q, std::int64_t n) {
    const std::complex<double> sum = ramanujan_sum_complex(q, n);
    if (std::abs(sum.imag()) > 1e-9 * std::max<double>(1.0, static_cast<double>(q))) {
        throw NumericalError("ramanujan sum has non-vanishing imaginary part");
    }
    return sum.real();
}

/// The conjugate pairs (k_i, q - k_i) with k_i < q/2, in increasing k_i.
/// For q <= 2 a single real, self-paired entry (1, 1).
[[nodiscard]] inline std::vector<ConjugatePair> conjugate_pairs(Period q) {
    detail::require_period(q);
    if (q <= 2) {
        return {ConjugatePair{1, 1, 1, true}};
    }
    std::vector<ConjugatePair> pairs;
    Period index = 0;
    for (Period k : coprime_residues(q)) {
        if (2 * k < q) {
            pairs.push_back(ConjugatePair{++index, k, q - k, false});
        }
    }
    return pairs;
}

/// k_i of the i-th conjugate pair (1-based).
[[nodiscard]] inline Period pair_residue(Period q, Period i) {
    detail::require_period(q);
    const Period m = pair_count(q);
    if (i < 1 || i > m) {
        throw InvalidArgument("pair index " + std::to_string(i) + " out of range [1, " +
                              std::to_string(m) + "] for period " + std::to_string(q));
    }
    if (q <= 2) {
        return 1;
    }
    Period seen = 0;
    for (Period k = 1; 2 * k < q; ++k) {
        if (std::gcd(k, q) == 1 && ++seen == i) {
            return k;
        }
    }
    throw NumericalError("pair residue enumeration exhausted");  // unreachable
}

/// Columns of a full Ramanujan dictionary up to max_q: sum of phi(q).
[[nodiscard]] inline Period ramanujan_dictionary_size(Period max_q) {
    detail::require_period(max_q);
    Period total = 0;
    for (Period q = 1; q <= max_q; ++q) {
        total += euler_totient(q);
    }
    return total;
}

/// Number of conjugate subspaces up to max_q: sum of M_q.
[[nodiscard]] inline Period conjugate_dictionary_size(Period max_q) {
    detail::require_period(max_q);
    Period total = 0;
    for (Period q = 1; q <= max_q; ++q) {
        total += pair_count(q);
    }
    return total;
}

/// Position (1-based) of CCS (q, i) in the stacked coefficient vector, i.e.
/// sum_{p<q} M_p + i. Only used to enumerate the virtual dictionary.
[[nodiscard]] inline Period stacked_index(Period q, Period i) {
    detail::require_period(q);
    if (i < 1 || i > pair_count(q)) {
        throw InvalidArgument("pair index out of range");
    }
    return (q > 1 ? conjugate_dictionary_size(q - 1) : 0) + i;
}

}  // namespace csmp
