// Recovers the hidden periods of a sum of cosines and compares the result
// with the Ramanujan Fourier transform baseline.

#include <cstdio>
#include <vector>

#include "csmp.hpp"

int main() {
    const std::vector<csmp::Period> periods = {5, 12, 25, 26, 57, 58, 70, 85};
    for (std::size_t n_len : {1950u, 650u}) {
        const auto x = csmp::sum_of_cosines(periods, n_len);
        const auto d = csmp::decompose(x, {100, 20, 0.0, csmp::ToleranceMode::Relative});
        const auto spectrum = csmp::periodic_spectrum(d);
        const auto rft = csmp::rft_spectrum(x, 100);
        std::printf("N = %zu, final error rate %.3g\n", n_len, csmp::error_rate_trace(d).back());
        std::printf("  q   csmp      rft\n");
        for (const auto& [q, strength] : spectrum.strengths) {
            std::printf("%3lld %8.1f %8.1f\n", static_cast<long long>(q), strength, rft.strengths.at(q));
        }
    }
}
