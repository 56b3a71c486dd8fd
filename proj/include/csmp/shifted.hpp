#pragma once

// Shifted CSMP: the pursuit run independently in rectangular windows sliding
// over the signal, giving a time-period plane.

#include <algorithm>
#include <cstddef>
#include <exception>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "csmp/error.hpp"
#include "csmp/pursuit.hpp"

namespace csmp {

struct ShiftedOptions {
    Period max_q = 1;
    std::size_t window = 2;
    std::size_t hop = 0;  // 0 selects window / 4 (at least 1)
    std::size_t iters_per_window = 10;
    unsigned threads = 0;  // 0 selects std::thread::hardware_concurrency()
};

struct TimePeriodPlane {
    std::size_t window_size = 0;
    std::size_t hop = 0;
    Period max_q = 0;
    /// Center of each window in samples: start + (W - 1) / 2.
    std::vector<double> window_centers;
    /// Row-major [window][q - 1].
    std::vector<double> cells;

    [[nodiscard]] std::size_t window_count() const { return window_centers.size(); }
    [[nodiscard]] double cell(std::size_t w, Period q) const {
        return cells[w * static_cast<std::size_t>(max_q) + static_cast<std::size_t>(q - 1)];
    }
    double& cell(std::size_t w, Period q) {
        return cells[w * static_cast<std::size_t>(max_q) + static_cast<std::size_t>(q - 1)];
    }
};

struct TrackPoint {
    double window_center = 0.0;
    Period period = 1;
    bool empty = false;  // every cell of the window is zero
};

[[nodiscard]] inline std::size_t default_hop(std::size_t window) { return std::max<std::size_t>(1, window / 4); }

[[nodiscard]] inline std::size_t window_count(std::size_t n_len, std::size_t window, std::size_t hop) {
    return n_len < window ? 0 : (n_len - window) / hop + 1;
}

[[nodiscard]] inline TimePeriodPlane shifted_csmp(std::span<const double> x, const ShiftedOptions& options) {
    const std::size_t hop = options.hop == 0 ? default_hop(options.window) : options.hop;
    detail::require(options.max_q >= 1, "max period must be >= 1");
    detail::require(options.window > static_cast<std::size_t>(options.max_q),
                    "window size " + std::to_string(options.window) + " must exceed the max period " +
                        std::to_string(options.max_q) + " (W > Q)");
    detail::require(x.size() >= options.window, "signal length " + std::to_string(x.size()) +
                                                    " is shorter than the window " + std::to_string(options.window));
    detail::require(options.iters_per_window >= 1, "iterations per window must be >= 1");

    TimePeriodPlane plane;
    plane.window_size = options.window;
    plane.hop = hop;
    plane.max_q = options.max_q;
    const std::size_t windows = window_count(x.size(), options.window, hop);
    plane.window_centers.resize(windows);
    plane.cells.assign(windows * static_cast<std::size_t>(options.max_q), 0.0);

    const PursuitOptions pursuit{options.max_q, options.iters_per_window, 0.0, ToleranceMode::Absolute};
    const auto run_window = [&](std::size_t w) {
        const std::size_t start = w * hop;
        plane.window_centers[w] = static_cast<double>(start) + static_cast<double>(options.window - 1) / 2.0;
        const Decomposition d = decompose(x.subspan(start, options.window), pursuit);
        for (const auto& [q, strength] : periodic_spectrum(d).strengths) {
            plane.cell(w, q) = strength;
        }
    };

    unsigned threads = options.threads == 0 ? std::thread::hardware_concurrency() : options.threads;
    threads = static_cast<unsigned>(std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(1, windows)));
    if (threads <= 1) {
        for (std::size_t w = 0; w < windows; ++w) {
            run_window(w);
        }
        return plane;
    }
    // Each window writes only its own row, so the result does not depend on scheduling.
    std::vector<std::exception_ptr> errors(threads);
    {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                try {
                    for (std::size_t w = t; w < windows; w += threads) {
                        run_window(w);
                    }
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return plane;
}

/// Per-window argmax over q, ties toward smaller q. An all-zero window
/// reports period 1 and is flagged empty.
[[nodiscard]] inline std::vector<TrackPoint> dominant_track(const TimePeriodPlane& plane) {
    std::vector<TrackPoint> track;
    track.reserve(plane.window_count());
    for (std::size_t w = 0; w < plane.window_count(); ++w) {
        TrackPoint p{plane.window_centers[w], 1, true};
        double best = 0.0;
        for (Period q = 1; q <= plane.max_q; ++q) {
            if (plane.cell(w, q) > best) {
                best = plane.cell(w, q);
                p.period = q;
                p.empty = false;
            }
        }
        track.push_back(p);
    }
    return track;
}

}  // namespace csmp
