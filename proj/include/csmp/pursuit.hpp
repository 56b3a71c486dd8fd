#pragma once

// Conjugate subspace matching pursuit: each iteration picks the dominant period
// of the residual by the periodicity metric (stage 1), then the CCS of that
// period with the largest projection coefficient (stage 2), and removes the
// projection. The full dictionary is never built; stage 2 only materializes
// the M_q atoms of the chosen period.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "csmp/error.hpp"
#include "csmp/periodicity.hpp"
#include "csmp/ramanujan.hpp"
#include "csmp/subspace.hpp"

namespace csmp {

enum class ToleranceMode {
    Relative,  // stop when ||r||^2 / ||x||^2 <= tol
    Absolute,  // stop when ||r|| <= tol
};

enum class StopReason {
    MaxIterations,
    Tolerance,
    NoPeriodicContent,
    Stalled,  // the chosen projection is at rounding level
};

struct PursuitOptions {
    Period max_q = 1;
    std::size_t max_iter = 1;
    double tol = 0.0;
    ToleranceMode tol_mode = ToleranceMode::Relative;
};

struct Decomposition {
    std::vector<Component> components;
    std::vector<double> residual;
    /// ||r_l||^2 after each iteration l = 1..L.
    std::vector<double> residual_energy_trace;
    double input_energy = 0.0;
    PursuitOptions params;
    StopReason stop_reason = StopReason::MaxIterations;
};

/// Strength per period.
///
/// `strengths[q]` is ||x_q||^2, where x_q is the sum of every extracted vector
/// of period q. `component_energy[q]` adds the per-iteration projection
/// energies instead; the two agree when the selected subspaces are mutually
/// orthogonal, and only the latter is bounded by the input energy in general.
struct PeriodicSpectrum {
    Period max_q = 0;
    std::map<Period, double> strengths;
    std::map<Period, double> component_energy;
};

namespace detail {

inline double energy_of(std::span<const double> x) {
    return std::inner_product(x.begin(), x.end(), x.begin(), 0.0);
}

/// Projection energy, relative to the input energy, below which a component
/// is rounding noise and the pursuit stops.
inline constexpr double kStallRatio = 1e-14;

inline bool tolerance_reached(const PursuitOptions& opt, double residual_energy, double input_energy) {
    if (opt.tol_mode == ToleranceMode::Absolute) {
        return std::sqrt(residual_energy) <= opt.tol;
    }
    return input_energy > 0.0 ? residual_energy / input_energy <= opt.tol : true;
}

inline void validate(std::span<const double> x, const PursuitOptions& opt) {
    require(!x.empty(), "cannot decompose an empty signal");
    require(opt.max_q >= 1, "max period must be >= 1");
    require(opt.max_q <= static_cast<Period>(x.size()),
            "max period " + std::to_string(opt.max_q) + " exceeds signal length " + std::to_string(x.size()));
    require(opt.max_iter >= 1, "iteration count must be >= 1");
    require(opt.tol >= 0.0 && std::isfinite(opt.tol), "tolerance must be finite and >= 0");
}

}  // namespace detail

/// Stage 2: the CCS of period q with the largest |alpha| (ties toward smaller i).
[[nodiscard]] inline Component dominant_component(std::span<const double> residual, Period q) {
    const Period pairs = pair_count(q);
    Component best = project(residual, make_atom(q, 1, residual.size()));
    for (Period i = 2; i <= pairs; ++i) {
        Component candidate = project(residual, make_atom(q, i, residual.size()));
        if (std::abs(candidate.alpha) > std::abs(best.alpha)) {
            best = std::move(candidate);
        }
    }
    return best;
}

[[nodiscard]] inline Decomposition decompose(std::span<const double> x, const PursuitOptions& options) {
    detail::validate(x, options);

    Decomposition d;
    d.params = options;
    d.residual.assign(x.begin(), x.end());
    d.input_energy = detail::energy_of(x);
    d.stop_reason = StopReason::MaxIterations;

    double current = d.input_energy;
    if (detail::tolerance_reached(options, current, d.input_energy)) {
        d.stop_reason = StopReason::Tolerance;
        return d;
    }
    for (std::size_t l = 0; l < options.max_iter; ++l) {
        const PeriodEnergyTable table = exact_periodic_energies(d.residual, options.max_q);
        const auto period = dominant_period(table);
        if (!period) {
            d.stop_reason = StopReason::NoPeriodicContent;
            break;
        }
        Component c = dominant_component(d.residual, *period);
        if (c.energy <= detail::kStallRatio * d.input_energy) {
            d.stop_reason = StopReason::Stalled;
            break;
        }
        accumulate(d.residual, c, -1.0);
        // The projection is orthogonal, so the trace can only drop; the min()
        // absorbs rounding in the direct recomputation.
        current = std::min(current, detail::energy_of(d.residual));
        d.residual_energy_trace.push_back(current);
        d.components.push_back(std::move(c));
        if (detail::tolerance_reached(options, current, d.input_energy)) {
            d.stop_reason = StopReason::Tolerance;
            break;
        }
    }
    return d;
}

[[nodiscard]] inline PeriodicSpectrum periodic_spectrum(const Decomposition& d) {
    PeriodicSpectrum s;
    s.max_q = d.params.max_q;
    std::map<Period, std::vector<double>> parts;
    for (const Component& c : d.components) {
        s.component_energy[c.atom.q] += c.energy;
        auto& part = parts[c.atom.q];
        if (part.empty()) {
            part.assign(d.residual.size(), 0.0);
        }
        accumulate(part, c);
    }
    for (const auto& [q, part] : parts) {
        s.strengths[q] = detail::energy_of(part);
    }
    return s;
}

/// Sum of all extracted vectors; reconstruct(d) + d.residual is the input.
[[nodiscard]] inline std::vector<double> reconstruct(const Decomposition& d) {
    std::vector<double> out(d.residual.size(), 0.0);
    for (const Component& c : d.components) {
        accumulate(out, c);
    }
    return out;
}

/// ||r_l||^2 / ||x||^2 per iteration; all zeros for a zero input.
[[nodiscard]] inline std::vector<double> error_rate_trace(const Decomposition& d) {
    std::vector<double> rates(d.residual_energy_trace.size(), 0.0);
    if (d.input_energy > 0.0) {
        std::transform(d.residual_energy_trace.begin(), d.residual_energy_trace.end(), rates.begin(),
                       [&](double e) { return e / d.input_energy; });
    }
    return rates;
}

[[nodiscard]] inline const char* to_string(StopReason reason) {
    switch (reason) {
        case StopReason::MaxIterations: return "max_iterations";
        case StopReason::Tolerance: return "tolerance";
        case StopReason::NoPeriodicContent: return "no_periodic_content";
        case StopReason::Stalled: return "stalled";
    }
    return "unknown";
}

}  // namespace csmp
