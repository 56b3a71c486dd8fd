#pragma once

// Atoms of the complex conjugate subspaces (CCS) and the exact orthogonal
// projection of a real signal onto one CCS.
//
// Inner products follow <a, b> = sum_n a[n] * conj(b[n]). An atom for period q
// and pair index i is the unit-norm exponential
//
//     g[n] = exp(j * 2*pi * k_i * n / q) / sqrt(N),   n = 0..N-1,
//
// and its CCS is span{g, conj(g)}. The two columns are orthogonal only when
// the self correlation c = <g, conj(g)> = sum_n g[n]^2 vanishes.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "csmp/error.hpp"
#include "csmp/ramanujan.hpp"

namespace csmp {

using Complex = std::complex<double>;

struct Atom {
    Period q = 1;
    Period i = 1;
    Period k = 1;
    std::size_t n_len = 1;
    double omega = 2.0 * std::numbers::pi;
    double norm_const = 1.0;
    Complex self_corr{1.0, 0.0};
    bool is_real = true;
};

struct Component {
    Atom atom;
    Complex alpha{0.0, 0.0};
    /// Exact squared norm of the extracted vector.
    double energy = 0.0;

    /// 2|alpha|^2; equals `energy` only when the pair is orthogonal.
    [[nodiscard]] double two_alpha_squared() const { return 2.0 * std::norm(alpha); }
};

namespace detail {

/// cos/sin of 2*pi*m/q for m = 0..q-1, so that phases stay exact for long signals.
struct PhaseTable {
    std::vector<double> cos;
    std::vector<double> sin;

    explicit PhaseTable(Period q) : cos(static_cast<std::size_t>(q)), sin(static_cast<std::size_t>(q)) {
        for (Period m = 0; m < q; ++m) {
            const double theta = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(q);
            cos[static_cast<std::size_t>(m)] = std::cos(theta);
            sin[static_cast<std::size_t>(m)] = std::sin(theta);
        }
    }
};

inline Complex self_correlation(Period q, Period k, std::size_t n_len) {
    const PhaseTable table(q);
    const Period step = (2 * k) % q;
    Period m = 0;
    Complex sum{0.0, 0.0};
    for (std::size_t n = 0; n < n_len; ++n) {
        sum += Complex(table.cos[static_cast<std::size_t>(m)], table.sin[static_cast<std::size_t>(m)]);
        m += step;
        if (m >= q) {
            m -= q;
        }
    }
    return sum / static_cast<double>(n_len);
}

/// <x, g> for the atom's exponential.
inline Complex correlate(std::span<const double> x, const Atom& atom, const PhaseTable& table) {
    double re = 0.0;
    double im = 0.0;
    Period m = 0;
    for (double value : x) {
        re += value * table.cos[static_cast<std::size_t>(m)];
        im -= value * table.sin[static_cast<std::size_t>(m)];
        m += atom.k;
        if (m >= atom.q) {
            m -= atom.q;
        }
    }
    return Complex(re, im) * atom.norm_const;
}

/// Calls fn(n, v[n]) for the extracted vector v of a component.
template <typename Fn>
void for_each_extracted(const Component& c, const PhaseTable& table, Fn&& fn) {
    const Atom& a = c.atom;
    // v = 2 Re(alpha g) for a conjugate pair, alpha g for a real atom.
    const double scale = a.is_real ? a.norm_const : 2.0 * a.norm_const;
    const double ar = c.alpha.real() * scale;
    const double ai = c.alpha.imag() * scale;
    Period m = 0;
    for (std::size_t n = 0; n < a.n_len; ++n) {
        fn(n, ar * table.cos[static_cast<std::size_t>(m)] - ai * table.sin[static_cast<std::size_t>(m)]);
        m += a.k;
        if (m >= a.q) {
            m -= a.q;
        }
    }
}

}  // namespace detail

/// Atom for the i-th conjugate pair of period q on signals of length n_len.
[[nodiscard]] inline Atom make_atom(Period q, Period i, std::size_t n_len) {
    detail::require(n_len >= 1, "atom length must be >= 1");
    Atom a;
    a.q = q;
    a.i = i;
    a.k = pair_residue(q, i);
    a.n_len = n_len;
    a.omega = 2.0 * std::numbers::pi * static_cast<double>(a.k) / static_cast<double>(q);
    a.norm_const = 1.0 / std::sqrt(static_cast<double>(n_len));
    a.is_real = q <= 2;
    a.self_corr = a.is_real ? Complex(1.0, 0.0) : detail::self_correlation(q, a.k, n_len);
    return a;
}

/// The atom's samples g[n]; the conjugate of this vector is the atom of the
/// partner residue q - k.
[[nodiscard]] inline std::vector<Complex> atom_vector(const Atom& atom) {
    const detail::PhaseTable table(atom.q);
    std::vector<Complex> g(atom.n_len);
    Period m = 0;
    for (std::size_t n = 0; n < atom.n_len; ++n) {
        g[n] = Complex(table.cos[static_cast<std::size_t>(m)], table.sin[static_cast<std::size_t>(m)]) *
               atom.norm_const;
        m += atom.k;
        if (m >= atom.q) {
            m -= atom.q;
        }
    }
    return g;
}

/// Orthogonal projection of a real signal onto the atom's CCS.
///
/// With p = <x, g> and c = <g, conj(g)>, the least-squares coefficient of g is
/// alpha = (p - conj(c) * conj(p)) / (1 - |c|^2) and the projection is
/// 2 Re(alpha g). Real atoms (q <= 2) span one dimension and use alpha = <x, g>.
[[nodiscard]] inline Component project(std::span<const double> x, const Atom& atom) {
    if (x.size() != atom.n_len) {
        throw InvalidArgument("signal length " + std::to_string(x.size()) +
                              " does not match atom length " + std::to_string(atom.n_len));
    }
    const detail::PhaseTable table(atom.q);
    const Complex p = detail::correlate(x, atom, table);

    Component out;
    out.atom = atom;
    if (atom.is_real) {
        out.alpha = Complex(p.real(), 0.0);
    } else {
        const double det = 1.0 - std::norm(atom.self_corr);
        if (det < 1e-12) {
            throw NumericalError("degenerate conjugate pair (q=" + std::to_string(atom.q) +
                                 ", N=" + std::to_string(atom.n_len) + "): 1 - |c|^2 < 1e-12");
        }
        out.alpha = (p - std::conj(atom.self_corr) * std::conj(p)) / det;
    }
    double energy = 0.0;
    detail::for_each_extracted(out, table, [&](std::size_t, double v) { energy += v * v; });
    out.energy = energy;
    return out;
}

/// The extracted vector of a component.
[[nodiscard]] inline std::vector<double> extracted_vector(const Component& c) {
    const detail::PhaseTable table(c.atom.q);
    std::vector<double> v(c.atom.n_len);
    detail::for_each_extracted(c, table, [&](std::size_t n, double value) { v[n] = value; });
    return v;
}

/// out[n] += sign * v[n].
inline void accumulate(std::span<double> out, const Component& c, double sign = 1.0) {
    detail::require(out.size() == c.atom.n_len, "accumulate: length mismatch");
    const detail::PhaseTable table(c.atom.q);
    detail::for_each_extracted(c, table, [&](std::size_t n, double value) { out[n] += sign * value; });
}

}  // namespace csmp
