#pragma once

// Scalar root finding and quadrature used by the equilibrium solvers.

#include "bathtub/errors.hpp"

#include <cmath>
#include <cstddef>
#include <span>
#include <string>

namespace bathtub::numerics {

struct BisectOptions {
    double abs_tol = 1e-10;
    double rel_tol = 0.0;
    int max_iter = 500;
};

/// Bisection on [lo, hi]. f(lo) and f(hi) must have opposite signs (a zero at
/// either end is returned directly). Stops once the bracket width is below
/// abs_tol + rel_tol * |midpoint|.
template <class F>
double bisect(F&& f, double lo, double hi, BisectOptions opt = {})
{
    double f_lo = f(lo);
    const double f_hi = f(hi);
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if (std::signbit(f_lo) == std::signbit(f_hi))
        throw SolverError("bisection: root not bracketed on [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");

    for (int i = 0; i < opt.max_iter; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= opt.abs_tol + opt.rel_tol * std::abs(mid)) return mid;
        const double f_mid = f(mid);
        if (f_mid == 0.0) return mid;
        if (std::signbit(f_mid) == std::signbit(f_lo)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    // Bracket width has hit the floating-point floor.
    return 0.5 * (lo + hi);
}

/// Doubles `hi` (starting from `start`) until sign(f(hi)) differs from
/// sign(f(lo)). Returns the first such hi.
template <class F>
double expand_upper(F&& f, double lo, double start, int max_doublings = 200)
{
    const bool lo_negative = std::signbit(f(lo));
    double hi = start;
    for (int i = 0; i < max_doublings; ++i) {
        const double f_hi = f(hi);
        if (f_hi == 0.0 || std::signbit(f_hi) != lo_negative) return hi;
        hi *= 2.0;
    }
    throw SolverError("bracket expansion failed to find a sign change");
}

namespace detail {

template <class F>
double simpson_step(F& f, double a, double b, double fa, double fm, double fb, double whole,
                    double tol, int depth)
{
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace detail

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance `tol`.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double tol = 1e-9, int max_depth = 48)
{
    if (a == b) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

/// Evenly spaced grid of `n` points over [a, b]; n == 1 yields {a}.
inline void linspace(double a, double b, std::span<double> out)
{
    const std::size_t n = out.size();
    if (n == 0) return;
    if (n == 1) {
        out[0] = a;
        return;
    }
    const double h = (b - a) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) out[i] = a + h * static_cast<double>(i);
    out[n - 1] = b;
}

} // namespace bathtub::numerics
