#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>

#include "eigloc/error.hpp"

namespace eigloc::numeric {

/// A closed interval [lo, hi] on which a continuous function changes sign.
struct Bracket {
    double lo;
    double hi;
};

struct NewtonOptions {
    double bisect_tol = 1e-6;   // relative width at which bisection hands over to Newton
    double newton_tol = 1e-13;  // relative step size that ends Newton
    int max_iterations = 100;
};

inline bool opposite_signs(double a, double b) noexcept {
    return (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0);
}

/// Hybrid bisection/Newton on a verified sign change.
///
/// `f(x)` must return `std::pair<double, double>` holding the value and the
/// derivative. Bisection narrows the bracket to `bisect_tol` relative width,
/// then Newton takes over; a Newton step that leaves the current bracket is
/// replaced by a bisection step, so the iterate never escapes.
template <class F>
double refine_root(F&& f, double lo, double hi, const NewtonOptions& opt = {}) {
    auto [flo, dlo] = f(lo);
    auto [fhi, dhi] = f(hi);
    (void)dlo;
    (void)dhi;
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (!opposite_signs(flo, fhi)) {
        throw BracketError("refine_root: no sign change on [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]");
    }
    int it = 0;
    while (it < opt.max_iterations && (hi - lo) > opt.bisect_tol * std::max(1.0, std::abs(lo))) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid).first;
        if (fm == 0.0) return mid;
        if (opposite_signs(flo, fm)) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
        ++it;
    }
    double x = 0.5 * (lo + hi);
    for (; it < opt.max_iterations; ++it) {
        auto [fx, dfx] = f(x);
        if (fx == 0.0) return x;
        if (opposite_signs(flo, fx)) {
            hi = x;
        } else {
            lo = x;
            flo = fx;
        }
        double next = (dfx != 0.0) ? x - fx / dfx : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const double step = std::abs(next - x);
        x = next;
        if (step <= opt.newton_tol * std::max(1.0, std::abs(x))) return x;
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x))) return x;
    }
    return x;
}

/// Derivative-free Brent iteration on a verified sign change. Used where the
/// function is expensive and has no cheap derivative (boundary equations in q).
template <class F>
double brent_root(F&& f, double a, double b, double rel_tol = 1e-14, int max_iterations = 200) {
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (!opposite_signs(fa, fb)) {
        throw BracketError("brent_root: no sign change on [" + std::to_string(a) + ", " + std::to_string(b) + "]");
    }
    double c = b;
    double fc = fb;
    double d = b - a;
    double e = d;
    for (int it = 0; it < max_iterations; ++it) {
        if ((fb > 0.0 && fc > 0.0) || (fb < 0.0 && fc < 0.0)) {
            c = a;
            fc = fa;
            e = d = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * rel_tol * std::abs(b);
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q, r;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                q = fa / fc;
                r = fb / fc;
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
            const double min2 = std::abs(e * q);
            if (2.0 * p < std::min(min1, min2)) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
    }
    return b;
}

/// Walks from `start` in steps of `step` and returns the bracket of the
/// `index`-th (1-based) sign change of `f`. Exact zeros on grid points are
/// counted once. Throws BracketError after `max_steps`.
template <class F>
Bracket nth_sign_change(F&& f, double start, double step, int index, std::size_t max_steps = 10'000'000) {
    double x0 = start;
    double f0 = f(x0);
    int found = 0;
    for (std::size_t s = 0; s < max_steps; ++s) {
        const double x1 = x0 + step;
        const double f1 = f(x1);
        if (opposite_signs(f0, f1) || (f1 == 0.0 && f0 != 0.0)) {
            if (++found == index) return {x0, x1};
        }
        x0 = x1;
        // an exact zero on the grid is treated as a crossing
        f0 = (f1 == 0.0) ? -f0 : f1;
    }
    throw BracketError("nth_sign_change: sign change " + std::to_string(index) + " not found");
}

}  // namespace eigloc::numeric
