#pragma once

// Bessel functions of the first kind J_n (integer order), spherical Bessel
// functions j_n, their zeros for Dirichlet/Neumann/Robin conditions, and the
// classical constants and inequalities used in whispering-gallery estimates.
//
// Three evaluation regimes:
//   * ascending series while x^2/4 <= order + 1 (terms decrease monotonically),
//   * Miller backward recurrence normalized by J_0 + 2 sum J_2k = 1
//     (spherical: sum (2k+1) j_k^2 = 1),
//   * Hankel asymptotic expansion once x >= max(30, order^2 / 2).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "eigloc/error.hpp"
#include "eigloc/roots.hpp"

namespace eigloc::bessel {

inline constexpr double pi = std::numbers::pi;

namespace detail {

inline void check_argument(double x, const char* who) {
    if (!std::isfinite(x) || x < 0.0) {
        throw DomainError(std::string(who) + ": argument must be finite and >= 0, got " + std::to_string(x));
    }
}

inline bool use_series(double order, double x) { return 0.25 * x * x <= order + 1.0; }

inline bool use_hankel(double order, double x) { return x >= std::max(30.0, 0.5 * order * order); }

/// (x/2)^n / n! by repeated multiplication; exact-ish for moderate n.
inline double leading_power(int n, double half_x) {
    double t = 1.0;
    for (int j = 1; j <= n; ++j) {
        t *= half_x / j;
        if (t == 0.0) break;
    }
    return t;
}

/// Ascending series for integer order; returns {J_n(x), J_n'(x)}.
inline std::pair<double, double> series_integer(int n, double x) {
    const double h = 0.5 * x;
    const double q = h * h;
    double term = leading_power(n, h);
    double sum = term;
    double dsum = (x > 0.0) ? term * n / x : 0.0;
    for (int m = 1; m < 500; ++m) {
        term *= -q / (static_cast<double>(m) * (n + m));
        sum += term;
        if (x > 0.0) dsum += term * (2.0 * m + n) / x;
        if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    }
    if (x == 0.0) dsum = (n == 1) ? 0.5 : 0.0;
    return {sum, dsum};
}

/// Hankel expansion for real order nu >= 0; returns {J_nu(x), J_nu'(x)}.
/// The expansion terminates (and is exact) for half-integer nu.
inline std::pair<double, double> hankel(double nu, double x) {
    const double mu = 4.0 * nu * nu;
    const double ex = 8.0 * x;
    // P, Q for the function; R, S for the derivative.
    double P = 1.0, Q = 0.0, Rr = 1.0, S = 0.0;
    double a_prev = 1.0;  // a_{k-1} / (8x)^{k-1}
    double last = 1e300;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double a_k = a_prev * (mu - odd * odd) / (k * ex);
        const double b_k = a_prev * (mu + 4.0 * k * k - 1.0) / (k * ex);
        const double mag = std::max(std::abs(a_k), std::abs(b_k));
        if (mag > last && k > 2) break;  // asymptotic series: stop at the smallest term
        // sign pattern: k=1 -> Q/S +, k=2 -> P/R -, k=3 -> Q/S -, k=4 -> P/R +, ...
        const int r = k % 4;
        const double sgn = (r == 1 || r == 0) ? 1.0 : -1.0;
        if (k % 2 == 1) {
            Q += sgn * a_k;
            S += sgn * b_k;
        } else {
            P += sgn * a_k;
            Rr += sgn * b_k;
        }
        last = mag;
        a_prev = a_k;
        if (mag < 1e-17) break;
    }
    // cos/sin of chi = x - phi via the addition formula: subtracting phi
    // from a large x would lose digits before the library's exact reduction
    const double phi = std::fmod(0.5 * nu + 0.25, 2.0) * pi;
    const double cx = std::cos(x), sx = std::sin(x);
    const double cp = std::cos(phi), sp = std::sin(phi);
    const double c = cx * cp + sx * sp;
    const double s = sx * cp - cx * sp;
    const double amp = std::sqrt(2.0 / (pi * x));
    return {amp * (P * c - Q * s), amp * (-Rr * s - S * c)};
}

inline int miller_start(int nmax, double x) {
    const double top = std::max(static_cast<double>(nmax), x);
    int start = static_cast<int>(top + 10.0 * std::cbrt(top) + 30.0);
    if (start % 2 != 0) ++start;
    return start;
}

/// Miller backward recurrence for J_0..J_nmax (x > 0).
inline std::vector<double> miller(int nmax, double x) {
    const int start = miller_start(nmax, x);
    std::vector<double> out(static_cast<std::size_t>(nmax) + 1, 0.0);
    double jp1 = 0.0;
    double j = 1.0;
    double sum = 0.0;
    for (int k = start; k >= 1; --k) {
        const double jm1 = (2.0 * k) / x * j - jp1;
        jp1 = j;
        j = jm1;
        // j now holds order k-1
        const int order = k - 1;
        if (order <= nmax) out[static_cast<std::size_t>(order)] = j;
        if (order % 2 == 0) sum += (order == 0) ? j : 2.0 * j;
        if (std::abs(j) > 1e100) {
            constexpr double s = 1e-100;
            j *= s;
            jp1 *= s;
            sum *= s;
            for (int m = order; m <= nmax; ++m) out[static_cast<std::size_t>(m)] *= s;
        }
    }
    double scale = 1.0 / sum;
    if (x >= 30.0 && nmax >= 1) {
        // for large x the Hankel values of J_0 and J_1 are sharper anchors
        // than the normalization sum; least squares over the pair avoids a zero
        const double a0 = hankel(0.0, x).first;
        const double a1 = hankel(1.0, x).first;
        scale = (a0 * out[0] + a1 * out[1]) / (out[0] * out[0] + out[1] * out[1]);
    }
    for (double& v : out) v *= scale;
    return out;
}

/// Ascending series for the spherical j_n; returns {j_n(x), j_n'(x)}.
inline std::pair<double, double> spherical_series(int n, double x) {
    double lead = 1.0;
    for (int j = 1; j <= n; ++j) {
        lead *= x / (2.0 * j + 1.0);
        if (lead == 0.0) break;
    }
    // j_n = lead * sum_m t_m,  t_m = (-x^2/2)^m / (m! (2n+3)...(2n+2m+1))
    const double q = 0.5 * x * x;
    double t = 1.0;
    double sum = 1.0;
    double dsum = 0.0;  // d/dx of sum_m t_m x^{2m} handled via (2m)/x factor
    for (int m = 1; m < 500; ++m) {
        t *= -q / (static_cast<double>(m) * (2.0 * n + 2.0 * m + 1.0));
        sum += t;
        dsum += t * 2.0 * m;
        if (std::abs(t) <= 1e-17 * std::abs(sum)) break;
    }
    const double value = lead * sum;
    double deriv;
    if (x > 0.0) {
        deriv = lead * (n * sum + dsum) / x;
    } else {
        deriv = (n == 1) ? 1.0 / 3.0 : 0.0;
    }
    return {value, deriv};
}

/// Miller backward recurrence for j_0..j_nmax (x > 0), normalized by
/// sum_k (2k+1) j_k^2 = 1 with the sign of the larger closed-form j_0 / j_1.
inline std::vector<double> spherical_miller(int nmax, double x) {
    const int start = miller_start(nmax, x);
    std::vector<double> out(static_cast<std::size_t>(std::max(nmax, 1)) + 1, 0.0);
    const int keep = static_cast<int>(out.size()) - 1;
    double jp1 = 0.0;
    double j = 1.0;
    double sumsq = 0.0;
    for (int k = start; k >= 1; --k) {
        const double jm1 = (2.0 * k + 1.0) / x * j - jp1;
        jp1 = j;
        j = jm1;
        const int order = k - 1;
        if (order <= keep) out[static_cast<std::size_t>(order)] = j;
        sumsq += (2.0 * order + 1.0) * j * j;
        if (std::abs(j) > 1e100) {
            constexpr double s = 1e-100;
            j *= s;
            jp1 *= s;
            sumsq *= s * s;
            for (int m = order; m <= keep; ++m) out[static_cast<std::size_t>(m)] *= s;
        }
    }
    double scale = 1.0 / std::sqrt(sumsq);
    const double j0 = std::sin(x) / x;
    const double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
    const double ref = (std::abs(j0) >= std::abs(j1)) ? j0 : j1;
    const double got = (std::abs(j0) >= std::abs(j1)) ? out[0] : out[1];
    if ((ref < 0.0) != (got * scale < 0.0)) scale = -scale;
    for (double& v : out) v *= scale;
    out.resize(static_cast<std::size_t>(nmax) + 1);
    return out;
}

}  // namespace detail

/// J_n(x) for integer n >= 0 and x >= 0.
inline double bessel_j(int n, double x) {
    detail::check_argument(x, "bessel_j");
    if (n < 0) throw DomainError("bessel_j: order must be >= 0");
    if (x == 0.0) return n == 0 ? 1.0 : 0.0;
    if (detail::use_series(n, x)) return detail::series_integer(n, x).first;
    if (detail::use_hankel(n, x)) return detail::hankel(n, x).first;
    return detail::miller(n, x)[static_cast<std::size_t>(n)];
}

/// J_n'(x). Evaluated directly in each regime (term-wise series derivative,
/// Hankel derivative expansion, or (n/x) J_n - J_{n+1} from the Miller table).
inline double bessel_j_prime(int n, double x) {
    detail::check_argument(x, "bessel_j_prime");
    if (n < 0) throw DomainError("bessel_j_prime: order must be >= 0");
    if (x == 0.0) return n == 1 ? 0.5 : 0.0;
    if (detail::use_series(n, x)) return detail::series_integer(n, x).second;
    if (detail::use_hankel(n + 1, x)) return detail::hankel(n, x).second;
    const auto t = detail::miller(n + 1, x);
    return n / x * t[static_cast<std::size_t>(n)] - t[static_cast<std::size_t>(n) + 1];
}

/// {J_n(x), J_n'(x)} in one pass.
inline std::pair<double, double> bessel_j_both(int n, double x) {
    detail::check_argument(x, "bessel_j_both");
    if (x == 0.0) return {n == 0 ? 1.0 : 0.0, n == 1 ? 0.5 : 0.0};
    if (detail::use_series(n, x)) return detail::series_integer(n, x);
    if (detail::use_hankel(n + 1, x)) return detail::hankel(n, x);
    const auto t = detail::miller(n + 1, x);
    const double jn = t[static_cast<std::size_t>(n)];
    return {jn, n / x * jn - t[static_cast<std::size_t>(n) + 1]};
}

/// J_0(x) .. J_nmax(x).
inline std::vector<double> bessel_j_sequence(int nmax, double x) {
    detail::check_argument(x, "bessel_j_sequence");
    std::vector<double> out(static_cast<std::size_t>(nmax) + 1, 0.0);
    if (x == 0.0) {
        out[0] = 1.0;
        return out;
    }
    if (detail::use_hankel(nmax, x) && nmax < x) {
        out[0] = detail::hankel(0, x).first;
        if (nmax >= 1) out[1] = detail::hankel(1, x).first;
        for (int k = 1; k < nmax; ++k) {
            out[static_cast<std::size_t>(k) + 1] = 2.0 * k / x * out[static_cast<std::size_t>(k)] -
                                                   out[static_cast<std::size_t>(k) - 1];
        }
        return out;
    }
    return detail::miller(nmax, x);
}

/// Y_0(x) .. Y_nmax(x) for x > 0 by forward recurrence from the standard
/// library's Y_0 and Y_1. Only the modified Mathieu functions of the second
/// kind need this.
inline std::vector<double> bessel_y_sequence(int nmax, double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("bessel_y_sequence: argument must be > 0");
    std::vector<double> out(static_cast<std::size_t>(nmax) + 1, 0.0);
    out[0] = std::cyl_neumann(0.0, x);
    if (nmax >= 1) out[1] = std::cyl_neumann(1.0, x);
    for (int k = 1; k < nmax; ++k) {
        out[static_cast<std::size_t>(k) + 1] = 2.0 * k / x * out[static_cast<std::size_t>(k)] -
                                               out[static_cast<std::size_t>(k) - 1];
    }
    return out;
}

/// Spherical Bessel j_n(x) = sqrt(pi / 2x) J_{n+1/2}(x); j_n(0) is the limit.
inline double spherical_bessel_j(int n, double x) {
    detail::check_argument(x, "spherical_bessel_j");
    if (n < 0) throw DomainError("spherical_bessel_j: order must be >= 0");
    if (x == 0.0) return n == 0 ? 1.0 : 0.0;
    if (detail::use_series(n + 0.5, x)) return detail::spherical_series(n, x).first;
    if (detail::use_hankel(n + 0.5, x)) return std::sqrt(pi / (2.0 * x)) * detail::hankel(n + 0.5, x).first;
    return detail::spherical_miller(n, x)[static_cast<std::size_t>(n)];
}

/// {j_n(x), j_n'(x)}.
inline std::pair<double, double> spherical_bessel_j_both(int n, double x) {
    detail::check_argument(x, "spherical_bessel_j_both");
    if (n < 0) throw DomainError("spherical_bessel_j_both: order must be >= 0");
    if (x == 0.0) return {n == 0 ? 1.0 : 0.0, n == 1 ? 1.0 / 3.0 : 0.0};
    if (detail::use_series(n + 0.5, x)) return detail::spherical_series(n, x);
    if (detail::use_hankel(n + 1.5, x)) {
        const double amp = std::sqrt(pi / (2.0 * x));
        const auto [J, dJ] = detail::hankel(n + 0.5, x);
        // d/dx [sqrt(pi/2x) J(x)] = sqrt(pi/2x) (J' - J / 2x)
        return {amp * J, amp * (dJ - J / (2.0 * x))};
    }
    const auto t = detail::spherical_miller(n + 1, x);
    const double jn = t[static_cast<std::size_t>(n)];
    return {jn, n / x * jn - t[static_cast<std::size_t>(n) + 1]};
}

inline double spherical_bessel_j_prime(int n, double x) { return spherical_bessel_j_both(n, x).second; }

/// J_nu(x) for integer or half-integer nu >= 0.
inline double bessel_j_real(double nu, double x) {
    detail::check_argument(x, "bessel_j_real");
    const double twice = 2.0 * nu;
    if (nu < 0.0 || twice != std::floor(twice)) {
        throw DomainError("bessel_j_real: only integer and half-integer orders are supported");
    }
    if (nu == std::floor(nu)) return bessel_j(static_cast<int>(nu), x);
    if (x == 0.0) return 0.0;
    const int n = static_cast<int>(nu - 0.5);
    return std::sqrt(2.0 * x / pi) * spherical_bessel_j(n, x);
}

// ---------------------------------------------------------------------------
// Classical constants
// ---------------------------------------------------------------------------

/// k-th negative zero of the Airy function Ai (k >= 1).
inline double airy_zero(int k) {
    if (k < 1) throw DomainError("airy_zero: k must be >= 1");
    const double t = 3.0 * pi * (4.0 * k - 1.0) / 8.0;
    const double t2 = 1.0 / (t * t);
    const double seed =
        -std::pow(t, 2.0 / 3.0) *
        (1.0 + t2 * (5.0 / 48.0 + t2 * (-5.0 / 36.0 + t2 * (77125.0 / 82944.0 - t2 * 108056875.0 / 6967296.0))));
    if (k > 6) return seed;
    // Newton on the Maclaurin series in extended precision.
    const long double c1 = 0.355028053887817239260L;
    const long double c2 = 0.258819403792806798405L;
    auto ai = [&](long double x) {
        long double f = 1.0L, g = x, fd = 0.0L, gd = 1.0L;
        long double tf = 1.0L, tg = x;
        const long double x3 = x * x * x;
        for (int m = 1; m < 200; ++m) {
            tf *= x3 / ((3.0L * m - 1.0L) * (3.0L * m));
            tg *= x3 / ((3.0L * m) * (3.0L * m + 1.0L));
            f += tf;
            g += tg;
            fd += tf * (3.0L * m) / x;
            gd += tg * (3.0L * m + 1.0L) / x;
            if (std::abs(tf) + std::abs(tg) < 1e-22L) break;
        }
        return std::pair<long double, long double>{c1 * f - c2 * g, c1 * fd - c2 * gd};
    };
    long double x = seed;
    for (int it = 0; it < 50; ++it) {
        const auto [v, d] = ai(x);
        const long double step = v / d;
        x -= step;
        if (std::abs(step) < 1e-18L) break;
    }
    return static_cast<double>(x);
}

/// Constants of the uniform asymptotics of J_n near its turning point.
struct AsymptoticConstants {
    /// Gamma(1/3) / (2^{2/3} 3^{1/6} pi): leading coefficient of J_n(n) n^{1/3}.
    static double c1_prime() { return std::tgamma(1.0 / 3.0) / (std::cbrt(4.0) * std::pow(3.0, 1.0 / 6.0) * pi); }
    /// Leading coefficient of (j'_{n,1} - n) / n^{1/3}.
    static constexpr double c2_prime = 0.808618;
    /// Weakened constants giving strict lower bounds for large n.
    static constexpr double c1 = 0.447;
    static constexpr double c2 = 0.8086;
    /// Spherical analogues: C~1 = sqrt(pi/2) C1, C~2 = 0.80.
    static double c1_tilde() { return std::sqrt(pi / 2.0) * c1; }
    static constexpr double c2_tilde = 0.80;
    /// delta_k = -a_k 2^{-1/3} with a_k the k-th Airy zero.
    static double delta(int k) { return -airy_zero(k) / std::cbrt(2.0); }
};

/// Olver's large-order expansion of the k-th zero of J_nu.
inline double olver_zero_estimate(double nu, int k) {
    const double d = AsymptoticConstants::delta(k);
    const double c = std::cbrt(nu);
    const double ic = 1.0 / c;
    return nu + d * c + 0.3 * d * d * ic + (5.0 - d * d * d) / 350.0 / nu -
           (479.0 * std::pow(d, 4) + 20.0 * d) / 63000.0 * ic * ic / nu +
           (20231.0 * std::pow(d, 5) - 27550.0 * d * d) / 8085000.0 * ic / (nu * nu);
}

/// McMahon's large-k expansion of the k-th zero of J_nu.
inline double mcmahon_zero_estimate(double nu, int k) {
    const double mu = 4.0 * nu * nu;
    const double beta = (k + 0.5 * nu - 0.25) * pi;
    const double e = 8.0 * beta;
    return beta - (mu - 1.0) / e - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e * e * e);
}

// ---------------------------------------------------------------------------
// Zeros
// ---------------------------------------------------------------------------

enum class Family { cylindrical, spherical };

/// Which function's zeros are wanted.
///  * function:     J_n or j_n (Dirichlet),
///  * derivative:   J_n' or j_n' (Neumann), positive zeros only,
///  * robin:        J_n' + h J_n (or j_n' + h j_n),
///  * robin_radial: x J_n' + h J_n, the exact disk/ball Robin condition with h -> h R.
enum class ZeroKind { function, derivative, robin, robin_radial };

struct ZeroSpec {
    int n = 0;
    int k = 1;
    ZeroKind kind = ZeroKind::function;
    Family family = Family::cylindrical;
    double h = 0.0;

    void validate() const {
        if (n < 0) throw DomainError("ZeroSpec: order must be >= 0");
        if (k < 1) throw DomainError("ZeroSpec: zero index must be >= 1");
        if ((kind == ZeroKind::robin || kind == ZeroKind::robin_radial) && !(h > 0.0)) {
            throw DomainError("ZeroSpec: Robin parameter must be > 0");
        }
    }
};

/// Value and x-derivative of the function whose zeros `spec` asks for.
inline std::pair<double, double> zero_function(const ZeroSpec& spec, double x) {
    const int n = spec.n;
    double f, df, d2f;
    if (spec.family == Family::cylindrical) {
        std::tie(f, df) = bessel_j_both(n, x);
        d2f = (x > 0.0) ? -df / x - (1.0 - static_cast<double>(n) * n / (x * x)) * f : (n == 0 ? -0.5 : 0.0);
    } else {
        std::tie(f, df) = spherical_bessel_j_both(n, x);
        d2f = (x > 0.0) ? -2.0 * df / x - (1.0 - static_cast<double>(n) * (n + 1) / (x * x)) * f
                        : (n == 0 ? -1.0 / 3.0 : 0.0);
    }
    switch (spec.kind) {
        case ZeroKind::function:
            return {f, df};
        case ZeroKind::derivative:
            return {df, d2f};
        case ZeroKind::robin:
            return {df + spec.h * f, d2f + spec.h * df};
        case ZeroKind::robin_radial:
            return {x * df + spec.h * f, df + x * d2f + spec.h * df};
    }
    return {f, df};
}

namespace detail {

inline double refine(const ZeroSpec& spec, numeric::Bracket b) {
    return numeric::refine_root([&](double x) { return zero_function(spec, x); }, b.lo, b.hi);
}

inline bool has_sign_change(const ZeroSpec& spec, numeric::Bracket b) {
    return numeric::opposite_signs(zero_function(spec, b.lo).first, zero_function(spec, b.hi).first);
}

/// k-th zero of J_nu / j_n (the function itself); nu = n or n + 1/2.
inline double function_zero(const ZeroSpec& spec) {
    const int n = spec.n;
    const int k = spec.k;
    const double nu = (spec.family == Family::cylindrical) ? n : n + 0.5;
    // Large k: McMahon bracket of half-width pi/2 holds exactly one zero.
    const double beta = (k + 0.5 * nu - 0.25) * pi;
    if (beta > std::max(50.0, 2.0 * nu * nu)) {
        const double seed = mcmahon_zero_estimate(nu, k);
        const numeric::Bracket b{seed - 0.5 * pi, seed + 0.5 * pi};
        if (has_sign_change(spec, b)) return refine(spec, b);
    }
    // Large nu, small k: Olver bracket limited to half the spacing to the neighbours.
    if (nu >= 30.0 && k <= 8) {
        const double seed = olver_zero_estimate(nu, k);
        const double up = olver_zero_estimate(nu, k + 1) - seed;
        const double down = (k > 1) ? seed - olver_zero_estimate(nu, k - 1) : up;
        const double half = 0.5 * std::min({up, down, std::cbrt(nu)});
        const numeric::Bracket b{seed - half, seed + half};
        if (has_sign_change(spec, b)) return refine(spec, b);
    }
    // Fallback: count sign changes from the classical lower bound j_{nu,1} > nu.
    const double start = std::max(nu, 1e-3);
    const auto b = numeric::nth_sign_change([&](double x) { return zero_function(spec, x).first; }, start,
                                            0.25 * pi, k);
    return refine(spec, b);
}

}  // namespace detail

/// Positive zero described by `spec`.
///
/// Derivative zeros are bracketed by consecutive function zeros (one extremum
/// between two zeros); Robin zeros by (derivative zero, function zero).
/// For n = 0 the derivative zero at x = 0 is not counted.
inline double find_zero(const ZeroSpec& spec) {
    spec.validate();
    ZeroSpec fn = spec;
    fn.kind = ZeroKind::function;
    switch (spec.kind) {
        case ZeroKind::function:
            return detail::function_zero(spec);
        case ZeroKind::derivative: {
            if (spec.n == 0) {
                // J_0' = -J_1 and j_0' = -j_1.
                ZeroSpec one = fn;
                one.n = 1;
                return detail::function_zero(one);
            }
            double lo;
            if (spec.k == 1) {
                lo = (spec.family == Family::cylindrical) ? static_cast<double>(spec.n)
                                                          : std::sqrt(static_cast<double>(spec.n) * (spec.n + 1));
            } else {
                fn.k = spec.k - 1;
                lo = detail::function_zero(fn);
            }
            fn.k = spec.k;
            const double hi = detail::function_zero(fn);
            const numeric::Bracket b{lo, hi};
            if (!detail::has_sign_change(spec, b)) throw BracketError("find_zero: derivative bracket has no sign change");
            return detail::refine(spec, b);
        }
        case ZeroKind::robin:
        case ZeroKind::robin_radial: {
            double lo;
            if (spec.n == 0) {
                if (spec.k == 1) {
                    lo = 0.0;
                } else {
                    ZeroSpec d = spec;
                    d.kind = ZeroKind::derivative;
                    d.k = spec.k - 1;
                    lo = find_zero(d);
                }
            } else {
                ZeroSpec d = spec;
                d.kind = ZeroKind::derivative;
                lo = find_zero(d);
            }
            const double hi = detail::function_zero(fn);
            const numeric::Bracket b{lo, hi};
            if (!detail::has_sign_change(spec, b)) throw BracketError("find_zero: Robin bracket has no sign change");
            return detail::refine(spec, b);
        }
    }
    throw DomainError("find_zero: unknown zero kind");
}

/// Right-hand side of Kapteyn's inequality J_nu(nu x) < x^nu e^{nu s} / (1 + s)^nu,
/// s = sqrt(1 - x^2), for 0 < x < 1.
inline double kapteyn_rhs(double nu, double x) {
    if (!(x > 0.0 && x < 1.0)) throw DomainError("kapteyn_rhs: x must lie in (0, 1)");
    if (!(nu > 0.0)) throw DomainError("kapteyn_rhs: nu must be > 0");
    const double s = std::sqrt((1.0 - x) * (1.0 + x));
    return std::exp(nu * (std::log(x) + s - std::log1p(s)));
}

}  // namespace eigloc::bessel
