#pragma once

// Angular Mathieu functions ce_n / se_n, characteristic values from the
// truncated tridiagonal recurrence matrices, modified Mathieu functions of
// both kinds by Bessel-product series, and the large-q expansions.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "eigloc/bessel.hpp"
#include "eigloc/error.hpp"
#include "eigloc/tridiagonal.hpp"

namespace eigloc::mathieu {

inline constexpr int default_kmax = 200;

enum class Angular { ce, se };

/// Parity classes of the four recurrence matrices:
/// ce_{2m} (even harmonics), ce_{2m+1}, se_{2m+1}, se_{2m+2}.
enum class Parity { ce_even, ce_odd, se_odd, se_even };

enum class RadialKind { first = 1, second = 2 };

inline Parity parity_of(Angular f, int order) {
    if (f == Angular::ce) return (order % 2 == 0) ? Parity::ce_even : Parity::ce_odd;
    return (order % 2 == 1) ? Parity::se_odd : Parity::se_even;
}

inline const char* to_string(Parity p) {
    switch (p) {
        case Parity::ce_even: return "ce-even";
        case Parity::ce_odd: return "ce-odd";
        case Parity::se_odd: return "se-odd";
        case Parity::se_even: return "se-even";
    }
    return "?";
}

/// A solved angular Mathieu function: ce_order or se_order at parameter q.
struct MathieuBasis {
    Angular function = Angular::ce;
    int order = 0;
    Parity parity = Parity::ce_even;
    double q = 0.0;
    double c = 0.0;                // characteristic value
    std::vector<double> coeffs;    // Fourier coefficients, McLachlan normalization
    int kmax = default_kmax;
    std::size_t effective = 0;     // coefficients past this index are below 1e-18 of the largest

    /// Harmonic carried by coefficient j.
    int harmonic(std::size_t j) const {
        const int jj = static_cast<int>(j);
        switch (parity) {
            case Parity::ce_even: return 2 * jj;
            case Parity::ce_odd:
            case Parity::se_odd: return 2 * jj + 1;
            case Parity::se_even: return 2 * jj + 2;
        }
        return 0;
    }

    /// Rank of the characteristic value within its parity class.
    int rank() const { return (parity == Parity::se_even) ? (order - 2) / 2 : order / 2; }

    /// ce_n(theta) or se_n(theta) together with its first two derivatives.
    struct Value {
        double f, df, d2f;
    };

    Value eval(double theta) const {
        Value v{0.0, 0.0, 0.0};
        for (std::size_t j = 0; j < effective; ++j) {
            const double h = harmonic(j);
            const double a = coeffs[j];
            const double c = std::cos(h * theta);
            const double s = std::sin(h * theta);
            if (function == Angular::ce) {
                v.f += a * c;
                v.df -= a * h * s;
                v.d2f -= a * h * h * c;
            } else {
                v.f += a * s;
                v.df += a * h * c;
                v.d2f -= a * h * h * s;
            }
        }
        return v;
    }

    double operator()(double theta) const { return eval(theta).f; }
};

namespace detail {

inline void assemble(Parity p, double q, int size, std::vector<double>& d, std::vector<double>& e) {
    d.assign(static_cast<std::size_t>(size), 0.0);
    e.assign(static_cast<std::size_t>(size) - 1, q);
    for (int j = 0; j < size; ++j) {
        double h = 0.0;
        switch (p) {
            case Parity::ce_even: h = 2.0 * j; break;
            case Parity::ce_odd:
            case Parity::se_odd: h = 2.0 * j + 1.0; break;
            case Parity::se_even: h = 2.0 * j + 2.0; break;
        }
        d[static_cast<std::size_t>(j)] = h * h;
    }
    switch (p) {
        case Parity::ce_even: e[0] = std::sqrt(2.0) * q; break;  // symmetrized A_0 row
        case Parity::ce_odd: d[0] += q; break;
        case Parity::se_odd: d[0] -= q; break;
        case Parity::se_even: break;
    }
}

/// Sign reference at theta = pi/2, where the functions are large for any q:
/// the value (even about pi/2) or the slope (odd about pi/2).
inline double sign_reference(Parity p, const std::vector<double>& a) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double alt = (k % 2 == 0) ? 1.0 : -1.0;
        switch (p) {
            case Parity::ce_even: s += alt * a[k]; break;
            case Parity::ce_odd: s += (2.0 * k + 1.0) * alt * a[k]; break;
            case Parity::se_odd: s += alt * a[k]; break;
            case Parity::se_even: s -= (2.0 * k + 2.0) * alt * a[k]; break;
        }
    }
    return s;
}

}  // namespace detail

/// Characteristic value and Fourier coefficients of ce_order / se_order.
inline MathieuBasis solve_characteristic(Angular f, int order, double q, int kmax = default_kmax) {
    if (order < 0 || (f == Angular::se && order < 1)) {
        throw InvalidIndex("solve_characteristic: ce needs order >= 0, se needs order >= 1");
    }
    if (!(q >= 0.0) || !std::isfinite(q)) throw DomainError("solve_characteristic: q must be finite and >= 0");
    if (kmax < order + 20) throw DomainError("solve_characteristic: K_max must be at least order + 20");

    MathieuBasis b;
    b.function = f;
    b.order = order;
    b.parity = parity_of(f, order);
    b.q = q;
    b.kmax = kmax;

    std::vector<double> d, e;
    detail::assemble(b.parity, q, kmax, d, e);
    const auto values = numeric::tridiagonal_eigenvalues(d, e);
    const int rank = b.rank();
    b.c = values[static_cast<std::size_t>(rank)];

    std::vector<double> v = numeric::tridiagonal_eigenvector(d, e, b.c);
    // undo the symmetrization: the matrix row for A_0 used sqrt(2) A_0
    if (b.parity == Parity::ce_even) v[0] /= std::sqrt(2.0);
    double norm = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) norm += (b.parity == Parity::ce_even && k == 0 ? 2.0 : 1.0) * v[k] * v[k];
    norm = std::sqrt(norm);
    const int expected = (b.parity == Parity::se_even) ? (((rank + 1) % 2 == 0) ? 1 : -1) : ((rank % 2 == 0) ? 1 : -1);
    const double ref = detail::sign_reference(b.parity, v);
    if ((ref < 0.0) != (expected < 0)) norm = -norm;
    for (double& x : v) x /= norm;

    double biggest = 0.0;
    for (double x : v) biggest = std::max(biggest, std::abs(x));
    if (std::abs(v.back()) > 1e-10 * biggest) {
        throw TruncationError("solve_characteristic: trailing coefficient not negligible at K_max = " +
                              std::to_string(kmax) + " (q = " + std::to_string(q) + ")");
    }
    std::size_t eff = v.size();
    while (eff > 1 && std::abs(v[eff - 1]) < 1e-18 * biggest) --eff;
    b.effective = eff;
    b.coeffs = std::move(v);
    return b;
}

/// Residual of the three-term Mathieu recurrence on the coefficients,
/// relative to max |c A_j|.
inline double recurrence_residual(const MathieuBasis& b) {
    std::vector<double> d, e;
    detail::assemble(b.parity, b.q, static_cast<int>(b.coeffs.size()), d, e);
    std::vector<double> a = b.coeffs;
    if (b.parity == Parity::ce_even) a[0] *= std::sqrt(2.0);
    double worst = 0.0, scale = 0.0;
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) {
        double r = (d[i] - b.c) * a[i];
        if (i > 0) r += e[i - 1] * a[i - 1];
        if (i + 1 < n) r += e[i] * a[i + 1];
        worst = std::max(worst, std::abs(r));
        scale = std::max(scale, std::abs(b.c * a[i]) + std::abs(d[i] * a[i]));
    }
    return worst / std::max(scale, 1e-300);
}

// ---------------------------------------------------------------------------
// Modified Mathieu functions
// ---------------------------------------------------------------------------

struct RadialValue {
    double value;
    double derivative;
};

namespace detail {

inline double signed_index(const std::vector<double>& seq, int m) {
    if (m >= 0) return seq[static_cast<std::size_t>(m)];
    return (m % 2 == 0) ? seq[static_cast<std::size_t>(-m)] : -seq[static_cast<std::size_t>(-m)];
}

inline double signed_prime(const std::vector<double>& seq, int m) {
    return 0.5 * (signed_index(seq, m - 1) - signed_index(seq, m + 1));
}

}  // namespace detail

/// Mc_n^{(kind)} (for a ce basis) or Ms_n^{(kind)} (for an se basis) at
/// radial coordinate r, with its r-derivative. Standard normalization,
/// Bessel-product series with the pivot at the largest coefficient.
inline RadialValue radial_eval(const MathieuBasis& b, RadialKind kind, double r) {
    if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("radial_eval: r must be finite and >= 0");
    if (!(b.q > 0.0)) throw DomainError("radial_eval: q must be > 0");
    const double sq = std::sqrt(b.q);
    const double u1 = sq * std::exp(-r);
    const double u2 = sq * std::exp(r);
    const std::size_t n = b.effective;
    std::size_t s = 0;
    for (std::size_t j = 1; j < n; ++j) {
        if (std::abs(b.coeffs[j]) > std::abs(b.coeffs[s])) s = j;
    }
    int offset = 0;
    double combine = 1.0;
    switch (b.parity) {
        case Parity::ce_even: offset = 0; combine = 1.0; break;
        case Parity::ce_odd: offset = 1; combine = 1.0; break;
        case Parity::se_odd: offset = 1; combine = -1.0; break;
        case Parity::se_even: offset = 2; combine = -1.0; break;
    }
    const int si = static_cast<int>(s);
    const int top = static_cast<int>(n) + si + offset + 2;
    const auto j1 = bessel::bessel_j_sequence(top, u1);
    const auto j2 = (kind == RadialKind::first) ? bessel::bessel_j_sequence(top, u2) : bessel::bessel_y_sequence(top, u2);

    const int m = b.rank();
    double sum = 0.0, dsum = 0.0, biggest = 0.0, last = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const int ki = static_cast<int>(k);
        const double sign = ((m + ki) % 2 == 0) ? 1.0 : -1.0;
        const int a1 = ki - si, b1 = ki + si + offset;
        const double ja = detail::signed_index(j1, a1), jb = detail::signed_index(j1, b1);
        const double za = detail::signed_index(j2, a1), zb = detail::signed_index(j2, b1);
        const double dja = -u1 * detail::signed_prime(j1, a1), djb = -u1 * detail::signed_prime(j1, b1);
        const double dza = u2 * detail::signed_prime(j2, a1), dzb = u2 * detail::signed_prime(j2, b1);
        const double t = sign * b.coeffs[k] * (ja * zb + combine * jb * za);
        const double dt = sign * b.coeffs[k] * (dja * zb + ja * dzb + combine * (djb * za + jb * dza));
        sum += t;
        dsum += dt;
        biggest = std::max(biggest, std::abs(t));
        last = std::abs(t);
    }
    if (!std::isfinite(sum) || !std::isfinite(dsum)) {
        throw ConvergenceError("radial_eval: Bessel-product series overflowed");
    }
    if (last > 1e-12 * std::max(biggest, std::abs(sum)) && n == b.coeffs.size()) {
        throw ConvergenceError("radial_eval: Bessel-product series tail above 1e-12");
    }
    double denom = b.coeffs[s];
    // for s = 0 the two products coincide
    if (b.parity == Parity::ce_even && s == 0) denom *= 2.0;
    return {sum / denom, dsum / denom};
}

/// Wronskian Mc1 Mc2' - Mc1' Mc2 at r (2/pi in standard normalization).
inline double wronskian(const MathieuBasis& b, double r) {
    const auto f = radial_eval(b, RadialKind::first, r);
    const auto g = radial_eval(b, RadialKind::second, r);
    return f.value * g.derivative - f.derivative * g.value;
}

// ---------------------------------------------------------------------------
// Large-q asymptotics
// ---------------------------------------------------------------------------

inline double h_plus(int n, double z) {
    const double s = std::sin(z);
    return std::sqrt(std::pow(1.0 - s, n) / std::pow(1.0 + s, n + 1));
}

inline double h_minus(int n, double z) {
    const double s = std::sin(z);
    return std::sqrt(std::pow(1.0 + s, n) / std::pow(1.0 - s, n + 1));
}

/// Trigonometric closed forms 2^{n+1/2} cos^{2n+1}(z/2 + pi/4) / cos^{n+1} z
/// (and sin for h^-).
inline double h_plus_trig(int n, double z) {
    return std::pow(2.0, n + 0.5) * std::pow(std::cos(0.5 * z + std::numbers::pi / 4.0), 2 * n + 1) /
           std::pow(std::cos(z), n + 1);
}

inline double h_minus_trig(int n, double z) {
    return std::pow(2.0, n + 0.5) * std::pow(std::sin(0.5 * z + std::numbers::pi / 4.0), 2 * n + 1) /
           std::pow(std::cos(z), n + 1);
}

/// f_k^{+} (sign = +1) or f_k^{-} (sign = -1); only k = 0, 1 are known.
inline double f_coefficient(int k, int n, double z, int sign) {
    if (k == 0) return 1.0;
    if (k != 1) throw DomainError("f_coefficient: only k = 0 and k = 1 are available");
    const double c = std::cos(z);
    return (2.0 * n + 1.0 - sign * (n * n + n + 1.0) * std::sin(z)) / (8.0 * c * c);
}

/// G_n^{+} (sign = +1) or G_n^{-} (sign = -1) with the series cut after `terms` terms.
inline double g_function(int n, double z, double q, int sign, int terms = 2) {
    const double sq = std::sqrt(q);
    const double decay = std::exp(-4.0 * sq * std::sin(z));
    double plus = 1.0, minus = 1.0;
    if (terms >= 2) {
        plus += f_coefficient(1, n, z, +1) / sq;
        minus += f_coefficient(1, n, z, -1) / sq;
    }
    return h_plus(n, z) * plus + sign * decay * h_minus(n, z) * minus;
}

/// Smallest q for which |f_1^{+-}(z)| / sqrt(q) < 1/2 on [0, gamma]
/// (the two-term surrogate of the threshold N_gamma).
inline double n_gamma(int n, double gamma, int samples = 2000) {
    double worst = 0.0;
    for (int i = 0; i <= samples; ++i) {
        const double z = gamma * i / samples;
        worst = std::max({worst, std::abs(f_coefficient(1, n, z, +1)), std::abs(f_coefficient(1, n, z, -1))});
    }
    return 4.0 * worst * worst;
}

/// Un-normalized asymptotic shapes: ce_n ~ C * first, se_{n+1} ~ S * second.
inline std::pair<double, double> asymptotic_angular(int n, double z, double q, int terms = 2) {
    if (!(z >= 0.0 && z < std::numbers::pi / 2.0)) throw DomainError("asymptotic_angular: z must lie in [0, pi/2)");
    if (terms < 1 || terms > 2) throw DomainError("asymptotic_angular: terms must be 1 or 2");
    if (!(q > 0.0)) throw DomainError("asymptotic_angular: q must be > 0");
    const double sq = std::sqrt(q);
    const double e = std::exp(2.0 * sq * std::sin(z));
    const double up0 = e * h_plus(n, z);
    const double down0 = h_minus(n, z) / e;
    double fp = 1.0, fm = 1.0;
    if (terms == 2) {
        fp += f_coefficient(1, n, z, +1) / sq;
        fm += f_coefficient(1, n, z, -1) / sq;
        // size of the k = 1 correction relative to the leading terms
        const double corr = (up0 * std::abs(fp - 1.0) + down0 * std::abs(fm - 1.0)) / (up0 + down0);
        if (!(corr < 0.5)) throw DomainError("asymptotic_angular: q too small for the two-term expansion");
    }
    const double up = up0 * fp;
    const double down = down0 * fm;
    return {up + down, up - down};
}

/// Result of calibrating the asymptotic prefactor at z_ref against the
/// direct evaluation.
struct AsymptoticFit {
    double prefactor;
    double max_relative_error;  // max |approx - direct| / max |direct| over the sample grid
};

/// Compares the two-term expansion with the direct ce_n (use_se = false)
/// or se_{n+1} (use_se = true) on [0, z_max].
inline AsymptoticFit fit_asymptotic(int n, bool use_se, double q, double z_max = 1.2, double z_ref = 0.2,
                                    int samples = 241, int kmax = default_kmax) {
    const MathieuBasis b =
        use_se ? solve_characteristic(Angular::se, n + 1, q, kmax) : solve_characteristic(Angular::ce, n, q, kmax);
    auto shape = [&](double z) {
        const auto s = asymptotic_angular(n, z, q, 2);
        return use_se ? s.second : s.first;
    };
    const double pref = b(z_ref) / shape(z_ref);
    double worst = 0.0, peak = 0.0;
    for (int i = 0; i <= samples; ++i) {
        const double z = z_max * i / samples;
        const double direct = b(z);
        peak = std::max(peak, std::abs(direct));
        worst = std::max(worst, std::abs(pref * shape(z) - direct));
    }
    return {pref, worst / peak};
}

/// Both inequalities of the G_n bounds on 100-point grids in (0, alpha)
/// and (beta, gamma), for G^+ and G^-.
inline bool g_bound_check(int n, double alpha, double beta, double gamma, double q) {
    if (!(0.0 < alpha && alpha < beta && beta < gamma && gamma < std::numbers::pi / 2.0)) {
        throw DomainError("g_bound_check: need 0 < alpha < beta < gamma < pi/2");
    }
    const double sq = std::sqrt(q);
    const double hm_alpha = h_minus(n, alpha);
    const double lower = 0.5 * h_plus(n, gamma);
    for (int sign : {+1, -1}) {
        for (int i = 1; i <= 100; ++i) {
            const double z1 = alpha * i / 101.0;
            const double upper = 1.5 * (1.0 + hm_alpha * std::exp(-4.0 * sq * std::sin(z1)));
            if (!(std::abs(g_function(n, z1, q, sign)) < upper)) return false;
            const double z2 = beta + (gamma - beta) * i / 101.0;
            if (!(std::abs(g_function(n, z2, q, sign)) > lower)) return false;
        }
    }
    return true;
}

}  // namespace eigloc::mathieu
