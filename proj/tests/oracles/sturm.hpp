#pragma once

// Sturm-count bisection for symmetric tridiagonal matrices in long double.
// Shares nothing with the QL solver under test.

#include <cmath>
#include <vector>

namespace oracle {

/// Number of eigenvalues strictly below x.
inline int sturm_count(const std::vector<long double>& d, const std::vector<long double>& e, long double x) {
    int count = 0;
    long double piv = 1.0L;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const long double off = (i == 0) ? 0.0L : e[i - 1] * e[i - 1];
        piv = d[i] - x - ((i == 0) ? 0.0L : off / piv);
        if (piv == 0.0L) piv = -1e-300L;
        if (piv < 0.0L) ++count;
    }
    return count;
}

/// The eigenvalue of rank `rank` (0-based, ascending).
inline long double sturm_eigenvalue(const std::vector<long double>& d, const std::vector<long double>& e, int rank) {
    long double lo = 0.0L, hi = 0.0L;
    for (std::size_t i = 0; i < d.size(); ++i) {
        long double r = 0.0L;
        if (i > 0) r += std::fabs(e[i - 1]);
        if (i + 1 < d.size()) r += std::fabs(e[i]);
        lo = std::fmin(lo, d[i] - r);
        hi = std::fmax(hi, d[i] + r);
    }
    for (int it = 0; it < 200; ++it) {
        const long double mid = 0.5L * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (sturm_count(d, e, mid) > rank) hi = mid;
        else lo = mid;
    }
    return 0.5L * (lo + hi);
}

/// Recurrence matrix of ce_{2m+1} (odd harmonics, cosine), size K.
inline void ce_odd_matrix(long double q, int size, std::vector<long double>& d, std::vector<long double>& e) {
    d.assign(size, 0.0L);
    e.assign(size - 1, q);
    for (int j = 0; j < size; ++j) d[j] = (2.0L * j + 1.0L) * (2.0L * j + 1.0L);
    d[0] += q;
}

/// Recurrence matrix of ce_{2m}, symmetrized in the first row.
inline void ce_even_matrix(long double q, int size, std::vector<long double>& d, std::vector<long double>& e) {
    d.assign(size, 0.0L);
    e.assign(size - 1, q);
    for (int j = 0; j < size; ++j) d[j] = 4.0L * j * j;
    e[0] = std::sqrt(2.0L) * q;
}

/// Recurrence matrix for one of the four Mathieu parity classes:
/// 0 = ce even harmonics, 1 = ce odd, 2 = se odd, 3 = se even (from 2).
inline void mathieu_matrix(int parity, long double q, int size, std::vector<long double>& d,
                           std::vector<long double>& e) {
    if (parity == 0) {
        ce_even_matrix(q, size, d, e);
        return;
    }
    if (parity == 1) {
        ce_odd_matrix(q, size, d, e);
        return;
    }
    d.assign(size, 0.0L);
    e.assign(size - 1, q);
    for (int j = 0; j < size; ++j) {
        const long double h = (parity == 2) ? 2.0L * j + 1.0L : 2.0L * j + 2.0L;
        d[j] = h * h;
    }
    if (parity == 2) d[0] -= q;
}

/// Characteristic value of ce_order (sine = false) or se_order (sine = true).
inline long double mathieu_c(bool sine, int order, long double q, int size = 400) {
    const int parity = sine ? ((order % 2 == 1) ? 2 : 3) : ((order % 2 == 0) ? 0 : 1);
    const int rank = (parity == 3) ? (order - 2) / 2 : order / 2;
    std::vector<long double> d, e;
    mathieu_matrix(parity, q, size, d, e);
    return sturm_eigenvalue(d, e, rank);
}

/// RK4 in long double for y'' = (c - 2q cosh 2r) y on [r0, r1] from (y0, dy0).
/// Returns y(r1).
inline long double modified_mathieu_shoot(long double c, long double q, long double r0, long double r1,
                                          long double y0, long double dy0, int steps = 4000) {
    const long double h = (r1 - r0) / steps;
    long double y = y0, v = dy0, r = r0;
    auto acc = [&](long double rr, long double yy) { return (c - 2.0L * q * std::cosh(2.0L * rr)) * yy; };
    for (int s = 0; s < steps; ++s) {
        const long double k1y = v, k1v = acc(r, y);
        const long double k2y = v + 0.5L * h * k1v, k2v = acc(r + 0.5L * h, y + 0.5L * h * k1y);
        const long double k3y = v + 0.5L * h * k2v, k3v = acc(r + 0.5L * h, y + 0.5L * h * k2y);
        const long double k4y = v + h * k3v, k4v = acc(r + h, y + h * k3y);
        y += h / 6.0L * (k1y + 2.0L * k2y + 2.0L * k3y + k4y);
        v += h / 6.0L * (k1v + 2.0L * k2v + 2.0L * k3v + k4v);
        r += h;
    }
    return y;
}

/// k-th root in q of a shooting function f(q): scan in sqrt(q) with step ds,
/// then bisection.
template <class F>
long double shooting_root(F&& f, int k, long double ds = 0.05L, long double q_start = 1e-3L) {
    long double s0 = std::sqrt(q_start);
    long double f0 = f(s0 * s0);
    int found = 0;
    for (int it = 0; it < 100000; ++it) {
        const long double s1 = s0 + ds;
        const long double f1 = f(s1 * s1);
        if ((f0 < 0) != (f1 < 0)) {
            if (++found == k) {
                long double lo = s0 * s0, hi = s1 * s1, flo = f0;
                for (int b = 0; b < 200 && hi - lo > 1e-16L * hi; ++b) {
                    const long double mid = 0.5L * (lo + hi);
                    const long double fm = f(mid);
                    if ((fm < 0) == (flo < 0)) {
                        lo = mid;
                        flo = fm;
                    } else {
                        hi = mid;
                    }
                }
                return 0.5L * (lo + hi);
            }
        }
        s0 = s1;
        f0 = f1;
    }
    return -1.0L;
}

}  // namespace oracle
