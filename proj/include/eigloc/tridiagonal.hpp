#pragma once

// Symmetric tridiagonal eigenproblems: implicit-shift QL for the spectrum,
// inverse iteration for a single eigenvector.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "eigloc/error.hpp"

namespace eigloc::numeric {

/// Eigenvalues (ascending) of the symmetric tridiagonal matrix with diagonal
/// `d` and off-diagonal `e` (e[i] couples rows i and i+1).
inline std::vector<double> tridiagonal_eigenvalues(std::vector<double> d, std::vector<double> e) {
    const int n = static_cast<int>(d.size());
    if (n == 0) return d;
    if (static_cast<int>(e.size()) < n - 1) throw DomainError("tridiagonal_eigenvalues: off-diagonal too short");
    e.resize(static_cast<std::size_t>(n), 0.0);
    e[static_cast<std::size_t>(n) - 1] = 0.0;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    auto D = [&](int i) -> double& { return d[static_cast<std::size_t>(i)]; };
    auto E = [&](int i) -> double& { return e[static_cast<std::size_t>(i)]; };
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(D(m)) + std::abs(D(m + 1));
                if (std::abs(E(m)) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == 60) throw ConvergenceError("tridiagonal_eigenvalues: QL iteration did not converge");
                double g = (D(l + 1) - D(l)) / (2.0 * E(l));
                double r = std::hypot(g, 1.0);
                g = D(m) - D(l) + E(l) / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i;
                bool deflated = false;
                for (i = m - 1; i >= l; --i) {
                    const double f = s * E(i);
                    const double b = c * E(i);
                    r = std::hypot(f, g);
                    E(i + 1) = r;
                    if (r == 0.0) {
                        D(i + 1) -= p;
                        E(m) = 0.0;
                        deflated = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = D(i + 1) - p;
                    r = (D(i) - g) * s + 2.0 * c * b;
                    p = s * r;
                    D(i + 1) = g + p;
                    g = c * r - b;
                }
                if (deflated) continue;
                D(l) -= p;
                E(l) = g;
                E(m) = 0.0;
            }
        } while (m != l);
    }
    std::sort(d.begin(), d.end());
    return d;
}

namespace detail {

/// Solves (T - sigma I) x = rhs by Gaussian elimination with partial pivoting.
inline std::vector<double> shifted_solve(const std::vector<double>& d, const std::vector<double>& e, double sigma,
                                         std::vector<double> rhs) {
    const std::size_t n = d.size();
    // rows hold up to three nonzeros after pivoting: a (diag), b (super), c (super-super)
    std::vector<double> a(n), b(n, 0.0), c(n, 0.0), sub(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = d[i] - sigma;
        if (i + 1 < n) b[i] = e[i];
        if (i > 0) sub[i] = e[i - 1];
    }
    const double tiny = std::numeric_limits<double>::epsilon() *
                        std::max(1.0, *std::max_element(d.begin(), d.end(), [](double x, double y) {
                            return std::abs(x) < std::abs(y);
                        }));
    for (std::size_t i = 0; i + 1 < n; ++i) {
        // candidate pivot rows: i (a, b, c) and i+1 (sub, a, b)
        if (std::abs(sub[i + 1]) > std::abs(a[i])) {
            std::swap(a[i], sub[i + 1]);
            std::swap(b[i], a[i + 1]);
            std::swap(c[i], b[i + 1]);
            std::swap(rhs[i], rhs[i + 1]);
        }
        if (a[i] == 0.0) a[i] = tiny;
        const double factor = sub[i + 1] / a[i];
        a[i + 1] -= factor * b[i];
        b[i + 1] -= factor * c[i];
        rhs[i + 1] -= factor * rhs[i];
        sub[i + 1] = 0.0;
    }
    if (a[n - 1] == 0.0) a[n - 1] = tiny;
    std::vector<double> x(n);
    for (std::size_t k = n; k-- > 0;) {
        double s = rhs[k];
        if (k + 1 < n) s -= b[k] * x[k + 1];
        if (k + 2 < n) s -= c[k] * x[k + 2];
        x[k] = s / a[k];
    }
    return x;
}

}  // namespace detail

/// Unit eigenvector for the eigenvalue `lambda` by inverse iteration.
/// The sign is left arbitrary; callers fix their own convention.
inline std::vector<double> tridiagonal_eigenvector(const std::vector<double>& d, const std::vector<double>& e,
                                                   double lambda) {
    const std::size_t n = d.size();
    const double sigma = lambda + 1e-14 * std::max(1.0, std::abs(lambda));
    std::vector<double> x(n, 1.0);
    for (int it = 0; it < 4; ++it) {
        x = detail::shifted_solve(d, e, sigma, x);
        double norm = 0.0;
        for (double v : x) norm += v * v;
        norm = std::sqrt(norm);
        for (double& v : x) v /= norm;
    }
    return x;
}

}  // namespace eigloc::numeric
