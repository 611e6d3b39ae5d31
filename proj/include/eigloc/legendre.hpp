#pragma once

#include <cmath>

#include "eigloc/error.hpp"

namespace eigloc::legendre {

/// Associated Legendre function P_n^m(x), 0 <= m <= n, |x| <= 1, without
/// the Condon-Shortley phase. Upward recurrence in n from P_m^m.
inline double assoc_legendre(int n, int m, double x) {
    if (m < 0 || m > n) throw InvalidIndex("assoc_legendre: need 0 <= m <= n");
    if (!(std::abs(x) <= 1.0)) throw DomainError("assoc_legendre: |x| must be <= 1");
    double pmm = 1.0;
    if (m > 0) {
        const double s = std::sqrt((1.0 - x) * (1.0 + x));
        double odd = 1.0;
        for (int i = 1; i <= m; ++i) {
            pmm *= odd * s;
            odd += 2.0;
        }
    }
    if (n == m) return pmm;
    double pm1 = x * (2.0 * m + 1.0) * pmm;
    if (n == m + 1) return pm1;
    double p = 0.0;
    for (int l = m + 2; l <= n; ++l) {
        p = ((2.0 * l - 1.0) * x * pm1 - (l + m - 1.0) * pmm) / (l - m);
        pmm = pm1;
        pm1 = p;
    }
    return p;
}

}  // namespace eigloc::legendre
