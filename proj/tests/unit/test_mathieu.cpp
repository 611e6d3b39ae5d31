#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "eigloc/mathieu.hpp"
#include "eigloc/quadrature.hpp"
#include "sturm.hpp"

using namespace eigloc;
using namespace eigloc::mathieu;
using std::numbers::pi;

namespace {

// Central second difference with one Richardson step.
template <class F>
double second_derivative(F&& f, double x, double h) {
    auto d2 = [&](double s) { return (f(x + s) - 2.0 * f(x) + f(x - s)) / (s * s); };
    return (4.0 * d2(h / 2.0) - d2(h)) / 3.0;
}

}  // namespace

TEST(Characteristic, SmallQLimit) {
    for (int n = 0; n <= 5; ++n) {
        EXPECT_NEAR(solve_characteristic(Angular::ce, n, 1e-8).c, n * n, 1e-6) << n;
    }
    for (int n = 1; n <= 5; ++n) {
        EXPECT_NEAR(solve_characteristic(Angular::se, n, 1e-8).c, n * n, 1e-6) << n;
    }
    EXPECT_NEAR(solve_characteristic(Angular::ce, 2, 0.0).c, 4.0, 1e-14);
}

TEST(Characteristic, SmallQAngularShapes) {
    const double q = 1e-10;
    for (int n = 1; n <= 4; ++n) {
        const auto ce = solve_characteristic(Angular::ce, n, q);
        const auto se = solve_characteristic(Angular::se, n, q);
        double worst = 0.0;
        for (int i = 0; i <= 200; ++i) {
            const double t = 2.0 * pi * i / 200.0;
            worst = std::max(worst, std::abs(ce(t) - std::cos(n * t)));
            worst = std::max(worst, std::abs(se(t) - std::sin(n * t)));
        }
        EXPECT_LT(worst, 1e-8) << n;
    }
    // McLachlan normalization puts ce_0 at 1/sqrt(2)
    EXPECT_NEAR(solve_characteristic(Angular::ce, 0, q)(1.0), 1.0 / std::sqrt(2.0), 1e-8);
}

TEST(Characteristic, Ce1AtQ5AgainstSturmOracle) {
    std::vector<long double> d, e;
    oracle::ce_odd_matrix(5.0L, 800, d, e);
    const long double ref = oracle::sturm_eigenvalue(d, e, 0);
    const auto b = solve_characteristic(Angular::ce, 1, 5.0);
    EXPECT_NEAR(b.c, static_cast<double>(ref), 1e-12 * std::abs(static_cast<double>(ref)));
}

TEST(Characteristic, HigherOrdersAgainstSturmOracle) {
    for (double q : {20.0, 300.0}) {
        std::vector<long double> d, e;
        oracle::ce_even_matrix(q, 800, d, e);
        for (int m = 0; m < 4; ++m) {
            const long double ref = oracle::sturm_eigenvalue(d, e, m);
            const auto b = solve_characteristic(Angular::ce, 2 * m, q);
            EXPECT_NEAR(b.c, static_cast<double>(ref), 1e-12 * std::max(1.0, std::abs(static_cast<double>(ref))))
                << q << " " << m;
        }
    }
}

TEST(Characteristic, RecurrenceResidual) {
    for (double q : {1.0, 5.0, 20.0, 100.0, 900.0}) {
        for (int n = 0; n <= 6; ++n) {
            EXPECT_LT(recurrence_residual(solve_characteristic(Angular::ce, n, q)), 1e-12) << q << " " << n;
            EXPECT_LT(recurrence_residual(solve_characteristic(Angular::se, n + 1, q)), 1e-12) << q << " " << n;
        }
    }
}

TEST(Characteristic, StableUnderKmaxDoubling) {
    for (double q : {5.0, 100.0, 900.0}) {
        for (int n : {0, 1, 4}) {
            for (Angular f : {Angular::ce, Angular::se}) {
                const int order = (f == Angular::se) ? n + 1 : n;
                const auto a = solve_characteristic(f, order, q, 200);
                const auto b = solve_characteristic(f, order, q, 400);
                EXPECT_LT(std::abs(a.c - b.c), 1e-10 * std::max(1.0, std::abs(b.c)));
                for (std::size_t j = 0; j < a.coeffs.size(); ++j) {
                    EXPECT_NEAR(a.coeffs[j], b.coeffs[j], 1e-10);
                }
                const auto ra = radial_eval(a, RadialKind::first, 0.7);
                const auto rb = radial_eval(b, RadialKind::first, 0.7);
                EXPECT_NEAR(ra.value, rb.value, 1e-10 * std::max(1.0, std::abs(rb.value)));
            }
        }
    }
}

TEST(Characteristic, RejectsBadInput) {
    EXPECT_THROW(solve_characteristic(Angular::se, 0, 1.0), InvalidIndex);
    EXPECT_THROW(solve_characteristic(Angular::ce, -1, 1.0), InvalidIndex);
    EXPECT_THROW(solve_characteristic(Angular::ce, 0, -1.0), DomainError);
    EXPECT_THROW(solve_characteristic(Angular::ce, 5, 1.0, 24), DomainError);
    EXPECT_THROW(solve_characteristic(Angular::ce, 0, 900.0, 20), TruncationError);
}

TEST(Angular, SeVanishesAtZero) {
    for (double q : {0.5, 20.0, 400.0}) EXPECT_NEAR(solve_characteristic(Angular::se, 1, q)(0.0), 0.0, 1e-15);
}

TEST(Angular, Periodic) {
    const auto b = solve_characteristic(Angular::ce, 3, 12.0);
    for (double t : {0.1, 1.3, 2.9}) EXPECT_NEAR(b(t), b(t + 2.0 * pi), 1e-12);
}

TEST(Angular, OdeResidual) {
    for (double q : {1.0, 5.0, 20.0, 100.0}) {
        for (int n = 0; n <= 6; ++n) {
            for (Angular f : {Angular::ce, Angular::se}) {
                const auto b = solve_characteristic(f, f == Angular::se ? n + 1 : n, q);
                double worst = 0.0, scale = 0.0;
                for (int i = 1; i < 40; ++i) {
                    const double t = 2.0 * pi * i / 40.0 + 0.01;
                    const double y = b(t);
                    const double y2 = second_derivative(b, t, 1e-3);
                    worst = std::max(worst, std::abs(y2 + (b.c - 2.0 * q * std::cos(2.0 * t)) * y));
                    scale = std::max(scale, (std::abs(b.c) + 2.0 * q) * std::abs(y));
                }
                EXPECT_LT(worst / scale, 1e-7) << q << " " << n;
            }
        }
    }
}

TEST(Angular, Orthogonality) {
    const double q = 10.0;
    std::vector<MathieuBasis> ce, se;
    for (int n = 0; n <= 6; ++n) {
        ce.push_back(solve_characteristic(Angular::ce, n, q));
        se.push_back(solve_characteristic(Angular::se, n + 1, q));
    }
    for (int m = 0; m <= 6; ++m) {
        for (int n = 0; n <= 6; ++n) {
            const double c = numeric::integrate_panels([&](double t) { return ce[m](t) * ce[n](t); }, 0.0, 2.0 * pi, 16);
            const double s = numeric::integrate_panels([&](double t) { return se[m](t) * se[n](t); }, 0.0, 2.0 * pi, 16);
            EXPECT_NEAR(c, m == n ? pi : 0.0, 1e-9) << m << " " << n;
            EXPECT_NEAR(s, m == n ? pi : 0.0, 1e-9) << m << " " << n;
        }
    }
}

TEST(Radial, OdeResidual) {
    for (double q : {1.0, 5.0, 20.0, 100.0}) {
        for (int n = 0; n <= 6; ++n) {
            for (Angular f : {Angular::ce, Angular::se}) {
                const auto b = solve_characteristic(f, f == Angular::se ? n + 1 : n, q);
                for (RadialKind kind : {RadialKind::first, RadialKind::second}) {
                    auto y = [&](double r) { return radial_eval(b, kind, r).value; };
                    double worst = 0.0, scale = 0.0;
                    for (double r : {0.2, 0.5, 0.8, 1.1}) {
                        const double v = y(r);
                        const double v2 = second_derivative(y, r, 2e-3);
                        const double k = b.c - 2.0 * q * std::cosh(2.0 * r);
                        worst = std::max(worst, std::abs(v2 - k * v));
                        scale = std::max(scale, std::abs(k * v) + std::abs(v2));
                    }
                    EXPECT_LT(worst / scale, 1e-7) << q << " " << n << " " << static_cast<int>(kind);
                }
            }
        }
    }
}

TEST(Radial, DerivativeMatchesDifference) {
    const auto b = solve_characteristic(Angular::se, 3, 30.0);
    for (RadialKind kind : {RadialKind::first, RadialKind::second}) {
        const double r = 0.6, h = 1e-4;
        const double fd = (radial_eval(b, kind, r + h).value - radial_eval(b, kind, r - h).value) / (2.0 * h);
        const double d = radial_eval(b, kind, r).derivative;
        EXPECT_NEAR(d, fd, 1e-6 * std::max(1.0, std::abs(d)));
    }
}

TEST(Radial, WronskianConstant) {
    for (double q : {1.0, 20.0, 200.0, 900.0}) {
        for (int n : {0, 1, 5}) {
            for (Angular f : {Angular::ce, Angular::se}) {
                const auto b = solve_characteristic(f, f == Angular::se ? n + 1 : n, q);
                const double w03 = wronskian(b, 0.3);
                const double w10 = wronskian(b, 1.0);
                EXPECT_NEAR(w03, w10, 1e-8 * std::abs(w10)) << q << " " << n;
                EXPECT_NEAR(w10, 2.0 / pi, 1e-8) << q << " " << n;
            }
        }
    }
}

TEST(Radial, RegularAtOrigin) {
    const auto ce = solve_characteristic(Angular::ce, 2, 15.0);
    const auto v = radial_eval(ce, RadialKind::first, 0.0);
    EXPECT_TRUE(std::isfinite(v.value));
    EXPECT_NEAR(v.derivative, 0.0, 1e-12 * std::max(1.0, std::abs(v.value)));
    // Ms^{(1)} is odd in r
    const auto se = solve_characteristic(Angular::se, 2, 15.0);
    EXPECT_NEAR(radial_eval(se, RadialKind::first, 0.0).value, 0.0, 1e-14);
}

TEST(Radial, RejectsNegativeRadius) {
    const auto b = solve_characteristic(Angular::ce, 0, 1.0);
    EXPECT_THROW(radial_eval(b, RadialKind::first, -0.1), DomainError);
}

TEST(Asymptotics, HClosedFormsAgree) {
    for (int n = 0; n <= 5; ++n) {
        EXPECT_DOUBLE_EQ(h_plus(n, 0.0), 1.0);
        EXPECT_DOUBLE_EQ(h_minus(n, 0.0), 1.0);
        for (int i = 0; i <= 140; ++i) {
            const double z = 1.4 * i / 140.0;
            EXPECT_NEAR(h_plus(n, z), h_plus_trig(n, z), 1e-12 * h_plus(n, z));
            EXPECT_NEAR(h_minus(n, z), h_minus_trig(n, z), 1e-12 * h_minus(n, z));
        }
    }
}

TEST(Asymptotics, FCoefficients) {
    EXPECT_EQ(f_coefficient(0, 3, 0.4, +1), 1.0);
    EXPECT_EQ(f_coefficient(0, 3, 0.4, -1), 1.0);
    // f_1^{+}(0) = (2n+1)/8
    EXPECT_NEAR(f_coefficient(1, 2, 0.0, +1), 5.0 / 8.0, 1e-15);
    EXPECT_THROW(f_coefficient(2, 0, 0.1, 1), DomainError);
}

TEST(Asymptotics, HPlusDecreasing) {
    for (int n = 0; n <= 3; ++n) {
        for (int i = 0; i < 100; ++i) {
            EXPECT_GT(h_plus(n, 1.4 * i / 100.0), h_plus(n, 1.4 * (i + 1) / 100.0));
        }
    }
}

TEST(Asymptotics, GBoundCheck) {
    EXPECT_TRUE(g_bound_check(0, pi / 4.0, pi / 4.0 + pi / 8.0, 3.0 * pi / 8.0 + pi / 16.0, 200.0));
    EXPECT_THROW(g_bound_check(0, 0.5, 0.4, 1.0, 200.0), DomainError);
}

TEST(Asymptotics, NGammaThreshold) {
    const double gamma = 1.4;
    for (int n = 0; n <= 3; ++n) {
        const double ng = n_gamma(n, gamma);
        const double q = 1.01 * ng;
        for (int i = 0; i <= 500; ++i) {
            const double z = gamma * i / 500.0;
            EXPECT_LT(std::abs(f_coefficient(1, n, z, +1)) / std::sqrt(q), 0.5);
            EXPECT_LT(std::abs(f_coefficient(1, n, z, -1)) / std::sqrt(q), 0.5);
        }
    }
}

TEST(Asymptotics, PreconditionRejectsSmallQ) {
    EXPECT_THROW(asymptotic_angular(3, 1.2, 0.01), DomainError);
    EXPECT_THROW(asymptotic_angular(0, 1.6, 20.0), DomainError);
}

TEST(Asymptotics, TwoTermExpansionAtQ20) {
    EXPECT_LT(fit_asymptotic(1, false, 20.0).max_relative_error, 1e-2);
    EXPECT_LT(fit_asymptotic(0, true, 20.0).max_relative_error, 1e-2);
}
