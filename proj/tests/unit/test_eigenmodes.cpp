#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "double_double.hpp"
#include "eigloc/eigenmodes.hpp"
#include "sturm.hpp"

using namespace eigloc;
using namespace eigloc::modes;
using std::numbers::pi;

namespace {

// Filled-ellipse Dirichlet root from direct ODE shooting: c from Sturm
// bisection, radial function integrated from r = 0 with the regular data.
double shooting_ellipse_q(double R, int n, int k, bool sine) {
    const int order = sine ? n + 1 : n;
    auto f = [&](long double q) {
        const long double c = oracle::mathieu_c(sine, order, q);
        // Mc^{(1)} is even in r, Ms^{(1)} odd
        return sine ? oracle::modified_mathieu_shoot(c, q, 0.0L, R, 0.0L, 1.0L)
                    : oracle::modified_mathieu_shoot(c, q, 0.0L, R, 1.0L, 0.0L);
    };
    return static_cast<double>(oracle::shooting_root(f, k));
}

double shooting_annulus_q(double R1, double R2, int n, int k, bool sine) {
    const int order = sine ? n + 1 : n;
    auto f = [&](long double q) {
        const long double c = oracle::mathieu_c(sine, order, q);
        return oracle::modified_mathieu_shoot(c, q, R1, R2, 0.0L, 1.0L);
    };
    return static_cast<double>(oracle::shooting_root(f, k));
}

}  // namespace

TEST(Disk, FirstDirichletEigenvalue) {
    const double j01 = oracle::bisect([](double x) { return oracle::bessel_j_series(0, x); }, 2.0, 3.0);
    const auto m = disk_mode(1.0, BoundaryCondition::dirichlet(), 0, 1, 1);
    EXPECT_NEAR(m.lambda, j01 * j01, 1e-12 * j01 * j01);
    EXPECT_NEAR(m.lambda, 5.7832, 1e-4);
}

TEST(Disk, ScalesWithRadius) {
    const auto a = disk_mode(1.0, BoundaryCondition::dirichlet(), 2, 3, 1);
    const auto b = disk_mode(2.5, BoundaryCondition::dirichlet(), 2, 3, 1);
    EXPECT_NEAR(b.lambda, a.lambda / 6.25, 1e-12 * a.lambda);
}

TEST(Disk, BoundaryConditionsHold) {
    const double R = 1.7;
    const auto d = disk_mode(R, BoundaryCondition::dirichlet(), 3, 2, 1);
    EXPECT_NEAR(d({R, 0.0, 0.0}), 0.0, 1e-13);
    const auto n = disk_mode(R, BoundaryCondition::neumann(), 1, 1, 1);
    EXPECT_NEAR(n.radial_prime(R), 0.0, 1e-12);
    const auto r = disk_mode(R, BoundaryCondition::robin(0.7), 2, 2, 2);
    EXPECT_NEAR(r.radial_prime(R) + 0.7 * r.radial(R), 0.0, 1e-12);
    for (const Mode m : {Mode{d}, Mode{n}, Mode{r}}) EXPECT_LT(boundary_residual(m), 1e-8);
}

TEST(Disk, RobinInterlaces) {
    const auto d = disk_mode(1.0, BoundaryCondition::dirichlet(), 4, 2, 1);
    const auto n = disk_mode(1.0, BoundaryCondition::neumann(), 4, 2, 1);
    const auto r = disk_mode(1.0, BoundaryCondition::robin(3.0), 4, 2, 1);
    EXPECT_LT(n.lambda, r.lambda);
    EXPECT_LT(r.lambda, d.lambda);
}

TEST(Disk, RejectsZeroSineFamily) {
    EXPECT_THROW(disk_mode(1.0, BoundaryCondition::dirichlet(), 0, 1, 2), InvalidIndex);
    EXPECT_THROW(disk_mode(1.0, BoundaryCondition::dirichlet(), 1, 0, 1), InvalidIndex);
    EXPECT_THROW(disk_mode(-1.0, BoundaryCondition::dirichlet(), 1, 1, 1), DomainError);
    EXPECT_THROW(BoundaryCondition::robin(0.0), DomainError);
}

TEST(Disk, AngularParity) {
    const auto c = disk_mode(1.0, BoundaryCondition::dirichlet(), 3, 1, 1);
    const auto s = disk_mode(1.0, BoundaryCondition::dirichlet(), 3, 1, 2);
    for (double y : {0.1, 0.35}) {
        EXPECT_NEAR(c({0.4, y, 0.0}), c({0.4, -y, 0.0}), 1e-15);
        EXPECT_NEAR(s({0.4, y, 0.0}), -s({0.4, -y, 0.0}), 1e-15);
    }
}

TEST(Disk, OrderedInK) {
    for (auto bc : {BoundaryCondition::dirichlet(), BoundaryCondition::neumann(), BoundaryCondition::robin(1.0)}) {
        double last = 0.0;
        for (int k = 1; k <= 8; ++k) {
            const double l = disk_mode(1.0, bc, 2, k, 1).lambda;
            EXPECT_GT(l, last);
            last = l;
        }
    }
}

TEST(Ball, LowestModes) {
    const auto m = ball_mode(2.0, BoundaryCondition::dirichlet(), 0, 1, 0);
    EXPECT_NEAR(m.alpha, pi, 1e-13);
    EXPECT_NEAR(m.lambda, pi * pi / 4.0, 1e-12);
    EXPECT_EQ(m.polar(0.3), 1.0);
    // j_1'(x) = j_0(x) - 2 j_1(x)/x with closed forms, bisected in long double
    auto dj1 = [](long double x) {
        const long double j0 = std::sin(x) / x;
        const long double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
        return static_cast<double>(j0 - 2.0L * j1 / x);
    };
    const double g11 = oracle::bisect(dj1, 1.0, 3.0);
    EXPECT_NEAR(ball_mode(1.0, BoundaryCondition::neumann(), 1, 1, 1).alpha, g11, 1e-12);
}

TEST(Ball, LegendreMatchesStandardLibrary) {
    for (int n = 0; n <= 12; ++n) {
        for (int m = 0; m <= n; ++m) {
            for (double x : {-0.9, -0.3, 0.0, 0.45, 0.99}) {
                const double ref = std::assoc_legendre(n, m, x);
                EXPECT_NEAR(legendre::assoc_legendre(n, m, x), ref, 1e-12 * std::max(1.0, std::abs(ref)));
            }
        }
    }
    EXPECT_THROW(legendre::assoc_legendre(2, 3, 0.1), InvalidIndex);
    EXPECT_THROW(legendre::assoc_legendre(2, 1, 1.5), DomainError);
}

TEST(Ball, BoundaryAndIndexChecks) {
    const auto m = ball_mode(1.0, BoundaryCondition::robin(2.0), 3, 2, -2);
    EXPECT_LT(boundary_residual(Mode{m}), 1e-8);
    EXPECT_THROW(ball_mode(1.0, BoundaryCondition::dirichlet(), 2, 1, 3), InvalidIndex);
}

TEST(Rectangle, ClosedForms) {
    const auto m = rectangle_mode({pi, pi}, BoundaryCondition::dirichlet(), {1, 1});
    EXPECT_NEAR(m.lambda, 2.0, 1e-14);
    EXPECT_EQ(m({0.0, 1.0, 0.0}), 0.0);
    const auto c = rectangle_mode({1.0, 2.0}, BoundaryCondition::neumann(), {0, 0});
    EXPECT_EQ(c.lambda, 0.0);
    EXPECT_EQ(c({0.3, 0.7, 0.0}), 1.0);
    EXPECT_THROW(rectangle_mode({1.0, 1.0}, BoundaryCondition::dirichlet(), {0, 1}), InvalidIndex);
    EXPECT_THROW(rectangle_mode({1.0, 1.0}, BoundaryCondition::robin(1.0), {1, 1}), UnsupportedCondition);
    EXPECT_THROW(rectangle_mode({1.0, 1.0, 1.0, 1.0}, BoundaryCondition::neumann(), {1, 1, 1, 1}), DomainError);
    EXPECT_LT(boundary_residual(Mode{rectangle_mode({1.0, std::sqrt(2.0)}, BoundaryCondition::neumann(), {3, 2})}),
              1e-8);
}

TEST(Elliptic, CoordinatesRoundTrip) {
    for (double r : {0.1, 0.8, 1.3}) {
        for (double t : {0.2, 1.5, 3.0, 4.4, 6.0}) {
            const auto xy = from_elliptic(1.3, r, t);
            const auto e = to_elliptic(1.3, xy[0], xy[1]);
            EXPECT_NEAR(e.r, r, 1e-12);
            EXPECT_NEAR(e.theta, t, 1e-12);
        }
    }
}

TEST(Ellipse, RootsMatchShootingOracle) {
    for (int n : {0, 1}) {
        for (int i : {1, 3}) {
            for (int k : {1, 2, 3}) {
                const double q = ellipse_q_solve(1.0, n, k, i);
                const double ref = shooting_ellipse_q(1.0, n, k, i == 3);
                EXPECT_NEAR(q, ref, 1e-9 * ref) << n << " " << i << " " << k;
            }
        }
    }
}

TEST(Ellipse, BoundaryResidualAndMonotone) {
    for (int i = 1; i <= 4; ++i) {
        const auto roots = ellipse_q_roots(1.0, 1, i, 6);
        ASSERT_EQ(roots.size(), 6u);
        for (std::size_t k = 0; k < roots.size(); ++k) {
            if (k > 0) EXPECT_GT(roots[k], roots[k - 1]);
            const auto m = ellipse_mode_at(Ellipse{1.0, 1.0}, 1, static_cast<int>(k) + 1, i, roots[k]);
            const double peak = numeric::max_abs([&](double r) { return m.radial(r); }, 0.02, 1.0, 512);
            EXPECT_LT(std::abs(m.radial(1.0)), 1e-10 * peak) << i << " " << k;
        }
    }
}

TEST(Ellipse, EigenvalueFromQ) {
    const auto m = ellipse_mode(Ellipse{2.0, 0.8}, 0, 2, 1);
    EXPECT_NEAR(m.lambda, 4.0 * m.q / 4.0, 1e-15 * m.lambda);
    // the boundary equation does not involve a
    EXPECT_NEAR(m.q, ellipse_q_solve(0.8, 0, 2, 1), 1e-14 * m.q);
}

TEST(Ellipse, AngularParity) {
    const Ellipse e{1.0, 1.0};
    for (int i = 1; i <= 4; ++i) {
        const auto m = ellipse_mode(e, 1, 1, i);
        const double sgn = (i <= 2) ? 1.0 : -1.0;
        for (double t : {0.3, 1.1, 2.5}) {
            const auto xy = from_elliptic(1.0, 0.6, t);
            EXPECT_NEAR(m({xy[0], -xy[1], 0.0}), sgn * m({xy[0], xy[1], 0.0}), 1e-12);
        }
    }
}

TEST(Ellipse, ScanCeilingAndUnsupportedConditions) {
    ScanOptions opt;
    opt.q_max = 5.0;
    EXPECT_THROW(ellipse_q_solve(1.0, 0, 10, 1, opt), ScanExhausted);
    EXPECT_THROW(ellipse_q_solve(1.0, 0, 1, 5), InvalidIndex);
    EXPECT_THROW(require_dirichlet_for_ellipse(BoundaryCondition::neumann()), UnsupportedCondition);
    EXPECT_NO_THROW(require_dirichlet_for_ellipse(BoundaryCondition::dirichlet()));
}

TEST(Annulus, FirstRootMatchesShootingOracle) {
    const double q = annulus_q_solve(0.5, 1.0, 1, 1, 1);
    const double ref = shooting_annulus_q(0.5, 1.0, 1, 1, false);
    EXPECT_NEAR(q, ref, 1e-9 * ref);
    for (int k : {2, 3}) {
        for (int i : {1, 2}) {
            const double qq = annulus_q_solve(0.5, 1.0, 0, k, i);
            const double rr = shooting_annulus_q(0.5, 1.0, 0, k, i == 2);
            EXPECT_NEAR(qq, rr, 1e-9 * rr) << k << " " << i;
        }
    }
}

TEST(Annulus, VanishesOnBothEllipses) {
    const Annulus an{1.0, 0.5, 1.0};
    for (int k = 1; k <= 4; ++k) {
        for (int i : {1, 2}) {
            const auto m = annulus_mode(an, 1, k, i);
            EXPECT_LT(boundary_residual(Mode{m}), 1e-10) << k << " " << i;
        }
    }
    const auto roots = annulus_q_roots(0.5, 1.0, 1, 1, 8);
    for (std::size_t k = 1; k < roots.size(); ++k) EXPECT_GT(roots[k], roots[k - 1]);
    EXPECT_THROW(annulus_q_solve(0.5, 1.0, 1, 1, 3), InvalidIndex);
    EXPECT_THROW(annulus_q_solve(1.0, 0.5, 1, 1, 1), DomainError);
}

TEST(Census, HelmholtzResidual) {
    std::vector<Mode> census;
    for (int k = 1; k <= 3; ++k) {
        census.push_back(disk_mode(1.0, BoundaryCondition::dirichlet(), 2, k, 1));
        census.push_back(disk_mode(1.0, BoundaryCondition::neumann(), 5, k, 2));
        census.push_back(disk_mode(1.0, BoundaryCondition::robin(1.5), 0, k, 1));
        census.push_back(ball_mode(1.0, BoundaryCondition::dirichlet(), 2, k, 1));
        census.push_back(ball_mode(1.0, BoundaryCondition::neumann(), 3, k, -2));
        census.push_back(ball_mode(1.0, BoundaryCondition::robin(0.5), 1, k, 0));
        census.push_back(ellipse_mode(Ellipse{1.0, 1.0}, 0, k, 1));
        census.push_back(ellipse_mode(Ellipse{1.0, 1.0}, 1, k, 3));
        census.push_back(annulus_mode(Annulus{1.0, 0.5, 1.0}, 1, k, 1));
        census.push_back(annulus_mode(Annulus{1.0, 0.5, 1.0}, 0, k, 2));
    }
    census.push_back(rectangle_mode({1.0, std::sqrt(2.0)}, BoundaryCondition::dirichlet(), {3, 4}));
    census.push_back(rectangle_mode({1.0, std::sqrt(2.0)}, BoundaryCondition::neumann(), {0, 5}));
    census.push_back(rectangle_mode({2.0}, BoundaryCondition::dirichlet(), {7}));
    census.push_back(rectangle_mode({1.0, 1.5, 2.0}, BoundaryCondition::neumann(), {1, 2, 3}));
    for (const auto& m : census) {
        const auto rep = helmholtz_residual(m);
        EXPECT_TRUE(helmholtz_ok(rep)) << rep.worst << " lambda " << eigenvalue(m);
        EXPECT_LT(boundary_residual(m), 1e-8);
    }
}
