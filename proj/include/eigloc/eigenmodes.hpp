#pragma once

// Laplacian eigenmodes of disks, balls, ellipses, elliptical annuli and
// rectangles, with the boundary equations that fix their spectral parameters.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "eigloc/bessel.hpp"
#include "eigloc/error.hpp"
#include "eigloc/legendre.hpp"
#include "eigloc/mathieu.hpp"
#include "eigloc/quadrature.hpp"
#include "eigloc/roots.hpp"

namespace eigloc::modes {

using std::numbers::pi;

enum class Boundary { dirichlet, neumann, robin };

struct BoundaryCondition {
    Boundary kind = Boundary::dirichlet;
    double h = 0.0;  // Robin coefficient in du/dn + h u = 0

    static BoundaryCondition dirichlet() { return {Boundary::dirichlet, 0.0}; }
    static BoundaryCondition neumann() { return {Boundary::neumann, 0.0}; }
    static BoundaryCondition robin(double h) {
        if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("Robin coefficient must be finite and > 0");
        return {Boundary::robin, h};
    }
};

inline std::string to_string(const BoundaryCondition& bc) {
    switch (bc.kind) {
        case Boundary::dirichlet: return "dirichlet";
        case Boundary::neumann: return "neumann";
        case Boundary::robin: return "robin";
    }
    return "?";
}

struct Disk {
    double R = 1.0;
};
struct Ball {
    double R = 1.0;
};
struct Ellipse {
    double a = 1.0;  // focal distance
    double R = 1.0;  // elliptic radius of the boundary
};
struct Annulus {
    double a = 1.0;
    double R1 = 0.5;
    double R2 = 1.0;
};
struct Rectangle {
    std::vector<double> sides{1.0, 1.0};
};

using Domain = std::variant<Disk, Ball, Ellipse, Annulus, Rectangle>;

inline void validate(const Domain& d) {
    auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
    std::visit(
        [&](const auto& dom) {
            using T = std::decay_t<decltype(dom)>;
            if constexpr (std::is_same_v<T, Disk> || std::is_same_v<T, Ball>) {
                if (!positive(dom.R)) throw DomainError("radius must be > 0");
            } else if constexpr (std::is_same_v<T, Ellipse>) {
                if (!positive(dom.a) || !positive(dom.R)) throw DomainError("ellipse needs a > 0 and R > 0");
            } else if constexpr (std::is_same_v<T, Annulus>) {
                if (!positive(dom.a) || !positive(dom.R1) || !positive(dom.R2)) {
                    throw DomainError("annulus needs positive a, R1, R2");
                }
                if (!(dom.R1 < dom.R2)) throw DomainError("annulus needs R1 < R2");
            } else {
                if (dom.sides.empty() || dom.sides.size() > 3) throw DomainError("rectangle dimension must be 1, 2 or 3");
                for (double l : dom.sides) {
                    if (!positive(l)) throw DomainError("rectangle sides must be > 0");
                }
            }
        },
        d);
}

/// Elliptic coordinates (r, theta), theta in [0, 2 pi), of a Cartesian point.
struct EllipticPoint {
    double r;
    double theta;
};

inline EllipticPoint to_elliptic(double a, double x, double y) {
    const std::complex<double> w = std::acosh(std::complex<double>(x / a, y / a));
    double r = w.real(), t = w.imag();
    if (r < 0.0) {
        r = -r;
        t = -t;
    }
    if (t < 0.0) t += 2.0 * pi;
    if (t >= 2.0 * pi) t -= 2.0 * pi;
    return {r, t};
}

inline std::array<double, 2> from_elliptic(double a, double r, double theta) {
    return {a * std::cosh(r) * std::cos(theta), a * std::sinh(r) * std::sin(theta)};
}

using Point = std::array<double, 3>;

inline bool contains(const Domain& d, const Point& p) {
    return std::visit(
        [&](const auto& dom) -> bool {
            using T = std::decay_t<decltype(dom)>;
            if constexpr (std::is_same_v<T, Disk>) {
                return std::hypot(p[0], p[1]) <= dom.R;
            } else if constexpr (std::is_same_v<T, Ball>) {
                return std::hypot(p[0], p[1], p[2]) <= dom.R;
            } else if constexpr (std::is_same_v<T, Ellipse>) {
                return to_elliptic(dom.a, p[0], p[1]).r <= dom.R;
            } else if constexpr (std::is_same_v<T, Annulus>) {
                const double r = to_elliptic(dom.a, p[0], p[1]).r;
                return r >= dom.R1 && r <= dom.R2;
            } else {
                for (std::size_t i = 0; i < dom.sides.size(); ++i) {
                    if (p[i] < 0.0 || p[i] > dom.sides[i]) return false;
                }
                return true;
            }
        },
        d);
}

// ---------------------------------------------------------------------------
// Mode types
// ---------------------------------------------------------------------------

/// J_n(alpha r / R) cos(n phi) (i = 1) or sin(n phi) (i = 2).
struct DiskMode {
    Disk domain;
    BoundaryCondition bc;
    int n = 0, k = 1, i = 1;
    double alpha = 0.0;
    double lambda = 0.0;

    double radial(double r) const { return bessel::bessel_j(n, alpha * r / domain.R); }
    double radial_prime(double r) const { return alpha / domain.R * bessel::bessel_j_prime(n, alpha * r / domain.R); }
    double angular(double phi) const { return (i == 1) ? std::cos(n * phi) : std::sin(n * phi); }
    double operator()(const Point& p) const { return radial(std::hypot(p[0], p[1])) * angular(std::atan2(p[1], p[0])); }
};

/// j_n(alpha r / R) P_n^{|l|}(cos theta) times cos(l phi) (l >= 0) or sin(|l| phi) (l < 0).
struct BallMode {
    Ball domain;
    BoundaryCondition bc;
    int n = 0, k = 1, l = 0;
    double alpha = 0.0;
    double lambda = 0.0;

    double radial(double r) const { return bessel::spherical_bessel_j(n, alpha * r / domain.R); }
    double radial_prime(double r) const {
        return alpha / domain.R * bessel::spherical_bessel_j_prime(n, alpha * r / domain.R);
    }
    double polar(double theta) const { return legendre::assoc_legendre(n, std::abs(l), std::cos(theta)); }
    double azimuth(double phi) const { return (l >= 0) ? std::cos(l * phi) : std::sin(-l * phi); }
    double operator()(const Point& p) const {
        const double r = std::hypot(p[0], p[1], p[2]);
        const double theta = (r > 0.0) ? std::acos(std::clamp(p[2] / r, -1.0, 1.0)) : 0.0;
        return radial(r) * polar(theta) * azimuth(std::atan2(p[1], p[0]));
    }
};

/// Angular Mathieu function times one modified Mathieu function (filled
/// ellipse, families i = 1..4) or a combination of both kinds (annulus,
/// families i = 1, 2).
struct EllipticMode {
    double a = 1.0;
    double R_inner = 0.0;  // 0 for a filled ellipse
    double R_outer = 1.0;
    bool annulus = false;
    int n = 0, k = 1, i = 1;
    double q = 0.0;
    double lambda = 0.0;
    mathieu::MathieuBasis basis;
    double coef_first = 1.0;   // weight of the first-kind radial function
    double coef_second = 0.0;  // weight of the second-kind radial function

    double angular(double theta) const { return basis(theta); }
    mathieu::RadialValue radial_both(double r) const {
        mathieu::RadialValue out{0.0, 0.0};
        if (coef_first != 0.0) {
            const auto v = mathieu::radial_eval(basis, mathieu::RadialKind::first, r);
            out.value += coef_first * v.value;
            out.derivative += coef_first * v.derivative;
        }
        if (coef_second != 0.0) {
            const auto v = mathieu::radial_eval(basis, mathieu::RadialKind::second, r);
            out.value += coef_second * v.value;
            out.derivative += coef_second * v.derivative;
        }
        return out;
    }
    double radial(double r) const { return radial_both(r).value; }
    double operator()(const Point& p) const {
        const auto e = to_elliptic(a, p[0], p[1]);
        return radial(e.r) * angular(e.theta);
    }
};

/// Product of sin(pi n_i x_i / l_i) (Dirichlet) or cos(...) (Neumann).
struct RectangleMode {
    Rectangle domain;
    BoundaryCondition bc;
    std::vector<int> n;
    double lambda = 0.0;

    double factor(std::size_t dim, double x) const {
        const double w = pi * n[dim] / domain.sides[dim];
        return (bc.kind == Boundary::dirichlet) ? std::sin(w * x) : std::cos(w * x);
    }
    double operator()(const Point& p) const {
        double v = 1.0;
        for (std::size_t d = 0; d < n.size(); ++d) v *= factor(d, p[d]);
        return v;
    }
};

using Mode = std::variant<DiskMode, BallMode, EllipticMode, RectangleMode>;

inline double eigenvalue(const Mode& m) {
    return std::visit([](const auto& x) { return x.lambda; }, m);
}

inline double evaluate(const Mode& m, const Point& p) {
    return std::visit([&](const auto& x) { return x(p); }, m);
}

inline int dimension(const Mode& m) {
    if (std::holds_alternative<BallMode>(m)) return 3;
    if (const auto* r = std::get_if<RectangleMode>(&m)) return static_cast<int>(r->n.size());
    return 2;
}

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

namespace detail {

inline bessel::ZeroSpec radial_zero_spec(int n, int k, const BoundaryCondition& bc, bessel::Family family, double R) {
    bessel::ZeroSpec s;
    s.n = n;
    s.k = k;
    s.family = family;
    switch (bc.kind) {
        case Boundary::dirichlet: s.kind = bessel::ZeroKind::function; break;
        case Boundary::neumann: s.kind = bessel::ZeroKind::derivative; break;
        case Boundary::robin:
            s.kind = bessel::ZeroKind::robin_radial;
            s.h = bc.h * R;
            break;
    }
    return s;
}

}  // namespace detail

inline DiskMode disk_mode(double R, const BoundaryCondition& bc, int n, int k, int i) {
    validate(Disk{R});
    if (n < 0 || k < 1) throw InvalidIndex("disk_mode: need n >= 0 and k >= 1");
    if (i != 1 && i != 2) throw InvalidIndex("disk_mode: i must be 1 or 2");
    if (n == 0 && i == 2) throw InvalidIndex("disk_mode: (n = 0, i = 2) is identically zero");
    DiskMode m;
    m.domain = Disk{R};
    m.bc = bc;
    m.n = n;
    m.k = k;
    m.i = i;
    m.alpha = bessel::find_zero(detail::radial_zero_spec(n, k, bc, bessel::Family::cylindrical, R));
    m.lambda = m.alpha * m.alpha / (R * R);
    return m;
}

inline BallMode ball_mode(double R, const BoundaryCondition& bc, int n, int k, int l) {
    validate(Ball{R});
    if (n < 0 || k < 1) throw InvalidIndex("ball_mode: need n >= 0 and k >= 1");
    if (std::abs(l) > n) throw InvalidIndex("ball_mode: need |l| <= n");
    BallMode m;
    m.domain = Ball{R};
    m.bc = bc;
    m.n = n;
    m.k = k;
    m.l = l;
    m.alpha = bessel::find_zero(detail::radial_zero_spec(n, k, bc, bessel::Family::spherical, R));
    m.lambda = m.alpha * m.alpha / (R * R);
    return m;
}

inline RectangleMode rectangle_mode(const std::vector<double>& sides, const BoundaryCondition& bc,
                                    const std::vector<int>& n) {
    validate(Rectangle{sides});
    if (bc.kind == Boundary::robin) throw UnsupportedCondition("rectangle_mode: only Dirichlet and Neumann");
    if (n.size() != sides.size()) throw InvalidIndex("rectangle_mode: one index per side");
    RectangleMode m;
    m.domain = Rectangle{sides};
    m.bc = bc;
    m.n = n;
    double s = 0.0;
    for (std::size_t d = 0; d < n.size(); ++d) {
        if (n[d] < 0 || (bc.kind == Boundary::dirichlet && n[d] < 1)) {
            throw InvalidIndex("rectangle_mode: Dirichlet needs n_i >= 1, Neumann n_i >= 0");
        }
        s += static_cast<double>(n[d]) * n[d] / (sides[d] * sides[d]);
    }
    m.lambda = pi * pi * s;
    return m;
}

// ---------------------------------------------------------------------------
// Boundary equations in q for elliptical domains
// ---------------------------------------------------------------------------

struct ScanOptions {
    int kmax = mathieu::default_kmax;
    double q_min = 1e-3;
    double q_max = 1000.0;
    double factor = 1.05;       // geometric step
    double max_sqrt_step = 0.25;  // cap on the step in sqrt(q)
};

namespace detail {

inline double next_q(double q, const ScanOptions& opt) {
    const double geometric = q * opt.factor;
    const double capped = std::pow(std::sqrt(q) + opt.max_sqrt_step, 2);
    return std::min(geometric, capped);
}

/// Roots of f in (q_min, q_max] found by sign changes on the scan grid and
/// polished with Brent. Stops after `count` roots when count > 0.
template <class F>
std::vector<double> scan_roots(F&& f, int count, const ScanOptions& opt) {
    std::vector<double> roots;
    double q0 = opt.q_min;
    double f0 = f(q0);
    while (count <= 0 || static_cast<int>(roots.size()) < count) {
        const double q1 = next_q(q0, opt);
        if (q1 > opt.q_max) break;
        const double f1 = f(q1);
        if (numeric::opposite_signs(f0, f1)) {
            roots.push_back(numeric::brent_root(f, q0, q1, 1e-14));
        } else if (f1 == 0.0) {
            roots.push_back(q1);
        }
        q0 = q1;
        f0 = (f1 == 0.0) ? -f0 : f1;
    }
    return roots;
}

inline mathieu::MathieuBasis family_basis(int n, bool sine, double q, int kmax) {
    return sine ? mathieu::solve_characteristic(mathieu::Angular::se, n + 1, q, kmax)
                : mathieu::solve_characteristic(mathieu::Angular::ce, n, q, kmax);
}

inline void check_ellipse_family(int n, int i) {
    if (n < 0) throw InvalidIndex("ellipse: n must be >= 0");
    if (i < 1 || i > 4) throw InvalidIndex("ellipse: family i must be 1..4");
}

inline void check_annulus_family(int n, int i) {
    if (n < 0) throw InvalidIndex("annulus: n must be >= 0");
    if (i != 1 && i != 2) throw InvalidIndex("annulus: family i must be 1 or 2");
}

}  // namespace detail

/// Left side of the filled-ellipse Dirichlet equation for family i at q:
/// Mc_n^{(1)}, Mc_n^{(2)}, Ms_{n+1}^{(1)}, Ms_{n+1}^{(2)} at r = R.
inline double ellipse_boundary_function(double R, int n, int i, double q, int kmax = mathieu::default_kmax) {
    detail::check_ellipse_family(n, i);
    const auto b = detail::family_basis(n, i >= 3, q, kmax);
    const auto kind = (i % 2 == 1) ? mathieu::RadialKind::first : mathieu::RadialKind::second;
    return mathieu::radial_eval(b, kind, R).value;
}

/// Annulus determinant M1(R1) M2(R2) - M1(R2) M2(R1).
inline double annulus_determinant(double R1, double R2, int n, int i, double q, int kmax = mathieu::default_kmax) {
    detail::check_annulus_family(n, i);
    const auto b = detail::family_basis(n, i == 2, q, kmax);
    const double m1a = mathieu::radial_eval(b, mathieu::RadialKind::first, R1).value;
    const double m1b = mathieu::radial_eval(b, mathieu::RadialKind::first, R2).value;
    const double m2a = mathieu::radial_eval(b, mathieu::RadialKind::second, R1).value;
    const double m2b = mathieu::radial_eval(b, mathieu::RadialKind::second, R2).value;
    return m1a * m2b - m1b * m2a;
}

/// All q_{nki}, k = 1, 2, ..., below opt.q_max (count <= 0) or the first `count` of them.
inline std::vector<double> ellipse_q_roots(double R, int n, int i, int count, const ScanOptions& opt = {}) {
    validate(Ellipse{1.0, R});
    detail::check_ellipse_family(n, i);
    return detail::scan_roots([&](double q) { return ellipse_boundary_function(R, n, i, q, opt.kmax); }, count, opt);
}

inline std::vector<double> annulus_q_roots(double R1, double R2, int n, int i, int count, const ScanOptions& opt = {}) {
    validate(Annulus{1.0, R1, R2});
    detail::check_annulus_family(n, i);
    return detail::scan_roots([&](double q) { return annulus_determinant(R1, R2, n, i, q, opt.kmax); }, count, opt);
}

/// The k-th root q_{nki} of the filled-ellipse Dirichlet equation. The
/// focal distance a does not enter the equation, only lambda = 4q/a^2.
inline double ellipse_q_solve(double R, int n, int k, int i, const ScanOptions& opt = {}) {
    if (k < 1) throw InvalidIndex("ellipse_q_solve: k must be >= 1");
    const auto roots = ellipse_q_roots(R, n, i, k, opt);
    if (static_cast<int>(roots.size()) < k) {
        throw ScanExhausted("ellipse_q_solve: root " + std::to_string(k) + " not found below q = " +
                            std::to_string(opt.q_max));
    }
    return roots.back();
}

inline double annulus_q_solve(double R1, double R2, int n, int k, int i, const ScanOptions& opt = {}) {
    if (k < 1) throw InvalidIndex("annulus_q_solve: k must be >= 1");
    const auto roots = annulus_q_roots(R1, R2, n, i, k, opt);
    if (static_cast<int>(roots.size()) < k) {
        throw ScanExhausted("annulus_q_solve: root " + std::to_string(k) + " not found below q = " +
                            std::to_string(opt.q_max));
    }
    return roots.back();
}

/// Filled-ellipse mode for an already known root q.
inline EllipticMode ellipse_mode_at(const Ellipse& e, int n, int k, int i, double q, int kmax = mathieu::default_kmax) {
    validate(e);
    detail::check_ellipse_family(n, i);
    EllipticMode m;
    m.a = e.a;
    m.R_outer = e.R;
    m.n = n;
    m.k = k;
    m.i = i;
    m.q = q;
    m.lambda = 4.0 * q / (e.a * e.a);
    m.basis = detail::family_basis(n, i >= 3, q, kmax);
    m.coef_first = (i % 2 == 1) ? 1.0 : 0.0;
    m.coef_second = (i % 2 == 1) ? 0.0 : 1.0;
    return m;
}

/// Annulus mode for an already known root q; the radial combination comes
/// from the null vector of the 2x2 boundary system, using the row with the
/// larger entries.
inline EllipticMode annulus_mode_at(const Annulus& an, int n, int k, int i, double q, int kmax = mathieu::default_kmax) {
    validate(an);
    detail::check_annulus_family(n, i);
    EllipticMode m;
    m.a = an.a;
    m.R_inner = an.R1;
    m.R_outer = an.R2;
    m.annulus = true;
    m.n = n;
    m.k = k;
    m.i = i;
    m.q = q;
    m.lambda = 4.0 * q / (an.a * an.a);
    m.basis = detail::family_basis(n, i == 2, q, kmax);
    const double m1a = mathieu::radial_eval(m.basis, mathieu::RadialKind::first, an.R1).value;
    const double m2a = mathieu::radial_eval(m.basis, mathieu::RadialKind::second, an.R1).value;
    const double m1b = mathieu::radial_eval(m.basis, mathieu::RadialKind::first, an.R2).value;
    const double m2b = mathieu::radial_eval(m.basis, mathieu::RadialKind::second, an.R2).value;
    double A, B;
    if (std::hypot(m1a, m2a) >= std::hypot(m1b, m2b)) {
        A = m2a;
        B = -m1a;
    } else {
        A = m2b;
        B = -m1b;
    }
    const double norm = std::hypot(A, B);
    m.coef_first = A / norm;
    m.coef_second = B / norm;
    return m;
}

inline EllipticMode ellipse_mode(const Ellipse& e, int n, int k, int i, const ScanOptions& opt = {}) {
    return ellipse_mode_at(e, n, k, i, ellipse_q_solve(e.R, n, k, i, opt), opt.kmax);
}

inline EllipticMode annulus_mode(const Annulus& an, int n, int k, int i, const ScanOptions& opt = {}) {
    return annulus_mode_at(an, n, k, i, annulus_q_solve(an.R1, an.R2, n, k, i, opt), opt.kmax);
}

/// Dirichlet only, as in the boundary equations above.
inline void require_dirichlet_for_ellipse(const BoundaryCondition& bc) {
    if (bc.kind != Boundary::dirichlet) {
        throw UnsupportedCondition("elliptical domains support the Dirichlet condition only");
    }
}

// ---------------------------------------------------------------------------
// Checks
// ---------------------------------------------------------------------------

/// max |u| over the domain. Separable in the natural coordinates.
inline double max_amplitude(const Mode& mode) {
    return std::visit(
        [](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, DiskMode>) {
                return numeric::max_abs([&](double r) { return m.radial(r); }, 0.0, m.domain.R, 4096);
            } else if constexpr (std::is_same_v<T, BallMode>) {
                const double rad = numeric::max_abs([&](double r) { return m.radial(r); }, 0.0, m.domain.R, 4096);
                const double pol = numeric::max_abs([&](double t) { return m.polar(t); }, 0.0, pi, 2048);
                return rad * pol;
            } else if constexpr (std::is_same_v<T, EllipticMode>) {
                const double rad = numeric::max_abs([&](double r) { return m.radial(r); }, m.R_inner, m.R_outer, 1024);
                const double ang = numeric::max_abs([&](double t) { return m.angular(t); }, 0.0, 2.0 * pi, 2048);
                return rad * ang;
            } else {
                return 1.0;
            }
        },
        mode);
}

/// Finite-difference step for residual checks.
inline double fd_step(double lambda) {
    return (lambda > 0.0) ? std::min(1e-4, 0.01 / std::sqrt(lambda)) : 1e-4;
}

namespace detail {

inline Point sample_interior(const Mode& mode, std::mt19937_64& rng, double margin) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return std::visit(
        [&](const auto& m) -> Point {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, DiskMode>) {
                const double r = (m.domain.R - margin) * std::sqrt(u(rng));
                const double phi = 2.0 * pi * u(rng);
                return {r * std::cos(phi), r * std::sin(phi), 0.0};
            } else if constexpr (std::is_same_v<T, BallMode>) {
                const double r = (m.domain.R - margin) * std::cbrt(u(rng));
                const double ct = 2.0 * u(rng) - 1.0;
                const double st = std::sqrt(1.0 - ct * ct);
                const double phi = 2.0 * pi * u(rng);
                return {r * st * std::cos(phi), r * st * std::sin(phi), r * ct};
            } else if constexpr (std::is_same_v<T, EllipticMode>) {
                // keep a margin from the boundary and from the focal segment
                const double lo = std::max(m.R_inner, 0.02) + margin;
                const double r = lo + (m.R_outer - margin - lo) * u(rng);
                const auto xy = from_elliptic(m.a, r, 2.0 * pi * u(rng));
                return {xy[0], xy[1], 0.0};
            } else {
                Point p{0.0, 0.0, 0.0};
                for (std::size_t d = 0; d < m.n.size(); ++d) {
                    p[d] = margin + (m.domain.sides[d] - 2.0 * margin) * u(rng);
                }
                return p;
            }
        },
        mode);
}

}  // namespace detail

struct ResidualReport {
    double worst = 0.0;      // max |Delta_h u + lambda u| / (lambda max|u|)
    double amplitude = 0.0;  // max |u|
    int points = 0;
};

/// Central-difference Laplacian (5-point in 2D) at random interior points.
inline ResidualReport helmholtz_residual(const Mode& mode, int points = 100, std::uint64_t seed = 12345) {
    std::mt19937_64 rng(seed);
    const double lambda = eigenvalue(mode);
    const double h = fd_step(lambda);
    const int dim = dimension(mode);
    ResidualReport rep;
    rep.amplitude = max_amplitude(mode);
    rep.points = points;
    for (int s = 0; s < points; ++s) {
        const Point p = detail::sample_interior(mode, rng, 10.0 * h);
        const double u0 = evaluate(mode, p);
        double lap = 0.0;
        for (int d = 0; d < dim; ++d) {
            Point a = p, b = p;
            a[d] += h;
            b[d] -= h;
            lap += (evaluate(mode, a) - 2.0 * u0 + evaluate(mode, b)) / (h * h);
        }
        const double scale = (lambda > 0.0 ? lambda : 1.0) * rep.amplitude;
        rep.worst = std::max(rep.worst, std::abs(lap + lambda * u0) / scale);
    }
    return rep;
}

inline bool helmholtz_ok(const ResidualReport& r) { return r.worst < 1e-5; }

/// max over boundary samples of |B u| / max|u|, where B is the boundary
/// operator (value, normal derivative, or du/dn + h u).
inline double boundary_residual(const Mode& mode, int samples = 50) {
    const double amp = max_amplitude(mode);
    return std::visit(
        [&](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            double worst = 0.0;
            if constexpr (std::is_same_v<T, DiskMode> || std::is_same_v<T, BallMode>) {
                const double R = m.domain.R;
                double radial_op = 0.0;
                switch (m.bc.kind) {
                    case Boundary::dirichlet: radial_op = m.radial(R); break;
                    case Boundary::neumann: radial_op = m.radial_prime(R); break;
                    case Boundary::robin: radial_op = m.radial_prime(R) + m.bc.h * m.radial(R); break;
                }
                // derivative terms carry a factor alpha/R; compare like with like
                const double unit = (m.bc.kind == Boundary::dirichlet) ? 1.0 : (m.alpha / R + m.bc.h);
                for (int s = 0; s < samples; ++s) {
                    const double phi = 2.0 * pi * s / samples;
                    double ang;
                    if constexpr (std::is_same_v<T, DiskMode>) {
                        ang = m.angular(phi);
                    } else {
                        ang = m.polar(pi * (s + 0.5) / samples) * m.azimuth(phi);
                    }
                    worst = std::max(worst, std::abs(radial_op * ang) / (unit * amp));
                }
            } else if constexpr (std::is_same_v<T, EllipticMode>) {
                std::vector<double> radii{m.R_outer};
                if (m.annulus) radii.push_back(m.R_inner);
                for (double r : radii) {
                    const double v = m.radial(r);
                    for (int s = 0; s < samples; ++s) {
                        worst = std::max(worst, std::abs(v * m.angular(2.0 * pi * s / samples)) / amp);
                    }
                }
            } else {
                // faces x_d = 0 and x_d = l_d
                std::mt19937_64 rng(99);
                std::uniform_real_distribution<double> u(0.0, 1.0);
                for (int s = 0; s < samples; ++s) {
                    for (std::size_t d = 0; d < m.n.size(); ++d) {
                        for (double face : {0.0, m.domain.sides[d]}) {
                            Point p{0.0, 0.0, 0.0};
                            for (std::size_t e = 0; e < m.n.size(); ++e) p[e] = m.domain.sides[e] * u(rng);
                            p[d] = face;
                            double v;
                            if (m.bc.kind == Boundary::dirichlet) {
                                v = m(p);
                            } else {
                                const double w = pi * m.n[d] / m.domain.sides[d];
                                double rest = 1.0;
                                for (std::size_t e = 0; e < m.n.size(); ++e) {
                                    if (e != d) rest *= m.factor(e, p[e]);
                                }
                                v = -w * std::sin(w * face) * rest / std::max(w, 1.0);
                            }
                            worst = std::max(worst, std::abs(v) / amp);
                        }
                    }
                }
            }
            return worst;
        },
        mode);
}

}  // namespace eigloc::modes
