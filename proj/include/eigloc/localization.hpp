#pragma once

// L_p norms of eigenmodes over subdomains, localization ratios, and the
// closed-form bounds they are compared against.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "eigloc/bessel.hpp"
#include "eigloc/eigenmodes.hpp"
#include "eigloc/error.hpp"
#include "eigloc/quadrature.hpp"

namespace eigloc::localization {

using std::numbers::pi;
inline constexpr double infinity = std::numeric_limits<double>::infinity();
inline constexpr double nan = std::numeric_limits<double>::quiet_NaN();

// ---------------------------------------------------------------------------
// Regions
// ---------------------------------------------------------------------------

struct Whole {};
/// r0 < r < r1 for disks and balls (absolute radii) or elliptic radial range.
struct Shell {
    double r0, r1;
};
/// Elliptic sector theta in (alpha, pi - alpha) u (pi + alpha, 2 pi - alpha),
/// or its complement in the domain.
struct Sector {
    double alpha;
    bool complement;
};
/// Coordinate box prod [lo_i, hi_i] (Cartesian).
struct Box {
    std::vector<double> lo, hi;
};

using Region = std::variant<Whole, Shell, Sector, Box>;

struct NormOptions {
    double rel_tol = 1e-8;
    int order = 20;
};

/// ||u||_p^p with the error estimate of the quadrature; for p = inf the
/// value is max |u| itself.
struct NormPower {
    double value = 0.0;
    double error = 0.0;
};

struct RatioReport {
    std::string family;
    int n = 0, k = 0, i = 0;
    double p = 2.0;
    std::string region;
    double lambda = 0.0;
    double ratio = 0.0;
    double bound = nan;             // closed-form upper bound, where one is known
    double limit = nan;             // limit as the index grows, where one is known
    double measure_fraction = nan;  // measure of the ratio region over the domain measure
    double quad_error = 0.0;        // estimated relative error of the ratio
    double sector_ratio = nan;      // norm outside the sector over the norm inside
    double lower_bound = nan;       // closed-form lower bound (rectangle)
};

namespace detail {

inline void check_p(double p) {
    if (!(p >= 1.0)) throw DomainError("p must be >= 1 (or infinity)");
}

inline double pow_abs(double v, double p) { return (p == 2.0) ? v * v : std::pow(std::abs(v), p); }

/// int_0^{2 pi} |cos(m phi)|^p d phi, m >= 1; the same for sin.
inline double trig_power_period(double p) {
    return 2.0 * std::sqrt(pi) * std::tgamma(0.5 * (p + 1.0)) / std::tgamma(0.5 * p + 1.0);
}

inline numeric::AbsPowerOptions quad_options(const NormOptions& opt, double expected_zeros) {
    numeric::AbsPowerOptions o;
    o.rel_tol = opt.rel_tol;
    o.order = opt.order;
    o.samples = 64 + static_cast<int>(std::ceil(4.0 * std::max(0.0, expected_zeros)));
    o.max_doublings = 12;
    return o;
}

/// int_{x0}^{x1} x^{dim-1} |J_n(x)|^p dx (dim 2) or with j_n (dim 3).
inline numeric::QuadResult bessel_power(int dim, int n, double x0, double x1, double p, const NormOptions& opt) {
    if (!(x1 > x0)) return {};
    const auto o = quad_options(opt, (x1 - x0) / pi);
    if (dim == 2) {
        return numeric::integrate_abs_power_est([n](double x) { return bessel::bessel_j(n, x); },
                                                [](double x) { return x; }, x0, x1, p, o);
    }
    return numeric::integrate_abs_power_est([n](double x) { return bessel::spherical_bessel_j(n, x); },
                                            [](double x) { return x * x; }, x0, x1, p, o);
}

inline double bessel_max(int dim, int n, double x0, double x1) {
    const int samples = 256 + static_cast<int>(8.0 * (x1 - x0) / pi);
    if (dim == 2) return numeric::max_abs([n](double x) { return bessel::bessel_j(n, x); }, x0, x1, samples);
    return numeric::max_abs([n](double x) { return bessel::spherical_bessel_j(n, x); }, x0, x1, samples);
}

inline Shell shell_of(const Region& region, double R, const char* who) {
    if (std::holds_alternative<Whole>(region)) return {0.0, R};
    if (const auto* s = std::get_if<Shell>(&region)) {
        if (!(0.0 <= s->r0 && s->r0 <= s->r1 && s->r1 <= R * (1.0 + 1e-14))) {
            throw DomainError(std::string(who) + ": shell must satisfy 0 <= r0 <= r1 <= R");
        }
        return {s->r0, std::min(s->r1, R)};
    }
    throw DomainError(std::string(who) + ": region not supported for this mode");
}

/// Angular range [t0, t1] within [0, pi/2] that represents the region by symmetry.
inline std::pair<double, double> quarter_range(const Region& region) {
    if (std::holds_alternative<Whole>(region)) return {0.0, pi / 2.0};
    if (const auto* s = std::get_if<Sector>(&region)) {
        if (!(s->alpha > 0.0 && s->alpha < pi / 2.0)) throw DomainError("sector half-angle must lie in (0, pi/2)");
        return s->complement ? std::pair{0.0, s->alpha} : std::pair{s->alpha, pi / 2.0};
    }
    throw DomainError("elliptic modes support Whole and Sector regions");
}

inline NormPower disk_power(const modes::DiskMode& m, const Region& region, double p, const NormOptions& opt) {
    const double R = m.domain.R;
    if (const auto* box = std::get_if<Box>(&region)) {
        if (box->lo.size() != 2 || box->hi.size() != 2) throw DomainError("disk box must be two-dimensional");
        for (int c = 0; c < 2; ++c) {
            if (!(box->lo[c] < box->hi[c])) throw DomainError("degenerate box");
        }
        if (std::isinf(p)) {
            const int g = 512;
            double best = 0.0;
            for (int a = 0; a <= g; ++a) {
                for (int b = 0; b <= g; ++b) {
                    const double x = box->lo[0] + (box->hi[0] - box->lo[0]) * a / g;
                    const double y = box->lo[1] + (box->hi[1] - box->lo[1]) * b / g;
                    best = std::max(best, std::abs(m({x, y, 0.0})));
                }
            }
            return {best, 0.0};
        }
        const double span = m.alpha / R * std::max(box->hi[0] - box->lo[0], box->hi[1] - box->lo[1]);
        int panels = std::max(2, static_cast<int>(std::ceil(span / pi)));
        auto tensor = [&](int np) {
            return numeric::integrate_panels(
                [&](double x) {
                    return numeric::integrate_panels([&](double y) { return pow_abs(m({x, y, 0.0}), p); }, box->lo[1],
                                                     box->hi[1], np, opt.order);
                },
                box->lo[0], box->hi[0], np, opt.order);
        };
        double prev = tensor(panels);
        for (int d = 0; d < 8; ++d) {
            panels *= 2;
            const double cur = tensor(panels);
            if (std::abs(cur - prev) <= opt.rel_tol * std::abs(cur) || cur == 0.0) return {cur, std::abs(cur - prev)};
            prev = cur;
        }
        throw ConvergenceError("disk box quadrature did not reach the tolerance");
    }
    const Shell s = shell_of(region, R, "lp_norm(disk)");
    const double x0 = m.alpha * s.r0 / R, x1 = m.alpha * s.r1 / R;
    if (std::isinf(p)) return {bessel_max(2, m.n, x0, x1), 0.0};
    const auto rad = bessel_power(2, m.n, x0, x1, p, opt);
    const double scale = (R / m.alpha) * (R / m.alpha) * ((m.n == 0) ? 2.0 * pi : trig_power_period(p));
    return {rad.value * scale, rad.error * scale};
}

inline NormPower ball_power(const modes::BallMode& m, const Region& region, double p, const NormOptions& opt) {
    const double R = m.domain.R;
    const Shell s = shell_of(region, R, "lp_norm(ball)");
    const double x0 = m.alpha * s.r0 / R, x1 = m.alpha * s.r1 / R;
    const int L = std::abs(m.l);
    if (std::isinf(p)) {
        const double pol = numeric::max_abs([&](double x) { return legendre::assoc_legendre(m.n, L, x); }, -1.0, 1.0,
                                            1024);
        return {bessel_max(3, m.n, x0, x1) * pol, 0.0};
    }
    const auto rad = bessel_power(3, m.n, x0, x1, p, opt);
    const double pol = numeric::integrate_abs_power(
        [&](double x) { return legendre::assoc_legendre(m.n, L, x); }, -1.0, 1.0, p, quad_options(opt, m.n));
    const double azi = (L == 0) ? 2.0 * pi : trig_power_period(p);
    const double scale = std::pow(R / m.alpha, 3) * pol * azi;
    return {rad.value * scale, rad.error * scale};
}

inline NormPower elliptic_power(const modes::EllipticMode& m, const Region& region, double p, const NormOptions& opt) {
    const auto [t0, t1] = quarter_range(region);
    const double r0 = m.R_inner, r1 = m.R_outer;
    auto M = [&](double r) { return m.radial(r); };
    auto A = [&](double t) { return m.angular(t); };
    if (std::isinf(p)) {
        const double rad = numeric::max_abs(M, r0, r1, 512 + static_cast<int>(8.0 * std::sqrt(m.q)));
        const double ang = numeric::max_abs(A, t0, t1, 1024);
        return {rad * ang, 0.0};
    }
    // radial oscillations: phase of order 2 sqrt(q) sinh r
    const double rz = 2.0 * std::sqrt(m.q) * std::cosh(r1) * (r1 - r0) / pi;
    const auto ro = quad_options(opt, rz);
    const auto ao = quad_options(opt, m.n + 2);
    const auto m_cosh = numeric::integrate_abs_power_est(M, [](double r) { return std::cosh(2.0 * r); }, r0, r1, p, ro);
    const auto m_one = numeric::integrate_abs_power_est(M, [](double) { return 1.0; }, r0, r1, p, ro);
    const auto a_one = numeric::integrate_abs_power_est(A, [](double) { return 1.0; }, t0, t1, p, ao);
    const auto a_cos = numeric::integrate_abs_power_est(A, [](double t) { return std::cos(2.0 * t); }, t0, t1, p, ao);
    // Jacobian (a^2/2)(cosh 2r - cos 2 theta) splits into two separable products;
    // the factor 4 collects the four symmetric quarters
    const double c = 4.0 * 0.5 * m.a * m.a;
    const double first = m_cosh.value * a_one.value;
    const double second = m_one.value * a_cos.value;
    const double err = m_cosh.error * a_one.value + m_cosh.value * a_one.error + m_one.error * std::abs(a_cos.value) +
                       m_one.value * a_cos.error;
    return {c * (first - second), c * err};
}

/// int_a^b |f(w x)|^p for f = sin (Dirichlet) or cos (Neumann).
inline numeric::QuadResult trig_power(bool dirichlet, double w, double a, double b, double p, const NormOptions& opt) {
    if (w == 0.0) {
        // the constant factor of a Neumann mode with n_i = 0
        return {dirichlet ? 0.0 : (b - a), 0.0};
    }
    const auto o = quad_options(opt, w * (b - a) / pi);
    if (dirichlet) return numeric::integrate_abs_power_est([w](double x) { return std::sin(w * x); }, [](double) { return 1.0; }, a, b, p, o);
    return numeric::integrate_abs_power_est([w](double x) { return std::cos(w * x); }, [](double) { return 1.0; }, a, b, p, o);
}

inline NormPower rectangle_power(const modes::RectangleMode& m, const Region& region, double p, const NormOptions& opt) {
    const std::size_t d = m.n.size();
    std::vector<double> lo(d, 0.0), hi = m.domain.sides;
    if (const auto* box = std::get_if<Box>(&region)) {
        if (box->lo.size() != d || box->hi.size() != d) throw DomainError("box dimension must match the rectangle");
        for (std::size_t c = 0; c < d; ++c) {
            if (!(box->lo[c] < box->hi[c])) throw DomainError("degenerate box");
            if (box->lo[c] < 0.0 || box->hi[c] > m.domain.sides[c]) throw DomainError("box must lie inside the rectangle");
        }
        lo = box->lo;
        hi = box->hi;
    } else if (!std::holds_alternative<Whole>(region)) {
        throw DomainError("rectangle modes support Whole and Box regions");
    }
    const bool dir = m.bc.kind == modes::Boundary::dirichlet;
    double value = 1.0, rel = 0.0;
    for (std::size_t c = 0; c < d; ++c) {
        const double w = pi * m.n[c] / m.domain.sides[c];
        if (std::isinf(p)) {
            value *= (w == 0.0) ? 1.0 : numeric::max_abs([&](double x) { return m.factor(c, x); }, lo[c], hi[c],
                                                         256 + static_cast<int>(8.0 * w * (hi[c] - lo[c]) / pi));
            continue;
        }
        const auto f = trig_power(dir, w, lo[c], hi[c], p, opt);
        value *= f.value;
        if (f.value > 0.0) rel += f.error / f.value;
    }
    return {value, std::isinf(p) ? 0.0 : value * rel};
}

}  // namespace detail

/// ||u||_p^p over the region (max |u| for p = inf) with an error estimate.
inline NormPower norm_power(const modes::Mode& mode, const Region& region, double p, const NormOptions& opt = {}) {
    detail::check_p(p);
    return std::visit(
        [&](const auto& m) -> NormPower {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, modes::DiskMode>) {
                return detail::disk_power(m, region, p, opt);
            } else if constexpr (std::is_same_v<T, modes::BallMode>) {
                return detail::ball_power(m, region, p, opt);
            } else if constexpr (std::is_same_v<T, modes::EllipticMode>) {
                return detail::elliptic_power(m, region, p, opt);
            } else {
                return detail::rectangle_power(m, region, p, opt);
            }
        },
        mode);
}

inline double lp_norm(const modes::Mode& mode, const Region& region, double p, const NormOptions& opt = {}) {
    const auto r = norm_power(mode, region, p, opt);
    return std::isinf(p) ? r.value : std::pow(r.value, 1.0 / p);
}

namespace detail {

struct Ratio {
    double value;
    double rel_error;
};

inline Ratio ratio_of(const NormPower& num, const NormPower& den, double p) {
    if (!(den.value > 0.0)) throw NumericalError("localization ratio: zero denominator");
    if (std::isinf(p)) return {num.value / den.value, 0.0};
    const double r = std::pow(std::max(0.0, num.value) / den.value, 1.0 / p);
    const double rel = ((num.value > 0.0 ? num.error / num.value : 0.0) + den.error / den.value) / p;
    return {r, rel};
}

inline double inv_p(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

}  // namespace detail

// ---------------------------------------------------------------------------
// Whispering gallery modes
// ---------------------------------------------------------------------------

inline double disk_core_radius(int n) { return n - std::pow(static_cast<double>(n), 2.0 / 3.0); }

inline double ball_core_radius(int n) {
    const double h = n + 0.5;
    return h - std::pow(h, 2.0 / 3.0);
}

/// n^{1/3 + 2/(3p)} 2^{-n^{1/3}/3}, the disk bound with unit constant.
inline double whispering_bound(int n, double p) {
    const double c = std::cbrt(static_cast<double>(n));
    return std::pow(n, 1.0 / 3.0 + 2.0 / 3.0 * detail::inv_p(p)) * std::pow(2.0, -c / 3.0);
}

/// (n + 1/2)^{1/3 + 2/(3p)} exp(-(n + 1/2)^{1/3}/3), the ball bound with unit constant.
inline double ball_whispering_bound(int n, double p) {
    const double h = n + 0.5;
    return std::pow(h, 1.0 / 3.0 + 2.0 / 3.0 * detail::inv_p(p)) * std::exp(-std::cbrt(h) / 3.0);
}

/// Norm over the core disk of radius R d_n / alpha_{nk} relative to the whole disk.
inline RatioReport whispering_ratio(double R, const modes::BoundaryCondition& bc, int n, int k, double p,
                                    const NormOptions& opt = {}) {
    if (n < 1) throw InvalidIndex("whispering_ratio: n must be >= 1");
    const auto m = modes::disk_mode(R, bc, n, k, 1);
    const double core = std::clamp(disk_core_radius(n) / m.alpha, 0.0, 1.0);
    const auto num = norm_power(m, Shell{0.0, R * core}, p, opt);
    const auto den = norm_power(m, Whole{}, p, opt);
    const auto r = detail::ratio_of(num, den, p);
    RatioReport rep;
    rep.family = "disk";
    rep.n = n;
    rep.k = k;
    rep.i = 1;
    rep.p = p;
    rep.region = "core";
    rep.lambda = m.lambda;
    rep.ratio = r.value;
    rep.quad_error = r.rel_error;
    rep.bound = whispering_bound(n, p);
    rep.measure_fraction = core * core;
    return rep;
}

inline RatioReport ball_whispering_ratio(double R, const modes::BoundaryCondition& bc, int n, int k, double p,
                                         const NormOptions& opt = {}) {
    if (n < 1) throw InvalidIndex("ball_whispering_ratio: n must be >= 1");
    const auto m = modes::ball_mode(R, bc, n, k, 0);
    const double core = std::clamp(ball_core_radius(n) / m.alpha, 0.0, 1.0);
    const auto num = norm_power(m, Shell{0.0, R * core}, p, opt);
    const auto den = norm_power(m, Whole{}, p, opt);
    const auto r = detail::ratio_of(num, den, p);
    RatioReport rep;
    rep.family = "ball";
    rep.n = n;
    rep.k = k;
    rep.p = p;
    rep.region = "core";
    rep.lambda = m.lambda;
    rep.ratio = r.value;
    rep.quad_error = r.rel_error;
    rep.bound = ball_whispering_bound(n, p);
    rep.measure_fraction = core * core * core;
    return rep;
}

/// max over the sweep of ratio / bound.
inline double empirical_constant(const std::vector<RatioReport>& rows) {
    double c = 0.0;
    for (const auto& r : rows) {
        if (r.bound > 0.0) c = std::max(c, r.ratio / r.bound);
    }
    return c;
}

// ---------------------------------------------------------------------------
// Focusing modes
// ---------------------------------------------------------------------------

/// Limit of the outer-annulus ratio as k -> infinity; NaN at the critical
/// exponent (4 in 2D, 3 in 3D) where no limit is given.
inline double focusing_limit(int dim, double p, double R) {
    if (dim != 2 && dim != 3) throw DomainError("focusing_limit: dim must be 2 or 3");
    if (!(R > 0.0 && R < 1.0)) throw DomainError("focusing_limit: R must lie in (0, 1)");
    detail::check_p(p);
    const double critical = (dim == 2) ? 4.0 : 3.0;
    if (p == critical) return nan;
    if (p > critical) return 0.0;
    const double e = (dim == 2) ? 2.0 - p / 2.0 : 3.0 - p;
    return std::pow(1.0 - std::pow(R, e), 1.0 / p);
}

/// Norm over R < r < 1 relative to the unit disk (dim 2) or unit ball (dim 3).
inline RatioReport focusing_ratio(int dim, const modes::BoundaryCondition& bc, int n, int k, double p, double R,
                                  const NormOptions& opt = {}) {
    if (!(R > 0.0 && R < 1.0)) throw DomainError("focusing_ratio: R must lie in (0, 1)");
    RatioReport rep;
    rep.n = n;
    rep.k = k;
    rep.p = p;
    rep.region = "outer";
    rep.limit = focusing_limit(dim, p, R);
    detail::Ratio r{};
    if (dim == 2) {
        const auto m = modes::disk_mode(1.0, bc, n, k, 1);
        r = detail::ratio_of(norm_power(m, Shell{R, 1.0}, p, opt), norm_power(m, Whole{}, p, opt), p);
        rep.family = "disk";
        rep.i = 1;
        rep.lambda = m.lambda;
        rep.measure_fraction = 1.0 - R * R;
    } else if (dim == 3) {
        const auto m = modes::ball_mode(1.0, bc, n, k, 0);
        r = detail::ratio_of(norm_power(m, Shell{R, 1.0}, p, opt), norm_power(m, Whole{}, p, opt), p);
        rep.family = "ball";
        rep.lambda = m.lambda;
        rep.measure_fraction = 1.0 - R * R * R;
    } else {
        throw DomainError("focusing_ratio: dim must be 2 or 3");
    }
    rep.ratio = r.value;
    rep.quad_error = r.rel_error;
    return rep;
}

struct ScalingPoint {
    double z;
    double f;       // f_{p,n}(z) or its 3D analogue
    double scaled;  // f / z^{2 - p/2} or f / z^{3 - p}
};

/// f_{p,n}(z) = int_0^z r |J_n(r)|^p dr (dim 2) or int_0^z r^2 |j_n(r)|^p dr
/// (dim 3), scaled by the expected power of z.
inline std::vector<ScalingPoint> fp_scaling_probe(int dim, int n, double p, const std::vector<double>& z_list,
                                                  const NormOptions& opt = {}) {
    if (dim != 2 && dim != 3) throw DomainError("fp_scaling_probe: dim must be 2 or 3");
    const double critical = (dim == 2) ? 4.0 : 3.0;
    if (!(p >= 1.0 && p < critical)) throw DomainError("fp_scaling_probe: need 1 <= p < critical exponent");
    const double e = (dim == 2) ? 2.0 - p / 2.0 : 3.0 - p;
    std::vector<ScalingPoint> out;
    for (double z : z_list) {
        if (!(z > 0.0)) throw DomainError("fp_scaling_probe: z must be > 0");
        const double f = detail::bessel_power(dim, n, 0.0, z, p, opt).value;
        out.push_back({z, f, f / std::pow(z, e)});
    }
    return out;
}

/// Upper bound on f(z) for z >= z0 from |J_n(r)| < sqrt(A0/r) (A0 = 3/pi,
/// dim 2) or |j_n(r)| < A0/r (A0 = 2, dim 3), assumed to hold on [z0, z].
inline double fp_upper_bound(int dim, int n, double p, double z0, double z, const NormOptions& opt = {}) {
    const double head = detail::bessel_power(dim, n, 0.0, z0, p, opt).value;
    if (dim == 2) {
        const double A0 = 3.0 / pi;
        const double e = 2.0 - p / 2.0;
        return head + std::pow(A0, p / 2.0) * (std::pow(z, e) - std::pow(z0, e)) / e;
    }
    const double A0 = 2.0;
    const double e = 3.0 - p;
    return head + std::pow(A0, p) * (std::pow(z, e) - std::pow(z0, e)) / e;
}

// ---------------------------------------------------------------------------
// Bouncing ball modes
// ---------------------------------------------------------------------------

struct BoundConstants {
    double alpha, beta, gamma;
    int n;
    double D_n;
    /// (16 alpha / (pi - alpha/2))^{1/p}
    double prefactor(double p) const { return std::pow(16.0 * alpha / (pi - alpha / 2.0), detail::inv_p(p)); }
    /// sin(pi/4 + alpha/2) - sin(alpha)
    double rate() const { return std::sin(beta) - std::sin(alpha); }
};

inline BoundConstants bouncing_constants(int n, double alpha) {
    if (!(alpha > 0.0 && alpha < pi / 2.0)) throw DomainError("bouncing_constants: alpha must lie in (0, pi/2)");
    if (n < 0) throw InvalidIndex("bouncing_constants: n must be >= 0");
    BoundConstants c;
    c.alpha = alpha;
    c.beta = pi / 4.0 + alpha / 2.0;
    c.gamma = 3.0 * pi / 8.0 + alpha / 4.0;
    c.n = n;
    c.D_n = 3.0 * std::sqrt((1.0 + std::sin(c.gamma)) / std::pow(std::tan(pi / 16.0 - alpha / 8.0), n));
    return c;
}

/// D_n (16 alpha/(pi - alpha/2))^{1/p} exp(-a sqrt(lambda) [sin(pi/4 + alpha/2) - sin alpha]).
inline double bouncing_bound(int n, double alpha, double p, double a, double lambda) {
    const auto c = bouncing_constants(n, alpha);
    return c.D_n * c.prefactor(p) * std::exp(-a * std::sqrt(lambda) * c.rate());
}

/// Elliptic-sector area over the domain area for R1 < r < R2.
inline double sector_measure_fraction(double alpha, double R1, double R2) {
    const double radial_cosh = 0.5 * (std::sinh(2.0 * R2) - std::sinh(2.0 * R1));
    const double radial_one = R2 - R1;
    // int over the sector of 1 and of cos 2 theta
    const double s_one = 2.0 * (pi - 2.0 * alpha), s_cos = -2.0 * std::sin(2.0 * alpha);
    const double full = radial_cosh * 2.0 * pi;  // int_0^{2 pi} cos 2 theta = 0
    return (radial_cosh * s_one - radial_one * s_cos) / full;
}

/// Norm outside the sector relative to the whole domain, with the bound.
inline RatioReport bouncing_ratio(const modes::EllipticMode& m, double alpha, double p, const NormOptions& opt = {}) {
    const auto out = norm_power(m, Sector{alpha, true}, p, opt);
    const auto in = norm_power(m, Sector{alpha, false}, p, opt);
    RatioReport rep;
    rep.family = m.annulus ? "annulus" : "ellipse";
    rep.n = m.n;
    rep.k = m.k;
    rep.i = m.i;
    rep.p = p;
    rep.region = "outside-sector";
    rep.lambda = m.lambda;
    if (std::isinf(p)) {
        rep.ratio = out.value / std::max(out.value, in.value);
        rep.sector_ratio = out.value / in.value;
    } else {
        const NormPower whole{out.value + in.value, out.error + in.error};
        const auto r = detail::ratio_of(out, whole, p);
        rep.ratio = r.value;
        rep.quad_error = r.rel_error;
        rep.sector_ratio = std::pow(std::max(0.0, out.value) / in.value, 1.0 / p);
    }
    rep.bound = bouncing_bound(m.n, alpha, p, m.a, m.lambda);
    rep.measure_fraction = 1.0 - sector_measure_fraction(alpha, m.R_inner, m.R_outer);
    return rep;
}

struct BouncingSweep {
    std::vector<RatioReport> rows;  // ascending in lambda
    double lambda_alpha = nan;      // smallest computed lambda from which ratio <= bound onward
    std::size_t tail = 0;           // number of modes in that range
};

/// Whether a mode is the filled ellipse or annulus is taken from `domain`.
inline BouncingSweep bouncing_sweep(const modes::Domain& domain, int n, int i, double alpha, double p,
                                    const modes::ScanOptions& scan = {}, const NormOptions& opt = {}) {
    BouncingSweep sweep;
    if (const auto* e = std::get_if<modes::Ellipse>(&domain)) {
        const auto roots = modes::ellipse_q_roots(e->R, n, i, 0, scan);
        for (std::size_t k = 0; k < roots.size(); ++k) {
            const auto m = modes::ellipse_mode_at(*e, n, static_cast<int>(k) + 1, i, roots[k], scan.kmax);
            sweep.rows.push_back(bouncing_ratio(m, alpha, p, opt));
        }
    } else if (const auto* an = std::get_if<modes::Annulus>(&domain)) {
        const auto roots = modes::annulus_q_roots(an->R1, an->R2, n, i, 0, scan);
        for (std::size_t k = 0; k < roots.size(); ++k) {
            const auto m = modes::annulus_mode_at(*an, n, static_cast<int>(k) + 1, i, roots[k], scan.kmax);
            sweep.rows.push_back(bouncing_ratio(m, alpha, p, opt));
        }
    } else {
        throw DomainError("bouncing_sweep: domain must be an ellipse or an elliptical annulus");
    }
    for (std::size_t j = sweep.rows.size(); j-- > 0;) {
        if (!(sweep.rows[j].ratio <= sweep.rows[j].bound)) break;
        ++sweep.tail;
        sweep.lambda_alpha = sweep.rows[j].lambda;
    }
    return sweep;
}

// ---------------------------------------------------------------------------
// Rectangles
// ---------------------------------------------------------------------------

/// Mode-independent lower bound for int_a^b sin^2(m x) dx (and cos^2).
inline double epsilon_ab(double a, double b) {
    if (!(0.0 <= a && a < b)) throw DomainError("epsilon_ab: need 0 <= a < b");
    const double w = b - a;
    double e = w / 4.0;
    const long top = static_cast<long>(std::floor(2.0 / w));
    for (long n = 1; n <= top; ++n) {
        e = std::min(e, w / 2.0 - 0.5 * std::abs(std::sin(n * w) / static_cast<double>(n)));
    }
    return e;
}

/// True when some l_i^2 / l_j^2 lies within 1e-12 of a fraction with
/// denominator <= 50 (near-degenerate spectrum).
inline bool near_rational_sides(const std::vector<double>& sides) {
    for (std::size_t i = 0; i < sides.size(); ++i) {
        for (std::size_t j = i + 1; j < sides.size(); ++j) {
            const double x = (sides[i] * sides[i]) / (sides[j] * sides[j]);
            // continued-fraction convergents h/k of x
            double h0 = 1.0, h1 = std::floor(x), k0 = 0.0, k1 = 1.0, rest = x - std::floor(x);
            while (k1 <= 50.0) {
                if (std::abs(x - h1 / k1) <= 1e-12 * std::max(1.0, x)) return true;
                if (rest < 1e-15) break;
                const double inv = 1.0 / rest;
                const double a = std::floor(inv);
                rest = inv - a;
                const double h2 = a * h1 + h0, k2 = a * k1 + k0;
                h0 = h1;
                h1 = h2;
                k0 = k1;
                k1 = k2;
            }
        }
    }
    return false;
}

namespace detail {

inline void check_rectangle_box(const std::vector<double>& sides, const modes::BoundaryCondition& bc, const Box& box,
                                double p) {
    modes::validate(modes::Rectangle{sides});
    check_p(p);
    if (bc.kind == modes::Boundary::robin) throw UnsupportedCondition("rectangle: Dirichlet or Neumann only");
    const std::size_t d = sides.size();
    if (box.lo.size() != d || box.hi.size() != d) throw DomainError("rectangle: box dimension mismatch");
    for (std::size_t c = 0; c < d; ++c) {
        if (!(box.lo[c] < box.hi[c])) throw DomainError("rectangle: degenerate box");
        if (box.lo[c] < 0.0 || box.hi[c] > sides[c]) throw DomainError("rectangle: box outside the rectangle");
    }
}

/// factor[c][n] = ||phi_n||_{L_p(a_c, b_c)} / ||phi_n||_{L_p(0, l_c)} for n <= top.
inline std::vector<std::vector<double>> rectangle_factors(const std::vector<double>& sides, bool dir, const Box& box,
                                                          double p, int top, const NormOptions& opt) {
    const std::size_t d = sides.size();
    const int first = dir ? 1 : 0;
    std::vector<std::vector<double>> factor(d, std::vector<double>(static_cast<std::size_t>(top) + 1, 0.0));
    const double full_unit = std::isinf(p) ? 1.0 : std::tgamma(0.5 * (p + 1.0)) / (std::sqrt(pi) * std::tgamma(0.5 * p + 1.0));
    for (std::size_t c = 0; c < d; ++c) {
        for (int n = first; n <= top; ++n) {
            const double w = pi * n / sides[c];
            if (std::isinf(p)) {
                factor[c][n] = (w == 0.0) ? 1.0
                                          : numeric::max_abs(
                                                [&](double x) { return dir ? std::sin(w * x) : std::cos(w * x); },
                                                box.lo[c], box.hi[c], 256 + static_cast<int>(8.0 * w * sides[c]));
            } else {
                const double part = trig_power(dir, w, box.lo[c], box.hi[c], p, opt).value;
                const double whole = (w == 0.0) ? sides[c] : sides[c] * full_unit;
                factor[c][n] = std::pow(part / whole, 1.0 / p);
            }
        }
    }
    return factor;
}

/// Visits every index vector with entries >= first and sum of squares <= max_norm_sq,
/// in lexicographic order.
template <class F>
void for_each_index(std::size_t d, int first, long max_norm_sq, F&& visit) {
    const int top = static_cast<int>(std::floor(std::sqrt(static_cast<double>(max_norm_sq))));
    std::vector<int> idx(d, first);
    while (true) {
        long sq = 0;
        for (int v : idx) sq += static_cast<long>(v) * v;
        if (sq <= max_norm_sq) visit(idx);
        std::size_t c = d;
        while (c > 0 && ++idx[c - 1] > top) {
            idx[c - 1] = first;
            --c;
        }
        if (c == 0) break;
    }
}

}  // namespace detail

/// pi^{-d} prod ((b_i - a_i)/l_i)^{1/p - 1} eps(pi a_i/l_i, pi b_i/l_i)
inline double rectangle_analytic_bound(const std::vector<double>& sides, const Box& box, double p) {
    double out = std::pow(pi, -static_cast<double>(sides.size()));
    for (std::size_t c = 0; c < sides.size(); ++c) {
        const double frac = (box.hi[c] - box.lo[c]) / sides[c];
        out *= std::pow(frac, detail::inv_p(p) - 1.0) * epsilon_ab(pi * box.lo[c] / sides[c], pi * box.hi[c] / sides[c]);
    }
    return out;
}

/// One row per mode with sum n_i^2 <= max_norm_sq; the mode indices go to
/// (n, k, i) in that order. No upper bound is claimed, so `bound` stays empty.
inline std::vector<RatioReport> rectangle_ratios(const std::vector<double>& sides, const modes::BoundaryCondition& bc,
                                                 const Box& box, double p, long max_norm_sq, const NormOptions& opt = {}) {
    detail::check_rectangle_box(sides, bc, box, p);
    if (sides.size() > 3) throw DomainError("rectangle_ratios: at most three dimensions");
    const bool dir = bc.kind == modes::Boundary::dirichlet;
    const int top = static_cast<int>(std::floor(std::sqrt(static_cast<double>(max_norm_sq))));
    const auto factor = detail::rectangle_factors(sides, dir, box, p, top, opt);
    const double lower = rectangle_analytic_bound(sides, box, p);
    double inside = 1.0, whole = 1.0;
    for (std::size_t c = 0; c < sides.size(); ++c) {
        inside *= box.hi[c] - box.lo[c];
        whole *= sides[c];
    }
    std::vector<RatioReport> rows;
    detail::for_each_index(sides.size(), dir ? 1 : 0, max_norm_sq, [&](const std::vector<int>& idx) {
        RatioReport r;
        r.family = "rectangle";
        r.p = p;
        r.region = "box";
        int* slots[3] = {&r.n, &r.k, &r.i};
        double ratio = 1.0, lam = 0.0;
        for (std::size_t c = 0; c < idx.size(); ++c) {
            *slots[c] = idx[c];
            ratio *= factor[c][idx[c]];
            lam += std::pow(pi * idx[c] / sides[c], 2);
        }
        r.lambda = lam;
        r.ratio = ratio;
        r.lower_bound = lower;
        r.measure_fraction = inside / whole;
        r.quad_error = opt.rel_tol;
        rows.push_back(r);
    });
    return rows;
}

struct RectangleBound {
    double analytic = 0.0;
    double empirical_min = infinity;
    std::vector<int> argmin;
    std::size_t modes = 0;
    bool near_rational = false;
};

/// Analytic lower bound and the smallest measured ratio
/// ||u||_{L_p(V)}/||u||_{L_p(Omega)} over all modes with sum n_i^2 <= max_norm_sq.
inline RectangleBound rectangle_lower_bound(const std::vector<double>& sides, const modes::BoundaryCondition& bc,
                                            const Box& box, double p, long max_norm_sq, const NormOptions& opt = {}) {
    detail::check_rectangle_box(sides, bc, box, p);
    RectangleBound out;
    out.near_rational = near_rational_sides(sides);
    out.analytic = rectangle_analytic_bound(sides, box, p);
    const bool dir = bc.kind == modes::Boundary::dirichlet;
    const int top = static_cast<int>(std::floor(std::sqrt(static_cast<double>(max_norm_sq))));
    const auto factor = detail::rectangle_factors(sides, dir, box, p, top, opt);
    detail::for_each_index(sides.size(), dir ? 1 : 0, max_norm_sq, [&](const std::vector<int>& idx) {
        double r = 1.0;
        for (std::size_t c = 0; c < idx.size(); ++c) r *= factor[c][idx[c]];
        ++out.modes;
        if (r < out.empirical_min) {
            out.empirical_min = r;
            out.argmin = idx;
        }
    });
    return out;
}

// ---------------------------------------------------------------------------
// Fixed subdomain inside the disk
// ---------------------------------------------------------------------------

/// ||u_{nk}||_{L_p(V)} / ||u_{nk}||_{L_p(D)} for a Cartesian box V in the unit disk.
inline double corollary_ratio(int n, int k, double p, const Box& box, const NormOptions& opt = {}) {
    const auto m = modes::disk_mode(1.0, modes::BoundaryCondition::dirichlet(), n, k, 1);
    for (double x : {box.lo[0], box.hi[0]}) {
        for (double y : {box.lo[1], box.hi[1]}) {
            if (std::hypot(x, y) > 1.0) throw DomainError("corollary_ratio: box must lie inside the unit disk");
        }
    }
    return detail::ratio_of(norm_power(m, box, p, opt), norm_power(m, Whole{}, p, opt), p).value;
}

}  // namespace eigloc::localization
