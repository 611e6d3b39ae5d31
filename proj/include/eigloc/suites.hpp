#pragma once

// Verification suites: each one checks a family of inequalities on a fixed
// grid and keeps every instance it checked.

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "eigloc/bessel.hpp"
#include "eigloc/eigenmodes.hpp"
#include "eigloc/localization.hpp"

namespace eigloc::suites {

struct Check {
    std::string what;
    double lhs = 0.0;
    std::string relation;
    double rhs = 0.0;
    bool ok = false;
};

struct Suite {
    std::string name;
    std::vector<Check> checks;
    std::vector<std::pair<std::string, double>> measured;

    bool passed() const {
        for (const auto& c : checks) {
            if (!c.ok) return false;
        }
        return !checks.empty();
    }
    std::size_t failures() const {
        std::size_t f = 0;
        for (const auto& c : checks) f += c.ok ? 0 : 1;
        return f;
    }

    void less(std::string what, double a, double b) { checks.push_back({std::move(what), a, "<", b, a < b}); }
    void less_eq(std::string what, double a, double b) { checks.push_back({std::move(what), a, "<=", b, a <= b}); }
};

/// Deliberate corruptions used to prove that a suite can fail.
struct Faults {
    bool corrupt_zero = false;
};

namespace detail {

inline std::string label(const char* fmt, double a, double b = 0.0, double c = 0.0) {
    char buf[96];
    std::snprintf(buf, sizeof buf, fmt, a, b, c);
    return buf;
}

inline void sandwich(Suite& s, const localization::RatioReport& r) {
    const std::string tag = label("ratio n=%g k=%g p=%g", r.n, r.k, r.p);
    s.less_eq(tag + " >= 0", 0.0, r.ratio);
    s.less_eq(tag + " <= 1", r.ratio, 1.0 + 1e-6);
}

inline constexpr double pi = std::numbers::pi;

}  // namespace detail

// ---------------------------------------------------------------------------
// Bessel inequalities
// ---------------------------------------------------------------------------

/// 0 < J_n(nz) < 2^{-n^{1/3}/3} for z in (0, 1 - n^{-1/3}).
inline Suite kroger(const Faults& = {}) {
    Suite s{"kroger", {}, {}};
    for (int n = 5; n <= 80; ++n) {
        const double top = 1.0 - std::pow(n, -1.0 / 3.0);
        const double bound = std::pow(2.0, -std::cbrt(static_cast<double>(n)) / 3.0);
        for (int j = 0; j < 200; ++j) {
            const double z = top * (j + 0.5) / 200.0;
            const double v = bessel::bessel_j(n, n * z);
            const std::string tag = detail::label("J_%g(%g z), z=%.6f", n, n, z);
            s.less(tag + " > 0", 0.0, v);
            s.less(tag + " < bound", v, bound);
        }
    }
    return s;
}

/// n < j'_{n,1} < j_{n,1} < sqrt(n+1)(sqrt(n+2)+1), with the zero residuals.
inline Suite chambers(const Faults& faults = {}) {
    Suite s{"chambers", {}, {}};
    for (int n = 1; n <= 100; ++n) {
        const double dz = bessel::find_zero({n, 1, bessel::ZeroKind::derivative});
        double z = bessel::find_zero({n, 1});
        if (faults.corrupt_zero && n == 7) z *= 1.0 + 1e-6;
        const double upper = std::sqrt(n + 1.0) * (std::sqrt(n + 2.0) + 1.0);
        s.less(detail::label("n=%g < j'_{n,1}", n), n, dz);
        s.less(detail::label("j'_{%g,1} < j_{n,1}", n), dz, z);
        s.less(detail::label("j_{%g,1} < sqrt(n+1)(sqrt(n+2)+1)", n), z, upper);
        s.less_eq(detail::label("|J_%g(j_{n,1})|", n), std::abs(bessel::bessel_j(n, z)), 1e-12 * std::max(1.0, z));
        s.less_eq(detail::label("|J'_%g(j'_{n,1})|", n), std::abs(bessel::bessel_j_prime(n, dz)),
                  1e-12 * std::max(1.0, dz));
    }
    return s;
}

/// J_n(n) > 0.447 n^{-1/3} and j'_{n,1} > n + 0.8086 n^{1/3} for large n.
inline Suite transition_lower_bounds(const Faults& = {}) {
    Suite s{"transition_lower_bounds", {}, {}};
    for (int n = 30; n <= 100; ++n) {
        const double c = std::cbrt(static_cast<double>(n));
        s.less(detail::label("0.447 n^{-1/3} < J_%g(n)", n), 0.447 / c, bessel::bessel_j(n, n));
        s.less(detail::label("n + 0.8086 n^{1/3} < j'_{%g,1}", n), n + 0.8086 * c,
               bessel::find_zero({n, 1, bessel::ZeroKind::derivative}));
    }
    return s;
}

/// |J_n| at its successive extrema j'_{n,k} is strictly decreasing in k.
inline Suite decreasing_extrema(const Faults& = {}) {
    Suite s{"decreasing_extrema", {}, {}};
    for (int n = 0; n <= 30; ++n) {
        double prev = std::abs(bessel::bessel_j(n, bessel::find_zero({n, 1, bessel::ZeroKind::derivative})));
        for (int k = 2; k <= 10; ++k) {
            const double v = std::abs(bessel::bessel_j(n, bessel::find_zero({n, k, bessel::ZeroKind::derivative})));
            s.less(detail::label("|J_%g(j'_{n,%g})| < previous extremum", n, k), v, prev);
            prev = v;
        }
    }
    return s;
}

/// 0 < J_nu(nu x) < x^nu e^{nu s}/(1+s)^nu, s = sqrt(1-x^2), integer and half-integer nu.
inline Suite kapteyn(const Faults& = {}) {
    Suite s{"kapteyn", {}, {}};
    for (int twice = 1; twice <= 100; ++twice) {
        const double nu = 0.5 * twice;
        for (int j = 1; j <= 19; ++j) {
            const double x = 0.05 * j;
            const double v = (twice % 2 == 0) ? bessel::bessel_j(twice / 2, nu * x) : bessel::bessel_j_real(nu, nu * x);
            const std::string tag = detail::label("J_%g(%g x), x=%g", nu, nu, x);
            s.less(tag + " > 0", 0.0, v);
            s.less(tag + " < rhs", v, bessel::kapteyn_rhs(nu, x));
        }
    }
    return s;
}

/// j_n(z) < sqrt(pi/(2n+1)) exp(2/3 - (n+1/2)^{1/3}/3) for z < (n+1/2) - (n+1/2)^{2/3}.
inline Suite spherical_decay(const Faults& = {}) {
    Suite s{"spherical_decay", {}, {}};
    for (int n = 10; n <= 60; ++n) {
        const double m = n + 0.5;
        const double top = m - std::pow(m, 2.0 / 3.0);
        const double bound = std::sqrt(detail::pi / (2.0 * n + 1.0)) * std::exp(2.0 / 3.0 - std::cbrt(m) / 3.0);
        for (int j = 0; j < 50; ++j) {
            const double z = top * (j + 0.5) / 50.0;
            s.less(detail::label("j_%g(%.6f) < bound", n, z), bessel::spherical_bessel_j(n, z), bound);
        }
    }
    return s;
}

/// The first local maximum of j_n dominates the next nine extrema (n >= 1;
/// j_0 peaks at the origin).
inline Suite spherical_first_max(const Faults& = {}) {
    Suite s{"spherical_first_max", {}, {}};
    using bessel::Family;
    using bessel::ZeroKind;
    for (int n = 1; n <= 30; ++n) {
        const double first = bessel::spherical_bessel_j(n, bessel::find_zero({n, 1, ZeroKind::derivative, Family::spherical}));
        s.less(detail::label("j_%g(first extremum) > 0", n), 0.0, first);
        for (int k = 2; k <= 10; ++k) {
            const double v =
                std::abs(bessel::spherical_bessel_j(n, bessel::find_zero({n, k, ZeroKind::derivative, Family::spherical})));
            s.less(detail::label("|j_%g(extremum %g)| < first", n, k), v, first);
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// Localization
// ---------------------------------------------------------------------------

inline std::string p_name(double p) { return std::isinf(p) ? "inf" : detail::label("%g", p); }

/// Disk whispering gallery: ratio(60) < ratio(20)/10 for p in {1,2,inf}, k in {1,2};
/// empirical constants reported.
inline Suite whispering_disk(const Faults& = {}) {
    Suite s{"whispering_disk", {}, {}};
    const auto bc = modes::BoundaryCondition::dirichlet();
    for (double p : {1.0, 2.0, localization::infinity}) {
        std::vector<localization::RatioReport> all;
        for (int k : {1, 2}) {
            std::vector<localization::RatioReport> rows;
            for (int n = 20; n <= 60; n += 10) rows.push_back(localization::whispering_ratio(1.0, bc, n, k, p));
            for (const auto& r : rows) detail::sandwich(s, r);
            s.less("p=" + p_name(p) + detail::label(" k=%g ratio(60) < ratio(20)/10", k), rows.back().ratio,
                   rows.front().ratio / 10.0);
            const double c = localization::empirical_constant(rows);
            s.less("p=" + p_name(p) + detail::label(" k=%g empirical constant finite", k), c, localization::infinity);
            all.insert(all.end(), rows.begin(), rows.end());
        }
        s.measured.emplace_back("C_" + p_name(p), localization::empirical_constant(all));
    }
    return s;
}

/// Ball whispering gallery: ratio strictly decreasing over n in {15, 30, 45}.
inline Suite whispering_ball(const Faults& = {}) {
    Suite s{"whispering_ball", {}, {}};
    std::vector<localization::RatioReport> rows;
    for (int n : {15, 30, 45}) rows.push_back(localization::ball_whispering_ratio(1.0, modes::BoundaryCondition::dirichlet(), n, 1, 2.0));
    for (std::size_t j = 0; j < rows.size(); ++j) {
        detail::sandwich(s, rows[j]);
        if (j > 0) s.less(detail::label("ratio(%g) < ratio(%g)", rows[j].n, rows[j - 1].n), rows[j].ratio, rows[j - 1].ratio);
    }
    s.measured.emplace_back("C_2", localization::empirical_constant(rows));
    return s;
}

/// 2D focusing: |ratio - (1-R)^{1/2}| < 0.05 at k = 1000, p = 2, R = 0.8.
inline Suite focusing_2d(const Faults& = {}) {
    Suite s{"focusing_2d", {}, {}};
    for (int n : {0, 1}) {
        const auto r = localization::focusing_ratio(2, modes::BoundaryCondition::dirichlet(), n, 1000, 2.0, 0.8);
        detail::sandwich(s, r);
        s.less(detail::label("n=%g k=1000 |ratio - limit|", n), std::abs(r.ratio - r.limit), 0.05);
        s.measured.emplace_back(detail::label("ratio_n%g", n), r.ratio);
    }
    return s;
}

/// 3D focusing: |ratio - (1-R^2)| < 0.05 at k = 500, p = 1, n = 1, R = 0.8.
inline Suite focusing_3d(const Faults& = {}) {
    Suite s{"focusing_3d", {}, {}};
    const auto r = localization::focusing_ratio(3, modes::BoundaryCondition::dirichlet(), 1, 500, 1.0, 0.8);
    detail::sandwich(s, r);
    s.less("n=1 k=500 |ratio - limit|", std::abs(r.ratio - r.limit), 0.05);
    s.measured.emplace_back("ratio_n1", r.ratio);
    return s;
}

struct BouncingPanel {
    std::string name;
    modes::Domain domain;
    int n;
    double alpha;
};

inline std::vector<BouncingPanel> bouncing_panels() {
    const modes::Domain ellipse = modes::Ellipse{1.0, 1.0};
    const modes::Domain annulus = modes::Annulus{1.0, 0.5, 1.0};
    return {{"ellipse_n0", ellipse, 0, detail::pi / 4.0},
            {"ellipse_n1", ellipse, 1, detail::pi / 3.0},
            {"annulus_n0", annulus, 0, detail::pi / 4.0},
            {"annulus_n1", annulus, 1, detail::pi / 3.0}};
}

/// Sweep ceiling giving sqrt(lambda) near 60 with a = 1.
inline constexpr double bouncing_q_max = 900.0;

/// Bouncing ball: ratio <= bound for all modes above the reported Lambda_alpha,
/// the sweep reaches sqrt(lambda) >= 40 and that range has at least three modes.
inline Suite bouncing(const Faults& = {}) {
    Suite s{"bouncing", {}, {}};
    modes::ScanOptions scan;
    scan.q_max = bouncing_q_max;
    for (const auto& panel : bouncing_panels()) {
        const auto sw = localization::bouncing_sweep(panel.domain, panel.n, 1, panel.alpha, 2.0, scan);
        const double top = sw.rows.empty() ? 0.0 : std::sqrt(sw.rows.back().lambda);
        s.less_eq(panel.name + " sweep reaches sqrt(lambda) 40", 40.0, top);
        s.less_eq(panel.name + " modes above Lambda_alpha", 3.0, static_cast<double>(sw.tail));
        for (const auto& r : sw.rows) {
            detail::sandwich(s, r);
            if (r.lambda >= sw.lambda_alpha) {
                s.less_eq(panel.name + detail::label(" k=%g ratio <= bound", r.k), r.ratio, r.bound);
            }
        }
        s.measured.emplace_back(panel.name + "_Lambda_alpha", sw.lambda_alpha);
    }
    return s;
}

/// Fixed box in the unit disk: ratio decreasing in n and below 1e-4 at n = 60.
inline Suite corollary_box(const Faults& = {}) {
    Suite s{"corollary_box", {}, {}};
    const localization::Box v{{-0.3, -0.2}, {0.3, 0.2}};
    double prev = localization::infinity;
    int prev_n = 0;
    for (int n : {10, 20, 40, 60}) {
        const double r = localization::corollary_ratio(n, 1, 2.0, v);
        s.less(detail::label("ratio(%g) < ratio(%g)", n, prev_n), r, prev);
        prev = r;
        prev_n = n;
    }
    s.less("ratio(60) < 1e-4", prev, 1e-4);
    return s;
}

/// Rectangle: the empirical minimum over a mode sweep never drops below the
/// analytic bound, which is positive.
inline Suite rectangle(const Faults& = {}) {
    Suite s{"rectangle", {}, {}};
    const localization::Box v{{0.2, 0.3}, {0.4, 0.6}};
    for (auto bc : {modes::BoundaryCondition::dirichlet(), modes::BoundaryCondition::neumann()}) {
        for (double p : {1.0, 2.0}) {
            const auto rb = localization::rectangle_lower_bound({1.0, std::sqrt(2.0)}, bc, v, p, 400);
            const std::string tag = modes::to_string(bc) + " p=" + p_name(p);
            s.less(tag + " analytic bound > 0", 0.0, rb.analytic);
            s.less_eq(tag + " analytic <= empirical min", rb.analytic, rb.empirical_min);
            s.measured.emplace_back(tag + " empirical_min", rb.empirical_min);
        }
    }
    const auto one = localization::rectangle_lower_bound({1.0}, modes::BoundaryCondition::dirichlet(),
                                                         localization::Box{{0.3}, {0.5}}, 2.0, 500L * 500L);
    s.less("1D analytic bound > 0", 0.0, one.analytic);
    s.less_eq("1D analytic <= empirical min", one.analytic, one.empirical_min);
    return s;
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

struct Entry {
    std::string name;
    std::function<Suite(const Faults&)> run;
};

inline std::vector<Entry> registry() {
    return {{"kroger", kroger},
            {"chambers", chambers},
            {"transition_lower_bounds", transition_lower_bounds},
            {"decreasing_extrema", decreasing_extrema},
            {"kapteyn", kapteyn},
            {"spherical_decay", spherical_decay},
            {"spherical_first_max", spherical_first_max},
            {"whispering_disk", whispering_disk},
            {"whispering_ball", whispering_ball},
            {"focusing_2d", focusing_2d},
            {"focusing_3d", focusing_3d},
            {"bouncing", bouncing},
            {"corollary_box", corollary_box},
            {"rectangle", rectangle}};
}

}  // namespace eigloc::suites
