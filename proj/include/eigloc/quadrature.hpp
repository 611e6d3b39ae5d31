#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

#include "eigloc/error.hpp"
#include "eigloc/roots.hpp"

namespace eigloc::numeric {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

inline GaussRule make_gauss_rule(int n) {
    if (n < 1) throw DomainError("make_gauss_rule: need at least one node");
    GaussRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[static_cast<std::size_t>(i)] = -x;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    return rule;
}

/// Cached rule; safe to call from several threads.
inline const GaussRule& gauss_rule(int n) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<GaussRule>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<GaussRule>(make_gauss_rule(n));
    return *slot;
}

/// Composite Gauss-Legendre with `panels` equal panels on [a, b].
template <class F>
double integrate_panels(F&& f, double a, double b, int panels, int order = 20) {
    const GaussRule& rule = gauss_rule(order);
    const double h = (b - a) / panels;
    double total = 0.0;
    for (int m = 0; m < panels; ++m) {
        const double lo = a + m * h;
        const double mid = lo + 0.5 * h;
        double s = 0.0;
        for (std::size_t j = 0; j < rule.nodes.size(); ++j) s += rule.weights[j] * f(mid + 0.5 * h * rule.nodes[j]);
        total += 0.5 * h * s;
    }
    return total;
}

struct AbsPowerOptions {
    double rel_tol = 1e-8;
    int samples = 64;     // initial sampling grid used to find sign changes
    int order = 20;       // nodes per panel
    int max_doublings = 10;
};

namespace detail {

/// Sign changes of g on a uniform grid, refined to roots; returned with a, b
/// as the outer breakpoints.
template <class G>
std::vector<double> breakpoints(G& g, double a, double b, int samples) {
    std::vector<double> cuts{a};
    const double h = (b - a) / samples;
    double x0 = a;
    double g0 = g(a);
    for (int i = 1; i <= samples; ++i) {
        const double x1 = (i == samples) ? b : a + i * h;
        const double g1 = g(x1);
        if (opposite_signs(g0, g1)) {
            const double r = brent_root(g, x0, x1, 1e-15);
            if (r > cuts.back() && r < b) cuts.push_back(r);
        } else if (g1 == 0.0 && i < samples) {
            cuts.push_back(x1);
        }
        x0 = x1;
        g0 = g1;
    }
    cuts.push_back(b);
    return cuts;
}

}  // namespace detail

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  // size of the last refinement step
};

/// Integral of w(x) |g(x)|^p over [a, b] for finite p >= 1.
///
/// The interval is cut at the sign changes of g so that the kinks of |g|^p
/// fall on panel ends; the panel count per piece is doubled until the
/// total moves by less than `rel_tol`.
template <class G, class W>
QuadResult integrate_abs_power_est(G&& g, W&& w, double a, double b, double p, const AbsPowerOptions& opt = {}) {
    if (!(b > a)) return {};
    if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("integrate_abs_power: p must be finite and >= 1");
    auto gg = [&](double x) { return static_cast<double>(g(x)); };
    const std::vector<double> cuts = detail::breakpoints(gg, a, b, opt.samples);
    auto integrand = [&](double x) {
        const double v = std::abs(gg(x));
        return w(x) * ((p == 1.0) ? v : (p == 2.0) ? v * v : std::pow(v, p));
    };
    auto sum_with = [&](int panels) {
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            total += integrate_panels(integrand, cuts[i], cuts[i + 1], panels, opt.order);
        }
        return total;
    };
    double previous = sum_with(1);
    for (int d = 1, panels = 2; d <= opt.max_doublings; ++d, panels *= 2) {
        const double current = sum_with(panels);
        const double change = std::abs(current - previous);
        if (change <= opt.rel_tol * std::abs(current) || current == 0.0) return {current, change};
        if (d == opt.max_doublings) {
            char msg[160];
            std::snprintf(msg, sizeof msg, "integrate_abs_power: no convergence, last estimates %.17g and %.17g",
                          previous, current);
            throw ConvergenceError(msg);
        }
        previous = current;
    }
    return {previous, 0.0};
}

template <class G, class W>
double integrate_abs_power(G&& g, W&& w, double a, double b, double p, const AbsPowerOptions& opt = {}) {
    return integrate_abs_power_est(std::forward<G>(g), std::forward<W>(w), a, b, p, opt).value;
}

template <class G>
double integrate_abs_power(G&& g, double a, double b, double p, const AbsPowerOptions& opt = {}) {
    return integrate_abs_power(std::forward<G>(g), [](double) { return 1.0; }, a, b, p, opt);
}

/// Golden-section search for the maximum of f on [lo, hi].
template <class F>
double golden_max(F&& f, double lo, double hi, double tol = 1e-12) {
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > tol * std::max(1.0, std::abs(lo))) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    return std::max({f1, f2, f(0.5 * (lo + hi))});
}

/// max |g| on [a, b]: dense grid, then golden-section polish around the
/// grid argmax.
template <class G>
double max_abs(G&& g, double a, double b, int samples = 2048) {
    if (!(b >= a)) throw DomainError("max_abs: empty interval");
    if (b == a) return std::abs(g(a));
    const double h = (b - a) / samples;
    int best = 0;
    double best_value = -1.0;
    for (int i = 0; i <= samples; ++i) {
        const double v = std::abs(g(a + i * h));
        if (v > best_value) {
            best_value = v;
            best = i;
        }
    }
    const double lo = a + std::max(0, best - 1) * h;
    const double hi = a + std::min(samples, best + 1) * h;
    const double polished = golden_max([&](double x) { return std::abs(g(x)); }, lo, hi);
    return std::max(best_value, polished);
}

}  // namespace eigloc::numeric
