#pragma once

// Command layer behind the eigloc tool: configuration, CSV tables, the
// individual commands and the exit-code contract.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "eigloc/bessel.hpp"
#include "eigloc/eigenmodes.hpp"
#include "eigloc/error.hpp"
#include "eigloc/localization.hpp"
#include "eigloc/mathieu.hpp"
#include "eigloc/suites.hpp"

namespace eigloc::report {

enum ExitCode : int { exit_ok = 0, exit_verification = 1, exit_invalid = 2, exit_numerical = 3 };

/// Malformed configuration or command line.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Settings
// ---------------------------------------------------------------------------

using Settings = std::map<std::string, std::string>;

inline Settings defaults() {
    return {{"domain", "disk"}, {"bc", "dirichlet"}, {"h", "1"},       {"n", "0"},          {"k", "1"},
            {"i", "1"},         {"l", "0"},          {"p", "2"},       {"alpha", "pi/4"},   {"R", "1"},
            {"R1", "0.5"},      {"R2", "1"},         {"a", "1"},       {"sides", "1,1.4142135623730951"},
            {"lo", "0.2,0.3"},  {"hi", "0.4,0.6"},   {"shell", "0.8"}, {"N", "400"},        {"grid", "64"},
            {"out", "-"},       {"kmax", "200"},     {"tol", "1e-8"},  {"qmax", "900"},     {"suite", "all"},
            {"fault", "none"}};
}

/// key = value lines; '#' starts a comment.
inline Settings parse_config(std::istream& in) {
    Settings s;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        auto trim = [](std::string t) {
            const auto b = t.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string();
            return t.substr(b, t.find_last_not_of(" \t\r") - b + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError("config line " + std::to_string(number) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw UsageError("config line " + std::to_string(number) + ": empty key");
        s[key] = trim(line.substr(eq + 1));
    }
    return s;
}

inline Settings load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file " + path);
    return parse_config(in);
}

/// Values in `over` replace those in `base`.
inline Settings merge(Settings base, const Settings& over) {
    for (const auto& [k, v] : over) base[k] = v;
    return base;
}

// ---------------------------------------------------------------------------
// Value parsing
// ---------------------------------------------------------------------------

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

/// Decimal number, "inf", "pi", "pi/d" or "m*pi/d".
inline double parse_real(const std::string& text) {
    std::string t;
    for (char c : text) {
        if (c != ' ') t += c;
    }
    if (t == "inf" || t == "infinity") return std::numeric_limits<double>::infinity();
    if (const auto at = t.find("pi"); at != std::string::npos) {
        double mult = 1.0, div = 1.0;
        if (at > 0) {
            if (t[at - 1] != '*') throw UsageError("cannot parse number '" + text + "'");
            mult = parse_real(t.substr(0, at - 1));
        }
        const std::string rest = t.substr(at + 2);
        if (!rest.empty()) {
            if (rest[0] != '/') throw UsageError("cannot parse number '" + text + "'");
            div = parse_real(rest.substr(1));
        }
        return mult * std::numbers::pi / div;
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        throw UsageError("cannot parse number '" + text + "'");
    }
    if (used != t.size()) throw UsageError("cannot parse number '" + text + "'");
    return v;
}

inline int parse_int(const std::string& text) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(text, &used);
    } catch (const std::exception&) {
        throw UsageError("cannot parse integer '" + text + "'");
    }
    if (used != text.size()) throw UsageError("cannot parse integer '" + text + "'");
    return v;
}

/// "3", "0..4" (inclusive) or "1,5,9"; items may mix both forms.
inline std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    for (const auto& item : split(text, ',')) {
        if (const auto dots = item.find(".."); dots != std::string::npos) {
            const int lo = parse_int(item.substr(0, dots)), hi = parse_int(item.substr(dots + 2));
            if (hi < lo) throw UsageError("empty range '" + item + "'");
            if (hi - lo > 100000) throw UsageError("range too long '" + item + "'");
            for (int v = lo; v <= hi; ++v) out.push_back(v);
        } else {
            out.push_back(parse_int(item));
        }
    }
    if (out.empty()) throw UsageError("empty list");
    return out;
}

inline std::vector<double> parse_real_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& item : split(text, ',')) out.push_back(parse_real(item));
    if (out.empty()) throw UsageError("empty list");
    return out;
}

// ---------------------------------------------------------------------------
// RunConfig
// ---------------------------------------------------------------------------

struct RunConfig {
    std::string domain = "disk";
    modes::BoundaryCondition bc;
    std::vector<int> n{0}, k{1}, i{1};
    int l = 0;
    std::vector<double> p{2.0}, alpha{std::numbers::pi / 4.0};
    double R = 1.0, R1 = 0.5, R2 = 1.0, a = 1.0, shell = 0.8;
    std::vector<double> sides{1.0, std::sqrt(2.0)};
    std::vector<double> lo{0.2, 0.3}, hi{0.4, 0.6};
    long N = 400;
    int grid = 64;
    std::string out = "-";
    std::string preset;
    int kmax = mathieu::default_kmax;
    double tol = 1e-8;
    double q_max = 900.0;
    std::vector<std::string> suites;
    suites::Faults faults;

    modes::ScanOptions scan() const {
        modes::ScanOptions s;
        s.kmax = kmax;
        s.q_max = q_max;
        return s;
    }
    localization::NormOptions norm() const {
        localization::NormOptions o;
        o.rel_tol = tol;
        return o;
    }
    modes::Domain domain_value() const {
        if (domain == "disk") return modes::Disk{R};
        if (domain == "ball") return modes::Ball{R};
        if (domain == "ellipse") return modes::Ellipse{a, R};
        if (domain == "annulus") return modes::Annulus{a, R1, R2};
        return modes::Rectangle{sides};
    }
};

inline RunConfig to_config(const Settings& given) {
    const Settings s = merge(defaults(), given);
    auto get = [&](const std::string& key) { return s.at(key); };
    RunConfig c;
    c.domain = get("domain");
    if (c.domain != "disk" && c.domain != "ball" && c.domain != "ellipse" && c.domain != "annulus" &&
        c.domain != "rectangle") {
        throw UsageError("unknown domain '" + c.domain + "'");
    }
    const std::string bc = get("bc");
    if (bc == "dirichlet") c.bc = modes::BoundaryCondition::dirichlet();
    else if (bc == "neumann") c.bc = modes::BoundaryCondition::neumann();
    else if (bc == "robin") c.bc = modes::BoundaryCondition::robin(parse_real(get("h")));
    else throw UsageError("unknown boundary condition '" + bc + "'");
    c.n = parse_int_list(get("n"));
    c.k = parse_int_list(get("k"));
    c.i = parse_int_list(get("i"));
    c.l = parse_int(get("l"));
    c.p = parse_real_list(get("p"));
    c.alpha = parse_real_list(get("alpha"));
    c.R = parse_real(get("R"));
    c.R1 = parse_real(get("R1"));
    c.R2 = parse_real(get("R2"));
    c.a = parse_real(get("a"));
    c.shell = parse_real(get("shell"));
    c.sides = parse_real_list(get("sides"));
    c.lo = parse_real_list(get("lo"));
    c.hi = parse_real_list(get("hi"));
    c.N = parse_int(get("N"));
    c.grid = parse_int(get("grid"));
    c.out = get("out");
    if (s.count("preset")) c.preset = s.at("preset");
    c.kmax = parse_int(get("kmax"));
    c.tol = parse_real(get("tol"));
    c.q_max = parse_real(get("qmax"));
    if (!(c.tol > 0.0 && c.tol < 1e-2)) throw UsageError("tol must lie in (0, 1e-2)");
    if (c.kmax < 10) throw UsageError("kmax must be at least 10");
    if (c.grid < 16) throw UsageError("grid resolution must be at least 16");
    if (c.N < 1) throw UsageError("N must be positive");
    for (const auto& name : split(get("suite"), ',')) {
        if (name == "all") continue;
        bool known = false;
        for (const auto& e : suites::registry()) known = known || e.name == name;
        if (!known) throw UsageError("unknown suite '" + name + "'");
        c.suites.push_back(name);
    }
    const std::string fault = get("fault");
    if (fault == "zero") c.faults.corrupt_zero = true;
    else if (fault != "none") throw UsageError("unknown fault '" + fault + "'");
    if (c.domain != "rectangle") modes::validate(c.domain_value());
    return c;
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// 17 significant digits; NaN becomes an empty cell.
inline std::string cell(double v) {
    if (std::isnan(v)) return "";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string cell(int v) { return std::to_string(v); }

inline double real_cell(const std::string& s) {
    if (s.empty()) return std::numeric_limits<double>::quiet_NaN();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    return parse_real(s);
}

inline void write_csv(std::ostream& out, const Table& t) {
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t j = 0; j < cells.size(); ++j) out << (j ? "," : "") << cells[j];
        out << '\n';
    };
    line(t.header);
    for (const auto& r : t.rows) line(r);
}

inline Table parse_csv(std::istream& in) {
    Table t;
    std::string line;
    if (!std::getline(in, line) || line.empty()) throw UsageError("csv: missing header");
    t.header = split(line, ',');
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto cells = split(line, ',');
        if (cells.size() != t.header.size()) throw UsageError("csv: row width differs from header");
        t.rows.push_back(std::move(cells));
    }
    return t;
}

inline std::size_t column(const Table& t, const std::string& name) {
    const auto it = std::find(t.header.begin(), t.header.end(), name);
    if (it == t.header.end()) throw UsageError("csv: missing column " + name);
    return static_cast<std::size_t>(it - t.header.begin());
}

inline void require_header(const Table& t, const std::vector<std::string>& expected) {
    if (t.header != expected) throw UsageError("csv: unexpected header");
}

// zeros ----------------------------------------------------------------------

struct ZeroRow {
    int n = 0, k = 0;
    std::string kind;  // cylindrical | spherical
    std::string bc;    // dirichlet | neumann | robin:h
    double zero = 0.0;
    bool operator==(const ZeroRow&) const = default;
};

inline const std::vector<std::string>& zero_header() {
    static const std::vector<std::string> h{"n", "k", "kind", "bc", "zero"};
    return h;
}

inline Table to_table(const std::vector<ZeroRow>& rows) {
    Table t{zero_header(), {}};
    for (const auto& r : rows) t.rows.push_back({cell(r.n), cell(r.k), r.kind, r.bc, cell(r.zero)});
    return t;
}

inline std::vector<ZeroRow> zeros_from(const Table& t) {
    require_header(t, zero_header());
    std::vector<ZeroRow> out;
    for (const auto& r : t.rows) out.push_back({parse_int(r[0]), parse_int(r[1]), r[2], r[3], real_cell(r[4])});
    return out;
}

// mode grid ------------------------------------------------------------------

struct GridRow {
    std::vector<double> x;  // 2 or 3 coordinates
    double u = 0.0;         // NaN outside the domain
};

inline Table to_table(const std::vector<GridRow>& rows, int dim) {
    Table t;
    t.header = (dim == 3) ? std::vector<std::string>{"x", "y", "z", "u"} : std::vector<std::string>{"x", "y", "u"};
    for (const auto& r : rows) {
        std::vector<std::string> cells;
        for (double v : r.x) cells.push_back(cell(v));
        cells.push_back(cell(r.u));
        t.rows.push_back(std::move(cells));
    }
    return t;
}

inline std::vector<GridRow> grid_from(const Table& t) {
    const std::size_t dim = t.header.size() - 1;
    if (dim != 2 && dim != 3) throw UsageError("csv: unexpected header");
    require_header(t, dim == 3 ? std::vector<std::string>{"x", "y", "z", "u"} : std::vector<std::string>{"x", "y", "u"});
    std::vector<GridRow> out;
    for (const auto& r : t.rows) {
        GridRow g;
        for (std::size_t c = 0; c < dim; ++c) g.x.push_back(real_cell(r[c]));
        g.u = real_cell(r[dim]);
        out.push_back(std::move(g));
    }
    return out;
}

// ratio reports ----------------------------------------------------------------

inline const std::vector<std::string>& ratio_header() {
    static const std::vector<std::string> h{"family", "n",     "k",     "i",     "p",
                                            "region", "lambda", "ratio", "bound", "limit",
                                            "measure_fraction", "quad_error", "sector_ratio", "lower_bound"};
    return h;
}

inline Table to_table(const std::vector<localization::RatioReport>& rows) {
    Table t{ratio_header(), {}};
    for (const auto& r : rows) {
        t.rows.push_back({r.family, cell(r.n), cell(r.k), cell(r.i), cell(r.p), r.region, cell(r.lambda), cell(r.ratio),
                          cell(r.bound), cell(r.limit), cell(r.measure_fraction), cell(r.quad_error),
                          cell(r.sector_ratio), cell(r.lower_bound)});
    }
    return t;
}

inline std::vector<localization::RatioReport> ratios_from(const Table& t) {
    require_header(t, ratio_header());
    std::vector<localization::RatioReport> out;
    for (const auto& c : t.rows) {
        localization::RatioReport r;
        r.family = c[0];
        r.n = parse_int(c[1]);
        r.k = parse_int(c[2]);
        r.i = parse_int(c[3]);
        r.p = real_cell(c[4]);
        r.region = c[5];
        r.lambda = real_cell(c[6]);
        r.ratio = real_cell(c[7]);
        r.bound = real_cell(c[8]);
        r.limit = real_cell(c[9]);
        r.measure_fraction = real_cell(c[10]);
        r.quad_error = real_cell(c[11]);
        r.sector_ratio = real_cell(c[12]);
        r.lower_bound = real_cell(c[13]);
        out.push_back(std::move(r));
    }
    return out;
}

/// Lexicographic in (n, k, i); the order of p and alpha within an index is kept.
inline void sort_rows(std::vector<localization::RatioReport>& rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
        return std::tie(x.n, x.k, x.i) < std::tie(y.n, y.k, y.i);
    });
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

inline std::vector<ZeroRow> cmd_zeros(const RunConfig& c) {
    if (c.domain != "disk" && c.domain != "ball") throw UsageError("zeros: domain must be disk or ball");
    const bool sph = c.domain == "ball";
    const auto family = sph ? bessel::Family::spherical : bessel::Family::cylindrical;
    std::string bc = modes::to_string(c.bc);
    if (c.bc.kind == modes::Boundary::robin) bc += ":" + cell(c.bc.h);
    std::vector<int> ns = c.n, ks = c.k;
    std::sort(ns.begin(), ns.end());
    std::sort(ks.begin(), ks.end());
    std::vector<ZeroRow> rows;
    for (int n : ns) {
        for (int k : ks) {
            if (n < 0 || k < 1) throw UsageError("zeros: need n >= 0 and k >= 1");
            const double z = bessel::find_zero(modes::detail::radial_zero_spec(n, k, c.bc, family, c.R));
            rows.push_back({n, k, sph ? "spherical" : "cylindrical", bc, z});
        }
    }
    return rows;
}

inline modes::Mode build_mode(const RunConfig& c) {
    const int n = c.n.front(), k = c.k.front(), i = c.i.front();
    if (c.domain == "disk") return modes::disk_mode(c.R, c.bc, n, k, i);
    if (c.domain == "ball") return modes::ball_mode(c.R, c.bc, n, k, c.l);
    if (c.domain == "ellipse") {
        modes::require_dirichlet_for_ellipse(c.bc);
        return modes::ellipse_mode(modes::Ellipse{c.a, c.R}, n, k, i, c.scan());
    }
    if (c.domain == "annulus") {
        modes::require_dirichlet_for_ellipse(c.bc);
        return modes::annulus_mode(modes::Annulus{c.a, c.R1, c.R2}, n, k, i, c.scan());
    }
    return modes::rectangle_mode(c.sides, c.bc, c.n);
}

/// Regular grid over the bounding box, u scaled by max |u| over the domain.
inline std::vector<GridRow> mode_grid(const modes::Mode& mode, const modes::Domain& domain, int grid) {
    std::vector<double> lo, hi;
    std::visit(
        [&](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, modes::Disk>) {
                lo = {-d.R, -d.R};
                hi = {d.R, d.R};
            } else if constexpr (std::is_same_v<T, modes::Ball>) {
                lo = {-d.R, -d.R, -d.R};
                hi = {d.R, d.R, d.R};
            } else if constexpr (std::is_same_v<T, modes::Ellipse>) {
                lo = {-d.a * std::cosh(d.R), -d.a * std::sinh(d.R)};
                hi = {d.a * std::cosh(d.R), d.a * std::sinh(d.R)};
            } else if constexpr (std::is_same_v<T, modes::Annulus>) {
                lo = {-d.a * std::cosh(d.R2), -d.a * std::sinh(d.R2)};
                hi = {d.a * std::cosh(d.R2), d.a * std::sinh(d.R2)};
            } else {
                lo.assign(d.sides.size(), 0.0);
                hi = d.sides;
            }
        },
        domain);
    const std::size_t dim = lo.size();
    if (dim != 2 && dim != 3) throw UsageError("mode-grid: only 2D and 3D domains");
    const double scale = modes::max_amplitude(mode);
    std::vector<GridRow> rows;
    std::vector<int> idx(dim, 0);
    while (true) {
        GridRow r;
        modes::Point pt{0.0, 0.0, 0.0};
        // x varies slowest
        for (std::size_t c = 0; c < dim; ++c) {
            pt[c] = lo[c] + (hi[c] - lo[c]) * idx[c] / (grid - 1);
            r.x.push_back(pt[c]);
        }
        r.u = modes::contains(domain, pt) ? modes::evaluate(mode, pt) / scale : std::numeric_limits<double>::quiet_NaN();
        rows.push_back(std::move(r));
        std::size_t c = dim;
        while (c > 0 && ++idx[c - 1] >= grid) {
            idx[c - 1] = 0;
            --c;
        }
        if (c == 0) break;
    }
    return rows;
}

inline std::vector<GridRow> cmd_mode_grid(const RunConfig& c) { return mode_grid(build_mode(c), c.domain_value(), c.grid); }

inline std::vector<localization::RatioReport> cmd_whispering(const RunConfig& c) {
    if (c.domain != "disk" && c.domain != "ball") throw UsageError("whispering: domain must be disk or ball");
    std::vector<localization::RatioReport> rows;
    for (int n : c.n) {
        for (int k : c.k) {
            for (double p : c.p) {
                rows.push_back(c.domain == "disk" ? localization::whispering_ratio(c.R, c.bc, n, k, p, c.norm())
                                                  : localization::ball_whispering_ratio(c.R, c.bc, n, k, p, c.norm()));
            }
        }
    }
    sort_rows(rows);
    return rows;
}

inline std::vector<localization::RatioReport> cmd_focusing(const RunConfig& c) {
    if (c.domain != "disk" && c.domain != "ball") throw UsageError("focusing: domain must be disk or ball");
    const int dim = c.domain == "disk" ? 2 : 3;
    std::vector<localization::RatioReport> rows;
    for (int n : c.n) {
        for (int k : c.k) {
            for (double p : c.p) rows.push_back(localization::focusing_ratio(dim, c.bc, n, k, p, c.shell, c.norm()));
        }
    }
    sort_rows(rows);
    return rows;
}

inline std::vector<localization::RatioReport> cmd_bouncing(const RunConfig& c) {
    if (c.domain != "ellipse" && c.domain != "annulus") throw UsageError("bouncing: domain must be ellipse or annulus");
    modes::require_dirichlet_for_ellipse(c.bc);
    std::vector<localization::RatioReport> rows;
    for (int n : c.n) {
        for (int i : c.i) {
            for (double alpha : c.alpha) {
                for (double p : c.p) {
                    const auto sw = localization::bouncing_sweep(c.domain_value(), n, i, alpha, p, c.scan(), c.norm());
                    rows.insert(rows.end(), sw.rows.begin(), sw.rows.end());
                }
            }
        }
    }
    sort_rows(rows);
    return rows;
}

inline std::vector<localization::RatioReport> cmd_rectangle(const RunConfig& c) {
    if (c.domain != "rectangle") throw UsageError("rectangle: domain must be rectangle");
    std::vector<localization::RatioReport> rows;
    for (double p : c.p) {
        const auto part = localization::rectangle_ratios(c.sides, c.bc, localization::Box{c.lo, c.hi}, p, c.N, c.norm());
        rows.insert(rows.end(), part.begin(), part.end());
    }
    sort_rows(rows);
    return rows;
}

struct VerifyOutcome {
    bool passed = true;
    nlohmann::ordered_json report;
};

inline VerifyOutcome cmd_verify(const RunConfig& c) {
    VerifyOutcome v;
    auto& j = v.report;
    j["suites"] = nlohmann::ordered_json::array();
    for (const auto& entry : suites::registry()) {
        if (!c.suites.empty() && std::find(c.suites.begin(), c.suites.end(), entry.name) == c.suites.end()) continue;
        const suites::Suite s = entry.run(c.faults);
        nlohmann::ordered_json js;
        js["name"] = s.name;
        js["passed"] = s.passed();
        js["checked"] = s.checks.size();
        js["failures"] = s.failures();
        nlohmann::ordered_json measured = nlohmann::ordered_json::object();
        for (const auto& [key, value] : s.measured) measured[key] = value;
        js["measured"] = measured;
        nlohmann::ordered_json checks = nlohmann::ordered_json::array();
        for (const auto& ch : s.checks) checks.push_back({ch.what, ch.lhs, ch.relation, ch.rhs, ch.ok});
        js["checks"] = std::move(checks);
        v.passed = v.passed && s.passed();
        if (s.name == "whispering_disk") {
            for (const auto& [key, value] : s.measured) {
                if (key == "C_2") j["C_2"] = value;
            }
        }
        if (s.name == "bouncing") {
            nlohmann::ordered_json lam = nlohmann::ordered_json::object();
            for (const auto& [key, value] : s.measured) lam[key] = value;
            j["Lambda_alpha"] = lam;
        }
        j["suites"].push_back(std::move(js));
    }
    j["passed"] = v.passed;
    return v;
}

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

inline const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "figD1"};
    return names;
}

inline Table asymptotic_table(double q, int samples) {
    const auto ce = mathieu::solve_characteristic(mathieu::Angular::ce, 1, q);
    const auto se = mathieu::solve_characteristic(mathieu::Angular::se, 1, q);
    const double pc = mathieu::fit_asymptotic(1, false, q).prefactor;
    const double ps = mathieu::fit_asymptotic(0, true, q).prefactor;
    Table t{{"z", "ce_direct", "ce_asymptotic", "se_direct", "se_asymptotic"}, {}};
    for (int j = 0; j <= samples; ++j) {
        const double z = 1.2 * j / samples;
        t.rows.push_back({cell(z), cell(ce(z)), cell(pc * mathieu::asymptotic_angular(1, z, q).first), cell(se(z)),
                          cell(ps * mathieu::asymptotic_angular(0, z, q).second)});
    }
    return t;
}

/// Writes the files of one preset into directory `dir`; returns their names.
inline std::vector<std::string> run_preset(const std::string& name, const RunConfig& base, const std::string& dir) {
    std::filesystem::create_directories(dir);
    std::vector<std::string> written;
    auto save = [&](const std::string& file, const Table& t) {
        std::ofstream out(std::filesystem::path(dir) / file);
        if (!out) throw UsageError("cannot write " + file);
        write_csv(out, t);
        written.push_back(file);
    };
    auto tag = [](const char* fmt, int a, int b) {
        char buf[64];
        std::snprintf(buf, sizeof buf, fmt, a, b);
        return std::string(buf);
    };
    RunConfig c = base;
    c.bc = modes::BoundaryCondition::dirichlet();
    if (name == "fig1" || name == "fig2") {
        c.domain = "disk";
        c.R = 1.0;
        const bool whisper = name == "fig1";
        for (int outer : {1, 2}) {
            for (int inner : {1, 5, 10, 20}) {
                c.n = {whisper ? inner : outer - 1};
                c.k = {whisper ? outer : inner};
                c.i = {1};
                save(tag((name + "_n%d_k%d.csv").c_str(), c.n[0], c.k[0]), to_table(cmd_mode_grid(c), 2));
            }
        }
    } else if (name == "fig3") {
        c.a = 1.0;
        c.R = 1.0;
        c.R1 = 0.5;
        c.R2 = 1.0;
        for (const char* dom : {"ellipse", "annulus"}) {
            c.domain = dom;
            for (int k : {1, 3, 6, 10}) {
                c.n = {1};
                c.k = {k};
                c.i = {1};
                save(std::string("fig3_") + dom + tag("_n%d_k%d.csv", 1, k), to_table(cmd_mode_grid(c), 2));
            }
        }
    } else if (name == "fig4") {
        for (const auto& panel : suites::bouncing_panels()) {
            std::vector<localization::RatioReport> rows =
                localization::bouncing_sweep(panel.domain, panel.n, 1, panel.alpha, 2.0, c.scan(), c.norm()).rows;
            save("fig4_" + panel.name + ".csv", to_table(rows));
        }
    } else if (name == "fig5") {
        std::vector<double> ps;
        for (int j = 0; j <= 28; ++j) ps.push_back(1.0 + 0.25 * j);
        for (const char* dom : {"disk", "ball"}) {
            c.domain = dom;
            c.n = {1};
            c.k = {100, 1000, 10000};
            c.p = ps;
            c.shell = 0.8;
            save(std::string("fig5_") + (c.domain == "disk" ? "2d" : "3d") + ".csv", to_table(cmd_focusing(c)));
        }
    } else if (name == "fig6") {
        c.domain = "rectangle";
        c.sides = {1.0, std::sqrt(2.0)};
        c.lo = {0.2, 0.3};
        c.hi = {0.4, 0.6};
        c.N = 400;
        c.p = {1.0, 2.0};
        for (auto bc : {modes::BoundaryCondition::dirichlet(), modes::BoundaryCondition::neumann()}) {
            c.bc = bc;
            save("fig6_" + modes::to_string(bc) + ".csv", to_table(cmd_rectangle(c)));
        }
    } else if (name == "figD1") {
        save("figD1.csv", asymptotic_table(20.0, 120));
    } else {
        throw UsageError("unknown preset '" + name + "'");
    }
    return written;
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

inline const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"zeros",    "mode-grid", "whispering", "focusing",
                                                "bouncing", "rectangle", "verify",     "preset"};
    return names;
}

inline void emit(const RunConfig& c, const std::string& text) {
    if (c.out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(c.out, std::ios::binary);
    if (!out) throw UsageError("cannot write " + c.out);
    out << text;
}

inline std::string csv_text(const Table& t) {
    std::ostringstream s;
    write_csv(s, t);
    return s.str();
}

/// Runs one command; returns the process exit code. Errors are reported on `err`.
inline int run(const std::string& command, const Settings& settings, std::ostream& err = std::cerr) {
    try {
        const RunConfig c = to_config(settings);
        if (command == "zeros") {
            emit(c, csv_text(to_table(cmd_zeros(c))));
        } else if (command == "mode-grid") {
            const auto rows = cmd_mode_grid(c);
            emit(c, csv_text(to_table(rows, static_cast<int>(rows.front().x.size()))));
        } else if (command == "whispering") {
            emit(c, csv_text(to_table(cmd_whispering(c))));
        } else if (command == "focusing") {
            emit(c, csv_text(to_table(cmd_focusing(c))));
        } else if (command == "bouncing") {
            emit(c, csv_text(to_table(cmd_bouncing(c))));
        } else if (command == "rectangle") {
            emit(c, csv_text(to_table(cmd_rectangle(c))));
        } else if (command == "verify") {
            const auto v = cmd_verify(c);
            emit(c, v.report.dump() + "\n");
            if (!v.passed) {
                err << "verify: at least one suite failed\n";
                return exit_verification;
            }
        } else if (command == "preset") {
            if (c.preset.empty()) throw UsageError("preset: --preset is required");
            if (c.out == "-") throw UsageError("preset: --out must name a directory");
            run_preset(c.preset, c, c.out);
        } else {
            throw UsageError("unknown command '" + command + "'");
        }
        return exit_ok;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    } catch (const std::invalid_argument& e) {
        err << "invalid input: " << e.what() << '\n';
        return exit_invalid;
    } catch (const std::domain_error& e) {
        err << "invalid input: " << e.what() << '\n';
        return exit_invalid;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    }
}

}  // namespace eigloc::report
