#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>

#include "double_double.hpp"
#include "eigloc/report.hpp"

using namespace eigloc;
using namespace eigloc::report;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "eigloc_report_tests";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int cli(const std::string& args) {
    const std::string cmd = std::string(EIGLOC_CLI) + " " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

Table table_of(const std::string& text) {
    std::istringstream in(text);
    return parse_csv(in);
}

bool same(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

}  // namespace

TEST(Config, ValueParsing) {
    EXPECT_EQ(parse_int_list("0..2"), (std::vector<int>{0, 1, 2}));
    EXPECT_EQ(parse_int_list("1,5..6,9"), (std::vector<int>{1, 5, 6, 9}));
    EXPECT_EQ(parse_real("pi/4"), std::numbers::pi / 4.0);
    EXPECT_EQ(parse_real("2*pi/3"), 2.0 * std::numbers::pi / 3.0);
    EXPECT_TRUE(std::isinf(parse_real("inf")));
    EXPECT_THROW(parse_int_list("3..1"), UsageError);
    EXPECT_THROW(parse_real("1.5x"), UsageError);
    EXPECT_THROW(parse_int("two"), UsageError);
}

TEST(Config, FileParsingAndPrecedence) {
    std::istringstream in("# comment\n domain = ball \n\nn=3 # trailing\n");
    const Settings file = parse_config(in);
    EXPECT_EQ(file.at("domain"), "ball");
    EXPECT_EQ(file.at("n"), "3");
    const RunConfig c = to_config(merge(file, {{"n", "1"}}));
    EXPECT_EQ(c.domain, "ball");
    EXPECT_EQ(c.n, std::vector<int>{1});
    EXPECT_EQ(c.k, std::vector<int>{1});
    std::istringstream bad("no equals sign\n");
    EXPECT_THROW(parse_config(bad), UsageError);
    EXPECT_THROW(to_config({{"domain", "torus"}}), UsageError);
    EXPECT_THROW(to_config({{"grid", "8"}}), UsageError);
    EXPECT_THROW(to_config({{"suite", "nonsense"}}), UsageError);
}

TEST(Zeros, CardinalityAndValues) {
    const auto rows = cmd_zeros(to_config({{"n", "0..2"}, {"k", "1..3"}}));
    ASSERT_EQ(rows.size(), 9u);
    for (std::size_t j = 1; j < rows.size(); ++j) {
        EXPECT_TRUE(std::tie(rows[j - 1].n, rows[j - 1].k) < std::tie(rows[j].n, rows[j].k));
    }
    EXPECT_EQ(rows[0].n, 0);
    EXPECT_EQ(rows[0].k, 1);
    const double ref = oracle::bisect([](double x) { return oracle::bessel_j_series(0, x); }, 2.0, 3.0);
    EXPECT_NEAR(rows[0].zero, ref, 1e-15);
    EXPECT_NEAR(rows[0].zero, 2.404825557695773, 1e-15);
    const auto sph = cmd_zeros(to_config({{"domain", "ball"}}));
    EXPECT_NEAR(sph.at(0).zero, std::numbers::pi, 1e-15);
    EXPECT_THROW(cmd_zeros(to_config({{"domain", "ellipse"}})), UsageError);
}

TEST(RoundTrip, Zeros) {
    const auto rows = cmd_zeros(to_config({{"n", "0..3"}, {"k", "1..2"}, {"bc", "robin"}, {"h", "0.7"}}));
    EXPECT_EQ(rows[0].bc, "robin:0.69999999999999996");
    EXPECT_EQ(zeros_from(table_of(csv_text(to_table(rows)))), rows);
}

TEST(RoundTrip, Grid) {
    const auto rows = cmd_mode_grid(to_config({{"domain", "ellipse"}, {"n", "1"}, {"k", "2"}, {"grid", "16"}}));
    const auto back = grid_from(table_of(csv_text(to_table(rows, 2))));
    ASSERT_EQ(back.size(), rows.size());
    for (std::size_t j = 0; j < rows.size(); ++j) {
        EXPECT_EQ(back[j].x, rows[j].x);
        EXPECT_TRUE(same(back[j].u, rows[j].u));
    }
}

TEST(RoundTrip, RatioReports) {
    auto rows = cmd_whispering(to_config({{"n", "10,20"}, {"k", "1"}, {"p", "1,inf"}}));
    const auto more = cmd_rectangle(to_config({{"domain", "rectangle"}, {"N", "8"}}));
    rows.insert(rows.end(), more.begin(), more.end());
    const auto back = ratios_from(table_of(csv_text(to_table(rows))));
    ASSERT_EQ(back.size(), rows.size());
    for (std::size_t j = 0; j < rows.size(); ++j) {
        const auto &x = rows[j], &y = back[j];
        EXPECT_EQ(x.family, y.family);
        EXPECT_EQ(x.region, y.region);
        EXPECT_EQ(std::tie(x.n, x.k, x.i), std::tie(y.n, y.k, y.i));
        for (auto field : {&localization::RatioReport::p, &localization::RatioReport::lambda,
                           &localization::RatioReport::ratio, &localization::RatioReport::bound,
                           &localization::RatioReport::limit, &localization::RatioReport::measure_fraction,
                           &localization::RatioReport::quad_error, &localization::RatioReport::sector_ratio,
                           &localization::RatioReport::lower_bound}) {
            EXPECT_TRUE(same(x.*field, y.*field));
        }
    }
    EXPECT_THROW(ratios_from(table_of("family,n\nx,1\n")), UsageError);
    EXPECT_THROW(table_of(""), UsageError);
}

TEST(ModeGrid, NormalizedCentreAndEmptyOutside) {
    const auto rows = cmd_mode_grid(to_config({{"grid", "17"}}));
    ASSERT_EQ(rows.size(), 17u * 17u);
    bool centre = false;
    for (const auto& r : rows) {
        const double rad = std::hypot(r.x[0], r.x[1]);
        if (rad > 1.0) EXPECT_TRUE(std::isnan(r.u));
        else EXPECT_FALSE(std::isnan(r.u));
        if (r.x[0] == 0.0 && r.x[1] == 0.0) {
            EXPECT_NEAR(r.u, 1.0, 1e-14);
            centre = true;
        }
        if (rad == 1.0) EXPECT_NEAR(r.u, 0.0, 1e-12);
    }
    EXPECT_TRUE(centre);
}

TEST(ModeGrid, AnnulusHoleIsEmpty) {
    const auto rows = cmd_mode_grid(to_config({{"domain", "annulus"}, {"n", "0"}, {"k", "2"}, {"grid", "33"}}));
    std::size_t hole = 0;
    for (const auto& r : rows) {
        const double er = modes::to_elliptic(1.0, r.x[0], r.x[1]).r;
        if (er < 0.5 || er > 1.0) {
            EXPECT_TRUE(std::isnan(r.u));
            ++hole;
        } else {
            EXPECT_LE(std::abs(r.u), 1.0 + 1e-9);
        }
    }
    EXPECT_GT(hole, 0u);
}

TEST(ModeGrid, BallIsThreeDimensional) {
    const auto rows = cmd_mode_grid(to_config({{"domain", "ball"}, {"n", "1"}, {"grid", "16"}}));
    EXPECT_EQ(rows.size(), 16u * 16u * 16u);
    EXPECT_EQ(to_table(rows, 3).header.size(), 4u);
}

TEST(Sweeps, RectangleHasNoUpperBound) {
    for (const auto& r : cmd_rectangle(to_config({{"domain", "rectangle"}, {"N", "20"}, {"p", "1,2"}}))) {
        EXPECT_TRUE(std::isnan(r.bound));
        EXPECT_GT(r.lower_bound, 0.0);
        EXPECT_GE(r.ratio, r.lower_bound);
    }
}

TEST(Sweeps, WrongDomainsRejected) {
    EXPECT_THROW(cmd_bouncing(to_config({})), UsageError);
    EXPECT_THROW(cmd_whispering(to_config({{"domain", "ellipse"}})), UsageError);
    EXPECT_THROW(cmd_bouncing(to_config({{"domain", "ellipse"}, {"bc", "neumann"}})), UnsupportedCondition);
}

TEST(Presets, Fig4AndFig5Files) {
    const fs::path dir = scratch("presets");
    fs::remove_all(dir);
    RunConfig c = to_config({{"qmax", "100"}});
    const auto four = run_preset("fig4", c, dir.string());
    ASSERT_EQ(four.size(), 4u);
    for (const auto& f : four) {
        const auto rows = ratios_from(table_of(slurp(dir / f)));
        ASSERT_FALSE(rows.empty());
        for (const auto& r : rows) EXPECT_FALSE(std::isnan(r.bound));
    }
    const auto five = run_preset("fig5", c, dir.string());
    ASSERT_EQ(five.size(), 2u);
    const auto rows = ratios_from(table_of(slurp(dir / "fig5_2d.csv")));
    std::set<int> ks;
    for (const auto& r : rows) {
        ks.insert(r.k);
        if (r.p < 4.0 || r.p > 4.0) EXPECT_FALSE(std::isnan(r.limit));
        else EXPECT_TRUE(std::isnan(r.limit));
    }
    EXPECT_EQ(ks, (std::set<int>{100, 1000, 10000}));
    EXPECT_THROW(run_preset("fig9", c, dir.string()), UsageError);
}

TEST(Presets, AsymptoticComparison) {
    const Table t = asymptotic_table(20.0, 40);
    ASSERT_EQ(t.rows.size(), 41u);
    double peak = 0.0, worst = 0.0;
    for (const auto& r : t.rows) {
        peak = std::max(peak, std::abs(real_cell(r[1])));
        worst = std::max(worst, std::abs(real_cell(r[1]) - real_cell(r[2])));
    }
    EXPECT_LT(worst / peak, 1e-2);
}

TEST(Verify, ReportsEverySuiteAndConstants) {
    const auto v = cmd_verify(to_config({}));
    EXPECT_TRUE(v.passed);
    std::set<std::string> names;
    for (const auto& s : v.report["suites"]) {
        names.insert(s["name"].get<std::string>());
        EXPECT_EQ(s["checked"].get<std::size_t>(), s["checks"].size());
    }
    for (const char* want : {"kroger", "chambers", "decreasing_extrema", "kapteyn", "spherical_decay",
                             "spherical_first_max", "whispering_disk", "whispering_ball", "focusing_2d", "focusing_3d",
                             "bouncing", "rectangle"}) {
        EXPECT_TRUE(names.count(want)) << want;
    }
    ASSERT_TRUE(v.report.contains("C_2"));
    EXPECT_GT(v.report["C_2"].get<double>(), 0.0);
    EXPECT_EQ(v.report["Lambda_alpha"].size(), 4u);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(cli("zeros --n 0..2 --k 1..3 --out " + scratch("z.csv").string()), 0);
    EXPECT_EQ(table_of(slurp(scratch("z.csv"))).rows.size(), 9u);
    EXPECT_EQ(cli("zeros --n 2..1"), 2);
    EXPECT_EQ(cli("zeros --domain torus"), 2);
    EXPECT_EQ(cli("whispering --p 0.5 --n 5"), 2);
    EXPECT_EQ(cli("frobnicate"), 2);
    EXPECT_EQ(cli("mode-grid --domain ellipse --k 40 --qmax 5"), 3);
}

TEST(Cli, MutationFailsVerification) {
    EXPECT_EQ(cli("verify --suite chambers --out " + scratch("ok.json").string()), 0);
    EXPECT_EQ(cli("verify --suite chambers --fault zero --out " + scratch("bad.json").string()), 1);
}

TEST(Cli, DeterministicOutput) {
    for (int run = 0; run < 2; ++run) {
        const std::string tag = std::to_string(run);
        ASSERT_EQ(cli("focusing --n 0,1 --k 50 --p 1,2,6 --out " + scratch("f" + tag + ".csv").string()), 0);
        ASSERT_EQ(cli("verify --suite kapteyn,focusing_2d --out " + scratch("v" + tag + ".json").string()), 0);
    }
    EXPECT_EQ(slurp(scratch("f0.csv")), slurp(scratch("f1.csv")));
    EXPECT_EQ(slurp(scratch("v0.json")), slurp(scratch("v1.json")));
    EXPECT_FALSE(slurp(scratch("f0.csv")).empty());
}

TEST(Cli, ConfigFileUnderFlags) {
    const fs::path cfg = scratch("run.cfg");
    std::ofstream(cfg) << "n = 3\nk = 1..2\n";
    ASSERT_EQ(cli("zeros --config " + cfg.string() + " --n 1 --out " + scratch("c.csv").string()), 0);
    const auto rows = zeros_from(table_of(slurp(scratch("c.csv"))));
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].n, 1);
    EXPECT_EQ(cli("zeros --config " + scratch("missing.cfg").string()), 2);
}
