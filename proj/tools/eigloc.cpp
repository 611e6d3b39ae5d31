#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>

#include "eigloc/report.hpp"

namespace {

struct Flag {
    const char* name;
    const char* key;
    const char* help;
};

const Flag flags[] = {
    {"--domain", "domain", "disk | ball | ellipse | annulus | rectangle"},
    {"--bc", "bc", "dirichlet | neumann | robin"},
    {"--robin-h", "h", "Robin coefficient h in du/dn + h u = 0"},
    {"--n", "n", "order list, e.g. 0..2 or 1,5,9 (rectangle: the multi-index)"},
    {"--k", "k", "radial index list"},
    {"--i", "i", "family index list"},
    {"--l", "l", "azimuthal index of ball modes"},
    {"--p", "p", "norm exponents, e.g. 1,2,inf"},
    {"--alpha", "alpha", "sector half-angles, e.g. pi/4"},
    {"--R", "R", "disk/ball radius or elliptic radius of the filled ellipse"},
    {"--R1", "R1", "inner elliptic radius of the annulus"},
    {"--R2", "R2", "outer elliptic radius of the annulus"},
    {"--a", "a", "focal distance"},
    {"--sides", "sides", "rectangle sides"},
    {"--lo", "lo", "lower corner of the box V"},
    {"--hi", "hi", "upper corner of the box V"},
    {"--shell", "shell", "inner radius of the focusing shell"},
    {"--N", "N", "rectangle sweep: largest sum of squared indices"},
    {"--grid", "grid", "grid points per axis (>= 16)"},
    {"--out", "out", "output file, '-' for stdout; directory for presets"},
    {"--preset", "preset", "fig1 .. fig6 | figD1"},
    {"--kmax", "kmax", "Mathieu truncation size"},
    {"--tol", "tol", "quadrature relative tolerance"},
    {"--qmax", "qmax", "ceiling of the q scan"},
    {"--suite", "suite", "verify: comma-separated suite names or all"},
    {"--fault", "fault", "verify: inject a fault (none | zero)"},
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Laplacian eigenfunctions: zeros, mode grids, localization ratios and verification"};
    app.require_subcommand(1);
    std::map<std::string, std::string> given;
    std::string config_path;
    std::string command;
    for (const auto& name : eigloc::report::command_names()) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "key=value configuration file");
        for (const auto& f : flags) {
            sub->add_option_function<std::string>(
                f.name, [&given, key = std::string(f.key)](const std::string& v) { given[key] = v; }, f.help);
        }
        sub->callback([&command, name] { command = name; });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return eigloc::report::exit_invalid;
    }
    eigloc::report::Settings settings;
    try {
        if (!config_path.empty()) settings = eigloc::report::load_config(config_path);
    } catch (const std::exception& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return eigloc::report::exit_invalid;
    }
    return eigloc::report::run(command, eigloc::report::merge(settings, given));
}
