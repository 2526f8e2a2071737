// Command-line front end: minimization runs, verification suites, a report
// consolidating prior artifacts, and two stand-alone demos.  Exit codes:
// 0 success, 1 a verification property failed, 2 numeric failure or
// non-convergence, 3 invalid parameters or missing inputs.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "vpmin/errors.hpp"
#include "vpmin/gravity.hpp"
#include "vpmin/io.hpp"
#include "vpmin/kinetic.hpp"
#include "vpmin/minimizer.hpp"
#include "vpmin/radial.hpp"
#include "vpmin/rearrange3d.hpp"
#include "vpmin/rng.hpp"
#include "vpmin/verify.hpp"

namespace {

namespace fs = std::filesystem;
using vpmin::io::fmt17;

struct RunConfig {
    double mu = 1.5;
    double mass = 1.0;
    double j_norm = 1.0;
    std::string k11 = "oracle";
    std::size_t grid_n = 1024;
    double r_max = 6.0;
    std::string spacing = "uniform";
    double tol = 1e-9;
    std::size_t max_iter = 3000;
    double damping = 0.5;
    std::uint64_t seed = 7;
    std::string out_dir = ".";
};

void add_common(CLI::App* sub, RunConfig& cfg) {
    sub->set_config("--config", "",
                    "flat `key = value` file, `#` comments; flags override");
    sub->add_option("--mu", cfg.mu, "kinetic exponent, in (0, 3.5)")
        ->capture_default_str();
    sub->add_option("--mass", cfg.mass, "target mass M")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--j", cfg.j_norm, "norm constraint J")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--k11", cfg.k11,
                    "kinetic coupling: a positive number, or `oracle` to fit it")
        ->capture_default_str();
    sub->add_option("--grid-n", cfg.grid_n, "radial nodes (>= 16)")
        ->capture_default_str();
    sub->add_option("--r-max", cfg.r_max, "grid extent")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--spacing", cfg.spacing, "node spacing")
        ->check(CLI::IsMember({"uniform", "log"}))
        ->capture_default_str();
    sub->add_option("--tol", cfg.tol, "fixed-point residual target")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--max-iter", cfg.max_iter, "iteration cap")
        ->capture_default_str();
    sub->add_option("--damping", cfg.damping, "update fraction in (0, 1]")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--seed", cfg.seed, "seed for every randomized sweep")
        ->capture_default_str();
    sub->add_option("--out-dir", cfg.out_dir, "artifact directory")
        ->envname("VPMIN_OUT")
        ->capture_default_str();
}

double resolve_k11(const RunConfig& cfg) {
    if (cfg.k11 == "oracle") return vpmin::k11_oracle(cfg.mu);
    std::size_t pos = 0;
    double value = 0.0;
    try {
        value = std::stod(cfg.k11, &pos);
    } catch (const std::exception&) {
        throw vpmin::constraint_error("--k11 must be a positive number or `oracle`");
    }
    if (pos != cfg.k11.size() || !std::isfinite(value) || value <= 0.0)
        throw vpmin::constraint_error("--k11 must be a positive number or `oracle`");
    return value;
}

vpmin::Spacing parse_spacing(const std::string& s) {
    if (s == "uniform") return vpmin::Spacing::uniform;
    if (s == "log") return vpmin::Spacing::log;
    throw vpmin::constraint_error("--spacing must be `uniform` or `log`");
}

std::string utc_now() {
    const std::time_t t =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

vpmin::RadialDensity bump_density(vpmin::Rng& rng, const vpmin::RadialGrid& grid,
                                  double target_mass) {
    std::vector<double> vals(grid.size(), 0.0);
    const long bumps = rng.uniform_int(2, 4);
    for (long b = 0; b < bumps; ++b) {
        const double center = rng.uniform(0.0, 0.45 * grid.r_max());
        const double width = rng.uniform(0.05, 0.15) * grid.r_max();
        const double height = rng.uniform(0.2, 1.0);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double t = (grid.nodes[i] - center) / width;
            vals[i] += height * std::exp(-0.5 * t * t);
        }
    }
    auto rho = vpmin::make_density(grid, std::move(vals));
    const double scale = target_mass / vpmin::mass(rho);
    for (double& v : rho.values) v *= scale;
    return rho;
}

int cmd_minimize(const RunConfig& cfg) {
    const bool fitted = cfg.k11 == "oracle";
    const double k11 = resolve_k11(cfg);
    const vpmin::ModelParams params(cfg.mu, cfg.mass, cfg.j_norm, k11);
    const auto grid = vpmin::make_grid(cfg.r_max, cfg.grid_n, parse_spacing(cfg.spacing));
    vpmin::ScfOptions opts;
    opts.tol = cfg.tol;
    opts.max_iter = cfg.max_iter;
    opts.damping = cfg.damping;
    const auto res = vpmin::scf_minimize(params, grid, opts);

    std::ostringstream out;
    out << "{\"schema_version\":" << vpmin::io::schema_version
        << ",\"command\":\"minimize\""
        << ",\"mu\":" << fmt17(cfg.mu) << ",\"mass\":" << fmt17(cfg.mass)
        << ",\"j_norm\":" << fmt17(cfg.j_norm) << ",\"k11\":" << fmt17(k11)
        << ",\"k11_source\":\"" << (fitted ? "oracle" : "scalar") << "\""
        << ",\"grid_n\":" << cfg.grid_n << ",\"r_max\":" << fmt17(cfg.r_max)
        << ",\"spacing\":\"" << cfg.spacing << "\""
        << ",\"tol\":" << fmt17(cfg.tol) << ",\"max_iter\":" << cfg.max_iter
        << ",\"damping\":" << fmt17(cfg.damping) << ",\"seed\":" << cfg.seed
        << ",\"converged\":true"
        << ",\"iterations\":" << res.iterations
        << ",\"residual\":" << fmt17(res.residual)
        << ",\"e0\":" << fmt17(res.e0)
        << ",\"r_support\":" << fmt17(res.r_support)
        << ",\"energy\":{\"kinetic_term\":" << fmt17(res.energy.kinetic_term)
        << ",\"potential_term\":" << fmt17(res.energy.potential_term)
        << ",\"total\":" << fmt17(res.energy.total) << "}"
        << ",\"mass_rel_err\":"
        << fmt17(std::abs(vpmin::mass(res.rho0) - cfg.mass) / cfg.mass)
        << ",\"el_residual\":"
        << fmt17(vpmin::euler_lagrange_residual(res.rho0, params)) << "}";

    const fs::path dir(cfg.out_dir);
    fs::create_directories(dir);
    vpmin::io::atomic_write(dir / "profile.csv", vpmin::to_csv(res));
    vpmin::io::atomic_write(dir / "result.json", out.str());
    std::cout << "minimize: converged in " << res.iterations
              << " iterations; total energy " << res.energy.total
              << ", support radius " << res.r_support << "\n"
              << "minimize: wrote " << (dir / "profile.csv").string() << " and "
              << (dir / "result.json").string() << "\n";
    return 0;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite, bool mu_given) {
    vpmin::VerifyOptions vo;
    vo.seed = cfg.seed;
    if (mu_given) vo.mus = {cfg.mu};
    const std::vector<std::string> suites =
        suite == "all" ? vpmin::suite_names() : std::vector<std::string>{suite};

    const fs::path dir(cfg.out_dir);
    fs::create_directories(dir);
    bool all_ok = true;
    for (const auto& name : suites) {
        const auto result = vpmin::run_suite(name, vo);
        vpmin::io::atomic_write(dir / ("verify_" + name + ".json"),
                                vpmin::to_json(result));
        std::size_t cases = 0;
        for (const auto& check : result.checks) cases += check.cases;
        std::cout << "verify " << name << ": "
                  << (result.passed() ? "pass" : "FAIL") << " ("
                  << result.checks.size() << " checks, " << cases << " cases)\n";
        for (const auto& check : result.checks)
            if (!check.passed)
                std::cout << "  [FAIL] " << check.name << ": worst=" << check.worst
                          << ", bound " << check.sense << "= " << check.bound
                          << " (" << check.cases << " cases)\n";
        all_ok = all_ok && result.passed();
    }
    return all_ok ? 0 : 1;
}

int cmd_report(const RunConfig& cfg) {
    const fs::path dir(cfg.out_dir);
    std::vector<fs::path> verify_files;
    if (fs::is_directory(dir))
        for (const auto& entry : fs::directory_iterator(dir)) {
            const std::string name = entry.path().filename().string();
            if (name.rfind("verify_", 0) == 0 && name.size() > 12 &&
                name.compare(name.size() - 5, 5, ".json") == 0)
                verify_files.push_back(entry.path());
        }
    std::sort(verify_files.begin(), verify_files.end());
    const fs::path result_path = dir / "result.json";
    const bool have_result = fs::exists(result_path);
    if (!have_result && verify_files.empty()) {
        std::cerr << "report: no result.json or verify_*.json artifacts in '"
                  << dir.string() << "'\n";
        return 3;
    }

    std::ostringstream out;
    out << "{\"schema_version\":" << vpmin::io::schema_version
        << ",\"generated_at\":\"" << utc_now() << "\"";

    if (have_result) {
        const auto j = nlohmann::json::parse(vpmin::io::read_file(result_path));
        out << ",\"minimize\":{\"mu\":" << fmt17(j.at("mu").get<double>())
            << ",\"mass\":" << fmt17(j.at("mass").get<double>())
            << ",\"j_norm\":" << fmt17(j.at("j_norm").get<double>())
            << ",\"k11\":" << fmt17(j.at("k11").get<double>())
            << ",\"k11_source\":" << vpmin::io::json_string(j.at("k11_source").get<std::string>())
            << ",\"e0\":" << fmt17(j.at("e0").get<double>())
            << ",\"r_support\":" << fmt17(j.at("r_support").get<double>())
            << ",\"energy\":{\"kinetic_term\":"
            << fmt17(j.at("energy").at("kinetic_term").get<double>())
            << ",\"potential_term\":"
            << fmt17(j.at("energy").at("potential_term").get<double>())
            << ",\"total\":" << fmt17(j.at("energy").at("total").get<double>())
            << "}"
            << ",\"mass_rel_err\":" << fmt17(j.at("mass_rel_err").get<double>())
            << ",\"el_residual\":" << fmt17(j.at("el_residual").get<double>())
            << "}";
    } else {
        out << ",\"minimize\":null";
    }

    bool all_passed = true;
    out << ",\"suites\":[";
    bool first = true;
    for (const auto& path : verify_files) {
        const auto j = nlohmann::json::parse(vpmin::io::read_file(path));
        if (!first) out << ",";
        first = false;
        const bool suite_passed = j.at("passed").get<bool>();
        all_passed = all_passed && suite_passed;
        out << "{\"suite\":" << vpmin::io::json_string(j.at("suite").get<std::string>())
            << ",\"passed\":" << (suite_passed ? "true" : "false")
            << ",\"checks\":[";
        bool cfirst = true;
        for (const auto& check : j.at("checks")) {
            if (!cfirst) out << ",";
            cfirst = false;
            out << "{\"name\":" << vpmin::io::json_string(check.at("name").get<std::string>())
                << ",\"criterion\":" << check.at("criterion").get<int>()
                << ",\"cases\":" << check.at("cases").get<std::uint64_t>()
                << ",\"worst\":" << fmt17(check.at("worst").get<double>())
                << ",\"sense\":" << vpmin::io::json_string(check.at("sense").get<std::string>())
                << ",\"bound\":" << fmt17(check.at("bound").get<double>())
                << ",\"passed\":" << (check.at("passed").get<bool>() ? "true" : "false")
                << "}";
        }
        out << "]}";
    }
    out << "],\"all_passed\":" << (all_passed ? "true" : "false") << "}";

    vpmin::io::atomic_write(dir / "report.json", out.str());
    std::cout << "report: wrote " << (dir / "report.json").string() << " ("
              << verify_files.size() << " suites"
              << (have_result ? ", 1 minimize run" : "") << "; "
              << (all_passed ? "all suites green" : "FAILURES present") << ")\n";
    return 0;
}

int cmd_rearrange(const RunConfig& cfg, std::size_t side) {
    vpmin::Rng rng(cfg.seed);
    const double cell = 0.25;
    std::vector<double> vals(side * side * side);
    for (double& v : vals) v = rng.uniform();
    const auto rho =
        vpmin::make_cartesian({side, side, side}, cell, {0.0, 0.0, 0.0}, std::move(vals));
    const auto star = vpmin::rearrange(rho);
    const auto kernel = vpmin::coulomb_kernel();
    const double before = vpmin::interaction(rho, rho, kernel);
    const double after = vpmin::interaction(star, star, kernel);
    auto a = rho.values, b = star.values;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const bool equimeasurable = a == b;
    std::cout << "rearrange demo: side=" << side << ", cell=" << cell
              << ", seed=" << cfg.seed << "\n"
              << "  mass              = " << vpmin::mass(rho) << "\n"
              << "  interaction(rho)  = " << before << "\n"
              << "  interaction(rho*) = " << after << "\n"
              << "  gain              = " << after - before << " (expected >= 0)\n"
              << "  equimeasurable    = " << (equimeasurable ? "yes" : "NO") << "\n";
    return (equimeasurable && after >= before - 1e-12) ? 0 : 1;
}

int cmd_reduce_check(const RunConfig& cfg, bool mu_given) {
    const std::vector<double> mus =
        mu_given ? std::vector<double>{cfg.mu} : std::vector<double>{0.5, 1.5, 2.5};
    bool all_ok = true;
    for (double mu : mus) {
        vpmin::Rng rng(cfg.seed);
        const auto grid =
            vpmin::make_grid(cfg.r_max, cfg.grid_n, parse_spacing(cfg.spacing));
        const auto rho = bump_density(rng, grid, cfg.mass);
        const auto res = vpmin::global_reduce(rho, cfg.j_norm, mu);
        const double oracle = vpmin::k11_oracle(mu);
        const double rel_dev = std::abs(res.k11_fit - oracle) / oracle;
        const bool ok =
            rel_dev < 1e-3 && res.mass_rel_err < 1e-6 && res.j_rel_err < 1e-6;
        all_ok = all_ok && ok;
        std::cout << "reduce-check mu=" << mu << ": k11_fit=" << res.k11_fit
                  << ", k11_oracle=" << oracle << ", rel_dev=" << rel_dev
                  << ", mass_rel_err=" << res.mass_rel_err
                  << ", j_rel_err=" << res.j_rel_err << (ok ? "" : "  [FAIL]")
                  << "\n";
    }
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"radial gravitational minimization toolkit"};
    app.require_subcommand(1);

    // Common options live on the root so the flat config file reaches them;
    // subcommands fall unmatched flags through, so `vpmin minimize --mu 2`
    // and `vpmin --mu 2 minimize` are equivalent.
    RunConfig cfg;
    add_common(&app, cfg);
    app.allow_config_extras(CLI::config_extras_mode::error);
    std::size_t side = 12;
    app.add_option("--side", side, "cells per axis for the rearrange demo (<= 32)")
        ->capture_default_str();

    auto* min_sub = app.add_subcommand(
        "minimize", "run the fixed-point minimization; writes profile.csv and result.json");
    min_sub->fallthrough();

    std::string suite;
    auto* ver_sub =
        app.add_subcommand("verify", "run a verification suite; writes verify_<suite>.json");
    ver_sub->fallthrough();
    ver_sub->add_option("suite", suite, "suite name or `all`")
        ->required()
        ->check(CLI::IsMember({"scaling", "concentration", "riesz", "reduction",
                               "lane-emden", "sequences", "all"}));

    auto* rep_sub = app.add_subcommand(
        "report", "consolidate out-dir artifacts into report.json");
    rep_sub->fallthrough();

    auto* rearr_sub = app.add_subcommand(
        "rearrange", "symmetric-decreasing rearrangement demo on a random box");
    rearr_sub->fallthrough();

    auto* red_sub = app.add_subcommand(
        "reduce-check", "fit the kinetic coupling on random densities and compare with the oracle");
    red_sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    }

    const bool mu_given = app.count("--mu") > 0;
    try {
        if (min_sub->parsed()) return cmd_minimize(cfg);
        if (ver_sub->parsed()) return cmd_verify(cfg, suite, mu_given);
        if (rep_sub->parsed()) return cmd_report(cfg);
        if (rearr_sub->parsed()) return cmd_rearrange(cfg, side);
        if (red_sub->parsed()) return cmd_reduce_check(cfg, mu_given);
    } catch (const vpmin::numeric_error& ex) {
        std::cerr << "vpmin: " << ex.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& ex) {
        std::cerr << "vpmin: " << ex.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "vpmin: " << ex.what() << "\n";
        return 3;
    } catch (const std::exception& ex) {
        std::cerr << "vpmin: " << ex.what() << "\n";
        return 2;
    }
    return 3;
}
