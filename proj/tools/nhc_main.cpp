// Command-line driver: parses a problem file, dispatches one subcommand and
// renders the result, replaying byte-identical cached runs when available.
#include "nhc/errors.hpp"
#include "nhc/problem.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <set>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    CLI::App app{"normal Hilbert functions, joint reductions and bigraded cohomology\n"
                 "for pairs of monomial ideals over a 2-D affine semigroup"};
    app.require_subcommand(1);

    std::string input, format = "json", outDir;
    bool noCache = false;
    std::vector<long long> grid;
    long long window = 3, kcap = 12, r0 = 0, s0 = 0;

    app.add_option("--input", input, "problem JSON file")->required();
    app.add_option("--grid", grid, "Hilbert table bounds R S (default 10 10)")->expected(2);
    app.add_option("--window", window, "fit verification window width (default 3)");
    app.add_option("--kcap", kcap, "stabilization cap for the direct cohomology route");
    app.add_option("--r0", r0, "base row index (colength, check thm4)");
    app.add_option("--s0", s0, "base column index (colength, check thm4)");
    app.add_option("--format", format, "stdout rendering (default json)")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_flag("--no-cache", noCache, "compute fresh, do not read or write the cache");
    app.add_option("--out", outDir, "directory for report.json and the CSV tables");

    app.add_subcommand("closure", "minimal generators of the integral closures of I and J")
        ->fallthrough();
    app.add_subcommand("colength", "length of R modulo the closure of I^r0 J^s0")
        ->fallthrough();
    app.add_subcommand("table", "normal Hilbert table on the grid")->fallthrough();
    app.add_subcommand("coeffs", "bivariate fit, axis fits and the g/h constants")
        ->fallthrough();
    app.add_subcommand("jointred", "search and certify a good joint reduction pair")
        ->fallthrough();
    app.add_subcommand("h2", "bigraded second local cohomology lengths by all routes")
        ->fallthrough();
    std::string checkId;
    CLI::App* check = app.add_subcommand("check", "verify one statement against the instance");
    check->fallthrough();
    check->add_option("id", checkId, "one of thm4, rees7, marley, e2max, vanishing14")
        ->required();
    app.add_subcommand("all", "every report on the default desk-scale grid")->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    std::string command = app.get_subcommands().front()->get_name();
    if (command == "check") command += " " + checkId;

    try {
        const nhc::ProblemSpec spec = nhc::parse_problem(input);
        nhc::Options opts;
        std::set<std::string> cliSet;
        for (const char* k : {"grid", "window", "kcap", "r0", "s0"})
            if (app.count(std::string("--") + k)) cliSet.insert(k);
        nhc::apply_file_options(spec, opts, cliSet);
        if (cliSet.count("grid")) {
            opts.gridR = grid[0];
            opts.gridS = grid[1];
        }
        if (cliSet.count("window")) opts.window = window;
        if (cliSet.count("kcap")) opts.kcap = kcap;
        if (cliSet.count("r0")) opts.r0 = r0;
        if (cliSet.count("s0")) opts.s0 = s0;
        opts.format = format;
        opts.noCache = noCache;
        opts.outDir = outDir;

        const std::string cacheDir =
            (outDir.empty() ? std::string(".") : outDir) + "/.nhc-cache";
        const std::string key = nhc::cache_key(spec, command, opts);

        const auto t0 = std::chrono::steady_clock::now();
        nhc::RunResult result;
        bool hit = false;
        if (!noCache) hit = nhc::cache_load(cacheDir, key, result);
        if (!hit) {
            result = nhc::run_command(spec, command, opts);
            if (!noCache) nhc::cache_store(cacheDir, key, result);
        }
        if (!outDir.empty()) nhc::write_report(result, outDir);
        std::cout << nhc::render_stdout(result, command, format);
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
        std::cerr << "nhc: " << (hit ? "cache hit" : "computed") << " in " << ms << " ms\n";
        return result.exitCode;
    } catch (const nhc::input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const nhc::stabilization_error& e) {
        std::cerr << "stabilization error: " << e.what() << "\n";
        return 3;
    } catch (const nhc::invariant_error& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
