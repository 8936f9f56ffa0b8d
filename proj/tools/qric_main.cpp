// Command line front-end: run | sweep | oracle.
//
// Exit codes: 0 = pass, 1 = a verification check failed, 2 = invalid input
// (config schema, parameter invariants, model/solver mismatch), 3 = solver
// machinery failure on otherwise valid input.

#include <cstdint>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "qric/runner.hpp"

namespace {

// "tol_acc=1e-8" -> {"tol_acc", 1e-8}
std::pair<std::string, double> parse_tol_flag(const std::string& s) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0)
        throw qric::InvalidConfig("--tol expects KEY=VALUE, got: " + s);
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(s.substr(eq + 1), &used);
    } catch (const std::exception&) {
        throw qric::InvalidConfig("--tol " + s + ": value is not a number");
    }
    if (used != s.size() - eq - 1)
        throw qric::InvalidConfig("--tol " + s + ": trailing junk after value");
    return {s.substr(0, eq), value};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Block-Hamiltonian Riccati solver and stationary-state certifier"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string csv_path;
    std::vector<std::string> tol_flags;
    std::vector<double> times;
    std::uint64_t seed = 0;
    int workers = 0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON configuration file")->required();
        cmd->add_option("--out", out_path, "report output path (overrides config)");
        cmd->add_option("--csv", csv_path, "sweep CSV path (overrides config)");
        cmd->add_option("--tol", tol_flags, "tolerance override KEY=VALUE (repeatable)");
        cmd->add_option("--times", times, "sampling times t1,t2,... (overrides config)")
            ->delimiter(',');
        cmd->add_option("--seed", seed, "random seed (overrides config)");
        cmd->add_option("--workers", workers, "concurrent sweep workers (overrides config)");
    };

    CLI::App* run = app.add_subcommand("run", "solve one configuration and verify it");
    add_common(run);
    CLI::App* sweep = app.add_subcommand("sweep", "run every sweep value and tabulate r");
    add_common(sweep);

    int oracle_n = 2;
    int oracle_trials = 100;
    std::uint64_t oracle_seed = 7;
    CLI::App* oracle =
        app.add_subcommand("oracle", "random-instance exhaustive/Newton cross-check");
    oracle->add_option("--n", oracle_n, "environment dimension (1..4)");
    oracle->add_option("--trials", oracle_trials, "number of random instances");
    oracle->add_option("--seed", oracle_seed, "random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return qric::kExitInvalidInput;
    }

    try {
        qric::CliOverrides o;
        if (!out_path.empty()) o.out = out_path;
        if (!csv_path.empty()) o.csv = csv_path;
        for (const std::string& s : tol_flags) o.tol.push_back(parse_tol_flag(s));
        if (!times.empty()) o.times = times;
        if (app.count_all() && (run->count("--seed") || sweep->count("--seed"))) o.seed = seed;
        if (workers > 0) o.workers = workers;

        if (run->parsed()) return qric::cmd_run(config_path, o, std::cerr);
        if (sweep->parsed()) return qric::cmd_sweep(config_path, o, std::cerr);
        return qric::cmd_oracle(oracle_n, oracle_trials, oracle_seed, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return qric::classify_error(e);
    }
}
