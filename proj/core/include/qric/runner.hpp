#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qric/config.hpp"
#include "qric/report.hpp"

namespace qric {

// Exit codes shared by all commands.
//   0  every verification check passed
//   1  a verification check failed (report still written)
//   2  invalid input: malformed config, parameter invariant violation,
//      model/solver mismatch
//   3  solver or certification machinery failure at runtime
inline constexpr int kExitPass = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitSolverFailure = 3;

// Maps a thrown qric exception to the exit code class above.
int classify_error(const std::exception& e);

// Builds the model of `cfg` (sweep ignored), runs the configured solvers,
// derives all stationary states per accepted solution, and certifies
// everything end-to-end. Throws on build/solver errors; a clean return with
// overall_pass = false means a verification check failed.
RunReport execute_run(const RunConfig& cfg);

// Flag overrides applied on top of the loaded config file.
struct CliOverrides {
    std::optional<std::string> out;
    std::optional<std::string> csv;
    std::vector<std::pair<std::string, double>> tol;  // --tol KEY=VAL
    std::optional<std::vector<double>> times;
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
};

RunConfig load_with_overrides(const std::string& config_path, const CliOverrides& o);

// run: one model instance -> RunReport JSON at cfg.out.
int cmd_run(const std::string& config_path, const CliOverrides& o, std::ostream& err);

// sweep: one run per sweep value (concurrently up to cfg.workers, outputs in
// deterministic sweep order) -> per-value RunReport JSONs next to cfg.out plus
// the combined CSV at cfg.csv.
int cmd_sweep(const std::string& config_path, const CliOverrides& o, std::ostream& err);

// oracle: `trials` random Hermitian block Hamiltonians of environment
// dimension n <= 4; every exhaustive-enumeration solution and every state
// derived from it is certified end-to-end, and every converged Newton run
// (default start plus random starts) must land on an enumerated solution.
// The first failing instance is serialized to `err` for replay.
int cmd_oracle(int n, int trials, std::uint64_t seed, std::ostream& err);

}  // namespace qric
