#include "qric/runner.hpp"

#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <ostream>
#include <thread>

#include "json_io.hpp"
#include "qric/verify.hpp"

namespace qric {

int classify_error(const std::exception& e) {
    // Bad inputs (malformed configs, violated parameter invariants, solver/
    // model mismatches) are distinguished from machinery that failed at
    // runtime on legitimate inputs.
    if (dynamic_cast<const InvalidConfig*>(&e) ||
        dynamic_cast<const InvalidArgument*>(&e) ||
        dynamic_cast<const DegenerateSpectrum*>(&e) ||
        dynamic_cast<const DimensionMismatch*>(&e) ||
        dynamic_cast<const NotHermitian*>(&e) ||
        dynamic_cast<const WrongModel*>(&e) ||
        dynamic_cast<const OddDimension*>(&e))
        return kExitInvalidInput;
    return kExitSolverFailure;
}

namespace {

class PhaseTimer {
  public:
    PhaseTimer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

BlockHamiltonian build_model(const RunConfig& cfg) {
    if (const auto* sb = std::get_if<SpinBosonParams>(&cfg.params))
        return build_spin_boson(*sb).h;
    if (const auto* cm = std::get_if<CommutingParams>(&cfg.params))
        return build_commuting(*cm);
    const auto& ct = std::get<CustomTermsParams>(cfg.params);
    return from_system_terms(ct.h_q, ct.h_env, ct.couplings);
}

std::vector<RiccatiSolution> run_solvers(const RunConfig& cfg, const BlockHamiltonian& h) {
    const Tolerances& tol = cfg.tolerances;
    switch (cfg.solver) {
        case SolverChoice::invariant_subspace:
            return solve_invariant_subspace(h, cfg.strategy, tol);
        case SolverChoice::newton:
            return {solve_newton(h, 50, 0.0, tol)};
        case SolverChoice::analytic:
            return analytic_solutions(h, h.kind, tol);
        case SolverChoice::all: {
            // Under "all" each solver is a best-effort probe: a model without
            // a closed form or a Newton start with a degenerate split is
            // expected for some inputs, not an error of the run.
            std::vector<RiccatiSolution> out = solve_invariant_subspace(h, cfg.strategy, tol);
            try {
                out.push_back(solve_newton(h, 50, 0.0, tol));
            } catch (const SpectraOverlap&) {
            } catch (const MaxIterExceeded&) {
            }
            if (h.kind != ModelKind::generic) {
                try {
                    std::vector<RiccatiSolution> closed = analytic_solutions(h, h.kind, tol);
                    out.insert(out.end(), std::make_move_iterator(closed.begin()),
                               std::make_move_iterator(closed.end()));
                } catch (const WrongModel&) {
                }
            }
            return out;
        }
    }
    throw InvalidArgument("run_solvers: bad SolverChoice");
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file: " + path);
    out << content;
    if (!out) throw Error("failed writing output file: " + path);
}

// report_base.json -> report_base_<idx>.json
std::string indexed_path(const std::string& base, std::size_t idx) {
    const auto slash = base.find_last_of("/\\");
    const auto dot = base.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return base + "_" + std::to_string(idx);
    return base.substr(0, dot) + "_" + std::to_string(idx) + base.substr(dot);
}

std::string default_csv_path(const std::string& out) {
    const auto slash = out.find_last_of("/\\");
    const auto dot = out.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return out + ".csv";
    return out.substr(0, dot) + ".csv";
}

void print_failures(const VerificationReport& verification, std::ostream& err) {
    for (const CheckRecord& c : verification.checks)
        if (!c.pass)
            err << "  FAIL " << c.name << ": defect " << c.defect << " > threshold "
                << c.threshold << "\n";
}

}  // namespace

RunReport execute_run(const RunConfig& cfg) {
    RunReport report;
    report.config_echo = to_json_text(cfg);
    report.verification.times_sampled = cfg.times;

    PhaseTimer build_timer;
    const BlockHamiltonian h = build_model(cfg);
    report.timing.emplace_back("build", build_timer.seconds());

    PhaseTimer solve_timer;
    const std::vector<RiccatiSolution> solutions = run_solvers(cfg, h);
    report.timing.emplace_back("solve", solve_timer.seconds());
    if (solutions.empty())
        throw ConvergenceFailure("execute_run: no solver produced an accepted solution");

    PhaseTimer states_timer;
    double verify_seconds = 0.0;
    const bool attach_r = h.kind == ModelKind::spin_boson;
    int state_index = 0;
    for (std::size_t i = 0; i < solutions.size(); ++i) {
        const RiccatiSolution& sol = solutions[i];
        const std::vector<RiccatiState> states =
            all_stationary_states(h, sol, cfg.tolerances);

        PhaseTimer verify_timer;
        StreamRng rng(cfg.seed, "control/sol" + std::to_string(i));
        const VerificationReport v =
            verify_solution(h, sol, states, cfg.times, rng, cfg.tolerances);
        verify_seconds += verify_timer.seconds();

        for (std::size_t j = 0; j < states.size(); ++j) {
            StateRecord rec;
            rec.solution_index = static_cast<int>(i);
            rec.state_index = state_index++;
            rec.rho = states[j].rho;
            rec.eigenvalue = states[j].eigenvalue;
            rec.kind = states[j].source.kind;
            if (attach_r) rec.r = 2.0 * states[j].rho(0, 1).real();
            rec.in_cluster = states[j].in_cluster;
            const std::string defect_name = "state" + std::to_string(j) + "/stationarity";
            for (const CheckRecord& c : v.checks)
                if (c.name == defect_name) {
                    rec.stationarity_defect = c.defect;
                    break;
                }
            report.states.push_back(std::move(rec));
        }

        const std::string prefix = "sol" + std::to_string(i) + "/";
        for (const CheckRecord& c : v.checks)
            report.verification.checks.push_back(
                {prefix + c.name, c.defect, c.threshold, c.pass});
        report.verification.overall_pass =
            report.verification.overall_pass && v.overall_pass;

        report.solutions.push_back({static_cast<int>(i), sol});
    }
    report.timing.emplace_back("states", states_timer.seconds() - verify_seconds);
    report.timing.emplace_back("verify", verify_seconds);
    report.overall_pass = report.verification.overall_pass;
    return report;
}

RunConfig load_with_overrides(const std::string& config_path, const CliOverrides& o) {
    RunConfig cfg = load_config_file(config_path);
    if (o.out) cfg.out = *o.out;
    if (o.csv) cfg.csv = *o.csv;
    for (const auto& [name, value] : o.tol) cfg.tolerances.set(name, value);
    if (o.times) {
        if (o.times->empty()) throw InvalidConfig("--times: need at least one time");
        cfg.times = *o.times;
    }
    if (o.seed) cfg.seed = *o.seed;
    if (o.workers) {
        if (*o.workers < 1) throw InvalidConfig("--workers must be >= 1");
        cfg.workers = *o.workers;
    }
    return cfg;
}

int cmd_run(const std::string& config_path, const CliOverrides& o, std::ostream& err) {
    try {
        const RunConfig cfg = load_with_overrides(config_path, o);
        const RunReport report = execute_run(cfg);
        write_text_file(cfg.out, report_to_json(report));
        if (!report.overall_pass) {
            err << "verification failed (" << cfg.out << "):\n";
            print_failures(report.verification, err);
            return kExitVerifyFailed;
        }
        return kExitPass;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return classify_error(e);
    }
}

int cmd_sweep(const std::string& config_path, const CliOverrides& o, std::ostream& err) {
    try {
        const RunConfig cfg = load_with_overrides(config_path, o);
        if (!cfg.sweep)
            throw InvalidConfig("sweep command needs a \"sweep\" block in the config");
        const std::vector<double> values = cfg.sweep->values;
        const std::size_t count = values.size();

        std::vector<std::optional<RunReport>> reports(count);
        std::vector<std::exception_ptr> errors(count);
        auto run_one = [&](std::size_t idx) {
            try {
                RunConfig sub = with_sweep_value(cfg, values[idx]);
                sub.out = indexed_path(cfg.out, idx);
                reports[idx] = execute_run(sub);
            } catch (...) {
                errors[idx] = std::current_exception();
            }
        };

        const std::size_t workers =
            std::min<std::size_t>(static_cast<std::size_t>(cfg.workers), count);
        if (workers <= 1) {
            for (std::size_t idx = 0; idx < count; ++idx) run_one(idx);
        } else {
            // Workers share only the immutable base config; outputs are
            // buffered per index and emitted in sweep order below.
            std::atomic<std::size_t> next{0};
            std::vector<std::thread> pool;
            pool.reserve(workers);
            for (std::size_t w = 0; w < workers; ++w)
                pool.emplace_back([&] {
                    for (std::size_t idx = next.fetch_add(1); idx < count;
                         idx = next.fetch_add(1))
                        run_one(idx);
                });
            for (std::thread& t : pool) t.join();
        }

        // The lowest failing index wins so diagnostics do not depend on
        // thread scheduling.
        for (std::size_t idx = 0; idx < count; ++idx)
            if (errors[idx]) std::rethrow_exception(errors[idx]);

        std::vector<std::pair<double, RunReport>> finished;
        finished.reserve(count);
        bool all_pass = true;
        for (std::size_t idx = 0; idx < count; ++idx) {
            write_text_file(indexed_path(cfg.out, idx), report_to_json(*reports[idx]));
            if (!reports[idx]->overall_pass) {
                all_pass = false;
                err << "verification failed at " << cfg.sweep->param << " = "
                    << values[idx] << ":\n";
                print_failures(reports[idx]->verification, err);
            }
            finished.emplace_back(values[idx], std::move(*reports[idx]));
        }
        write_text_file(cfg.csv ? *cfg.csv : default_csv_path(cfg.out),
                        sweep_csv(finished));
        return all_pass ? kExitPass : kExitVerifyFailed;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return classify_error(e);
    }
}

namespace {

void serialize_failing_instance(std::ostream& err, int trial, int n, std::uint64_t seed,
                                const BlockHamiltonian& h, const std::string& reason) {
    jio::json j;
    j["trial"] = trial;
    j["n"] = n;
    j["seed"] = seed;
    j["reason"] = reason;
    j["h_plus"] = jio::matrix_to(h.h_plus);
    j["h_minus"] = jio::matrix_to(h.h_minus);
    j["v"] = jio::matrix_to(h.v);
    err << "oracle failure:\n" << j.dump(2) << "\n";
}

}  // namespace

int cmd_oracle(int n, int trials, std::uint64_t seed, std::ostream& err) {
    if (n < 1 || n > 4) {
        err << "error: oracle dimension must be in [1, 4]\n";
        return kExitInvalidInput;
    }
    if (trials < 0) {
        err << "error: trials must be >= 0\n";
        return kExitInvalidInput;
    }

    const Tolerances tol;
    const std::vector<double> times{0.1, 1.0, 10.0, 100.0};
    for (int trial = 0; trial < trials; ++trial) {
        StreamRng gen(seed, "oracle/trial" + std::to_string(trial));
        const BlockHamiltonian h =
            from_blocks(gen.hermitian_gaussian_matrix(n), gen.hermitian_gaussian_matrix(n),
                        gen.complex_gaussian_matrix(n, n));
        try {
            const std::vector<RiccatiSolution> sols =
                solve_invariant_subspace(h, SelectionStrategy::exhaustive, tol);
            if (sols.empty()) {
                serialize_failing_instance(err, trial, n, seed, h,
                                           "exhaustive enumeration accepted no solution");
                return kExitVerifyFailed;
            }
            for (std::size_t i = 0; i < sols.size(); ++i) {
                const std::vector<RiccatiState> states =
                    all_stationary_states(h, sols[i], tol);
                StreamRng rng(seed, "oracle/trial" + std::to_string(trial) + "/verify" +
                                        std::to_string(i));
                const VerificationReport v =
                    verify_solution(h, sols[i], states, times, rng, tol);
                if (!v.overall_pass) {
                    print_failures(v, err);
                    serialize_failing_instance(
                        err, trial, n, seed, h,
                        "solution " + std::to_string(i) + " failed verification");
                    return kExitVerifyFailed;
                }
            }
            // Newton from the default and from random starts must land on
            // solutions the enumeration already knows; a novel limit would
            // mean one list or the other is wrong.
            std::vector<ComplexMatrix> starts{ComplexMatrix::Zero(n, n)};
            for (int s = 0; s < 2; ++s)
                starts.push_back(0.5 * gen.complex_gaussian_matrix(n, n));
            for (const ComplexMatrix& x0 : starts) {
                RiccatiSolution newton;
                try {
                    newton = solve_newton(h, x0, 50, 0.0, tol);
                } catch (const SpectraOverlap&) {
                    continue;  // this start has no usable Newton step
                } catch (const MaxIterExceeded&) {
                    continue;  // this start does not converge; not a solution
                }
                double closest = std::numeric_limits<double>::infinity();
                for (const RiccatiSolution& sol : sols)
                    closest = std::min(closest, (newton.x - sol.x).norm());
                if (closest > 1e-6) {
                    serialize_failing_instance(
                        err, trial, n, seed, h,
                        "a converged Newton solution is " + std::to_string(closest) +
                            " away from every enumerated solution");
                    return kExitVerifyFailed;
                }
            }
        } catch (const Error& e) {
            serialize_failing_instance(err, trial, n, seed, h, e.what());
            return kExitVerifyFailed;
        }
    }
    err << "oracle: " << trials << " trials at n = " << n << " all passed\n";
    return kExitPass;
}

}  // namespace qric
