#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "doctest.h"
#include "qric/errors.hpp"
#include "qric/model.hpp"
#include "qric/numerics.hpp"
#include "qric/riccati.hpp"
#include "qric/rng.hpp"
#include "qric/stationary.hpp"
#include "qric/verify.hpp"

using namespace qric;

namespace {

SpinBosonSystem reference_spin_boson(int n = 16) {
    SpinBosonParams p;
    p.n_env = n;
    p.g = 0.2;
    p.alpha = 0.5;
    return build_spin_boson(p);
}

BlockHamiltonian random_instance(int n, int seed) {
    StreamRng rng(seed, "verify/random");
    return from_blocks(rng.hermitian_gaussian_matrix(n), rng.hermitian_gaussian_matrix(n),
                       rng.complex_gaussian_matrix(n, n));
}

const std::vector<double> kTimes{0.1, 1.0, 10.0, 100.0};

}  // namespace

TEST_SUITE("verify") {

TEST_CASE("check_eigenpair: exact pair, wrong eigenvalue, eigh self-consistency") {
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = 2.0;
    ComplexVector e1 = ComplexVector::Zero(2);
    e1(0) = 1.0;
    CHECK(check_eigenpair(d, e1, 1.0) == 0.0);
    CHECK(check_eigenpair(d, e1, 2.0) == doctest::Approx(1.0));

    StreamRng rng(70, "eigenpair/self");
    const ComplexMatrix a = rng.hermitian_gaussian_matrix(12);
    const HermitianEigenResult r = eigh(a);
    for (int i = 0; i < 12; ++i)
        CHECK(check_eigenpair(a, r.eigenvectors.col(i), r.eigenvalues(i)) <= 1e-11);
}

TEST_CASE("check_similarity: decoupled zero solution is exactly block diagonal") {
    StreamRng rng(71, "similarity/zero");
    const BlockHamiltonian h =
        from_blocks(rng.hermitian_gaussian_matrix(3), rng.hermitian_gaussian_matrix(3),
                    ComplexMatrix::Zero(3, 3), 1e-10, ModelKind::v_zero);
    const RiccatiSolution sol = analytic_solutions(h, ModelKind::v_zero)[0];
    CHECK(check_similarity(h, sol) == 0.0);
}

TEST_CASE("check_similarity: parity solution and random accepted solutions") {
    const SpinBosonSystem sys = reference_spin_boson();
    const RiccatiSolution parity = analytic_solutions(sys.h, ModelKind::spin_boson)[0];
    CHECK(check_similarity(sys.h, parity) <= 1e-12);

    const BlockHamiltonian h = random_instance(4, 72);
    for (const RiccatiSolution& s :
         solve_invariant_subspace(h, SelectionStrategy::exhaustive))
        CHECK(check_similarity(h, s) <= 1e-9);
}

TEST_CASE("check_stationarity: time zero is exact") {
    const BlockHamiltonian h = random_instance(3, 73);
    const RiccatiSolution sol =
        solve_invariant_subspace(h, SelectionStrategy::max_invertibility)[0];
    const std::vector<RiccatiState> states = all_stationary_states(h, sol);
    CHECK(check_stationarity(h, states[0], {0.0}) <= 1e-14);
}

TEST_CASE("check_stationarity: decoupled projector states at any time") {
    StreamRng rng(74, "stationarity/vzero");
    const BlockHamiltonian h =
        from_blocks(rng.hermitian_gaussian_matrix(3), rng.hermitian_gaussian_matrix(3),
                    ComplexMatrix::Zero(3, 3), 1e-10, ModelKind::v_zero);
    const RiccatiSolution sol = analytic_solutions(h, ModelKind::v_zero)[0];
    for (const RiccatiState& s : all_stationary_states(h, sol))
        CHECK(check_stationarity(h, s, kTimes) <= 1e-12);
}

TEST_CASE("check_stationarity: every parity-solution state holds over long times") {
    const SpinBosonSystem sys = reference_spin_boson();
    const RiccatiSolution sol = analytic_solutions(sys.h, ModelKind::spin_boson)[0];
    for (const RiccatiState& s : all_stationary_states(sys.h, sol))
        CHECK(check_stationarity(sys.h, s, kTimes) <= 1e-8);
}

TEST_CASE("check_nonstationary_control: a two-eigenvector beat moves the reduced state") {
    const SpinBosonSystem sys = reference_spin_boson(8);
    const RiccatiSolution sol = analytic_solutions(sys.h, ModelKind::spin_boson)[0];
    const ComplexMatrix zp = z_plus(sys.h, sol.x);
    const std::vector<ZEigenpair> pairs = eig_z(zp, sol.x, VectorKind::graph);
    const ComplexVector psi =
        (pairs[0].env_vector + pairs[1].env_vector) / std::sqrt(2.0);
    const double delta = pairs[1].eigenvalue - pairs[0].eigenvalue;
    // Sample up to the half period of the two-level beat.
    const std::vector<double> times{0.25 * std::numbers::pi / delta,
                                    0.5 * std::numbers::pi / delta,
                                    std::numbers::pi / delta};
    CHECK(check_nonstationary_control(sys.h, sol, psi, times) > 1e-3);
}

TEST_CASE("check_nonstationary_control: rejects eigenvector inputs") {
    const SpinBosonSystem sys = reference_spin_boson(6);
    const RiccatiSolution sol = analytic_solutions(sys.h, ModelKind::spin_boson)[0];
    const std::vector<ZEigenpair> pairs =
        eig_z(z_plus(sys.h, sol.x), sol.x, VectorKind::graph);
    CHECK_THROWS_AS(
        check_nonstationary_control(sys.h, sol, pairs[2].env_vector, kTimes),
        ControlTooClose);
}

TEST_CASE("check_nonstationary_control: decoupled blocks admit no moving graph vector") {
    StreamRng rng(75, "control/vzero");
    ComplexMatrix hp = ComplexMatrix::Zero(3, 3);
    hp(0, 0) = 0.3;
    hp(1, 1) = 1.1;
    hp(2, 2) = 2.9;
    const BlockHamiltonian h = from_blocks(hp, rng.hermitian_gaussian_matrix(3),
                                           ComplexMatrix::Zero(3, 3), 1e-10,
                                           ModelKind::v_zero);
    const RiccatiSolution sol = analytic_solutions(h, ModelKind::v_zero)[0];
    ComplexVector psi(3);
    psi << 1.0, 1.0, 1.0;
    psi /= psi.norm();
    // psi is far from every eigenvector, yet the reduced state never moves:
    // the graph side is frozen when the blocks decouple.
    CHECK(check_nonstationary_control(h, sol, psi, kTimes) <= 1e-12);

    StreamRng ctrl_rng(76, "control/vzero/run");
    const ControlResult res = run_control(h, sol, kTimes, ctrl_rng);
    CHECK(res.outcome == ControlOutcome::degenerate);
    CHECK(!res.note.empty());
}

TEST_CASE("run_control: spin-boson control is powerful") {
    const SpinBosonSystem sys = reference_spin_boson();
    const RiccatiSolution sol = analytic_solutions(sys.h, ModelKind::spin_boson)[0];
    StreamRng rng(77, "control/sb");
    const ControlResult res = run_control(sys.h, sol, kTimes, rng);
    CHECK(res.outcome == ControlOutcome::powerful);
    CHECK(res.deviation > 1e-3);
}

TEST_CASE("run_control: replays are deterministic for a fixed seed") {
    const BlockHamiltonian h = random_instance(4, 78);
    const RiccatiSolution sol =
        solve_invariant_subspace(h, SelectionStrategy::max_invertibility)[0];
    StreamRng r1(9, "control/replay");
    StreamRng r2(9, "control/replay");
    const ControlResult a = run_control(h, sol, kTimes, r1);
    const ControlResult b = run_control(h, sol, kTimes, r2);
    CHECK(a.deviation == b.deviation);
    CHECK(a.outcome == b.outcome);
}

TEST_CASE("verify_solution: full certification of the parity pipeline") {
    const SpinBosonSystem sys = reference_spin_boson();
    const RiccatiSolution sol = analytic_solutions(sys.h, ModelKind::spin_boson)[0];
    const std::vector<RiccatiState> states = all_stationary_states(sys.h, sol);
    StreamRng rng(79, "verify/full");
    const VerificationReport rep = verify_solution(sys.h, sol, states, kTimes, rng);
    CHECK(rep.overall_pass);
    CHECK(rep.times_sampled == kTimes);
    // Every check reports its measured defect, passing or not. The negative
    // control is a pass/fail gate (threshold zero); everything else carries a
    // positive numeric threshold.
    for (const CheckRecord& c : rep.checks) {
        CHECK(!c.name.empty());
        if (c.name.find("negative_control") == std::string::npos)
            CHECK(c.threshold > 0.0);
    }
    // The spin-boson r checks are present for every state.
    int r_checks = 0;
    for (const CheckRecord& c : rep.checks)
        if (c.name.find("r_bound") != std::string::npos) ++r_checks;
    CHECK(r_checks == 32);
}

TEST_CASE("verify_solution: corrupted states are caught and reported") {
    const BlockHamiltonian h = random_instance(3, 80);
    const RiccatiSolution sol =
        solve_invariant_subspace(h, SelectionStrategy::max_invertibility)[0];
    std::vector<RiccatiState> states = all_stationary_states(h, sol);
    states[1].rho(0, 0) += 1e-4;  // break trace and stationarity together
    StreamRng rng(81, "verify/corrupt");
    const VerificationReport rep = verify_solution(h, sol, states, kTimes, rng);
    CHECK_FALSE(rep.overall_pass);
    bool trace_failed = false;
    for (const CheckRecord& c : rep.checks)
        if (c.name == "state1/trace" && !c.pass) trace_failed = true;
    CHECK(trace_failed);
}

TEST_CASE("verify_solution: certification chain holds on random accepted instances") {
    for (int seed : {82, 83}) {
        const BlockHamiltonian h = random_instance(3, seed);
        const std::vector<RiccatiSolution> sols =
            solve_invariant_subspace(h, SelectionStrategy::exhaustive);
        REQUIRE(!sols.empty());
        for (std::size_t i = 0; i < sols.size(); ++i) {
            const std::vector<RiccatiState> states = all_stationary_states(h, sols[i]);
            StreamRng rng(seed, "verify/chain" + std::to_string(i));
            CHECK(verify_solution(h, sols[i], states, kTimes, rng).overall_pass);
        }
    }
}

}  // TEST_SUITE
