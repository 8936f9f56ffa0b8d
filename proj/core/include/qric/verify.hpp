#pragma once

#include <string>
#include <vector>

#include "qric/rng.hpp"
#include "qric/stationary.hpp"

namespace qric {

// One measured defect against its threshold. Defects are always recorded,
// passing or not.
struct CheckRecord {
    std::string name;
    double defect = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

struct VerificationReport {
    std::vector<CheckRecord> checks;
    std::vector<double> times_sampled;
    bool overall_pass = true;

    void add(std::string name, double defect, double threshold);
};

// ||H v - lambda v|| / ||v||.
double check_eigenpair(const ComplexMatrix& h_full, const ComplexVector& vec,
                       double lam);

// Block-diagonalization defect of the similarity S = [[I, -X'], [X, I]]:
// ||H S - S diag(Z+, Z-)||_F / ||H||_F. Also confirms sigma_min(S) >= 1
// (S'S = diag(I + X'X, I + XX') makes S uniformly invertible).
double check_similarity(const BlockHamiltonian& h, const RiccatiSolution& sol);

// Evolves the total pure state of `state`'s stacked vector and compares the
// reduced state against state.rho: max over times of
// ||Tr_E[U_t rho_tot U_t'] - rho||_F with U_t = exp(-i H t).
double check_stationarity(const BlockHamiltonian& h, const RiccatiState& state,
                          const std::vector<double>& times);

// Negative control: the same reduced-dynamics computation on a graph vector
// built from an env_vector that is NOT an eigenvector of Z+ (precondition:
// eigenpair defect > 0.01, else ControlTooClose). Returns the max deviation,
// which a powerful test setup should make large.
double check_nonstationary_control(const BlockHamiltonian& h,
                                   const RiccatiSolution& sol,
                                   const ComplexVector& env_vector,
                                   const std::vector<double>& times);

// Outcome of the control construction: some models genuinely admit no
// non-stationary graph vector (v = 0, or N = 1 where the graph side is a
// single ray).
enum class ControlOutcome { powerful, degenerate };

struct ControlResult {
    ControlOutcome outcome = ControlOutcome::degenerate;
    double deviation = 0.0;
    std::string note;
};

// Picks a control vector (superposition of two Z+ eigenvectors, pair chosen
// by the largest predicted deviation over the sampled times, phase drawn from
// rng) and runs check_nonstationary_control. Degenerate setups are reported
// as such rather than failed.
ControlResult run_control(const BlockHamiltonian& h, const RiccatiSolution& sol,
                          const std::vector<double>& times, StreamRng& rng,
                          const Tolerances& tol = {});

// Full certification of one accepted solution on the 2N x 2N system:
// residual norms, similarity defect, spectrum union against eigh(full()),
// per-state eigenpair defects, state sanity (trace, Hermiticity, positivity),
// stationarity at the sampled times, and the negative control.
VerificationReport verify_solution(const BlockHamiltonian& h,
                                   const RiccatiSolution& sol,
                                   const std::vector<RiccatiState>& states,
                                   const std::vector<double>& times,
                                   StreamRng& rng, const Tolerances& tol = {});

}  // namespace qric
