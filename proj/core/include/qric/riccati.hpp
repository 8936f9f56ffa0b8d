#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qric/model.hpp"
#include "qric/tolerances.hpp"

namespace qric {

enum class SolveMethod {
    invariant_subspace,
    newton,
    analytic_parity,
    analytic_f,
    sylvester_zero,
    analytic_pm_identity,
};

std::string to_string(SolveMethod m);

// One solution X of the operator Riccati equation
//
//     X V X + X H+ - H- X - V' = 0
//
// with both residual norms measured on the returned matrix (never assumed).
struct RiccatiSolution {
    ComplexMatrix x;
    double residual_primal = 0.0;  // ||XVX + X h_plus - h_minus X - v'||_F
    double residual_dual = 0.0;    // same for Y = -X' in the dual equation
    SolveMethod method = SolveMethod::invariant_subspace;
    std::optional<std::vector<int>> selection;  // eigenindices of the subspace
    bool cluster_split = false;  // selection cut through a degenerate cluster
    std::vector<double> residual_history;  // Newton: residual per iterate

    bool accepted(double h_norm, double tol_acc_rel) const {
        return residual_primal <= tol_acc_rel * h_norm;
    }
};

// Left side of the primal Riccati equation at x: XVX + X h_plus - h_minus X - v'.
ComplexMatrix residual_primal(const BlockHamiltonian& h, const ComplexMatrix& x);

// Left side of the dual equation at y: YV'Y + Y h_minus - h_plus Y - v.
ComplexMatrix residual_dual(const BlockHamiltonian& h, const ComplexMatrix& y);

// Measures both residual norms of x and packages them as a RiccatiSolution.
RiccatiSolution make_solution(const BlockHamiltonian& h, ComplexMatrix x,
                              SolveMethod method,
                              std::optional<std::vector<int>> selection = {});

// How solve_invariant_subspace picks N of the 2N eigenvectors of full().
//   spectral_bottom:   the N lowest eigenvalues.
//   max_invertibility: greedily add the eigenvector maximizing sigma_min of
//                      the growing top block (ties by eigenvalue, then index).
//   exhaustive:        every C(2N, N) subset; requires N <= 6.
enum class SelectionStrategy { spectral_bottom, max_invertibility, exhaustive };

std::string to_string(SelectionStrategy s);
SelectionStrategy strategy_from_string(const std::string& s);

// Recovers Riccati solutions from invariant subspaces of the full 2N x 2N
// matrix: stack the selected eigenvectors as [W1; W2], require
// sigma_min(W1) >= w1_floor, and set X = W2 W1^{-1}. A candidate is kept only
// if its measured primal residual passes tol.acc_abs(h.norm()); exhaustive
// search deduplicates at Frobenius distance tol.dedup. Throws
// NoInvertibleSelection when every attempted top block fails the floor.
std::vector<RiccatiSolution> solve_invariant_subspace(
    const BlockHamiltonian& h, SelectionStrategy strategy,
    const Tolerances& tol = {});

// Same construction for one caller-chosen set of eigenindices (size N).
// Returns the candidate with measured residuals; the caller judges acceptance.
RiccatiSolution solve_with_selection(const BlockHamiltonian& h,
                                     const std::vector<int>& indices,
                                     const Tolerances& tol = {});

// Newton iteration on the primal equation: each step solves the Sylvester
// equation  (h_minus - X V) D - D (h_plus + V X) = residual(X)  and updates
// X += D. Residuals of every iterate land in residual_history. Throws
// MaxIterExceeded past max_iter, propagates SpectraOverlap from the inner
// solve when an iterate's spectral split degenerates.
RiccatiSolution solve_newton(const BlockHamiltonian& h, const ComplexMatrix& x0,
                             int max_iter = 50, double tol_res = 0.0,
                             const Tolerances& tol = {});

// Newton from the default start X0 = 0.
RiccatiSolution solve_newton(const BlockHamiltonian& h, int max_iter = 50,
                             double tol_res = 0.0, const Tolerances& tol = {});

// Closed-form solutions keyed by the model structure, residuals measured:
//   spin_boson (beta = 0):  X = P                     (analytic_parity)
//   commuting:              X = f(H1), f(x) = (sqrt(x^2 + a^2) - x)/a
//                                                     (analytic_f)
//   equal_diagonal:         X = +I and X = -I         (analytic_pm_identity)
//   v_zero:                 X = 0                     (sylvester_zero)
// Throws WrongModel when h does not actually carry the tagged structure
// (checked on the matrices, not just the provenance label).
std::vector<RiccatiSolution> analytic_solutions(const BlockHamiltonian& h,
                                                ModelKind model_tag,
                                                const Tolerances& tol = {});

}  // namespace qric
