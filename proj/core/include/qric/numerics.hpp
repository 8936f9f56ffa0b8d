#pragma once

#include <utility>
#include <vector>

#include "qric/matrix.hpp"
#include "qric/tolerances.hpp"

namespace qric {

// Result of a Hermitian eigendecomposition.
//
// Eigenvalues are ascending. Eigenvector columns are orthonormal and carry a
// deterministic phase: the first component above a relative floor is made
// real positive, so identical input bits give identical output bits.
//
// `clusters` lists maximal index ranges [first, last] (inclusive, length >= 2)
// whose eigenvalues are closer than tol_cluster * ||A||_F. Within a cluster
// only the span of the eigenvectors is meaningful to consumers.
struct HermitianEigenResult {
    RealVector eigenvalues;
    ComplexMatrix eigenvectors;
    std::vector<std::pair<int, int>> clusters;

    bool index_in_cluster(int i) const {
        for (const auto& [a, b] : clusters)
            if (i >= a && i <= b) return true;
        return false;
    }
};

// Throws NotHermitian if ||A - A'||_F > tol_herm * ||A||_F, ConvergenceFailure
// if the underlying decomposition fails.
HermitianEigenResult eigh(const ComplexMatrix& a, double tol_herm = 1e-10,
                          double tol_cluster = 1e-9);

struct LinearSolveResult {
    ComplexMatrix x;
    double rcond;  // sigma_min / sigma_max of A
};

// Solves A X = B. Throws SingularMatrix when sigma_min(A) < kappa_floor * ||A||_2.
LinearSolveResult solve_linear(const ComplexMatrix& a, const ComplexMatrix& b,
                               double kappa_floor = 1e-12);

// exp(-i H t) through the spectral decomposition of Hermitian H.
ComplexMatrix unitary_exp(const ComplexMatrix& h, double t, double tol_herm = 1e-10);

// Solves A D - D B = C for D (A m x m, B n x n, C m x n) by complex Schur
// reduction of both coefficients and a triangular sweep. Throws SpectraOverlap
// when the spectra of A and B come closer than gap_min * (||A||_F + ||B||_F).
ComplexMatrix sylvester_solve(const ComplexMatrix& a, const ComplexMatrix& b,
                              const ComplexMatrix& c, double gap_min = 1e-10);

// sqrt of the smallest eigenvalue of A'A (AA' for wide inputs), clamped at 0.
double smallest_singular_value(const ComplexMatrix& a);

}  // namespace qric
