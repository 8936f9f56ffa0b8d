#pragma once

#include <string>
#include <vector>

#include "qric/model.hpp"
#include "qric/riccati.hpp"

namespace qric {

// Z+ = h_plus + v X. Its eigenvectors seed the graph-side stationary states.
ComplexMatrix z_plus(const BlockHamiltonian& h, const ComplexMatrix& x);

// Z- = h_minus - v' X'. Complement side.
ComplexMatrix z_minus(const BlockHamiltonian& h, const ComplexMatrix& x);

enum class VectorKind { graph, complement };

std::string to_string(VectorKind k);

// An environment vector together with its lift into the total space:
// [psi; X psi] on the graph side, [-X' phi; phi] on the complement side.
struct GraphVector {
    VectorKind kind = VectorKind::graph;
    ComplexVector env_vector;  // unit norm in the plain inner product
    ComplexVector stacked;     // length 2N, built exactly from env_vector and X
};

GraphVector make_graph_vector(const ComplexMatrix& x, const ComplexVector& env_vector,
                              VectorKind kind);

// One eigenpair of Z+ or Z-.
struct ZEigenpair {
    double eigenvalue = 0.0;
    ComplexVector env_vector;   // unit plain norm
    bool in_cluster = false;    // eigenvalue degenerate within tol_cluster
};

// Diagonalizes Z through the weighted-Hermitian similarity: with the Gram
// operator G = I + X'X (graph) or G = I + XX' (complement),
// M = G^{1/2} Z G^{-1/2} is Hermitian whenever X is a true solution, so the
// eigenvalues are real by construction. Eigenvectors come back as
// G^{-1/2} (columns of eigh(M)), renormalized. Throws SimilarityDefect when
// ||M - M'||_F exceeds tol.sim_defect * ||Z||_F, which signals that x does
// not solve the Riccati equation.
std::vector<ZEigenpair> eig_z(const ComplexMatrix& z, const ComplexMatrix& x,
                              VectorKind side, const Tolerances& tol = {});

// Qubit state harvested from one eigenvector of Z+/Z-.
struct RiccatiState {
    Matrix2c rho;               // Hermitian, trace one, PSD
    double eigenvalue = 0.0;    // eigenvalue of Z+/Z- the state descends from
    GraphVector source;
    double normalization = 0.0; // 1/(1 + ||X psi||^2) or 1/(||X' phi||^2 + 1)
    bool in_cluster = false;    // basis-dependent within a degenerate cluster
};

// Builds the 2x2 reduced state from a unit environment vector:
//   graph:      rho = A [[1,        <X>*], [<X>,  ||X psi||^2]],  A = 1/(1 + ||X psi||^2)
//   complement: rho = B [[||X'phi||^2, -<X>*], [-<X>, 1      ]],  B = 1/(||X'phi||^2 + 1)
// with <X> = <vec|X|vec>. Throws ZeroVector on a zero input.
RiccatiState riccati_state(const ComplexMatrix& x, const ComplexVector& env_vector,
                           VectorKind kind);

// Trace over the environment factor: maps a 2N x 2N matrix to the 2x2 matrix
// of block traces [[tr M11, tr M12], [tr M21, tr M22]]. Throws OddDimension.
Matrix2c partial_trace(const ComplexMatrix& m);

// All 2N Riccati states of an accepted solution: graph side (eigenpairs of
// Z+) first, then complement side (Z-), each ascending in eigenvalue. The
// eigenvalue multiset reproduces the spectrum of full().
std::vector<RiccatiState> all_stationary_states(const BlockHamiltonian& h,
                                                const RiccatiSolution& sol,
                                                const Tolerances& tol = {});

}  // namespace qric
