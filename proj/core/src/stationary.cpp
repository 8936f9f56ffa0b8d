#include "qric/stationary.hpp"

#include <cfloat>
#include <cmath>
#include <utility>

#include "qric/errors.hpp"
#include "qric/numerics.hpp"

namespace qric {

ComplexMatrix z_plus(const BlockHamiltonian& h, const ComplexMatrix& x) {
    return h.h_plus + h.v * x;
}

ComplexMatrix z_minus(const BlockHamiltonian& h, const ComplexMatrix& x) {
    return h.h_minus - h.v.adjoint() * x.adjoint();
}

std::string to_string(VectorKind k) {
    return k == VectorKind::graph ? "graph" : "complement";
}

GraphVector make_graph_vector(const ComplexMatrix& x, const ComplexVector& env_vector,
                              VectorKind kind) {
    const auto n = x.rows();
    if (env_vector.size() != n)
        throw DimensionMismatch("make_graph_vector: vector length must match X");
    GraphVector out;
    out.kind = kind;
    out.env_vector = env_vector;
    out.stacked.resize(2 * n);
    if (kind == VectorKind::graph) {
        out.stacked.head(n) = env_vector;
        out.stacked.tail(n) = x * env_vector;
    } else {
        out.stacked.head(n) = -(x.adjoint() * env_vector);
        out.stacked.tail(n) = env_vector;
    }
    return out;
}

namespace {

struct GramRoots {
    ComplexMatrix sqrt;      // G^{1/2}
    ComplexMatrix inv_sqrt;  // G^{-1/2}
};

// G = I + X'X or I + XX' has eigenvalues >= 1, so both roots are
// well-conditioned whenever X is bounded.
GramRoots gram_roots(const ComplexMatrix& x, VectorKind side, const Tolerances& tol) {
    const ComplexMatrix g =
        ComplexMatrix::Identity(x.rows(), x.cols()) +
        (side == VectorKind::graph ? ComplexMatrix(x.adjoint() * x)
                                   : ComplexMatrix(x * x.adjoint()));
    const HermitianEigenResult eig = eigh(g, tol.tol_herm, tol.tol_cluster);
    const auto n = g.rows();
    RealVector sq(n), inv_sq(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double root = std::sqrt(std::max(eig.eigenvalues(i), 0.0));
        sq(i) = root;
        inv_sq(i) = 1.0 / root;
    }
    GramRoots out;
    out.sqrt = eig.eigenvectors * sq.cast<Complex>().asDiagonal() *
               eig.eigenvectors.adjoint();
    out.inv_sqrt = eig.eigenvectors * inv_sq.cast<Complex>().asDiagonal() *
                   eig.eigenvectors.adjoint();
    return out;
}

}  // namespace

std::vector<ZEigenpair> eig_z(const ComplexMatrix& z, const ComplexMatrix& x,
                              VectorKind side, const Tolerances& tol) {
    require_square(z, "eig_z");
    if (x.rows() != z.rows() || x.cols() != z.cols())
        throw DimensionMismatch("eig_z: x and z dimensions differ");

    // Z is similar to the Hermitian M = G^{1/2} Z G^{-1/2}; measuring M's
    // Hermiticity defect is a direct test that x really solves the Riccati
    // equation, so a failure here is reported as exactly that.
    const GramRoots g = gram_roots(x, side, tol);
    const ComplexMatrix m = g.sqrt * z * g.inv_sqrt;
    const double defect = (m - m.adjoint()).norm();
    if (defect > tol.sim_defect * std::max(z.norm(), DBL_MIN))
        throw SimilarityDefect(
            "eig_z: weighted similarity is not Hermitian (defect " +
            std::to_string(defect) + "); x does not solve the Riccati equation");

    const HermitianEigenResult eig = eigh(m, tol.tol_herm, tol.tol_cluster);
    std::vector<ZEigenpair> out(static_cast<std::size_t>(z.rows()));
    for (Eigen::Index i = 0; i < z.rows(); ++i) {
        ZEigenpair& pair = out[static_cast<std::size_t>(i)];
        pair.eigenvalue = eig.eigenvalues(i);
        pair.env_vector = g.inv_sqrt * eig.eigenvectors.col(i);
        pair.env_vector /= pair.env_vector.norm();
        pair.in_cluster = eig.index_in_cluster(static_cast<int>(i));
    }
    return out;
}

RiccatiState riccati_state(const ComplexMatrix& x, const ComplexVector& env_vector,
                           VectorKind kind) {
    const double plain_norm = env_vector.norm();
    if (plain_norm < 1e-150)
        throw ZeroVector("riccati_state: environment vector is zero");
    const ComplexVector unit = env_vector / plain_norm;

    RiccatiState out;
    out.source = make_graph_vector(x, unit, kind);
    if (kind == VectorKind::graph) {
        const ComplexVector xv = out.source.stacked.tail(unit.size());
        const double w2 = xv.squaredNorm();
        const Complex xexp = unit.dot(xv);  // <psi|X|psi>
        const double a = 1.0 / (1.0 + w2);
        out.rho << a, a * std::conj(xexp), a * xexp, a * w2;
        out.normalization = a;
    } else {
        const ComplexVector xdv = -out.source.stacked.head(unit.size());  // X' phi
        const double w2 = xdv.squaredNorm();
        const Complex xexp = xdv.dot(unit);  // <phi|X|phi> = <X' phi, phi>
        const double b = 1.0 / (w2 + 1.0);
        out.rho << b * w2, -b * std::conj(xexp), -b * xexp, b;
        out.normalization = b;
    }
    return out;
}

Matrix2c partial_trace(const ComplexMatrix& m) {
    require_square(m, "partial_trace");
    if (m.rows() % 2 != 0)
        throw OddDimension("partial_trace: dimension must be even");
    const auto n = m.rows() / 2;
    Matrix2c out;
    out(0, 0) = m.topLeftCorner(n, n).trace();
    out(0, 1) = m.topRightCorner(n, n).trace();
    out(1, 0) = m.bottomLeftCorner(n, n).trace();
    out(1, 1) = m.bottomRightCorner(n, n).trace();
    return out;
}

std::vector<RiccatiState> all_stationary_states(const BlockHamiltonian& h,
                                                const RiccatiSolution& sol,
                                                const Tolerances& tol) {
    std::vector<RiccatiState> out;
    out.reserve(static_cast<std::size_t>(2 * h.n_env));
    for (const ZEigenpair& pair : eig_z(z_plus(h, sol.x), sol.x, VectorKind::graph, tol)) {
        RiccatiState state = riccati_state(sol.x, pair.env_vector, VectorKind::graph);
        state.eigenvalue = pair.eigenvalue;
        state.in_cluster = pair.in_cluster;
        out.push_back(std::move(state));
    }
    for (const ZEigenpair& pair :
         eig_z(z_minus(h, sol.x), sol.x, VectorKind::complement, tol)) {
        RiccatiState state = riccati_state(sol.x, pair.env_vector, VectorKind::complement);
        state.eigenvalue = pair.eigenvalue;
        state.in_cluster = pair.in_cluster;
        out.push_back(std::move(state));
    }
    return out;
}

}  // namespace qric
