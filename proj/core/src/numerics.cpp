#include "qric/numerics.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <complex>
#include <limits>

#include "qric/errors.hpp"

namespace qric {

namespace {

// Multiplies each column by a unit phase so its first component above a
// relative floor is real positive. Keeps repeated runs bit-identical and
// makes regression values stable.
void fix_column_phases(ComplexMatrix& v) {
    constexpr double rel_floor = 1e-8;
    for (Eigen::Index j = 0; j < v.cols(); ++j) {
        const double top = v.col(j).cwiseAbs().maxCoeff();
        if (top == 0.0) continue;
        for (Eigen::Index i = 0; i < v.rows(); ++i) {
            const double mag = std::abs(v(i, j));
            if (mag > rel_floor * top) {
                v.col(j) *= std::conj(v(i, j)) / mag;
                break;
            }
        }
    }
}

void require_hermitian(const ComplexMatrix& a, double tol_herm, const char* who) {
    const double defect = (a - a.adjoint()).norm();
    if (defect > tol_herm * a.norm())
        throw NotHermitian(std::string(who) + ": Hermiticity defect " +
                           std::to_string(defect) + " exceeds " +
                           std::to_string(tol_herm) + " * ||A||");
}

}  // namespace

HermitianEigenResult eigh(const ComplexMatrix& a, double tol_herm, double tol_cluster) {
    require_square(a, "eigh");
    require_hermitian(a, tol_herm, "eigh");

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (a + a.adjoint()));
    if (solver.info() != Eigen::Success)
        throw ConvergenceFailure("eigh: eigendecomposition did not converge");

    HermitianEigenResult out;
    out.eigenvalues = solver.eigenvalues();  // ascending by construction
    out.eigenvectors = solver.eigenvectors();
    fix_column_phases(out.eigenvectors);

    // Degenerate clusters: maximal runs of adjacent eigenvalues closer than
    // tol_cluster * ||A||_F. Individual vectors inside a run are only defined
    // up to rotations of the span, so consumers get told.
    const double thr = tol_cluster * std::max(a.norm(), DBL_MIN);
    const int n = static_cast<int>(out.eigenvalues.size());
    for (int i = 0; i < n;) {
        int j = i;
        while (j + 1 < n && out.eigenvalues[j + 1] - out.eigenvalues[j] < thr) ++j;
        if (j > i) out.clusters.emplace_back(i, j);
        i = j + 1;
    }
    return out;
}

LinearSolveResult solve_linear(const ComplexMatrix& a, const ComplexMatrix& b,
                               double kappa_floor) {
    require_square(a, "solve_linear");
    if (b.rows() != a.rows())
        throw DimensionMismatch("solve_linear: rhs has " + std::to_string(b.rows()) +
                                " rows, matrix has " + std::to_string(a.rows()));

    Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    const double smax = s.size() ? s(0) : 0.0;
    const double smin = s.size() ? s(s.size() - 1) : 0.0;
    if (smax == 0.0 || smin < kappa_floor * smax)
        throw SingularMatrix("solve_linear: sigma_min/sigma_max = " +
                             std::to_string(smax == 0.0 ? 0.0 : smin / smax) +
                             " below floor " + std::to_string(kappa_floor));

    LinearSolveResult out;
    out.x = svd.solve(b);
    out.rcond = smin / smax;
    return out;
}

ComplexMatrix unitary_exp(const ComplexMatrix& h, double t, double tol_herm) {
    const HermitianEigenResult eig = eigh(h, tol_herm);
    const Eigen::Index n = h.rows();
    ComplexVector phases(n);
    for (Eigen::Index k = 0; k < n; ++k)
        phases(k) = std::exp(Complex(0.0, -eig.eigenvalues(k) * t));
    return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

ComplexMatrix sylvester_solve(const ComplexMatrix& a, const ComplexMatrix& b,
                              const ComplexMatrix& c, double gap_min) {
    require_square(a, "sylvester_solve A");
    require_square(b, "sylvester_solve B");
    if (c.rows() != a.rows() || c.cols() != b.rows())
        throw DimensionMismatch("sylvester_solve: C is " + std::to_string(c.rows()) +
                                "x" + std::to_string(c.cols()) + ", expected " +
                                std::to_string(a.rows()) + "x" + std::to_string(b.rows()));

    Eigen::ComplexSchur<ComplexMatrix> sa(a);
    Eigen::ComplexSchur<ComplexMatrix> sb(b);
    if (sa.info() != Eigen::Success || sb.info() != Eigen::Success)
        throw ConvergenceFailure("sylvester_solve: Schur reduction did not converge");

    const ComplexMatrix& ta = sa.matrixT();
    const ComplexMatrix& tb = sb.matrixT();
    const Eigen::Index m = a.rows();
    const Eigen::Index n = b.rows();

    // The triangular sweep divides by (alpha - beta) pairs, so a spectral gap
    // is a hard precondition, not a quality hint.
    double min_gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            min_gap = std::min(min_gap, std::abs(ta(i, i) - tb(j, j)));
    if (min_gap < gap_min * (a.norm() + b.norm()))
        throw SpectraOverlap("sylvester_solve: spectral gap " + std::to_string(min_gap) +
                             " below threshold " +
                             std::to_string(gap_min * (a.norm() + b.norm())));

    // T_A Y - Y T_B = D, swept column by column: with T_B upper triangular,
    // (T_A - T_B(j,j) I) y_j = d_j + sum_{k<j} T_B(k,j) y_k.
    const ComplexMatrix d = sa.matrixU().adjoint() * c * sb.matrixU();
    ComplexMatrix y(m, n);
    ComplexMatrix shifted(m, m);
    for (Eigen::Index j = 0; j < n; ++j) {
        ComplexVector rhs = d.col(j);
        for (Eigen::Index k = 0; k < j; ++k) rhs += tb(k, j) * y.col(k);
        shifted = ta;
        shifted.diagonal().array() -= tb(j, j);
        y.col(j) = shifted.triangularView<Eigen::Upper>().solve(rhs);
    }
    return sa.matrixU() * y * sb.matrixU().adjoint();
}

double smallest_singular_value(const ComplexMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    // Gram-matrix route: sqrt of the smallest eigenvalue of A'A, using the
    // smaller Gram factor for wide inputs.
    const ComplexMatrix gram = (a.rows() >= a.cols())
                                   ? ComplexMatrix(a.adjoint() * a)
                                   : ComplexMatrix(a * a.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (gram + gram.adjoint()));
    if (solver.info() != Eigen::Success)
        throw ConvergenceFailure("smallest_singular_value: eigendecomposition failed");
    return std::sqrt(std::max(solver.eigenvalues()(0), 0.0));
}

}  // namespace qric
