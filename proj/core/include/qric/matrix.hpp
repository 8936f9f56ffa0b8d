#pragma once

#include <Eigen/Dense>
#include <complex>

#include "qric/errors.hpp"

namespace qric {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Matrix2c = Eigen::Matrix2cd;

// Elementwise comparison within an explicit tolerance. There is deliberately
// no operator== with hidden fuzz anywhere in this library.
inline bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    return ((a - b).cwiseAbs().array() <= tol).all();
}

inline double hermiticity_defect(const ComplexMatrix& a) {
    return (a - a.adjoint()).norm();
}

// ||A - A'|| <= tol * ||A||, with the zero matrix counting as Hermitian.
inline bool is_hermitian(const ComplexMatrix& a, double tol_rel) {
    if (a.rows() != a.cols()) return false;
    const double scale = a.norm();
    return hermiticity_defect(a) <= tol_rel * (scale > 0.0 ? scale : 1.0);
}

inline void require_square(const ComplexMatrix& a, const char* what) {
    if (a.rows() != a.cols())
        throw DimensionMismatch(std::string(what) + ": matrix is not square");
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

}  // namespace qric
