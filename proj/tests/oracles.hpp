// Independent reference implementations used only to cross-check the library.
// Each one deliberately avoids the code path it certifies: the evolution
// oracle uses a Taylor series instead of the spectral decomposition, the
// Sylvester oracle solves the vectorized dense system, and the tensor-product
// helpers use explicit index arithmetic.
#pragma once

#include <Eigen/LU>
#include <complex>

#include "qric/matrix.hpp"

namespace oracles {

using qric::Complex;
using qric::ComplexMatrix;

// exp(-i H t) by scaling-and-squaring on the plain Taylor series.
inline ComplexMatrix expm_taylor(const ComplexMatrix& h, double t) {
    const int n = static_cast<int>(h.rows());
    ComplexMatrix a = Complex(0.0, -t) * h;
    int squarings = 0;
    while (a.norm() > 0.5) {
        a *= 0.5;
        ++squarings;
    }
    ComplexMatrix sum = ComplexMatrix::Identity(n, n);
    ComplexMatrix term = ComplexMatrix::Identity(n, n);
    for (int k = 1; k <= 40; ++k) {
        term = term * a / static_cast<double>(k);
        sum += term;
        if (term.norm() < 1e-18) break;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum;
}

// Explicit index-arithmetic Kronecker product.
inline ComplexMatrix kron_indexed(const ComplexMatrix& a, const ComplexMatrix& b) {
    const int am = static_cast<int>(a.rows()), an = static_cast<int>(a.cols());
    const int bm = static_cast<int>(b.rows()), bn = static_cast<int>(b.cols());
    ComplexMatrix out(am * bm, an * bn);
    for (int i = 0; i < am; ++i)
        for (int j = 0; j < an; ++j)
            for (int k = 0; k < bm; ++k)
                for (int l = 0; l < bn; ++l) out(i * bm + k, j * bn + l) = a(i, j) * b(k, l);
    return out;
}

// Partial trace over the environment by index summation: with the qubit as
// the leading factor, row index (i, k) maps to i*N + k.
inline Eigen::Matrix2cd partial_trace_indexed(const ComplexMatrix& m) {
    const int n = static_cast<int>(m.rows()) / 2;
    Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < n; ++k) out(i, j) += m(i * n + k, j * n + k);
    return out;
}

// A Delta - Delta B = C solved as the (m n) x (m n) dense linear system
// (I (x) A - B^T (x) I) vec(Delta) = vec(C), column-major vec.
inline ComplexMatrix sylvester_vectorized(const ComplexMatrix& a, const ComplexMatrix& b,
                                          const ComplexMatrix& c) {
    const int m = static_cast<int>(a.rows());
    const int n = static_cast<int>(b.rows());
    const ComplexMatrix im = ComplexMatrix::Identity(m, m);
    const ComplexMatrix in = ComplexMatrix::Identity(n, n);
    const ComplexMatrix system =
        kron_indexed(in, a) - kron_indexed(b.transpose(), im);
    Eigen::VectorXcd rhs(m * n);
    for (int j = 0; j < n; ++j) rhs.segment(static_cast<Eigen::Index>(j) * m, m) = c.col(j);
    const Eigen::VectorXcd x = system.partialPivLu().solve(rhs);
    ComplexMatrix delta(m, n);
    for (int j = 0; j < n; ++j) delta.col(j) = x.segment(static_cast<Eigen::Index>(j) * m, m);
    return delta;
}

}  // namespace oracles
