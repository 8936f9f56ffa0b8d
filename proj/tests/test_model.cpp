#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "qric/errors.hpp"
#include "qric/model.hpp"
#include "qric/numerics.hpp"
#include "qric/rng.hpp"

using namespace qric;

namespace {

Matrix2c sigma_z() {
    Matrix2c m;
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

Matrix2c sigma_x() {
    Matrix2c m;
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

// Assembles h_q (x) I + I (x) h_env + sum A_i (x) B_i with the independent
// index-arithmetic Kronecker product.
ComplexMatrix assemble_total(const Matrix2c& h_q, const ComplexMatrix& h_env,
                             const std::vector<SystemTerm>& terms) {
    const int n = static_cast<int>(h_env.rows());
    ComplexMatrix total =
        oracles::kron_indexed(h_q, ComplexMatrix::Identity(n, n)) +
        oracles::kron_indexed(ComplexMatrix::Identity(2, 2), h_env);
    for (const SystemTerm& t : terms) total += oracles::kron_indexed(t.qubit, t.env);
    return total;
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("from_system_terms: sigma_z bias and coupling land on the diagonal blocks") {
    const double beta = 0.7;
    StreamRng rng(20, "model/sz");
    const ComplexMatrix h_env = rng.hermitian_gaussian_matrix(4);
    const ComplexMatrix coupling_env = rng.hermitian_gaussian_matrix(4);
    const BlockHamiltonian h = from_system_terms(
        beta * sigma_z(), h_env, {{sigma_z(), coupling_env}});
    const ComplexMatrix id = ComplexMatrix::Identity(4, 4);
    CHECK((h.h_plus - (h_env + coupling_env + beta * id)).norm() <= 1e-14);
    CHECK((h.h_minus - (h_env - coupling_env - beta * id)).norm() <= 1e-14);
    CHECK(h.v.norm() <= 1e-14);
}

TEST_CASE("from_system_terms: sigma_x tunneling gives v = alpha I") {
    const double alpha = 0.3;
    StreamRng rng(21, "model/sx");
    const ComplexMatrix h_env = rng.hermitian_gaussian_matrix(3);
    const BlockHamiltonian h = from_system_terms(alpha * sigma_x(), h_env, {});
    CHECK((h.v - alpha * ComplexMatrix::Identity(3, 3)).norm() <= 1e-14);
}

TEST_CASE("from_system_terms: full() equals the Kronecker assembly") {
    StreamRng rng(22, "model/kron");
    const Matrix2c h_q = 0.4 * sigma_z() + 0.9 * sigma_x();
    const ComplexMatrix h_env = rng.hermitian_gaussian_matrix(5);
    const std::vector<SystemTerm> terms{{sigma_z(), rng.hermitian_gaussian_matrix(5)},
                                        {sigma_x(), rng.hermitian_gaussian_matrix(5)}};
    const BlockHamiltonian h = from_system_terms(h_q, h_env, terms);
    CHECK((h.full() - assemble_total(h_q, h_env, terms)).norm() <= 1e-13);
}

TEST_CASE("from_system_terms: rejects a non-Hermitian assembly") {
    StreamRng rng(23, "model/nonherm");
    ComplexMatrix bad = rng.complex_gaussian_matrix(3, 3);  // generic, not Hermitian
    CHECK_THROWS_AS(
        from_system_terms(sigma_z(), ComplexMatrix::Identity(3, 3), {{sigma_z(), bad}}),
        NotHermitian);
}

TEST_CASE("from_system_terms: rejects mismatched environment dimensions") {
    StreamRng rng(24, "model/dim");
    CHECK_THROWS_AS(from_system_terms(sigma_z(), ComplexMatrix::Identity(3, 3),
                                      {{sigma_z(), ComplexMatrix::Identity(4, 4)}}),
                    DimensionMismatch);
}

TEST_CASE("annihilation operator entries and truncation") {
    const ComplexMatrix a = annihilation_operator(4);
    CHECK(std::abs(a(0, 1) - 1.0) <= 1e-15);
    CHECK(std::abs(a(1, 2) - std::sqrt(2.0)) <= 1e-15);
    CHECK(std::abs(a(2, 3) - std::sqrt(3.0)) <= 1e-15);
    CHECK(a.diagonal().norm() == 0.0);
}

TEST_CASE("parity operator: alternating signs, involution, anticommutation") {
    const ComplexMatrix p4 = parity_operator(4);
    for (int i = 0; i < 4; ++i)
        CHECK(std::abs(p4(i, i) - (i % 2 == 0 ? 1.0 : -1.0)) <= 1e-15);

    const ComplexMatrix p7 = parity_operator(7);
    CHECK((p7 * p7 - ComplexMatrix::Identity(7, 7)).norm() == 0.0);

    const ComplexMatrix a = annihilation_operator(10);
    const ComplexMatrix p10 = parity_operator(10);
    CHECK((p10 * a * p10 + a).norm() == 0.0);
}

TEST_CASE("build_spin_boson: free boson at g = 0") {
    SpinBosonParams p;
    p.n_env = 3;
    p.g = 0.0;
    const SpinBosonSystem sys = build_spin_boson(p);
    ComplexMatrix expected = ComplexMatrix::Zero(3, 3);
    expected(1, 1) = 1.0;
    expected(2, 2) = 2.0;
    CHECK((sys.h.h_plus - expected).norm() <= 1e-15);
    CHECK((sys.h.h_minus - expected).norm() <= 1e-15);
    CHECK(sys.h.v.norm() == 0.0);
}

TEST_CASE("build_spin_boson: real coupling fills the oscillator off-diagonal") {
    SpinBosonParams p;
    p.n_env = 3;
    p.g = 1.0;
    const SpinBosonSystem sys = build_spin_boson(p);
    CHECK(std::abs(sys.h.h_plus(0, 1) - 1.0) <= 1e-15);
    CHECK(std::abs(sys.h.h_plus(1, 2) - std::sqrt(2.0)) <= 1e-15);
}

TEST_CASE("build_spin_boson: pure dephasing has no off-diagonal block") {
    SpinBosonParams p;
    p.n_env = 8;
    p.g = 0.4;
    p.alpha = 0.0;
    p.beta = 0.0;
    CHECK(build_spin_boson(p).h.v.norm() == 0.0);
}

TEST_CASE("build_spin_boson: parity conjugation swaps the diagonal blocks at beta = 0") {
    SpinBosonParams p;
    p.n_env = 12;
    p.g = Complex(0.3, 0.1);
    p.alpha = 0.6;
    const SpinBosonSystem sys = build_spin_boson(p);
    const ComplexMatrix& P = sys.env.parity;
    CHECK((P * sys.h.h_plus * P - sys.h.h_minus).norm() == 0.0);
    CHECK((P * sys.h.h_minus * P - sys.h.h_plus).norm() == 0.0);
}

TEST_CASE("build_spin_boson: environment operator bookkeeping") {
    SpinBosonParams p;
    p.n_env = 6;
    p.omega = 1.7;
    const SpinBosonSystem sys = build_spin_boson(p);
    CHECK((sys.env.a - annihilation_operator(6)).norm() == 0.0);
    CHECK((sys.env.a_dag - annihilation_operator(6).adjoint()).norm() == 0.0);
    CHECK((sys.env.h_env - 1.7 * (sys.env.a_dag * sys.env.a)).norm() <= 1e-14);
}

TEST_CASE("build_spin_boson: rejects invalid parameters") {
    SpinBosonParams bad_omega;
    bad_omega.omega = -1.0;
    CHECK_THROWS_AS(build_spin_boson(bad_omega), InvalidArgument);
    SpinBosonParams bad_dim;
    bad_dim.n_env = 1;
    CHECK_THROWS_AS(build_spin_boson(bad_dim), InvalidArgument);
}

TEST_CASE("build_commuting: one-dimensional instance assembles exactly") {
    CommutingParams p;
    p.lambdas = RealVector::Zero(1);
    p.xis = RealVector::Constant(1, 3.0);
    p.alpha = 4.0;
    const BlockHamiltonian h = build_commuting(p);
    ComplexMatrix expected(2, 2);
    expected << 3.0, 4.0, 4.0, -3.0;
    CHECK((h.full() - expected).norm() <= 1e-15);
}

TEST_CASE("build_commuting: default basis keeps the blocks diagonal") {
    CommutingParams p;
    p.lambdas = RealVector::LinSpaced(4, 0.0, 3.0);
    p.xis = RealVector::LinSpaced(4, 1.0, 2.5);
    const BlockHamiltonian h = build_commuting(p);
    CHECK((h.h_plus - ComplexMatrix(h.h_plus.diagonal().asDiagonal())).norm() == 0.0);
    CHECK((h.h_minus - ComplexMatrix(h.h_minus.diagonal().asDiagonal())).norm() == 0.0);
    CHECK((h.h_plus * h.h_minus - h.h_minus * h.h_plus).norm() == 0.0);
}

TEST_CASE("build_commuting: rotated basis preserves the spectra") {
    const int n = 5;
    StreamRng rng(25, "model/rot");
    // Unitary factor from the spectral decomposition of a random Hermitian.
    const ComplexMatrix r = eigh(rng.hermitian_gaussian_matrix(n)).eigenvectors;
    CommutingParams p;
    p.lambdas = RealVector::LinSpaced(n, -1.0, 1.0);
    p.xis = RealVector::LinSpaced(n, 0.5, 2.5);
    p.alpha = 0.8;
    p.basis_rotation = r;
    const BlockHamiltonian h = build_commuting(p);
    const RealVector spect = eigh(h.h_plus).eigenvalues;
    RealVector expected = p.lambdas + p.xis;
    std::sort(expected.begin(), expected.end());
    CHECK((spect - expected).norm() <= 1e-10);
    CHECK((h.h_plus * h.h_minus - h.h_minus * h.h_plus).norm() <= 1e-12);
}

TEST_CASE("build_commuting: rejects degenerate splittings and bad parameters") {
    CommutingParams dup;
    dup.lambdas = RealVector::Zero(2);
    dup.xis = RealVector::Constant(2, 1.0);  // coinciding splittings
    CHECK_THROWS_AS(build_commuting(dup), DegenerateSpectrum);

    CommutingParams zero_alpha;
    zero_alpha.lambdas = RealVector::Zero(2);
    zero_alpha.xis = RealVector::LinSpaced(2, 1.0, 2.0);
    zero_alpha.alpha = 0.0;
    CHECK_THROWS_AS(build_commuting(zero_alpha), InvalidArgument);

    CommutingParams mismatched;
    mismatched.lambdas = RealVector::Zero(3);
    mismatched.xis = RealVector::LinSpaced(2, 1.0, 2.0);
    CHECK_THROWS_AS(build_commuting(mismatched), InvalidArgument);

    CommutingParams bad_rotation;
    bad_rotation.lambdas = RealVector::Zero(2);
    bad_rotation.xis = RealVector::LinSpaced(2, 1.0, 2.0);
    bad_rotation.basis_rotation = 2.0 * ComplexMatrix::Identity(2, 2);
    CHECK_THROWS_AS(build_commuting(bad_rotation), InvalidArgument);
}

TEST_CASE("builders: full() is Hermitian for random parameters") {
    for (int trial = 0; trial < 5; ++trial) {
        StreamRng rng(26, "model/herm" + std::to_string(trial));
        SpinBosonParams p;
        p.n_env = 5 + trial;
        p.g = rng.complex_normal();
        p.alpha = rng.normal();
        p.beta = rng.normal();
        const ComplexMatrix full = build_spin_boson(p).h.full();
        CHECK((full - full.adjoint()).norm() <= 1e-12 * std::max(1.0, full.norm()));
    }
}

TEST_CASE("from_blocks: validates shapes and Hermiticity") {
    StreamRng rng(27, "model/blocks");
    const ComplexMatrix herm = rng.hermitian_gaussian_matrix(3);
    const ComplexMatrix v = rng.complex_gaussian_matrix(3, 3);
    const BlockHamiltonian h = from_blocks(herm, herm, v);
    CHECK(h.n_env == 3);
    CHECK(h.kind == ModelKind::generic);

    CHECK_THROWS_AS(from_blocks(rng.complex_gaussian_matrix(3, 3), herm, v), NotHermitian);
    CHECK_THROWS_AS(from_blocks(herm, rng.hermitian_gaussian_matrix(4), v),
                    DimensionMismatch);
}

}  // TEST_SUITE
