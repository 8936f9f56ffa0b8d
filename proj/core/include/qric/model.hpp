#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qric/matrix.hpp"

namespace qric {

// Which constructor produced a block Hamiltonian. Downstream code uses this to
// pick a closed-form Riccati solution when one exists; `generic` promises no
// structure.
enum class ModelKind { generic, spin_boson, commuting, equal_diagonal, v_zero };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& s);

// Two-by-two block operator matrix
//
//     H = [ h_plus   v       ]
//         [ v'       h_minus ]
//
// with h_plus, h_minus Hermitian and all blocks n_env x n_env. Stored
// blockwise; full() assembles the 2N x 2N matrix (Hermitian by construction).
struct BlockHamiltonian {
    int n_env = 0;
    ComplexMatrix h_plus;
    ComplexMatrix h_minus;
    ComplexMatrix v;
    ModelKind kind = ModelKind::generic;

    ComplexMatrix full() const;
    double norm() const;  // Frobenius norm of full()
};

// Validates dimensions and Hermiticity of the diagonal blocks (relative
// tol_herm per block) before assembling the struct.
BlockHamiltonian from_blocks(const ComplexMatrix& h_plus, const ComplexMatrix& h_minus,
                             const ComplexMatrix& v, double tol_herm = 1e-10,
                             ModelKind kind = ModelKind::generic);

// One qubit (x) environment coupling term A (x) B.
struct SystemTerm {
    Matrix2c qubit;      // A, 2x2
    ComplexMatrix env;   // B, N x N
};

// Block form of  h_q (x) I + I (x) h_env + sum_i A_i (x) B_i  in the qubit
// computational basis:
//   h_plus  = (h_q)_00 I + h_env + sum_i (A_i)_00 B_i
//   h_minus = (h_q)_11 I + h_env + sum_i (A_i)_11 B_i
//   v       = (h_q)_01 I +         sum_i (A_i)_01 B_i.
// Throws NotHermitian when the assembled total operator is not Hermitian,
// DimensionMismatch on inconsistent environment dimensions.
BlockHamiltonian from_system_terms(const Matrix2c& h_q, const ComplexMatrix& h_env,
                                   const std::vector<SystemTerm>& couplings,
                                   double tol_herm = 1e-10,
                                   ModelKind kind = ModelKind::generic);

// Truncated bosonic lowering operator: a[n-1][n] = sqrt(n), zero elsewhere.
ComplexMatrix annihilation_operator(int n);

// Bosonic parity (-1)^n on the truncated Fock space: diag(1, -1, 1, ...).
// Unitary, Hermitian, and anticommutes with the truncated a exactly.
ComplexMatrix parity_operator(int n);

// Environment operators of the spin-boson model, kept alongside the blocks
// for tests and diagnostics.
struct EnvOperatorSet {
    ComplexMatrix a;       // truncated annihilation
    ComplexMatrix a_dag;
    ComplexMatrix h_env;   // omega a'a
    ComplexMatrix parity;  // diag((-1)^n)
};

// Spin-boson model
//
//   H = beta sigma_z + alpha sigma_x   (qubit)
//     + omega a'a                      (environment)
//     + sigma_z (x) (conj(g) a + g a')
//
// truncated to n_env Fock states. Blockwise: h_plus/h_minus are oppositely
// displaced oscillators shifted by +-beta, and v = alpha I.
struct SpinBosonParams {
    int n_env = 16;      // Fock truncation, >= 2
    double omega = 1.0;  // oscillator frequency, > 0
    Complex g = 0.25;    // coupling amplitude
    double alpha = 0.0;  // sigma_x tunneling
    double beta = 0.0;   // sigma_z bias
};

struct SpinBosonSystem {
    BlockHamiltonian h;
    EnvOperatorSet env;
};

// Throws InvalidArgument when omega <= 0 or n_env < 2.
SpinBosonSystem build_spin_boson(const SpinBosonParams& p);

// Commuting-blocks model
//
//   h_plus = R (D0 + D1) R',  h_minus = R (D0 - D1) R',  v = alpha I
//
// with D0 = diag(lambdas), D1 = diag(xis) real and R unitary (identity when
// absent). All blocks commute and the Riccati equation decouples into one
// scalar quadratic per eigenline.
struct CommutingParams {
    RealVector lambdas;       // spectrum of the mean block
    RealVector xis;           // half-splittings, pairwise distinct
    double alpha = 0.5;       // nonzero coupling
    std::optional<ComplexMatrix> basis_rotation;  // unitary R
};

// Throws DegenerateSpectrum when two xis coincide, InvalidArgument when
// alpha == 0, the lists differ in length, or R is not unitary.
BlockHamiltonian build_commuting(const CommutingParams& p);

}  // namespace qric
