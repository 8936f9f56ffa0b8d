#include "qric/model.hpp"

#include <cmath>

#include "qric/errors.hpp"

namespace qric {

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::generic: return "generic";
        case ModelKind::spin_boson: return "spin_boson";
        case ModelKind::commuting: return "commuting";
        case ModelKind::equal_diagonal: return "equal_diagonal";
        case ModelKind::v_zero: return "v_zero";
    }
    throw InvalidArgument("to_string: bad ModelKind");
}

ModelKind model_kind_from_string(const std::string& s) {
    if (s == "generic") return ModelKind::generic;
    if (s == "spin_boson") return ModelKind::spin_boson;
    if (s == "commuting") return ModelKind::commuting;
    if (s == "equal_diagonal") return ModelKind::equal_diagonal;
    if (s == "v_zero") return ModelKind::v_zero;
    throw InvalidArgument("unknown model kind: " + s);
}

ComplexMatrix BlockHamiltonian::full() const {
    const int n = n_env;
    ComplexMatrix h(2 * n, 2 * n);
    h.topLeftCorner(n, n) = h_plus;
    h.topRightCorner(n, n) = v;
    h.bottomLeftCorner(n, n) = v.adjoint();
    h.bottomRightCorner(n, n) = h_minus;
    return h;
}

double BlockHamiltonian::norm() const { return full().norm(); }

BlockHamiltonian from_blocks(const ComplexMatrix& h_plus, const ComplexMatrix& h_minus,
                             const ComplexMatrix& v, double tol_herm, ModelKind kind) {
    const auto n = h_plus.rows();
    if (h_plus.cols() != n || h_minus.rows() != n || h_minus.cols() != n ||
        v.rows() != n || v.cols() != n)
        throw DimensionMismatch("from_blocks: blocks must all be N x N");
    if (!is_hermitian(h_plus, tol_herm))
        throw NotHermitian("from_blocks: h_plus is not Hermitian");
    if (!is_hermitian(h_minus, tol_herm))
        throw NotHermitian("from_blocks: h_minus is not Hermitian");
    return BlockHamiltonian{static_cast<int>(n), h_plus, h_minus, v, kind};
}

BlockHamiltonian from_system_terms(const Matrix2c& h_q, const ComplexMatrix& h_env,
                                   const std::vector<SystemTerm>& couplings,
                                   double tol_herm, ModelKind kind) {
    const auto n = h_env.rows();
    if (h_env.cols() != n)
        throw DimensionMismatch("from_system_terms: h_env must be square");
    for (const SystemTerm& term : couplings)
        if (term.env.rows() != n || term.env.cols() != n)
            throw DimensionMismatch("from_system_terms: coupling term dimension differs from h_env");

    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    ComplexMatrix h_plus = h_q(0, 0) * id + h_env;
    ComplexMatrix h_minus = h_q(1, 1) * id + h_env;
    ComplexMatrix v = h_q(0, 1) * id;
    for (const SystemTerm& term : couplings) {
        h_plus += term.qubit(0, 0) * term.env;
        h_minus += term.qubit(1, 1) * term.env;
        v += term.qubit(0, 1) * term.env;
    }

    // Hermiticity of the assembled total operator is exactly Hermiticity of
    // both diagonal blocks plus the (0,1)/(1,0) blocks being adjoints, and
    // the latter holds by construction only when each term's (1,0) entry is
    // the conjugate of its (0,1) entry acting on a Hermitian env factor --
    // so check the total directly instead of trusting the inputs.
    ComplexMatrix v_lower = std::conj(h_q(1, 0)) * id;
    for (const SystemTerm& term : couplings)
        v_lower += std::conj(term.qubit(1, 0)) * term.env.adjoint();
    const double scale = std::max({h_plus.norm(), h_minus.norm(), v.norm(), 1.0});
    if (!is_hermitian(h_plus, tol_herm) || !is_hermitian(h_minus, tol_herm) ||
        (v - v_lower).norm() > tol_herm * scale)
        throw NotHermitian("from_system_terms: assembled total operator is not Hermitian");

    return BlockHamiltonian{static_cast<int>(n), std::move(h_plus), std::move(h_minus),
                            std::move(v), kind};
}

ComplexMatrix annihilation_operator(int n) {
    if (n < 1) throw InvalidArgument("annihilation_operator: dimension must be >= 1");
    ComplexMatrix a = ComplexMatrix::Zero(n, n);
    for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    return a;
}

ComplexMatrix parity_operator(int n) {
    if (n < 1) throw InvalidArgument("parity_operator: dimension must be >= 1");
    ComplexMatrix p = ComplexMatrix::Zero(n, n);
    for (int k = 0; k < n; ++k) p(k, k) = (k % 2 == 0) ? 1.0 : -1.0;
    return p;
}

SpinBosonSystem build_spin_boson(const SpinBosonParams& p) {
    if (!(p.omega > 0.0)) throw InvalidArgument("spin_boson: omega must be > 0");
    if (p.n_env < 2) throw InvalidArgument("spin_boson: n_env must be >= 2");

    EnvOperatorSet env;
    env.a = annihilation_operator(p.n_env);
    env.a_dag = env.a.adjoint();
    env.h_env = p.omega * env.a_dag * env.a;
    env.parity = parity_operator(p.n_env);

    Matrix2c sigma_z;
    sigma_z << 1, 0, 0, -1;
    Matrix2c sigma_x;
    sigma_x << 0, 1, 1, 0;
    const Matrix2c h_q = p.beta * sigma_z + p.alpha * sigma_x;
    const ComplexMatrix displacement = std::conj(p.g) * env.a + p.g * env.a_dag;

    BlockHamiltonian h = from_system_terms(h_q, env.h_env, {{sigma_z, displacement}},
                                           1e-10, ModelKind::spin_boson);
    return SpinBosonSystem{std::move(h), std::move(env)};
}

BlockHamiltonian build_commuting(const CommutingParams& p) {
    const auto n = p.lambdas.size();
    if (n == 0 || p.xis.size() != n)
        throw InvalidArgument("commuting: lambdas and xis must be nonempty and equally long");
    if (p.alpha == 0.0) throw InvalidArgument("commuting: alpha must be nonzero");
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            if (p.xis(i) == p.xis(j))
                throw DegenerateSpectrum("commuting: xis must be pairwise distinct (entries " +
                                         std::to_string(i) + " and " + std::to_string(j) +
                                         " coincide)");

    ComplexMatrix d_plus = (p.lambdas + p.xis).cast<Complex>().asDiagonal();
    ComplexMatrix d_minus = (p.lambdas - p.xis).cast<Complex>().asDiagonal();
    ComplexMatrix h_plus = d_plus;
    ComplexMatrix h_minus = d_minus;
    if (p.basis_rotation) {
        const ComplexMatrix& r = *p.basis_rotation;
        if (r.rows() != n || r.cols() != n)
            throw DimensionMismatch("commuting: basis rotation must be N x N");
        if ((r.adjoint() * r - ComplexMatrix::Identity(n, n)).norm() > 1e-10 * std::sqrt(double(n)))
            throw InvalidArgument("commuting: basis rotation is not unitary");
        h_plus = r * d_plus * r.adjoint();
        h_minus = r * d_minus * r.adjoint();
    }
    const ComplexMatrix v = p.alpha * ComplexMatrix::Identity(n, n);
    return from_blocks(h_plus, h_minus, v, 1e-10, ModelKind::commuting);
}

}  // namespace qric
