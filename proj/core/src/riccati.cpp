#include "qric/riccati.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "qric/errors.hpp"
#include "qric/numerics.hpp"

namespace qric {

std::string to_string(SolveMethod m) {
    switch (m) {
        case SolveMethod::invariant_subspace: return "invariant_subspace";
        case SolveMethod::newton: return "newton";
        case SolveMethod::analytic_parity: return "analytic_parity";
        case SolveMethod::analytic_f: return "analytic_f";
        case SolveMethod::sylvester_zero: return "sylvester_zero";
        case SolveMethod::analytic_pm_identity: return "analytic_pm_identity";
    }
    throw InvalidArgument("to_string: bad SolveMethod");
}

std::string to_string(SelectionStrategy s) {
    switch (s) {
        case SelectionStrategy::spectral_bottom: return "spectral_bottom";
        case SelectionStrategy::max_invertibility: return "max_invertibility";
        case SelectionStrategy::exhaustive: return "exhaustive";
    }
    throw InvalidArgument("to_string: bad SelectionStrategy");
}

SelectionStrategy strategy_from_string(const std::string& s) {
    if (s == "spectral_bottom") return SelectionStrategy::spectral_bottom;
    if (s == "max_invertibility") return SelectionStrategy::max_invertibility;
    if (s == "exhaustive") return SelectionStrategy::exhaustive;
    throw InvalidArgument("unknown selection strategy: " + s);
}

ComplexMatrix residual_primal(const BlockHamiltonian& h, const ComplexMatrix& x) {
    if (x.rows() != h.n_env || x.cols() != h.n_env)
        throw DimensionMismatch("residual_primal: x must be N x N");
    return x * h.v * x + x * h.h_plus - h.h_minus * x - h.v.adjoint();
}

ComplexMatrix residual_dual(const BlockHamiltonian& h, const ComplexMatrix& y) {
    if (y.rows() != h.n_env || y.cols() != h.n_env)
        throw DimensionMismatch("residual_dual: y must be N x N");
    return y * h.v.adjoint() * y + y * h.h_minus - h.h_plus * y - h.v;
}

RiccatiSolution make_solution(const BlockHamiltonian& h, ComplexMatrix x,
                              SolveMethod method,
                              std::optional<std::vector<int>> selection) {
    RiccatiSolution sol;
    sol.residual_primal = residual_primal(h, x).norm();
    sol.residual_dual = residual_dual(h, ComplexMatrix(-x.adjoint())).norm();
    sol.x = std::move(x);
    sol.method = method;
    sol.selection = std::move(selection);
    return sol;
}

namespace {

// X = W2 W1^{-1}, computed as the solution of W1' X' = W2' so no explicit
// inverse is formed.
ComplexMatrix graph_coordinates(const ComplexMatrix& w1, const ComplexMatrix& w2,
                                double kappa_floor) {
    return solve_linear(w1.transpose(), w2.transpose(), kappa_floor)
        .x.transpose();
}

bool splits_cluster(const std::vector<int>& indices,
                    const std::vector<std::pair<int, int>>& clusters) {
    for (const auto& [a, b] : clusters) {
        int inside = 0;
        for (const int i : indices)
            if (i >= a && i <= b) ++inside;
        if (inside > 0 && inside < b - a + 1) return true;
    }
    return false;
}

struct SubspaceCandidate {
    bool invertible = false;
    RiccatiSolution solution;
};

SubspaceCandidate candidate_from_indices(const BlockHamiltonian& h,
                                         const HermitianEigenResult& eig,
                                         const std::vector<int>& indices,
                                         const Tolerances& tol) {
    const int n = h.n_env;
    ComplexMatrix w1(n, n), w2(n, n);
    for (int k = 0; k < n; ++k) {
        w1.col(k) = eig.eigenvectors.col(indices[k]).head(n);
        w2.col(k) = eig.eigenvectors.col(indices[k]).tail(n);
    }
    SubspaceCandidate out;
    if (smallest_singular_value(w1) < tol.w1_floor) return out;
    out.invertible = true;
    out.solution = make_solution(h, graph_coordinates(w1, w2, tol.kappa_floor),
                                 SolveMethod::invariant_subspace, indices);
    out.solution.cluster_split = splits_cluster(indices, eig.clusters);
    return out;
}

std::vector<int> greedy_max_invertibility(const BlockHamiltonian& h,
                                          const HermitianEigenResult& eig) {
    const int n = h.n_env;
    const int total = 2 * n;
    std::vector<int> chosen;
    std::vector<bool> used(total, false);
    ComplexMatrix w1(n, 0);
    for (int step = 0; step < n; ++step) {
        int best = -1;
        double best_sigma = -1.0;
        ComplexMatrix trial(n, step + 1);
        trial.leftCols(step) = w1;
        for (int i = 0; i < total; ++i) {
            if (used[i]) continue;
            trial.col(step) = eig.eigenvectors.col(i).head(n);
            const double sigma = smallest_singular_value(trial);
            // Strict improvement keeps the first (lowest-eigenvalue, lowest-
            // index) maximizer on ties.
            if (sigma > best_sigma) {
                best_sigma = sigma;
                best = i;
            }
        }
        chosen.push_back(best);
        used[best] = true;
        ComplexMatrix grown(n, step + 1);
        grown.leftCols(step) = w1;
        grown.col(step) = eig.eigenvectors.col(best).head(n);
        w1 = std::move(grown);
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

// Subset enumeration in lexicographic order: {0..n-1}, then advance the
// rightmost index that can move.
bool next_combination(std::vector<int>& c, int total) {
    const int n = static_cast<int>(c.size());
    for (int i = n - 1; i >= 0; --i) {
        if (c[i] < total - (n - i)) {
            ++c[i];
            for (int j = i + 1; j < n; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace

std::vector<RiccatiSolution> solve_invariant_subspace(const BlockHamiltonian& h,
                                                      SelectionStrategy strategy,
                                                      const Tolerances& tol) {
    const int n = h.n_env;
    const double accept = tol.acc_abs(h.norm());
    const HermitianEigenResult eig =
        eigh(h.full(), tol.tol_herm, tol.tol_cluster);

    std::vector<RiccatiSolution> accepted;
    int attempted = 0;
    int invertible = 0;

    auto consider = [&](const std::vector<int>& indices) {
        ++attempted;
        SubspaceCandidate cand = candidate_from_indices(h, eig, indices, tol);
        if (!cand.invertible) return;
        ++invertible;
        if (cand.solution.residual_primal > accept) return;
        for (const RiccatiSolution& seen : accepted)
            if ((seen.x - cand.solution.x).norm() <= tol.dedup) return;
        accepted.push_back(std::move(cand.solution));
    };

    switch (strategy) {
        case SelectionStrategy::spectral_bottom: {
            std::vector<int> indices(n);
            for (int i = 0; i < n; ++i) indices[i] = i;
            consider(indices);
            break;
        }
        case SelectionStrategy::max_invertibility:
            consider(greedy_max_invertibility(h, eig));
            break;
        case SelectionStrategy::exhaustive: {
            if (n > 6)
                throw InvalidArgument(
                    "solve_invariant_subspace: exhaustive enumeration is limited to N <= 6");
            std::vector<int> indices(n);
            for (int i = 0; i < n; ++i) indices[i] = i;
            do {
                consider(indices);
            } while (next_combination(indices, 2 * n));
            break;
        }
    }

    if (invertible == 0)
        throw NoInvertibleSelection("solve_invariant_subspace: all " +
                                    std::to_string(attempted) +
                                    " selections have sigma_min(W1) below the floor");
    return accepted;
}

RiccatiSolution solve_with_selection(const BlockHamiltonian& h,
                                     const std::vector<int>& indices,
                                     const Tolerances& tol) {
    const int n = h.n_env;
    if (static_cast<int>(indices.size()) != n)
        throw InvalidArgument("solve_with_selection: need exactly N eigenindices");
    std::vector<int> sorted = indices;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
        sorted.front() < 0 || sorted.back() >= 2 * n)
        throw InvalidArgument("solve_with_selection: eigenindices must be distinct and in [0, 2N)");

    const HermitianEigenResult eig = eigh(h.full(), tol.tol_herm, tol.tol_cluster);
    SubspaceCandidate cand = candidate_from_indices(h, eig, sorted, tol);
    if (!cand.invertible)
        throw NoInvertibleSelection(
            "solve_with_selection: sigma_min(W1) below the floor for this selection");
    return cand.solution;
}

RiccatiSolution solve_newton(const BlockHamiltonian& h, const ComplexMatrix& x0,
                             int max_iter, double tol_res, const Tolerances& tol) {
    if (x0.rows() != h.n_env || x0.cols() != h.n_env)
        throw DimensionMismatch("solve_newton: x0 must be N x N");
    // Default stop: residuals this small sit at the double-precision floor
    // for the instance scale, so demanding less buys nothing.
    const double stop = tol_res > 0.0 ? tol_res : 1e-12 * std::max(1.0, h.norm());

    ComplexMatrix x = x0;
    std::vector<double> history{residual_primal(h, x).norm()};

    for (int k = 0; k < max_iter && history.back() > stop; ++k) {
        const ComplexMatrix a = h.h_minus - x * h.v;
        const ComplexMatrix b = h.h_plus + h.v * x;
        const ComplexMatrix step =
            sylvester_solve(a, b, residual_primal(h, x), tol.gap_min);
        x += step;
        history.push_back(residual_primal(h, x).norm());
    }
    if (history.back() > stop)
        throw MaxIterExceeded("solve_newton: residual " + std::to_string(history.back()) +
                              " after " + std::to_string(max_iter) + " iterations");

    RiccatiSolution sol = make_solution(h, std::move(x), SolveMethod::newton);
    sol.residual_history = std::move(history);
    return sol;
}

RiccatiSolution solve_newton(const BlockHamiltonian& h, int max_iter, double tol_res,
                             const Tolerances& tol) {
    return solve_newton(h, ComplexMatrix::Zero(h.n_env, h.n_env), max_iter, tol_res, tol);
}

namespace {

// Relative scale for the structural model checks below.
double structure_scale(const BlockHamiltonian& h) { return std::max(h.norm(), 1.0); }

// v = c I for a real scalar c (returned through `alpha`)?
bool is_real_scalar_identity(const ComplexMatrix& v, double tol_abs, double& alpha) {
    const Complex c = v(0, 0);
    if (std::abs(c.imag()) > tol_abs) return false;
    const ComplexMatrix delta =
        v - c * ComplexMatrix::Identity(v.rows(), v.cols());
    if (delta.norm() > tol_abs) return false;
    alpha = c.real();
    return true;
}

}  // namespace

std::vector<RiccatiSolution> analytic_solutions(const BlockHamiltonian& h,
                                                ModelKind model_tag,
                                                const Tolerances& tol) {
    const int n = h.n_env;
    const double tol_abs = tol.tol_herm * structure_scale(h);
    std::vector<RiccatiSolution> out;

    switch (model_tag) {
        case ModelKind::spin_boson: {
            // X = P needs v to be a real multiple of the identity and the
            // parity conjugation to swap the diagonal blocks (the unbiased
            // case); both are checked on the matrices, not the label.
            double alpha = 0.0;
            const ComplexMatrix p = parity_operator(n);
            if (!is_real_scalar_identity(h.v, tol_abs, alpha) ||
                (p * h.h_plus * p - h.h_minus).norm() > tol_abs)
                throw WrongModel(
                    "analytic_solutions: not an unbiased spin-boson block structure");
            out.push_back(make_solution(h, p, SolveMethod::analytic_parity));
            break;
        }
        case ModelKind::commuting: {
            double alpha = 0.0;
            if (!is_real_scalar_identity(h.v, tol_abs, alpha) || alpha == 0.0)
                throw WrongModel("analytic_solutions: coupling block is not alpha * I");
            const ComplexMatrix h0 = 0.5 * (h.h_plus + h.h_minus);
            const ComplexMatrix h1 = 0.5 * (h.h_plus - h.h_minus);
            if ((h0 * h1 - h1 * h0).norm() > tol_abs * structure_scale(h))
                throw WrongModel("analytic_solutions: diagonal blocks do not commute");
            // f(H1) via the spectral decomposition, f(x) = (sqrt(x^2+a^2)-x)/a.
            const HermitianEigenResult eig = eigh(h1, tol.tol_herm, tol.tol_cluster);
            RealVector f(n);
            for (int i = 0; i < n; ++i) {
                const double xi = eig.eigenvalues(i);
                f(i) = (std::sqrt(xi * xi + alpha * alpha) - xi) / alpha;
            }
            const ComplexMatrix x = eig.eigenvectors *
                                    f.cast<Complex>().asDiagonal() *
                                    eig.eigenvectors.adjoint();
            out.push_back(make_solution(h, x, SolveMethod::analytic_f));
            break;
        }
        case ModelKind::equal_diagonal: {
            if ((h.h_plus - h.h_minus).norm() > tol_abs ||
                (h.v - h.v.adjoint()).norm() > tol_abs)
                throw WrongModel(
                    "analytic_solutions: needs equal diagonal blocks and Hermitian v");
            const ComplexMatrix id = ComplexMatrix::Identity(n, n);
            out.push_back(make_solution(h, id, SolveMethod::analytic_pm_identity));
            out.push_back(make_solution(h, -id, SolveMethod::analytic_pm_identity));
            break;
        }
        case ModelKind::v_zero: {
            if (h.v.norm() > tol_abs)
                throw WrongModel("analytic_solutions: coupling block is not zero");
            out.push_back(make_solution(h, ComplexMatrix::Zero(n, n),
                                        SolveMethod::sylvester_zero));
            break;
        }
        case ModelKind::generic:
            throw WrongModel("analytic_solutions: no closed form for a generic model");
    }
    return out;
}

}  // namespace qric
