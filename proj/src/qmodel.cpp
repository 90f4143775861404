#include "qmodel.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace qc {

namespace {

MatR rho_matrix(const GramResult& gram, const VecR& stationary) {
    const long n = gram.g.rows();
    if (gram.g.cols() != n || stationary.size() != n)
        fail(ErrorCode::invalid_input, "quantum_memory: shape mismatch");
    if (std::abs(stationary.sum() - 1.0) > 1e-9)
        fail(ErrorCode::invalid_input, "quantum_memory: stationary weights must sum to 1");
    const VecR root = stationary.cwiseMax(0.0).cwiseSqrt();
    return root.asDiagonal() * gram.g * root.asDiagonal();
}

}  // namespace

GramResult gram_fixed_point(const EpsilonMachine& m, double tol, long max_iter) {
    if (!(tol > 0) || max_iter < 1) fail(ErrorCode::invalid_input, "gram_fixed_point: bad tolerance or budget");
    const long n = m.n_states;
    if (n < 1) fail(ErrorCode::invalid_input, "gram_fixed_point: empty machine");
    for (long j = 0; j < n; ++j) {
        if (std::abs(m.emission.row(j).sum() - 1.0) > 1e-9)
            fail(ErrorCode::invalid_input, "gram_fixed_point: emission row " + std::to_string(j) +
                                               " does not sum to 1");
        for (long r = 0; r < m.d; ++r)
            if (m.emission(j, r) > 0 && m.successor[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)] < 0)
                fail(ErrorCode::invalid_input, "gram_fixed_point: emitting transition without a successor");
    }

    GramResult out;
    out.g = MatR::Ones(n, n);
    MatR next(n, n);
    for (long it = 1; it <= max_iter; ++it) {
        next.setOnes();  // diagonal entries stay pinned at 1
        for (long j = 0; j < n; ++j) {
            for (long k = j + 1; k < n; ++k) {
                double acc = 0;
                for (long r = 0; r < m.d; ++r) {
                    const double ej = m.emission(j, r);
                    const double ek = m.emission(k, r);
                    if (ej <= 0 || ek <= 0) continue;
                    const long sj = m.successor[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)];
                    const long sk = m.successor[static_cast<std::size_t>(k)][static_cast<std::size_t>(r)];
                    acc += std::sqrt(ej * ek) * out.g(sj, sk);
                }
                acc = std::min(1.0, std::max(0.0, acc));
                next(j, k) = acc;
                next(k, j) = acc;
            }
        }
        const double change = (next - out.g).cwiseAbs().maxCoeff();
        out.g.swap(next);
        out.iterations = it;
        out.residual = change;
        out.residual_history.push_back(change);
        if (change <= tol) return out;
    }
    fail(ErrorCode::convergence, "gram_fixed_point: residual " + std::to_string(out.residual) +
                                     " after " + std::to_string(max_iter) + " iterations");
}

double quantum_memory(const GramResult& gram, const VecR& stationary) {
    const MatR rho = rho_matrix(gram, stationary);
    Eigen::SelfAdjointEigenSolver<MatR> es(rho);
    if (es.info() != Eigen::Success) fail(ErrorCode::internal, "quantum_memory: eigensolver failed");
    double h = 0;
    for (long i = 0; i < es.eigenvalues().size(); ++i) {
        const double mu = es.eigenvalues()(i);
        if (mu < -1e-10)
            fail(ErrorCode::invalid_input, "quantum_memory: Gram matrix is not positive semidefinite (eigenvalue " +
                                               std::to_string(mu) + ")");
        if (mu > 1e-14) h -= mu * std::log2(mu);
    }
    return h;
}

double gram_min_eigenvalue(const GramResult& gram) {
    Eigen::SelfAdjointEigenSolver<MatR> es(gram.g);
    if (es.info() != Eigen::Success) fail(ErrorCode::internal, "gram_min_eigenvalue: eigensolver failed");
    return es.eigenvalues()(0);
}

}  // namespace qc
