#include "tensor.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cstdio>
#include <vector>

namespace qc {

SvdResult svd_truncated(const MatC& m, long chi_max, double cutoff) {
    if (!m.allFinite()) fail(ErrorCode::invalid_input, "svd_truncated: non-finite input");
    if (chi_max < 1) fail(ErrorCode::invalid_input, "svd_truncated: chi_max must be >= 1");
    if (cutoff < 0.0) fail(ErrorCode::invalid_input, "svd_truncated: cutoff must be >= 0");

    // Jacobi is exact enough at any size we use; BDC is faster once the
    // matrices grow past the two-site update scale.
    MatC u_full;
    VecR s_full;
    MatC v_full;
    if (std::min(m.rows(), m.cols()) <= 32) {
        Eigen::JacobiSVD<MatC> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
        u_full = svd.matrixU();
        s_full = svd.singularValues();
        v_full = svd.matrixV();
    } else {
        Eigen::BDCSVD<MatC> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
        u_full = svd.matrixU();
        s_full = svd.singularValues();
        v_full = svd.matrixV();
    }

    const long full = s_full.size();
    long keep = 0;
    while (keep < full && keep < chi_max && s_full[keep] * s_full[keep] > cutoff) ++keep;
    if (keep == 0) fail(ErrorCode::degenerate, "svd_truncated: all singular values below cutoff");

    double discarded = 0.0;
    for (long i = keep; i < full; ++i) discarded += s_full[i] * s_full[i];

    SvdResult r;
    r.u = u_full.leftCols(keep);
    r.s = s_full.head(keep);
    r.v_adj = v_full.leftCols(keep).adjoint();
    r.truncation_error = discarded;
    return r;
}

EigResult hermitian_eigs(const MatC& m) {
    if (m.rows() != m.cols()) fail(ErrorCode::invalid_input, "hermitian_eigs: matrix not square");
    if (!m.allFinite()) fail(ErrorCode::invalid_input, "hermitian_eigs: non-finite input");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        fail(ErrorCode::invalid_input, "hermitian_eigs: matrix not Hermitian");

    Eigen::SelfAdjointEigenSolver<MatC> es(m);
    if (es.info() != Eigen::Success) fail(ErrorCode::internal, "hermitian_eigs: solver failed");
    return {es.eigenvalues(), es.eigenvectors()};
}

namespace {

// Ground eigenpair of a real symmetric tridiagonal matrix given its diagonal
// and off-diagonal entries.
void tridiag_ground(const std::vector<double>& alpha, const std::vector<double>& beta,
                    double& value, VecR& vec) {
    const long k = static_cast<long>(alpha.size());
    MatR t = MatR::Zero(k, k);
    for (long i = 0; i < k; ++i) {
        t(i, i) = alpha[static_cast<std::size_t>(i)];
        if (i + 1 < k) {
            t(i, i + 1) = beta[static_cast<std::size_t>(i)];
            t(i + 1, i) = beta[static_cast<std::size_t>(i)];
        }
    }
    Eigen::SelfAdjointEigenSolver<MatR> es(t);
    value = es.eigenvalues()(0);
    vec = es.eigenvectors().col(0);
}

// One body for both scalar types; complex stays the public entry point and
// the real instantiation serves dmrg's fast path.
template <typename Scalar, typename Result, typename Apply, typename Vec>
Result lanczos_core(const Apply& apply, long dim, const LanczosOptions& opts, const Vec& seed) {
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    if (dim < 1) fail(ErrorCode::invalid_input, "lanczos_ground: dim must be >= 1");
    if (seed.size() != dim) fail(ErrorCode::invalid_input, "lanczos_ground: seed dimension mismatch");
    const double seed_norm = seed.norm();
    if (!(seed_norm > 0.0) || !seed.allFinite())
        fail(ErrorCode::invalid_input, "lanczos_ground: zero or non-finite seed");

    Vec state = seed / seed_norm;
    Vec w(dim);
    double energy = 0.0;
    double residual = 0.0;
    long total_iters = 0;
    bool exhausted = false;
    bool converged = false;

    const long per_round = std::max<long>(1, std::min<long>(opts.max_iter, dim));
    const long rounds = std::max<long>(1, opts.restarts);

    Mat basis(dim, per_round + 1);
    Vec coef;

    for (long round = 0; round < rounds; ++round) {
        basis.col(0) = state;
        long m = 1;  // stored Krylov vectors
        std::vector<double> alpha;
        std::vector<double> beta;
        double theta = 0.0;
        VecR ritz;

        for (long k = 0; k < per_round; ++k) {
            state = basis.col(m - 1);
            apply(state, w);
            ++total_iters;
            const double a = std::real(Scalar(state.dot(w)));
            alpha.push_back(a);

            // Three-term recurrence, then full reorthogonalization against all
            // stored vectors as one blocked sweep; repeat the sweep only when
            // cancellation ate most of the remainder (Kahan-Parlett test).
            w -= a * state;
            if (k > 0) w -= beta.back() * basis.col(m - 2);
            const double pre = w.norm();
            auto cols = basis.leftCols(m);
            coef.noalias() = cols.adjoint() * w;
            w.noalias() -= cols * coef;
            if (w.norm() < 0.5 * pre) {
                coef.noalias() = cols.adjoint() * w;
                w.noalias() -= cols * coef;
            }

            const double b = w.norm();
            // The tridiagonal eigensolve is not free at large k; thin the
            // convergence checks once the basis is warm.
            if (m <= 32 || k % 4 == 3 || k == per_round - 1) {
                tridiag_ground(alpha, beta, theta, ritz);
                const double est = b * std::abs(ritz(ritz.size() - 1));
                if (est <= opts.tol * std::max(1.0, std::abs(theta))) break;
            }
            if (b <= 1e-14 || m == dim) {
                exhausted = true;  // Krylov space closed; best value in it is exact
                break;
            }
            beta.push_back(b);
            basis.col(m) = w / b;
            ++m;
        }

        if (ritz.size() != static_cast<long>(alpha.size())) tridiag_ground(alpha, beta, theta, ritz);
        Vec next = basis.leftCols(ritz.size()) * ritz.template cast<Scalar>();
        const double next_norm = next.norm();
        if (next_norm > 0.0) state = next / next_norm;

        apply(state, w);
        energy = std::real(Scalar(state.dot(w)));
        residual = (w - energy * state).norm();
        converged = residual <= opts.tol * std::max(1.0, std::abs(energy));
        if (converged || exhausted) break;
    }

    if (!exhausted && residual > 10.0 * opts.tol * std::max(1.0, std::abs(energy))) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "lanczos_ground: no convergence after %ld iterations, residual %.3e",
                      total_iters, residual);
        throw Error(ErrorCode::convergence, buf);
    }

    Result r;
    r.energy = energy;
    r.state = std::move(state);
    r.iterations = total_iters;
    r.residual = residual;
    return r;
}

}  // namespace

LanczosResult lanczos_ground(const LinearMap& apply, long dim, const LanczosOptions& opts,
                             const VecC& seed) {
    return lanczos_core<cxd, LanczosResult>(apply, dim, opts, seed);
}

LanczosResultR lanczos_ground_real(const LinearMapR& apply, long dim, const LanczosOptions& opts,
                                   const VecR& seed) {
    return lanczos_core<double, LanczosResultR>(apply, dim, opts, seed);
}

}  // namespace qc
