#pragma once

#include <functional>

#include "common.hpp"

namespace qc {

// Result of a truncated SVD  m ≈ u · diag(s) · v_adj.
// u has orthonormal columns, v_adj has orthonormal rows, s is descending and
// positive. truncation_error is the sum of the squared discarded singular
// values (the squared Frobenius reconstruction error).
struct SvdResult {
    MatC u;
    VecR s;
    MatC v_adj;
    double truncation_error = 0.0;
};

// Keep at most chi_max singular values, discarding any with sigma^2 <= cutoff.
// Throws invalid_input on non-finite entries and degenerate if nothing is kept.
SvdResult svd_truncated(const MatC& m, long chi_max, double cutoff);

struct EigResult {
    VecR eigenvalues;  // ascending
    MatC eigenvectors; // column i pairs with eigenvalues[i]
};

// Full eigendecomposition of a Hermitian matrix (checked to 1e-10).
EigResult hermitian_eigs(const MatC& m);

using LinearMap = std::function<void(const VecC& in, VecC& out)>;
using LinearMapR = std::function<void(const VecR& in, VecR& out)>;

struct LanczosOptions {
    long max_iter = 200;  // Krylov dimension per restart round
    long restarts = 25;   // rounds, re-seeding from the best Ritz vector
    double tol = 1e-12;   // on the residual relative to max(1, |eigenvalue|)
};

struct LanczosResult {
    double energy = 0.0;
    VecC state;
    long iterations = 0;
    double residual = 0.0;
};

struct LanczosResultR {
    double energy = 0.0;
    VecR state;
    long iterations = 0;
    double residual = 0.0;
};

// Lowest eigenpair of a Hermitian linear map: restarted Lanczos with full
// reorthogonalization against the stored Krylov vectors, so memory stays at
// max_iter vectors however many rounds run. The returned state is normalized.
// Throws convergence if the residual target is missed after all restarts,
// invalid_input on a zero seed.
LanczosResult lanczos_ground(const LinearMap& apply, long dim, const LanczosOptions& opts,
                             const VecC& seed);

// Same algorithm over real vectors; the arithmetic of the complex version on
// exactly-real data, at real-flop cost.  dmrg dispatches here whenever the
// local problem carries no imaginary part.
LanczosResultR lanczos_ground_real(const LinearMapR& apply, long dim, const LanczosOptions& opts,
                                   const VecR& seed);

}  // namespace qc
