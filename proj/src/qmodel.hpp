#pragma once

#include <vector>

#include "compmech.hpp"

namespace qc {

struct GramResult {
    MatR g;
    long iterations = 0;
    double residual = 0.0;
    std::vector<double> residual_history;
};

// Fixed point of G_jk = sum_r sqrt(e(j,r) e(k,r)) G_{succ(j,r) succ(k,r)},
// iterated from the all-ones matrix.  The diagonal is pinned at 1; entries
// stay in [0,1].  Converged when the max entrywise change is <= tol.
GramResult gram_fixed_point(const EpsilonMachine& m, double tol = 1e-12, long max_iter = 100000);

// Spectrum entropy of rho = D G D with D = diag(sqrt(stationary)), in bits.
// Eigenvalues below 1e-14 are treated as zero; anything below -1e-10 is an
// invalid Gram matrix.
double quantum_memory(const GramResult& gram, const VecR& stationary);

// Smallest eigenvalue of G itself; the PSD invariant tolerates -1e-10.
double gram_min_eigenvalue(const GramResult& gram);

}  // namespace qc
