#pragma once

#include <vector>

#include "models.hpp"
#include "mps.hpp"

namespace qc {

struct DmrgOptions {
    long chi = 32;                 // bond dimension cap
    long warmup_chi = 16;          // cap during the first sweep
    long max_sweeps = 64;
    long min_sweeps = 4;
    double energy_tol = 1e-12;     // relative sweep-to-sweep energy change
    double svd_cutoff = 1e-14;     // on squared singular values
    double lanczos_tol = 1e-12;
    long lanczos_max_iter = 200;
    std::uint64_t seed = 1;        // initial-state draw
};

struct DmrgResult {
    MpsState state;                // mixed-canonical, center at site 0
    double energy = 0.0;
    std::vector<double> energy_history;  // one entry per full sweep
    double max_truncation_error = 0.0;   // worst discarded weight of any bond update
    long sweeps = 0;
    bool converged = false;
};

// Two-site DMRG ground-state search.  Starts from `initial` when given (must
// match the MPO's site count and local dimension), otherwise from a seeded
// random product state.  The returned Schmidt values are those recorded during
// the final sweep; callers wanting them consistent to full precision should
// re-canonicalize.  Does not throw on a clean non-converged run
// (converged=false); a failed local eigensolve raises convergence with
// sweep/site context.
DmrgResult ground_state(const MpoOperator& h, const DmrgOptions& opts,
                        const MpsState* initial = nullptr);

}  // namespace qc
