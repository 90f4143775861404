#pragma once

#include "models.hpp"
#include "mps.hpp"

namespace qc {

// Dense builders for validation runs; independent of the MPO plumbing.
// Capacity-limited to d^N <= 2^14 amplitudes.
MatC dense_ising(const IsingParams& p);
MatC dense_bose_hubbard(const BoseHubbardParams& p);

struct DenseGround {
    VecC state;
    double energy = 0.0;
};

// Lowest eigenpair of a dense Hermitian matrix: full decomposition up to
// dimension 2048, seeded Lanczos beyond that.
DenseGround exact_ground(const MatC& h);

// Outcome-word probabilities on a window of a dense state, index leftmost
// site most significant; matches window_probabilities exactly in convention.
VecR exact_window_probabilities(const VecC& amp, long n_sites, long d, const MeasurementBasis& basis,
                                const WordWindow& window);

double exact_half_chain_entropy(const VecC& amp, long n_sites, long d);

double dense_expectation(const VecC& amp, const MatC& op);

}  // namespace qc
