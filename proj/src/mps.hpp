#pragma once

#include <optional>
#include <vector>

#include "common.hpp"
#include "models.hpp"

namespace qc {

// Matrix product state; sites[i][s] is the chiL x chiR matrix for physical
// index s.  bond_svals[i] holds the Schmidt values across bond i (between
// sites i and i+1) and is valid whenever center >= 0.
struct MpsState {
    std::vector<std::vector<MatC>> sites;
    std::vector<VecR> bond_svals;
    long center = -1;
    long d = 0;

    long n() const { return static_cast<long>(sites.size()); }
    long bond_left(long i) const { return sites[static_cast<std::size_t>(i)][0].rows(); }
    long bond_right(long i) const { return sites[static_cast<std::size_t>(i)][0].cols(); }
    long max_bond() const;
};

// Product state from per-site kets (each must be normalized).
MpsState product_state(const std::vector<VecC>& kets);

// Random (real-amplitude) product state for solver warm starts.
MpsState random_product_state(long n_sites, long d, std::uint64_t seed);

double norm(const MpsState& state);
cxd overlap(const MpsState& a, const MpsState& b);

// Mixed-canonical form with the orthogonality center at `center`; populates
// every bond's Schmidt values.  cutoff discards squared singular values at or
// below it (0 keeps everything nonzero).
MpsState canonicalize(const MpsState& state, long center, double cutoff = 0.0);

// Entropy of the Schmidt spectrum across the middle bond, in bits.
double half_chain_entropy(const MpsState& state);
double bond_entropy(const MpsState& state, long bond);

// Rotate every physical index into a measurement basis: B[r] = sum_i
// conj(U(i,r)) A[i].  Canonical structure is preserved.
MpsState apply_local_basis(const MpsState& state, const MeasurementBasis& basis);

// <state| op |state>; imaginary part is discarded (Hermitian use).
double expectation(const MpsState& state, const MpoOperator& op);

struct WordWindow {
    long start = 0;  // first site, 0-based
    long len = 0;    // number of sites
};

// Probabilities of all d^len outcome strings on a contiguous window, index
// built leftmost-site-most-significant.  Requires the orthogonality center
// to lie inside the window.
VecR window_probabilities(const MpsState& state, const WordWindow& window);

// Exact MPS from a dense amplitude vector (index: site 0 most significant).
MpsState mps_from_dense(const VecC& amp, long n_sites, long d, long chi_max, double cutoff = 0.0);

VecC mps_to_dense(const MpsState& state);

}  // namespace qc
