#pragma once

#include <vector>

#include "common.hpp"

namespace qc {

struct IsingParams {
    double coupling = 1.0;        // J > 0
    double field = 0.0;           // B >= 0
    long n_sites = 2;             // N >= 2
    double symmetry_break_h = 0;  // longitudinal field along x, >= 0
};

struct BoseHubbardParams {
    double hopping = 1.0;         // J >= 0
    double repulsion = 0.0;       // U >= 0
    long n_sites = 2;             // N >= 2
    long n_max = 4;               // max occupation per site
    double filling = 1.0;         // nu, bosons per site; nu*N integral
    double penalty_weight = -1;   // < 0 selects the default 10*max(J,U)
};

// One MPO site: a (dl x dr) grid of d x d operator blocks.
struct MpoSite {
    long dl = 1;
    long dr = 1;
    long d = 1;
    std::vector<MatC> ops;  // row-major, size dl*dr

    MatC& at(long a, long b) { return ops[static_cast<std::size_t>(a * dr + b)]; }
    const MatC& at(long a, long b) const { return ops[static_cast<std::size_t>(a * dr + b)]; }
};

struct MpoOperator {
    std::vector<MpoSite> sites;
    long d = 1;

    long n() const { return static_cast<long>(sites.size()); }
};

MpoOperator ising_mpo(const IsingParams& p);
MpoOperator bose_hubbard_mpo(const BoseHubbardParams& p);

// MPO for (sum_l n_l - target)^2; used to monitor the filling sector.
MpoOperator number_deviation_mpo(long n_sites, long n_max, double target);

double default_penalty_weight(const BoseHubbardParams& p);

// Dense matrix the MPO represents; small systems only (d^N <= 4096).
MatC mpo_dense(const MpoOperator& op);

// Site-local measurement: unitary whose column r is the eigenstate for
// outcome symbol r.
struct MeasurementBasis {
    MatC u;

    long dim() const { return u.rows(); }
};

// Eigenbasis of sigma_theta, theta in [0, pi/2] measured from the z-axis.
// Column 0 is the +1 eigenvector, column 1 the -1 eigenvector.
MeasurementBasis sigma_theta_basis(double theta);

// Occupation-number basis: identity of dimension n_max + 1.
MeasurementBasis number_basis(long n_max);

// Pauli matrices (2x2).
MatC pauli_x();
MatC pauli_y();
MatC pauli_z();

// Truncated bosonic annihilation operator on n_max + 1 levels.
MatC boson_annihilation(long n_max);
MatC boson_number(long n_max);

MatC kron(const MatC& a, const MatC& b);

}  // namespace qc
