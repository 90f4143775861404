#include "models.hpp"

#include <cmath>
#include <string>

namespace qc {

namespace {

constexpr long kDenseCap = 4096;

void check_site_count(long n) {
    if (n < 2) fail(ErrorCode::invalid_input, "model: need at least 2 sites, got " + std::to_string(n));
}

MpoSite zero_site(long dl, long dr, long d) {
    MpoSite site;
    site.dl = dl;
    site.dr = dr;
    site.d = d;
    site.ops.assign(static_cast<std::size_t>(dl * dr), MatC::Zero(d, d));
    return site;
}

// Rows/columns of the full bulk grid are channels; the first site keeps only
// the start row, the last site only the finish column.
MpoOperator assemble(const MpoSite& bulk, long n, long d) {
    const long dim = bulk.dl;  // square in the bulk
    MpoOperator op;
    op.d = d;
    op.sites.reserve(static_cast<std::size_t>(n));

    MpoSite first = zero_site(1, dim, d);
    for (long b = 0; b < dim; ++b) first.at(0, b) = bulk.at(dim - 1, b);
    op.sites.push_back(first);

    for (long i = 1; i + 1 < n; ++i) op.sites.push_back(bulk);

    MpoSite last = zero_site(dim, 1, d);
    for (long a = 0; a < dim; ++a) last.at(a, 0) = bulk.at(a, 0);
    op.sites.push_back(last);
    return op;
}

}  // namespace

MatC pauli_x() {
    MatC m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

MatC pauli_y() {
    MatC m(2, 2);
    m << 0, cxd(0, -1), cxd(0, 1), 0;
    return m;
}

MatC pauli_z() {
    MatC m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

MatC boson_annihilation(long n_max) {
    if (n_max < 1) fail(ErrorCode::invalid_input, "boson_annihilation: n_max must be >= 1");
    MatC b = MatC::Zero(n_max + 1, n_max + 1);
    for (long n = 1; n <= n_max; ++n) b(n - 1, n) = std::sqrt(static_cast<double>(n));
    return b;
}

MatC boson_number(long n_max) {
    if (n_max < 1) fail(ErrorCode::invalid_input, "boson_number: n_max must be >= 1");
    MatC n = MatC::Zero(n_max + 1, n_max + 1);
    for (long k = 0; k <= n_max; ++k) n(k, k) = static_cast<double>(k);
    return n;
}

MatC kron(const MatC& a, const MatC& b) {
    MatC out(a.rows() * b.rows(), a.cols() * b.cols());
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

MpoOperator ising_mpo(const IsingParams& p) {
    check_site_count(p.n_sites);
    if (p.coupling <= 0) fail(ErrorCode::invalid_input, "ising: coupling must be > 0");
    if (p.field < 0) fail(ErrorCode::invalid_input, "ising: field must be >= 0");
    if (p.symmetry_break_h < 0) fail(ErrorCode::invalid_input, "ising: symmetry_break_h must be >= 0");

    // H = -(J/2) sum sx.sx - B sum sz - h sum sx.  The exchange is halved so
    // the quantum phase transition sits at B/J = 0.5; the large-B ground
    // state is |0...0> (all spins along +z) and symbol 0 dominates ordered
    // sequences in both limiting bases.
    const MatC sx = pauli_x();
    const MatC onsite = -p.field * pauli_z() - p.symmetry_break_h * sx;

    MpoSite bulk = zero_site(3, 3, 2);
    bulk.at(0, 0) = MatC::Identity(2, 2);
    bulk.at(1, 0) = sx;
    bulk.at(2, 0) = onsite;
    bulk.at(2, 1) = -0.5 * p.coupling * sx;
    bulk.at(2, 2) = MatC::Identity(2, 2);
    return assemble(bulk, p.n_sites, 2);
}

double default_penalty_weight(const BoseHubbardParams& p) {
    return 10.0 * std::max(std::abs(p.hopping), std::abs(p.repulsion));
}

MpoOperator bose_hubbard_mpo(const BoseHubbardParams& p) {
    check_site_count(p.n_sites);
    if (p.hopping < 0) fail(ErrorCode::invalid_input, "bose_hubbard: hopping must be >= 0");
    if (p.repulsion < 0) fail(ErrorCode::invalid_input, "bose_hubbard: repulsion must be >= 0");
    if (p.n_max < 1) fail(ErrorCode::invalid_input, "bose_hubbard: n_max must be >= 1");
    const double total = p.filling * static_cast<double>(p.n_sites);
    if (p.filling <= 0 || std::abs(total - std::round(total)) > 1e-9)
        fail(ErrorCode::invalid_input, "bose_hubbard: filling * n_sites must be a positive integer");
    const double target = std::round(total);
    if (target > static_cast<double>(p.n_max * p.n_sites))
        fail(ErrorCode::invalid_input, "bose_hubbard: filling exceeds n_max capacity");

    const double weight = p.penalty_weight < 0 ? default_penalty_weight(p) : p.penalty_weight;
    const long d = p.n_max + 1;
    const MatC b = boson_annihilation(p.n_max);
    const MatC bdag = b.adjoint();
    const MatC num = boson_number(p.n_max);
    const MatC id = MatC::Identity(d, d);

    // Penalty weight*(sum n - target)^2 expanded into onsite, pair (2w n.n)
    // and constant (spread as weight*target^2/N per site) pieces.
    MatC onsite = 0.5 * p.repulsion * num * (num - id);
    onsite += weight * num * num;
    onsite -= 2.0 * weight * target * num;
    onsite += (weight * target * target / static_cast<double>(p.n_sites)) * id;

    // Channels: 0 finish, 1 expects b, 2 expects b^dag, 3 expects n, 4 start.
    MpoSite bulk = zero_site(5, 5, d);
    bulk.at(0, 0) = id;
    bulk.at(1, 0) = b;
    bulk.at(2, 0) = bdag;
    bulk.at(3, 0) = num;
    bulk.at(3, 3) = id;
    bulk.at(4, 0) = onsite;
    bulk.at(4, 1) = -p.hopping * bdag;
    bulk.at(4, 2) = -p.hopping * b;
    bulk.at(4, 3) = 2.0 * weight * num;
    bulk.at(4, 4) = id;
    return assemble(bulk, p.n_sites, d);
}

MpoOperator number_deviation_mpo(long n_sites, long n_max, double target) {
    check_site_count(n_sites);
    const long d = n_max + 1;
    const MatC num = boson_number(n_max);
    const MatC id = MatC::Identity(d, d);

    MatC onsite = num * num - 2.0 * target * num + (target * target / static_cast<double>(n_sites)) * id;

    MpoSite bulk = zero_site(3, 3, d);
    bulk.at(0, 0) = id;
    bulk.at(1, 0) = num;
    bulk.at(1, 1) = id;  // carry the open n past non-adjacent sites
    bulk.at(2, 0) = onsite;
    bulk.at(2, 1) = 2.0 * num;
    bulk.at(2, 2) = id;
    return assemble(bulk, n_sites, d);
}

MatC mpo_dense(const MpoOperator& op) {
    const long n = op.n();
    if (n < 1) fail(ErrorCode::invalid_input, "mpo_dense: empty operator");
    double dim = 1;
    for (long i = 0; i < n; ++i) dim *= static_cast<double>(op.d);
    if (dim > static_cast<double>(kDenseCap))
        fail(ErrorCode::capacity, "mpo_dense: dimension " + std::to_string(static_cast<long>(dim)) +
                                      " exceeds cap " + std::to_string(kDenseCap));

    std::vector<MatC> partial(static_cast<std::size_t>(op.sites[0].dr));
    for (long b = 0; b < op.sites[0].dr; ++b) partial[static_cast<std::size_t>(b)] = op.sites[0].at(0, b);

    for (long i = 1; i < n; ++i) {
        const MpoSite& site = op.sites[static_cast<std::size_t>(i)];
        std::vector<MatC> next(static_cast<std::size_t>(site.dr));
        const long rows = partial[0].rows() * op.d;
        for (long c = 0; c < site.dr; ++c) {
            next[static_cast<std::size_t>(c)] = MatC::Zero(rows, rows);
            for (long a = 0; a < site.dl; ++a) {
                const MatC& w = site.at(a, c);
                if (w.isZero(0)) continue;
                next[static_cast<std::size_t>(c)] += kron(partial[static_cast<std::size_t>(a)], w);
            }
        }
        partial = std::move(next);
    }
    return partial[0];
}

MeasurementBasis sigma_theta_basis(double theta) {
    if (!(theta >= 0.0 && theta <= kPi / 2 + 1e-12))
        fail(ErrorCode::invalid_input, "sigma_theta_basis: theta must lie in [0, pi/2]");
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    MeasurementBasis basis;
    basis.u = MatC(2, 2);
    basis.u << c, -s, s, c;
    return basis;
}

MeasurementBasis number_basis(long n_max) {
    if (n_max < 1) fail(ErrorCode::invalid_input, "number_basis: n_max must be >= 1");
    MeasurementBasis basis;
    basis.u = MatC::Identity(n_max + 1, n_max + 1);
    return basis;
}

}  // namespace qc
