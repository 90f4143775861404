#include "oracle.hpp"

#include <cmath>
#include <string>

#include "tensor.hpp"

namespace qc {

namespace {

constexpr long kDenseCap = 1 << 14;

long dense_dim(long n_sites, long d) {
    double dim = 1;
    for (long i = 0; i < n_sites; ++i) {
        dim *= static_cast<double>(d);
        if (dim > static_cast<double>(kDenseCap))
            fail(ErrorCode::capacity, "dense oracle: d^N exceeds " + std::to_string(kDenseCap));
    }
    return static_cast<long>(dim);
}

// sum over sites of a one-body term, and over bonds of a two-body term.
MatC chain_operator(long n_sites, const MatC& onsite, const MatC& left, const MatC& right) {
    const long d = onsite.rows();
    const long dim = dense_dim(n_sites, d);
    MatC h = MatC::Zero(dim, dim);
    for (long i = 0; i < n_sites; ++i) {
        MatC term = MatC::Identity(1, 1);
        for (long k = 0; k < n_sites; ++k) term = kron(term, k == i ? onsite : MatC::Identity(d, d));
        h += term;
    }
    for (long i = 0; i + 1 < n_sites; ++i) {
        MatC term = MatC::Identity(1, 1);
        for (long k = 0; k < n_sites; ++k) {
            const MatC* factor = nullptr;
            if (k == i) factor = &left;
            else if (k == i + 1) factor = &right;
            term = kron(term, factor ? *factor : MatC::Identity(d, d));
        }
        h += term;
    }
    return h;
}

}  // namespace

MatC dense_ising(const IsingParams& p) {
    if (p.n_sites < 2) fail(ErrorCode::invalid_input, "dense_ising: need at least 2 sites");
    dense_dim(p.n_sites, 2);
    const MatC sx = pauli_x();
    const MatC onsite = -p.field * pauli_z() - p.symmetry_break_h * sx;
    return chain_operator(p.n_sites, onsite, -0.5 * p.coupling * sx, sx);
}

MatC dense_bose_hubbard(const BoseHubbardParams& p) {
    if (p.n_sites < 2) fail(ErrorCode::invalid_input, "dense_bose_hubbard: need at least 2 sites");
    const long d = p.n_max + 1;
    const long dim = dense_dim(p.n_sites, d);
    const double total = p.filling * static_cast<double>(p.n_sites);
    if (p.filling <= 0 || std::abs(total - std::round(total)) > 1e-9)
        fail(ErrorCode::invalid_input, "dense_bose_hubbard: filling * n_sites must be a positive integer");
    const double target = std::round(total);
    const double weight = p.penalty_weight < 0 ? default_penalty_weight(p) : p.penalty_weight;

    const MatC b = boson_annihilation(p.n_max);
    const MatC bdag = b.adjoint();
    const MatC num = boson_number(p.n_max);
    const MatC id = MatC::Identity(d, d);
    const MatC interact = 0.5 * p.repulsion * num * (num - id);

    MatC h = chain_operator(p.n_sites, interact, -p.hopping * bdag, b);
    h += chain_operator(p.n_sites, MatC::Zero(d, d), -p.hopping * b, bdag);

    // (sum n - target)^2 is diagonal; apply it entrywise.
    MatC ntot = MatC::Zero(dim, dim);
    for (long i = 0; i < p.n_sites; ++i) {
        MatC term = MatC::Identity(1, 1);
        for (long k = 0; k < p.n_sites; ++k) term = kron(term, k == i ? num : id);
        ntot += term;
    }
    for (long i = 0; i < dim; ++i) {
        const double dev = ntot(i, i).real() - target;
        h(i, i) += weight * dev * dev;
    }
    return h;
}

DenseGround exact_ground(const MatC& h) {
    if (h.rows() != h.cols() || h.rows() < 1) fail(ErrorCode::invalid_input, "exact_ground: bad matrix");
    const long dim = h.rows();
    DenseGround out;
    if (dim <= 2048) {
        EigResult eig = hermitian_eigs(h);
        out.energy = eig.eigenvalues(0);
        out.state = eig.eigenvectors.col(0);
        return out;
    }
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        fail(ErrorCode::invalid_input, "exact_ground: matrix not Hermitian");
    SeedStream rng(0xE1A7u);
    VecC seed(dim);
    for (long i = 0; i < dim; ++i) seed(i) = cxd(rng.symmetric(), rng.symmetric());
    LanczosOptions opts;
    opts.max_iter = 500;
    opts.tol = 1e-13;
    LanczosResult res = lanczos_ground(
        [&h](const VecC& in, VecC& out_vec) { out_vec = h * in; }, dim, opts, seed);
    out.energy = res.energy;
    out.state = std::move(res.state);
    return out;
}

VecR exact_window_probabilities(const VecC& amp, long n_sites, long d, const MeasurementBasis& basis,
                                const WordWindow& window) {
    const long dim = dense_dim(n_sites, d);
    if (amp.size() != dim) fail(ErrorCode::invalid_input, "exact_window_probabilities: amplitude size mismatch");
    if (basis.dim() != d) fail(ErrorCode::invalid_input, "exact_window_probabilities: basis dimension mismatch");
    if (window.len < 1 || window.start < 0 || window.start + window.len > n_sites)
        fail(ErrorCode::invalid_input, "exact_window_probabilities: window out of range");

    // Rotate each window site into the measurement basis:
    // amp'[.., r, ..] = sum_i conj(U(i, r)) amp[.., i, ..].
    VecC rotated = amp;
    const MatC udag = basis.u.adjoint();
    for (long site = window.start; site < window.start + window.len; ++site) {
        long stride = 1;
        for (long k = site + 1; k < n_sites; ++k) stride *= d;
        const long block = stride * d;
        VecC next = VecC::Zero(dim);
        for (long base = 0; base < dim; base += block) {
            for (long off = 0; off < stride; ++off) {
                for (long r = 0; r < d; ++r) {
                    cxd acc = 0;
                    for (long s = 0; s < d; ++s) acc += udag(r, s) * rotated(base + s * stride + off);
                    next(base + r * stride + off) = acc;
                }
            }
        }
        rotated = std::move(next);
    }

    long total = 1;
    for (long k = 0; k < window.len; ++k) total *= d;
    VecR probs = VecR::Zero(total);
    long tail = 1;
    for (long k = window.start + window.len; k < n_sites; ++k) tail *= d;
    for (long idx = 0; idx < dim; ++idx) {
        const long word = (idx / tail) % total;
        probs(word) += std::norm(rotated(idx));
    }
    double sum = probs.sum();
    if (!(sum > 0.5 && sum < 1.5))
        fail(ErrorCode::internal, "exact_window_probabilities: state mass far from 1");
    for (long i = 0; i < total; ++i)
        if (probs(i) < 1e-14) probs(i) = 0;
    probs /= probs.sum();
    return probs;
}

double exact_half_chain_entropy(const VecC& amp, long n_sites, long d) {
    if (n_sites % 2 != 0) fail(ErrorCode::invalid_input, "exact_half_chain_entropy: need an even chain");
    const long dim = dense_dim(n_sites, d);
    if (amp.size() != dim) fail(ErrorCode::invalid_input, "exact_half_chain_entropy: amplitude size mismatch");
    long half = 1;
    for (long k = 0; k < n_sites / 2; ++k) half *= d;

    MatC psi(half, half);
    for (long row = 0; row < half; ++row)
        for (long col = 0; col < half; ++col) psi(row, col) = amp(row * half + col);
    Eigen::JacobiSVD<MatC> svd(psi);
    const VecR s = svd.singularValues();
    double h = 0;
    for (long i = 0; i < s.size(); ++i) {
        const double w = s(i) * s(i);
        if (w > 1e-300) h -= w * std::log2(w);
    }
    return h;
}

double dense_expectation(const VecC& amp, const MatC& op) {
    if (op.rows() != amp.size() || op.cols() != amp.size())
        fail(ErrorCode::invalid_input, "dense_expectation: shape mismatch");
    return std::real(amp.dot(op * amp)) / std::real(amp.dot(amp));
}

}  // namespace qc
