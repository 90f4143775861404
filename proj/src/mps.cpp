#include "mps.hpp"

#include <cmath>
#include <string>

#include "tensor.hpp"

namespace qc {

namespace {

constexpr double kWordBitCap = 26.0;   // d^len <= 2^26
constexpr long kDenseSiteCap = 1 << 22;

void check_state(const MpsState& state) {
    const long n = state.n();
    if (n < 1) fail(ErrorCode::invalid_input, "mps: empty state");
    if (state.d < 1) fail(ErrorCode::invalid_input, "mps: bad local dimension");
    for (long i = 0; i < n; ++i) {
        const auto& site = state.sites[static_cast<std::size_t>(i)];
        if (static_cast<long>(site.size()) != state.d)
            fail(ErrorCode::invalid_input, "mps: site " + std::to_string(i) + " has wrong physical dimension");
    }
    if (state.bond_left(0) != 1 || state.bond_right(n - 1) != 1)
        fail(ErrorCode::invalid_input, "mps: outer bonds must have dimension 1");
    for (long i = 0; i + 1 < n; ++i) {
        if (state.bond_right(i) != state.bond_left(i + 1))
            fail(ErrorCode::invalid_input, "mps: bond mismatch between sites " + std::to_string(i) + " and " +
                                               std::to_string(i + 1));
    }
}

// Site tensor flattened with the physical index fused to the left bond:
// row s*chiL + l, column r.
MatC fuse_left(const std::vector<MatC>& site) {
    const long d = static_cast<long>(site.size());
    const long chi_l = site[0].rows();
    const long chi_r = site[0].cols();
    MatC m(d * chi_l, chi_r);
    for (long s = 0; s < d; ++s) m.block(s * chi_l, 0, chi_l, chi_r) = site[static_cast<std::size_t>(s)];
    return m;
}

// Physical index fused to the right bond: row l, column s*chiR + r.
MatC fuse_right(const std::vector<MatC>& site) {
    const long d = static_cast<long>(site.size());
    const long chi_l = site[0].rows();
    const long chi_r = site[0].cols();
    MatC m(chi_l, d * chi_r);
    for (long s = 0; s < d; ++s) m.block(0, s * chi_r, chi_l, chi_r) = site[static_cast<std::size_t>(s)];
    return m;
}

std::vector<MatC> split_left(const MatC& m, long d) {
    const long chi_l = m.rows() / d;
    std::vector<MatC> site(static_cast<std::size_t>(d));
    for (long s = 0; s < d; ++s) site[static_cast<std::size_t>(s)] = m.block(s * chi_l, 0, chi_l, m.cols());
    return site;
}

std::vector<MatC> split_right(const MatC& m, long d) {
    const long chi_r = m.cols() / d;
    std::vector<MatC> site(static_cast<std::size_t>(d));
    for (long s = 0; s < d; ++s) site[static_cast<std::size_t>(s)] = m.block(0, s * chi_r, m.rows(), chi_r);
    return site;
}

}  // namespace

long MpsState::max_bond() const {
    long chi = 1;
    for (long i = 0; i < n(); ++i) chi = std::max(chi, bond_right(i));
    return chi;
}

MpsState product_state(const std::vector<VecC>& kets) {
    if (kets.empty()) fail(ErrorCode::invalid_input, "product_state: no sites");
    const long d = kets[0].size();
    if (d < 2) fail(ErrorCode::invalid_input, "product_state: local dimension must be >= 2");

    MpsState state;
    state.d = d;
    for (std::size_t i = 0; i < kets.size(); ++i) {
        const VecC& ket = kets[i];
        if (ket.size() != d) fail(ErrorCode::invalid_input, "product_state: inconsistent local dimensions");
        if (std::abs(ket.norm() - 1.0) > 1e-10)
            fail(ErrorCode::invalid_input, "product_state: ket " + std::to_string(i) + " is not normalized");
        std::vector<MatC> site(static_cast<std::size_t>(d));
        for (long s = 0; s < d; ++s) {
            site[static_cast<std::size_t>(s)] = MatC::Constant(1, 1, ket(s));
        }
        state.sites.push_back(std::move(site));
    }
    state.bond_svals.assign(kets.size() - 1, VecR::Ones(1));
    state.center = 0;
    return state;
}

MpsState random_product_state(long n_sites, long d, std::uint64_t seed) {
    if (n_sites < 1 || d < 2) fail(ErrorCode::invalid_input, "random_product_state: bad shape");
    SeedStream rng(seed);
    std::vector<VecC> kets;
    kets.reserve(static_cast<std::size_t>(n_sites));
    for (long i = 0; i < n_sites; ++i) {
        VecC ket(d);
        for (long s = 0; s < d; ++s) ket(s) = cxd(rng.symmetric(), rng.symmetric());
        const double nrm = ket.norm();
        if (nrm < 1e-8) ket(0) = 1.0;  // vanishing draw, astronomically unlikely
        kets.push_back(ket / ket.norm());
    }
    return product_state(kets);
}

double norm(const MpsState& state) {
    check_state(state);
    MatC env = MatC::Identity(1, 1);
    for (long i = 0; i < state.n(); ++i) {
        const auto& site = state.sites[static_cast<std::size_t>(i)];
        MatC next = MatC::Zero(site[0].cols(), site[0].cols());
        for (long s = 0; s < state.d; ++s)
            next += site[static_cast<std::size_t>(s)].adjoint() * env * site[static_cast<std::size_t>(s)];
        env = std::move(next);
    }
    return std::sqrt(std::max(0.0, env(0, 0).real()));
}

cxd overlap(const MpsState& a, const MpsState& b) {
    check_state(a);
    check_state(b);
    if (a.n() != b.n() || a.d != b.d) fail(ErrorCode::invalid_input, "overlap: shape mismatch");
    MatC env = MatC::Identity(1, 1);
    for (long i = 0; i < a.n(); ++i) {
        const auto& sa = a.sites[static_cast<std::size_t>(i)];
        const auto& sb = b.sites[static_cast<std::size_t>(i)];
        MatC next = MatC::Zero(sa[0].cols(), sb[0].cols());
        for (long s = 0; s < a.d; ++s)
            next += sa[static_cast<std::size_t>(s)].adjoint() * env * sb[static_cast<std::size_t>(s)];
        env = std::move(next);
    }
    return env(0, 0);
}

MpsState canonicalize(const MpsState& input, long center, double cutoff) {
    check_state(input);
    const long n = input.n();
    if (center < 0 || center >= n) fail(ErrorCode::invalid_input, "canonicalize: center out of range");
    if (cutoff < 0) fail(ErrorCode::invalid_input, "canonicalize: negative cutoff");

    MpsState state = input;
    state.bond_svals.assign(static_cast<std::size_t>(n - 1), VecR());
    const long full = std::numeric_limits<long>::max() / 4;

    // Pass 1: right-canonicalize everything onto site 0.
    for (long i = n - 1; i > 0; --i) {
        auto& site = state.sites[static_cast<std::size_t>(i)];
        SvdResult svd = svd_truncated(fuse_right(site), full, cutoff);
        site = split_right(svd.v_adj, state.d);
        const MatC carry = svd.u * svd.s.asDiagonal();
        auto& prev = state.sites[static_cast<std::size_t>(i - 1)];
        for (long s = 0; s < state.d; ++s) prev[static_cast<std::size_t>(s)] = prev[static_cast<std::size_t>(s)] * carry;
    }
    {
        double nrm2 = 0;
        for (long s = 0; s < state.d; ++s) nrm2 += state.sites[0][static_cast<std::size_t>(s)].squaredNorm();
        const double nrm = std::sqrt(nrm2);
        if (nrm < 1e-14) fail(ErrorCode::degenerate, "canonicalize: state norm collapsed");
        for (long s = 0; s < state.d; ++s) state.sites[0][static_cast<std::size_t>(s)] /= nrm;
    }

    // Pass 2: sweep left to right; with the right side right-canonical the
    // singular values at each bond are the Schmidt values.
    for (long i = 0; i + 1 < n; ++i) {
        auto& site = state.sites[static_cast<std::size_t>(i)];
        SvdResult svd = svd_truncated(fuse_left(site), full, cutoff);
        VecR svals = svd.s;
        const double snorm = svals.norm();
        if (snorm < 1e-14) fail(ErrorCode::degenerate, "canonicalize: state norm collapsed");
        svals /= snorm;
        state.bond_svals[static_cast<std::size_t>(i)] = svals;
        site = split_left(svd.u, state.d);
        const MatC carry = (svd.s / snorm).asDiagonal() * svd.v_adj;
        auto& nxt = state.sites[static_cast<std::size_t>(i + 1)];
        for (long s = 0; s < state.d; ++s) nxt[static_cast<std::size_t>(s)] = carry * nxt[static_cast<std::size_t>(s)];
    }

    // Pass 3: pull the center back from the right edge.
    for (long i = n - 1; i > center; --i) {
        auto& site = state.sites[static_cast<std::size_t>(i)];
        SvdResult svd = svd_truncated(fuse_right(site), full, cutoff);
        site = split_right(svd.v_adj, state.d);
        VecR svals = svd.s;
        const double snorm = svals.norm();
        if (snorm < 1e-14) fail(ErrorCode::degenerate, "canonicalize: state norm collapsed");
        state.bond_svals[static_cast<std::size_t>(i - 1)] = svals / snorm;
        const MatC carry = svd.u * svd.s.asDiagonal();
        auto& prev = state.sites[static_cast<std::size_t>(i - 1)];
        for (long s = 0; s < state.d; ++s) prev[static_cast<std::size_t>(s)] = prev[static_cast<std::size_t>(s)] * carry;
    }
    {
        auto& site = state.sites[static_cast<std::size_t>(center)];
        double nrm2 = 0;
        for (long s = 0; s < state.d; ++s) nrm2 += site[static_cast<std::size_t>(s)].squaredNorm();
        const double nrm = std::sqrt(nrm2);
        if (nrm < 1e-14) fail(ErrorCode::degenerate, "canonicalize: state norm collapsed");
        for (long s = 0; s < state.d; ++s) site[static_cast<std::size_t>(s)] /= nrm;
    }
    state.center = center;
    return state;
}

double bond_entropy(const MpsState& state, long bond) {
    if (bond < 0 || bond + 1 >= state.n() + 1 || bond >= static_cast<long>(state.bond_svals.size()))
        fail(ErrorCode::invalid_input, "bond_entropy: bond out of range");
    if (state.center < 0) fail(ErrorCode::invalid_state, "bond_entropy: state is not in canonical form");
    const VecR& s = state.bond_svals[static_cast<std::size_t>(bond)];
    if (s.size() == 0) fail(ErrorCode::invalid_state, "bond_entropy: missing Schmidt values");
    double h = 0;
    for (long i = 0; i < s.size(); ++i) {
        const double w = s(i) * s(i);
        if (w > 0) h -= w * std::log2(w);
    }
    return h;
}

double half_chain_entropy(const MpsState& state) {
    if (state.n() % 2 != 0) fail(ErrorCode::invalid_input, "half_chain_entropy: need an even number of sites");
    return bond_entropy(state, state.n() / 2 - 1);
}

MpsState apply_local_basis(const MpsState& state, const MeasurementBasis& basis) {
    check_state(state);
    if (basis.dim() != state.d) fail(ErrorCode::invalid_input, "apply_local_basis: basis dimension mismatch");
    const MatC udag = basis.u.adjoint();
    if (((basis.u * udag) - MatC::Identity(state.d, state.d)).cwiseAbs().maxCoeff() > 1e-10)
        fail(ErrorCode::invalid_input, "apply_local_basis: basis is not unitary");

    MpsState out = state;
    for (long i = 0; i < state.n(); ++i) {
        const auto& site = state.sites[static_cast<std::size_t>(i)];
        auto& dst = out.sites[static_cast<std::size_t>(i)];
        for (long r = 0; r < state.d; ++r) {
            MatC acc = MatC::Zero(site[0].rows(), site[0].cols());
            for (long s = 0; s < state.d; ++s) acc += udag(r, s) * site[static_cast<std::size_t>(s)];
            dst[static_cast<std::size_t>(r)] = std::move(acc);
        }
    }
    return out;
}

double expectation(const MpsState& state, const MpoOperator& op) {
    check_state(state);
    if (op.n() != state.n() || op.d != state.d) fail(ErrorCode::invalid_input, "expectation: operator shape mismatch");

    std::vector<MatC> env(1, MatC::Identity(1, 1));
    for (long i = 0; i < state.n(); ++i) {
        const auto& site = state.sites[static_cast<std::size_t>(i)];
        const MpoSite& w = op.sites[static_cast<std::size_t>(i)];
        const long chi_r = site[0].cols();
        std::vector<MatC> next(static_cast<std::size_t>(w.dr), MatC::Zero(chi_r, chi_r));
        for (long a = 0; a < w.dl; ++a) {
            for (long b = 0; b < w.dr; ++b) {
                const MatC& block = w.at(a, b);
                if (block.isZero(0)) continue;
                for (long sb = 0; sb < state.d; ++sb) {
                    MatC left = site[static_cast<std::size_t>(sb)].adjoint() * env[static_cast<std::size_t>(a)];
                    for (long sk = 0; sk < state.d; ++sk) {
                        const cxd coeff = block(sb, sk);
                        if (coeff == cxd(0, 0)) continue;
                        next[static_cast<std::size_t>(b)] += coeff * (left * site[static_cast<std::size_t>(sk)]);
                    }
                }
            }
        }
        env = std::move(next);
    }
    return env[0](0, 0).real();
}

VecR window_probabilities(const MpsState& state, const WordWindow& window) {
    check_state(state);
    const long n = state.n();
    if (window.len < 1 || window.start < 0 || window.start + window.len > n)
        fail(ErrorCode::invalid_input, "window_probabilities: window out of range");
    if (static_cast<double>(window.len) * std::log2(static_cast<double>(state.d)) > kWordBitCap)
        fail(ErrorCode::capacity, "window_probabilities: outcome table for " + std::to_string(window.len) +
                                      " sites at local dimension " + std::to_string(state.d) + " exceeds the 2^26 cap");
    if (state.center < window.start || state.center >= window.start + window.len)
        fail(ErrorCode::invalid_state, "window_probabilities: orthogonality center must lie inside the window");

    long total = 1;
    for (long k = 0; k < window.len; ++k) total *= state.d;
    VecR probs(total);

    // DFS over outcome strings, carrying the partial left contraction.
    std::vector<MatC> stack;
    stack.reserve(static_cast<std::size_t>(window.len) + 1);
    std::vector<long> digits(static_cast<std::size_t>(window.len), 0);
    stack.push_back(MatC::Identity(state.bond_left(window.start), state.bond_left(window.start)));

    long idx = 0;
    long level = 0;
    while (true) {
        if (level == window.len) {
            probs(idx) = stack.back().trace().real();
            --level;
            idx /= state.d;
            stack.pop_back();
            while (level >= 0 && digits[static_cast<std::size_t>(level)] == state.d - 1) {
                digits[static_cast<std::size_t>(level)] = 0;
                --level;
                idx /= state.d;
                stack.pop_back();
            }
            if (level < 0) break;
            ++digits[static_cast<std::size_t>(level)];
        }
        const long r = digits[static_cast<std::size_t>(level)];
        const MatC& a = state.sites[static_cast<std::size_t>(window.start + level)][static_cast<std::size_t>(r)];
        stack.push_back(a.adjoint() * stack.back() * a);
        idx = idx * state.d + r;
        ++level;
    }

    double sum = 0;
    for (long i = 0; i < total; ++i) {
        if (probs(i) < 1e-14) probs(i) = 0;
        sum += probs(i);
    }
    if (!(sum > 0.5 && sum < 1.5))
        fail(ErrorCode::internal, "window_probabilities: outcome mass " + std::to_string(sum) +
                                      " is far from 1; state was not normalized");
    probs /= sum;
    return probs;
}

MpsState mps_from_dense(const VecC& amp, long n_sites, long d, long chi_max, double cutoff) {
    if (n_sites < 1 || d < 2) fail(ErrorCode::invalid_input, "mps_from_dense: bad shape");
    if (chi_max < 1) fail(ErrorCode::invalid_input, "mps_from_dense: chi_max must be >= 1");
    double dim = 1;
    for (long i = 0; i < n_sites; ++i) dim *= static_cast<double>(d);
    if (dim > static_cast<double>(kDenseSiteCap)) fail(ErrorCode::capacity, "mps_from_dense: amplitude vector too large");
    if (amp.size() != static_cast<long>(dim)) fail(ErrorCode::invalid_input, "mps_from_dense: amplitude size mismatch");
    if (amp.norm() < 1e-14) fail(ErrorCode::degenerate, "mps_from_dense: zero state");

    MpsState state;
    state.d = d;

    // Peel sites off the left: reshape to (chi*d) x rest, SVD, keep U.
    MatC rest = amp.transpose();  // 1 x d^n, row = left bond (chi=1)
    long chi = 1;
    for (long i = 0; i + 1 < n_sites; ++i) {
        const long cols = rest.cols() / d;
        MatC m(chi * d, cols);
        for (long l = 0; l < chi; ++l)
            for (long s = 0; s < d; ++s) m.row(s * chi + l) = rest.block(l, s * cols, 1, cols);
        SvdResult svd = svd_truncated(m, chi_max, cutoff);
        state.sites.push_back(split_left(svd.u, d));
        rest = svd.s.asDiagonal() * svd.v_adj;
        chi = rest.rows();
    }
    state.sites.push_back(split_right(rest, d));
    return canonicalize(state, n_sites - 1, cutoff);
}

VecC mps_to_dense(const MpsState& state) {
    check_state(state);
    double dim = 1;
    for (long i = 0; i < state.n(); ++i) dim *= static_cast<double>(state.d);
    if (dim > static_cast<double>(kDenseSiteCap)) fail(ErrorCode::capacity, "mps_to_dense: state too large");

    const long total = static_cast<long>(dim);
    VecC out(total);
    std::vector<MatC> stack;
    std::vector<long> digits(static_cast<std::size_t>(state.n()), 0);
    stack.push_back(MatC::Identity(1, 1));
    long idx = 0;
    long level = 0;
    while (true) {
        if (level == state.n()) {
            out(idx) = stack.back()(0, 0);
            --level;
            idx /= state.d;
            stack.pop_back();
            while (level >= 0 && digits[static_cast<std::size_t>(level)] == state.d - 1) {
                digits[static_cast<std::size_t>(level)] = 0;
                --level;
                idx /= state.d;
                stack.pop_back();
            }
            if (level < 0) break;
            ++digits[static_cast<std::size_t>(level)];
        }
        const long s = digits[static_cast<std::size_t>(level)];
        stack.push_back(stack.back() * state.sites[static_cast<std::size_t>(level)][static_cast<std::size_t>(s)]);
        idx = idx * state.d + s;
        ++level;
    }
    return out;
}

}  // namespace qc
