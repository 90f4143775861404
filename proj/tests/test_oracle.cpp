#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "dmrg.hpp"
#include "oracle.hpp"
#include "tensor.hpp"

using namespace qc;

namespace {

VecC random_amp(long dim, std::uint64_t seed) {
    SeedStream rng(seed);
    VecC v(dim);
    for (long i = 0; i < dim; ++i) v(i) = cxd(rng.symmetric(), rng.symmetric());
    v /= v.norm();
    return v;
}

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected a qc::Error");
    return ErrorCode::internal;
}

}  // namespace

TEST_CASE("dense ising spectra at the two-site anchors") {
    IsingParams exchange;
    exchange.coupling = 1.0;
    exchange.field = 0.0;
    exchange.n_sites = 2;
    EigResult j_only = hermitian_eigs(dense_ising(exchange));
    CHECK(std::abs(j_only.eigenvalues(0) + 0.5) <= 1e-12);
    CHECK(std::abs(j_only.eigenvalues(1) + 0.5) <= 1e-12);
    CHECK(std::abs(j_only.eigenvalues(2) - 0.5) <= 1e-12);
    CHECK(std::abs(j_only.eigenvalues(3) - 0.5) <= 1e-12);

    IsingParams field;
    field.coupling = 1e-30;
    field.field = 1.0;
    field.n_sites = 2;
    EigResult b_only = hermitian_eigs(dense_ising(field));
    CHECK(std::abs(b_only.eigenvalues(0) + 2.0) <= 1e-12);
    CHECK(std::abs(b_only.eigenvalues(1)) <= 1e-12);
    CHECK(std::abs(b_only.eigenvalues(2)) <= 1e-12);
    CHECK(std::abs(b_only.eigenvalues(3) - 2.0) <= 1e-12);
}

TEST_CASE("dense builders and mpo contraction agree operator by operator") {
    IsingParams ip;
    ip.coupling = 1.0;
    ip.field = 0.5;
    ip.n_sites = 8;
    ip.symmetry_break_h = 1e-6;
    CHECK((dense_ising(ip) - mpo_dense(ising_mpo(ip))).norm() <= 1e-12);

    BoseHubbardParams bp;
    bp.hopping = 1.0;
    bp.repulsion = 4.0;
    bp.n_sites = 4;
    bp.n_max = 2;
    bp.filling = 1.0;
    CHECK((dense_bose_hubbard(bp) - mpo_dense(bose_hubbard_mpo(bp))).norm() <= 1e-12);
}

TEST_CASE("exact ground switches to lanczos beyond the dense-eig cutoff") {
    IsingParams p;
    p.coupling = 1.0;
    p.field = 0.5;
    p.n_sites = 12;  // 4096-dimensional: iterative path
    DenseGround g = exact_ground(dense_ising(p));

    DmrgOptions opts;
    opts.chi = 32;
    DmrgResult dmrg = ground_state(ising_mpo(p), opts);
    CHECK(std::abs(g.energy - dmrg.energy) <= 1e-9 * std::abs(g.energy));
    CHECK(std::abs(g.state.norm() - 1.0) <= 1e-12);
}

TEST_CASE("ghz words: half weight on each aligned outcome") {
    VecC ghz = VecC::Zero(4);
    ghz(0) = ghz(3) = 1.0 / std::sqrt(2.0);
    VecR p = exact_window_probabilities(ghz, 2, 2, sigma_theta_basis(0.0), {0, 2});
    CHECK(std::abs(p(0) - 0.5) <= 1e-14);
    CHECK(std::abs(p(3) - 0.5) <= 1e-14);
    CHECK(std::abs(p(1)) <= 1e-14);
    CHECK(std::abs(p(2)) <= 1e-14);
}

TEST_CASE("exact window probabilities match the mps path on a random state") {
    const long n = 8;
    const VecC amp = random_amp(1 << n, 17);
    MeasurementBasis basis = sigma_theta_basis(kPi / 4);
    const WordWindow window{2, 4};

    VecR dense_p = exact_window_probabilities(amp, n, 2, basis, window);
    MpsState mps = canonicalize(mps_from_dense(amp, n, 2, 1 << 4), 3);
    VecR mps_p = window_probabilities(apply_local_basis(mps, basis), window);
    CHECK((dense_p - mps_p).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(std::abs(dense_p.sum() - 1.0) <= 1e-12);
}

TEST_CASE("exact half-chain entropy: product, bell pair, and mps agreement") {
    VecC product = VecC::Zero(4);
    product(2) = 1.0;
    CHECK(exact_half_chain_entropy(product, 2, 2) <= 1e-12);

    VecC bell(4);
    bell << 1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0);
    CHECK(std::abs(exact_half_chain_entropy(bell, 2, 2) - 1.0) <= 1e-12);

    const VecC amp = random_amp(1 << 8, 29);
    MpsState mps = canonicalize(mps_from_dense(amp, 8, 2, 1 << 4), 3);
    CHECK(std::abs(exact_half_chain_entropy(amp, 8, 2) - half_chain_entropy(mps)) <= 1e-10);
}

TEST_CASE("dense expectation reproduces the two-site field anchor") {
    IsingParams p;
    p.coupling = 1.0;
    p.field = 1.0;
    p.n_sites = 2;
    VecC down = VecC::Zero(4);
    down(0) = 1.0;
    CHECK(std::abs(dense_expectation(down, dense_ising(p)) + 2.0) <= 1e-12);
}

TEST_CASE("dense builders enforce the amplitude capacity cap") {
    IsingParams p;
    p.coupling = 1.0;
    p.field = 1.0;
    p.n_sites = 15;  // 2^15 > 2^14 cap
    CHECK(code_of([&] { dense_ising(p); }) == ErrorCode::capacity);

    BoseHubbardParams bp;
    bp.n_sites = 10;
    bp.n_max = 3;  // 4^10 amplitudes
    bp.filling = 1.0;
    CHECK(code_of([&] { dense_bose_hubbard(bp); }) == ErrorCode::capacity);
}
