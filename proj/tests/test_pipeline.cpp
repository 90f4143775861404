#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "validate.hpp"

using namespace qc;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected a qc::Error");
    return ErrorCode::internal;
}

const char* kTinyConfig =
    "[model]\n"
    "type = ising\n"
    "theta = 0 1.5707963267948966\n"
    "[grid]\n"
    "coupling = 0.5 5.0\n"
    "L = 1\n"
    "chi = 8\n"
    "[system]\n"
    "n_sites = 8\n"
    "[run]\n"
    "seed = 7\n";

std::string csv_of(const SweepConfig& cfg, const SweepOutcome& out) {
    std::ostringstream os;
    write_rows_csv(cfg, out, os);
    return os.str();
}

}  // namespace

TEST_CASE("fmt17 round-trips doubles exactly") {
    for (double x : {1.0 / 3.0, 0.1, 1e-300, 6.02214076e23, -0.0, 2.0 / 3.0}) {
        CHECK(std::stod(fmt17(x)) == x);
    }
    CHECK(fmt17(0.5) == "0.5");
}

TEST_CASE("symmetry-break sentinel resolves to the default but honors zero") {
    CHECK(effective_symmetry_break(-1.0) == 1e-6);
    CHECK(effective_symmetry_break(0.0) == 0.0);
    CHECK(effective_symmetry_break(3e-8) == 3e-8);
}

TEST_CASE("model names round-trip and unknown names are rejected") {
    CHECK(model_from_string("ising") == Model::ising);
    CHECK(model_from_string("bosehubbard") == Model::bosehubbard);
    CHECK(model_name(Model::bosehubbard) == std::string("bosehubbard"));
    CHECK_THROWS_AS(model_from_string("heisenberg"), Error);
}

TEST_CASE("point validation rejects out-of-contract requests") {
    PointSpec p;  // defaults are valid
    validate_point(p);

    auto broken = [&](const std::function<void(PointSpec&)>& tweak) {
        PointSpec q;
        tweak(q);
        return code_of([&] { validate_point(q); });
    };
    CHECK(broken([](PointSpec& q) { q.L = 0; }) == ErrorCode::invalid_input);
    CHECK(broken([](PointSpec& q) { q.n_sites = 9; }) == ErrorCode::invalid_input);
    CHECK(broken([](PointSpec& q) { q.n_sites = 4; q.L = 3; }) == ErrorCode::invalid_input);
    CHECK(broken([](PointSpec& q) { q.chi = 1; }) == ErrorCode::invalid_input);
    CHECK(broken([](PointSpec& q) { q.theta = 2.0; }) == ErrorCode::invalid_input);
    CHECK(broken([](PointSpec& q) { q.L = 14; q.n_sites = 32; }) == ErrorCode::capacity);
    CHECK(broken([](PointSpec& q) {
        q.model = Model::bosehubbard;
        q.nu = 0.3;  // 0.3 * 32 is not integral
    }) == ErrorCode::invalid_input);
    CHECK(broken([](PointSpec& q) {
        q.model = Model::bosehubbard;
        q.n_max = 1;
        q.nu = 2.0;
    }) == ErrorCode::invalid_input);
    CHECK(broken([](PointSpec& q) { q.merge_tol = -1.0; }) == ErrorCode::invalid_input);
}

TEST_CASE("a full point run satisfies the measure orderings and diagnostics") {
    PointSpec spec;
    spec.coupling = 2.0;
    spec.theta = kPi / 4;
    spec.L = 2;
    spec.n_sites = 8;
    spec.chi = 16;
    WordDistribution words;
    ComplexityReport r = run_point(spec, &words);

    CHECK(r.dmrg_converged);
    CHECK(r.excess <= r.c_q + 1e-9);
    CHECK(r.c_q <= r.c_mu + 1e-9);
    CHECK(r.s_half >= r.c_q - 1e-9);
    CHECK(r.h_mu >= -1e-12);
    CHECK(r.n_states >= 1);
    CHECK(r.gram_residual <= 1e-12);
    CHECK(r.gram_min_eig >= -1e-10);
    CHECK(r.energy < 0.0);
    CHECK(r.wall_seconds > 0.0);

    CHECK(words.d == 2);
    CHECK(words.w == 4);
    CHECK(std::abs(words.p.sum() - 1.0) <= 1e-12);
    bool has_model = false;
    for (const auto& [k, v] : words.metadata) has_model |= (k == "model" && v == "ising");
    CHECK(has_model);
}

TEST_CASE("measures_from_words reproduces the golden-mean values") {
    WordDistribution wd = hmm_words(golden_mean_process(0.5), 4);
    MeasureSet m = measures_from_words(wd, 1e-8, 1e-12);
    CHECK(std::abs(m.c_mu - (std::log2(3.0) - 2.0 / 3.0)) <= 1e-9);
    CHECK(std::abs(m.h_mu - 2.0 / 3.0) <= 1e-9);
    CHECK(m.machine.n_states == 2);
    CHECK(std::abs(m.gram.g(0, 1) - std::sqrt(0.5)) <= 1e-10);
}

TEST_CASE("polarized limit: all structure measures nearly vanish at theta 0") {
    PointSpec spec;
    spec.coupling = 5.0;
    spec.theta = 0.0;
    spec.L = 2;
    spec.n_sites = 32;
    spec.chi = 32;
    ComplexityReport r = run_point(spec);
    CHECK(r.c_mu <= 0.05);
    CHECK(r.c_q <= 0.05);
    CHECK(r.excess <= 0.05);
    CHECK(r.s_half <= 0.05);
    CHECK(r.h_mu <= 0.05);

    // measured along x the same state is a near-fair coin: maximal rate,
    // no predictive structure
    spec.theta = kPi / 2;
    ComplexityReport rx = run_point(spec);
    CHECK(rx.h_mu >= 0.99);
    CHECK(rx.excess <= 0.01);
}

TEST_CASE("translation defect is tiny away from criticality") {
    PointSpec spec;
    spec.coupling = 2.0;
    spec.theta = 0.0;
    spec.L = 2;
    spec.n_sites = 16;
    spec.chi = 16;
    CHECK(translation_defect(spec) <= 1e-4);

    PointSpec cramped = spec;
    cramped.n_sites = 4;
    cramped.L = 2;
    CHECK(code_of([&] { translation_defect(cramped); }) == ErrorCode::invalid_input);
}

TEST_CASE("sweep configs parse sections, lists, and comments") {
    SweepConfig cfg = parse_sweep_config(
        "# comment\n"
        "[model]\n"
        "type = bosehubbard\n"
        "n_max = 2\n"
        "nu = 1.0\n"
        "[grid]\n"
        "coupling = 1 4 10 ; inline comment\n"
        "L = 1 2\n"
        "chi = 16 32\n"
        "[system]\n"
        "n_sites = 12\n"
        "[dmrg]\n"
        "max_sweeps = 20\n"
        "energy_tol = 1e-10\n"
        "[analysis]\n"
        "merge_tol = 1e-7\n"
        "[run]\n"
        "seed = 99\n"
        "jobs = 2\n"
        "format = jsonl\n");
    CHECK(cfg.model == Model::bosehubbard);
    CHECK(cfg.couplings == std::vector<double>{1.0, 4.0, 10.0});
    CHECK(cfg.l_values == std::vector<long>{1, 2});
    CHECK(cfg.chi_values == std::vector<long>{16, 32});
    CHECK(cfg.n_sites == 12);
    CHECK(cfg.n_max == 2);
    CHECK(cfg.max_sweeps == 20);
    CHECK(cfg.energy_tol == 1e-10);
    CHECK(cfg.merge_tol == 1e-7);
    CHECK(cfg.seed == 99);
    CHECK(cfg.jobs == 2);
    CHECK(cfg.format == "jsonl");

    const long n_points = static_cast<long>(enumerate_points(cfg).size());
    CHECK(n_points == 3 * 1 * 2 * 2);  // couplings x thetas x L x chi
}

TEST_CASE("sweep config errors carry the config code") {
    auto bad = [](const char* text) {
        return code_of([&] { parse_sweep_config(text); });
    };
    CHECK(bad("[grid]\ncoupling = 1\nL = 1\nchi = 8\n[system]\nn_sites = 8\nwhat = 1\n") ==
          ErrorCode::config);
    CHECK(bad("[model]\ntype = ising\n") == ErrorCode::config);  // missing grid
    CHECK(bad("[model]\ntype = bosehubbard\ntheta = 0\n[grid]\ncoupling = 1\nL = 1\nchi = 8\n"
              "[system]\nn_sites = 8\n") == ErrorCode::config);  // theta on bosons
    CHECK(bad("[model]\ntype = ising\nn_max = 2\n[grid]\ncoupling = 1\nL = 1\nchi = 8\n"
              "[system]\nn_sites = 8\n") == ErrorCode::config);  // n_max on spins
    CHECK(bad("[grid]\ncoupling = 1\nL = 3\nchi = 8\n[system]\nn_sites = 8\n") ==
          ErrorCode::config);  // n_sites < 4L
    CHECK(bad("[grid]\ncoupling = 1\nL = 14\nchi = 8\n[system]\nn_sites = 64\n") ==
          ErrorCode::config);  // table cap
    CHECK(bad("[grid]\ncoupling = 1\nL = 1\nchi = 8\n[system]\nn_sites = 8\n[run]\nformat = xml\n") ==
          ErrorCode::config);
    CHECK(bad("key_outside_section = 1\n") == ErrorCode::config);
}

TEST_CASE("enumerated points get distinct deterministic seeds") {
    SweepConfig cfg = parse_sweep_config(kTinyConfig);
    std::vector<PointSpec> pts = enumerate_points(cfg);
    REQUIRE(pts.size() == 4);
    for (std::size_t i = 0; i < pts.size(); ++i)
        CHECK(pts[i].seed == mix_seed(7, static_cast<std::uint64_t>(i)));
}

TEST_CASE("a sweep records bad points as error rows without aborting") {
    SweepConfig cfg = parse_sweep_config(kTinyConfig);
    cfg.thetas.push_back(5.0);  // invalid angle: fails at the point level
    SweepOutcome out = run_sweep(cfg);
    REQUIRE(out.rows.size() == 6);
    CHECK(out.failures == 2);
    long ok = 0, bad = 0;
    for (const SweepRow& row : out.rows) {
        if (row.ok) ++ok;
        else {
            ++bad;
            CHECK(row.error_code == "invalid_input");
            CHECK(!row.error_message.empty());
        }
    }
    CHECK(ok == 4);
    CHECK(bad == 2);

    const std::string csv = csv_of(cfg, out);
    CHECK(csv.find("error:invalid_input") != std::string::npos);
    CHECK(csv.find(
              "model,coupling,basis,L,chi,n_sites,c_mu_bits,c_q_bits,excess_entropy_bits,"
              "half_chain_entropy_bits,entropy_rate_bits,energy,max_truncation_error,causal_states,"
              "gram_iterations,gram_residual,gram_min_eig,dropped_past_mass,status") !=
          std::string::npos);
}

TEST_CASE("sweep output is byte-stable across reruns and job counts") {
    SweepConfig cfg = parse_sweep_config(kTinyConfig);
    cfg.jobs = 1;
    const std::string serial = csv_of(cfg, run_sweep(cfg));
    const std::string again = csv_of(cfg, run_sweep(cfg));
    CHECK(serial == again);

    cfg.jobs = 3;
    const std::string parallel = csv_of(cfg, run_sweep(cfg));
    CHECK(serial == parallel);
}

TEST_CASE("jsonl output parses line by line with a tagged header") {
    SweepConfig cfg = parse_sweep_config(kTinyConfig);
    cfg.format = "jsonl";
    SweepOutcome out = run_sweep(cfg);
    std::ostringstream os;
    write_rows_jsonl(cfg, out, os);

    std::istringstream is(os.str());
    std::string line;
    REQUIRE(std::getline(is, line));
    nlohmann::json head = nlohmann::json::parse(line);
    CHECK(head["qcomplexity_sweep"] == 1);
    CHECK(head["model"] == "ising");

    long rows = 0;
    while (std::getline(is, line)) {
        nlohmann::json j = nlohmann::json::parse(line);
        CHECK(j["status"] == "ok");
        CHECK(j["c_q_bits"].get<double>() <= j["c_mu_bits"].get<double>() + 1e-9);
        ++rows;
    }
    CHECK(rows == 4);
}

TEST_CASE("run_sweep_to_file fails fast on an unwritable path") {
    SweepConfig cfg = parse_sweep_config(kTinyConfig);
    CHECK(code_of([&] { run_sweep_to_file(cfg, "/nonexistent-dir/out.csv"); }) == ErrorCode::io);
}

TEST_CASE("dense reference agrees with the full mps pipeline on a small point") {
    PointSpec spec;
    spec.coupling = 0.5;
    spec.theta = kPi / 4;
    spec.L = 2;
    spec.n_sites = 6;
    spec.chi = 16;
    spec.energy_tol = 1e-14;
    spec.lanczos_tol = 1e-13;
    spec.svd_cutoff = 0.0;

    DenseReference ref = dense_reference(spec);
    WordDistribution words;
    ComplexityReport r = run_point(spec, &words);

    CHECK(std::abs(r.energy - ref.energy) <= 1e-9 * std::abs(ref.energy));
    CHECK(0.5 * (words.p - ref.words).cwiseAbs().sum() <= 1e-8);
    CHECK(std::abs(r.c_mu - ref.measures.c_mu) <= 1e-6);
    CHECK(std::abs(r.c_q - ref.measures.c_q) <= 1e-6);
    CHECK(std::abs(r.excess - ref.measures.excess) <= 1e-6);
    CHECK(std::abs(r.s_half - ref.s_half) <= 1e-6);
}

TEST_CASE("the quick validation suite passes end to end") {
    std::vector<Check> checks = run_validation(true);
    CHECK(!checks.empty());
    for (const Check& c : checks) {
        INFO(c.name, ": ", c.detail);
        CHECK(c.pass);
    }
}
