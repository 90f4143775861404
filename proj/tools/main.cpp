// qcomplexity command-line driver.  Talks to the engine exclusively through
// the C API so the tool doubles as a smoke test of the shared library.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "qcomplexity.h"

namespace {

int exit_code_for(qc_status status) {
    switch (status) {
        case QC_OK:
            return 0;
        case QC_ERR_INVALID_INPUT:
        case QC_ERR_CAPACITY:
        case QC_ERR_CONFIG:
            return 2;  // bad request, nothing was computed
        default:
            return 1;
    }
}

int report_failure(const char* what, qc_status status) {
    std::fprintf(stderr, "error: %s: %s (%s)\n", what, qc_last_error(), qc_status_name(status));
    return exit_code_for(status);
}

void print_field(const char* key, double value) {
    std::printf("%s = %.17g\n", key, value);
}

struct PointArgs {
    std::string model = "ising";
    double coupling = 1.0;
    double theta = 0.0;
    std::int32_t L = 2;
    std::int32_t n_sites = 32;
    std::int32_t chi = 32;
    std::int32_t n_max = -1;
    double nu = -1;
    double symmetry_break_h = -1;
    double penalty_weight = -1;
    double merge_tol = -1;
    double p_floor = -1;
    std::int32_t max_sweeps = -1;
    double energy_tol = -1;
    double lanczos_tol = -1;
    double svd_cutoff = -1;
    std::uint64_t seed = 0;
    std::string dump_words;
    bool translation_check = false;
};

qc_point_params params_of(const PointArgs& a) {
    qc_point_params p{};
    p.model = a.model.c_str();
    p.coupling = a.coupling;
    p.theta = a.theta;
    p.l = a.L;
    p.n_sites = a.n_sites;
    p.chi = a.chi;
    p.n_max = a.n_max;
    p.nu = a.nu;
    p.symmetry_break_h = a.symmetry_break_h;
    p.penalty_weight = a.penalty_weight;
    p.merge_tol = a.merge_tol;
    p.p_floor = a.p_floor;
    p.max_sweeps = a.max_sweeps;
    p.energy_tol = a.energy_tol;
    p.lanczos_tol = a.lanczos_tol;
    p.svd_cutoff = a.svd_cutoff;
    p.seed = a.seed;
    return p;
}

int run_point_command(const PointArgs& args) {
    qc_point_params params = params_of(args);
    qc_point_result result;
    qc_status status = qc_run_point(&params, &result);
    if (status != QC_OK) return report_failure("point", status);

    std::printf("model = %s\n", args.model.c_str());
    print_field("coupling", args.coupling);
    if (args.model == "ising") print_field("theta", args.theta);
    std::printf("L = %" PRId32 "\n", args.L);
    std::printf("n_sites = %" PRId32 "\n", args.n_sites);
    std::printf("chi = %" PRId32 "\n", args.chi);
    print_field("c_mu_bits", result.c_mu_bits);
    print_field("c_q_bits", result.c_q_bits);
    print_field("excess_entropy_bits", result.excess_entropy_bits);
    print_field("half_chain_entropy_bits", result.half_chain_entropy_bits);
    print_field("entropy_rate_bits", result.entropy_rate_bits);
    print_field("energy", result.energy);
    print_field("max_truncation_error", result.max_truncation_error);
    std::printf("causal_states = %" PRId64 "\n", result.causal_states);
    std::printf("gram_iterations = %" PRId64 "\n", result.gram_iterations);
    print_field("gram_residual", result.gram_residual);
    print_field("gram_min_eig", result.gram_min_eig);
    print_field("dropped_past_mass", result.dropped_past_mass);
    print_field("lost_transition_mass", result.lost_transition_mass);
    print_field("max_intra_state_tv", result.max_intra_state_tv);
    if (args.model == "bosehubbard") print_field("filling_msd", result.filling_msd);
    std::printf("dmrg_sweeps = %" PRId32 "\n", result.dmrg_sweeps);
    std::printf("dmrg_converged = %s\n", result.dmrg_converged ? "true" : "false");
    print_field("wall_seconds", result.wall_seconds);

    if (!args.dump_words.empty()) {
        status = qc_point_words(&params, args.dump_words.c_str());
        if (status != QC_OK) return report_failure("dump-words", status);
        std::fprintf(stderr, "wrote word table to %s\n", args.dump_words.c_str());
    }
    if (args.translation_check) {
        double defect = 0;
        status = qc_translation_defect(&params, &defect);
        if (status != QC_OK) return report_failure("translation-check", status);
        print_field("translation_defect_tv", defect);
    }
    return 0;
}

void sweep_progress(int64_t done, int64_t total, const char* label, int ok, void*) {
    std::fprintf(stderr, "[%" PRId64 "/%" PRId64 "] %s %s\n", done, total, ok ? "ok  " : "FAIL",
                 label);
}

int run_sweep_command(const std::string& config_path, std::string out_path,
                      const std::string& format, std::int32_t jobs, bool quiet) {
    qc_sweep* sweep = nullptr;
    qc_status status = qc_sweep_open(config_path.c_str(), &sweep);
    if (status != QC_OK) return report_failure("sweep config", status);

    if (!format.empty()) {
        status = qc_sweep_set_format(sweep, format.c_str());
        if (status != QC_OK) {
            qc_sweep_close(sweep);
            return report_failure("sweep format", status);
        }
    }
    if (jobs > 0) qc_sweep_set_jobs(sweep, jobs);
    if (!quiet) qc_sweep_set_progress(sweep, &sweep_progress, nullptr);

    if (out_path.empty()) out_path = format == "jsonl" ? "sweep.jsonl" : "sweep.csv";

    int64_t total = qc_sweep_point_count(sweep);
    if (!quiet) std::fprintf(stderr, "sweep: %" PRId64 " points -> %s\n", total, out_path.c_str());

    int64_t failures = 0;
    status = qc_sweep_run(sweep, out_path.c_str(), &failures);
    qc_sweep_close(sweep);
    if (status != QC_OK) return report_failure("sweep", status);

    std::printf("wrote %s: %" PRId64 " points, %" PRId64 " failed\n", out_path.c_str(), total,
                failures);
    return failures == 0 ? 0 : 1;
}

int run_validate_command(bool quick) {
    qc_validation* v = nullptr;
    qc_status status = qc_validation_run(quick ? 1 : 0, &v);
    if (status != QC_OK) return report_failure("validate", status);

    int64_t count = qc_validation_count(v);
    int64_t failures = qc_validation_failures(v);
    for (int64_t i = 0; i < count; ++i) {
        bool pass = qc_validation_passed(v, i) != 0;
        const char* detail = qc_validation_detail(v, i);
        if (pass) {
            std::printf("PASS %s\n", qc_validation_name(v, i));
        } else {
            std::printf("FAIL %s: %s\n", qc_validation_name(v, i),
                        detail != nullptr ? detail : "");
        }
    }
    std::printf("%" PRId64 "/%" PRId64 " checks passed\n", count - failures, count);
    qc_validation_free(v);
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"structural complexity of measurement processes on 1-D lattice ground states"};
    app.set_version_flag("--version", qc_version());
    app.require_subcommand(1);

    // point
    PointArgs point;
    auto* point_cmd = app.add_subcommand("point", "compute one parameter point");
    point_cmd->add_option("--model", point.model, "ising or bosehubbard")
        ->check(CLI::IsMember({"ising", "bosehubbard"}))
        ->required();
    point_cmd->add_option("--coupling", point.coupling, "B/J (ising) or U/J (bosehubbard)")
        ->required();
    point_cmd->add_option("--theta", point.theta, "ising measurement angle in [0, pi/2]");
    point_cmd->add_option("--L", point.L, "truncated Markov order (window is 2L sites)");
    point_cmd->add_option("--N,--n-sites", point.n_sites, "chain length (even)");
    point_cmd->add_option("--chi", point.chi, "bond dimension cap");
    point_cmd->add_option("--n-max", point.n_max, "bosehubbard occupation cutoff");
    point_cmd->add_option("--nu", point.nu, "bosehubbard filling");
    point_cmd->add_option("--symmetry-break", point.symmetry_break_h,
                          "ising longitudinal pinning field");
    point_cmd->add_option("--penalty-weight", point.penalty_weight,
                          "bosehubbard filling penalty weight");
    point_cmd->add_option("--merge-tol", point.merge_tol, "causal-state merge tolerance (TV)");
    point_cmd->add_option("--p-floor", point.p_floor, "past-probability floor");
    point_cmd->add_option("--max-sweeps", point.max_sweeps, "DMRG sweep cap");
    point_cmd->add_option("--energy-tol", point.energy_tol, "DMRG energy convergence tolerance");
    point_cmd->add_option("--lanczos-tol", point.lanczos_tol, "local eigensolver tolerance");
    point_cmd->add_option("--svd-cutoff", point.svd_cutoff, "discarded squared-weight cutoff");
    point_cmd->add_option("--seed", point.seed, "RNG seed (0 selects the default)");
    point_cmd->add_option("--dump-words", point.dump_words, "write the outcome-word table here");
    point_cmd->add_flag("--translation-check", point.translation_check,
                        "also report the two-site translation defect");

    // sweep
    std::string config_path, out_path, format;
    std::int32_t jobs = 0;
    bool quiet = false;
    auto* sweep_cmd = app.add_subcommand("sweep", "run a parameter grid from a config file");
    sweep_cmd->add_option("--config", config_path, "sweep config file")
        ->required()
        ->check(CLI::ExistingFile);
    sweep_cmd->add_option("--out", out_path, "output path (default sweep.csv / sweep.jsonl)");
    sweep_cmd->add_option("--format", format, "csv or jsonl (overrides config)")
        ->check(CLI::IsMember({"csv", "jsonl"}));
    sweep_cmd->add_option("--jobs", jobs, "worker threads (default: config, then QCOMPLEXITY_JOBS)")
        ->check(CLI::NonNegativeNumber);
    sweep_cmd->add_flag("--quiet", quiet, "suppress progress output");

    // validate
    bool quick = false;
    auto* validate_cmd = app.add_subcommand("validate", "run the built-in oracle suite");
    validate_cmd->add_flag("--quick", quick, "small subset for smoke testing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (point_cmd->parsed()) return run_point_command(point);
    if (sweep_cmd->parsed()) return run_sweep_command(config_path, out_path, format, jobs, quiet);
    return run_validate_command(quick);
}
