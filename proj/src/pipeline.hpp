#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "compmech.hpp"
#include "dmrg.hpp"
#include "models.hpp"
#include "qmodel.hpp"

namespace qc {

enum class Model { ising, bosehubbard };

const char* model_name(Model m);
Model model_from_string(const std::string& s);

// One grid point.  coupling is B/J for the Ising chain and U/J for
// Bose-Hubbard; the hopping/exchange J is the unit of energy.
struct PointSpec {
    Model model = Model::ising;
    double coupling = 1.0;
    double theta = 0.0;           // Ising measurement angle, [0, pi/2]
    long L = 2;                   // truncated Markov order
    long n_sites = 32;
    long chi = 32;
    long n_max = 3;               // Bose-Hubbard local cutoff
    double nu = 1.0;              // Bose-Hubbard filling
    double symmetry_break_h = -1; // < 0 selects the default 1e-6
    double penalty_weight = -1;   // < 0 selects the default 10*max(J,U)
    double merge_tol = 1e-8;
    double p_floor = 1e-12;
    long max_sweeps = 64;
    double energy_tol = 1e-12;
    double lanczos_tol = 1e-12;
    long lanczos_max_iter = 200;
    double svd_cutoff = 1e-14;
    long warmup_chi = 16;
    std::uint64_t seed = 1;
};

void validate_point(const PointSpec& spec);
long local_dim(const PointSpec& spec);
std::string basis_label(const PointSpec& spec);
double effective_symmetry_break(double h);  // resolves the < 0 sentinel

struct ComplexityReport {
    double c_mu = 0;
    double c_q = 0;
    double excess = 0;
    double s_half = 0;
    double h_mu = 0;
    double energy = 0;
    double max_truncation_error = 0;
    long n_states = 0;
    long gram_iterations = 0;
    double gram_residual = 0;
    double gram_min_eig = 0;
    double dropped_past_mass = 0;
    double lost_transition_mass = 0;
    double max_intra_state_tv = 0;
    long dmrg_sweeps = 0;
    bool dmrg_converged = false;
    double filling_msd = 0;  // Bose-Hubbard only
    double wall_seconds = 0;
};

// Measures derived from an outcome table alone; shared by the MPS pipeline
// and the exact-diagonalization cross-checks.
struct MeasureSet {
    double c_mu = 0;
    double c_q = 0;
    double excess = 0;
    double h_mu = 0;
    double dropped_past_mass = 0;
    EpsilonMachine machine;
    GramResult gram;
};

MeasureSet measures_from_words(const WordDistribution& wd, double merge_tol, double p_floor);

// Ground-state stage alone (theta and the analysis knobs are not consumed):
// DMRG then canonicalization with the center at n_sites/2 - 1.  Callers can
// fan several measurement bases and window lengths off one solve.
struct GroundPoint {
    MpsState state;
    double energy = 0;
    double s_half = 0;
    double max_truncation_error = 0;
    long sweeps = 0;
    bool converged = false;
    double filling_msd = 0;  // Bose-Hubbard only
};

GroundPoint ground_point(const PointSpec& spec);
MeasurementBasis point_basis(const PointSpec& spec);

// Full pipeline for one point: DMRG ground state, central 2L-site outcome
// table, causal-state machine, classical and quantum measures.  words_out, if
// given, receives the outcome table.
ComplexityReport run_point(const PointSpec& spec, WordDistribution* words_out = nullptr);

// Largest total-variation distance between the central window's outcome table
// and the same table shifted two sites either way; a bulk-translation
// diagnostic.  Needs n_sites >= 2L + 4.
double translation_defect(const PointSpec& spec);

struct SweepConfig {
    Model model = Model::ising;
    std::vector<double> couplings;
    std::vector<double> thetas{0.0};
    std::vector<long> l_values;
    std::vector<long> chi_values;
    long n_sites = 0;
    long n_max = 3;
    double nu = 1.0;
    double symmetry_break_h = -1;
    double penalty_weight = -1;
    long max_sweeps = 64;
    double energy_tol = 1e-12;
    double lanczos_tol = 1e-12;
    long lanczos_max_iter = 200;
    double svd_cutoff = 1e-14;
    long warmup_chi = 16;
    double merge_tol = 1e-8;
    double p_floor = 1e-12;
    std::uint64_t seed = 1;
    long jobs = 0;  // 0: QCOMPLEXITY_JOBS env or 1
    std::string format = "csv";
};

SweepConfig parse_sweep_config(const std::string& text);
SweepConfig load_sweep_config(const std::string& path);

std::vector<PointSpec> enumerate_points(const SweepConfig& cfg);

struct SweepRow {
    PointSpec spec;
    bool ok = false;
    ComplexityReport report;
    std::string error_code;
    std::string error_message;
};

struct SweepOutcome {
    std::vector<SweepRow> rows;
    long failures = 0;
};

using SweepProgress = std::function<void(long done, long total, const SweepRow& row)>;

// Runs every grid point; per-point failures become error rows, they do not
// abort the sweep.  Row order and content are independent of the job count.
SweepOutcome run_sweep(const SweepConfig& cfg, const SweepProgress& progress = nullptr);

void write_rows_csv(const SweepConfig& cfg, const SweepOutcome& out, std::ostream& os);
void write_rows_jsonl(const SweepConfig& cfg, const SweepOutcome& out, std::ostream& os);

// Opens (and truncates) the output before computing, so an unwritable path
// fails fast; returns the failed-row count.
long run_sweep_to_file(const SweepConfig& cfg, const std::string& path, const SweepProgress& progress = nullptr);

std::string fmt17(double x);

}  // namespace qc
