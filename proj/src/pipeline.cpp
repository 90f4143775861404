#include "pipeline.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "oracle.hpp"

namespace qc {

// The pinning has to dominate the finite-size tunneling splitting, which at
// the deepest oracle-suite point (N=10, B/J=0.1) is ~5e-8; 1e-6 pins the
// broken state cleanly there while perturbing gapped spectra at O(h^2).
double effective_symmetry_break(double h) { return h < 0 ? 1e-6 : h; }

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& tok, const std::string& key) {
    try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        fail(ErrorCode::config, "config: bad number '" + tok + "' for " + key);
    }
}

long parse_long(const std::string& tok, const std::string& key) {
    try {
        std::size_t used = 0;
        const long v = std::stol(tok, &used);
        if (used != tok.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        fail(ErrorCode::config, "config: bad integer '" + tok + "' for " + key);
    }
}

std::uint64_t parse_u64(const std::string& tok, const std::string& key) {
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(tok, &used);
        if (used != tok.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        fail(ErrorCode::config, "config: bad integer '" + tok + "' for " + key);
    }
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

// A value list is whitespace-separated tokens, each a number or an inclusive
// start:stop:step range.
std::vector<double> parse_double_list(const std::string& value, const std::string& key) {
    std::vector<double> out;
    for (const std::string& tok : split_ws(value)) {
        const auto c1 = tok.find(':');
        if (c1 == std::string::npos) {
            out.push_back(parse_double(tok, key));
            continue;
        }
        const auto c2 = tok.find(':', c1 + 1);
        if (c2 == std::string::npos) fail(ErrorCode::config, "config: range '" + tok + "' needs start:stop:step");
        const double start = parse_double(tok.substr(0, c1), key);
        const double stop = parse_double(tok.substr(c1 + 1, c2 - c1 - 1), key);
        const double step = parse_double(tok.substr(c2 + 1), key);
        if (!(step > 0) || stop < start - 1e-12)
            fail(ErrorCode::config, "config: bad range '" + tok + "' for " + key);
        const long count = static_cast<long>(std::floor((stop - start) / step + 0.5)) + 1;
        for (long i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
    }
    return out;
}

std::vector<long> parse_long_list(const std::string& value, const std::string& key) {
    std::vector<long> out;
    for (const std::string& tok : split_ws(value)) {
        const auto c1 = tok.find(':');
        if (c1 == std::string::npos) {
            out.push_back(parse_long(tok, key));
            continue;
        }
        const auto c2 = tok.find(':', c1 + 1);
        if (c2 == std::string::npos) fail(ErrorCode::config, "config: range '" + tok + "' needs start:stop:step");
        const long start = parse_long(tok.substr(0, c1), key);
        const long stop = parse_long(tok.substr(c1 + 1, c2 - c1 - 1), key);
        const long step = parse_long(tok.substr(c2 + 1), key);
        if (step < 1 || stop < start) fail(ErrorCode::config, "config: bad range '" + tok + "' for " + key);
        for (long v = start; v <= stop; v += step) out.push_back(v);
    }
    return out;
}

}  // namespace

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

const char* model_name(Model m) { return m == Model::ising ? "ising" : "bosehubbard"; }

Model model_from_string(const std::string& s) {
    if (s == "ising") return Model::ising;
    if (s == "bosehubbard" || s == "bose_hubbard") return Model::bosehubbard;
    fail(ErrorCode::config, "config: unknown model '" + s + "'");
}

long local_dim(const PointSpec& spec) { return spec.model == Model::ising ? 2 : spec.n_max + 1; }

std::string basis_label(const PointSpec& spec) {
    if (spec.model == Model::ising) return "theta=" + fmt17(spec.theta);
    return "number";
}

void validate_point(const PointSpec& spec) {
    if (spec.L < 1) fail(ErrorCode::invalid_input, "point: L must be >= 1");
    if (spec.n_sites < 4 || spec.n_sites % 2 != 0)
        fail(ErrorCode::invalid_input, "point: n_sites must be even and >= 4");
    if (spec.n_sites < 2 * spec.L)
        fail(ErrorCode::invalid_input, "point: the 2L-site window does not fit on the chain");
    if (spec.chi < 2) fail(ErrorCode::invalid_input, "point: chi must be >= 2");
    const long d = local_dim(spec);
    if (2.0 * static_cast<double>(spec.L) * std::log2(static_cast<double>(d)) > 26.0)
        fail(ErrorCode::capacity, "point: the 2L-site outcome table exceeds the 2^26 cap");
    if (!(spec.coupling >= 0)) fail(ErrorCode::invalid_input, "point: coupling must be >= 0");
    if (spec.model == Model::ising) {
        if (!(spec.theta >= 0 && spec.theta <= kPi / 2 + 1e-12))
            fail(ErrorCode::invalid_input, "point: theta must lie in [0, pi/2]");
    } else {
        if (spec.n_max < 1) fail(ErrorCode::invalid_input, "point: n_max must be >= 1");
        const double total = spec.nu * static_cast<double>(spec.n_sites);
        if (!(spec.nu > 0) || std::abs(total - std::round(total)) > 1e-9)
            fail(ErrorCode::invalid_input, "point: nu * n_sites must be a positive integer");
        if (spec.nu > static_cast<double>(spec.n_max))
            fail(ErrorCode::invalid_input, "point: nu exceeds the local occupation cutoff");
    }
    if (spec.merge_tol < 0 || spec.p_floor < 0)
        fail(ErrorCode::invalid_input, "point: merge_tol and p_floor must be >= 0");
    if (!(spec.energy_tol > 0) || !(spec.lanczos_tol > 0) || spec.svd_cutoff < 0)
        fail(ErrorCode::invalid_input, "point: solver tolerances must be positive");
    if (spec.max_sweeps < 1 || spec.lanczos_max_iter < 1 || spec.warmup_chi < 1)
        fail(ErrorCode::invalid_input, "point: iteration budgets must be >= 1");
}

MeasurementBasis point_basis(const PointSpec& spec) {
    if (spec.model == Model::ising) return sigma_theta_basis(spec.theta);
    return number_basis(spec.n_max);
}

GroundPoint ground_point(const PointSpec& spec) {
    validate_point(spec);
    MpoOperator h;
    if (spec.model == Model::ising) {
        IsingParams ip;
        ip.coupling = 1.0;
        ip.field = spec.coupling;
        ip.n_sites = spec.n_sites;
        ip.symmetry_break_h = effective_symmetry_break(spec.symmetry_break_h);
        h = ising_mpo(ip);
    } else {
        BoseHubbardParams bp;
        bp.hopping = 1.0;
        bp.repulsion = spec.coupling;
        bp.n_sites = spec.n_sites;
        bp.n_max = spec.n_max;
        bp.filling = spec.nu;
        bp.penalty_weight = spec.penalty_weight;
        h = bose_hubbard_mpo(bp);
    }

    DmrgOptions dopts;
    dopts.chi = spec.chi;
    dopts.warmup_chi = spec.warmup_chi;
    dopts.max_sweeps = spec.max_sweeps;
    dopts.energy_tol = spec.energy_tol;
    dopts.svd_cutoff = spec.svd_cutoff;
    dopts.lanczos_tol = spec.lanczos_tol;
    dopts.lanczos_max_iter = spec.lanczos_max_iter;
    dopts.seed = spec.seed;

    DmrgResult dmrg;
    if (spec.model == Model::bosehubbard) {
        // Start in the target filling sector: a random start carries large
        // particle-number deviations whose penalty energy makes the first
        // local eigenproblems needlessly stiff.
        const long d = spec.n_max + 1;
        const long total = std::lround(spec.nu * static_cast<double>(spec.n_sites));
        std::vector<VecC> kets(static_cast<std::size_t>(spec.n_sites));
        for (long i = 0; i < spec.n_sites; ++i) {
            const long occ = (i + 1) * total / spec.n_sites - i * total / spec.n_sites;
            kets[static_cast<std::size_t>(i)] = VecC::Zero(d);
            kets[static_cast<std::size_t>(i)](occ) = 1.0;
        }
        const MpsState filled = product_state(kets);
        dmrg = ground_state(h, dopts, &filled);
    } else {
        dmrg = ground_state(h, dopts);
    }

    GroundPoint out;
    out.state = canonicalize(dmrg.state, spec.n_sites / 2 - 1);
    out.energy = dmrg.energy;
    out.s_half = half_chain_entropy(out.state);
    out.max_truncation_error = dmrg.max_truncation_error;
    out.sweeps = dmrg.sweeps;
    out.converged = dmrg.converged;
    if (spec.model == Model::bosehubbard) {
        const double target = std::round(spec.nu * static_cast<double>(spec.n_sites));
        out.filling_msd = expectation(out.state, number_deviation_mpo(spec.n_sites, spec.n_max, target));
    }
    return out;
}

namespace {

void fill_word_metadata(const PointSpec& spec, const WordWindow& window, WordDistribution& wd) {
    wd.metadata.emplace_back("model", model_name(spec.model));
    wd.metadata.emplace_back("coupling", fmt17(spec.coupling));
    wd.metadata.emplace_back("basis", basis_label(spec));
    wd.metadata.emplace_back("L", std::to_string(spec.L));
    wd.metadata.emplace_back("n_sites", std::to_string(spec.n_sites));
    wd.metadata.emplace_back("chi", std::to_string(spec.chi));
    wd.metadata.emplace_back("window_start", std::to_string(window.start));
    wd.metadata.emplace_back("seed", std::to_string(spec.seed));
}

}  // namespace

MeasureSet measures_from_words(const WordDistribution& wd, double merge_tol, double p_floor) {
    MeasureSet m;
    ConditionalFamily cf = conditionals(wd, p_floor);
    m.machine = build_machine(cf, merge_tol);
    m.c_mu = statistical_complexity(m.machine);
    m.h_mu = entropy_rate(cf);
    m.excess = excess_entropy(wd);
    m.dropped_past_mass = cf.dropped_mass;
    m.gram = gram_fixed_point(m.machine);
    m.c_q = quantum_memory(m.gram, m.machine.stationary);
    return m;
}

ComplexityReport run_point(const PointSpec& spec, WordDistribution* words_out) {
    validate_point(spec);
    const auto t0 = std::chrono::steady_clock::now();

    GroundPoint gp = ground_point(spec);
    const MpsState rotated = apply_local_basis(gp.state, point_basis(spec));

    ComplexityReport rep;
    rep.energy = gp.energy;
    rep.max_truncation_error = gp.max_truncation_error;
    rep.dmrg_sweeps = gp.sweeps;
    rep.dmrg_converged = gp.converged;
    rep.s_half = gp.s_half;
    rep.filling_msd = gp.filling_msd;

    const WordWindow window{spec.n_sites / 2 - spec.L, 2 * spec.L};
    WordDistribution wd;
    wd.d = local_dim(spec);
    wd.w = 2 * spec.L;
    wd.p = window_probabilities(rotated, window);
    fill_word_metadata(spec, window, wd);

    MeasureSet m = measures_from_words(wd, spec.merge_tol, spec.p_floor);
    rep.c_mu = m.c_mu;
    rep.c_q = m.c_q;
    rep.excess = m.excess;
    rep.h_mu = m.h_mu;
    rep.n_states = m.machine.n_states;
    rep.dropped_past_mass = m.dropped_past_mass;
    rep.lost_transition_mass = m.machine.lost_transition_mass;
    rep.max_intra_state_tv = m.machine.max_intra_state_tv;
    rep.gram_iterations = m.gram.iterations;
    rep.gram_residual = m.gram.residual;
    rep.gram_min_eig = gram_min_eigenvalue(m.gram);

    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (words_out) *words_out = std::move(wd);
    return rep;
}

double translation_defect(const PointSpec& spec) {
    validate_point(spec);
    if (spec.n_sites < 2 * spec.L + 4)
        fail(ErrorCode::invalid_input, "translation_defect: need n_sites >= 2L + 4 to shift the window by 2");
    GroundPoint gp = ground_point(spec);
    const MpsState rotated = apply_local_basis(gp.state, point_basis(spec));

    // Compare the central window against the same window shifted two sites
    // either way; in the bulk of a long chain all three agree.
    const WordWindow here{spec.n_sites / 2 - spec.L, 2 * spec.L};
    const VecR p_here = window_probabilities(rotated, here);
    double defect = 0;
    for (long shift : {-2L, 2L}) {
        const WordWindow there{here.start + shift, here.len};
        if (there.start < 0 || there.start + there.len > spec.n_sites) continue;
        const long center = std::min(std::max(spec.n_sites / 2 - 1, there.start), there.start + there.len - 1);
        const MpsState shifted = canonicalize(rotated, center);
        const VecR p_there = window_probabilities(shifted, there);
        defect = std::max(defect, 0.5 * (p_here - p_there).cwiseAbs().sum());
    }
    return defect;
}

SweepConfig parse_sweep_config(const std::string& text) {
    SweepConfig cfg;
    bool saw_theta = false;
    bool saw_bh_key = false;
    std::string section;

    std::istringstream is(text);
    std::string raw;
    long lineno = 0;
    while (std::getline(is, raw)) {
        ++lineno;
        std::string line = raw;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') fail(ErrorCode::config, "config line " + std::to_string(lineno) + ": unterminated section");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "model" && section != "grid" && section != "system" && section != "dmrg" &&
                section != "analysis" && section != "run")
                fail(ErrorCode::config, "config line " + std::to_string(lineno) + ": unknown section [" + section + "]");
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(ErrorCode::config, "config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            fail(ErrorCode::config, "config line " + std::to_string(lineno) + ": empty key or value");

        if (section == "model") {
            if (key == "type") cfg.model = model_from_string(value);
            else if (key == "theta") { cfg.thetas = parse_double_list(value, key); saw_theta = true; }
            else if (key == "n_max") { cfg.n_max = parse_long(value, key); saw_bh_key = true; }
            else if (key == "nu") { cfg.nu = parse_double(value, key); saw_bh_key = true; }
            else if (key == "symmetry_break_h") cfg.symmetry_break_h = parse_double(value, key);
            else if (key == "penalty_weight") cfg.penalty_weight = parse_double(value, key);
            else fail(ErrorCode::config, "config: unknown key '" + key + "' in [model]");
        } else if (section == "grid") {
            if (key == "coupling") cfg.couplings = parse_double_list(value, key);
            else if (key == "L") cfg.l_values = parse_long_list(value, key);
            else if (key == "chi") cfg.chi_values = parse_long_list(value, key);
            else fail(ErrorCode::config, "config: unknown key '" + key + "' in [grid]");
        } else if (section == "system") {
            if (key == "n_sites") cfg.n_sites = parse_long(value, key);
            else fail(ErrorCode::config, "config: unknown key '" + key + "' in [system]");
        } else if (section == "dmrg") {
            if (key == "max_sweeps") cfg.max_sweeps = parse_long(value, key);
            else if (key == "energy_tol") cfg.energy_tol = parse_double(value, key);
            else if (key == "lanczos_tol") cfg.lanczos_tol = parse_double(value, key);
            else if (key == "lanczos_max_iter") cfg.lanczos_max_iter = parse_long(value, key);
            else if (key == "svd_cutoff") cfg.svd_cutoff = parse_double(value, key);
            else if (key == "warmup_chi") cfg.warmup_chi = parse_long(value, key);
            else fail(ErrorCode::config, "config: unknown key '" + key + "' in [dmrg]");
        } else if (section == "analysis") {
            if (key == "merge_tol") cfg.merge_tol = parse_double(value, key);
            else if (key == "p_floor") cfg.p_floor = parse_double(value, key);
            else fail(ErrorCode::config, "config: unknown key '" + key + "' in [analysis]");
        } else if (section == "run") {
            if (key == "seed") cfg.seed = parse_u64(value, key);
            else if (key == "jobs") cfg.jobs = parse_long(value, key);
            else if (key == "format") cfg.format = value;
            else fail(ErrorCode::config, "config: unknown key '" + key + "' in [run]");
        } else {
            fail(ErrorCode::config, "config line " + std::to_string(lineno) + ": key outside any section");
        }
    }

    if (cfg.model == Model::bosehubbard && saw_theta)
        fail(ErrorCode::config, "config: theta applies only to the ising model");
    if (cfg.model == Model::ising && saw_bh_key)
        fail(ErrorCode::config, "config: n_max/nu apply only to the bosehubbard model");
    if (cfg.couplings.empty()) fail(ErrorCode::config, "config: [grid] coupling is required");
    if (cfg.l_values.empty()) fail(ErrorCode::config, "config: [grid] L is required");
    if (cfg.chi_values.empty()) fail(ErrorCode::config, "config: [grid] chi is required");
    if (cfg.thetas.empty()) fail(ErrorCode::config, "config: theta list is empty");
    if (cfg.n_sites < 4 || cfg.n_sites % 2 != 0)
        fail(ErrorCode::config, "config: [system] n_sites must be even and >= 4");
    const long d = cfg.model == Model::ising ? 2 : cfg.n_max + 1;
    for (long l : cfg.l_values) {
        if (l < 1) fail(ErrorCode::config, "config: L values must be >= 1");
        if (cfg.n_sites < 4 * l) fail(ErrorCode::config, "config: n_sites must be >= 4L for every L");
        if (2.0 * static_cast<double>(l) * std::log2(static_cast<double>(std::max<long>(d, 2))) > 26.0)
            fail(ErrorCode::config, "config: L=" + std::to_string(l) + " exceeds the outcome-table cap");
    }
    if (cfg.format != "csv" && cfg.format != "jsonl")
        fail(ErrorCode::config, "config: format must be csv or jsonl");
    if (cfg.jobs < 0) fail(ErrorCode::config, "config: jobs must be >= 0");
    return cfg;
}

SweepConfig load_sweep_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::io, "cannot read config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_sweep_config(buf.str());
}

std::vector<PointSpec> enumerate_points(const SweepConfig& cfg) {
    std::vector<PointSpec> points;
    const std::vector<double> thetas = cfg.model == Model::ising ? cfg.thetas : std::vector<double>{0.0};
    for (double coupling : cfg.couplings) {
        for (double theta : thetas) {
            for (long l : cfg.l_values) {
                for (long chi : cfg.chi_values) {
                    PointSpec p;
                    p.model = cfg.model;
                    p.coupling = coupling;
                    p.theta = theta;
                    p.L = l;
                    p.n_sites = cfg.n_sites;
                    p.chi = chi;
                    p.n_max = cfg.n_max;
                    p.nu = cfg.nu;
                    p.symmetry_break_h = cfg.symmetry_break_h;
                    p.penalty_weight = cfg.penalty_weight;
                    p.merge_tol = cfg.merge_tol;
                    p.p_floor = cfg.p_floor;
                    p.max_sweeps = cfg.max_sweeps;
                    p.energy_tol = cfg.energy_tol;
                    p.lanczos_tol = cfg.lanczos_tol;
                    p.lanczos_max_iter = cfg.lanczos_max_iter;
                    p.svd_cutoff = cfg.svd_cutoff;
                    p.warmup_chi = cfg.warmup_chi;
                    p.seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(points.size()));
                    points.push_back(p);
                }
            }
        }
    }
    return points;
}

SweepOutcome run_sweep(const SweepConfig& cfg, const SweepProgress& progress) {
    const std::vector<PointSpec> points = enumerate_points(cfg);
    const long total = static_cast<long>(points.size());

    long jobs = cfg.jobs;
    if (jobs == 0) {
        if (const char* env = std::getenv("QCOMPLEXITY_JOBS")) {
            jobs = parse_long(env, "QCOMPLEXITY_JOBS");
            if (jobs < 1) fail(ErrorCode::config, "QCOMPLEXITY_JOBS must be >= 1");
        } else {
            jobs = 1;
        }
    }
    jobs = std::max<long>(1, std::min(jobs, total));

    SweepOutcome out;
    out.rows.resize(static_cast<std::size_t>(total));

    std::atomic<long> cursor{0};
    std::atomic<long> finished{0};
    std::mutex progress_mutex;
    auto work = [&]() {
        for (;;) {
            const long i = cursor.fetch_add(1);
            if (i >= total) return;
            SweepRow& row = out.rows[static_cast<std::size_t>(i)];
            row.spec = points[static_cast<std::size_t>(i)];
            try {
                row.report = run_point(row.spec);
                row.ok = true;
            } catch (const Error& e) {
                row.error_code = error_code_name(e.code());
                row.error_message = e.what();
            } catch (const std::exception& e) {
                row.error_code = "internal";
                row.error_message = e.what();
            }
            const long done = finished.fetch_add(1) + 1;
            if (progress) {
                std::lock_guard<std::mutex> lock(progress_mutex);
                progress(done, total, row);
            }
        }
    };

    if (jobs == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(jobs));
        for (long t = 0; t < jobs; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    for (const SweepRow& row : out.rows)
        if (!row.ok) ++out.failures;
    return out;
}

namespace {

void write_meta(const SweepConfig& cfg, std::ostream& os) {
    os << "# qcomplexity sweep 1\n";
    os << "# model=" << model_name(cfg.model) << " n_sites=" << cfg.n_sites << " seed=" << cfg.seed << "\n";
    if (cfg.model == Model::ising) {
        os << "# symmetry_break_h=" << fmt17(effective_symmetry_break(cfg.symmetry_break_h)) << "\n";
    } else {
        os << "# n_max=" << cfg.n_max << " nu=" << fmt17(cfg.nu) << " filling_enforcement=penalty penalty_weight=";
        if (cfg.penalty_weight < 0) os << "auto";
        else os << fmt17(cfg.penalty_weight);
        os << "\n";
    }
    os << "# dmrg max_sweeps=" << cfg.max_sweeps << " energy_tol=" << fmt17(cfg.energy_tol)
       << " lanczos_tol=" << fmt17(cfg.lanczos_tol) << " lanczos_max_iter=" << cfg.lanczos_max_iter
       << " svd_cutoff=" << fmt17(cfg.svd_cutoff) << " warmup_chi=" << cfg.warmup_chi << "\n";
    os << "# analysis merge_tol=" << fmt17(cfg.merge_tol) << " p_floor=" << fmt17(cfg.p_floor)
       << " excess_entropy_estimator=block_mutual_information window=centered\n";
}

}  // namespace

void write_rows_csv(const SweepConfig& cfg, const SweepOutcome& out, std::ostream& os) {
    write_meta(cfg, os);
    os << "model,coupling,basis,L,chi,n_sites,c_mu_bits,c_q_bits,excess_entropy_bits,"
          "half_chain_entropy_bits,entropy_rate_bits,energy,max_truncation_error,causal_states,"
          "gram_iterations,gram_residual,gram_min_eig,dropped_past_mass,status\n";
    for (const SweepRow& row : out.rows) {
        const PointSpec& s = row.spec;
        os << model_name(s.model) << "," << fmt17(s.coupling) << "," << basis_label(s) << "," << s.L << ","
           << s.chi << "," << s.n_sites << ",";
        if (row.ok) {
            const ComplexityReport& r = row.report;
            os << fmt17(r.c_mu) << "," << fmt17(r.c_q) << "," << fmt17(r.excess) << "," << fmt17(r.s_half)
               << "," << fmt17(r.h_mu) << "," << fmt17(r.energy) << "," << fmt17(r.max_truncation_error)
               << "," << r.n_states << "," << r.gram_iterations << "," << fmt17(r.gram_residual) << ","
               << fmt17(r.gram_min_eig) << "," << fmt17(r.dropped_past_mass) << ",ok\n";
        } else {
            os << ",,,,,,,,,,,,error:" << row.error_code << "\n";
        }
    }
    if (!os) fail(ErrorCode::io, "csv write failed");
}

void write_rows_jsonl(const SweepConfig& cfg, const SweepOutcome& out, std::ostream& os) {
    nlohmann::json head;
    head["qcomplexity_sweep"] = 1;
    head["model"] = model_name(cfg.model);
    head["n_sites"] = cfg.n_sites;
    head["seed"] = cfg.seed;
    head["merge_tol"] = cfg.merge_tol;
    head["p_floor"] = cfg.p_floor;
    head["excess_entropy_estimator"] = "block_mutual_information";
    if (cfg.model == Model::ising) {
        head["symmetry_break_h"] = effective_symmetry_break(cfg.symmetry_break_h);
    } else {
        head["n_max"] = cfg.n_max;
        head["nu"] = cfg.nu;
        head["filling_enforcement"] = "penalty";
        if (cfg.penalty_weight >= 0) head["penalty_weight"] = cfg.penalty_weight;
    }
    os << head.dump() << "\n";
    for (const SweepRow& row : out.rows) {
        nlohmann::json j;
        const PointSpec& s = row.spec;
        j["model"] = model_name(s.model);
        j["coupling"] = s.coupling;
        j["basis"] = basis_label(s);
        j["L"] = s.L;
        j["chi"] = s.chi;
        j["n_sites"] = s.n_sites;
        if (row.ok) {
            const ComplexityReport& r = row.report;
            j["c_mu_bits"] = r.c_mu;
            j["c_q_bits"] = r.c_q;
            j["excess_entropy_bits"] = r.excess;
            j["half_chain_entropy_bits"] = r.s_half;
            j["entropy_rate_bits"] = r.h_mu;
            j["energy"] = r.energy;
            j["max_truncation_error"] = r.max_truncation_error;
            j["causal_states"] = r.n_states;
            j["gram_iterations"] = r.gram_iterations;
            j["gram_residual"] = r.gram_residual;
            j["gram_min_eig"] = r.gram_min_eig;
            j["dropped_past_mass"] = r.dropped_past_mass;
            j["status"] = "ok";
        } else {
            j["status"] = std::string("error:") + row.error_code;
            j["error"] = row.error_message;
        }
        os << j.dump() << "\n";
    }
    if (!os) fail(ErrorCode::io, "jsonl write failed");
}

long run_sweep_to_file(const SweepConfig& cfg, const std::string& path, const SweepProgress& progress) {
    std::ofstream file(path, std::ios::trunc);
    if (!file) fail(ErrorCode::io, "cannot open output file '" + path + "'");

    SweepOutcome out = run_sweep(cfg, progress);
    if (cfg.format == "jsonl") write_rows_jsonl(cfg, out, file);
    else write_rows_csv(cfg, out, file);
    file.flush();
    if (!file) fail(ErrorCode::io, "write to '" + path + "' failed");
    return out.failures;
}

}  // namespace qc
