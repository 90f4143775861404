#include "qcomplexity.h"

#include <cstdio>
#include <exception>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "compmech.hpp"
#include "pipeline.hpp"
#include "validate.hpp"

namespace {

thread_local std::string g_last_error;

qc_status status_of(qc::ErrorCode code) {
    switch (code) {
        case qc::ErrorCode::invalid_input: return QC_ERR_INVALID_INPUT;
        case qc::ErrorCode::invalid_state: return QC_ERR_INVALID_STATE;
        case qc::ErrorCode::convergence:   return QC_ERR_CONVERGENCE;
        case qc::ErrorCode::capacity:      return QC_ERR_CAPACITY;
        case qc::ErrorCode::degenerate:    return QC_ERR_DEGENERATE;
        case qc::ErrorCode::io:            return QC_ERR_IO;
        case qc::ErrorCode::config:        return QC_ERR_CONFIG;
        case qc::ErrorCode::internal:      return QC_ERR_INTERNAL;
    }
    return QC_ERR_INTERNAL;
}

qc_status set_error(qc_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

// Runs fn, routing exceptions into the status/last-error channel.
template <typename Fn>
qc_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const qc::Error& e) {
        return set_error(status_of(e.code()), e.what());
    } catch (const std::exception& e) {
        return set_error(QC_ERR_INTERNAL, e.what());
    } catch (...) {
        return set_error(QC_ERR_INTERNAL, "unknown error");
    }
}

qc_status point_spec_of(const qc_point_params* p, qc::PointSpec& spec) {
    if (p == nullptr) return set_error(QC_ERR_INVALID_INPUT, "params is NULL");
    if (p->model == nullptr) return set_error(QC_ERR_INVALID_INPUT, "model is NULL");
    spec = qc::PointSpec{};
    try {
        spec.model = qc::model_from_string(p->model);
    } catch (const qc::Error&) {
        return set_error(QC_ERR_INVALID_INPUT, "model must be \"ising\" or \"bosehubbard\"");
    }
    spec.coupling = p->coupling;
    spec.theta = p->theta;
    spec.L = p->l;
    spec.n_sites = p->n_sites;
    spec.chi = p->chi;
    if (p->n_max > 0) spec.n_max = p->n_max;
    if (p->nu > 0) spec.nu = p->nu;
    spec.symmetry_break_h = p->symmetry_break_h;
    spec.penalty_weight = p->penalty_weight;
    if (p->merge_tol >= 0) spec.merge_tol = p->merge_tol;
    if (p->p_floor >= 0) spec.p_floor = p->p_floor;
    if (p->max_sweeps > 0) spec.max_sweeps = p->max_sweeps;
    if (p->energy_tol > 0) spec.energy_tol = p->energy_tol;
    if (p->lanczos_tol > 0) spec.lanczos_tol = p->lanczos_tol;
    if (p->svd_cutoff >= 0) spec.svd_cutoff = p->svd_cutoff;
    if (p->seed != 0) spec.seed = p->seed;
    qc::validate_point(spec);
    return QC_OK;
}

void fill_result(const qc::ComplexityReport& r, qc_point_result* out) {
    *out = qc_point_result{};
    out->c_mu_bits = r.c_mu;
    out->c_q_bits = r.c_q;
    out->excess_entropy_bits = r.excess;
    out->half_chain_entropy_bits = r.s_half;
    out->entropy_rate_bits = r.h_mu;
    out->energy = r.energy;
    out->max_truncation_error = r.max_truncation_error;
    out->causal_states = r.n_states;
    out->gram_iterations = r.gram_iterations;
    out->gram_residual = r.gram_residual;
    out->gram_min_eig = r.gram_min_eig;
    out->dropped_past_mass = r.dropped_past_mass;
    out->lost_transition_mass = r.lost_transition_mass;
    out->max_intra_state_tv = r.max_intra_state_tv;
    out->filling_msd = r.filling_msd;
    out->wall_seconds = r.wall_seconds;
    out->dmrg_converged = r.dmrg_converged ? 1 : 0;
    out->dmrg_sweeps = static_cast<int32_t>(r.dmrg_sweeps);
}

}  // namespace

struct qc_sweep {
    qc::SweepConfig config;
    long config_jobs = 0;
    qc_progress_fn progress = nullptr;
    void* progress_user = nullptr;
};

struct qc_validation {
    std::vector<qc::Check> checks;
    int64_t failures = 0;
};

extern "C" {

const char* qc_status_name(qc_status status) {
    switch (status) {
        case QC_OK: return "ok";
        case QC_ERR_INVALID_INPUT: return "invalid_input";
        case QC_ERR_INVALID_STATE: return "invalid_state";
        case QC_ERR_CONVERGENCE: return "convergence";
        case QC_ERR_CAPACITY: return "capacity";
        case QC_ERR_DEGENERATE: return "degenerate";
        case QC_ERR_IO: return "io";
        case QC_ERR_CONFIG: return "config";
        case QC_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* qc_version(void) { return "1.0.0"; }

const char* qc_last_error(void) { return g_last_error.c_str(); }

qc_status qc_run_point(const qc_point_params* params, qc_point_result* result) {
    return guarded([&]() -> qc_status {
        if (result == nullptr) return set_error(QC_ERR_INVALID_INPUT, "result is NULL");
        qc::PointSpec spec;
        qc_status st = point_spec_of(params, spec);
        if (st != QC_OK) return st;
        fill_result(qc::run_point(spec), result);
        return QC_OK;
    });
}

qc_status qc_point_words(const qc_point_params* params, const char* path) {
    return guarded([&]() -> qc_status {
        if (path == nullptr) return set_error(QC_ERR_INVALID_INPUT, "path is NULL");
        qc::PointSpec spec;
        qc_status st = point_spec_of(params, spec);
        if (st != QC_OK) return st;
        qc::WordDistribution words;
        qc::run_point(spec, &words);
        std::ofstream os(path, std::ios::trunc);
        if (!os) return set_error(QC_ERR_IO, std::string("cannot open ") + path);
        qc::serialize_words(words, os);
        os.flush();
        if (!os) return set_error(QC_ERR_IO, std::string("write failed: ") + path);
        return QC_OK;
    });
}

qc_status qc_translation_defect(const qc_point_params* params, double* defect) {
    return guarded([&]() -> qc_status {
        if (defect == nullptr) return set_error(QC_ERR_INVALID_INPUT, "defect is NULL");
        qc::PointSpec spec;
        qc_status st = point_spec_of(params, spec);
        if (st != QC_OK) return st;
        *defect = qc::translation_defect(spec);
        return QC_OK;
    });
}

qc_status qc_sweep_open(const char* config_path, qc_sweep** out) {
    return guarded([&]() -> qc_status {
        if (config_path == nullptr || out == nullptr)
            return set_error(QC_ERR_INVALID_INPUT, "config_path/out is NULL");
        auto handle = std::make_unique<qc_sweep>();
        handle->config = qc::load_sweep_config(config_path);
        handle->config_jobs = handle->config.jobs;
        *out = handle.release();
        return QC_OK;
    });
}

qc_status qc_sweep_open_text(const char* config_text, qc_sweep** out) {
    return guarded([&]() -> qc_status {
        if (config_text == nullptr || out == nullptr)
            return set_error(QC_ERR_INVALID_INPUT, "config_text/out is NULL");
        auto handle = std::make_unique<qc_sweep>();
        handle->config = qc::parse_sweep_config(config_text);
        handle->config_jobs = handle->config.jobs;
        *out = handle.release();
        return QC_OK;
    });
}

int64_t qc_sweep_point_count(const qc_sweep* sweep) {
    if (sweep == nullptr) return 0;
    try {
        return static_cast<int64_t>(qc::enumerate_points(sweep->config).size());
    } catch (...) {
        return 0;
    }
}

qc_status qc_sweep_set_jobs(qc_sweep* sweep, int32_t jobs) {
    if (sweep == nullptr) return set_error(QC_ERR_INVALID_INPUT, "sweep is NULL");
    sweep->config.jobs = jobs > 0 ? jobs : sweep->config_jobs;
    return QC_OK;
}

qc_status qc_sweep_set_format(qc_sweep* sweep, const char* format) {
    if (sweep == nullptr || format == nullptr)
        return set_error(QC_ERR_INVALID_INPUT, "sweep/format is NULL");
    std::string f = format;
    if (f != "csv" && f != "jsonl")
        return set_error(QC_ERR_CONFIG, "format must be csv or jsonl, got " + f);
    sweep->config.format = f;
    return QC_OK;
}

qc_status qc_sweep_set_progress(qc_sweep* sweep, qc_progress_fn fn, void* user) {
    if (sweep == nullptr) return set_error(QC_ERR_INVALID_INPUT, "sweep is NULL");
    sweep->progress = fn;
    sweep->progress_user = user;
    return QC_OK;
}

qc_status qc_sweep_run(qc_sweep* sweep, const char* output_path, int64_t* failures) {
    return guarded([&]() -> qc_status {
        if (sweep == nullptr || output_path == nullptr)
            return set_error(QC_ERR_INVALID_INPUT, "sweep/output_path is NULL");
        qc::SweepProgress progress;
        if (sweep->progress != nullptr) {
            qc_progress_fn fn = sweep->progress;
            void* user = sweep->progress_user;
            progress = [fn, user](long done, long total, const qc::SweepRow& row) {
                char label[160];
                if (row.spec.model == qc::Model::ising) {
                    std::snprintf(label, sizeof label, "%s coupling=%g theta=%g L=%ld chi=%ld",
                                  qc::model_name(row.spec.model), row.spec.coupling,
                                  row.spec.theta, row.spec.L, row.spec.chi);
                } else {
                    std::snprintf(label, sizeof label, "%s coupling=%g L=%ld chi=%ld",
                                  qc::model_name(row.spec.model), row.spec.coupling, row.spec.L,
                                  row.spec.chi);
                }
                fn(done, total, label, row.ok ? 1 : 0, user);
            };
        }
        long failed = qc::run_sweep_to_file(sweep->config, output_path, progress);
        if (failures != nullptr) *failures = failed;
        return QC_OK;
    });
}

void qc_sweep_close(qc_sweep* sweep) { delete sweep; }

qc_status qc_validation_run(int quick, qc_validation** out) {
    return guarded([&]() -> qc_status {
        if (out == nullptr) return set_error(QC_ERR_INVALID_INPUT, "out is NULL");
        auto handle = new qc_validation;
        handle->checks = qc::run_validation(quick != 0);
        for (const auto& c : handle->checks)
            if (!c.pass) ++handle->failures;
        *out = handle;
        return QC_OK;
    });
}

int64_t qc_validation_count(const qc_validation* v) {
    return v == nullptr ? 0 : static_cast<int64_t>(v->checks.size());
}

int64_t qc_validation_failures(const qc_validation* v) {
    return v == nullptr ? 0 : v->failures;
}

const char* qc_validation_name(const qc_validation* v, int64_t index) {
    if (v == nullptr || index < 0 || index >= static_cast<int64_t>(v->checks.size()))
        return nullptr;
    return v->checks[static_cast<size_t>(index)].name.c_str();
}

int qc_validation_passed(const qc_validation* v, int64_t index) {
    if (v == nullptr || index < 0 || index >= static_cast<int64_t>(v->checks.size())) return 0;
    return v->checks[static_cast<size_t>(index)].pass ? 1 : 0;
}

const char* qc_validation_detail(const qc_validation* v, int64_t index) {
    if (v == nullptr || index < 0 || index >= static_cast<int64_t>(v->checks.size()))
        return nullptr;
    return v->checks[static_cast<size_t>(index)].detail.c_str();
}

void qc_validation_free(qc_validation* v) { delete v; }

}  // extern "C"
