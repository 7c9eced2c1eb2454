#include "kdvlab/kdvlab.h"

#include "field.hpp"
#include "runner.hpp"
#include "semigroup.hpp"
#include "symbol.hpp"

#include <cstring>
#include <new>
#include <stdexcept>
#include <string>

// Opaque-handle definitions: the C structs simply wrap the C++ values.
struct kdvlab_spec {
    kdvlab::SymbolSpec spec;
};
struct kdvlab_grid {
    kdvlab::FrequencyGrid grid;
};
struct kdvlab_field {
    kdvlab::SpectralField field;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

// Runs `fn`, translating C++ exceptions into status codes and recording the
// message for kdvlab_last_error().
template <typename Fn>
kdvlab_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return KDVLAB_OK;
    } catch (const std::invalid_argument& e) {
        set_error(e.what());
        return KDVLAB_ERR_INVALID_ARGUMENT;
    } catch (const std::runtime_error& e) {
        set_error(e.what());
        return std::strncmp(e.what(), "config", 6) == 0 ? KDVLAB_ERR_CONFIG
                                                        : KDVLAB_ERR_NUMERICAL;
    } catch (const std::bad_alloc&) {
        set_error("out of memory");
        return KDVLAB_ERR_NUMERICAL;
    } catch (const std::exception& e) {
        set_error(e.what());
        return KDVLAB_ERR_NUMERICAL;
    }
}

kdvlab_status require(bool ok, const char* msg) {
    if (ok) return KDVLAB_OK;
    set_error(msg);
    return KDVLAB_ERR_INVALID_ARGUMENT;
}

} // namespace

extern "C" {

const char* kdvlab_version(void) { return kdvlab::version_string(); }

const char* kdvlab_last_error(void) { return g_last_error.c_str(); }

kdvlab_status kdvlab_spec_builtin(const char* name, kdvlab_spec** out) {
    if (auto st = require(name && out, "spec_builtin: null argument")) return st;
    return guarded([&] { *out = new kdvlab_spec{kdvlab::builtin_spec(name)}; });
}

kdvlab_status kdvlab_spec_create(double p, double eta, double q_bound, const double* terms,
                                 size_t n_terms, kdvlab_spec** out) {
    if (auto st = require(out && (terms || n_terms == 0), "spec_create: null argument")) return st;
    return guarded([&] {
        kdvlab::SymbolSpec s;
        s.p = p;
        s.eta = eta;
        s.q_bound = q_bound;
        for (size_t k = 0; k < n_terms; ++k) {
            s.phi1_terms.push_back({terms[3 * k],
                                    static_cast<unsigned>(terms[3 * k + 1]),
                                    static_cast<unsigned>(terms[3 * k + 2])});
        }
        s.validate();
        *out = new kdvlab_spec{std::move(s)};
    });
}

void kdvlab_spec_free(kdvlab_spec* spec) { delete spec; }

kdvlab_status kdvlab_spec_eval_phi(const kdvlab_spec* spec, double xi, double* out) {
    if (auto st = require(spec && out, "spec_eval_phi: null argument")) return st;
    return guarded([&] { *out = kdvlab::eval_phi(spec->spec, xi); });
}

kdvlab_status kdvlab_spec_threshold(const kdvlab_spec* spec, double* out) {
    if (auto st = require(spec && out, "spec_threshold: null argument")) return st;
    return guarded([&] { *out = kdvlab::compute_threshold_M(spec->spec); });
}

kdvlab_status kdvlab_spec_sup_phi(const kdvlab_spec* spec, double* out) {
    if (auto st = require(spec && out, "spec_sup_phi: null argument")) return st;
    return guarded([&] { *out = kdvlab::sup_phi(spec->spec); });
}

kdvlab_status kdvlab_grid_create(double xi_max, int n, kdvlab_grid** out) {
    if (auto st = require(out != nullptr, "grid_create: null argument")) return st;
    return guarded([&] { *out = new kdvlab_grid{kdvlab::FrequencyGrid(xi_max, n)}; });
}

void kdvlab_grid_free(kdvlab_grid* grid) { delete grid; }

kdvlab_status kdvlab_grid_size(const kdvlab_grid* grid, int* n_out) {
    if (auto st = require(grid && n_out, "grid_size: null argument")) return st;
    *n_out = grid->grid.n;
    return KDVLAB_OK;
}

kdvlab_status kdvlab_field_create(const kdvlab_grid* grid, const double* re, const double* im,
                                  int real_flag, kdvlab_field** out) {
    if (auto st = require(grid && re && out, "field_create: null argument")) return st;
    return guarded([&] {
        kdvlab::SpectralField f(grid->grid, real_flag != 0);
        for (int k = 0; k < f.n(); ++k)
            f.coeffs[k] = {re[k], im ? im[k] : 0.0};
        *out = new kdvlab_field{std::move(f)};
    });
}

void kdvlab_field_free(kdvlab_field* field) { delete field; }

kdvlab_status kdvlab_field_coeffs(const kdvlab_field* field, double* re, double* im) {
    if (auto st = require(field != nullptr, "field_coeffs: null argument")) return st;
    const auto& c = field->field.coeffs;
    for (size_t k = 0; k < c.size(); ++k) {
        if (re) re[k] = c[k].real();
        if (im) im[k] = c[k].imag();
    }
    return KDVLAB_OK;
}

kdvlab_status kdvlab_field_hs_norm(const kdvlab_field* field, double s, double* out) {
    if (auto st = require(field && out, "field_hs_norm: null argument")) return st;
    return guarded([&] { *out = kdvlab::hs_norm(field->field, s); });
}

kdvlab_status kdvlab_field_l2_norm(const kdvlab_field* field, double* out) {
    if (auto st = require(field && out, "field_l2_norm: null argument")) return st;
    return guarded([&] { *out = kdvlab::l2_norm(field->field); });
}

kdvlab_status kdvlab_field_convolve(const kdvlab_field* f, const kdvlab_field* g,
                                    kdvlab_field** out) {
    if (auto st = require(f && g && out, "field_convolve: null argument")) return st;
    return guarded([&] { *out = new kdvlab_field{kdvlab::convolve(f->field, g->field)}; });
}

kdvlab_status kdvlab_semigroup_apply(const kdvlab_spec* spec, const kdvlab_field* field, double t,
                                     kdvlab_field** out) {
    if (auto st = require(spec && field && out, "semigroup_apply: null argument")) return st;
    return guarded(
        [&] { *out = new kdvlab_field{kdvlab::apply_semigroup(spec->spec, field->field, t)}; });
}

namespace {

kdvlab_status finish_run(kdvlab::RunStatus rs, const std::string& msg) {
    kdvlab_status status = KDVLAB_OK;
    switch (rs) {
    case kdvlab::RunStatus::Ok: status = KDVLAB_OK; break;
    case kdvlab::RunStatus::ConfigError: status = KDVLAB_ERR_CONFIG; break;
    case kdvlab::RunStatus::NumericalError: status = KDVLAB_ERR_NUMERICAL; break;
    case kdvlab::RunStatus::CheckFailed: status = KDVLAB_ERR_CHECK_FAILED; break;
    case kdvlab::RunStatus::IoError: status = KDVLAB_ERR_IO; break;
    }
    // guarded() already cleared the slot on the no-throw path; restore the
    // runner's classification message for callers.
    if (status != KDVLAB_OK) set_error(msg);
    return status;
}

} // namespace

kdvlab_status kdvlab_run_config_text(const char* config_text, const char* output_dir, long seed,
                                     int jobs) {
    if (auto st = require(config_text && output_dir, "run_config_text: null argument")) return st;
    kdvlab::RunStatus rs = kdvlab::RunStatus::Ok;
    std::string msg;
    const kdvlab_status guard = guarded([&] {
        const auto cfg = kdvlab::Config::parse_text(config_text);
        rs = kdvlab::run_command(cfg, output_dir, seed, jobs, &msg);
    });
    if (guard != KDVLAB_OK) return guard;
    return finish_run(rs, msg);
}

kdvlab_status kdvlab_run_config_file(const char* config_path, const char* output_dir, long seed,
                                     int jobs) {
    if (auto st = require(config_path && output_dir, "run_config_file: null argument")) return st;
    kdvlab::RunStatus rs = kdvlab::RunStatus::Ok;
    std::string msg;
    const kdvlab_status guard = guarded([&] {
        const auto cfg = kdvlab::Config::parse_file(config_path);
        rs = kdvlab::run_command(cfg, output_dir, seed, jobs, &msg);
    });
    if (guard != KDVLAB_OK) return guard;
    return finish_run(rs, msg);
}

} // extern "C"
