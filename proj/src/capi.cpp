#include "widom_cauchy.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "runner.hpp"

namespace {

thread_local std::string g_last_error;

wc_status status_of(wc::errc code) {
    switch (code) {
        case wc::errc::invalid_argument: return WC_ERR_INVALID_ARGUMENT;
        case wc::errc::pole: return WC_ERR_POLE;
        case wc::errc::singularity: return WC_ERR_SINGULARITY;
        case wc::errc::truncation: return WC_ERR_TRUNCATION;
        case wc::errc::convergence: return WC_ERR_CONVERGENCE;
        case wc::errc::not_automorphic: return WC_ERR_NOT_AUTOMORPHIC;
        case wc::errc::validation: return WC_ERR_VALIDATION;
        case wc::errc::io: return WC_ERR_IO;
        case wc::errc::internal: return WC_ERR_INTERNAL;
    }
    return WC_ERR_INTERNAL;
}

/// Run fn, translating C++ exceptions into status codes + thread-local message.
template <typename Fn>
wc_status guarded(Fn&& fn) {
    try {
        fn();
        return WC_OK;
    } catch (const wc::error& e) {
        g_last_error = e.what();
        return status_of(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return WC_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return WC_ERR_INTERNAL;
    }
}

wc::cplx in_c(double re, double im) { return {re, im}; }

void out_c(wc::cplx v, double* re, double* im) {
    *re = v.real();
    *im = v.imag();
}

char* dup_string(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) wc::fail(wc::errc::internal, "out of memory");
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

}  // namespace

struct wc_annulus {
    wc::AnnulusSpec spec;
};

struct wc_green {
    wc::GreenEvaluator green;
    wc::GroupSpec group;
};

struct wc_split {
    wc::InnerOuterSplit split;
};

extern "C" {

const char* wc_last_error(void) { return g_last_error.c_str(); }

wc_status wc_annulus_create(double q, wc_annulus** out) {
    if (!out) {
        g_last_error = "null output pointer";
        return WC_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] { *out = new wc_annulus{wc::make_annulus(q)}; });
}

void wc_annulus_destroy(wc_annulus* a) { delete a; }

wc_status wc_annulus_multiplier(const wc_annulus* a, double* out) {
    if (!a || !out) {
        g_last_error = "null handle or output pointer";
        return WC_ERR_INVALID_ARGUMENT;
    }
    *out = a->spec.multiplier;
    return WC_OK;
}

wc_status wc_annulus_uniformizer(const wc_annulus* a, double z_re, double z_im,
                                 double* out_re, double* out_im) {
    if (!a || !out_re || !out_im) {
        g_last_error = "null handle or output pointer";
        return WC_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] { out_c(wc::annulus_uniformizer(a->spec, in_c(z_re, z_im)), out_re, out_im); });
}

wc_status wc_annulus_uniformizer_derivative(const wc_annulus* a, double z_re, double z_im,
                                            double* out_re, double* out_im) {
    if (!a || !out_re || !out_im) {
        g_last_error = "null handle or output pointer";
        return WC_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        out_c(wc::annulus_uniformizer_derivative(a->spec, in_c(z_re, z_im)), out_re, out_im);
    });
}

wc_status wc_green_create(const wc_annulus* a_or_null, double zeta_re, double zeta_im,
                          double tail_tol, wc_green** out) {
    if (!out) {
        g_last_error = "null output pointer";
        return WC_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        auto handle = std::make_unique<wc_green>();
        wc::cplx zeta = in_c(zeta_re, zeta_im);
        if (a_or_null) {
            handle->group = wc::make_group_spec({wc::annulus_deck_generator(a_or_null->spec)},
                                                wc::GroupStructure::cyclic);
            wc::Orbit orbit = wc::enumerate_orbit(handle->group, zeta, tail_tol);
            handle->green = wc::make_green(handle->group, std::move(orbit));
        } else {
            handle->green = wc::make_green_disk(zeta);
        }
        *out = handle.release();
    });
}

void wc_green_destroy(wc_green* g) { delete g; }

wc_status wc_green_orbit_size(const wc_green* g, size_t* out) {
    if (!g || !out) {
        g_last_error = "null handle or output pointer";
        return WC_ERR_INVALID_ARGUMENT;
    }
    *out = g->green.orbit.entries.size();
    return WC_OK;
}

wc_status wc_green_tail_bound(const wc_green* g, double* out) {
    if (!g || !out) {
        g_last_error = "null handle or output pointer";
        return WC_ERR_INVALID_ARGUMENT;
    }
    *out = g->green.tail_bound;
    return WC_OK;
}

wc_status wc_green_widom_sum(const wc_green* g, double* out) {
    if (!g || !out) {
        g_last_error = "null handle or output pointer";
        return WC_ERR_INVALID_ARGUMENT;
    }
    *out = wc::widom_sum(g->green.orbit);
    return WC_OK;
}

wc_status wc_green_eval(const wc_green* g, double z_re, double z_im, double* out_re,
                        double* out_im) {
    if (!g || !out_re || !out_im) {
        g_last_error = "null handle or output pointer";
        return WC_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] { out_c(wc::eval_g(g->green, in_c(z_re, z_im)), out_re, out_im); });
}

wc_status wc_green_eval_prime(const wc_green* g, double z_re, double z_im, double* out_re,
                              double* out_im) {
    if (!g || !out_re || !out_im) {
        g_last_error = "null handle or output pointer";
        return WC_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] { out_c(wc::eval_g_prime(g->green, in_c(z_re, z_im)), out_re, out_im); });
}

wc_status wc_green_boundary_log_derivative(const wc_green* g, double t_re, double t_im,
                                           double* out_re, double* out_im) {
    if (!g || !out_re || !out_im) {
        g_last_error = "null handle or output pointer";
        return WC_ERR_INVALID_ARGUMENT;
    }
    return guarded(
        [&] { out_c(wc::boundary_log_derivative(g->green, in_c(t_re, t_im)), out_re, out_im); });
}

wc_status wc_split_create(const wc_green* g, int grid_m, wc_split** out) {
    if (!g || !out) {
        g_last_error = "null handle or output pointer";
        return WC_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        wc::BoundaryGrid grid = wc::make_grid(grid_m, g->green.singular_points);
        *out = new wc_split{wc::inner_outer_split(g->green, grid)};
    });
}

void wc_split_destroy(wc_split* s) { delete s; }

wc_status wc_split_outer(const wc_split* s, double z_re, double z_im, double* out_re,
                         double* out_im) {
    if (!s || !out_re || !out_im) {
        g_last_error = "null handle or output pointer";
        return WC_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] { out_c(wc::split_outer(s->split, in_c(z_re, z_im)), out_re, out_im); });
}

wc_status wc_split_delta(const wc_split* s, double z_re, double z_im, double* out_re,
                         double* out_im) {
    if (!s || !out_re || !out_im) {
        g_last_error = "null handle or output pointer";
        return WC_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] { out_c(wc::split_delta(s->split, in_c(z_re, z_im)), out_re, out_im); });
}

wc_status wc_run_config_json(const char* config_json, char** report_json, char** report_csv,
                             int* all_passed) {
    if (!config_json || !report_json || !report_csv || !all_passed) {
        g_last_error = "null argument";
        return WC_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        wc::json doc = wc::json::parse(config_json, nullptr, false);
        if (doc.is_discarded()) wc::fail(wc::errc::io, "config is not valid JSON");
        wc::RunConfig rc = wc::parse_run_config(doc);
        wc::RunOutput out = wc::run_commands(rc);
        *report_json = dup_string(out.report.dump(2) + "\n");
        *report_csv = dup_string(out.csv);
        *all_passed = out.all_passed ? 1 : 0;
    });
}

void wc_string_free(char* s) { std::free(s); }

const char* wc_version(void) { return "1.0.0"; }

}  // extern "C"
