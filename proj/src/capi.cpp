#include "isotoda/isotoda.h"

#include <cstring>
#include <string>

#include "json.hpp"

#include "isotoda/homology.hpp"
#include "isotoda/json_io.hpp"
#include "isotoda/matrix.hpp"
#include "isotoda/schrodinger.hpp"
#include "isotoda/spectrum.hpp"
#include "isotoda/tiling.hpp"
#include "isotoda/toda.hpp"

using nlohmann::json;

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

// Maps the C++ error taxonomy onto status codes; any other exception is a
// numeric failure as far as callers are concerned.
template <typename Fn>
isotoda_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const isotoda::validation_error& e) {
        set_error(e.what());
        return ISOTODA_ERR_ARGUMENT;
    } catch (const isotoda::cap_error& e) {
        set_error(e.what());
        return ISOTODA_ERR_CAP;
    } catch (const isotoda::degenerate_locus_error& e) {
        set_error(e.what());
        return ISOTODA_ERR_DEGENERATE;
    } catch (const isotoda::numeric_error& e) {
        set_error(e.what());
        return ISOTODA_ERR_NUMERIC;
    } catch (const std::exception& e) {
        set_error(e.what());
        return ISOTODA_ERR_NUMERIC;
    }
}

isotoda_status require(bool ptr_ok) {
    if (!ptr_ok) {
        set_error("required pointer argument was NULL");
        return ISOTODA_ERR_NULL;
    }
    return ISOTODA_OK;
}

json int128_json(isotoda::int128 v) {
    if (isotoda::fits_int64(v)) return json(static_cast<std::int64_t>(v));
    return json(isotoda::to_string(v));  // decimal string beyond 64 bits
}

isotoda::spectrum::SpectrumInvariants to_cpp(const isotoda_invariants* inv) {
    isotoda::spectrum::SpectrumInvariants r;
    r.n = inv->n;
    r.M = inv->big_m;
    r.m = inv->small_m;
    r.n_plus = inv->n_plus;
    r.n_minus = inv->n_minus;
    r.grouping_tol = isotoda::spectrum::kDefaultGroupingTol;
    return r;
}

} // namespace

struct isotoda_spectrum {
    isotoda::spectrum::Spectrum value;
};

struct isotoda_matrix {
    isotoda::matrix::PeriodicJacobi value;
};

struct isotoda_trajectory {
    isotoda::toda::TodaTrajectory value;
};

struct isotoda_zones {
    isotoda::schrodinger::ForbiddenZones value;
};

extern "C" {

const char* isotoda_last_error(void) { return g_last_error.c_str(); }

const char* isotoda_version(void) { return "isotoda 1.0.0"; }

isotoda_status isotoda_spectrum_create(const double* lambda, int n,
                                       isotoda_spectrum** out) {
    if (auto st = require(lambda && out); st != ISOTODA_OK) return st;
    return guarded([&] {
        auto s = isotoda::spectrum::Spectrum(std::vector<double>(lambda, lambda + n));
        *out = new isotoda_spectrum{std::move(s)};
        return ISOTODA_OK;
    });
}

isotoda_status isotoda_spectrum_from_json(const char* text,
                                          isotoda_spectrum** out) {
    if (auto st = require(text && out); st != ISOTODA_OK) return st;
    return guarded([&] {
        *out = new isotoda_spectrum{isotoda::json_io::parse_spectrum(text)};
        return ISOTODA_OK;
    });
}

void isotoda_spectrum_free(isotoda_spectrum* s) { delete s; }

isotoda_status isotoda_spectrum_analyze(const isotoda_spectrum* s,
                                        double grouping_tol,
                                        isotoda_invariants* out) {
    if (auto st = require(s && out); st != ISOTODA_OK) return st;
    return guarded([&] {
        const auto inv = isotoda::spectrum::analyze(s->value, grouping_tol);
        out->n = inv.n;
        out->big_m = inv.M;
        out->small_m = inv.m;
        out->n_plus = inv.n_plus;
        out->n_minus = inv.n_minus;
        return ISOTODA_OK;
    });
}

isotoda_status isotoda_bset_radius(const isotoda_invariants* inv, double theta,
                                   double* out_radius) {
    if (auto st = require(inv && out_radius); st != ISOTODA_OK) return st;
    return guarded([&] {
        *out_radius = isotoda::spectrum::bset_radius(to_cpp(inv), theta);
        return ISOTODA_OK;
    });
}

isotoda_status isotoda_bset_classify(const isotoda_invariants* inv, double re,
                                     double im, double boundary_tol,
                                     int* out_location, int* out_fiber_dim) {
    if (auto st = require(inv && out_location && out_fiber_dim); st != ISOTODA_OK)
        return st;
    return guarded([&] {
        const auto q = isotoda::spectrum::bset_contains(
            to_cpp(inv), isotoda::spectrum::cplx(re, im), boundary_tol);
        *out_location = static_cast<int>(q.location);
        *out_fiber_dim = q.fiber_dim.value_or(-1);
        return ISOTODA_OK;
    });
}

isotoda_status isotoda_manifold_status(const isotoda_invariants* inv,
                                       int* out_verdict) {
    if (auto st = require(inv && out_verdict); st != ISOTODA_OK) return st;
    return guarded([&] {
        *out_verdict = isotoda::spectrum::manifold_status(to_cpp(inv)) ==
                               isotoda::spectrum::ManifoldVerdict::NotHomologyManifold
                           ? 1
                           : 0;
        return ISOTODA_OK;
    });
}

isotoda_status isotoda_orbit_descriptor(const isotoda_invariants* inv,
                                        int* out_n_minus, int* out_n_plus,
                                        int* out_torus_rank) {
    if (auto st = require(inv && out_n_minus && out_n_plus && out_torus_rank);
        st != ISOTODA_OK)
        return st;
    return guarded([&] {
        const auto d = isotoda::spectrum::orbit_space_descriptor(inv->n, to_cpp(inv));
        *out_n_minus = d.n_minus;
        *out_n_plus = d.n_plus;
        *out_torus_rank = d.torus_rank;
        return ISOTODA_OK;
    });
}

isotoda_status isotoda_chebyshev_degenerate(const isotoda_spectrum* s,
                                            double tol, int* out_flag) {
    if (auto st = require(s && out_flag); st != ISOTODA_OK) return st;
    return guarded([&] {
        *out_flag = isotoda::spectrum::is_chebyshev_degenerate(s->value, tol) ? 1 : 0;
        return ISOTODA_OK;
    });
}

isotoda_status isotoda_matrix_create(const double* a, const double* b, int n,
                                     isotoda_matrix** out) {
    if (auto st = require(a && b && out); st != ISOTODA_OK) return st;
    return guarded([&] {
        std::vector<double> diag(a, a + n);
        std::vector<isotoda::matrix::cplx> off(n);
        for (int i = 0; i < n; ++i)
            off[i] = isotoda::matrix::cplx(b[2 * i], b[2 * i + 1]);
        *out = new isotoda_matrix{
            isotoda::matrix::PeriodicJacobi(std::move(diag), std::move(off))};
        return ISOTODA_OK;
    });
}

isotoda_status isotoda_matrix_from_json(const char* text, isotoda_matrix** out) {
    if (auto st = require(text && out); st != ISOTODA_OK) return st;
    return guarded([&] {
        *out = new isotoda_matrix{isotoda::json_io::parse_matrix(text)};
        return ISOTODA_OK;
    });
}

void isotoda_matrix_free(isotoda_matrix* m) { delete m; }

isotoda_status isotoda_matrix_size(const isotoda_matrix* m, int* out_n) {
    if (auto st = require(m && out_n); st != ISOTODA_OK) return st;
    *out_n = m->value.n();
    return ISOTODA_OK;
}

isotoda_status isotoda_matrix_entries(const isotoda_matrix* m, double* out_a,
                                      double* out_b) {
    if (auto st = require(m && out_a && out_b); st != ISOTODA_OK) return st;
    const int n = m->value.n();
    for (int i = 0; i < n; ++i) out_a[i] = m->value.a[i];
    for (int i = 0; i < n; ++i) {
        out_b[2 * i] = m->value.b[i].real();
        out_b[2 * i + 1] = m->value.b[i].imag();
    }
    return ISOTODA_OK;
}

isotoda_status isotoda_matrix_random(uint64_t seed, int n, int gauged,
                                     isotoda_matrix** out) {
    if (auto st = require(out); st != ISOTODA_OK) return st;
    return guarded([&] {
        *out = new isotoda_matrix{isotoda::matrix::random_matrix(seed, n, gauged != 0)};
        return ISOTODA_OK;
    });
}

isotoda_status isotoda_matrix_eigenvalues(const isotoda_matrix* m, double* out) {
    if (auto st = require(m && out); st != ISOTODA_OK) return st;
    return guarded([&] {
        const auto eigs = isotoda::matrix::eigenvalues(m->value);
        std::copy(eigs.begin(), eigs.end(), out);
        return ISOTODA_OK;
    });
}

isotoda_status isotoda_matrix_product_b(const isotoda_matrix* m, double* out_re,
                                        double* out_im) {
    if (auto st = require(m && out_re && out_im); st != ISOTODA_OK) return st;
    const auto B = isotoda::matrix::product_b(m->value);
    *out_re = B.real();
    *out_im = B.imag();
    return ISOTODA_OK;
}

isotoda_status isotoda_matrix_act(const isotoda_matrix* m, const double* t,
                                  isotoda_matrix** out) {
    if (auto st = require(m && t && out); st != ISOTODA_OK) return st;
    return guarded([&] {
        const int n = m->value.n();
        std::vector<isotoda::matrix::cplx> entries(n);
        for (int i = 0; i < n; ++i)
            entries[i] = isotoda::matrix::cplx(t[2 * i], t[2 * i + 1]);
        isotoda::matrix::TorusElement el(std::move(entries));
        *out = new isotoda_matrix{isotoda::matrix::act(el, m->value)};
        return ISOTODA_OK;
    });
}

isotoda_status isotoda_matrix_gauge_normalize(const isotoda_matrix* m, double tol,
                                              isotoda_matrix** out_base,
                                              double* out_w_re, double* out_w_im,
                                              double* out_gauge) {
    if (auto st = require(m && out_base && out_w_re && out_w_im); st != ISOTODA_OK)
        return st;
    return guarded([&] {
        auto g = isotoda::matrix::gauge_normalize(m->value, tol);
        *out_w_re = g.w.real();
        *out_w_im = g.w.imag();
        if (out_gauge) {
            for (int i = 0; i < g.gauge.n(); ++i) {
                out_gauge[2 * i] = g.gauge.t[i].real();
                out_gauge[2 * i + 1] = g.gauge.t[i].imag();
            }
        }
        *out_base = new isotoda_matrix{std::move(g.base)};
        return ISOTODA_OK;
    });
}

isotoda_status isotoda_matrix_assemble_lw(const isotoda_matrix* base, double w_re,
                                          double w_im, isotoda_matrix** out) {
    if (auto st = require(base && out); st != ISOTODA_OK) return st;
    return guarded([&] {
        *out = new isotoda_matrix{isotoda::matrix::assemble_lw(
            base->value, isotoda::matrix::cplx(w_re, w_im))};
        return ISOTODA_OK;
    });
}

isotoda_status isotoda_toda_integrate(const isotoda_matrix* m, double t_end,
                                      double dt, double tol, int store_stride,
                                      isotoda_trajectory** out) {
    if (auto st = require(m && out); st != ISOTODA_OK) return st;
    return guarded([&] {
        isotoda::toda::IntegrateOptions opts;
        opts.tol = tol;
        opts.store_stride = store_stride;
        *out = new isotoda_trajectory{
            isotoda::toda::integrate(m->value, t_end, dt, opts)};
        return ISOTODA_OK;
    });
}

void isotoda_trajectory_free(isotoda_trajectory* t) { delete t; }

isotoda_status isotoda_trajectory_steps(const isotoda_trajectory* t,
                                        int* out_count) {
    if (auto st = require(t && out_count); st != ISOTODA_OK) return st;
    *out_count = static_cast<int>(t->value.times.size());
    return ISOTODA_OK;
}

isotoda_status isotoda_trajectory_time(const isotoda_trajectory* t, int i,
                                       double* out_time) {
    if (auto st = require(t && out_time); st != ISOTODA_OK) return st;
    if (i < 0 || i >= static_cast<int>(t->value.times.size())) {
        set_error("trajectory index out of range");
        return ISOTODA_ERR_ARGUMENT;
    }
    *out_time = t->value.times[i];
    return ISOTODA_OK;
}

isotoda_status isotoda_trajectory_state(const isotoda_trajectory* t, int i,
                                        double* out_a, double* out_b) {
    if (auto st = require(t && out_a && out_b); st != ISOTODA_OK) return st;
    if (i < 0 || i >= static_cast<int>(t->value.states.size())) {
        set_error("trajectory index out of range");
        return ISOTODA_ERR_ARGUMENT;
    }
    const auto& L = t->value.states[i];
    for (int j = 0; j < L.n(); ++j) out_a[j] = L.a[j];
    for (int j = 0; j < L.n(); ++j) {
        out_b[2 * j] = L.b[j].real();
        out_b[2 * j + 1] = L.b[j].imag();
    }
    return ISOTODA_OK;
}

isotoda_status isotoda_trajectory_drift(const isotoda_trajectory* t, int i,
                                        double* out_spectrum, double* out_abs_b,
                                        double* out_arg_b) {
    if (auto st = require(t && out_spectrum && out_abs_b && out_arg_b);
        st != ISOTODA_OK)
        return st;
    if (i < 0 || i >= static_cast<int>(t->value.drifts.size())) {
        set_error("trajectory index out of range");
        return ISOTODA_ERR_ARGUMENT;
    }
    *out_spectrum = t->value.drifts[i].spectrum;
    *out_abs_b = t->value.drifts[i].abs_b;
    *out_arg_b = t->value.drifts[i].arg_b;
    return ISOTODA_OK;
}

isotoda_status isotoda_trajectory_status(const isotoda_trajectory* t,
                                         int* out_failed, int* out_failed_step) {
    if (auto st = require(t && out_failed && out_failed_step); st != ISOTODA_OK)
        return st;
    *out_failed = t->value.failed ? 1 : 0;
    *out_failed_step = t->value.failed_step;
    return ISOTODA_OK;
}

isotoda_status isotoda_trajectory_max_drift(const isotoda_trajectory* t,
                                            double* out_spectrum,
                                            double* out_abs_b, double* out_arg_b) {
    if (auto st = require(t && out_spectrum && out_abs_b && out_arg_b);
        st != ISOTODA_OK)
        return st;
    *out_spectrum = t->value.max_drift.spectrum;
    *out_abs_b = t->value.max_drift.abs_b;
    *out_arg_b = t->value.max_drift.arg_b;
    return ISOTODA_OK;
}

isotoda_status isotoda_monodromy(const isotoda_matrix* gauged, double x,
                                 double* out_m, double* out_det,
                                 double* out_trace) {
    if (auto st = require(gauged && out_m && out_det && out_trace);
        st != ISOTODA_OK)
        return st;
    return guarded([&] {
        const auto m = isotoda::schrodinger::monodromy(gauged->value, x);
        for (int i = 0; i < 4; ++i) {
            out_m[2 * i] = m.entries[i].real();
            out_m[2 * i + 1] = m.entries[i].imag();
        }
        *out_det = m.det;
        *out_trace = m.trace;
        return ISOTODA_OK;
    });
}

isotoda_status isotoda_spectral_polynomial(const isotoda_matrix* gauged,
                                           double* out_coeffs) {
    if (auto st = require(gauged && out_coeffs); st != ISOTODA_OK) return st;
    return guarded([&] {
        const auto P = isotoda::schrodinger::spectral_polynomial(gauged->value);
        for (int i = 0; i <= P.degree(); ++i) out_coeffs[i] = P.coeffs[i];
        return ISOTODA_OK;
    });
}

isotoda_status isotoda_forbidden_zones(const isotoda_matrix* gauged, double tol,
                                       isotoda_zones** out) {
    if (auto st = require(gauged && out); st != ISOTODA_OK) return st;
    return guarded([&] {
        *out = new isotoda_zones{
            isotoda::schrodinger::forbidden_zones(gauged->value, tol)};
        return ISOTODA_OK;
    });
}

void isotoda_zones_free(isotoda_zones* z) { delete z; }

isotoda_status isotoda_zones_count(const isotoda_zones* z, int* out_count) {
    if (auto st = require(z && out_count); st != ISOTODA_OK) return st;
    *out_count = static_cast<int>(z->value.zones.size());
    return ISOTODA_OK;
}

isotoda_status isotoda_zones_get(const isotoda_zones* z, int i, double* out_lo,
                                 double* out_hi, int* out_collapsed,
                                 int* out_upper) {
    if (auto st = require(z && out_lo && out_hi && out_collapsed && out_upper);
        st != ISOTODA_OK)
        return st;
    if (i < 0 || i >= static_cast<int>(z->value.zones.size())) {
        set_error("zone index out of range");
        return ISOTODA_ERR_ARGUMENT;
    }
    const auto& zone = z->value.zones[i];
    *out_lo = zone.lo;
    *out_hi = zone.hi;
    *out_collapsed = zone.collapsed ? 1 : 0;
    *out_upper = zone.upper ? 1 : 0;
    return ISOTODA_OK;
}

isotoda_status isotoda_zones_roots(const isotoda_zones* z, double* out) {
    if (auto st = require(z && out); st != ISOTODA_OK) return st;
    std::copy(z->value.roots.begin(), z->value.roots.end(), out);
    return ISOTODA_OK;
}

isotoda_status isotoda_stirling2(int n, int k, int64_t* out) {
    if (auto st = require(out); st != ISOTODA_OK) return st;
    return guarded([&] {
        const auto v = isotoda::tiling::stirling2(n, k);
        if (!isotoda::fits_int64(v)) {
            set_error("stirling2 value exceeds 64-bit range");
            return ISOTODA_ERR_OVERFLOW;
        }
        *out = static_cast<std::int64_t>(v);
        return ISOTODA_OK;
    });
}

isotoda_status isotoda_complex_face_counts(int n, int64_t* out) {
    if (auto st = require(out); st != ISOTODA_OK) return st;
    return guarded([&] {
        const auto c = isotoda::tiling::build_complex(n);
        const auto counts = c.f_by_dim();
        std::copy(counts.begin(), counts.end(), out);
        return ISOTODA_OK;
    });
}

isotoda_status isotoda_tiling_json(int n, int include_poset, char** out) {
    if (auto st = require(out); st != ISOTODA_OK) return st;
    return guarded([&] {
        const auto st = isotoda::tiling::dual_poset_stats(n);
        json j;
        j["n"] = n;
        auto dump = [&](const std::vector<isotoda::int128>& v) {
            json arr = json::array();
            for (auto x : v) arr.push_back(int128_json(x));
            return arr;
        };
        j["f"] = dump(st.f);
        j["h"] = dump(st.h);
        j["h_prime"] = dump(st.h_prime);
        j["h_pp"] = dump(st.h_pp);
        j["betti_tilde"] = dump(st.betti_tilde);

        if (n <= isotoda::tiling::kDefaultComplexCap) {
            const auto c = isotoda::tiling::build_complex(n);
            j["face_counts_by_dim"] = c.f_by_dim();
            const auto rep = isotoda::tiling::verify_crystallization(c);
            j["crystallization"] = {
                {"dual_vertex_count", rep.dual_vertex_count},
                {"minimal_vertices", rep.minimal_vertices},
                {"pure", rep.pure},
                {"boolean_intervals", rep.boolean_intervals},
                {"violations", rep.violations},
            };
            if (include_poset) {
                json faces = json::array();
                for (const auto& f : c.faces) {
                    faces.push_back({{"k", f.k},
                                     {"partition", f.blocks},
                                     {"dim", f.dim}});
                }
                json covers = json::array();
                for (size_t fi = 0; fi < c.covers.size(); ++fi)
                    for (int child : c.covers[fi])
                        covers.push_back(json::array({static_cast<int>(fi), child}));
                j["faces"] = std::move(faces);
                j["covers"] = std::move(covers);
            }
        }
        const std::string text = j.dump();
        *out = new char[text.size() + 1];
        std::memcpy(*out, text.c_str(), text.size() + 1);
        return ISOTODA_OK;
    });
}

void isotoda_string_free(char* s) { delete[] s; }

isotoda_status isotoda_betti_table(int n, int n_plus, int n_minus, int64_t* out) {
    if (auto st = require(out); st != ISOTODA_OK) return st;
    return guarded([&] {
        const auto table = isotoda::homology::betti_table(n, n_plus, n_minus);
        for (size_t i = 0; i < table.betti.size(); ++i)
            out[i] = isotoda::to_int64_checked(table.betti[i]);
        return ISOTODA_OK;
    });
}

isotoda_status isotoda_most_degenerate_split(int n, int* out_n_plus,
                                             int* out_n_minus) {
    if (auto st = require(out_n_plus && out_n_minus); st != ISOTODA_OK) return st;
    return guarded([&] {
        const auto split = isotoda::homology::most_degenerate_split(n);
        *out_n_plus = split.n_plus;
        *out_n_minus = split.n_minus;
        return ISOTODA_OK;
    });
}

isotoda_status isotoda_homology_diagnostics(int n, int n_plus, int n_minus,
                                            isotoda_diagnostics* out) {
    if (auto st = require(out); st != ISOTODA_OK) return st;
    return guarded([&] {
        const auto d = isotoda::homology::diagnostics(n, n_plus, n_minus);
        out->euler = isotoda::to_int64_checked(d.euler);
        out->pi1_rank = d.pi1_rank;
        out->odd_betti_total = isotoda::to_int64_checked(d.odd_betti_total);
        out->equivariantly_formal = d.equivariantly_formal ? 1 : 0;
        return ISOTODA_OK;
    });
}

isotoda_status isotoda_orbit_poincare(int n, int n_plus, int n_minus,
                                      int64_t* out) {
    if (auto st = require(out); st != ISOTODA_OK) return st;
    return guarded([&] {
        const auto d = isotoda::homology::diagnostics(n, n_plus, n_minus);
        for (int i = 0; i <= 2 * n; ++i) {
            const auto& p = d.orbit_poincare;
            out[i] = i < static_cast<int>(p.size())
                         ? isotoda::to_int64_checked(p[i])
                         : 0;
        }
        return ISOTODA_OK;
    });
}

isotoda_status isotoda_equivariant_series(int n, int terms, int kind,
                                          int64_t* out) {
    if (auto st = require(out); st != ISOTODA_OK) return st;
    return guarded([&] {
        std::vector<isotoda::int128> coeffs;
        switch (kind) {
            case 0:
                coeffs = isotoda::homology::equivariant_series_collar(n, terms);
                break;
            case 1:
                coeffs = isotoda::homology::equivariant_series_principal(n).expand(terms);
                break;
            case 2: {
                const auto rem = isotoda::homology::full_space_remainder(n);
                if (rem.empty()) {
                    set_error("full-space series remainder is undetermined for n >= 4");
                    return ISOTODA_ERR_ARGUMENT;
                }
                coeffs = isotoda::homology::equivariant_series_principal(n).expand(terms);
                for (size_t i = 0; i < rem.size() && i < coeffs.size(); ++i)
                    coeffs[i] += rem[i];
                break;
            }
            default:
                set_error("unknown series kind");
                return ISOTODA_ERR_ARGUMENT;
        }
        for (int i = 0; i < terms; ++i)
            out[i] = isotoda::to_int64_checked(coeffs[i]);
        return ISOTODA_OK;
    });
}

} // extern "C"
