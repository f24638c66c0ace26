#include "pinlab/pinlab.h"

#include <cstring>
#include <new>
#include <stdexcept>
#include <string>

#include "pinlab/bounds.hpp"
#include "pinlab/homogeneous.hpp"
#include "pinlab/quenched.hpp"
#include "pinlab/renewal.hpp"
#include "pinlab/replica.hpp"

struct pinlab_law {
    pinlab::RenewalLaw law;
};

namespace {

thread_local std::string g_last_error;

void copy_note(char* dst, std::size_t cap, const std::string& src) {
    const std::size_t n = std::min(cap - 1, src.size());
    std::memcpy(dst, src.data(), n);
    dst[n] = '\0';
}

template <typename Fn>
pinlab_status guarded(Fn&& fn) {
    try {
        fn();
        return PINLAB_OK;
    } catch (const pinlab::boundary_error& e) {
        g_last_error = e.what();
        return PINLAB_ERR_BOUNDARY;
    } catch (const pinlab::size_error& e) {
        g_last_error = e.what();
        return PINLAB_ERR_SIZE;
    } catch (const pinlab::estimate_error& e) {
        g_last_error = e.what();
        return PINLAB_ERR_ESTIMATE;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return PINLAB_ERR_PARAM;
    } catch (const std::domain_error& e) {
        g_last_error = e.what();
        return PINLAB_ERR_DOMAIN;
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return PINLAB_ERR_SIZE;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return PINLAB_ERR_INTERNAL;
    }
}

pinlab_status need(const void* p, const char* what) {
    if (p) return PINLAB_OK;
    g_last_error = std::string("null pointer: ") + what;
    return PINLAB_ERR_PARAM;
}

pinlab::DisorderBatch make_batch(uint64_t master_seed, long N, long num_samples) {
    pinlab::DisorderBatch b;
    b.master_seed = master_seed;
    b.N = N;
    b.num_samples = num_samples;
    return b;
}

void fill_estimate(const pinlab::FreeEnergyEstimate& e, pinlab_estimate* out) {
    out->mean = e.mean;
    out->std_error = e.std_error;
    out->N = e.N;
    out->num_samples = e.num_samples;
    out->step_warning = e.step_warning ? 1 : 0;
}

void fill_region(const pinlab::RegionVerdict& r, pinlab_region* out) {
    out->applicable = r.applicable ? 1 : 0;
    out->satisfied = r.satisfied ? 1 : 0;
    out->lhs = r.lhs;
    out->rhs = r.rhs;
    copy_note(out->note, sizeof(out->note), r.note);
}

}  // namespace

extern "C" {

const char* pinlab_last_error(void) { return g_last_error.c_str(); }

pinlab_status pinlab_law_power(double alpha, pinlab_sv_kind l_kind, double l_c,
                               double l_exponent, double l_offset, long n_max,
                               pinlab_tail_policy policy, pinlab_law** out) {
    if (auto s = need(out, "out")) return s;
    return guarded([&] {
        pinlab::SlowlyVarying L =
            (l_kind == PINLAB_SV_CONSTANT)
                ? pinlab::SlowlyVarying::constant(l_c)
                : pinlab::SlowlyVarying::log_power(l_exponent, l_offset);
        if (l_kind == PINLAB_SV_LOG_POWER) L.c = l_c;
        const auto pol = (policy == PINLAB_TAIL_KEEP) ? pinlab::TailPolicy::keep_tail
                                                      : pinlab::TailPolicy::renormalize;
        *out = new pinlab_law{pinlab::build_power_law(alpha, L, n_max, pol)};
    });
}

pinlab_status pinlab_law_srw(pinlab_srw_variant variant, long n_max, pinlab_law** out) {
    if (auto s = need(out, "out")) return s;
    return guarded([&] {
        const auto v = (variant == PINLAB_SRW_D3_TRANSIENT)
                           ? pinlab::SrwVariant::d3_transient
                           : pinlab::SrwVariant::d1_recurrent;
        *out = new pinlab_law{pinlab::build_srw_returns(v, n_max)};
    });
}

pinlab_status pinlab_law_explicit(double alpha, const double* masses, long len,
                                  pinlab_law** out) {
    if (auto s = need(out, "out")) return s;
    if (auto s = need(masses, "masses")) return s;
    return guarded([&] {
        if (len < 1) throw std::invalid_argument("pinlab_law_explicit: len < 1");
        double total = 0.0;
        for (long i = 0; i < len; ++i) {
            if (!(masses[i] >= 0.0))
                throw std::invalid_argument("pinlab_law_explicit: negative mass");
            total += masses[i];
        }
        if (!(total > 0.0))
            throw std::invalid_argument("pinlab_law_explicit: zero total mass");
        pinlab::RenewalLaw law;
        law.alpha = alpha;
        law.L = pinlab::SlowlyVarying::constant(1.0);
        law.masses.assign(masses, masses + len);
        for (double& m : law.masses) m /= total;
        law.tail_mass = 0.0;
        law.total_mass = 1.0;
        law.pre_normalization_tail = 0.0;
        *out = new pinlab_law{std::move(law)};
    });
}

void pinlab_law_free(pinlab_law* law) { delete law; }

pinlab_status pinlab_law_alpha(const pinlab_law* law, double* out) {
    if (auto s = need(law, "law")) return s;
    if (auto s = need(out, "out")) return s;
    *out = law->law.alpha;
    return PINLAB_OK;
}

pinlab_status pinlab_law_n_max(const pinlab_law* law, long* out) {
    if (auto s = need(law, "law")) return s;
    if (auto s = need(out, "out")) return s;
    *out = law->law.n_max();
    return PINLAB_OK;
}

pinlab_status pinlab_law_mass(const pinlab_law* law, long n, double* out) {
    if (auto s = need(law, "law")) return s;
    if (auto s = need(out, "out")) return s;
    return guarded([&] { *out = law->law.mass(n); });
}

pinlab_status pinlab_law_tail_mass(const pinlab_law* law, double* out) {
    if (auto s = need(law, "law")) return s;
    if (auto s = need(out, "out")) return s;
    *out = law->law.tail_mass;
    return PINLAB_OK;
}

pinlab_status pinlab_law_total_mass(const pinlab_law* law, double* out) {
    if (auto s = need(law, "law")) return s;
    if (auto s = need(out, "out")) return s;
    *out = law->law.total_mass;
    return PINLAB_OK;
}

pinlab_status pinlab_law_recurrent(const pinlab_law* law, int* out) {
    if (auto s = need(law, "law")) return s;
    if (auto s = need(out, "out")) return s;
    *out = law->law.recurrent() ? 1 : 0;
    return PINLAB_OK;
}

pinlab_status pinlab_recurrent_reduction(const pinlab_law* law, pinlab_law** out,
                                         double* shift) {
    if (auto s = need(law, "law")) return s;
    if (auto s = need(out, "out")) return s;
    if (auto s = need(shift, "shift")) return s;
    return guarded([&] {
        auto [reduced, sh] = pinlab::recurrent_reduction(law->law);
        *out = new pinlab_law{std::move(reduced)};
        *shift = sh;
    });
}

pinlab_status pinlab_mass_function(const pinlab_law* law, long N, double* out) {
    if (auto s = need(law, "law")) return s;
    if (auto s = need(out, "out")) return s;
    return guarded([&] {
        const auto u = pinlab::mass_function(law->law, N);
        std::memcpy(out, u.data(), u.size() * sizeof(double));
    });
}

pinlab_status pinlab_first_intersection_law(const pinlab_law* law, long N,
                                            double* out) {
    if (auto s = need(law, "law")) return s;
    if (auto s = need(out, "out")) return s;
    return guarded([&] {
        const auto Q = pinlab::first_intersection_law(law->law, N);
        std::memcpy(out, Q.data() + 1, static_cast<std::size_t>(N) * sizeof(double));
    });
}

pinlab_status pinlab_intersection_tail(const pinlab_law* law, long N, double* out) {
    if (auto s = need(law, "law")) return s;
    if (auto s = need(out, "out")) return s;
    return guarded([&] { *out = pinlab::intersection_tail(law->law, N); });
}

pinlab_status pinlab_marginal_ell(const pinlab_law* law, long N, double* out) {
    if (auto s = need(law, "law")) return s;
    if (auto s = need(out, "out")) return s;
    return guarded([&] { *out = pinlab::marginal_ell(law->law, N); });
}

pinlab_status pinlab_free_energy(const pinlab_law* law, double delta,
                                 pinlab_homog* out) {
    if (auto s = need(law, "law")) return s;
    if (auto s = need(out, "out")) return s;
    return guarded([&] {
        const auto sol = pinlab::free_energy(law->law, delta);
        out->delta = sol.delta;
        out->F = sol.F;
        out->dF = sol.dF;
        out->d2F = sol.d2F;
        out->residual = sol.residual;
    });
}

pinlab_status pinlab_finite_volume_free_energy(const pinlab_law* law, double delta,
                                               long N, double* out) {
    if (auto s = need(law, "law")) return s;
    if (auto s = need(out, "out")) return s;
    return guarded([&] { *out = pinlab::finite_volume_free_energy(law->law, delta, N); });
}

pinlab_status pinlab_quenched_free_energy(const pinlab_law* law, double beta, double h,
                                          long N, uint64_t master_seed,
                                          long num_samples, int workers,
                                          pinlab_estimate* out) {
    if (auto s = need(law, "law")) return s;
    if (auto s = need(out, "out")) return s;
    return guarded([&] {
        const auto batch = make_batch(master_seed, N, num_samples);
        fill_estimate(pinlab::quenched_free_energy(law->law, beta, h, N, batch, workers),
                      out);
    });
}

pinlab_status pinlab_contact_fraction(const pinlab_law* law, double beta, double h,
                                      long N, uint64_t master_seed, long num_samples,
                                      double dh, int workers, pinlab_estimate* out) {
    if (auto s = need(law, "law")) return s;
    if (auto s = need(out, "out")) return s;
    return guarded([&] {
        const auto batch = make_batch(master_seed, N, num_samples);
        fill_estimate(pinlab::contact_fraction(law->law, beta, h, N, batch, dh, workers),
                      out);
    });
}

pinlab_status pinlab_interpolation_gap(const pinlab_law* law, double beta, double delta,
                                       long N, uint64_t master_seed, long num_samples,
                                       int workers, pinlab_estimate* out) {
    if (auto s = need(law, "law")) return s;
    if (auto s = need(out, "out")) return s;
    return guarded([&] {
        const auto batch = make_batch(master_seed, N, num_samples);
        fill_estimate(
            pinlab::interpolation_gap(law->law, beta, delta, N, batch, workers), out);
    });
}

pinlab_status pinlab_annealed_critical_point(const pinlab_law* law, double beta,
                                             double* out) {
    if (auto s = need(law, "law")) return s;
    if (auto s = need(out, "out")) return s;
    return guarded([&] { *out = pinlab::annealed_critical_point(law->law, beta); });
}

pinlab_status pinlab_rs_upper_bound(const pinlab_law* law, double beta, double delta,
                                    double* value, double* q_star) {
    if (auto s = need(law, "law")) return s;
    if (auto s = need(value, "value")) return s;
    if (auto s = need(q_star, "q_star")) return s;
    return guarded([&] {
        const auto rs = pinlab::rs_upper_bound(law->law, beta, delta);
        *value = rs.value;
        *q_star = rs.q_star;
    });
}

pinlab_status pinlab_small_beta_expansion(const pinlab_law* law, double beta,
                                          double delta, double* out) {
    if (auto s = need(law, "law")) return s;
    if (auto s = need(out, "out")) return s;
    return guarded([&] { *out = pinlab::small_beta_expansion(law->law, beta, delta); });
}

pinlab_status pinlab_theorem_region(const pinlab_law* law, double beta, double delta,
                                    double a1, double a2, pinlab_region* out) {
    if (auto s = need(law, "law")) return s;
    if (auto s = need(out, "out")) return s;
    return guarded([&] {
        pinlab::RegionConstants c;
        c.a1 = a1;
        c.a2 = a2;
        fill_region(pinlab::theorem_region(law->law, beta, delta, c), out);
    });
}

pinlab_status pinlab_make_bound_report(const pinlab_law* law, double beta, double delta,
                                       long N, uint64_t master_seed, long num_samples,
                                       double a1, double a2, double epsilon,
                                       double slack_c, int workers,
                                       pinlab_bound_report* out) {
    if (auto s = need(law, "law")) return s;
    if (auto s = need(out, "out")) return s;
    return guarded([&] {
        pinlab::RegionConstants c;
        c.a1 = a1;
        c.a2 = a2;
        c.epsilon = epsilon;
        const auto batch = make_batch(master_seed, N, num_samples);
        const auto r =
            pinlab::bound_report(law->law, beta, delta, N, batch, c, slack_c, workers);
        out->alpha = r.alpha;
        out->beta = r.beta;
        out->delta = r.delta;
        out->N = r.N;
        fill_estimate(r.quenched, &out->quenched);
        out->annealed_limit = r.annealed_limit;
        out->annealed_finite = r.annealed_finite;
        out->rs_bound = r.rs_bound;
        out->rs_q_star = r.rs_q_star;
        out->expansion = r.expansion;
        out->lower_sandwich = r.lower_sandwich;
        out->finite_size_slack = r.finite_size_slack;
        fill_region(r.region, &out->region);
        out->num_verdicts =
            static_cast<int>(std::min<std::size_t>(r.verdicts.size(), PINLAB_MAX_VERDICTS));
        for (int i = 0; i < out->num_verdicts; ++i) {
            const auto& v = r.verdicts[static_cast<std::size_t>(i)];
            copy_note(out->verdicts[i].name, sizeof(out->verdicts[i].name), v.name);
            out->verdicts[i].lhs = v.lhs;
            out->verdicts[i].rhs = v.rhs;
            out->verdicts[i].margin = v.margin;
            out->verdicts[i].applicable = v.applicable ? 1 : 0;
            out->verdicts[i].pass = v.pass ? 1 : 0;
        }
        out->all_pass = r.all_pass() ? 1 : 0;
    });
}

pinlab_status pinlab_intersection_survival_exact(const pinlab_law* law, long N, long k,
                                                 double* out) {
    if (auto s = need(law, "law")) return s;
    if (auto s = need(out, "out")) return s;
    return guarded([&] {
        const auto d = pinlab::intersection_count_exact(law->law, N, std::max(1L, k));
        *out = d.survival(k);
    });
}

pinlab_status pinlab_intersection_survival_simulated(const pinlab_law* law, long N,
                                                     long samples, uint64_t seed,
                                                     long k_max, double* out) {
    if (auto s = need(law, "law")) return s;
    if (auto s = need(out, "out")) return s;
    return guarded([&] {
        if (k_max < 0)
            throw std::invalid_argument("pinlab_intersection_survival_simulated: k_max < 0");
        const auto d = pinlab::intersection_count_simulated(law->law, N, samples, seed);
        for (long k = 0; k <= k_max; ++k) out[k] = d.survival(k);
    });
}

pinlab_status pinlab_overlap_moment(const pinlab_law* law, double c, long N,
                                    pinlab_moment_mode mode, long budget,
                                    uint64_t seed, double* value,
                                    double* remainder_bound, double* max_weight_share) {
    if (auto s = need(law, "law")) return s;
    if (auto s = need(value, "value")) return s;
    return guarded([&] {
        const auto m = pinlab::overlap_moment(
            law->law, c, N,
            mode == PINLAB_MOMENT_EXACT ? pinlab::MomentMode::exact
                                        : pinlab::MomentMode::simulated,
            budget, seed);
        *value = m.value;
        if (remainder_bound) *remainder_bound = m.remainder_bound;
        if (max_weight_share) *max_weight_share = m.max_weight_share;
    });
}

pinlab_status pinlab_estimate_psi0(const pinlab_law* law, double delta,
                                   double lambda_beta_sq, long N, long samples,
                                   uint64_t seed, double* value, double* std_error,
                                   double* max_weight_share) {
    if (auto s = need(law, "law")) return s;
    if (auto s = need(value, "value")) return s;
    if (auto s = need(std_error, "std_error")) return s;
    return guarded([&] {
        const auto e =
            pinlab::estimate_psi0(law->law, delta, lambda_beta_sq, N, samples, seed);
        *value = e.value;
        *std_error = e.std_error;
        if (max_weight_share) *max_weight_share = e.max_weight_share;
    });
}

pinlab_status pinlab_psi0_exact(const pinlab_law* law, double delta,
                                double lambda_beta_sq, long N, double* out) {
    if (auto s = need(law, "law")) return s;
    if (auto s = need(out, "out")) return s;
    return guarded([&] { *out = pinlab::psi0_exact(law->law, delta, lambda_beta_sq, N); });
}

pinlab_status pinlab_check_integrating_inequality(const pinlab_law* law, double beta,
                                                  double delta, long N,
                                                  uint64_t master_seed,
                                                  long num_samples, long pair_samples,
                                                  uint64_t pair_seed, int workers,
                                                  pinlab_interp_check* out) {
    if (auto s = need(law, "law")) return s;
    if (auto s = need(out, "out")) return s;
    return guarded([&] {
        const auto batch = make_batch(master_seed, N, num_samples);
        const auto chk = pinlab::check_integrating_inequality(
            law->law, beta, delta, N, batch, pair_samples, pair_seed, workers);
        out->minus_R = chk.minus_R;
        out->sigma_R = chk.sigma_R;
        out->psi = chk.psi;
        out->sigma_psi = chk.sigma_psi;
        out->lower_margin = chk.lower_margin;
        out->upper_margin = chk.upper_margin;
        out->max_weight_share = chk.max_weight_share;
        out->pass = chk.pass ? 1 : 0;
    });
}

}  // extern "C"
