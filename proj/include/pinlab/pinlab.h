/* C interface to the pinning-model core. All entry points return a status
 * code; results go through out-parameters. Handles are opaque and must be
 * released with the matching _free call. pinlab_last_error() returns a
 * thread-local message for the most recent failure on this thread. */

#ifndef PINLAB_PINLAB_H
#define PINLAB_PINLAB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pinlab_status {
    PINLAB_OK = 0,
    PINLAB_ERR_PARAM = 1,    /* invalid argument */
    PINLAB_ERR_DOMAIN = 2,   /* outside mathematical domain */
    PINLAB_ERR_BOUNDARY = 3, /* endpoint/constraint unreachable */
    PINLAB_ERR_SIZE = 4,     /* over a computational budget */
    PINLAB_ERR_ESTIMATE = 5, /* estimator refused (degenerate weights) */
    PINLAB_ERR_INTERNAL = 6
} pinlab_status;

const char* pinlab_last_error(void);

typedef struct pinlab_law pinlab_law;

typedef enum pinlab_sv_kind {
    PINLAB_SV_CONSTANT = 0,
    PINLAB_SV_LOG_POWER = 1 /* c * log(n + offset)^exponent */
} pinlab_sv_kind;

typedef enum pinlab_tail_policy {
    PINLAB_TAIL_RENORMALIZE = 0,
    PINLAB_TAIL_KEEP = 1
} pinlab_tail_policy;

typedef enum pinlab_srw_variant {
    PINLAB_SRW_D1_RECURRENT = 0,
    PINLAB_SRW_D3_TRANSIENT = 1
} pinlab_srw_variant;

pinlab_status pinlab_law_power(double alpha, pinlab_sv_kind l_kind, double l_c,
                               double l_exponent, double l_offset, long n_max,
                               pinlab_tail_policy policy, pinlab_law** out);
pinlab_status pinlab_law_srw(pinlab_srw_variant variant, long n_max, pinlab_law** out);
/* K(1..len) given explicitly; renormalized to sum 1. */
pinlab_status pinlab_law_explicit(double alpha, const double* masses, long len,
                                  pinlab_law** out);
void pinlab_law_free(pinlab_law* law);

pinlab_status pinlab_law_alpha(const pinlab_law* law, double* out);
pinlab_status pinlab_law_n_max(const pinlab_law* law, long* out);
pinlab_status pinlab_law_mass(const pinlab_law* law, long n, double* out);
pinlab_status pinlab_law_tail_mass(const pinlab_law* law, double* out);
pinlab_status pinlab_law_total_mass(const pinlab_law* law, double* out);
pinlab_status pinlab_law_recurrent(const pinlab_law* law, int* out);
/* Recurrent conditioning of a transient law; shift is the free-energy offset
 * -log(total mass). */
pinlab_status pinlab_recurrent_reduction(const pinlab_law* law, pinlab_law** out,
                                         double* shift);

/* u(0..N) into a caller buffer of N+1 doubles. */
pinlab_status pinlab_mass_function(const pinlab_law* law, long N, double* out);
/* Q(1..N) into a caller buffer of N doubles. */
pinlab_status pinlab_first_intersection_law(const pinlab_law* law, long N, double* out);
pinlab_status pinlab_intersection_tail(const pinlab_law* law, long N, double* out);
pinlab_status pinlab_marginal_ell(const pinlab_law* law, long N, double* out);

typedef struct pinlab_homog {
    double delta;
    double F;
    double dF;
    double d2F;
    double residual;
} pinlab_homog;

pinlab_status pinlab_free_energy(const pinlab_law* law, double delta,
                                 pinlab_homog* out);
pinlab_status pinlab_finite_volume_free_energy(const pinlab_law* law, double delta,
                                               long N, double* out);

typedef struct pinlab_estimate {
    double mean;
    double std_error;
    long N;
    long num_samples;
    int step_warning;
} pinlab_estimate;

pinlab_status pinlab_quenched_free_energy(const pinlab_law* law, double beta, double h,
                                          long N, uint64_t master_seed,
                                          long num_samples, int workers,
                                          pinlab_estimate* out);
pinlab_status pinlab_contact_fraction(const pinlab_law* law, double beta, double h,
                                      long N, uint64_t master_seed, long num_samples,
                                      double dh, int workers, pinlab_estimate* out);
pinlab_status pinlab_interpolation_gap(const pinlab_law* law, double beta, double delta,
                                       long N, uint64_t master_seed, long num_samples,
                                       int workers, pinlab_estimate* out);

pinlab_status pinlab_annealed_critical_point(const pinlab_law* law, double beta,
                                             double* out);
pinlab_status pinlab_rs_upper_bound(const pinlab_law* law, double beta, double delta,
                                    double* value, double* q_star);
pinlab_status pinlab_small_beta_expansion(const pinlab_law* law, double beta,
                                          double delta, double* out);

typedef struct pinlab_region {
    int applicable;
    int satisfied;
    double lhs;
    double rhs;
    char note[128];
} pinlab_region;

pinlab_status pinlab_theorem_region(const pinlab_law* law, double beta, double delta,
                                    double a1, double a2, pinlab_region* out);

typedef struct pinlab_verdict {
    char name[48];
    double lhs;
    double rhs;
    double margin;
    int applicable;
    int pass;
} pinlab_verdict;

#define PINLAB_MAX_VERDICTS 8

typedef struct pinlab_bound_report {
    double alpha, beta, delta;
    long N;
    pinlab_estimate quenched;
    double annealed_limit;
    double annealed_finite;
    double rs_bound;
    double rs_q_star;
    double expansion; /* NaN when inapplicable */
    double lower_sandwich;
    double finite_size_slack;
    pinlab_region region;
    pinlab_verdict verdicts[PINLAB_MAX_VERDICTS];
    int num_verdicts;
    int all_pass;
} pinlab_bound_report;

pinlab_status pinlab_make_bound_report(const pinlab_law* law, double beta, double delta,
                                       long N, uint64_t master_seed, long num_samples,
                                       double a1, double a2, double epsilon,
                                       double slack_c, int workers,
                                       pinlab_bound_report* out);

/* Exact intersection-count survival P(count >= k). */
pinlab_status pinlab_intersection_survival_exact(const pinlab_law* law, long N, long k,
                                                 double* out);
/* Empirical survival probabilities for k = 0..k_max into out (k_max+1 slots). */
pinlab_status pinlab_intersection_survival_simulated(const pinlab_law* law, long N,
                                                     long samples, uint64_t seed,
                                                     long k_max, double* out);

typedef enum pinlab_moment_mode {
    PINLAB_MOMENT_EXACT = 0,
    PINLAB_MOMENT_SIMULATED = 1
} pinlab_moment_mode;

pinlab_status pinlab_overlap_moment(const pinlab_law* law, double c, long N,
                                    pinlab_moment_mode mode, long budget,
                                    uint64_t seed, double* value,
                                    double* remainder_bound, double* max_weight_share);

pinlab_status pinlab_estimate_psi0(const pinlab_law* law, double delta,
                                   double lambda_beta_sq, long N, long samples,
                                   uint64_t seed, double* value, double* std_error,
                                   double* max_weight_share);
pinlab_status pinlab_psi0_exact(const pinlab_law* law, double delta,
                                double lambda_beta_sq, long N, double* out);

typedef struct pinlab_interp_check {
    double minus_R;
    double sigma_R;
    double psi;
    double sigma_psi;
    double lower_margin;
    double upper_margin;
    double max_weight_share;
    int pass;
} pinlab_interp_check;

pinlab_status pinlab_check_integrating_inequality(const pinlab_law* law, double beta,
                                                  double delta, long N,
                                                  uint64_t master_seed,
                                                  long num_samples, long pair_samples,
                                                  uint64_t pair_seed, int workers,
                                                  pinlab_interp_check* out);

#ifdef __cplusplus
}
#endif

#endif
