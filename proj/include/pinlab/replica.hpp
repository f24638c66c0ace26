#ifndef PINLAB_REPLICA_HPP
#define PINLAB_REPLICA_HPP

#include <cstdint>
#include <vector>

#include "pinlab/quenched.hpp"
#include "pinlab/renewal.hpp"

namespace pinlab {

// Distribution of the number of joint renewals of two independent copies,
// counted per excursion: each joint gap must fall in [1, N], the first gap
// beyond N ends the count. The count is capped at N, so laws with
// escape probability zero degenerate at N instead of diverging.
struct IntersectionCountDistribution {
    enum class Source { exact_via_Q, simulated };

    long N = 0;
    std::vector<double> pmf;  // index k = 0..k_max
    Source source = Source::exact_via_Q;
    double escape_prob = 0.0;  // intersection_tail(law, N); NaN for simulated

    long k_max() const { return static_cast<long>(pmf.size()) - 1; }
    double survival(long k) const;  // P(count >= k)
};

// Exact distribution from the first-intersection law Q: with
// p = sum_{n<=N} Q(n), P(count >= k) = p^k. The pmf is truncated where the
// remaining mass drops below 1e-9 (or at k = N) and the remainder is lumped
// into the last entry so the pmf sums to 1 exactly.
IntersectionCountDistribution intersection_count_exact(const RenewalLaw& law, long N,
                                                       long k_max);

// Empirical distribution from pairs of independent renewal walks advanced
// until the first joint gap exceeds N. Deterministic given seed.
IntersectionCountDistribution intersection_count_simulated(const RenewalLaw& law,
                                                           long N, long samples,
                                                           std::uint64_t seed);

enum class MomentMode { exact, simulated };

struct OverlapMoment {
    double value = 0.0;
    double remainder_bound = 0.0;   // exact mode: e^{c k_max} P(count > k_max)
    double max_weight_share = 0.0;  // simulated mode: largest sample weight share
};

// E^{x2}[exp(c * count)] under the free pair law, from the intersection
// count distribution. budget is the sample count in simulated mode.
OverlapMoment overlap_moment(const RenewalLaw& law, double c, long N, MomentMode mode,
                             long budget, std::uint64_t seed);

struct Psi0Estimate {
    double value = 0.0;
    double std_error = 0.0;
    double max_weight_share = 0.0;
    long samples = 0;
};

// psi(0, lambda, beta) = (1/2N) log < e^{lambda beta^2 sum delta1 delta2} >
// under the pinned product measure at strength delta, estimated from
// independent polymer pairs. lambda_beta_sq is the product lambda * beta^2.
// Throws estimate_error when one pair carries more than half the total
// weight (a log-of-mean with a dominating sample is meaningless).
Psi0Estimate estimate_psi0(const RenewalLaw& law, double delta, double lambda_beta_sq,
                           long N, long samples, std::uint64_t seed);

// Exact psi(0, ., .) by dynamic programming over the first joint renewal of
// the two pinned replicas; O(N^2), guarded at N <= 2000 (oracle use only).
double psi0_exact(const RenewalLaw& law, double delta, double lambda_beta_sq, long N);

struct InterpolationCheck {
    double minus_R = 0.0;    // -(quenched at h_c^a shift minus homogeneous)
    double sigma_R = 0.0;
    double psi = 0.0;        // psi(0, 2, beta) estimate
    double sigma_psi = 0.0;
    double lower_margin = 0.0;  // minus_R - (0 - 3 sigma_R)
    double upper_margin = 0.0;  // (e-1) psi + 3 sigma_comb - minus_R
    double max_weight_share = 0.0;
    bool pass = false;
};

// Checks 0 <= -R_{N,delta}(beta) <= (e-1) psi(0, 2, beta) within 3 sigma,
// with R from the disorder batch and psi from polymer-pair sampling.
InterpolationCheck check_integrating_inequality(const RenewalLaw& law, double beta,
                                                double delta, long N,
                                                const DisorderBatch& batch,
                                                long samples, std::uint64_t seed,
                                                int workers = 1);

}  // namespace pinlab

#endif
