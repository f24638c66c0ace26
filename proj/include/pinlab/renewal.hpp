#ifndef PINLAB_RENEWAL_HPP
#define PINLAB_RENEWAL_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "pinlab/slowly_varying.hpp"

namespace pinlab {

// Error classes used across the library. The C facade maps them to codes.
struct boundary_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct size_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct estimate_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Inter-arrival law K(1..n_max) of a renewal process, with regular-variation
// metadata. tail_mass is the probability assigned beyond n_max (zero after
// truncate-and-renormalize, positive when the exact infinite-support masses
// are kept). total_mass = sum(masses) + tail_mass; recurrent laws have
// total_mass == 1, transient ones < 1.
struct RenewalLaw {
    double alpha = 0.0;
    SlowlyVarying L;
    std::vector<double> masses;  // masses[n-1] = K(n), n = 1..n_max
    double tail_mass = 0.0;
    double total_mass = 1.0;
    // For renormalized power laws: the mass that sat beyond n_max before
    // normalization (reported truncation bias). Zero otherwise.
    double pre_normalization_tail = 0.0;

    long n_max() const { return static_cast<long>(masses.size()); }

    double mass(long n) const {
        if (n < 1 || n > n_max()) return 0.0;
        return masses[static_cast<size_t>(n - 1)];
    }

    // The constant K(n) * n^{1+alpha} implied by the stored masses; for a
    // power law this is the effective L including normalization.
    double implied_L(long n) const;

    bool recurrent(double tol = 1e-12) const {
        return std::abs(total_mass - 1.0) <= tol;
    }
};

enum class TailPolicy {
    renormalize,  // truncate at n_max and rescale to total mass 1
    keep_tail,    // keep exact infinite-law masses, store the residual as tail_mass
};

enum class SrwVariant { d1_recurrent, d3_transient };

// K(n) proportional to L(n) / n^{1+alpha}. With TailPolicy::keep_tail the
// normalizer is the full series (Euler-Maclaurin remainder beyond n_max;
// constant L only), so masses 1..n_max are those of the infinite-support law.
RenewalLaw build_power_law(double alpha, const SlowlyVarying& L, long n_max,
                           TailPolicy policy = TailPolicy::renormalize);

// Return-time laws of simple random walks, indexed so that K(n) is the
// probability of a first return at time 2n.
RenewalLaw build_srw_returns(SrwVariant variant, long n_max);

// Normalize a (possibly transient) law to total mass 1 and report the free
// energy shift: F(beta, h) = F_tilde(beta, h + shift), shift = log total_mass.
std::pair<RenewalLaw, double> recurrent_reduction(const RenewalLaw& law);

// u(0..N), u(n) = P(n is a renewal point); defining recursion
// u(n) = sum_{k=1}^{min(n, n_max)} K(k) u(n-k). Direct recursion for small N,
// FFT power-series inversion for large N (identical up to float noise).
std::vector<double> mass_function(const RenewalLaw& law, long N);

// First-intersection-time law Q(1..N) of two independent copies (returned as
// a vector of size N+1 with index 0 unused). Renewal inversion of v = u^2.
std::vector<double> first_intersection_law(const RenewalLaw& law, long N);

// P(first intersection > N) = 1 - sum_{n<=N} Q(n): the per-excursion escape
// probability of the intersection renewal.
double intersection_tail(const RenewalLaw& law, long N);

// ell(N) = sum_{n=1}^N 1 / (n L(n)^2), the marginal-case (alpha = 1/2)
// slowly varying divergence. Large N evaluated by partial sum plus the
// closed-form integral remainder.
double marginal_ell(const RenewalLaw& law, long N);

// tau intersect [0, N] under the unconditioned law; deterministic in seed.
std::vector<long> sample_renewal(const RenewalLaw& law, long N, std::uint64_t seed);

// Internal sampler with a precomputed CDF; factored out so bulk simulations
// pay the O(n_max) setup once.
class RenewalSampler {
  public:
    explicit RenewalSampler(const RenewalLaw& law);

    // Next inter-arrival; returns n_max + 1 when the draw lands in tail_mass
    // or in the missing mass of a transient law (an "infinite" gap for any
    // window of interest must be handled by the caller).
    long draw(std::uint64_t seed, std::uint64_t counter) const;

    long n_max() const { return static_cast<long>(cdf_.size()); }

  private:
    std::vector<double> cdf_;
};

}  // namespace pinlab

#endif
