#ifndef PINLAB_HOMOGENEOUS_HPP
#define PINLAB_HOMOGENEOUS_HPP

#include <cstdint>
#include <vector>

#include "pinlab/renewal.hpp"

namespace pinlab {

// Solution of sum_n e^{-F n} K(n) = e^{-delta} for the non-disordered model.
struct HomogeneousSolution {
    double delta = 0.0;
    double F = 0.0;
    double dF = 0.0;
    double d2F = 0.0;
    double residual = 0.0;   // |sum - e^{-delta}| at the returned F
    long series_terms = 0;   // where the sum was cut (geometric tail below 1e-18)
};

// Limit free energy F(0, delta) with its first two delta-derivatives.
// Requires a recurrent law; transient laws must go through
// recurrent_reduction first.
HomogeneousSolution free_energy(const RenewalLaw& law, double delta);

// (dF, d2F) by implicit differentiation of the identity; delta > 0 only.
std::pair<double, double> free_energy_derivatives(const RenewalLaw& law, double delta);

// (1/N) log Z_N from the pinned recursion Z(n) = e^{delta} sum_k K(k) Z(n-k).
double finite_volume_free_energy(const RenewalLaw& law, double delta, long N);

// log Z(0..N) for per-site rewards x_n (renewal at n earns e^{x_n}; endpoint
// pinned). Entries are -inf at unreachable sites. This is the workhorse shared
// by the homogeneous and disordered recursions: linear-space with global
// rescaling, so the inner loop stays a plain multiply-add.
std::vector<double> pinned_log_partition(const RenewalLaw& law,
                                         const std::vector<double>& rewards);

// Exact draw from the pinned polymer measure at strength delta via backward
// decomposition; returns the renewal set including 0 and N.
std::vector<long> sample_polymer(const RenewalLaw& law, double delta, long N,
                                 std::uint64_t seed);

}  // namespace pinlab

#endif
