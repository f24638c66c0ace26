#ifndef PINLAB_QUENCHED_HPP
#define PINLAB_QUENCHED_HPP

#include <cstdint>
#include <vector>

#include "pinlab/renewal.hpp"

namespace pinlab {

// Reproducible Gaussian disorder: variate (sample, site) is a pure function
// of (master_seed, sample, site), independent of traversal order.
struct DisorderBatch {
    std::uint64_t master_seed = 0;
    long N = 0;
    long num_samples = 0;

    double variate(long sample, long site) const;
    std::vector<double> sample_row(long sample) const;  // sites 1..N
};

enum class EstimateKind { quenched, interpolation_gap, contact_fraction };

struct FreeEnergyEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    long N = 0;
    long num_samples = 0;
    double beta = 0.0;
    double h = 0.0;
    EstimateKind kind = EstimateKind::quenched;
    bool step_warning = false;  // contact_fraction: dh above the sane range
};

// log E[e^{sum (beta omega_n + h) delta_n} delta_N] at one disorder
// realization omega(1..N).
double log_partition(const RenewalLaw& law, double beta, double h,
                     const std::vector<double>& omega);

// Mean and standard error of (1/N) log Z_N over the batch. Samples are
// independent; workers > 1 splits them across threads with bit-identical
// aggregation.
FreeEnergyEstimate quenched_free_energy(const RenewalLaw& law, double beta, double h,
                                        long N, const DisorderBatch& batch,
                                        int workers = 1);

// Centered finite difference of the free energy in h with common random
// numbers: the same disorder sample enters both h +- dh evaluations and the
// difference is taken per sample before averaging.
FreeEnergyEstimate contact_fraction(const RenewalLaw& law, double beta, double h,
                                    long N, const DisorderBatch& batch, double dh,
                                    int workers = 1);

// R_{N,delta}(beta): per-sample (1/N) log Z(beta, -beta^2/2 + delta) minus the
// deterministic homogeneous value at delta.
FreeEnergyEstimate interpolation_gap(const RenewalLaw& law, double beta, double delta,
                                     long N, const DisorderBatch& batch,
                                     int workers = 1);

}  // namespace pinlab

#endif
