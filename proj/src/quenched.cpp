#include "pinlab/quenched.hpp"

#include <atomic>
#include <cmath>
#include <future>
#include <vector>

#include "pinlab/homogeneous.hpp"
#include "pinlab/rng.hpp"

namespace pinlab {

namespace {

struct MeanStderr {
    double mean = 0.0, std_error = 0.0;
};

MeanStderr aggregate(const std::vector<double>& values) {
    const double n = static_cast<double>(values.size());
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var = (values.size() > 1) ? var / (n - 1.0) : 0.0;
    return {mean, std::sqrt(var / n)};
}

// Evaluate f(sample) for every sample, optionally across threads. Results go
// into a per-sample slot, so the aggregate is independent of scheduling.
template <typename F>
std::vector<double> per_sample(long num_samples, int workers, F&& f) {
    std::vector<double> out(static_cast<size_t>(num_samples));
    if (workers <= 1) {
        for (long s = 0; s < num_samples; ++s) out[static_cast<size_t>(s)] = f(s);
        return out;
    }
    std::vector<std::future<void>> jobs;
    std::atomic<long> next{0};
    for (int t = 0; t < workers; ++t) {
        jobs.push_back(std::async(std::launch::async, [&] {
            for (long s = next.fetch_add(1); s < num_samples; s = next.fetch_add(1))
                out[static_cast<size_t>(s)] = f(s);
        }));
    }
    for (auto& j : jobs) j.get();
    return out;
}

}  // namespace

double DisorderBatch::variate(long sample, long site) const {
    return rng::gaussian(master_seed, static_cast<std::uint64_t>(sample),
                         static_cast<std::uint64_t>(site));
}

std::vector<double> DisorderBatch::sample_row(long sample) const {
    std::vector<double> row(static_cast<size_t>(N));
    for (long n = 1; n <= N; ++n)
        row[static_cast<size_t>(n - 1)] = variate(sample, n);
    return row;
}

double log_partition(const RenewalLaw& law, double beta, double h,
                     const std::vector<double>& omega) {
    const long N = static_cast<long>(omega.size());
    std::vector<double> rewards(static_cast<size_t>(N));
    for (long n = 0; n < N; ++n)
        rewards[static_cast<size_t>(n)] = beta * omega[static_cast<size_t>(n)] + h;
    const auto logz = pinned_log_partition(law, rewards);
    const double lz = logz[static_cast<size_t>(N)];
    if (!std::isfinite(lz))
        throw boundary_error("log_partition: N unreachable under the law");
    return lz;
}

FreeEnergyEstimate quenched_free_energy(const RenewalLaw& law, double beta, double h,
                                        long N, const DisorderBatch& batch,
                                        int workers) {
    if (batch.num_samples < 1)
        throw std::invalid_argument("quenched_free_energy: empty disorder batch");
    if (batch.N < N)
        throw std::invalid_argument("quenched_free_energy: batch shorter than N");

    const auto values = per_sample(batch.num_samples, workers, [&](long s) {
        std::vector<double> rewards(static_cast<size_t>(N));
        for (long n = 1; n <= N; ++n)
            rewards[static_cast<size_t>(n - 1)] = beta * batch.variate(s, n) + h;
        const auto logz = pinned_log_partition(law, rewards);
        const double lz = logz[static_cast<size_t>(N)];
        if (!std::isfinite(lz))
            throw boundary_error("quenched_free_energy: N unreachable under the law");
        return lz / static_cast<double>(N);
    });

    const auto agg = aggregate(values);
    FreeEnergyEstimate est;
    est.mean = agg.mean;
    est.std_error = (beta == 0.0) ? 0.0 : agg.std_error;
    est.N = N;
    est.num_samples = batch.num_samples;
    est.beta = beta;
    est.h = h;
    est.kind = EstimateKind::quenched;
    return est;
}

FreeEnergyEstimate contact_fraction(const RenewalLaw& law, double beta, double h,
                                    long N, const DisorderBatch& batch, double dh,
                                    int workers) {
    if (!(dh > 0.0))
        throw std::invalid_argument("contact_fraction: dh must be > 0");
    if (batch.num_samples < 1)
        throw std::invalid_argument("contact_fraction: empty disorder batch");

    const auto values = per_sample(batch.num_samples, workers, [&](long s) {
        std::vector<double> rewards(static_cast<size_t>(N));
        for (long n = 1; n <= N; ++n)
            rewards[static_cast<size_t>(n - 1)] = beta * batch.variate(s, n) + h + dh;
        const double up = pinned_log_partition(law, rewards)[static_cast<size_t>(N)];
        for (auto& r : rewards) r -= 2.0 * dh;
        const double dn = pinned_log_partition(law, rewards)[static_cast<size_t>(N)];
        if (!std::isfinite(up) || !std::isfinite(dn))
            throw boundary_error("contact_fraction: N unreachable under the law");
        return (up - dn) / (2.0 * dh * static_cast<double>(N));
    });

    const auto agg = aggregate(values);
    FreeEnergyEstimate est;
    est.mean = agg.mean;
    est.std_error = (beta == 0.0) ? 0.0 : agg.std_error;
    est.N = N;
    est.num_samples = batch.num_samples;
    est.beta = beta;
    est.h = h;
    est.kind = EstimateKind::contact_fraction;
    est.step_warning = dh > 0.1;
    return est;
}

FreeEnergyEstimate interpolation_gap(const RenewalLaw& law, double beta, double delta,
                                     long N, const DisorderBatch& batch,
                                     int workers) {
    if (!(delta > 0.0))
        throw std::invalid_argument("interpolation_gap: delta must be > 0");
    const double f0 = finite_volume_free_energy(law, delta, N);
    const double h = -0.5 * beta * beta + delta;

    const auto values = per_sample(batch.num_samples, workers, [&](long s) {
        std::vector<double> rewards(static_cast<size_t>(N));
        for (long n = 1; n <= N; ++n)
            rewards[static_cast<size_t>(n - 1)] = beta * batch.variate(s, n) + h;
        const auto logz = pinned_log_partition(law, rewards);
        return logz[static_cast<size_t>(N)] / static_cast<double>(N) - f0;
    });

    const auto agg = aggregate(values);
    FreeEnergyEstimate est;
    est.mean = agg.mean;
    est.std_error = (beta == 0.0) ? 0.0 : agg.std_error;
    est.N = N;
    est.num_samples = batch.num_samples;
    est.beta = beta;
    est.h = h;
    est.kind = EstimateKind::interpolation_gap;
    return est;
}

}  // namespace pinlab
