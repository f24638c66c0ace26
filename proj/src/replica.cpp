#include "pinlab/replica.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pinlab/homogeneous.hpp"
#include "pinlab/rng.hpp"

namespace pinlab {

namespace {

double logsumexp(const std::vector<double>& xs) {
    double m = -std::numeric_limits<double>::infinity();
    for (double x : xs) m = std::max(m, x);
    if (!std::isfinite(m)) return m;
    double acc = 0.0;
    for (double x : xs) acc += std::exp(x - m);
    return m + std::log(acc);
}

}  // namespace

double IntersectionCountDistribution::survival(long k) const {
    if (k <= 0) return 1.0;
    double acc = 0.0;
    for (long j = k; j < static_cast<long>(pmf.size()); ++j) acc += pmf[j];
    return acc;
}

IntersectionCountDistribution intersection_count_exact(const RenewalLaw& law, long N,
                                                       long k_max) {
    if (k_max < 1) throw std::invalid_argument("intersection_count_exact: k_max < 1");
    if (N > 10000)
        throw size_error("intersection_count_exact: N above the 1e4 exact budget");

    const double tail = intersection_tail(law, N);
    const double p = std::clamp(1.0 - tail, 0.0, 1.0);

    long k_cut = N;
    if (p < 1.0) {
        // smallest k with p^k <= 1e-9, so the lumped remainder is invisible
        const double need =
            (p > 0.0) ? std::ceil(std::log(1e-9) / std::log(p)) : 1.0;
        k_cut = std::min<long>(N, std::max<long>(k_max, static_cast<long>(need)));
    }

    IntersectionCountDistribution d;
    d.N = N;
    d.source = IntersectionCountDistribution::Source::exact_via_Q;
    d.escape_prob = tail;
    d.pmf.assign(static_cast<std::size_t>(k_cut) + 1, 0.0);
    double surv = 1.0;  // p^k
    for (long k = 0; k < k_cut; ++k) {
        d.pmf[k] = surv * (1.0 - p);
        surv *= p;
    }
    d.pmf[k_cut] = surv;  // remaining mass, exact for the capped count
    return d;
}

IntersectionCountDistribution intersection_count_simulated(const RenewalLaw& law,
                                                           long N, long samples,
                                                           std::uint64_t seed) {
    if (samples < 1000)
        throw std::invalid_argument("intersection_count_simulated: samples < 1000");
    if (N < 1) throw std::invalid_argument("intersection_count_simulated: N < 1");

    const RenewalSampler sampler(law);
    std::vector<long> histogram(1, 0);

    for (long s = 0; s < samples; ++s) {
        const std::uint64_t sa = rng::mix(seed, static_cast<std::uint64_t>(s), 1);
        const std::uint64_t sb = rng::mix(seed, static_cast<std::uint64_t>(s), 2);
        std::uint64_t ca = 0, cb = 0;
        long posa = 0, posb = 0, last = 0, count = 0;
        while (count < N) {
            if (posa <= posb)
                posa += sampler.draw(sa, ca++);
            else
                posb += sampler.draw(sb, cb++);
            if (posa == posb) {
                if (posa - last > N) break;
                last = posa;
                ++count;
            } else if (std::min(posa, posb) > last + N) {
                break;  // the next joint point, if any, is already too far
            }
        }
        if (count >= static_cast<long>(histogram.size()))
            histogram.resize(static_cast<std::size_t>(count) + 1, 0);
        ++histogram[count];
    }

    IntersectionCountDistribution d;
    d.N = N;
    d.source = IntersectionCountDistribution::Source::simulated;
    d.escape_prob = std::numeric_limits<double>::quiet_NaN();
    d.pmf.resize(histogram.size());
    for (std::size_t k = 0; k < histogram.size(); ++k)
        d.pmf[k] = static_cast<double>(histogram[k]) / static_cast<double>(samples);
    return d;
}

OverlapMoment overlap_moment(const RenewalLaw& law, double c, long N, MomentMode mode,
                             long budget, std::uint64_t seed) {
    OverlapMoment out;
    if (mode == MomentMode::exact) {
        const auto d = intersection_count_exact(law, N, 1);
        std::vector<double> terms(d.pmf.size());
        for (std::size_t k = 0; k < d.pmf.size(); ++k)
            terms[k] = (d.pmf[k] > 0.0)
                           ? c * static_cast<double>(k) + std::log(d.pmf[k])
                           : -std::numeric_limits<double>::infinity();
        out.value = std::exp(logsumexp(terms));
        // distribution is complete up to the cap; only the cap lump can hide
        // mass above k_max
        out.remainder_bound =
            (d.k_max() < N) ? std::exp(c * static_cast<double>(d.k_max())) *
                                  d.pmf[static_cast<std::size_t>(d.k_max())]
                            : 0.0;
        return out;
    }

    const auto d = intersection_count_simulated(law, N, budget, seed);
    double total = 0.0, biggest = 0.0;
    for (std::size_t k = 0; k < d.pmf.size(); ++k) {
        const double w = d.pmf[k] * std::exp(c * static_cast<double>(k));
        total += w;
        // share of one sample at count k
        const double single = std::exp(c * static_cast<double>(k)) /
                              static_cast<double>(budget);
        if (d.pmf[k] > 0.0) biggest = std::max(biggest, single);
    }
    out.value = total;
    out.max_weight_share = (total > 0.0) ? biggest / total : 0.0;
    return out;
}

namespace {

long pair_overlap(const std::vector<long>& a, const std::vector<long>& b) {
    long count = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j])
            ++i;
        else if (b[j] < a[i])
            ++j;
        else {
            if (a[i] > 0) ++count;  // sites 1..N only
            ++i;
            ++j;
        }
    }
    return count;
}

}  // namespace

Psi0Estimate estimate_psi0(const RenewalLaw& law, double delta, double lambda_beta_sq,
                           long N, long samples, std::uint64_t seed) {
    if (!(delta > 0.0)) throw std::invalid_argument("estimate_psi0: delta <= 0");
    if (samples < 2) throw std::invalid_argument("estimate_psi0: samples < 2");

    std::vector<double> logw(static_cast<std::size_t>(samples));
    for (long s = 0; s < samples; ++s) {
        const auto t1 = sample_polymer(law, delta, N,
                                       rng::mix(seed, static_cast<std::uint64_t>(s), 1));
        const auto t2 = sample_polymer(law, delta, N,
                                       rng::mix(seed, static_cast<std::uint64_t>(s), 2));
        logw[static_cast<std::size_t>(s)] =
            lambda_beta_sq * static_cast<double>(pair_overlap(t1, t2));
    }

    const double lse = logsumexp(logw);
    const double log_mean = lse - std::log(static_cast<double>(samples));
    double share = 0.0;
    for (double lw : logw) share = std::max(share, std::exp(lw - lse));

    Psi0Estimate est;
    est.samples = samples;
    est.max_weight_share = share;
    est.value = log_mean / (2.0 * static_cast<double>(N));

    if (lambda_beta_sq == 0.0) {
        est.value = 0.0;
        est.std_error = 0.0;
        return est;
    }
    if (share > 0.5)
        throw estimate_error("estimate_psi0: one pair dominates the weight");

    // delta method: Var(log mean) ~ Var(w) / (n mean(w)^2)
    double var_acc = 0.0;
    for (double lw : logw) {
        const double r = std::exp(lw - log_mean) - 1.0;
        var_acc += r * r;
    }
    const double var_rel = var_acc / static_cast<double>(samples - 1);
    est.std_error = std::sqrt(var_rel / static_cast<double>(samples)) /
                    (2.0 * static_cast<double>(N));
    return est;
}

double psi0_exact(const RenewalLaw& law, double delta, double lambda_beta_sq, long N) {
    if (!(delta > 0.0)) throw std::invalid_argument("psi0_exact: delta <= 0");
    if (N < 1 || N > 2000) throw size_error("psi0_exact: N outside [1, 2000]");

    // Tilted single-copy partition z(n) = Z(n) e^{-F n} so entries stay O(1).
    const double F = free_energy(law, delta).F;
    std::vector<double> rewards(static_cast<std::size_t>(N) + 1, delta);
    const auto logz = pinned_log_partition(law, rewards);
    std::vector<double> z(static_cast<std::size_t>(N) + 1, 0.0);
    for (long n = 0; n <= N; ++n) {
        const double lz = logz[static_cast<std::size_t>(n)];
        z[static_cast<std::size_t>(n)] =
            std::isfinite(lz) ? std::exp(lz - F * static_cast<double>(n)) : 0.0;
    }

    // P(n): pair weight of both copies pinned at n. D(n): same with no joint
    // renewal before n. W(n): pair weight with e^c per joint renewal.
    std::vector<double> P(static_cast<std::size_t>(N) + 1, 0.0);
    for (long n = 0; n <= N; ++n)
        P[static_cast<std::size_t>(n)] =
            z[static_cast<std::size_t>(n)] * z[static_cast<std::size_t>(n)];

    std::vector<double> D(static_cast<std::size_t>(N) + 1, 0.0);
    for (long n = 1; n <= N; ++n) {
        double acc = P[static_cast<std::size_t>(n)];
        for (long k = 1; k < n; ++k)
            acc -= D[static_cast<std::size_t>(k)] * P[static_cast<std::size_t>(n - k)];
        D[static_cast<std::size_t>(n)] = acc;
    }

    const double ec = std::exp(lambda_beta_sq);
    std::vector<double> W(static_cast<std::size_t>(N) + 1, 0.0);
    W[0] = 1.0;
    for (long n = 1; n <= N; ++n) {
        double acc = 0.0;
        for (long k = 1; k <= n; ++k)
            acc += D[static_cast<std::size_t>(k)] * W[static_cast<std::size_t>(n - k)];
        W[static_cast<std::size_t>(n)] = ec * acc;
    }

    if (!(P[static_cast<std::size_t>(N)] > 0.0))
        throw boundary_error("psi0_exact: endpoint unreachable");
    const double moment = W[static_cast<std::size_t>(N)] / P[static_cast<std::size_t>(N)];
    return std::log(moment) / (2.0 * static_cast<double>(N));
}

InterpolationCheck check_integrating_inequality(const RenewalLaw& law, double beta,
                                                double delta, long N,
                                                const DisorderBatch& batch,
                                                long samples, std::uint64_t seed,
                                                int workers) {
    InterpolationCheck chk;
    const auto gap = interpolation_gap(law, beta, delta, N, batch, workers);
    chk.minus_R = -gap.mean;
    chk.sigma_R = gap.std_error;

    if (beta == 0.0) {
        chk.pass = true;
        return chk;
    }

    const auto psi = estimate_psi0(law, delta, 2.0 * beta * beta, N, samples, seed);
    chk.psi = psi.value;
    chk.sigma_psi = psi.std_error;
    chk.max_weight_share = psi.max_weight_share;

    const double em1 = std::exp(1.0) - 1.0;
    const double sigma_comb = chk.sigma_R + em1 * chk.sigma_psi;
    chk.lower_margin = chk.minus_R + 3.0 * chk.sigma_R;
    chk.upper_margin = em1 * chk.psi + 3.0 * sigma_comb - chk.minus_R;
    chk.pass = chk.lower_margin >= 0.0 && chk.upper_margin >= 0.0;
    return chk;
}

}  // namespace pinlab
