#include "pinlab/homogeneous.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pinlab/rng.hpp"

namespace pinlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Where to cut sum_n n^j e^{-F n} K(n): terms beyond are below
// 1e-18 * leading order since K <= 1.
long series_cutoff(double F, long n_max) {
    if (F <= 0.0) return n_max;
    const double span = 60.0 / F;
    if (span >= static_cast<double>(n_max)) return n_max;
    return static_cast<long>(span) + 1;
}

// sum e^{-F n} K(n) and its first two weighted moments.
struct Moments {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0;
    long terms = 0;
};

Moments weighted_moments(const RenewalLaw& law, double F, bool need_higher) {
    Moments m;
    m.terms = series_cutoff(F, law.n_max());
    for (long n = m.terms; n >= 1; --n) {  // ascending magnitude, better summation
        const double w = std::exp(-F * n) * law.mass(n);
        m.s0 += w;
        if (need_higher) {
            m.s1 += n * w;
            m.s2 += static_cast<double>(n) * n * w;
        }
    }
    return m;
}

double partition_sum(const RenewalLaw& law, double F) {
    return weighted_moments(law, F, false).s0;
}

}  // namespace

HomogeneousSolution free_energy(const RenewalLaw& law, double delta) {
    if (!law.recurrent())
        throw std::domain_error(
            "free_energy: law is not recurrent; apply recurrent_reduction first");
    HomogeneousSolution sol;
    sol.delta = delta;
    if (delta <= 0.0) {
        sol.residual = 0.0;
        sol.series_terms = law.n_max();
        return sol;
    }

    const double target = std::exp(-delta);
    // partition_sum is strictly decreasing in F with value total_mass - tail
    // at F = 0, so [0, hi] brackets once the sign flips.
    double lo = 0.0, hi = delta + 1.0;
    while (partition_sum(law, hi) > target) hi *= 2.0;

    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (partition_sum(law, mid) > target)
            lo = mid;
        else
            hi = mid;
    }
    double F = 0.5 * (lo + hi);

    // Newton polish using the same pass for value and derivative.
    for (int it = 0; it < 6; ++it) {
        const Moments m = weighted_moments(law, F, true);
        const double r = m.s0 - target;
        if (std::abs(r) <= 1e-15 * target) break;
        const double step = r / m.s1;  // d/dF sum = -s1
        double next = F + step;
        if (next < lo || next > hi) break;
        F = next;
    }

    const Moments m = weighted_moments(law, F, true);
    sol.F = F;
    sol.residual = std::abs(m.s0 - target) +
                   law.tail_mass * std::exp(-F * law.n_max());
    sol.series_terms = m.terms;
    sol.dF = target / m.s1;
    sol.d2F = sol.dF * (m.s2 * sol.dF - m.s1) / m.s1;
    return sol;
}

std::pair<double, double> free_energy_derivatives(const RenewalLaw& law, double delta) {
    if (!(delta > 0.0))
        throw std::domain_error(
            "free_energy_derivatives: delta must be > 0 (critical singularity at 0)");
    const HomogeneousSolution sol = free_energy(law, delta);
    return {sol.dF, sol.d2F};
}

namespace {

// kept out of line so the hot convolution loop below stays free of stores
// that would defeat the vectorizer's alias analysis
[[gnu::noinline]] void rescale_down(double* w, long n, double* shift) {
    for (long i = 0; i <= n; ++i) w[i] *= 0x1p-900;
    *shift += 900.0 * M_LN2;
}

[[gnu::noinline]] void rescale_up(double* w, long n, long nmax, double* shift) {
    // only rescale up if the whole reachable window has decayed
    double wmax = 0.0;
    const long lo = n > nmax ? n - nmax : 0;
    for (long i = lo; i <= n; ++i) wmax = std::max(wmax, w[i]);
    if (wmax < 0x1p-900 && wmax > 0.0) {
        for (long i = 0; i <= n; ++i) w[i] *= 0x1p900;
        *shift -= 900.0 * M_LN2;
    }
}

}  // namespace

std::vector<double> pinned_log_partition(const RenewalLaw& law,
                                         const std::vector<double>& rewards) {
    const long N = static_cast<long>(rewards.size());
    if (N < 1) throw std::invalid_argument("pinned_log_partition: empty reward vector");
    const long nmax = law.n_max();

    // w(n) = Z(n) * e^{-shift}; the shift is bumped whenever w leaves the
    // comfortable double range, keeping every stored value on a common scale.
    std::vector<double> w(static_cast<size_t>(N) + 1, 0.0);
    std::vector<double> logz(static_cast<size_t>(N) + 1, -kInf);
    w[0] = 1.0;
    logz[0] = 0.0;
    double shift = 0.0;

    // forward-forward dot product against a reversed mass vector vectorizes,
    // the natural w[n-k] access pattern does not
    std::vector<double> krev(static_cast<size_t>(nmax));
    for (long i = 0; i < nmax; ++i)
        krev[static_cast<size_t>(i)] = law.masses[static_cast<size_t>(nmax - 1 - i)];

    for (long n = 1; n <= N; ++n) {
        const long m = std::min(n, nmax);
        const double* wbase = w.data() + (n - m);
        const double* kbase = krev.data() + (nmax - m);
        double acc = 0.0;
#pragma omp simd reduction(+ : acc)
        for (long t = 0; t < m; ++t) acc += wbase[t] * kbase[t];
        acc *= std::exp(rewards[static_cast<size_t>(n - 1)]);
        w[static_cast<size_t>(n)] = acc;
        if (acc > 0.0) logz[static_cast<size_t>(n)] = std::log(acc) + shift;

        if (acc > 0x1p900)
            rescale_down(w.data(), n, &shift);
        else if (acc != 0.0 && acc < 0x1p-900)
            rescale_up(w.data(), n, nmax, &shift);
    }
    return logz;
}

double finite_volume_free_energy(const RenewalLaw& law, double delta, long N) {
    if (N < 1) throw std::invalid_argument("finite_volume_free_energy: N must be >= 1");
    std::vector<double> rewards(static_cast<size_t>(N), delta);
    const auto logz = pinned_log_partition(law, rewards);
    const double lz = logz[static_cast<size_t>(N)];
    if (!std::isfinite(lz))
        throw boundary_error("finite_volume_free_energy: N unreachable under the law");
    return lz / static_cast<double>(N);
}

std::vector<long> sample_polymer(const RenewalLaw& law, double delta, long N,
                                 std::uint64_t seed) {
    if (N < 1) throw std::invalid_argument("sample_polymer: N must be >= 1");
    std::vector<double> rewards(static_cast<size_t>(N), delta);
    const auto logz = pinned_log_partition(law, rewards);
    if (!std::isfinite(logz[static_cast<size_t>(N)]))
        throw boundary_error("sample_polymer: N unreachable under the law");

    std::vector<long> points{N};
    long pos = N;
    std::uint64_t counter = 0;
    while (pos > 0) {
        const double u = rng::uniform(seed, counter++, 0x706f6c796d6572ULL);
        const long m = std::min(pos, law.n_max());
        const double lzpos = logz[static_cast<size_t>(pos)];
        double acc = 0.0;
        long chosen = 0;
        for (long k = 1; k <= m; ++k) {
            const double lz = logz[static_cast<size_t>(pos - k)];
            if (lz == -kInf) continue;
            const double p = law.mass(k) * std::exp(delta + lz - lzpos);
            acc += p;
            chosen = k;
            if (acc >= u) break;
        }
        // float residue can leave acc slightly under u at the last feasible k
        pos -= chosen;
        points.push_back(pos);
    }
    std::reverse(points.begin(), points.end());
    return points;
}

}  // namespace pinlab
