#include "pinlab/renewal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pinlab/rng.hpp"
#include "series.hpp"

namespace pinlab {

namespace {

// sum_{n > N} c / n^{1+alpha} via Euler-Maclaurin; relative error well below
// 1e-12 for N >= 100.
double power_tail_mass(double c, double alpha, double N) {
    const double s = 1.0 + alpha;
    const double f = c * std::pow(N, -s);
    const double fprime = -s * c * std::pow(N, -s - 1.0);
    return c * std::pow(N, -alpha) / alpha - 0.5 * f - fprime / 12.0;
}

constexpr double kDirectRecursionBudget = 2e8;  // madds before switching to FFT

std::vector<double> mass_function_direct(const RenewalLaw& law, long N) {
    std::vector<double> u(static_cast<size_t>(N) + 1, 0.0);
    u[0] = 1.0;
    const long nmax = law.n_max();
    for (long n = 1; n <= N; ++n) {
        const long m = std::min(n, nmax);
        double acc = 0.0;
        const double* K = law.masses.data();
        const double* up = u.data() + n;
        for (long k = 1; k <= m; ++k) acc += K[k - 1] * up[-k];
        u[static_cast<size_t>(n)] = acc;
    }
    return u;
}

std::vector<double> invert_renewal(const std::vector<double>& v, long N) {
    // Q with v(n) = sum_{k=1}^n Q(k) v(n-k), v[0] = 1.
    std::vector<double> q(static_cast<size_t>(N) + 1, 0.0);
    if (static_cast<double>(N) * N <= kDirectRecursionBudget) {
        for (long n = 1; n <= N; ++n) {
            double acc = v[static_cast<size_t>(n)];
            for (long k = 1; k < n; ++k)
                acc -= q[static_cast<size_t>(k)] * v[static_cast<size_t>(n - k)];
            q[static_cast<size_t>(n)] = acc;
        }
    } else {
        auto inv = series::inverse(v, static_cast<size_t>(N));
        for (long n = 1; n <= N; ++n) q[static_cast<size_t>(n)] = -inv[static_cast<size_t>(n)];
    }
    // Renewal inversion may leave tiny negatives from rounding; anything
    // larger than float noise means a logic error. The FFT path carries more
    // noise than the direct one.
    const double guard = (static_cast<double>(N) * N <= kDirectRecursionBudget) ? 1e-14 : 1e-12;
    for (long n = 1; n <= N; ++n) {
        double& x = q[static_cast<size_t>(n)];
        if (x < 0.0) {
            if (x < -guard)
                throw std::runtime_error("first_intersection_law: negative mass beyond rounding noise");
            x = 0.0;
        }
    }
    return q;
}

}  // namespace

double RenewalLaw::implied_L(long n) const {
    return mass(n) * std::pow(static_cast<double>(n), 1.0 + alpha);
}

RenewalLaw build_power_law(double alpha, const SlowlyVarying& L, long n_max,
                           TailPolicy policy) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("build_power_law: alpha must be > 0");
    if (n_max < 2)
        throw std::invalid_argument("build_power_law: n_max must be >= 2");
    if (policy == TailPolicy::keep_tail && !L.is_constant())
        throw std::invalid_argument(
            "build_power_law: keep_tail supports constant L only");

    RenewalLaw law;
    law.alpha = alpha;
    law.L = L;
    law.masses.resize(static_cast<size_t>(n_max));
    double partial = 0.0;
    for (long n = 1; n <= n_max; ++n) {
        const double k = L(static_cast<double>(n)) *
                         std::pow(static_cast<double>(n), -(1.0 + alpha));
        law.masses[static_cast<size_t>(n - 1)] = k;
        partial += k;
    }
    if (policy == TailPolicy::renormalize) {
        // Tail beyond n_max is the reported truncation bias (constant L only;
        // otherwise left at 0 as an unavailable diagnostic).
        double raw_tail = L.is_constant()
                              ? power_tail_mass(L.c, alpha, static_cast<double>(n_max))
                              : 0.0;
        for (auto& k : law.masses) k /= partial;
        law.tail_mass = 0.0;
        law.total_mass = 1.0;
        law.pre_normalization_tail = raw_tail / (partial + raw_tail);
    } else {
        const double tail = power_tail_mass(L.c, alpha, static_cast<double>(n_max));
        const double norm = partial + tail;
        for (auto& k : law.masses) k /= norm;
        law.tail_mass = tail / norm;
        law.total_mass = 1.0;
    }
    return law;
}

RenewalLaw build_srw_returns(SrwVariant variant, long n_max) {
    if (n_max < 2)
        throw std::invalid_argument("build_srw_returns: n_max must be >= 2");

    RenewalLaw law;
    law.alpha = 0.5;
    law.L = SlowlyVarying::constant(1.0 / (2.0 * std::sqrt(M_PI)));

    if (variant == SrwVariant::d1_recurrent) {
        // K(n) = binom(2n, n) / ((2n-1) 4^n); ratio recursion avoids overflow.
        law.masses.resize(static_cast<size_t>(n_max));
        double k = 0.5;  // K(1)
        double partial = 0.0;
        for (long n = 1; n <= n_max; ++n) {
            law.masses[static_cast<size_t>(n - 1)] = k;
            partial += k;
            k *= static_cast<double>(2 * n - 1) / static_cast<double>(2 * (n + 1));
        }
        // P(no return by 2N) = binom(2N, N) 4^{-N}; log-space for large N.
        const double logp = std::lgamma(2.0 * n_max + 1.0) - 2.0 * std::lgamma(n_max + 1.0) -
                            2.0 * n_max * std::log(2.0);
        law.tail_mass = std::exp(logp);
        law.total_mass = partial + law.tail_mass;
        return law;
    }

    // d3: return mass function of SRW on Z^3 at times 2n, then the renewal
    // inversion yields the (defective) first-return law.
    std::vector<double> u(static_cast<size_t>(n_max) + 1, 0.0);
    u[0] = 1.0;
    std::vector<double> lf(static_cast<size_t>(2 * n_max) + 1);
    for (size_t i = 0; i < lf.size(); ++i) lf[i] = std::lgamma(static_cast<double>(i) + 1.0);
    for (long n = 1; n <= n_max; ++n) {
        // P(S_2n = 0) = 6^{-2n} sum_{a+b+c=n} (2n)! / (a! a! b! b! c! c!)
        //             = 6^{-2n} binom(2n,n) sum_a binom(n,a)^2 binom(2(n-a), n-a)
        const double base = lf[static_cast<size_t>(2 * n)] - 2.0 * lf[static_cast<size_t>(n)] -
                            2.0 * n * std::log(6.0);
        double acc = 0.0;
        for (long a = 0; a <= n; ++a) {
            const long m = n - a;
            const double lt = 2.0 * (lf[static_cast<size_t>(n)] - lf[static_cast<size_t>(a)] -
                                     lf[static_cast<size_t>(m)]) +
                              lf[static_cast<size_t>(2 * m)] - 2.0 * lf[static_cast<size_t>(m)];
            acc += std::exp(base + lt);
        }
        u[static_cast<size_t>(n)] = acc;
    }
    auto q = invert_renewal(u, n_max);
    law.masses.assign(q.begin() + 1, q.end());
    law.L = SlowlyVarying::constant(
        std::max(1e-300, q[static_cast<size_t>(n_max)] *
                             std::pow(static_cast<double>(n_max), 1.5)));
    law.tail_mass = 0.0;
    law.total_mass = std::accumulate(law.masses.begin(), law.masses.end(), 0.0);
    return law;
}

std::pair<RenewalLaw, double> recurrent_reduction(const RenewalLaw& law) {
    if (!(law.total_mass > 0.0))
        throw std::domain_error("recurrent_reduction: degenerate law with zero mass");
    if (law.total_mass > 1.0 + 1e-12)
        throw std::domain_error("recurrent_reduction: total mass exceeds 1");
    RenewalLaw out = law;
    const double sigma = law.total_mass;
    for (auto& k : out.masses) k /= sigma;
    out.tail_mass /= sigma;
    out.total_mass = 1.0;
    return {std::move(out), std::log(sigma)};
}

std::vector<double> mass_function(const RenewalLaw& law, long N) {
    if (N < 1) throw std::invalid_argument("mass_function: N must be >= 1");
    const long m = std::min(N, law.n_max());
    if (static_cast<double>(N) * m <= kDirectRecursionBudget)
        return mass_function_direct(law, N);
    std::vector<double> a(static_cast<size_t>(N) + 1, 0.0);
    a[0] = 1.0;
    for (long n = 1; n <= m; ++n) a[static_cast<size_t>(n)] = -law.mass(n);
    return series::inverse(a, static_cast<size_t>(N));
}

std::vector<double> first_intersection_law(const RenewalLaw& law, long N) {
    if (N < 1) throw std::invalid_argument("first_intersection_law: N must be >= 1");
    auto u = mass_function(law, N);
    for (auto& x : u) x *= x;
    return invert_renewal(u, N);
}

double intersection_tail(const RenewalLaw& law, long N) {
    auto q = first_intersection_law(law, N);
    double s = 0.0;
    for (long n = N; n >= 1; --n) s += q[static_cast<size_t>(n)];
    return 1.0 - s;
}

double marginal_ell(const RenewalLaw& law, long N) {
    if (law.alpha != 0.5)
        throw std::domain_error("marginal_ell: defined for alpha = 1/2 only");
    if (N < 1) throw std::invalid_argument("marginal_ell: N must be >= 1");
    const long direct = std::min<long>(N, 10'000'000);
    double s = 0.0;
    for (long n = direct; n >= 1; --n) {
        const double l = law.L(static_cast<double>(n));
        s += 1.0 / (static_cast<double>(n) * l * l);
    }
    if (N > direct) {
        // integral remainder of 1/(x L(x)^2); closed form for both kinds
        const double a = static_cast<double>(direct), b = static_cast<double>(N);
        if (law.L.is_constant()) {
            s += std::log(b / a) / (law.L.c * law.L.c);
        } else {
            // substitute t = log(x + offset): integrand dt / t^{2p}
            const double p2 = 2.0 * law.L.exponent;
            const double ta = std::log(a + law.L.offset), tb = std::log(b + law.L.offset);
            if (std::abs(p2 - 1.0) < 1e-12)
                s += std::log(tb / ta);
            else
                s += (std::pow(tb, 1.0 - p2) - std::pow(ta, 1.0 - p2)) / (1.0 - p2);
        }
    }
    return s;
}

RenewalSampler::RenewalSampler(const RenewalLaw& law) {
    cdf_.resize(law.masses.size());
    double acc = 0.0;
    for (size_t i = 0; i < law.masses.size(); ++i) {
        acc += law.masses[i];
        cdf_[i] = acc;
    }
}

long RenewalSampler::draw(std::uint64_t seed, std::uint64_t counter) const {
    const double u = rng::uniform(seed, counter, 0x72656e6577616cULL);
    auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) return static_cast<long>(cdf_.size()) + 1;  // tail / missing mass
    return static_cast<long>(it - cdf_.begin()) + 1;
}

std::vector<long> sample_renewal(const RenewalLaw& law, long N, std::uint64_t seed) {
    if (N < 1) throw std::invalid_argument("sample_renewal: N must be >= 1");
    RenewalSampler sampler(law);
    std::vector<long> points{0};
    long pos = 0;
    std::uint64_t counter = 0;
    while (pos < N) {
        const long gap = sampler.draw(seed, counter++);
        pos += gap;
        if (gap > sampler.n_max() || pos > N) break;
        points.push_back(pos);
    }
    return points;
}

}  // namespace pinlab
