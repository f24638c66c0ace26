#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "pinlab/replica.hpp"

using namespace pinlab;

namespace {

RenewalLaw power(double alpha, long n_max) {
    return build_power_law(alpha, SlowlyVarying::constant(1.0), n_max,
                           TailPolicy::keep_tail);
}

RenewalLaw single_gap() {
    RenewalLaw law;
    law.alpha = 1.0;
    law.L = SlowlyVarying::constant(1.0);
    law.masses = {1.0};
    law.tail_mass = 0.0;
    law.total_mass = 1.0;
    return law;
}

RenewalLaw half_half() {
    RenewalLaw law;
    law.alpha = 1.0;
    law.L = SlowlyVarying::constant(1.0);
    law.masses = {0.5, 0.5};
    law.tail_mass = 0.0;
    law.total_mass = 1.0;
    return law;
}

// pair moment by explicit enumeration of both renewal paths
double brute_pair_moment(const RenewalLaw& law, double delta, double c, long N) {
    std::vector<std::vector<long>> paths;
    std::vector<long> cur{0};
    // depth-first over gap sequences
    struct Rec {
        const RenewalLaw& law;
        long N;
        std::vector<std::vector<long>>& out;
        void go(std::vector<long>& path) {
            const long pos = path.back();
            if (pos == N) {
                out.push_back(path);
                return;
            }
            for (long k = 1; k <= std::min<long>(law.n_max(), N - pos); ++k) {
                path.push_back(pos + k);
                go(path);
                path.pop_back();
            }
        }
    } rec{law, N, paths};
    rec.go(cur);

    auto weight = [&](const std::vector<long>& p) {
        double w = 1.0;
        for (size_t i = 1; i < p.size(); ++i)
            w *= law.mass(p[i] - p[i - 1]) * std::exp(delta);
        return w;
    };
    double num = 0.0, den = 0.0;
    for (const auto& a : paths)
        for (const auto& b : paths) {
            long overlap = 0;
            size_t i = 1, j = 1;
            while (i < a.size() && j < b.size()) {
                if (a[i] < b[j])
                    ++i;
                else if (b[j] < a[i])
                    ++j;
                else {
                    ++overlap;
                    ++i;
                    ++j;
                }
            }
            const double w = weight(a) * weight(b);
            den += w;
            num += w * std::exp(c * static_cast<double>(overlap));
        }
    return num / den;
}

}  // namespace

TEST_CASE("exact count distribution is geometric in the escape probability") {
    const auto law = build_srw_returns(SrwVariant::d1_recurrent, 64);
    const auto d = intersection_count_exact(law, 2, 5);
    CHECK(d.survival(1) == doctest::Approx(21.0 / 64.0).epsilon(1e-14));
    CHECK(d.survival(2) == doctest::Approx(std::pow(21.0 / 64.0, 2)).epsilon(1e-12));
    double total = 0.0;
    for (double p : d.pmf) total += p;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("survival is log-convex decreasing for the exact source") {
    const auto law = power(0.7, 2000);
    const auto d = intersection_count_exact(law, 1000, 10);
    for (long k = 1; k + 1 <= d.k_max(); ++k) {
        CHECK(d.survival(k) <= d.survival(k - 1) + 1e-15);
        CHECK(d.survival(k) * d.survival(k) <=
              d.survival(k - 1) * d.survival(k + 1) * (1.0 + 1e-9));
    }
}

TEST_CASE("every-site renewal degenerates at the cap") {
    const auto law = single_gap();
    const long N = 20;
    const auto d = intersection_count_exact(law, N, 3);
    CHECK(d.k_max() == N);
    CHECK(d.pmf[static_cast<size_t>(N)] == doctest::Approx(1.0).epsilon(1e-12));
    const auto sim = intersection_count_simulated(law, N, 1000, 1);
    CHECK(sim.pmf.back() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sim.k_max() == N);
}

TEST_CASE("simulated counts match the exact law within 3 sigma") {
    const auto law = power(0.3, 100000);
    const long N = 1000, samples = 5000;
    const auto ex = intersection_count_exact(law, N, 5);
    const auto sim = intersection_count_simulated(law, N, samples, 42);
    for (long k = 1; k <= 5; ++k) {
        const double p = ex.survival(k);
        const double se = std::sqrt(p * (1.0 - p) / samples);
        CHECK(std::abs(sim.survival(k) - p) < 3.0 * se);
    }
}

TEST_CASE("overlap moment is one at c = 0 and log-convex in c") {
    const auto law = power(0.3, 10000);
    const auto m0 = overlap_moment(law, 0.0, 1000, MomentMode::exact, 0, 0);
    CHECK(m0.value == doctest::Approx(1.0).epsilon(1e-12));
    const double a = std::log(overlap_moment(law, 0.02, 1000, MomentMode::exact, 0, 0).value);
    const double b = std::log(overlap_moment(law, 0.05, 1000, MomentMode::exact, 0, 0).value);
    const double c = std::log(overlap_moment(law, 0.08, 1000, MomentMode::exact, 0, 0).value);
    CHECK(2.0 * b <= a + c + 1e-12);
    CHECK(a > 0.0);
}

TEST_CASE("overlap moment saturates in N only for transient intersections") {
    const auto law3 = power(0.3, 10000);
    const double v1 = overlap_moment(law3, 0.05, 1000, MomentMode::exact, 0, 0).value;
    const double v2 = overlap_moment(law3, 0.05, 10000, MomentMode::exact, 0, 0).value;
    CHECK(std::abs(v2 - v1) / v1 < 0.01);

    const auto law7 = power(0.7, 10000);
    const double w1 = overlap_moment(law7, 0.05, 1000, MomentMode::exact, 0, 0).value;
    const double w2 = overlap_moment(law7, 0.05, 10000, MomentMode::exact, 0, 0).value;
    CHECK(w2 > 2.0 * w1);
}

TEST_CASE("exact pair moment matches brute-force enumeration") {
    const auto law = half_half();
    for (double c : {0.0, 0.1, 0.5})
        CHECK(psi0_exact(law, 0.4, c, 6) ==
              doctest::Approx(std::log(brute_pair_moment(law, 0.4, c, 6)) / 12.0)
                  .epsilon(1e-12));
}

TEST_CASE("pair moment trivial cases") {
    const auto law = power(0.5, 200);
    CHECK(estimate_psi0(law, 0.3, 0.0, 100, 50, 1).value == 0.0);
    const auto sure = single_gap();
    // overlap is N surely, so the estimate is lambda beta^2 / 2 exactly
    const auto est = estimate_psi0(sure, 0.3, 0.04, 50, 20, 1);
    CHECK(est.value == doctest::Approx(0.02).epsilon(1e-12));
    CHECK(psi0_exact(sure, 0.3, 0.04, 50) == doctest::Approx(0.02).epsilon(1e-12));
}

TEST_CASE("sampled pair moment agrees with the exact oracle") {
    const auto law = power(0.5, 200);
    const double exact = psi0_exact(law, 0.3, 0.05, 100);
    const auto est = estimate_psi0(law, 0.3, 0.05, 100, 3000, 9);
    CHECK(std::abs(est.value - exact) <= 3.0 * est.std_error);
    CHECK(est.max_weight_share < 0.5);
}

TEST_CASE("pair moment is monotone and convex in lambda") {
    const auto law = power(0.5, 200);
    const double p0 = psi0_exact(law, 0.3, 0.00, 120);
    const double p1 = psi0_exact(law, 0.3, 0.03, 120);
    const double p2 = psi0_exact(law, 0.3, 0.06, 120);
    const double p3 = psi0_exact(law, 0.3, 0.09, 120);
    CHECK(p0 == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
    CHECK(p1 > p0);
    CHECK(p2 > p1);
    CHECK(p3 - p2 >= p2 - p1 - 1e-12);
}

TEST_CASE("degenerate weights are refused rather than averaged") {
    const auto law = power(0.5, 200);
    CHECK_THROWS_AS(estimate_psi0(law, 0.3, 6.0, 100, 200, 3), estimate_error);
}

TEST_CASE("oracle size guard") {
    const auto law = power(0.5, 200);
    CHECK_THROWS_AS(psi0_exact(law, 0.3, 0.05, 4000), size_error);
    CHECK_THROWS_AS(intersection_count_exact(law, 20000, 3), size_error);
}

TEST_CASE("interpolation inequality at beta 0 passes with zero margins") {
    const auto law = power(0.3, 256);
    DisorderBatch b;
    b.master_seed = 4;
    b.N = 256;
    b.num_samples = 10;
    const auto chk = check_integrating_inequality(law, 0.0, 0.2, 256, b, 100, 5);
    CHECK(chk.pass);
    CHECK(chk.minus_R == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));
    CHECK(chk.sigma_R == 0.0);
}

TEST_CASE("interpolation inequality holds at a small disordered point") {
    const auto law = power(0.3, 512);
    DisorderBatch b;
    b.master_seed = 8;
    b.N = 512;
    b.num_samples = 100;
    const auto chk = check_integrating_inequality(law, 0.1, 0.2, 512, b, 300, 5);
    CHECK(chk.pass);
    CHECK(chk.max_weight_share < 0.5);
    CHECK(chk.psi >= 0.0);
}
