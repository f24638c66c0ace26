#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "pinlab/homogeneous.hpp"
#include "pinlab/quenched.hpp"

using namespace pinlab;

namespace {

RenewalLaw half_half() {
    RenewalLaw law;
    law.alpha = 1.0;
    law.L = SlowlyVarying::constant(1.0);
    law.masses = {0.5, 0.5};
    law.tail_mass = 0.0;
    law.total_mass = 1.0;
    return law;
}

DisorderBatch batch(std::uint64_t seed, long N, long samples) {
    DisorderBatch b;
    b.master_seed = seed;
    b.N = N;
    b.num_samples = samples;
    return b;
}

}  // namespace

TEST_CASE("disorder variates are pure functions of their key") {
    const auto b = batch(99, 64, 4);
    CHECK(b.variate(2, 17) == b.variate(2, 17));
    CHECK(b.variate(2, 17) != b.variate(3, 17));
    CHECK(b.variate(2, 17) != b.variate(2, 18));
    const auto row = b.sample_row(2);
    REQUIRE(row.size() == 64);
    CHECK(row[16] == b.variate(2, 17));
}

TEST_CASE("disorder is standard Gaussian to within sampling error") {
    const auto b = batch(7, 1000, 200);
    double s = 0.0, s2 = 0.0;
    const double n = 1000.0 * 200.0;
    for (long i = 0; i < 200; ++i)
        for (long k = 1; k <= 1000; ++k) {
            const double x = b.variate(i, k);
            s += x;
            s2 += x * x;
        }
    const double mean = s / n;
    const double var = s2 / n - mean * mean;
    CHECK(std::abs(mean) < 4.0 / std::sqrt(n));
    CHECK(std::abs(var - 1.0) < 4.0 * std::sqrt(2.0 / n));
}

TEST_CASE("log partition matches hand enumeration at N = 2") {
    const auto law = half_half();
    const double beta = 0.3, h = 0.1;
    const std::vector<double> omega{0.7, -0.4};
    const double x1 = beta * omega[0] + h, x2 = beta * omega[1] + h;
    const double z = 0.5 * std::exp(x1) * 0.5 * std::exp(x2) + 0.5 * std::exp(x2);
    CHECK(log_partition(law, beta, h, omega) == doctest::Approx(std::log(z)).epsilon(1e-14));
}

TEST_CASE("zero disorder strength reduces to the deterministic value") {
    const auto law = half_half();
    const auto est = quenched_free_energy(law, 0.0, 0.25, 128, batch(3, 128, 10));
    CHECK(est.mean == doctest::Approx(finite_volume_free_energy(law, 0.25, 128))
                          .epsilon(1e-14));
    CHECK(est.std_error == 0.0);
}

TEST_CASE("worker count does not change the result") {
    const auto law = build_power_law(0.4, SlowlyVarying::constant(1.0), 256,
                                     TailPolicy::keep_tail);
    const auto a = quenched_free_energy(law, 0.2, 0.1, 256, batch(11, 256, 16), 1);
    const auto c = quenched_free_energy(law, 0.2, 0.1, 256, batch(11, 256, 16), 3);
    CHECK(a.mean == c.mean);
    CHECK(a.std_error == c.std_error);
}

TEST_CASE("annealed bound holds on a small grid") {
    const auto law = build_power_law(0.3, SlowlyVarying::constant(1.0), 256,
                                     TailPolicy::keep_tail);
    for (double beta : {0.1, 0.3})
        for (double h : {-0.1, 0.1}) {
            const auto q = quenched_free_energy(law, beta, h, 256, batch(5, 256, 50));
            const double ann =
                finite_volume_free_energy(law, h + 0.5 * beta * beta, 256);
            CHECK(q.mean <= ann + 3.0 * q.std_error);
        }
}

TEST_CASE("interpolation gap is nonpositive in expectation and zero at beta 0") {
    const auto law = build_power_law(0.3, SlowlyVarying::constant(1.0), 256,
                                     TailPolicy::keep_tail);
    const auto zero = interpolation_gap(law, 0.0, 0.2, 256, batch(9, 256, 10));
    CHECK(zero.mean == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));
    CHECK(zero.std_error == 0.0);

    const auto gap = interpolation_gap(law, 0.2, 0.2, 256, batch(9, 256, 50));
    CHECK(gap.mean <= 3.0 * gap.std_error);
    CHECK(gap.kind == EstimateKind::interpolation_gap);
}

TEST_CASE("contact fraction sits in (0, 1) and flags oversized steps") {
    const auto law = build_power_law(0.3, SlowlyVarying::constant(1.0), 128,
                                     TailPolicy::keep_tail);
    const auto cf = contact_fraction(law, 0.1, 0.3, 128, batch(21, 128, 40), 0.01);
    CHECK(cf.mean > 0.0);
    CHECK(cf.mean < 1.0);
    CHECK_FALSE(cf.step_warning);
    const auto wide = contact_fraction(law, 0.1, 0.3, 128, batch(21, 128, 4), 0.2);
    CHECK(wide.step_warning);
}

TEST_CASE("estimates are reproducible across calls") {
    const auto law = half_half();
    const auto a = quenched_free_energy(law, 0.5, 0.0, 512, batch(123, 512, 20));
    const auto b = quenched_free_energy(law, 0.5, 0.0, 512, batch(123, 512, 20));
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
}
