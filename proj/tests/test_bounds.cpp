#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "pinlab/bounds.hpp"
#include "pinlab/homogeneous.hpp"

using namespace pinlab;

namespace {

RenewalLaw power(double alpha, long n_max = 4096) {
    return build_power_law(alpha, SlowlyVarying::constant(1.0), n_max,
                           TailPolicy::keep_tail);
}

DisorderBatch batch(std::uint64_t seed, long N, long samples) {
    DisorderBatch b;
    b.master_seed = seed;
    b.N = N;
    b.num_samples = samples;
    return b;
}

}  // namespace

TEST_CASE("annealed critical point is the Gaussian shift for recurrent laws") {
    const auto law = power(0.3);
    CHECK(annealed_critical_point(law, 0.4) == doctest::Approx(-0.08).epsilon(1e-12));
    CHECK(annealed_critical_point(law, 0.0) == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("variational bound sits between expansion and annealed value") {
    const auto law = power(0.3);
    const double delta = 0.2;
    const double F = free_energy(law, delta).F;
    for (double beta : {0.05, 0.2, 0.5}) {
        const auto rs = rs_upper_bound(law, beta, delta);
        CHECK(rs.value < F);
        CHECK(rs.value >= small_beta_expansion(law, beta, delta) - 1e-12);
        CHECK(rs.q_star >= 0.0);
        CHECK(rs.q_star <= delta / (beta * beta) + 1e-12);
    }
}

TEST_CASE("minimizer approaches the contact density as beta shrinks") {
    const auto law = power(0.3);
    const auto sol = free_energy(law, 0.2);
    const auto rs = rs_upper_bound(law, 0.02, 0.2);
    CHECK(rs.q_star == doctest::Approx(sol.dF).epsilon(1e-2));
}

TEST_CASE("expansion requires the transient-overlap regime") {
    CHECK_THROWS_AS(small_beta_expansion(power(0.5), 0.1, 0.2), std::domain_error);
    CHECK_THROWS_AS(small_beta_expansion(power(0.7), 0.1, 0.2), std::domain_error);
    CHECK(std::isfinite(small_beta_expansion(power(0.3), 0.1, 0.2)));
}

TEST_CASE("region gate by alpha regime") {
    const auto low = theorem_region(power(0.3), 0.1, 0.2, {});
    CHECK(low.applicable);
    CHECK(low.satisfied);

    const auto high_small = theorem_region(power(0.7), 0.01, 0.3, {});
    CHECK(high_small.applicable);
    CHECK(high_small.satisfied);
    const auto high_large = theorem_region(power(0.7), 10.0, 0.3, {});
    CHECK(high_large.applicable);
    CHECK_FALSE(high_large.satisfied);
    CHECK(high_small.rhs == doctest::Approx(high_large.rhs).epsilon(1e-12));

    const auto marginal = theorem_region(power(0.5), 0.05, 0.3, {});
    CHECK(marginal.applicable);
    CHECK(marginal.lhs > 0.0);

    const auto none = theorem_region(power(1.5), 0.1, 0.3, {});
    CHECK_FALSE(none.applicable);
}

TEST_CASE("region condition has a delta threshold at fixed beta") {
    const auto law = power(0.7);
    const double beta = 0.3;
    const double d0 = region_threshold_delta(law, beta, {});
    CHECK(theorem_region(law, beta, d0 * 1.05, {}).satisfied);
    CHECK_FALSE(theorem_region(law, beta, d0 * 0.5, {}).satisfied);
}

TEST_CASE("bound report verdict chain on a benign configuration") {
    const auto law = power(0.3, 512);
    const auto rep = bound_report(law, 0.05, 0.2, 512, batch(17, 512, 50), {}, 0.5);
    REQUIRE(rep.verdicts.size() == 4);
    CHECK(rep.all_pass());
    CHECK(rep.rs_bound < rep.annealed_limit);
    CHECK(rep.quenched.mean <= rep.annealed_finite + 3.0 * rep.quenched.std_error);
    CHECK(rep.region.applicable);
    CHECK(std::isfinite(rep.expansion));
    for (const auto& v : rep.verdicts) CHECK(v.margin == doctest::Approx(v.rhs - v.lhs));
}

TEST_CASE("beta 0 report degenerates to the homogeneous values") {
    const auto law = power(0.3, 512);
    const auto rep = bound_report(law, 0.0, 0.2, 512, batch(17, 512, 5), {}, 0.5);
    CHECK(rep.rs_bound == doctest::Approx(rep.annealed_limit));
    CHECK(rep.quenched.std_error == 0.0);
    CHECK(rep.quenched.mean == doctest::Approx(rep.annealed_finite).epsilon(1e-12));
}
