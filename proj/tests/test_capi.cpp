#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstring>
#include <vector>

#include "doctest.h"
#include "pinlab/pinlab.h"

namespace {

struct LawGuard {
    pinlab_law* h = nullptr;
    ~LawGuard() { pinlab_law_free(h); }
};

}  // namespace

TEST_CASE("null pointers are parameter errors with a message") {
    CHECK(pinlab_law_power(0.3, PINLAB_SV_CONSTANT, 1.0, 0.0, 0.0, 100,
                           PINLAB_TAIL_KEEP, nullptr) == PINLAB_ERR_PARAM);
    CHECK(std::strlen(pinlab_last_error()) > 0);
    double out = 0.0;
    CHECK(pinlab_free_energy(nullptr, 0.1, nullptr) == PINLAB_ERR_PARAM);
    CHECK(pinlab_intersection_tail(nullptr, 10, &out) == PINLAB_ERR_PARAM);
}

TEST_CASE("invalid construction parameters map to PARAM") {
    pinlab_law* law = nullptr;
    CHECK(pinlab_law_power(-1.0, PINLAB_SV_CONSTANT, 1.0, 0.0, 0.0, 100,
                           PINLAB_TAIL_KEEP, &law) == PINLAB_ERR_PARAM);
    CHECK(law == nullptr);
    CHECK(pinlab_law_explicit(1.0, nullptr, 2, &law) == PINLAB_ERR_PARAM);
    const double negative[] = {0.5, -0.5};
    CHECK(pinlab_law_explicit(1.0, negative, 2, &law) == PINLAB_ERR_PARAM);
}

TEST_CASE("law accessors round-trip") {
    LawGuard g;
    REQUIRE(pinlab_law_power(0.3, PINLAB_SV_CONSTANT, 1.0, 0.0, 0.0, 1000,
                             PINLAB_TAIL_KEEP, &g.h) == PINLAB_OK);
    double alpha = 0.0, total = 0.0, tail = 0.0, k1 = 0.0;
    long n_max = 0;
    int rec = 0;
    CHECK(pinlab_law_alpha(g.h, &alpha) == PINLAB_OK);
    CHECK(alpha == doctest::Approx(0.3));
    CHECK(pinlab_law_n_max(g.h, &n_max) == PINLAB_OK);
    CHECK(n_max == 1000);
    CHECK(pinlab_law_total_mass(g.h, &total) == PINLAB_OK);
    CHECK(total == doctest::Approx(1.0));
    CHECK(pinlab_law_tail_mass(g.h, &tail) == PINLAB_OK);
    CHECK(tail > 0.0);
    CHECK(pinlab_law_recurrent(g.h, &rec) == PINLAB_OK);
    CHECK(rec == 1);
    CHECK(pinlab_law_mass(g.h, 1, &k1) == PINLAB_OK);
    CHECK(k1 > 0.0);
}

TEST_CASE("domain violations map to DOMAIN") {
    LawGuard g;
    REQUIRE(pinlab_law_srw(PINLAB_SRW_D3_TRANSIENT, 200, &g.h) == PINLAB_OK);
    pinlab_homog sol{};
    CHECK(pinlab_free_energy(g.h, 0.2, &sol) == PINLAB_ERR_DOMAIN);

    LawGuard r;
    double shift = 0.0;
    CHECK(pinlab_recurrent_reduction(g.h, &r.h, &shift) == PINLAB_OK);
    CHECK(shift < 0.0);
    CHECK(pinlab_free_energy(r.h, 0.2, &sol) == PINLAB_OK);
    CHECK(sol.F > 0.0);
}

TEST_CASE("size guards map to SIZE") {
    LawGuard g;
    REQUIRE(pinlab_law_power(0.5, PINLAB_SV_CONSTANT, 1.0, 0.0, 0.0, 200,
                             PINLAB_TAIL_KEEP, &g.h) == PINLAB_OK);
    double v = 0.0;
    CHECK(pinlab_psi0_exact(g.h, 0.3, 0.05, 100000, &v) == PINLAB_ERR_SIZE);
    CHECK(pinlab_intersection_survival_exact(g.h, 100000, 2, &v) == PINLAB_ERR_SIZE);
}

TEST_CASE("degenerate estimator maps to ESTIMATE") {
    LawGuard g;
    REQUIRE(pinlab_law_power(0.5, PINLAB_SV_CONSTANT, 1.0, 0.0, 0.0, 200,
                             PINLAB_TAIL_KEEP, &g.h) == PINLAB_OK);
    double v = 0.0, se = 0.0, share = 0.0;
    CHECK(pinlab_estimate_psi0(g.h, 0.3, 6.0, 100, 200, 3, &v, &se, &share) ==
          PINLAB_ERR_ESTIMATE);
}

TEST_CASE("explicit law free energy matches the closed form") {
    LawGuard g;
    const double masses[] = {0.5, 0.5};
    REQUIRE(pinlab_law_explicit(1.0, masses, 2, &g.h) == PINLAB_OK);
    pinlab_homog sol{};
    REQUIRE(pinlab_free_energy(g.h, std::log(2.0), &sol) == PINLAB_OK);
    CHECK(sol.F == doctest::Approx(-std::log((std::sqrt(5.0) - 1.0) / 2.0))
                       .epsilon(1e-12));
}

TEST_CASE("quenched estimate through the C layer is deterministic") {
    LawGuard g;
    REQUIRE(pinlab_law_power(0.3, PINLAB_SV_CONSTANT, 1.0, 0.0, 0.0, 256,
                             PINLAB_TAIL_KEEP, &g.h) == PINLAB_OK);
    pinlab_estimate a{}, b{};
    REQUIRE(pinlab_quenched_free_energy(g.h, 0.2, 0.1, 256, 7, 20, 1, &a) == PINLAB_OK);
    REQUIRE(pinlab_quenched_free_energy(g.h, 0.2, 0.1, 256, 7, 20, 2, &b) == PINLAB_OK);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
    CHECK(a.num_samples == 20);
}

TEST_CASE("bound report populates the verdict chain") {
    LawGuard g;
    REQUIRE(pinlab_law_power(0.3, PINLAB_SV_CONSTANT, 1.0, 0.0, 0.0, 512,
                             PINLAB_TAIL_KEEP, &g.h) == PINLAB_OK);
    pinlab_bound_report rep{};
    REQUIRE(pinlab_make_bound_report(g.h, 0.05, 0.2, 512, 17, 50, 1.0, 1.0, 0.1, 0.5,
                                     1, &rep) == PINLAB_OK);
    CHECK(rep.num_verdicts == 4);
    CHECK(rep.all_pass == 1);
    CHECK(rep.rs_bound < rep.annealed_limit);
    CHECK(std::strlen(rep.verdicts[0].name) > 0);
    CHECK(rep.region.applicable == 1);
}

TEST_CASE("interpolation check through the C layer") {
    LawGuard g;
    REQUIRE(pinlab_law_power(0.3, PINLAB_SV_CONSTANT, 1.0, 0.0, 0.0, 256,
                             PINLAB_TAIL_KEEP, &g.h) == PINLAB_OK);
    pinlab_interp_check chk{};
    REQUIRE(pinlab_check_integrating_inequality(g.h, 0.1, 0.2, 256, 11, 50, 200, 13, 1,
                                                &chk) == PINLAB_OK);
    CHECK(chk.pass == 1);
    CHECK(chk.max_weight_share < 0.5);
}
