#include "pinlab/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "pinlab/homogeneous.hpp"

namespace pinlab {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double golden_refine(const RenewalLaw& law, double beta, double delta, double a,
                     double b) {
    const double b2 = beta * beta;
    auto g = [&](double q) { return 0.5 * b2 * q * q + free_energy(law, delta - b2 * q).F; };
    const double gr = 0.6180339887498949;
    for (int it = 0; it < 80 && b - a > 1e-13 * std::max(1.0, b); ++it) {
        const double c1 = b - gr * (b - a);
        const double c2 = a + gr * (b - a);
        if (g(c1) < g(c2))
            b = c2;
        else
            a = c1;
    }
    return 0.5 * (a + b);
}

}  // namespace

double annealed_critical_point(const RenewalLaw& law, double beta) {
    return -std::log(law.total_mass) - 0.5 * beta * beta;
}

RsBound rs_upper_bound(const RenewalLaw& law, double beta, double delta,
                       long grid_points) {
    if (!(beta > 0.0) || !(delta > 0.0))
        throw std::invalid_argument("rs_upper_bound: beta and delta must be > 0");
    if (grid_points < 3) throw std::invalid_argument("rs_upper_bound: grid too coarse");

    const double b2 = beta * beta;
    const double qmax = delta / b2;
    double best = std::numeric_limits<double>::infinity();
    long best_i = 0;
    // g is smooth but not certified unimodal for truncated laws, hence the
    // dense scan before local refinement.
    for (long i = 0; i <= grid_points; ++i) {
        const double q = qmax * static_cast<double>(i) / static_cast<double>(grid_points);
        const double g = 0.5 * b2 * q * q + free_energy(law, delta - b2 * q).F;
        if (g < best) {
            best = g;
            best_i = i;
        }
    }
    const double step = qmax / static_cast<double>(grid_points);
    const double lo = std::max(0.0, static_cast<double>(best_i - 1) * step);
    const double hi = std::min(qmax, static_cast<double>(best_i + 1) * step);
    const double q_star = golden_refine(law, beta, delta, lo, hi);
    const double value = 0.5 * b2 * q_star * q_star + free_energy(law, delta - b2 * q_star).F;

    RsBound out;
    out.q_star = q_star;
    out.value = std::min(value, best);
    if (out.value == best && best < value) out.q_star = best_i * step;
    return out;
}

double small_beta_expansion(const RenewalLaw& law, double beta, double delta) {
    if (!(beta > 0.0) || !(delta > 0.0))
        throw std::invalid_argument("small_beta_expansion: beta and delta must be > 0");
    if (law.alpha >= 0.5)
        throw std::domain_error("small_beta_expansion: requires alpha < 1/2");
    const HomogeneousSolution sol = free_energy(law, delta);
    return sol.F - 0.5 * beta * beta * sol.dF * sol.dF;
}

RegionVerdict theorem_region(const RenewalLaw& law, double beta, double delta,
                             const RegionConstants& constants) {
    RegionVerdict v;
    const double alpha = law.alpha;
    RenewalLaw reduced = law;
    if (!law.recurrent()) reduced = recurrent_reduction(law).first;

    if (alpha > 0.0 && alpha < 0.5) {
        // Lower sandwich holds for all small beta; the beta threshold is
        // existence-only, so the gate is the alpha regime itself.
        v.applicable = true;
        v.satisfied = true;
        v.lhs = beta * beta;
        v.rhs = std::numeric_limits<double>::infinity();
        v.note = "alpha < 1/2: beta threshold existence-only, region gate passes";
        return v;
    }

    const HomogeneousSolution sol = free_energy(reduced, delta);
    if (!(sol.F > 0.0)) {
        v.applicable = false;
        v.note = "F(0, delta) = 0: region conditions need the localized phase";
        return v;
    }
    const double logF = std::abs(std::log(sol.F));

    if (alpha > 0.5 && alpha < 1.0) {
        // beta^2 <= a1 * delta^{(2a-1)/a} * [Ltilde(1/delta)/|log F|]^{2a-1}
        //           * L(|log F| / F)^2, with Ltilde read off F = delta^{1/a} Ltilde.
        const double ltilde = sol.F * std::pow(delta, -1.0 / alpha);
        const double arg = logF / sol.F;
        const double lfac = reduced.L(arg);
        v.applicable = true;
        v.lhs = beta * beta;
        v.rhs = constants.a1 * std::pow(delta, (2.0 * alpha - 1.0) / alpha) *
                std::pow(ltilde / logF, 2.0 * alpha - 1.0) * lfac * lfac;
        v.satisfied = v.lhs <= v.rhs;
        v.note = "1/2 < alpha < 1 condition";
        return v;
    }

    if (alpha == 0.5) {
        // 1/beta^2 >= a2 * ell(a2 |log F| / F)
        const double arg = constants.a2 * logF / sol.F;
        const double ell = marginal_ell(reduced, static_cast<long>(std::ceil(arg)));
        v.applicable = true;
        v.lhs = constants.a2 * ell;
        v.rhs = 1.0 / (beta * beta);
        v.satisfied = v.lhs <= v.rhs;
        v.note = "alpha = 1/2 marginal condition";
        return v;
    }

    v.applicable = false;
    v.note = "no theorem region for alpha >= 1 or alpha = 0";
    return v;
}

double region_threshold_delta(const RenewalLaw& law, double beta,
                              const RegionConstants& constants) {
    // The condition is implicit in delta (|log F(0, delta)| enters its own
    // threshold); solve by bisection on the satisfied/violated boundary.
    auto ok = [&](double d) { return theorem_region(law, beta, d, constants).satisfied; };
    double hi = 1.0;
    if (!ok(hi)) {
        for (int i = 0; i < 20 && !ok(hi); ++i) hi *= 2.0;
        if (!ok(hi))
            throw std::runtime_error("region_threshold_delta: no satisfied delta found");
    }
    double lo = 1e-12;
    if (ok(lo)) return lo;
    for (int it = 0; it < 200 && hi / lo > 1.0 + 1e-10; ++it) {
        const double mid = std::sqrt(lo * hi);
        (ok(mid) ? hi : lo) = mid;
    }
    return hi;
}

bool BoundReport::all_pass() const {
    for (const auto& v : verdicts)
        if (v.applicable && !v.pass) return false;
    return true;
}

BoundReport bound_report(const RenewalLaw& law, double beta, double delta, long N,
                         const DisorderBatch& batch, const RegionConstants& constants,
                         double slack_c, int workers) {
    BoundReport r;
    r.alpha = law.alpha;
    r.beta = beta;
    r.delta = delta;
    r.N = N;

    const HomogeneousSolution sol = free_energy(law, delta);
    r.annealed_limit = sol.F;
    r.annealed_finite = finite_volume_free_energy(law, delta, N);
    const double h = annealed_critical_point(law, beta) + delta;
    r.quenched = quenched_free_energy(law, beta, h, N, batch, workers);

    if (beta > 0.0) {
        const RsBound rs = rs_upper_bound(law, beta, delta);
        r.rs_bound = rs.value;
        r.rs_q_star = rs.q_star;
    } else {
        r.rs_bound = sol.F;
        r.rs_q_star = 0.0;
    }
    r.expansion = (law.alpha < 0.5 && beta > 0.0)
                      ? small_beta_expansion(law, beta, delta)
                      : kNan;
    r.lower_sandwich = (1.0 - constants.epsilon) * sol.F;
    r.finite_size_slack = slack_c * std::log(static_cast<double>(N)) / static_cast<double>(N);
    r.region = theorem_region(law, beta, delta, constants);

    const double sigma3 = 3.0 * r.quenched.std_error;
    auto add = [&](std::string name, double lhs, double rhs, bool applicable) {
        Verdict v;
        v.name = std::move(name);
        v.lhs = lhs;
        v.rhs = rhs;
        v.margin = rhs - lhs;
        v.applicable = applicable;
        v.pass = !applicable || lhs <= rhs;
        r.verdicts.push_back(v);
    };

    add("quenched_le_annealed_finite", r.quenched.mean, r.annealed_finite + sigma3, true);
    add("quenched_le_rs", r.quenched.mean, r.rs_bound + sigma3, beta > 0.0);
    add("rs_lt_annealed", r.rs_bound, r.annealed_limit, beta > 0.0);
    add("quenched_ge_lower_sandwich", r.lower_sandwich - r.finite_size_slack - sigma3,
        r.quenched.mean, r.region.applicable && r.region.satisfied);
    return r;
}

}  // namespace pinlab
