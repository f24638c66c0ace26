#ifndef PINLAB_BOUNDS_HPP
#define PINLAB_BOUNDS_HPP

#include <string>
#include <vector>

#include "pinlab/quenched.hpp"
#include "pinlab/renewal.hpp"

namespace pinlab {

// h_c^a(beta) = -log total_mass - beta^2 / 2 (zero shift for recurrent laws).
double annealed_critical_point(const RenewalLaw& law, double beta);

struct RsBound {
    double value = 0.0;   // inf_q of beta^2 q^2 / 2 + F(0, delta - beta^2 q)
    double q_star = 0.0;  // minimizer in [0, delta / beta^2]
};

// Variational upper bound on F(beta, h_c^a + delta): dense grid over the
// feasible q interval plus golden-section refinement around the best point.
RsBound rs_upper_bound(const RenewalLaw& law, double beta, double delta,
                       long grid_points = 1024);

// F(0, delta) - (beta^2/2) (dF(0, delta))^2; the small-disorder expansion,
// valid as an upper-bound surrogate for alpha < 1/2 only.
double small_beta_expansion(const RenewalLaw& law, double beta, double delta);

struct RegionConstants {
    double a1 = 1.0;
    double a2 = 1.0;
    double epsilon = 0.1;
};

struct RegionVerdict {
    bool applicable = false;  // the (alpha, L) regime matches a theorem
    bool satisfied = false;
    double lhs = 0.0;  // both sides reported so users can re-gate with their
    double rhs = 0.0;  // own constants
    std::string note;
};

// Whether (beta, delta) sits inside the proven lower-sandwich region for the
// law's alpha regime. Constants a1, a2 are existence-only in the theory and
// enter as user configuration.
RegionVerdict theorem_region(const RenewalLaw& law, double beta, double delta,
                             const RegionConstants& constants);

// Smallest delta satisfying the region condition at fixed beta (bisection on
// the reported sides); used for threshold-scaling diagnostics.
double region_threshold_delta(const RenewalLaw& law, double beta,
                              const RegionConstants& constants);

struct Verdict {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;  // rhs - lhs
    bool applicable = true;
    bool pass = true;
};

struct BoundReport {
    double alpha = 0.0, beta = 0.0, delta = 0.0;
    long N = 0;
    FreeEnergyEstimate quenched;
    double annealed_limit = 0.0;     // F(0, delta)
    double annealed_finite = 0.0;    // F_N(0, delta)
    double rs_bound = 0.0;
    double rs_q_star = 0.0;
    double expansion = 0.0;          // NaN when alpha >= 1/2
    double lower_sandwich = 0.0;     // (1 - epsilon) F(0, delta)
    double finite_size_slack = 0.0;  // slack_c * log N / N
    RegionVerdict region;
    std::vector<Verdict> verdicts;

    bool all_pass() const;
};

// One (alpha, beta, delta, N) row: Monte Carlo quenched estimate at the
// annealed critical point shift, the deterministic bounds, and the ordering
// verdict chain. slack_c multiplies log N / N in the lower-sandwich slack
// (fitted from the homogeneous finite-size study).
BoundReport bound_report(const RenewalLaw& law, double beta, double delta, long N,
                         const DisorderBatch& batch, const RegionConstants& constants,
                         double slack_c, int workers = 1);

}  // namespace pinlab

#endif
