#pragma once

/* Non-discreteness certificates in the gamma plane: commutator-trace
 * inequalities, excluded disks pulled back through good-word polynomials,
 * the free-product ellipse, and the verdict battery combining them. */

#include <string>
#include <vector>

#include "kleinian/moebius.hpp"
#include "kleinian/words.hpp"

namespace kleinian {

/* no Kleinian gamma value lies inside the disk except at the listed
 * exceptional centers */
struct exclusion_disk {
    cplx center;
    double radius = 0.0;
    std::vector<cplx> exceptional_centers;
    std::string provenance; /* word / inequality the disk came from */
};

/* |gamma| + |beta| - 1; nonnegative for every Kleinian group */
double jorgensen_margin(const trace_params& params);

struct flagged_margin {
    double margin = 0.0;
    bool flagged = false; /* the inequality's exceptional locus was hit */
};

/* |gamma| + |1 + beta| - 1, inconclusive when gamma == 1 + beta */
flagged_margin modified_jorgensen_margin(const trace_params& params);

/* |p(gamma, beta)| + |beta| - 1, flagged on the zero locus of p */
flagged_margin word_inequality(const trace_polynomial& p, cplx gamma, cplx beta);

/* the slice beta = 0: D(0,1) plus D(+-1, r0) with r0^3 + r0^2 = 1 and the
 * centers +-1 as isolated exceptions */
std::vector<exclusion_disk> riley_excluded_disks();

/* the slice beta = -3: D(0, 2cos(2pi/7)-1), the pullback disks
 * D(-2, r1) / D(-1, r1) with (2+r1) r1^4 = 2cos(2pi/7)-1, and the two
 * disks of radius 0.183 about the conjugate pair gamma_0 */
std::vector<exclusion_disk> order3_excluded_disks();

/* smallest |gamma| over Kleinian groups whose first generator has order p;
 * p = 3 (real root of r^2 (r+3) (r+2)^2 = 1) and p = 6 (exactly 1) are
 * supported */
double order_p_minimum_gamma(int p);

/* the shipped disks for a slice: beta = 0 and beta = -3 carry published
 * lists, every other slice is empty */
std::vector<exclusion_disk> slice_excluded_disks(cplx beta);

/* largest certified radius about `center` whose image under the univariate
 * polynomial p(., beta) stays inside the target disk.  Certification uses
 * 4096 circle samples of the recentred polynomial plus a local Lipschitz
 * bound, so the result is slightly conservative (about 1e-3 here).
 * Exceptional centers are the roots of p inside the certified disk.
 * Requires p(center) to equal the target's center. */
exclusion_disk excluded_disk_from_polynomial(const trace_polynomial& p, cplx beta,
                                             cplx center, const exclusion_disk& target);

enum class verdict : unsigned char {
    excluded = 0,      /* certified: no Kleinian group here */
    free_product = 1,  /* certified discrete free product of cyclics */
    unknown = 2,
    marked_discrete = 3 /* overlay only; never produced by the battery */
};

/* the bundled battery words: the named words of the trace-polynomial
 * toolkit plus the order-4/order-2 family */
std::vector<good_word> default_battery_words();

/* precompiled state for repeated verdicts on one slice */
struct battery_context {
    cplx beta;
    cplx beta_prime{-4.0, 0.0};
    /* univariate z-coefficients of each battery polynomial at this beta */
    std::vector<std::vector<cplx>> polynomials_at_beta;
    std::vector<exclusion_disk> disks;
    bool word_tests_active = false; /* the word inequality only bites for |beta| < 1 */
    bool free_test_valid = false;   /* both generators primitive elliptic or parabolic */
    double free_offset = 0.0;       /* 4 sin^2(pi/p) sin^2(pi/q) */
    double free_threshold = 0.0;    /* lambda_{p,q} */
};

/* compiles the words, closes them under pairwise polynomial composition up
 * to compose_depth (skipping compositions past the degree cap), and
 * attaches the disk list matching the slice */
battery_context make_battery(cplx beta, cplx beta_prime,
                             const std::vector<good_word>& words,
                             int compose_depth = 2, int z_degree_cap = 24);

verdict evaluate_battery(const battery_context& ctx, cplx gamma);

/* one-shot battery on the half-turn slice beta' = -4 */
verdict gamma_battery(cplx gamma, cplx beta, const std::vector<good_word>& words);

} // namespace kleinian
