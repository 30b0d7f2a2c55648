#pragma once

/* Arithmeticity screening for the commutator parameter: exact integer
 * polynomial calculus (discriminants, factor search), certified root
 * classification, the acceptance test for candidate gamma values on the
 * integer half-turn slices, and bounded exhaustive enumeration. */

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "kleinian/moebius.hpp"

namespace kleinian {

using bigint = boost::multiprecision::cpp_int;
using bigrational = boost::multiprecision::cpp_rational;

/* integer polynomial, coefficients low degree first, leading nonzero */
struct int_polynomial {
    std::vector<bigint> coefficients;

    int degree() const { return static_cast<int>(coefficients.size()) - 1; }
    bool monic() const;
    bigint eval(const bigint& x) const;
    cplx eval(cplx x) const;
    std::string str() const; /* e.g. "z^4 + 6z^3 + 12z^2 + 9z + 1" */
};

/* builds from high-degree-first integer coefficients, e.g. {1,6,12,9,1} */
int_polynomial make_polynomial(const std::vector<long long>& high_first);

/* largest product of squared differences of r points in [-1, 1], as an
 * exact rational; the sequence value^(1/r(r-1)) decreases to 1/4 */
bigrational schur_bound(int r);

/* exact discriminant: (-1)^(n(n-1)/2) Res(P, P') / lc, via fraction-free
 * elimination of the Sylvester matrix.  Throws for degree < 1. */
bigint poly_discriminant(const int_polynomial& p);

/* strips any square factor shared with `kernel`: returns f with
 * disc = f^2 * kernel when that holds exactly, and 0 otherwise */
bigint square_factor_against(const bigint& disc, const bigint& kernel);

/* certified root layout: conjugate pairs (upper-half representatives),
 * ascending real roots, and the certificate data backing them */
struct root_classification {
    std::vector<cplx> complex_pairs;
    std::vector<double> real_roots;
    double min_separation = 0.0;
    double max_residual = 0.0; /* max |P(root)| over all roots */
};

/* classifies all roots; throws std::runtime_error when roots cluster
 * tighter than the certification tolerance or residuals fail the
 * 1e-9 * max|coeff| * max(1,|root|)^deg bound */
root_classification classify_roots(const int_polynomial& p);

/* nontrivial monic factor pair over the integers, found by matching
 * conjugation-closed root subsets against exact division; empty when the
 * polynomial is irreducible */
std::vector<int_polynomial> integer_factors(const int_polynomial& p);

/* a screened gamma value on the slice (gamma, beta, -4), beta integer */
struct candidate_gamma {
    int_polynomial polynomial;
    cplx gamma; /* distinguished root: the upper-half pair member, or the
                   largest real root when every root is real */
    int beta = 0;
    bool monic = false;
    bool one_complex_place = false;
    bool real_roots_in_interval = false;
    bool irreducible = false;
    bool inside_nonfree_ellipse = false;

    bool accepted() const {
        return monic && one_complex_place && real_roots_in_interval &&
               irreducible && inside_nonfree_ellipse;
    }
};

struct screen_verdict {
    bool accepted = false;
    candidate_gamma candidate; /* check bits filled as far as testing got */
    std::string reason;        /* empty exactly when accepted */
    std::vector<int_polynomial> factors; /* populated when reducible */
};

/* acceptance test on the half-turn slice for beta in {-3,-2,-1,0}:
 * monic, irreducible, exactly one conjugate root pair (or none, with the
 * distinguished root real), remaining roots strictly inside (beta, 0),
 * and the distinguished root inside the closed non-free ellipse */
screen_verdict arithmeticity_check(const int_polynomial& p, int beta);

/* the polynomial of beta - gamma: (-1)^n P(beta - z), monic again */
int_polynomial mirror_polynomial(const int_polynomial& p, int beta);

/* per-coefficient enumeration box: |a_{n-k}| bound for k = 1..degree,
 * covering both one-pair and all-real root layouts */
std::vector<long long> enumeration_coefficient_bounds(int beta, int degree);

/* every accepted candidate of degree 1..max_degree (max 6), one
 * representative per {P, mirror} pair, ordered by degree then by
 * high-degree-first coefficient order */
std::vector<candidate_gamma> enumerate_candidates(int beta, int max_degree);

/* quadratic integer scan for the two-parabolic slice: gamma^2 + b gamma
 * + c with b in (-8, 0], c = |gamma|^2 < 16, b^2 - 4c < 0.  `refined`
 * keeps the coarse entries the exclusion battery cannot reject. */
struct parabolic_enumeration {
    std::vector<candidate_gamma> coarse;
    std::vector<candidate_gamma> refined;
};
parabolic_enumeration enumerate_parabolic_candidates();

/* CSV rows for candidate lists: degree, coefficients (high first, space
 * separated), gamma, beta, and the five check bits */
std::string candidates_csv(const std::vector<candidate_gamma>& list);

} // namespace kleinian
