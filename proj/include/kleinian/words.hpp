#pragma once

/* Words in the free group on two letters, the good-word pattern, the
 * composition semigroup, and compilation of good words into bivariate
 * integer trace polynomials p_w(z, beta) with
 * gamma(f, w(g, f)) = p_w(gamma, beta) on the beta' = -4 slice
 * (exactly, independent of beta', when the word is strictly good).
 * Letters: a stands for the first generator g, b for the second f.
 */

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kleinian/moebius.hpp"

namespace kleinian {

struct word_syllable {
    char letter;  /* 'a' or 'b' */
    int exponent; /* nonzero */
    bool operator==(const word_syllable&) const = default;
};

struct group_word {
    std::vector<word_syllable> syllables; /* freely reduced */
    bool operator==(const group_word&) const = default;

    bool empty() const { return syllables.empty(); }
    group_word inverse() const;
    /* total letter count, sum of |exponent| */
    int length() const;
};

/* grammar: letters a, b with uppercase meaning inverse, each optionally
 * followed by ^k for integer k; whitespace ignored.  "abA" and
 * "a b^-1 a^2" are both valid.  Throws std::invalid_argument with the
 * offending position on a syntax error or when the word reduces to the
 * empty word. */
group_word parse_word(const std::string& text);

std::string word_to_string(const group_word& w);

/* strict pattern a^{s1} b^{r1} a^{s2} ... a^{sm}: starts and ends with the
 * letter a, every a-exponent is +-1 with alternating signs, b-runs nonzero */
bool is_good(const group_word& w);

/* weaker pattern that suffices once a^2 = 1 is imposed: the word, with
 * a-exponents reduced mod 2, still starts and ends with the letter a */
bool is_good_under_involution(const group_word& w);

/* image of the word under a^2 = 1: a-exponents reduced mod 2, then freely
 * reduced again */
group_word reduce_mod_involution(const group_word& w);

struct good_word {
    group_word word;
    bool strictly_good = false; /* false: valid on the beta' = -4 slice only */
};

/* validates; throws std::domain_error when the word is not good in either
 * sense */
good_word make_good(const group_word& w);

/* (w1 * w2)(a, b) = w1(w2(a, b), b): substitutes the image of w2 into the
 * a slot of w1, then reduces.  Requires w2 to start and end in the letter
 * a (throws std::domain_error otherwise).  Satisfies
 * p_{w1*w2} = p_{w1}(p_{w2}(z, beta), beta); the result is strictly good
 * exactly when both inputs are. */
good_word compose_words(const good_word& w1, const good_word& w2);

/* gamma(f, w(g, f)) from a realization of the parameters; throws when
 * gamma == 0.  Defined for any word, not only good ones. */
cplx evaluate_gamma(const group_word& w, const trace_params& params);
cplx evaluate_gamma(const good_word& w, const trace_params& params);

struct trace_polynomial {
    /* (z-degree, beta-degree) -> coefficient, zero coefficients omitted */
    std::map<std::pair<int, int>, long long> coeffs;
    int z_degree = 0;
    int beta_degree = 0;

    bool operator==(const trace_polynomial&) const = default;

    cplx eval(cplx z, cplx beta) const;
    /* univariate z-coefficients at a fixed beta, low degree first */
    std::vector<cplx> at_beta(cplx beta) const;
    /* JSON list of {"zdeg":..,"bdeg":..,"coeff":..} in sorted term order */
    std::string to_json() const;
};

/* recovers the integer polynomial by evaluation on a roots-of-unity grid
 * and exact rounding; every recovered polynomial is re-verified at 64
 * fresh points and rejected (std::runtime_error) when the rounding
 * residual exceeds 1e-6 or re-verification fails.  degree_hint < 0 uses
 * the letter-count bounds from the word. */
trace_polynomial compile_trace_polynomial(const good_word& w, int degree_hint = -1);

/* exact composition p1(p2(z, beta), beta) in integer arithmetic; throws
 * std::overflow_error when a coefficient leaves the 64-bit range */
trace_polynomial compose_polynomials(const trace_polynomial& p1, const trace_polynomial& p2);

/* substitute a fixed integer beta, leaving a univariate polynomial in z */
trace_polynomial specialize_beta(const trace_polynomial& p, long long beta_value);

/* the four words built from an order-4 / order-2 generator pair (beta = -2
 * fixed by the order-4 generator); returns the univariate polynomial in z */
enum class order42_word {
    gf_pow4_g,              /* (gf)^4 g */
    gf_pow3_g,              /* (gf)^3 g */
    gf_pow3_gfinv_pow3_g,   /* (gf)^3 (gf^-1)^3 g */
    gf_pow3_gfinv_pow3_gf_pow3_g /* (gf)^3 (gf^-1)^3 (gf)^3 g */
};

/* the letter form of the selector, e.g. "ababababa" for (gf)^4 g */
group_word order42_word_letters(order42_word k);

trace_polynomial order42_identity(order42_word k);

} // namespace kleinian
