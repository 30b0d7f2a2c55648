#pragma once

/* Moebius transformations as determinant-normalized 2x2 complex matrices,
 * together with the commutator-trace calculus (gamma, beta, beta') that
 * parameterizes two-generator groups of hyperbolic isometries up to
 * conjugacy.  All operations are pure; matrices are identified up to sign.
 */

#include <cmath>
#include <complex>
#include <limits>
#include <utility>
#include <vector>

namespace kleinian {

using cplx = std::complex<double>;

/* point at infinity on the Riemann sphere, for fixed-point lists */
inline const cplx sphere_infinity{std::numeric_limits<double>::infinity(), 0.0};
inline bool is_sphere_infinity(const cplx& z) { return std::isinf(z.real()) || std::isinf(z.imag()); }

struct moebius_map {
    cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};

    moebius_map() = default;
    /* renormalizes so that ad - bc = 1; throws std::domain_error on a
     * singular matrix */
    moebius_map(cplx a_, cplx b_, cplx c_, cplx d_);

    cplx trace() const { return a + d; }
    /* det is already 1, so skip renormalization: keeps traces exact */
    moebius_map inverse() const {
        moebius_map m;
        m.a = d;
        m.b = -b;
        m.c = -c;
        m.d = a;
        return m;
    }
    cplx apply(cplx z) const;
    bool is_identity(double tol = 1e-9) const;
};

moebius_map compose(const moebius_map& f, const moebius_map& g);

/* equality in PSL(2,C): M == N or M == -N entrywise within tol */
bool same_map(const moebius_map& f, const moebius_map& g, double tol = 1e-9);

/* beta(f) = tr^2(f) - 4, invariant under the sign ambiguity */
cplx beta(const moebius_map& f);

/* gamma(f,g) = tr(f g f^-1 g^-1) - 2 */
cplx gamma(const moebius_map& f, const moebius_map& g);

enum class isometry_tag { identity, elliptic, parabolic, loxodromic };

struct isometry_class {
    isometry_tag tag = isometry_tag::identity;
    /* elliptic only: rotation angle in (0, pi], and the detected finite
     * order n <= 2000 when the angle is a rational multiple of 2*pi
     * (0 when the rotation appears irrational) */
    double rotation_angle = 0.0;
    int order = 0;
};

isometry_class classify(const moebius_map& f);

/* conjugacy parameters of a two-generator group <f,g> */
struct trace_params {
    cplx gamma{0.0};
    cplx beta{0.0};
    cplx beta_prime{0.0};
};

inline trace_params params_of(const moebius_map& f, const moebius_map& g) {
    return trace_params{gamma(f, g), beta(f), beta(g)};
}

/* fixed points on the Riemann sphere; one entry for parabolics, two
 * otherwise; throws std::domain_error on the identity */
std::vector<cplx> fixed_points(const moebius_map& f);

/* translation length tau along the axis and holonomy angle eta about it,
 * normalized so that beta(f) = 4 sinh^2((tau + i eta)/2); eta in (-pi, pi]
 * carries the sign of Im beta(f).  Throws on parabolic or identity input. */
struct axis_holonomy {
    double tau = 0.0;
    double eta = 0.0;
};

axis_holonomy translation_holonomy(const moebius_map& f);

/* complex distance delta + i*theta between the axes of two non-parabolic
 * maps; theta reported in [0, pi), fixed so that
 * gamma = beta(f) beta(g) / 4 * sinh^2(delta + i theta) holds exactly */
struct complex_distance {
    double delta = 0.0;
    double theta = 0.0;
    bool coaxial = false; /* gamma == 0: shared axis or shared fixed point */
};

complex_distance axis_complex_distance(const moebius_map& f, const moebius_map& g);

cplx gamma_from_geometry(cplx beta_f, cplx beta_g, const complex_distance& dist);

/* a matrix pair realizing given trace parameters; normalization is frozen:
 * f = [lambda 1; 0 1/lambda] upper triangular with unit upper-right entry,
 * g = [mu 0; w 1/mu] lower triangular, where lambda = (s + sqrt(beta))/2
 * with s the principal sqrt(beta + 4) (likewise mu from beta'), and
 * w = (-b + sqrt(b^2 + 4 gamma))/2 with b = sqrt(beta) sqrt(beta').
 * Throws std::domain_error when gamma == 0 (no unique realization). */
struct realized_pair {
    moebius_map f, g;
};

realized_pair realize(const trace_params& params);

/* half-turn swapping f -> f^-1 and g -> g^-1 (normalized trace-free part
 * of fg - gf); defined when <f,g> is irreducible (gamma != 0) */
moebius_map involution_phi(const moebius_map& f, const moebius_map& g);

/* for beta' = -4 the four parameter triples of <f,g>, <f,phi g>, <fg,g>,
 * <fg,phi g>; throws when beta_prime != -4 */
std::vector<trace_params> parameter_symmetries(const trace_params& params);

/* beta(fg) = gamma - beta - 4 when g is a half turn (beta' = -4) */
cplx beta_of_product_with_involution(const trace_params& params);

/* parameters of <f, gfg^-1> = (gamma(gamma-beta), beta, beta) and of the
 * half-turn projection <f, phi> = (gamma, beta, -4) */
std::pair<trace_params, trace_params> project_to_two_generator_subgroup(const trace_params& params);

/* (gamma(f^n,g), beta(f^n), beta') with gamma scaled by beta(f^n)/beta(f);
 * throws when beta == 0 (parabolic f) */
trace_params chebyshev_action(const trace_params& params, int n);

} // namespace kleinian
