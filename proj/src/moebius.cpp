/* Moebius transformation algebra and the (gamma, beta, beta') trace
 * calculus.  Classification bands, branch conventions and the realization
 * normalization are frozen here; see the header for the contracts.
 */

#include "kleinian/moebius.hpp"

#include <algorithm>
#include <stdexcept>

namespace kleinian {

const double det_tolerance = 1e-12;
const double parabolic_band = 1e-9;       /* |beta| below this: parabolic */
const double elliptic_real_band = 1e-9;   /* |Im beta| below this: real axis */
const double elliptic_inner_edge = 1e-12; /* beta in [-4-1e-9, -1e-12]: elliptic */
const double rotation_match_tol = 1e-9;   /* rational-angle detection */
const int max_elliptic_order = 2000;

moebius_map::moebius_map(cplx a_, cplx b_, cplx c_, cplx d_) : a(a_), b(b_), c(c_), d(d_) {
    cplx det = a * d - b * c;
    if (std::abs(det) < det_tolerance)
        throw std::domain_error("moebius_map: singular matrix");
    cplx s = std::sqrt(det);
    a /= s;
    b /= s;
    c /= s;
    d /= s;
}

cplx moebius_map::apply(cplx z) const {
    if (is_sphere_infinity(z)) {
        if (std::abs(c) < det_tolerance) return sphere_infinity;
        return a / c;
    }
    cplx den = c * z + d;
    if (std::abs(den) < det_tolerance) return sphere_infinity;
    return (a * z + b) / den;
}

bool moebius_map::is_identity(double tol) const {
    return same_map(*this, moebius_map(), tol);
}

moebius_map compose(const moebius_map& f, const moebius_map& g) {
    return moebius_map(f.a * g.a + f.b * g.c, f.a * g.b + f.b * g.d,
                       f.c * g.a + f.d * g.c, f.c * g.b + f.d * g.d);
}

bool same_map(const moebius_map& f, const moebius_map& g, double tol) {
    double plus = std::max({std::abs(f.a - g.a), std::abs(f.b - g.b),
                            std::abs(f.c - g.c), std::abs(f.d - g.d)});
    double minus = std::max({std::abs(f.a + g.a), std::abs(f.b + g.b),
                             std::abs(f.c + g.c), std::abs(f.d + g.d)});
    return plus <= tol || minus <= tol;
}

cplx beta(const moebius_map& f) {
    cplx t = f.trace();
    return t * t - 4.0;
}

cplx gamma(const moebius_map& f, const moebius_map& g) {
    moebius_map comm = compose(compose(f, g), compose(f.inverse(), g.inverse()));
    return comm.trace() - 2.0;
}

/* smallest denominator q <= max_elliptic_order with |x - p/q| < tol,
 * found by walking the continued-fraction convergents; 0 when none */
static int best_rational_denominator(double x, double tol) {
    long long p0 = 1, q0 = 0; /* previous convergent */
    long long p1 = 0, q1 = 1; /* one before that */
    double rem = x;
    for (int iter = 0; iter < 64; ++iter) {
        double fl = std::floor(rem);
        long long ai = (long long)fl;
        long long p = ai * p0 + p1;
        long long q = ai * q0 + q1;
        if (q > max_elliptic_order) break;
        if (q > 0 && std::abs(x - (double)p / (double)q) < tol) return (int)q;
        p1 = p0;
        q1 = q0;
        p0 = p;
        q0 = q;
        double frac = rem - fl;
        if (frac < 1e-15) break;
        rem = 1.0 / frac;
    }
    return 0;
}

isometry_class classify(const moebius_map& f) {
    isometry_class out;
    if (f.is_identity()) {
        out.tag = isometry_tag::identity;
        return out;
    }
    cplx b = beta(f);
    if (std::abs(b) < parabolic_band) {
        out.tag = isometry_tag::parabolic;
        return out;
    }
    if (std::abs(b.imag()) < elliptic_real_band && b.real() >= -4.0 - elliptic_real_band &&
        b.real() <= -elliptic_inner_edge) {
        out.tag = isometry_tag::elliptic;
        double s = std::sqrt(std::clamp(-b.real() / 4.0, 0.0, 1.0));
        out.rotation_angle = 2.0 * std::asin(s); /* in (0, pi] */
        out.order = best_rational_denominator(out.rotation_angle / (2.0 * M_PI), rotation_match_tol);
        return out;
    }
    out.tag = isometry_tag::loxodromic;
    return out;
}

std::vector<cplx> fixed_points(const moebius_map& f) {
    if (f.is_identity())
        throw std::domain_error("fixed_points: identity fixes everything");
    cplx b = beta(f);
    bool parabolic = std::abs(b) < parabolic_band;
    if (std::abs(f.c) < det_tolerance) {
        /* infinity is fixed; second point b/(d-a) unless parabolic */
        if (parabolic || std::abs(f.d - f.a) < det_tolerance) return {sphere_infinity};
        return {f.b / (f.d - f.a), sphere_infinity};
    }
    /* roots of c z^2 + (d-a) z - b; discriminant equals beta(f) */
    cplx sq = std::sqrt(b);
    if (parabolic) return {(f.a - f.d) / (2.0 * f.c)};
    return {(f.a - f.d + sq) / (2.0 * f.c), (f.a - f.d - sq) / (2.0 * f.c)};
}

axis_holonomy translation_holonomy(const moebius_map& f) {
    if (f.is_identity())
        throw std::domain_error("translation_holonomy: identity input");
    cplx b = beta(f);
    if (std::abs(b) < parabolic_band)
        throw std::domain_error("translation_holonomy: parabolic input");
    double m = (std::abs(b + 4.0) + std::abs(b)) / 4.0;
    double c = (std::abs(b + 4.0) - std::abs(b)) / 4.0;
    axis_holonomy out;
    out.tau = std::acosh(std::max(1.0, m));
    double eta0 = std::acos(std::clamp(c, -1.0, 1.0));
    out.eta = (b.imag() < 0.0) ? -eta0 : eta0;
    return out;
}

complex_distance axis_complex_distance(const moebius_map& f, const moebius_map& g) {
    auto require_axis = [](const moebius_map& m, const char* which) {
        isometry_class cl = classify(m);
        if (cl.tag == isometry_tag::parabolic || cl.tag == isometry_tag::identity)
            throw std::domain_error(std::string("axis_complex_distance: no axis for ") + which);
    };
    require_axis(f, "first map");
    require_axis(g, "second map");
    cplx bf = beta(f), bg = beta(g);
    if (std::abs(bf * bg) < det_tolerance)
        throw std::domain_error("axis_complex_distance: beta(f) beta(g) == 0");
    cplx gm = gamma(f, g);
    complex_distance out;
    if (std::abs(gm) < 1e-12) {
        out.coaxial = true;
        return out;
    }
    cplx k = 4.0 * gm / (bf * bg);
    double cosh2d = std::abs(k + 1.0) + std::abs(k);
    double cos2t = std::abs(k + 1.0) - std::abs(k);
    out.delta = 0.5 * std::acosh(std::max(1.0, cosh2d));
    double theta0 = 0.5 * std::acos(std::clamp(cos2t, -1.0, 1.0));
    /* the two candidate angles theta0 and pi - theta0 conjugate gamma;
     * pick by the sign of Im k, ignoring rounding-level imaginary parts */
    double noise_band = 1e-12 * (1.0 + std::abs(k));
    out.theta = (k.imag() < -noise_band) ? M_PI - theta0 : theta0;
    return out;
}

cplx gamma_from_geometry(cplx beta_f, cplx beta_g, const complex_distance& dist) {
    cplx u(dist.delta, dist.theta);
    cplx s = std::sinh(u);
    return beta_f * beta_g / 4.0 * s * s;
}

realized_pair realize(const trace_params& params) {
    if (std::abs(params.gamma) < det_tolerance)
        throw std::domain_error("realize: gamma == 0 has no unique realization");
    cplx sf = std::sqrt(params.beta + 4.0);
    cplx sg = std::sqrt(params.beta_prime + 4.0);
    cplx rf = std::sqrt(params.beta);
    cplx rg = std::sqrt(params.beta_prime);
    cplx lambda = (sf + rf) / 2.0;
    cplx mu = (sg + rg) / 2.0;
    cplx b = rf * rg; /* (lambda - 1/lambda)(mu - 1/mu) */
    cplx w = (-b + std::sqrt(b * b + 4.0 * params.gamma)) / 2.0;
    if (std::abs(w) < det_tolerance) w = (-b - std::sqrt(b * b + 4.0 * params.gamma)) / 2.0;
    realized_pair out;
    out.f = moebius_map(lambda, 1.0, 0.0, 1.0 / lambda);
    out.g = moebius_map(mu, 0.0, w, 1.0 / mu);
    return out;
}

moebius_map involution_phi(const moebius_map& f, const moebius_map& g) {
    moebius_map fg = compose(f, g);
    moebius_map gf = compose(g, f);
    cplx a = fg.a - gf.a, b = fg.b - gf.b, c = fg.c - gf.c, d = fg.d - gf.d;
    /* fg - gf is trace free, so this is a half turn once normalized */
    return moebius_map(a, b, c, d);
}

static void require_half_turn_slice(const trace_params& params, const char* op) {
    if (std::abs(params.beta_prime + 4.0) > 1e-9)
        throw std::domain_error(std::string(op) + ": requires beta' == -4");
}

std::vector<trace_params> parameter_symmetries(const trace_params& params) {
    require_half_turn_slice(params, "parameter_symmetries");
    cplx g = params.gamma, b = params.beta;
    return {
        trace_params{g, b, -4.0},
        trace_params{b - g, b, -4.0},
        trace_params{g, g - b - 4.0, -4.0},
        trace_params{-b - 4.0, g - b - 4.0, -4.0},
    };
}

cplx beta_of_product_with_involution(const trace_params& params) {
    require_half_turn_slice(params, "beta_of_product_with_involution");
    return params.gamma - params.beta - 4.0;
}

std::pair<trace_params, trace_params> project_to_two_generator_subgroup(const trace_params& params) {
    cplx g = params.gamma, b = params.beta;
    return {trace_params{g * (g - b), b, b}, trace_params{g, b, -4.0}};
}

trace_params chebyshev_action(const trace_params& params, int n) {
    if (n < 1)
        throw std::domain_error("chebyshev_action: n must be positive");
    if (std::abs(params.beta) < parabolic_band)
        throw std::domain_error("chebyshev_action: parabolic f (beta == 0)");
    cplx s = std::sqrt(params.beta + 4.0);
    cplx lambda = (s + std::sqrt(params.beta)) / 2.0;
    cplx ln = std::pow(lambda, n);
    cplx d = ln - 1.0 / ln;
    cplx beta_n = d * d;
    return trace_params{params.gamma * beta_n / params.beta, beta_n, params.beta_prime};
}

} // namespace kleinian
