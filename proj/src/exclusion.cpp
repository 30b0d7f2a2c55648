#include "kleinian/exclusion.hpp"

#include <cmath>
#include <cstddef>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "kleinian/polyroots.hpp"
#include "kleinian/triangle.hpp"

namespace kleinian {

namespace {

constexpr double margin_tolerance = 1e-6;     /* inequality slack before excluding */
constexpr double zero_locus_tolerance = 1e-12;
constexpr double disk_boundary_guard = 1e-9;  /* strict-interior margin for disks */
constexpr double exception_guard = 1e-4;      /* keep-out radius around exceptional centers */

/* Newton iteration for a simple real root; coefficients low degree first */
double newton_real_root(const std::vector<double>& coeffs, double x)
{
    for (int iter = 0; iter < 200; ++iter) {
        double value = coeffs.back();
        double derivative = 0.0;
        for (std::size_t k = coeffs.size() - 1; k-- > 0;) {
            derivative = derivative * x + value;
            value = value * x + coeffs[k];
        }
        const double step = value / derivative;
        x -= step;
        if (std::abs(step) < 1e-15 * (1.0 + std::abs(x)))
            break;
    }
    return x;
}

/* real root of r^3 + r^2 = 1, the radius of the Riley-slice pullback disks */
double riley_pullback_radius()
{
    return newton_real_root({-1.0, 0.0, 1.0, 1.0}, 0.75);
}

/* 2 cos(2 pi / 7) - 1, the real root of r^2 (r + 3) (r + 2)^2 = 1 */
double order3_core_radius()
{
    return newton_real_root({-1.0, 0.0, 12.0, 16.0, 7.0, 1.0}, 0.25);
}

/* root of (2 + r) r^4 = 2 cos(2 pi / 7) - 1 */
double order3_pullback_radius()
{
    return newton_real_root({-order3_core_radius(), 0.0, 0.0, 0.0, 2.0, 1.0}, 0.55);
}

cplx order3_exceptional_point()
{
    return {-1.5, 0.5 * std::sqrt(2.0 * std::sqrt(5.0) - 3.0)};
}

/* an m-fold root is a simple root of the (m-1)-th derivative, so a root
 * cluster's centroid can be polished there by ordinary Newton steps */
cplx polish_root_cluster(std::vector<cplx> coeffs, cplx guess, int multiplicity)
{
    for (int d = 1; d < multiplicity; ++d) {
        std::vector<cplx> derived;
        for (std::size_t k = 1; k < coeffs.size(); ++k)
            derived.push_back(static_cast<double>(k) * coeffs[k]);
        coeffs = std::move(derived);
    }
    for (int iter = 0; iter < 60; ++iter) {
        cplx value = 0.0;
        cplx derivative = 0.0;
        for (std::size_t k = coeffs.size(); k-- > 0;) {
            derivative = derivative * guess + value;
            value = value * guess + coeffs[k];
        }
        if (std::abs(derivative) < 1e-14)
            break;
        const cplx step = value / derivative;
        guess -= step;
        if (std::abs(step) < 1e-15 * (1.0 + std::abs(guess)))
            break;
    }
    return guess;
}

/* 0 for parabolic, n >= 2 for a primitive elliptic rotating by 2 pi / n,
 * -1 when beta fits neither (loxodromic, non-primitive, irrational angle) */
int primitive_order(cplx beta)
{
    if (std::abs(beta) < 1e-9)
        return 0;
    if (std::abs(beta.imag()) > 1e-9)
        return -1;
    const double b = beta.real();
    if (b < -4.0 || b >= 0.0)
        return -1;
    const double angle = 2.0 * std::asin(std::sqrt(-b / 4.0));
    const double order = 2.0 * std::numbers::pi / angle;
    const double rounded = std::round(order);
    if (std::abs(order - rounded) > 1e-6 || rounded < 2.0)
        return -1;
    return static_cast<int>(rounded);
}

} // namespace

double jorgensen_margin(const trace_params& params)
{
    return std::abs(params.gamma) + std::abs(params.beta) - 1.0;
}

flagged_margin modified_jorgensen_margin(const trace_params& params)
{
    const cplx shifted = 1.0 + params.beta;
    flagged_margin out;
    out.margin = std::abs(params.gamma) + std::abs(shifted) - 1.0;
    out.flagged = std::abs(params.gamma - shifted) <= 1e-9 * (1.0 + std::abs(params.gamma));
    return out;
}

flagged_margin word_inequality(const trace_polynomial& p, cplx gamma, cplx beta)
{
    const cplx value = p.eval(gamma, beta);
    flagged_margin out;
    out.margin = std::abs(value) + std::abs(beta) - 1.0;
    out.flagged = std::abs(value) < zero_locus_tolerance;
    return out;
}

std::vector<exclusion_disk> riley_excluded_disks()
{
    const double r0 = riley_pullback_radius();
    std::vector<exclusion_disk> disks;
    disks.push_back({cplx(0.0), 1.0, {},
                     "|gamma| + |beta| >= 1 with beta = 0"});
    disks.push_back({cplx(1.0), r0, {cplx(1.0)},
                     "word aBABa: |z (1 - z)^2| >= 1 off the zero locus, so |z - 1| >= r0"});
    disks.push_back({cplx(-1.0), r0, {cplx(-1.0)},
                     "word abABa: |z (1 + z)^2| >= 1 off the zero locus, so |z + 1| >= r0"});
    return disks;
}

std::vector<exclusion_disk> order3_excluded_disks()
{
    const double c7 = order3_core_radius();
    const double r1 = order3_pullback_radius();
    const cplx gamma0 = order3_exceptional_point();
    std::vector<exclusion_disk> disks;
    disks.push_back({cplx(0.0), c7, {},
                     "word (babA)^3: |z^3 (z + 3) (2 + z)^2| >= 1 off the zero locus"});
    disks.push_back({cplx(-2.0), r1, {cplx(-2.0)},
                     "word aBAbabABa maps D(-2, r1) into D(0, c7): (2 + r1) r1^4 = c7"});
    disks.push_back({cplx(-1.0), r1, {cplx(-1.0)},
                     "image of the disk at -2 under the symmetry z -> beta - z"});
    disks.push_back({gamma0, 0.183, {gamma0},
                     "word abAbaBABabA maps D(gamma0, 0.183) into D(-2, r1)"});
    disks.push_back({std::conj(gamma0), 0.183, {std::conj(gamma0)},
                     "image of the disk at gamma0 under the symmetry z -> beta - z"});
    return disks;
}

double order_p_minimum_gamma(int p)
{
    if (p == 3)
        return order3_core_radius();
    if (p == 6)
        return 1.0;
    throw std::domain_error("order_p_minimum_gamma: sharp bound known for p = 3 and p = 6 only");
}

std::vector<exclusion_disk> slice_excluded_disks(cplx beta)
{
    if (std::abs(beta) < 1e-9)
        return riley_excluded_disks();
    if (std::abs(beta + 3.0) < 1e-9)
        return order3_excluded_disks();
    return {};
}

exclusion_disk excluded_disk_from_polynomial(const trace_polynomial& p, cplx beta,
                                             cplx center, const exclusion_disk& target)
{
    if (!(target.radius > 0.0))
        throw std::domain_error("excluded_disk_from_polynomial: degenerate target disk");
    const std::vector<cplx> univariate = p.at_beta(beta);
    if (univariate.size() < 2)
        throw std::domain_error("excluded_disk_from_polynomial: polynomial is constant in z");
    const cplx at_center = polynomial_eval(univariate, center);
    const double drift = std::abs(at_center - target.center);
    if (drift > 1e-9 * (1.0 + std::abs(target.center)))
        throw std::domain_error("excluded_disk_from_polynomial: center does not map to the target center");

    /* recentre so the circle |z - center| = r becomes |u| = r; sampling the
     * recentred polynomial keeps the Lipschitz correction local to the disk */
    const std::vector<cplx> shifted = polynomial_shift(univariate, center);

    constexpr int samples = 4096;
    const auto certified_max = [&](double r) {
        double lipschitz = 0.0;
        double power = 1.0;
        for (std::size_t k = 1; k < shifted.size(); ++k) {
            lipschitz += static_cast<double>(k) * std::abs(shifted[k]) * power;
            power *= r;
        }
        double sampled = 0.0;
        for (int j = 0; j < samples; ++j) {
            const cplx u = std::polar(r, 2.0 * std::numbers::pi * j / samples);
            cplx value = 0.0;
            for (std::size_t k = shifted.size(); k-- > 1;)
                value = value * u + shifted[k];
            sampled = std::max(sampled, std::abs(value * u));
        }
        /* arc length between adjacent samples bounds the unsampled gap */
        return sampled + lipschitz * r * (std::numbers::pi / samples) + drift;
    };

    double certified = 0.0;
    double failing = target.radius;
    while (failing < 1e6 && certified_max(failing) < target.radius) {
        certified = failing;
        failing *= 2.0;
    }
    for (int step = 0; step < 60; ++step) {
        const double mid = 0.5 * (certified + failing);
        if (certified_max(mid) < target.radius)
            certified = mid;
        else
            failing = mid;
    }
    if (certified < 1e-9)
        throw std::domain_error("excluded_disk_from_polynomial: no certifiable radius at this center");

    /* points mapping to 0 or to an exceptional value of the target escape
     * the argument and become exceptional centers of the pullback */
    std::vector<cplx> escape_values{cplx(0.0)};
    escape_values.insert(escape_values.end(), target.exceptional_centers.begin(),
                         target.exceptional_centers.end());
    std::vector<cplx> hits;
    for (const cplx& value : escape_values) {
        std::vector<cplx> equation = univariate;
        equation[0] -= value;
        const std::vector<cplx> roots = polynomial_roots(equation);
        for (const cplx& centroid : cluster_roots(roots, 5e-3)) {
            int multiplicity = 0;
            for (const cplx& root : roots)
                if (std::abs(root - centroid) < 5e-3)
                    ++multiplicity;
            const cplx polished = polish_root_cluster(equation, centroid, multiplicity);
            if (std::abs(polished - center) < certified)
                hits.push_back(polished);
        }
    }

    exclusion_disk out;
    out.center = center;
    out.radius = certified;
    out.exceptional_centers = cluster_roots(hits, 5e-3);
    std::ostringstream tag;
    tag << "certified pullback of the excluded disk at " << target.center
        << " through a z-degree " << p.z_degree << " word polynomial";
    out.provenance = tag.str();
    return out;
}

std::vector<good_word> default_battery_words()
{
    static const char* const spellings[] = {
        "abA",
        "aBA",
        "abABa",
        "aBABa",
        "aBAbabABa",
        "abAbaBABabA",
        "abababa",
        "ababababa",
        "abababaBaBaBa",
        "abababaBaBaBabababa",
    };
    std::vector<good_word> words;
    for (const char* spelling : spellings)
        words.push_back(make_good(parse_word(spelling)));
    return words;
}

battery_context make_battery(cplx beta, cplx beta_prime,
                             const std::vector<good_word>& words,
                             int compose_depth, int z_degree_cap)
{
    battery_context ctx;
    ctx.beta = beta;
    ctx.beta_prime = beta_prime;

    const bool half_turn_slice = std::abs(beta_prime + 4.0) < 1e-9;

    std::vector<trace_polynomial> base;
    for (const good_word& w : words) {
        if (!w.strictly_good && !half_turn_slice)
            continue; /* involution-good words only speak for beta' = -4 */
        base.push_back(compile_trace_polynomial(w));
    }

    std::vector<trace_polynomial> pool = base;
    std::vector<trace_polynomial> layer = base;
    for (int depth = 2; depth <= compose_depth; ++depth) {
        std::vector<trace_polynomial> next;
        for (const trace_polynomial& outer : layer)
            for (const trace_polynomial& inner : base) {
                if (outer.z_degree * inner.z_degree > z_degree_cap)
                    continue;
                try {
                    next.push_back(compose_polynomials(outer, inner));
                } catch (const std::overflow_error&) {
                    /* coefficients left the 64-bit range; drop the composite */
                }
            }
        pool.insert(pool.end(), next.begin(), next.end());
        layer = std::move(next);
    }

    std::vector<trace_polynomial> distinct;
    for (trace_polynomial& p : pool) {
        bool seen = false;
        for (const trace_polynomial& q : distinct)
            if (q.coeffs == p.coeffs) {
                seen = true;
                break;
            }
        if (!seen)
            distinct.push_back(std::move(p));
    }
    for (const trace_polynomial& p : distinct)
        ctx.polynomials_at_beta.push_back(p.at_beta(beta));

    ctx.disks = slice_excluded_disks(beta);
    ctx.word_tests_active = std::abs(beta) < 1.0 - margin_tolerance;

    const int order_f = primitive_order(beta);
    const int order_g = primitive_order(beta_prime);
    if (order_f >= 0 && order_g >= 0 && !(order_f == 2 && order_g == 2)) {
        const free_ellipse ellipse = free_product_ellipse(order_f, order_g);
        ctx.free_test_valid = true;
        ctx.free_offset = -ellipse.focus.real();
        ctx.free_threshold = ellipse.lambda;
    }
    return ctx;
}

verdict evaluate_battery(const battery_context& ctx, cplx gamma)
{
    /* gamma = 0 never arises for an irreducible pair */
    if (std::abs(gamma) < zero_locus_tolerance)
        return verdict::excluded;

    for (const exclusion_disk& disk : ctx.disks) {
        if (std::abs(gamma - disk.center) >= disk.radius - disk_boundary_guard)
            continue;
        bool near_exception = false;
        for (const cplx& e : disk.exceptional_centers)
            if (std::abs(gamma - e) <= exception_guard) {
                near_exception = true;
                break;
            }
        if (!near_exception)
            return verdict::excluded;
    }

    const trace_params params{gamma, ctx.beta, ctx.beta_prime};
    if (jorgensen_margin(params) < -margin_tolerance)
        return verdict::excluded;

    const flagged_margin modified = modified_jorgensen_margin(params);
    if (modified.margin < -margin_tolerance && !modified.flagged)
        return verdict::excluded;

    if (ctx.word_tests_active) {
        const double beta_norm = std::abs(ctx.beta);
        const double gamma_norm = std::abs(gamma);
        for (const std::vector<cplx>& coeffs : ctx.polynomials_at_beta) {
            cplx value = 0.0;
            double scale = 0.0;
            for (std::size_t k = coeffs.size(); k-- > 0;) {
                value = value * gamma + coeffs[k];
                scale = scale * gamma_norm + std::abs(coeffs[k]);
            }
            /* a word value that is exactly zero in exact arithmetic computes
             * as rounding noise of order eps * scale here, so the zero-locus
             * test widens with the magnitude sum of the Horner evaluation */
            const double zero_threshold = zero_locus_tolerance * (1.0 + 4.0 * scale);
            const double magnitude = std::abs(value);
            if (magnitude + beta_norm - 1.0 < -margin_tolerance && magnitude > zero_threshold)
                return verdict::excluded;
        }
    }

    if (ctx.free_test_valid &&
        std::abs(gamma) + std::abs(gamma + ctx.free_offset) > ctx.free_threshold + disk_boundary_guard)
        return verdict::free_product;

    return verdict::unknown;
}

verdict gamma_battery(cplx gamma, cplx beta, const std::vector<good_word>& words)
{
    return evaluate_battery(make_battery(beta, cplx(-4.0, 0.0), words), gamma);
}

} // namespace kleinian
