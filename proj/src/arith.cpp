#include "kleinian/arith.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "kleinian/exclusion.hpp"
#include "kleinian/polyroots.hpp"
#include "kleinian/triangle.hpp"

namespace kleinian {

namespace {

/* the generator order paired with each supported integer slice */
int slice_order(int beta) {
    switch (beta) {
    case -3: return 3;
    case -2: return 4;
    case -1: return 6;
    case 0: return 0;
    default:
        throw std::domain_error("arithmeticity slice: beta must be one of -3, -2, -1, 0");
    }
}

free_ellipse slice_ellipse(int beta) { return free_product_ellipse(slice_order(beta), 2); }

double ellipse_extent(const free_ellipse& e) {
    /* farthest point from the origin: far vertex on the major axis */
    return (e.lambda + std::abs(e.focus.real())) / 2.0;
}

bool inside_closed_ellipse(const free_ellipse& e, cplx z, double slack) {
    return std::abs(z) + std::abs(z - e.focus) <= e.lambda + slack;
}

std::vector<cplx> to_double_coeffs(const int_polynomial& p) {
    std::vector<cplx> out;
    out.reserve(p.coefficients.size());
    for (const bigint& c : p.coefficients)
        out.emplace_back(c.convert_to<double>(), 0.0);
    return out;
}

/* high-degree-first ordering used for mirror dedup and output sorting;
 * storage is low first, so the walk starts from the leading end */
bool high_first_less(const std::vector<bigint>& a, const std::vector<bigint>& b) {
    if (a.size() != b.size())
        return a.size() < b.size();
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i])
            return a[i] < b[i];
    return false;
}

bigint det_bareiss(std::vector<std::vector<bigint>> m) {
    const std::size_t n = m.size();
    bigint prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t pivot = k + 1;
            while (pivot < n && m[pivot][k] == 0)
                ++pivot;
            if (pivot == n)
                return 0;
            std::swap(m[k], m[pivot]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

/* exact division by a monic divisor; nullopt-style flag via bool */
bool divide_exact(const int_polynomial& num, const int_polynomial& div,
                  int_polynomial& quotient) {
    if (div.coefficients.back() != 1)
        return false;
    std::vector<bigint> rem = num.coefficients;
    const int dn = num.degree(), dd = div.degree();
    if (dd > dn)
        return false;
    std::vector<bigint> q(static_cast<std::size_t>(dn - dd) + 1, 0);
    for (int k = dn - dd; k >= 0; --k) {
        const bigint factor = rem[static_cast<std::size_t>(k + dd)];
        q[static_cast<std::size_t>(k)] = factor;
        if (factor == 0)
            continue;
        for (int j = 0; j <= dd; ++j)
            rem[static_cast<std::size_t>(k + j)] -= factor * div.coefficients[static_cast<std::size_t>(j)];
    }
    for (const bigint& r : rem)
        if (r != 0)
            return false;
    quotient.coefficients = std::move(q);
    return true;
}

/* hull of admissible P(t) values at a real test point: the union of the
 * one-conjugate-pair layout (pair in the ellipse, n-2 reals in (beta,0))
 * and the all-real layout (n roots in (beta,0)) */
struct value_interval {
    double lo, hi;
};

value_interval admissible_values(double t, int n, int beta, const free_ellipse& e) {
    const double B = std::abs(static_cast<double>(beta));
    const double a = e.lambda / 2.0, c = std::abs(e.focus.real()) / 2.0;
    const double right = -c + a, left = -c - a;
    const double far_sq = [&] {
        const double d = std::max(std::abs(t - left), std::abs(t - right));
        return d * d;
    }();
    const double near_sq = [&] {
        double d = 0.0;
        if (t > right)
            d = t - right;
        else if (t < left)
            d = left - t;
        return d * d;
    }();

    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    const auto widen = [&](double l, double h) {
        lo = std::min(lo, l);
        hi = std::max(hi, h);
    };
    const auto real_block = [&](int m) -> value_interval {
        /* product of m factors (t - x), x in (beta, 0) */
        if (t >= 0.0)
            return {std::pow(t, m), std::pow(t + B, m)};
        if (t <= -B) {
            const double v1 = std::pow(std::abs(t) - B, m) * ((m % 2) ? -1.0 : 1.0);
            const double v2 = std::pow(std::abs(t), m) * ((m % 2) ? -1.0 : 1.0);
            return {std::min(v1, v2), std::max(v1, v2)};
        }
        const double mag = std::pow(std::max(std::abs(t), B - std::abs(t)), m);
        return {-mag, mag};
    };

    if (n >= 2) {
        const value_interval r = real_block(n - 2);
        const double cand[4] = {near_sq * r.lo, near_sq * r.hi, far_sq * r.lo, far_sq * r.hi};
        widen(*std::min_element(cand, cand + 4), *std::max_element(cand, cand + 4));
    }
    const value_interval r = real_block(n);
    widen(r.lo, r.hi);
    return {lo, hi};
}

const std::vector<double>& slice_test_points(int beta) {
    static const std::vector<double> t3{-5.0, -4.0, -3.5, -3.25, -1.5, -0.5, 0.5, 1.5, 2.0, 3.0};
    static const std::vector<double> t2{-4.5, -3.5, -2.5, -2.25, -1.0, -0.5, 0.5, 1.5, 2.0, 3.0};
    static const std::vector<double> t1{-4.0, -3.0, -2.0, -1.25, -0.5, 0.5, 1.5, 2.0, 3.0};
    static const std::vector<double> t0{-5.0, -4.25, -2.0, -1.0, 0.5, 1.0, 2.0, 4.25, 5.0};
    switch (beta) {
    case -3: return t3;
    case -2: return t2;
    case -1: return t1;
    default: return t0;
    }
}

/* loose numeric mirror of the acceptance test; never rejects a
 * configuration the exact check would accept */
bool prefilter(const std::vector<long long>& high_first, int beta, const free_ellipse& e) {
    std::vector<cplx> coeffs(high_first.rbegin(), high_first.rend());
    std::vector<cplx> roots;
    try {
        roots = polynomial_roots(coeffs);
    } catch (const std::exception&) {
        return false;
    }
    const double slack = 1e-6;
    int complex_count = 0;
    cplx pair_root = 0.0;
    for (const cplx& r : roots) {
        if (std::abs(r.imag()) > 1e-7 * (1.0 + std::abs(r))) {
            ++complex_count;
            if (r.imag() > 0.0)
                pair_root = r;
        } else if (r.real() <= beta - slack || r.real() >= slack) {
            return false;
        }
    }
    if (complex_count == 0)
        return true;
    if (complex_count != 2)
        return false;
    return inside_closed_ellipse(e, pair_root, slack);
}

long long ipow_ll(long long base, int exp) {
    long long out = 1;
    for (int i = 0; i < exp; ++i)
        out *= base;
    return out;
}

long long choose_ll(int n, int k) {
    if (k < 0 || k > n)
        return 0;
    long long out = 1;
    for (int i = 0; i < k; ++i)
        out = out * (n - i) / (i + 1);
    return out;
}

} // namespace

bool int_polynomial::monic() const {
    return !coefficients.empty() && coefficients.back() == 1;
}

bigint int_polynomial::eval(const bigint& x) const {
    bigint acc = 0;
    for (std::size_t i = coefficients.size(); i-- > 0;)
        acc = acc * x + coefficients[i];
    return acc;
}

cplx int_polynomial::eval(cplx x) const {
    cplx acc = 0.0;
    for (std::size_t i = coefficients.size(); i-- > 0;)
        acc = acc * x + cplx{coefficients[i].convert_to<double>(), 0.0};
    return acc;
}

std::string int_polynomial::str() const {
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = coefficients.size(); i-- > 0;) {
        const bigint& c = coefficients[i];
        if (c == 0 && coefficients.size() > 1)
            continue;
        const bool negative = c < 0;
        bigint mag = negative ? bigint(-c) : c;
        if (first)
            out << (negative ? "-" : "");
        else
            out << (negative ? " - " : " + ");
        if (mag != 1 || i == 0)
            out << mag;
        if (i >= 1)
            out << "z";
        if (i >= 2)
            out << "^" << i;
        first = false;
    }
    if (first)
        out << "0";
    return out.str();
}

int_polynomial make_polynomial(const std::vector<long long>& high_first) {
    if (high_first.empty() || high_first.front() == 0)
        throw std::domain_error("make_polynomial: leading coefficient must be nonzero");
    int_polynomial p;
    p.coefficients.assign(high_first.rbegin(), high_first.rend());
    return p;
}

bigrational schur_bound(int r) {
    if (r < 1)
        throw std::domain_error("schur_bound: r must be positive");
    bigint num = 1, den = 1;
    for (int k = 2; k <= r; ++k)
        for (int i = 0; i < k; ++i)
            num *= k;
    for (int k = 2; k <= r - 2; ++k)
        for (int i = 0; i < k; ++i)
            num *= k;
    for (int j = 3; j <= 2 * r - 3; j += 2)
        for (int i = 0; i < j; ++i)
            den *= j;
    return bigrational(num, den);
}

bigint poly_discriminant(const int_polynomial& p) {
    const int n = p.degree();
    if (n < 1)
        throw std::domain_error("poly_discriminant: degree must be at least 1");
    if (n == 1)
        return 1;
    /* Sylvester matrix of P and P', rows hold high-degree-first windows */
    const std::size_t size = static_cast<std::size_t>(2 * n - 1);
    std::vector<std::vector<bigint>> m(size, std::vector<bigint>(size, 0));
    for (int row = 0; row < n - 1; ++row)
        for (int j = 0; j <= n; ++j)
            m[static_cast<std::size_t>(row)][static_cast<std::size_t>(row + j)] =
                p.coefficients[static_cast<std::size_t>(n - j)];
    for (int row = 0; row < n; ++row)
        for (int j = 0; j <= n - 1; ++j)
            m[static_cast<std::size_t>(n - 1 + row)][static_cast<std::size_t>(row + j)] =
                p.coefficients[static_cast<std::size_t>(n - j)] * (n - j);
    const bigint res = det_bareiss(std::move(m));
    const bool flip = ((n * (n - 1) / 2) % 2) != 0;
    const bigint scaled = res / p.coefficients.back();
    return flip ? bigint(-scaled) : scaled;
}

bigint square_factor_against(const bigint& disc, const bigint& kernel) {
    if (kernel == 0 || disc % kernel != 0)
        return 0;
    const bigint q = disc / kernel;
    if (q <= 0)
        return 0;
    const bigint f = boost::multiprecision::sqrt(q);
    return f * f == q ? f : 0;
}

root_classification classify_roots(const int_polynomial& p) {
    if (p.degree() < 1)
        throw std::domain_error("classify_roots: degree must be at least 1");
    const std::vector<cplx> coeffs = to_double_coeffs(p);
    const std::vector<cplx> roots = polynomial_roots(coeffs);

    double max_coeff = 0.0;
    for (const cplx& c : coeffs)
        max_coeff = std::max(max_coeff, std::abs(c));

    root_classification rc;
    rc.min_separation = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < roots.size(); ++i) {
        const double residual = std::abs(polynomial_eval(coeffs, roots[i]));
        const double scale =
            max_coeff * std::pow(std::max(1.0, std::abs(roots[i])), p.degree());
        rc.max_residual = std::max(rc.max_residual, residual);
        if (residual > 1e-9 * scale)
            throw std::runtime_error("classify_roots: root residual exceeds the certificate bound");
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            rc.min_separation = std::min(rc.min_separation, std::abs(roots[i] - roots[j]));
    }
    if (roots.size() > 1 && rc.min_separation < 1e-7)
        throw std::runtime_error("classify_roots: clustered roots defeat certification");

    std::vector<cplx> upper, lower;
    for (const cplx& r : roots) {
        if (std::abs(r.imag()) <= 1e-8 * (1.0 + std::abs(r)))
            rc.real_roots.push_back(r.real());
        else if (r.imag() > 0.0)
            upper.push_back(r);
        else
            lower.push_back(r);
    }
    if (upper.size() != lower.size())
        throw std::runtime_error("classify_roots: conjugate pairing failed");
    for (const cplx& u : upper) {
        bool matched = false;
        for (const cplx& l : lower)
            if (std::abs(std::conj(u) - l) <= 1e-6 * (1.0 + std::abs(u))) {
                matched = true;
                break;
            }
        if (!matched)
            throw std::runtime_error("classify_roots: conjugate pairing failed");
    }
    std::sort(upper.begin(), upper.end(),
              [](cplx a, cplx b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
    std::sort(rc.real_roots.begin(), rc.real_roots.end());
    rc.complex_pairs = std::move(upper);
    return rc;
}

std::vector<int_polynomial> integer_factors(const int_polynomial& p) {
    const int n = p.degree();
    if (n < 1)
        throw std::domain_error("integer_factors: degree must be at least 1");
    if (!p.monic())
        throw std::domain_error("integer_factors: the search expects a monic polynomial");
    if (n == 1)
        return {};
    if (n > 16)
        throw std::domain_error("integer_factors: degree above the desk-scale cap of 16");

    const std::vector<cplx> roots = polynomial_roots(to_double_coeffs(p));
    /* every monic integer factor's root set is a sub-multiset of the
     * numeric roots; scan subsets by size so the smallest factor reports */
    std::vector<unsigned> masks;
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask)
        masks.push_back(mask);
    std::sort(masks.begin(), masks.end(), [](unsigned a, unsigned b) {
        const int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
        return pa != pb ? pa < pb : a < b;
    });
    for (unsigned mask : masks) {
        std::vector<cplx> prod{1.0}; /* high degree first while building */
        for (int i = 0; i < n; ++i) {
            if (!(mask & (1u << i)))
                continue;
            std::vector<cplx> next(prod.size() + 1, 0.0);
            for (std::size_t j = 0; j < prod.size(); ++j) {
                next[j] += prod[j];
                next[j + 1] -= roots[static_cast<std::size_t>(i)] * prod[j];
            }
            prod = std::move(next);
        }
        std::reverse(prod.begin(), prod.end()); /* low degree first */
        int_polynomial candidate;
        bool integral = true;
        for (const cplx& c : prod) {
            const double re = std::round(c.real());
            if (std::abs(c.real() - re) > 1e-6 * (1.0 + std::abs(re)) ||
                std::abs(c.imag()) > 1e-6 * (1.0 + std::abs(re))) {
                integral = false;
                break;
            }
            candidate.coefficients.push_back(static_cast<long long>(re));
        }
        if (!integral || candidate.coefficients.back() != 1)
            continue;
        int_polynomial quotient;
        if (divide_exact(p, candidate, quotient))
            return {candidate, quotient};
    }
    return {};
}

screen_verdict arithmeticity_check(const int_polynomial& p, int beta) {
    const free_ellipse region = slice_ellipse(beta);
    screen_verdict v;
    v.candidate.polynomial = p;
    v.candidate.beta = beta;
    if (p.degree() < 1) {
        v.reason = "degree must be at least 1";
        return v;
    }
    v.candidate.monic = p.monic();
    if (!v.candidate.monic) {
        v.reason = "not monic";
        return v;
    }
    std::vector<int_polynomial> factors = integer_factors(p);
    if (!factors.empty()) {
        v.reason = "reducible: (" + factors[0].str() + ")(" + factors[1].str() + ")";
        v.factors = std::move(factors);
        return v;
    }
    v.candidate.irreducible = true;

    root_classification rc;
    try {
        rc = classify_roots(p);
    } catch (const std::runtime_error& err) {
        v.reason = err.what();
        return v;
    }

    v.candidate.one_complex_place = rc.complex_pairs.size() <= 1;
    bool reals_ok = true;
    for (double x : rc.real_roots)
        reals_ok = reals_ok && x > beta && x < 0.0;
    v.candidate.real_roots_in_interval = reals_ok;
    if (rc.complex_pairs.size() > 1) {
        v.reason = "more than one conjugate root pair";
        return v;
    }
    v.candidate.gamma = rc.complex_pairs.empty() ? cplx{rc.real_roots.back(), 0.0}
                                                 : rc.complex_pairs.front();
    v.candidate.inside_nonfree_ellipse =
        inside_closed_ellipse(region, v.candidate.gamma, 1e-9);
    if (!reals_ok)
        v.reason = "real root outside the open interval (beta, 0)";
    else if (!v.candidate.inside_nonfree_ellipse)
        v.reason = "gamma outside the non-free ellipse";
    else
        v.accepted = true;
    return v;
}

int_polynomial mirror_polynomial(const int_polynomial& p, int beta) {
    if (p.degree() < 0 || p.coefficients.empty())
        throw std::domain_error("mirror_polynomial: empty polynomial");
    /* Horner in (beta - z): result = result * (beta - z) + a_i */
    std::vector<bigint> acc;
    for (std::size_t i = p.coefficients.size(); i-- > 0;) {
        std::vector<bigint> next(acc.size() + 1, 0);
        for (std::size_t j = 0; j < acc.size(); ++j) {
            next[j] += acc[j] * beta;
            next[j + 1] -= acc[j];
        }
        if (next.empty())
            next.push_back(0);
        next[0] += p.coefficients[i];
        acc = std::move(next);
    }
    if (p.degree() % 2 == 1)
        for (bigint& c : acc)
            c = -c;
    int_polynomial out;
    out.coefficients = std::move(acc);
    return out;
}

std::vector<long long> enumeration_coefficient_bounds(int beta, int degree) {
    const free_ellipse region = slice_ellipse(beta);
    const double r_e = ellipse_extent(region);
    const long long B = std::abs(static_cast<long long>(beta));
    std::vector<long long> bounds;
    for (int k = 1; k <= degree; ++k) {
        double best = static_cast<double>(choose_ll(degree, k)) * std::pow(static_cast<double>(B), k);
        if (degree >= 2) {
            double pair_case = 0.0;
            for (int j = 0; j <= std::min(k, 2); ++j) {
                if (k - j > degree - 2)
                    continue;
                pair_case += static_cast<double>(choose_ll(2, j)) * std::pow(r_e, j) *
                             static_cast<double>(choose_ll(degree - 2, k - j)) *
                             static_cast<double>(ipow_ll(B, k - j));
            }
            best = std::max(best, pair_case);
        }
        bounds.push_back(static_cast<long long>(std::floor(best)));
    }
    return bounds;
}

namespace {

void enumerate_at_degree(int beta, int n, const free_ellipse& region,
                         std::vector<candidate_gamma>& out) {
    const std::vector<long long> bounds = enumeration_coefficient_bounds(beta, n);
    const std::vector<double>& tests = slice_test_points(beta);
    std::vector<value_interval> targets;
    targets.reserve(tests.size());
    for (double t : tests)
        targets.push_back(admissible_values(t, n, beta, region));

    std::vector<long long> chosen; /* a_{n-1}, a_{n-2}, ... high first */
    chosen.reserve(static_cast<std::size_t>(n));

    const std::function<void()> recurse = [&]() {
        const int k = static_cast<int>(chosen.size());
        if (k == n) {
            std::vector<long long> high_first;
            high_first.push_back(1);
            high_first.insert(high_first.end(), chosen.begin(), chosen.end());
            if (!prefilter(high_first, beta, region))
                return;
            const screen_verdict v = arithmeticity_check(make_polynomial(high_first), beta);
            if (v.accepted)
                out.push_back(v.candidate);
            return;
        }
        long long lo = -bounds[static_cast<std::size_t>(k)];
        long long hi = bounds[static_cast<std::size_t>(k)];
        for (std::size_t ti = 0; ti < tests.size() && lo <= hi; ++ti) {
            const double t = tests[ti];
            double known = std::pow(t, n);
            for (int i = 0; i < k; ++i)
                known += static_cast<double>(chosen[static_cast<std::size_t>(i)]) *
                         std::pow(t, n - 1 - i);
            double slack = 0.0;
            for (int j = 0; j < n - k - 1; ++j)
                slack += static_cast<double>(bounds[static_cast<std::size_t>(k + 1 + j)]) *
                         std::pow(std::abs(t), n - 2 - k - j);
            const double tp = std::pow(t, n - 1 - k);
            const value_interval& target = targets[ti];
            double lo_t, hi_t;
            if (tp > 0.0) {
                lo_t = (target.lo - known - slack) / tp;
                hi_t = (target.hi - known + slack) / tp;
            } else {
                lo_t = (target.hi - known + slack) / tp;
                hi_t = (target.lo - known - slack) / tp;
            }
            lo = std::max(lo, static_cast<long long>(std::ceil(lo_t - 1e-9)));
            hi = std::min(hi, static_cast<long long>(std::floor(hi_t + 1e-9)));
        }
        for (long long a = lo; a <= hi; ++a) {
            chosen.push_back(a);
            recurse();
            chosen.pop_back();
        }
    };
    recurse();
}

} // namespace

std::vector<candidate_gamma> enumerate_candidates(int beta, int max_degree) {
    const free_ellipse region = slice_ellipse(beta);
    if (max_degree < 1 || max_degree > 6)
        throw std::domain_error("enumerate_candidates: degree cap must lie in 1..6");
    std::vector<candidate_gamma> all;
    for (int n = 1; n <= max_degree; ++n)
        enumerate_at_degree(beta, n, region, all);

    std::vector<candidate_gamma> kept;
    for (const candidate_gamma& c : all) {
        const int_polynomial twin = mirror_polynomial(c.polynomial, beta);
        if (high_first_less(twin.coefficients, c.polynomial.coefficients))
            continue; /* the mirror representative is canonical */
        kept.push_back(c);
    }
    std::sort(kept.begin(), kept.end(), [](const candidate_gamma& a, const candidate_gamma& b) {
        return high_first_less(a.polynomial.coefficients, b.polynomial.coefficients);
    });
    return kept;
}

parabolic_enumeration enumerate_parabolic_candidates() {
    parabolic_enumeration out;
    for (long long b = -7; b <= 0; ++b)
        for (long long c = 1; c <= 15; ++c) {
            if (b * b - 4 * c >= 0)
                continue;
            candidate_gamma cand;
            cand.polynomial = make_polynomial({1, b, c});
            cand.gamma = cplx{-static_cast<double>(b) / 2.0,
                              std::sqrt(static_cast<double>(4 * c - b * b)) / 2.0};
            cand.beta = 0;
            cand.monic = true;
            cand.one_complex_place = true;
            cand.real_roots_in_interval = true; /* no real roots to place */
            cand.irreducible = true;            /* negative discriminant */
            cand.inside_nonfree_ellipse = true; /* |gamma|^2 = c < 16 */
            out.coarse.push_back(cand);
        }
    const battery_context ctx =
        make_battery(cplx{0.0, 0.0}, cplx{-4.0, 0.0}, default_battery_words());
    for (const candidate_gamma& cand : out.coarse) {
        const verdict v = evaluate_battery(ctx, cand.gamma);
        if (v != verdict::excluded && v != verdict::free_product)
            out.refined.push_back(cand);
    }
    return out;
}

std::string candidates_csv(const std::vector<candidate_gamma>& list) {
    std::ostringstream out;
    out << "degree,coefficients,gamma_re,gamma_im,beta,monic,one_complex_place,"
           "real_roots_in_interval,irreducible,inside_nonfree_ellipse\n";
    out << std::setprecision(12);
    for (const candidate_gamma& c : list) {
        out << c.polynomial.degree() << ",";
        for (std::size_t i = c.polynomial.coefficients.size(); i-- > 0;) {
            out << c.polynomial.coefficients[i];
            if (i > 0)
                out << " ";
        }
        out << "," << c.gamma.real() << "," << c.gamma.imag() << "," << c.beta << ","
            << c.monic << "," << c.one_complex_place << "," << c.real_roots_in_interval
            << "," << c.irreducible << "," << c.inside_nonfree_ellipse << "\n";
    }
    return out.str();
}

} // namespace kleinian
