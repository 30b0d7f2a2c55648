#include "kleinian/triangle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace kleinian {

namespace {

constexpr double pi = std::numbers::pi;

void require_order(int n, const char* where) {
    if (n != 0 && n < 2)
        throw std::domain_error(std::string(where) + ": order must be >= 2 (or 0 for parabolic)");
}

void require_finite_order(int n, const char* where) {
    if (n < 2)
        throw std::domain_error(std::string(where) + ": order must be finite and >= 2");
}

/* sin(pi/n) and cos(pi/n) with n = 0 read as the parabolic limit n -> oo */
double order_sine(int n) { return n == 0 ? 0.0 : std::sin(pi / n); }
double order_cosine(int n) { return n == 0 ? 1.0 : std::cos(pi / n); }

std::array<double, 3> angle_array(const triangle_angles& angles) {
    return {angles.alpha, angles.beta_angle, angles.gamma_angle};
}

void validate_angles(const triangle_angles& angles, const char* where) {
    const auto a = angle_array(angles);
    for (double v : a) {
        if (!(v >= 0.0) || !(v < pi))
            throw std::domain_error(std::string(where) + ": angles must lie in [0, pi)");
    }
    if (!(a[0] + a[1] + a[2] < pi))
        throw std::domain_error(std::string(where) + ": angle sum must be below pi");
}

/* ---- hyperboloid model, signature (+, +, -) ---------------------------- */

struct mvec {
    double x = 0.0, y = 0.0, z = 0.0;
};

double mdot(const mvec& a, const mvec& b) { return a.x * b.x + a.y * b.y - a.z * b.z; }

/* Minkowski-orthogonal to both arguments */
mvec mcross(const mvec& a, const mvec& b) {
    return {a.z * b.y - a.y * b.z, a.x * b.z - a.z * b.x, a.x * b.y - a.y * b.x};
}

/* Unit spacelike normals of the three axes bounding a triangle with the
 * given interior angles (angle k opposite axis k).  The pairwise products
 * realize mdot(n_i, n_j) = -cos(angle_k).  Building n_1 needs a crossing
 * with positive sine, so the largest angle is permuted into that role;
 * the all-ideal triangle is produced from its boundary points instead. */
std::array<mvec, 3> axis_normals(const std::array<double, 3>& angles, const char* where) {
    std::array<mvec, 3> out;
    const int largest = static_cast<int>(
        std::max_element(angles.begin(), angles.end()) - angles.begin());
    if (angles[largest] == 0.0) {
        for (int k = 0; k < 3; ++k) {
            const double ua = pi / 2 + 2 * pi * (k + 1) / 3;
            const double ub = pi / 2 + 2 * pi * (k + 2) / 3;
            const mvec lift_a{std::cos(ua), std::sin(ua), 1.0};
            const mvec lift_b{std::cos(ub), std::sin(ub), 1.0};
            mvec n = mcross(lift_a, lift_b);
            const double norm = std::sqrt(mdot(n, n));
            out[k] = {n.x / norm, n.y / norm, n.z / norm};
        }
        return out;
    }

    /* slots (i, j, largest); the slot-k Gram entry couples the other two */
    const int i = (largest + 1) % 3;
    const int j = (largest + 2) % 3;
    const double g01 = -std::cos(angles[largest]);
    const double s = std::sin(angles[largest]);
    const double g02 = -std::cos(angles[j]);
    const double g12 = -std::cos(angles[i]);

    const mvec n0{1.0, 0.0, 0.0};
    const mvec n1{g01, s, 0.0};
    const double x = g02;
    const double y = (g12 - g01 * g02) / s;
    const double zsq = x * x + y * y - 1.0;
    if (!(zsq > 0.0))
        throw std::domain_error(std::string(where) + ": axes do not bound a hyperbolic triangle");
    const mvec n2{x, y, std::sqrt(zsq)};

    out[i] = n0;
    out[j] = n1;
    out[largest] = n2;
    return out;
}

/* interior point: vertices are projected to the Klein disk, where the
 * triangle is Euclidean-convex, and averaged */
mvec interior_seed(const std::array<mvec, 3>& normals) {
    double u = 0.0, v = 0.0;
    for (int k = 0; k < 3; ++k) {
        mvec c = mcross(normals[(k + 1) % 3], normals[(k + 2) % 3]);
        if (c.z < 0.0)
            c = {-c.x, -c.y, -c.z};
        u += c.x / c.z / 3.0;
        v += c.y / c.z / 3.0;
    }
    const double w = std::sqrt(1.0 - u * u - v * v);
    return {u / w, v / w, 1.0 / w};
}

mvec chart_lift(double u, double v) { return {u, v, std::sqrt(1.0 + u * u + v * v)}; }

/* ---- derivative-free minimax ------------------------------------------- */

struct simplex_vertex {
    double u = 0.0, v = 0.0, f = 0.0;
};

template <typename F>
simplex_vertex nelder_mead(const F& f, double u0, double v0, double scale, int max_iter) {
    std::array<simplex_vertex, 3> s{{{u0, v0, f(u0, v0)},
                                     {u0 + scale, v0, f(u0 + scale, v0)},
                                     {u0, v0 + scale, f(u0, v0 + scale)}}};
    for (int it = 0; it < max_iter; ++it) {
        std::sort(s.begin(), s.end(),
                  [](const simplex_vertex& a, const simplex_vertex& b) { return a.f < b.f; });
        const double size = std::max(std::hypot(s[1].u - s[0].u, s[1].v - s[0].v),
                                     std::hypot(s[2].u - s[0].u, s[2].v - s[0].v));
        if (size < 1e-11 && s[2].f - s[0].f < 1e-12)
            break;

        const double cu = (s[0].u + s[1].u) / 2, cv = (s[0].v + s[1].v) / 2;
        const auto trial = [&](double t) {
            simplex_vertex p;
            p.u = cu + t * (s[2].u - cu);
            p.v = cv + t * (s[2].v - cv);
            p.f = f(p.u, p.v);
            return p;
        };
        const simplex_vertex refl = trial(-1.0);
        if (refl.f < s[0].f) {
            const simplex_vertex wide = trial(-2.0);
            s[2] = wide.f < refl.f ? wide : refl;
        } else if (refl.f < s[1].f) {
            s[2] = refl;
        } else {
            const simplex_vertex con = trial(refl.f < s[2].f ? -0.5 : 0.5);
            if (con.f < std::min(refl.f, s[2].f)) {
                s[2] = con;
            } else { /* shrink toward the best vertex */
                for (int k = 1; k < 3; ++k) {
                    s[k].u = (s[k].u + s[0].u) / 2;
                    s[k].v = (s[k].v + s[0].v) / 2;
                    s[k].f = f(s[k].u, s[k].v);
                }
            }
        }
    }
    std::sort(s.begin(), s.end(),
              [](const simplex_vertex& a, const simplex_vertex& b) { return a.f < b.f; });
    return s[0];
}

/* ---- general Margulis formula per edge labeling ------------------------ */

/* The optimum is equidistant from the three axes and projects onto the edge
 * lying on axis k.  At each endpoint of that edge the geodesic to the
 * optimum splits the interior angle into the weighted parts
 * tan(theta) = s_other sin(angle) / (s_k + s_other cos(angle)), and the
 * distance h to the edge then satisfies
 * sinh^2(h) = (cosh^2 l - 1) / (1 - cosh^2 l + cot^2 + cot^2 + 2 cot cot cosh l),
 * giving m = 2 arcsinh(sin(pi/n_k) sinh(h)). */
double edge_labeling_value(const std::array<int, 3>& orders, const std::array<double, 3>& a,
                           int k) {
    const int i = (k + 1) % 3;
    const int j = (k + 2) % 3;
    const double sk = order_sine(orders[k]);
    const double si = order_sine(orders[i]);
    const double sj = order_sine(orders[j]);

    const double cosh_l = (std::cos(a[i]) * std::cos(a[j]) + std::cos(a[k])) /
                          (std::sin(a[i]) * std::sin(a[j]));
    const auto split = [&](double vertex_angle, double s_other) {
        return std::atan2(s_other * std::sin(vertex_angle), sk + s_other * std::cos(vertex_angle));
    };
    const double ti = split(a[i], sj);
    const double tj = split(a[j], si);
    const double cot_i = std::cos(ti) / std::sin(ti);
    const double cot_j = std::cos(tj) / std::sin(tj);
    const double den =
        1.0 - cosh_l * cosh_l + cot_i * cot_i + cot_j * cot_j + 2.0 * cot_i * cot_j * cosh_l;
    if (!(den > 0.0))
        throw std::domain_error("margulis_triangle: nonpositive denominator in the edge formula");
    const double num = sk * sk * (cosh_l * cosh_l - 1.0);
    return 2.0 * std::asinh(std::sqrt(std::max(0.0, num / den)));
}

/* angle == k pi / n for an integer 2 <= n <= 10^6; 0 when no such n */
long long submultiple(double angle, int k) {
    if (!(angle > 0.0))
        return 0;
    const double exact = k * pi / angle;
    const long long n = std::llround(exact);
    if (n <= k || n > 1000000)
        return 0;
    return std::abs(angle - k * pi / n) <= 1e-9 ? n : 0;
}

bool near(double a, double b) { return std::abs(a - b) <= 1e-9; }

/* ---- crossing-angle tables --------------------------------------------- */

angle_table_entry make_row(int p, int q, std::string form, double sin_value, bool obtuse,
                           double psi, std::string group) {
    angle_table_entry e;
    e.p = p;
    e.q = q;
    e.sin_form = std::move(form);
    e.sin_theta = sin_value;
    e.theta = obtuse ? pi - std::asin(sin_value) : std::asin(sin_value);
    e.psi = psi;
    e.group = std::move(group);
    return e;
}

angle_table_entry cusp_row(int p, int q, std::string group) {
    angle_table_entry e;
    e.p = p;
    e.q = q;
    e.sin_form = "0";
    e.sin_theta = 0.0;
    e.theta = 0.0;
    e.psi = pi - pi / p - pi / q;
    e.group = std::move(group);
    return e;
}

std::vector<angle_table_entry> angle_rows(int p, int q) {
    const double r5 = std::sqrt(5.0);
    std::vector<angle_table_entry> rows;
    const auto acute_obtuse = [&](std::string form, double v, double psi_acute,
                                  double psi_obtuse, const char* group) {
        rows.push_back(make_row(p, q, form, v, false, psi_acute, group));
        rows.push_back(make_row(p, q, "-" + form, v, true, psi_obtuse, group));
    };

    if (p == 2 && q == 2) {
        /* any crossing k pi / m is admissible (dihedral); the perpendicular
         * and tangent representatives stand for the family */
        rows.push_back(make_row(2, 2, "1", 1.0, false, pi / 2, "D2"));
        rows.push_back(cusp_row(2, 2, "Dinf"));
    } else if (p == 2 && q == 3) {
        acute_obtuse("sqrt(2/3)", std::sqrt(2.0 / 3.0), pi / 3, 2 * pi / 3, "A4");
        acute_obtuse("sqrt(1/3)", std::sqrt(1.0 / 3.0), pi / 4, 3 * pi / 4, "S4");
        acute_obtuse("sqrt((3-sqrt(5))/6)", std::sqrt((3.0 - r5) / 6.0), pi / 5, 4 * pi / 5, "A5");
        acute_obtuse("sqrt((3+sqrt(5))/6)", std::sqrt((3.0 + r5) / 6.0), 2 * pi / 5, 3 * pi / 5,
                     "A5");
        rows.push_back(make_row(2, 3, "1", 1.0, false, pi / 2, "D3"));
        rows.push_back(cusp_row(2, 3, "Delta(2,3,6)"));
    } else if (p == 2 && q == 4) {
        rows.push_back(make_row(2, 4, "1/sqrt(2)", 1.0 / std::sqrt(2.0), false, pi / 3, "S4"));
        rows.push_back(make_row(2, 4, "1/sqrt(2)", 1.0 / std::sqrt(2.0), true, 2 * pi / 3, "S4"));
        rows.push_back(make_row(2, 4, "1", 1.0, false, pi / 2, "D4"));
        rows.push_back(cusp_row(2, 4, "Delta(2,4,4)"));
    } else if (p == 2 && q == 5) {
        acute_obtuse("sqrt((5-sqrt(5))/10)", std::sqrt((5.0 - r5) / 10.0), pi / 3, 2 * pi / 3,
                     "A5");
        acute_obtuse("sqrt((5+sqrt(5))/10)", std::sqrt((5.0 + r5) / 10.0), 2 * pi / 5, 3 * pi / 5,
                     "A5");
        rows.push_back(make_row(2, 5, "1", 1.0, false, pi / 2, "D5"));
    } else if (p == 2 && q == 6) {
        rows.push_back(make_row(2, 6, "1", 1.0, false, pi / 2, "D6"));
        rows.push_back(cusp_row(2, 6, "Delta(2,3,6)"));
    } else if (p == 3 && q == 3) {
        acute_obtuse("2/3", 2.0 / 3.0, 2 * pi / 5, 3 * pi / 5, "A5");
        acute_obtuse("2*sqrt(2)/3", 2.0 * std::sqrt(2.0) / 3.0, pi / 2, 2 * pi / 3, "A4");
        rows.push_back(cusp_row(3, 3, "Delta(3,3,3)"));
    } else if (p == 3 && q == 4) {
        acute_obtuse("sqrt(2/3)", std::sqrt(2.0 / 3.0), pi / 2, 3 * pi / 4, "S4");
    } else if (p == 3 && q == 5) {
        acute_obtuse("sqrt((10-2*sqrt(5))/15)", std::sqrt((10.0 - 2.0 * r5) / 15.0), pi / 2,
                     4 * pi / 5, "A5");
        acute_obtuse("sqrt((10+2*sqrt(5))/15)", std::sqrt((10.0 + 2.0 * r5) / 15.0), 3 * pi / 5,
                     2 * pi / 3, "A5");
    } else if (p == 3 && q == 6) {
        rows.push_back(cusp_row(3, 6, "Delta(2,3,6)"));
    } else if (p == 4 && q == 4) {
        rows.push_back(make_row(4, 4, "1", 1.0, false, 2 * pi / 3, "S4"));
        rows.push_back(cusp_row(4, 4, "Delta(2,4,4)"));
    } else if (p == 5 && q == 5) {
        rows.push_back(make_row(5, 5, "2/sqrt(5)", 2.0 / std::sqrt(5.0), false, 2 * pi / 3, "A5"));
        rows.push_back(make_row(5, 5, "-2/sqrt(5)", 2.0 / std::sqrt(5.0), true, 4 * pi / 5, "A5"));
    } else if (p == 6 && q == 6) {
        rows.push_back(cusp_row(6, 6, "Delta(2,3,6)"));
    } else {
        throw std::domain_error("spherical_axis_angles: pair is not tabulated");
    }
    return rows;
}

const std::vector<spherical_point_entry>& point_table(int rank_a, int rank_b) {
    /* distances between spherical points joined by a common axis, keyed by
     * the kinds A4 < S4 < A5; values carry the tabulated digits only */
    static const std::vector<spherical_point_entry> a4a4{
        {{3}, 0.69314}, {{3}, 0.76914}, {{3}, 0.92905}, {{3}, 1.0050}, {{2}, 1.06128}};
    static const std::vector<spherical_point_entry> a4s4{
        {{3}, 1.01481}, {{3}, 1.31696}, {{3}, 1.43364}, {{2}, 1.43796}, {{3}, 1.49279}};
    static const std::vector<spherical_point_entry> a4a5{
        {{3}, 1.22646}, {{3}, 1.62669}, {{2}, 1.76110}, {{3}, 1.87988}, {{3}, 1.98339}};
    static const std::vector<spherical_point_entry> s4s4{
        {{4}, 1.06128},    {{4}, 1.12838}, {{3, 4}, 1.31696}, {{4}, 1.38433},
        {{4}, 1.48710},    {{3}, 1.56680}, {{2}, 1.70004}};
    static const std::vector<spherical_point_entry> s4a5{
        {{3}, 1.22646}, {{3}, 1.98339}, {{3}, 2.13275}, {{2}, 2.27311},
        {{3}, 2.34868}, {{2}, 2.35576}, {{2}, 2.83641}};
    static const std::vector<spherical_point_entry> a5a5{
        {{5}, 1.38257}, {{5}, 1.61692}, {{3}, 1.90285}, {{5}, 2.04442},
        {{5}, 2.16787}, {{5}, 2.22404}, {{2}, 2.82643}};
    static const std::vector<spherical_point_entry>* grid[3][3] = {
        {&a4a4, &a4s4, &a4a5}, {&a4s4, &s4s4, &s4a5}, {&a4a5, &s4a5, &a5a5}};
    return *grid[rank_a][rank_b];
}

int point_kind_rank(const std::string& kind) {
    if (kind == "A4")
        return 0;
    if (kind == "S4")
        return 1;
    if (kind == "A5")
        return 2;
    throw std::domain_error("spherical_point_distances: kind must be A4, S4 or A5");
}

} // namespace

/* ---- free-product criteria --------------------------------------------- */

free_ellipse free_product_ellipse(int p, int q) {
    require_order(p, "free_product_ellipse");
    require_order(q, "free_product_ellipse");
    if (p == 2 && q == 2)
        throw std::domain_error("free_product_ellipse: (2,2) has no free-product region");
    if (p > q)
        std::swap(p, q); /* keeps the result bit-identical under argument swap */
    const double cp = order_cosine(p), cq = order_cosine(q);
    const double sp = order_sine(p), sq = order_sine(q);
    free_ellipse e;
    e.lambda = 4.0 * (cp + cq) * (cp + cq) + 4.0 * (cp * cq + 1.0) * (cp * cq + 1.0);
    e.focus = cplx{-4.0 * sp * sp * sq * sq, 0.0};
    return e;
}

bool isometric_circle_free_test(int p, int q, cplx omega) {
    require_finite_order(p, "isometric_circle_free_test");
    require_finite_order(q, "isometric_circle_free_test");
    if (std::abs(omega) >= 1.0)
        return false; /* normalization puts g's circles strictly inside f's */
    const double cp = order_cosine(p), cq = order_cosine(q);
    const double sp = order_sine(p), sq = order_sine(q);
    const cplx cross = omega * cq * sp;
    const double margin = std::abs(omega) * sp;
    return std::abs(sq * cp + cross) + margin <= sq && std::abs(sq * cp - cross) + margin <= sq;
}

cplx isometric_circle_gamma(int p, int q, cplx omega) {
    require_finite_order(p, "isometric_circle_gamma");
    require_finite_order(q, "isometric_circle_gamma");
    if (omega == cplx{})
        throw std::domain_error("isometric_circle_gamma: omega must be nonzero");
    const cplx d = omega - 1.0 / omega;
    const double sp = order_sine(p), sq = order_sine(q);
    return d * d * sp * sp * sq * sq;
}

double delta_infinity(int p, int q) {
    require_finite_order(p, "delta_infinity");
    require_finite_order(q, "delta_infinity");
    if (p == 2 && q == 2)
        throw std::domain_error("delta_infinity: (2,2) carries no distance bound");
    const double arg = (order_cosine(p) * order_cosine(q) + 1.0) / (order_sine(p) * order_sine(q));
    return std::acosh(arg);
}

double delta_zero_high_order(int p, int q) {
    if (p < 7 || q < 7)
        throw std::domain_error("delta_zero_high_order: orders must be >= 7");
    return std::acosh(1.0 / (2.0 * order_sine(p) * order_sine(q)));
}

/* ---- triangle trigonometry --------------------------------------------- */

std::array<double, 3> triangle_edge_lengths(const triangle_angles& angles) {
    validate_angles(angles, "triangle_edge_lengths");
    const auto a = angle_array(angles);
    std::array<double, 3> lengths{};
    for (int k = 0; k < 3; ++k) {
        const double ai = a[(k + 1) % 3];
        const double aj = a[(k + 2) % 3];
        if (ai == 0.0 && aj == 0.0)
            throw std::domain_error("triangle_edge_lengths: edge joins two ideal vertices");
        if (ai == 0.0 || aj == 0.0) {
            lengths[k] = std::numeric_limits<double>::infinity();
            continue;
        }
        const double arg = (std::cos(ai) * std::cos(aj) + std::cos(a[k])) /
                           (std::sin(ai) * std::sin(aj));
        lengths[k] = std::acosh(std::max(1.0, arg));
    }
    return lengths;
}

std::vector<angle_table_entry> spherical_axis_angles(int p, int q, const std::string& group) {
    require_finite_order(p, "spherical_axis_angles");
    require_finite_order(q, "spherical_axis_angles");
    auto rows = angle_rows(std::min(p, q), std::max(p, q));
    if (!group.empty()) {
        std::erase_if(rows,
                      [&](const angle_table_entry& e) { return e.group != group; });
    }
    return rows;
}

std::vector<elementary_gamma> elementary_gammas(int p, int q) {
    const double beta_p = -4.0 * order_sine(p) * order_sine(p);
    const double beta_q = -4.0 * order_sine(q) * order_sine(q);
    std::vector<elementary_gamma> out;
    for (const auto& row : spherical_axis_angles(p, q)) {
        const double value = beta_p * beta_q / 4.0 * (-row.sin_theta * row.sin_theta);
        const bool seen = std::any_of(out.begin(), out.end(), [&](const elementary_gamma& g) {
            return std::abs(g.gamma - cplx{value, 0.0}) < 1e-12 && g.group == row.group;
        });
        if (!seen)
            out.push_back({cplx{value, 0.0}, row.group});
    }
    return out;
}

/* ---- Margulis constants ------------------------------------------------ */

margulis_result margulis_triangle(const std::array<int, 3>& orders,
                                  const triangle_angles& angles) {
    for (int n : orders)
        require_finite_order(n, "margulis_triangle");
    validate_angles(angles, "margulis_triangle");
    const auto a = angle_array(angles);

    if (a[0] == 0.0 && a[1] == 0.0 && a[2] == 0.0) {
        margulis_result out = margulis_ideal(orders);
        out.angles = angles;
        return out;
    }

    double best = 0.0, worst = 0.0;
    int evaluated = 0;
    for (int k = 0; k < 3; ++k) {
        if (a[(k + 1) % 3] == 0.0 || a[(k + 2) % 3] == 0.0)
            continue; /* the split angles degenerate at an ideal endpoint */
        const double value = edge_labeling_value(orders, a, k);
        if (evaluated == 0) {
            best = worst = value;
        } else {
            best = std::min(best, value);
            worst = std::max(worst, value);
        }
        ++evaluated;
    }
    if (evaluated == 0) /* two ideal vertices: no edge has two finite endpoints */
        return numeric_margulis_oracle(orders, angles);
    if (worst - best > 1e-8)
        throw std::runtime_error("margulis_triangle: edge labelings disagree");

    margulis_result out;
    out.value = best;
    out.method = margulis_method::general_formula;
    out.orders = orders;
    out.angles = angles;
    out.equidistance_residual = worst - best;
    return out;
}

margulis_result margulis_ideal(const std::array<int, 3>& orders) {
    for (int n : orders)
        require_finite_order(n, "margulis_ideal");
    double total = 0.0;
    for (int k = 0; k < 3; ++k)
        total += 1.0 / (order_sine(orders[k]) * order_sine(orders[(k + 1) % 3]));
    margulis_result out;
    out.value = 2.0 * std::asinh(1.0 / std::sqrt(total));
    out.method = margulis_method::ideal_symmetric;
    out.orders = orders;
    return out;
}

double inscribed_radius(const triangle_angles& angles) {
    validate_angles(angles, "inscribed_radius");
    const auto a = angle_array(angles);
    const double ca = std::cos(a[0]), cb = std::cos(a[1]), cc = std::cos(a[2]);
    const double num = ca * ca + cb * cb + cc * cc + 2.0 * ca * cb * cc - 1.0;
    if (!(num > 0.0))
        throw std::domain_error("inscribed_radius: triangle is not hyperbolic");
    const double den = 2.0 * (1.0 + ca) * (1.0 + cb) * (1.0 + cc);
    return std::atanh(std::sqrt(num / den));
}

margulis_result margulis_222(const triangle_angles& angles) {
    validate_angles(angles, "margulis_222");
    if (!admissible_222_angles(angles))
        throw std::domain_error("margulis_222: angles are not in the admissible families");
    margulis_result out;
    out.value = 2.0 * inscribed_radius(angles);
    out.method = margulis_method::inscribed_disk;
    out.orders = {2, 2, 2};
    out.angles = angles;
    return out;
}

bool admissible_222_angles(const triangle_angles& angles) {
    const auto a = angle_array(angles);
    for (double v : a) {
        if (!(v >= 0.0) || !(v < pi))
            return false;
    }
    if (!(a[0] + a[1] + a[2] < pi))
        return false;

    /* (pi/l, pi/m, pi/n), hyperbolic, with 0 read as pi/infinity; the sum
     * condition is checked in exact arithmetic */
    {
        bool shape = true;
        long long num = 0, den = 1; /* running sum of 1/n */
        for (double v : a) {
            if (v == 0.0)
                continue;
            const long long n = submultiple(v, 1);
            if (n == 0) {
                shape = false;
                break;
            }
            num = num * n + den;
            den *= n;
        }
        if (shape && num < den)
            return true;
    }

    for (int t = 0; t < 3; ++t) {
        const double head = a[t];
        const double u = a[(t + 1) % 3];
        const double v = a[(t + 2) % 3];

        /* (2 pi/l, pi/m, pi/m) with 1/l + 1/m < 1/2 */
        if (near(u, v) && u > 0.0) {
            const long long l = submultiple(head, 2);
            const long long m = submultiple(u, 1);
            if (l != 0 && m != 0 && 2 * (l + m) < l * m)
                return true;
        }
        /* (2 pi/l, pi/2, pi/l), l >= 7 */
        if (near(head, pi / 2)) {
            const long long l = submultiple(v, 1);
            if (l >= 7 && near(u, 2 * pi / l))
                return true;
            const long long l2 = submultiple(u, 1);
            if (l2 >= 7 && near(v, 2 * pi / l2))
                return true;
        }
        /* (3 pi/l, pi/3, pi/l), l >= 7 */
        if (near(head, pi / 3)) {
            const long long l = submultiple(v, 1);
            if (l >= 7 && near(u, 3 * pi / l))
                return true;
            const long long l2 = submultiple(u, 1);
            if (l2 >= 7 && near(v, 3 * pi / l2))
                return true;
        }
        /* (4 pi/l, pi/l, pi/l), l >= 7 */
        if (near(u, v)) {
            const long long l = submultiple(u, 1);
            if (l >= 7 && near(head, 4 * pi / l))
                return true;
        }
        /* the sporadic (2 pi/7, pi/3, pi/7) */
        if (near(head, 2 * pi / 7) &&
            ((near(u, pi / 3) && near(v, pi / 7)) || (near(v, pi / 3) && near(u, pi / 7))))
            return true;
    }
    return false;
}

double elliptic_displacement(int n, double distance) {
    require_finite_order(n, "elliptic_displacement");
    if (!(distance >= 0.0))
        throw std::domain_error("elliptic_displacement: distance must be >= 0");
    return 2.0 * std::asinh(order_sine(n) * std::sinh(distance));
}

margulis_result numeric_margulis_oracle(const std::array<int, 3>& orders,
                                        const triangle_angles& angles) {
    for (int n : orders)
        require_finite_order(n, "numeric_margulis_oracle");
    validate_angles(angles, "numeric_margulis_oracle");

    const auto normals = axis_normals(angle_array(angles), "numeric_margulis_oracle");
    const std::array<double, 3> sines{order_sine(orders[0]), order_sine(orders[1]),
                                      order_sine(orders[2])};
    const auto objective = [&](double u, double v) {
        const mvec x = chart_lift(u, v);
        double worst = 0.0;
        for (int k = 0; k < 3; ++k)
            worst = std::max(worst, 2.0 * std::asinh(sines[k] * std::abs(mdot(x, normals[k]))));
        return worst;
    };

    const mvec seed = interior_seed(normals);
    simplex_vertex best{seed.x, seed.y, objective(seed.x, seed.y)};
    /* fresh simplexes around the running best polish the non-smooth minimum */
    for (double scale : {0.5, 1e-2, 1e-3, 1e-4, 1e-6, 1e-7}) {
        const simplex_vertex next = nelder_mead(objective, best.u, best.v, scale, 4000);
        if (next.f < best.f)
            best = next;
    }

    const mvec x = chart_lift(best.u, best.v);
    double low = std::numeric_limits<double>::infinity(), high = 0.0;
    for (int k = 0; k < 3; ++k) {
        const double move = 2.0 * std::asinh(sines[k] * std::abs(mdot(x, normals[k])));
        low = std::min(low, move);
        high = std::max(high, move);
    }
    if (high - low > 1e-8)
        throw std::runtime_error("numeric_margulis_oracle: search left an equidistance defect");

    margulis_result out;
    out.value = best.f;
    out.method = margulis_method::numeric_oracle;
    out.orders = orders;
    out.angles = angles;
    out.equidistance_residual = high - low;
    return out;
}

double orbifold_area(int genus, int cusps, const std::vector<int>& cone_orders) {
    if (genus < 0 || cusps < 0)
        throw std::domain_error("orbifold_area: genus and cusps must be >= 0");
    double excess = 2.0 * genus - 2.0 + cusps;
    for (int m : cone_orders) {
        require_finite_order(m, "orbifold_area");
        excess += 1.0 - 1.0 / m;
    }
    if (excess <= 1e-12)
        throw std::domain_error("orbifold_area: signature is not hyperbolic");
    return 2.0 * pi * excess;
}

std::vector<spherical_point_entry> spherical_point_distances(const std::string& kind_a,
                                                             const std::string& kind_b) {
    return point_table(point_kind_rank(kind_a), point_kind_rank(kind_b));
}

spherical_point_entry spherical_point_distance_lookup(const std::string& kind_a,
                                                      const std::string& kind_b,
                                                      std::size_t index) {
    const auto& table = point_table(point_kind_rank(kind_a), point_kind_rank(kind_b));
    return table.at(index);
}

} // namespace kleinian
