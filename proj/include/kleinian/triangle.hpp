#pragma once

/* Trigonometry of elliptic-axis configurations: the free-product ellipse and
 * isometric-circle tests for two elliptic generators, axial distance bounds,
 * the tabulated angles at which elliptic axes can cross, and Margulis-type
 * constants for (p,q,r) triangle configurations. */

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "kleinian/moebius.hpp"

namespace kleinian {

/* Elliptic orders are integers >= 2 throughout; 0 stands for the parabolic
 * limit (order infinity) where a formula admits it. */

/* region {|z| + |z - focus| < lambda}: gamma values outside it certify a
 * discrete free product Z_p * Z_q.  The second focus is the origin. */
struct free_ellipse {
    double lambda = 0.0;
    cplx focus; /* -4 sin^2(pi/p) sin^2(pi/q), on the negative real axis */
};

/* lambda_{p,q} = 4 (cos(pi/p) + cos(pi/q))^2 + 4 (cos(pi/p) cos(pi/q) + 1)^2.
 * Orders >= 2 or 0 for the parabolic limit; (2,2) has no ellipse. */
free_ellipse free_product_ellipse(int p, int q);

/* Two elliptics normalized with crossing isometric circles: f fixes 0 and
 * infinity scaled so its isometric disks are tangent, g is conjugated by
 * z -> omega z with |omega| < 1.  True when both sign cases of
 * |sin(pi/q) cos(pi/p) +- omega cos(pi/q) sin(pi/p)| + |omega| sin(pi/p)
 * <= sin(pi/q) hold, which certifies the free product Z_p * Z_q. */
bool isometric_circle_free_test(int p, int q, cplx omega);

/* commutator parameter of the normalized pair above:
 * (omega - 1/omega)^2 sin^2(pi/p) sin^2(pi/q) */
cplx isometric_circle_gamma(int p, int q, cplx omega);

/* largest distance between elliptic axes of orders p, q below which the
 * group must be a free product: arccosh((cos(pi/p) cos(pi/q) + 1) /
 * (sin(pi/p) sin(pi/q))), attained in the (p,q,infinity) triangle group.
 * Finite orders, (2,2) excluded. */
double delta_infinity(int p, int q);

/* minimal distance between an axis of order p >= 7 and a translate of an
 * axis of order q >= 7: arccosh(1 / (2 sin(pi/p) sin(pi/q))) */
double delta_zero_high_order(int p, int q);

/* interior angles of a hyperbolic triangle, radians; 0 marks an ideal
 * vertex.  alpha sits opposite edge 0, beta_angle opposite edge 1,
 * gamma_angle opposite edge 2, and the angle sum is below pi. */
struct triangle_angles {
    double alpha = 0.0;
    double beta_angle = 0.0;
    double gamma_angle = 0.0;
};

/* edge lengths by the angle law of cosines,
 * cosh l_k = (cos a_i cos a_j + cos a_k) / (sin a_i sin a_j).
 * Edge k is infinite when exactly one of its endpoint angles is zero;
 * both endpoints ideal is rejected. */
std::array<double, 3> triangle_edge_lengths(const triangle_angles& angles);

/* one admissible crossing of elliptic axes of orders p and q: the sine of
 * the crossing angle in closed form and numerically, the angle itself, the
 * dihedral angle psi opposite it in the spherical triangle cut out at the
 * crossing, and the finite (or Euclidean cusp) group the crossing generates */
struct angle_table_entry {
    int p = 0;
    int q = 0;
    std::string sin_form; /* closed form as printed, sign marks the obtuse row */
    double sin_theta = 0.0;
    double theta = 0.0;
    double psi = 0.0;
    std::string group;
};

/* all admissible crossings for the unordered pair {p,q}, including the
 * crossings on the sphere at infinity (theta = 0).  An optional group name
 * filters the rows.  Supported pairs: {2,m} and {3,m} for m <= 5 plus the
 * dihedral/cusp pairs (2,2), (2,6), (3,6), (4,4), (5,5), (6,6); order-2
 * pairs admit every rational angle k pi / m, of which only the
 * perpendicular and tangent representatives are listed. */
std::vector<angle_table_entry> spherical_axis_angles(int p, int q,
                                                     const std::string& group = {});

struct elementary_gamma {
    cplx gamma;
    std::string group;
};

/* gamma values of the elementary two-generator groups whose axes cross at a
 * tabulated angle: gamma = (beta_p beta_q / 4)(-sin^2 theta), deduplicated
 * over complementary rows */
std::vector<elementary_gamma> elementary_gammas(int p, int q);

enum class margulis_method : unsigned char {
    general_formula = 0,
    ideal_symmetric = 1,
    inscribed_disk = 2,
    numeric_oracle = 3
};

struct margulis_result {
    double value = 0.0;
    margulis_method method = margulis_method::general_formula;
    std::array<int, 3> orders{};
    triangle_angles angles;
    /* equidistance defect at the optimum (oracle), or the spread across the
     * three edge labelings (general formula); 0 for the closed forms */
    double equidistance_residual = 0.0;
};

/* largest m such that some point is moved at most m by each of three
 * elliptics of the given orders whose axes bound a triangle with the given
 * interior angles.  Dispatches on the data: the all-ideal triangle uses the
 * symmetric closed form, triangles with at most one ideal vertex use the
 * edge-length formula evaluated at every valid edge labeling (results must
 * agree to 1e-8), and the remaining mixed-ideal cases fall back to the
 * numeric minimax search.  Orders must be finite. */
margulis_result margulis_triangle(const std::array<int, 3>& orders,
                                  const triangle_angles& angles);

/* all-ideal case: 1 / sinh^2(m/2) = sum over pairs of
 * 1 / (sin(pi/n_i) sin(pi/n_j)); finite orders only */
margulis_result margulis_ideal(const std::array<int, 3>& orders);

/* radius of the inscribed disk:
 * tanh^2 r = (cos^2 a + cos^2 b + cos^2 c + 2 cos a cos b cos c - 1)
 *          / (2 (1+cos a)(1+cos b)(1+cos c)),
 * rejecting the Euclidean/spherical case where the numerator is <= 0 */
double inscribed_radius(const triangle_angles& angles);

/* three half-turns with pairwise crossing axes: m is twice the inradius of
 * the triangle they bound.  The angles must come from the admissible list. */
margulis_result margulis_222(const triangle_angles& angles);

/* membership in the six admissible families of crossing angles for three
 * order-2 axes: (pi/l, pi/m, pi/n) hyperbolic; (2pi/l, pi/m, pi/m) with
 * 1/l + 1/m < 1/2; (2pi/l, pi/2, pi/l) and (3pi/l, pi/3, pi/l) and
 * (4pi/l, pi/l, pi/l) for l >= 7; and (2pi/7, pi/3, pi/7) */
bool admissible_222_angles(const triangle_angles& angles);

/* how far an elliptic of order n moves a point at distance d from its axis:
 * 2 arcsinh(sin(pi/n) sinh(d)) */
double elliptic_displacement(int n, double distance);

/* derivative-free minimax over the hyperbolic plane of the largest of the
 * three elliptic displacements, started at the incenter; the independent
 * check on the closed forms.  Converges to 1e-10 or throws. */
margulis_result numeric_margulis_oracle(const std::array<int, 3>& orders,
                                        const triangle_angles& angles);

/* hyperbolic area of the orbifold with the given signature:
 * 2 pi (2g - 2 + N + sum (1 - 1/m_j)); rejects non-hyperbolic signatures */
double orbifold_area(int genus, int cusps, const std::vector<int>& cone_orders);

/* one row of the distance tables between spherical triangle points sharing
 * an axis: the admissible orders of the common axis and the distance */
struct spherical_point_entry {
    std::vector<int> axis_orders;
    double distance = 0.0;
};

/* distance table for a pair of spherical-point kinds out of A4, S4, A5;
 * rows in increasing distance, values to the tabulated five or six digits */
std::vector<spherical_point_entry> spherical_point_distances(const std::string& kind_a,
                                                             const std::string& kind_b);

/* single row of the table above */
spherical_point_entry spherical_point_distance_lookup(const std::string& kind_a,
                                                      const std::string& kind_b,
                                                      std::size_t index);

} // namespace kleinian
