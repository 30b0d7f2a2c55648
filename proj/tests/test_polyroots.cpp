#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "kleinian/polyroots.hpp"

using namespace kleinian;

namespace {

double nearest_distance(const std::vector<cplx>& roots, cplx target)
{
    double best = 1e300;
    for (const cplx& r : roots)
        best = std::min(best, std::abs(r - target));
    return best;
}

} // namespace

TEST_CASE("roots of factored real cubics and quadratics are recovered")
{
    /* (z - 1)(z - 2)(z - 3) */
    const std::vector<cplx> cubic{-6.0, 11.0, -6.0, 1.0};
    const std::vector<cplx> roots = polynomial_roots(cubic);
    REQUIRE(roots.size() == 3);
    CHECK(nearest_distance(roots, cplx(1.0)) < 1e-10);
    CHECK(nearest_distance(roots, cplx(2.0)) < 1e-10);
    CHECK(nearest_distance(roots, cplx(3.0)) < 1e-10);

    const std::vector<cplx> quadratic{1.0, 0.0, 1.0}; /* z^2 + 1 */
    const std::vector<cplx> pair = polynomial_roots(quadratic);
    REQUIRE(pair.size() == 2);
    CHECK(nearest_distance(pair, cplx(0.0, 1.0)) < 1e-12);
    CHECK(nearest_distance(pair, cplx(0.0, -1.0)) < 1e-12);
}

TEST_CASE("random polynomials evaluate to zero at every reported root")
{
    std::mt19937 gen(0x700f5);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<cplx> coeffs;
        for (int k = 0; k <= 8; ++k)
            coeffs.emplace_back(unif(gen), unif(gen));
        if (std::abs(coeffs.back()) < 0.1)
            coeffs.back() += 1.0;
        double scale = 0.0;
        for (const cplx& c : coeffs)
            scale += std::abs(c);
        const std::vector<cplx> roots = polynomial_roots(coeffs);
        REQUIRE(roots.size() == 8);
        for (const cplx& root : roots) {
            const double bound = std::max(1.0, std::pow(std::abs(root), 8.0));
            CHECK(std::abs(polynomial_eval(coeffs, root)) < 1e-8 * scale * bound);
        }
    }
}

TEST_CASE("multiple roots cluster to an accurate centroid")
{
    /* (z - 2)^4 */
    const std::vector<cplx> quartic{16.0, -32.0, 24.0, -8.0, 1.0};
    const std::vector<cplx> roots = polynomial_roots(quartic);
    REQUIRE(roots.size() == 4);
    const std::vector<cplx> centers = cluster_roots(roots, 1e-2);
    REQUIRE(centers.size() == 1);
    CHECK(std::abs(centers[0] - 2.0) < 1e-3);
}

TEST_CASE("cluster merging preserves well separated roots")
{
    const std::vector<cplx> roots{cplx(1.0), cplx(1.001), cplx(5.0)};
    const std::vector<cplx> merged = cluster_roots(roots, 0.01);
    REQUIRE(merged.size() == 2);
    CHECK(nearest_distance(merged, cplx(1.0005)) < 1e-12);
    CHECK(nearest_distance(merged, cplx(5.0)) < 1e-12);
}

TEST_CASE("degenerate inputs are rejected")
{
    CHECK_THROWS_AS(polynomial_roots({}), std::domain_error);
    CHECK_THROWS_AS(polynomial_roots({cplx(3.0)}), std::domain_error);
    /* leading zeros trim away the whole degree */
    CHECK_THROWS_AS(polynomial_roots({cplx(3.0), cplx(0.0), cplx(0.0)}), std::domain_error);
}

TEST_CASE("taylor shift recentres polynomials exactly")
{
    /* z^2 shifted to center 3: (u + 3)^2 = 9 + 6u + u^2 */
    const std::vector<cplx> square{0.0, 0.0, 1.0};
    const std::vector<cplx> shifted = polynomial_shift(square, cplx(3.0));
    REQUIRE(shifted.size() == 3);
    CHECK(std::abs(shifted[0] - 9.0) < 1e-14);
    CHECK(std::abs(shifted[1] - 6.0) < 1e-14);
    CHECK(std::abs(shifted[2] - 1.0) < 1e-14);

    std::mt19937 gen(0x700f6);
    std::uniform_real_distribution<double> unif(-1.5, 1.5);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<cplx> coeffs;
        for (int k = 0; k <= 6; ++k)
            coeffs.emplace_back(unif(gen), unif(gen));
        const cplx center(unif(gen), unif(gen));
        const std::vector<cplx> about = polynomial_shift(coeffs, center);
        for (int probe = 0; probe < 8; ++probe) {
            const cplx u(unif(gen), unif(gen));
            const cplx direct = polynomial_eval(coeffs, center + u);
            const cplx recentred = polynomial_eval(about, u);
            CHECK(std::abs(direct - recentred) < 1e-10 * (1.0 + std::abs(direct)));
        }
    }
}

TEST_CASE("horner evaluation matches the power expansion")
{
    const std::vector<cplx> coeffs{cplx(2.0), cplx(-1.0, 1.0), cplx(0.5)};
    const cplx z(0.3, -0.7);
    const cplx expected = cplx(2.0) + cplx(-1.0, 1.0) * z + cplx(0.5) * z * z;
    CHECK(std::abs(polynomial_eval(coeffs, z) - expected) < 1e-15);
    CHECK(std::abs(polynomial_eval({}, z)) == 0.0);
}
