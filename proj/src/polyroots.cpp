#include "kleinian/polyroots.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kleinian {

namespace {

constexpr int max_iterations = 600;

void trim_leading_zeros(std::vector<cplx>& coeffs)
{
    while (!coeffs.empty() && std::abs(coeffs.back()) == 0.0)
        coeffs.pop_back();
}

} // namespace

cplx polynomial_eval(const std::vector<cplx>& coeffs, cplx z)
{
    cplx acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = acc * z + *it;
    return acc;
}

std::vector<cplx> polynomial_shift(std::vector<cplx> coeffs, cplx center)
{
    /* repeated synthetic division: after the k-th pass the constant slot
     * of the partial quotient holds the k-th Taylor coefficient */
    const int n = static_cast<int>(coeffs.size());
    for (int i = 0; i < n; ++i)
        for (int j = n - 2; j >= i; --j)
            coeffs[static_cast<std::size_t>(j)] +=
                center * coeffs[static_cast<std::size_t>(j) + 1];
    return coeffs;
}

std::vector<cplx> polynomial_roots(std::vector<cplx> coeffs)
{
    trim_leading_zeros(coeffs);
    if (coeffs.size() < 2)
        throw std::domain_error("root finding needs a polynomial of degree at least 1");

    const std::size_t degree = coeffs.size() - 1;
    cplx lead = coeffs.back();
    for (auto& c : coeffs)
        c /= lead;

    /* Cauchy-style inclusion radius for the initial configuration */
    double radius = 0.0;
    for (std::size_t k = 0; k < degree; ++k)
        radius = std::max(radius, std::abs(coeffs[k]));
    radius = 1.0 + radius;

    std::vector<cplx> roots(degree);
    const cplx seed(0.4, 0.9); /* standard non-real seed avoiding symmetry locks */
    cplx spin = 1;
    for (std::size_t i = 0; i < degree; ++i) {
        spin *= seed;
        roots[i] = radius * spin / std::abs(spin);
        roots[i] *= 0.3 + 0.7 * (static_cast<double>(i) + 1.0) / static_cast<double>(degree);
    }

    for (int iter = 0; iter < max_iterations; ++iter) {
        double worst_step = 0.0;
        for (std::size_t i = 0; i < degree; ++i) {
            cplx denom = 1;
            for (std::size_t j = 0; j < degree; ++j)
                if (j != i)
                    denom *= roots[i] - roots[j];
            if (std::abs(denom) == 0.0) {
                roots[i] += cplx(1e-8, 1e-8);
                continue;
            }
            cplx step = polynomial_eval(coeffs, roots[i]) / denom;
            roots[i] -= step;
            worst_step = std::max(worst_step, std::abs(step));
        }
        if (worst_step < 1e-14 * (1.0 + radius))
            break;
    }

    /* Newton polish sharpens simple roots; clustered multiple roots are
     * left for cluster_roots to merge */
    std::vector<cplx> deriv(degree);
    for (std::size_t k = 1; k <= degree; ++k)
        deriv[k - 1] = static_cast<double>(k) * coeffs[k];
    for (auto& r : roots)
        for (int it = 0; it < 4; ++it) {
            cplx d = polynomial_eval(deriv, r);
            if (std::abs(d) < 1e-12)
                break;
            r -= polynomial_eval(coeffs, r) / d;
        }
    return roots;
}

std::vector<cplx> cluster_roots(const std::vector<cplx>& roots, double tol)
{
    std::vector<cplx> centers;
    std::vector<int> counts;
    std::vector<cplx> pending = roots;
    std::sort(pending.begin(), pending.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    for (cplx r : pending) {
        bool merged = false;
        for (std::size_t i = 0; i < centers.size(); ++i) {
            if (std::abs(r - centers[i]) < tol) {
                centers[i] = (centers[i] * static_cast<double>(counts[i]) + r) /
                             static_cast<double>(counts[i] + 1);
                ++counts[i];
                merged = true;
                break;
            }
        }
        if (!merged) {
            centers.push_back(r);
            counts.push_back(1);
        }
    }
    return centers;
}

} // namespace kleinian
