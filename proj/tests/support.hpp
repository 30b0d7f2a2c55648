#pragma once

/* shared helpers for the test suites: seeded random matrices and parameters */

#include <random>

#include "kleinian/moebius.hpp"

namespace testsupport {

using kleinian::cplx;
using kleinian::moebius_map;

inline std::mt19937& rng() {
    static std::mt19937 gen(0x5eed);
    return gen;
}

inline double unit_normal() {
    static std::normal_distribution<double> dist(0.0, 1.0);
    return dist(rng());
}

inline cplx random_cplx(double scale = 1.0) {
    return cplx(unit_normal(), unit_normal()) * scale;
}

/* random determinant-normalized matrix with entries of moderate size */
inline moebius_map random_map() {
    for (;;) {
        cplx a = random_cplx(), b = random_cplx(), c = random_cplx(), d = random_cplx();
        if (std::abs(a * d - b * c) > 0.05) return moebius_map(a, b, c, d);
    }
}

/* random half turn: trace zero, det 1 */
inline moebius_map random_half_turn() {
    for (;;) {
        cplx a = random_cplx(), b = random_cplx();
        if (std::abs(b) < 0.05) continue;
        cplx c = (-1.0 - a * a) / b;
        return moebius_map(a, b, c, -a);
    }
}

/* elliptic rotation by angle about the axis through 0, infinity */
inline moebius_map rotation(double angle) {
    cplx lambda = std::exp(cplx(0.0, angle / 2.0));
    return moebius_map(lambda, 0.0, 0.0, 1.0 / lambda);
}

} // namespace testsupport
