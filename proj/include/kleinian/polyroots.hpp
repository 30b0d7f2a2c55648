#pragma once

/* Root finding for complex univariate polynomials.  Coefficients are
 * given low degree first; the leading coefficient must be nonzero after
 * trailing-zero trimming. */

#include <vector>

#include "kleinian/moebius.hpp"

namespace kleinian {

/* all roots, via simultaneous (Durand-Kerner) iteration followed by a
 * Newton polish.  Multiple roots come back as tight clusters; use
 * cluster_roots to merge them.  Throws std::domain_error for the zero or
 * constant polynomial. */
std::vector<cplx> polynomial_roots(std::vector<cplx> coeffs);

/* merges roots closer than tol into their cluster centroid; the returned
 * list carries one entry per cluster */
std::vector<cplx> cluster_roots(const std::vector<cplx>& roots, double tol);

/* Horner evaluation, low degree first */
cplx polynomial_eval(const std::vector<cplx>& coeffs, cplx z);

/* Taylor coefficients of p(center + u) as a polynomial in u */
std::vector<cplx> polynomial_shift(std::vector<cplx> coeffs, cplx center);

} // namespace kleinian
