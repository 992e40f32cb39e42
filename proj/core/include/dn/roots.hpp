#pragma once

#include <complex>
#include <vector>

namespace dn {

/// All complex roots of a polynomial, ascending coefficients, by
/// Aberth-Ehrlich simultaneous iteration with Newton polish.  Leading zeros
/// are stripped; roots at 0 from trailing zero coefficients are included.
std::vector<std::complex<double>> poly_roots(const std::vector<std::complex<double>>& coeffs,
                                             double tol = 1e-13, int max_iter = 500);

/// One Newton step refinement loop from a starting guess.
std::complex<double> newton_polish(const std::vector<std::complex<double>>& coeffs,
                                   std::complex<double> z, int iters = 8);

}  // namespace dn
