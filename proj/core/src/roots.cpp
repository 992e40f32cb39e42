#include "dn/roots.hpp"

#include <cmath>

#include "dn/errors.hpp"

namespace dn {

namespace {

using cx = std::complex<double>;

// p(z) and p'(z) by Horner.
std::pair<cx, cx> eval_with_derivative(const std::vector<cx>& c, cx z) {
    cx p = 0, dp = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        dp = dp * z + p;
        p = p * z + *it;
    }
    return {p, dp};
}

}  // namespace

cx newton_polish(const std::vector<cx>& coeffs, cx z, int iters) {
    for (int k = 0; k < iters; ++k) {
        auto [p, dp] = eval_with_derivative(coeffs, z);
        if (std::abs(dp) == 0.0) break;
        cx step = p / dp;
        z -= step;
        if (std::abs(step) <= 1e-16 * (1.0 + std::abs(z))) break;
    }
    return z;
}

std::vector<cx> poly_roots(const std::vector<cx>& coeffs, double tol, int max_iter) {
    std::vector<cx> c = coeffs;
    while (!c.empty() && std::abs(c.back()) == 0.0) c.pop_back();
    if (c.size() <= 1) throw Error("poly_roots: degree < 1");

    std::vector<cx> roots;
    // Factor out roots at the origin.
    std::size_t shift = 0;
    while (shift < c.size() - 1 && std::abs(c[shift]) == 0.0) ++shift;
    for (std::size_t k = 0; k < shift; ++k) roots.push_back(0.0);
    c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(shift));

    const std::size_t deg = c.size() - 1;
    if (deg == 0) return roots;

    // Cauchy-style radius for the initial ring of guesses.
    double lead = std::abs(c.back());
    double radius = 0.0;
    for (std::size_t k = 0; k + 1 < c.size(); ++k)
        radius = std::max(radius,
                          std::pow(std::abs(c[k]) / lead,
                                   1.0 / static_cast<double>(deg - k)));
    radius = 2.0 * std::max(radius, 0.5);

    std::vector<cx> z(deg);
    const double golden = 0.4;  // irrational-ish phase offset avoids symmetry locks
    for (std::size_t k = 0; k < deg; ++k) {
        double ang = 2.0 * M_PI * (static_cast<double>(k) / static_cast<double>(deg) + golden);
        z[k] = radius * cx(std::cos(ang), std::sin(ang));
    }

    for (int it = 0; it < max_iter; ++it) {
        double worst = 0.0;
        for (std::size_t k = 0; k < deg; ++k) {
            auto [p, dp] = eval_with_derivative(c, z[k]);
            cx ratio = (std::abs(dp) == 0.0) ? cx(0.0) : p / dp;
            cx rep = 0;
            for (std::size_t j = 0; j < deg; ++j)
                if (j != k) rep += 1.0 / (z[k] - z[j]);
            cx denom = 1.0 - ratio * rep;
            cx step = (std::abs(denom) == 0.0) ? ratio : ratio / denom;
            z[k] -= step;
            worst = std::max(worst, std::abs(step) / (1.0 + std::abs(z[k])));
        }
        if (worst < tol) break;
    }
    for (auto& r : z) r = newton_polish(c, r);
    roots.insert(roots.end(), z.begin(), z.end());
    return roots;
}

}  // namespace dn
