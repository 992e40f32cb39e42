#include "dn/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "dn/roots.hpp"

namespace dn {

CMat t_matrix(int n) {
    CMat t(n + 1, n + 1);
    for (int i = 0; i <= n; ++i) t.at(i, i) = static_cast<double>(i);
    return t;
}

CMat j_matrix(int n) {
    CMat j(n + 1, n + 1);
    for (int i = 0; i <= n; ++i) j.at(i, n - i) = 1.0;
    return j;
}

CMat to_cmat(const DNMatrix& a) {
    const int n = a.n();
    CMat m(n + 1, n + 1);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) m.at(i, j) = a.entry_c(i, j);
    return m;
}

std::vector<cx> char_poly(const DNMatrix& a) {
    const int n = a.n();
    // P_{j+1}(t) = (t - a_jj) P_j - sum_{i<j} a_ij P_i, P_0 = 1.
    std::vector<std::vector<cx>> p(static_cast<std::size_t>(n) + 2);
    p[0] = {1.0};
    for (int j = 0; j <= n; ++j) {
        std::vector<cx> next(p[static_cast<std::size_t>(j)].size() + 1, 0.0);
        for (std::size_t k = 0; k < p[static_cast<std::size_t>(j)].size(); ++k) {
            next[k + 1] += p[static_cast<std::size_t>(j)][k];
            next[k] -= a.entry_c(j, j) * p[static_cast<std::size_t>(j)][k];
        }
        for (int i = 0; i < j; ++i)
            for (std::size_t k = 0; k < p[static_cast<std::size_t>(i)].size(); ++k)
                next[k] -= a.entry_c(i, j) * p[static_cast<std::size_t>(i)][k];
        p[static_cast<std::size_t>(j) + 1] = std::move(next);
    }
    return p.back();
}

ConnectionSpectrum eigendecompose(const DNMatrix& a, double tol) {
    const int n = a.n();
    ConnectionSpectrum spec;
    spec.n = n;
    spec.a = to_cmat(a);

    auto chi = char_poly(a);
    auto roots = poly_roots(chi);
    std::sort(roots.begin(), roots.end(), [](cx x, cx y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    double scale = 1.0;
    for (auto r : roots) scale = std::max(scale, std::abs(r));
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            if (std::abs(roots[i] - roots[j]) <= tol * scale)
                throw DegenerateSpectrum("two eigenvalues coincide within tolerance");
    spec.lambdas = roots;

    // Back-substitution using the unit subdiagonal: with v_n = 1,
    //   v_{i-1} = lambda v_i - sum_{j >= i} a_ij v_j.
    spec.c = CMat(n + 1, n + 1);
    for (int col = 0; col <= n; ++col) {
        cx lambda = roots[static_cast<std::size_t>(col)];
        std::vector<cx> v(static_cast<std::size_t>(n) + 1, 0.0);
        v[static_cast<std::size_t>(n)] = 1.0;
        for (int i = n; i >= 1; --i) {
            cx s = 0;
            for (int j = i; j <= n; ++j) s += a.entry_c(i, j) * v[static_cast<std::size_t>(j)];
            v[static_cast<std::size_t>(i) - 1] = lambda * v[static_cast<std::size_t>(i)] - s;
        }
        for (int i = 0; i <= n; ++i) spec.c.at(i, col) = v[static_cast<std::size_t>(i)];
    }
    return spec;
}

void normalize_basis(ConnectionSpectrum& spec, double tol) {
    const int n = spec.n;
    for (int col = 0; col <= n; ++col) {
        // u^t J u with J the anti-diagonal pairing.
        cx q = 0;
        for (int i = 0; i <= n; ++i) q += spec.c.at(i, col) * spec.c.at(n - i, col);
        double colnorm = 0;
        for (int i = 0; i <= n; ++i) colnorm += std::norm(spec.c.at(i, col));
        if (std::abs(q) <= tol * colnorm)
            throw NullVector("eigenvector is numerically isotropic for the pairing");
        cx scale = 1.0 / std::sqrt(q);  // principal branch
        for (int i = 0; i <= n; ++i) spec.c.at(i, col) *= scale;
    }
    spec.normalized = true;
}

void residue_matrices(ConnectionSpectrum& spec) {
    if (!spec.normalized) throw Error("residue_matrices needs a normalized basis");
    const int n = spec.n;
    spec.s.clear();
    spec.s.reserve(static_cast<std::size_t>(n) + 1);
    for (int jcol = 0; jcol <= n; ++jcol) {
        CMat s(n + 1, n + 1);
        // S_j = -(T u_j)(J u_j)^t, using C^{-1} = C^t J.
        for (int i = 0; i <= n; ++i) {
            cx ti = static_cast<double>(i) * spec.c.at(i, jcol);
            for (int k = 0; k <= n; ++k) s.at(i, k) = -ti * spec.c.at(n - k, jcol);
        }
        spec.s.push_back(std::move(s));
    }
}

CMat connection_rhs(const ConnectionSpectrum& spec, cx t, double tol) {
    for (auto l : spec.lambdas)
        if (std::abs(t - l) <= tol) throw NearSingularity("evaluation point touches a singularity");
    const int n = spec.n;
    CMat shifted = spec.a;
    for (int i = 0; i <= n; ++i) shifted.at(i, i) -= t;
    return t_matrix(n) * LU(shifted).inverse();
}

CMat connection_rhs_partial_fractions(const ConnectionSpectrum& spec, cx t) {
    if (spec.s.empty()) throw Error("residue matrices not computed");
    CMat sum(spec.n + 1, spec.n + 1);
    for (std::size_t j = 0; j < spec.s.size(); ++j)
        sum += spec.s[j] * (1.0 / (t - spec.lambdas[j]));
    return sum;
}

CMat FirstModelConnection::eval(cx z) const { return constant + pole * (1.0 / z); }

FirstModelConnection first_model_connection(const DNMatrix& a) {
    FirstModelConnection f;
    f.constant = to_cmat(a);
    const int n = a.n();
    f.pole = CMat(n + 1, n + 1);
    for (int i = 0; i <= n; ++i) f.pole.at(i, i) = -static_cast<double>(i + 1);
    return f;
}

NilpotencyCertificate infinity_exponents(const DNMatrix& a, int truncation) {
    const int n = a.n();
    if (truncation < n + 2) throw TruncationTooSmall("truncation must be at least n+2");
    SeriesMatrix g = SeriesMatrix::geometric(t_matrix(n), to_cmat(a), truncation);
    std::vector<int> h(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) h[static_cast<std::size_t>(i)] = -i;
    SeriesMatrix sheared = g.shear(h);

    NilpotencyCertificate cert;
    cert.truncation = truncation;
    cert.n_matrix = sheared.constant_term();
    CMat pow = CMat::identity(n + 1);
    cert.index = 0;
    for (int k = 1; k <= n + 2; ++k) {
        pow = pow * cert.n_matrix;
        if (k == n) cert.pow_n_norm = pow.norm_fro();
        if (k == n + 1) cert.pow_np1_norm = pow.norm_fro();
        if (pow.norm_fro() == 0.0) {
            cert.index = k;
            break;
        }
    }
    if (n == 0) cert.pow_n_norm = CMat::identity(1).norm_fro();
    return cert;
}

}  // namespace dn
