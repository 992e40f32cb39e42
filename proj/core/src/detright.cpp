#include "dn/detright.hpp"

#include <algorithm>
#include <numeric>

namespace dn {

bool is_almost_triangular(const OperatorMatrix& m) {
    const int n = m.size() - 1;
    WeylElement minus_one = -WeylElement::one();
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            if (i == j + 1 && !(m.at(i, j) == minus_one)) return false;
            if (i > j + 1 && !m.at(i, j).is_zero()) return false;
        }
    }
    return true;
}

AlmostTriangularMatrix::AlmostTriangularMatrix(OperatorMatrix m) : m_(std::move(m)) {
    if (!is_almost_triangular(m_))
        throw MalformedMatrix("matrix is not almost triangular");
}

std::vector<WeylElement> right_principal_minors(const AlmostTriangularMatrix& atm) {
    const OperatorMatrix& m = atm.matrix();
    const int n = m.size() - 1;
    std::vector<WeylElement> p(static_cast<std::size_t>(n) + 2);
    p[0] = WeylElement::one();
    for (int j = 0; j <= n; ++j) {
        WeylElement s;
        for (int i = 0; i <= j; ++i) s += m.at(i, j) * p[static_cast<std::size_t>(i)];
        p[static_cast<std::size_t>(j) + 1] = std::move(s);
    }
    return p;
}

WeylElement detright_forward(const AlmostTriangularMatrix& m) {
    return right_principal_minors(m).back();
}

WeylElement detright_reverse(const AlmostTriangularMatrix& atm) {
    const OperatorMatrix& m = atm.matrix();
    const int n = m.size() - 1;
    std::vector<WeylElement> q(static_cast<std::size_t>(n) + 2);
    q[0] = WeylElement::one();
    for (int j = 0; j <= n; ++j) {
        WeylElement s;
        for (int i = 0; i <= j; ++i) s += q[static_cast<std::size_t>(i)] * m.at(n - j, n - i);
        q[static_cast<std::size_t>(j) + 1] = std::move(s);
    }
    return q.back();
}

WeylElement detright_permutation(const OperatorMatrix& m, int max_size) {
    const int sz = m.size();
    if (sz > max_size) throw SizeExceeded("permutation expansion bound exceeded");
    std::vector<int> sigma(static_cast<std::size_t>(sz));
    std::iota(sigma.begin(), sigma.end(), 0);
    WeylElement det;
    do {
        // Parity by counting inversions.
        int inv = 0;
        for (int a = 0; a < sz; ++a)
            for (int b = a + 1; b < sz; ++b)
                if (sigma[static_cast<std::size_t>(a)] > sigma[static_cast<std::size_t>(b)]) ++inv;
        // Column order n, n-1, ..., 0.
        WeylElement prod = WeylElement::one();
        bool zero = false;
        for (int col = sz - 1; col >= 0 && !zero; --col) {
            const WeylElement& f = m.at(sigma[static_cast<std::size_t>(col)], col);
            if (f.is_zero()) {
                zero = true;
                break;
            }
            prod *= f;
        }
        if (!zero) det += (inv % 2 == 0) ? prod : -prod;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return det;
}

OperatorMatrix tau(const OperatorMatrix& m) {
    const int n = m.size() - 1;
    OperatorMatrix r(m.size());
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) r.at(i, j) = m.at(n - j, n - i);
    return r;
}

OperatorMatrix sign_conjugate(const OperatorMatrix& m) {
    const int n = m.size() - 1;
    OperatorMatrix r(m.size());
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            r.at(i, j) = ((j - i + 1) % 2 == 0) ? m.at(i, j) : -m.at(i, j);
    return r;
}

OperatorMatrix adjoint_entrywise(const OperatorMatrix& m) {
    OperatorMatrix r(m.size());
    for (int i = 0; i < m.size(); ++i)
        for (int j = 0; j < m.size(); ++j) r.at(i, j) = m.at(i, j).adjoint();
    return r;
}

}  // namespace dn
