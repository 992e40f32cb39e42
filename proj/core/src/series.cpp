#include "dn/series.hpp"

#include <algorithm>

namespace dn {

SeriesMatrix::SeriesMatrix(int n, int order)
    : n_(n), order_(order), e_(static_cast<std::size_t>(n) * n) {}

SeriesMatrix SeriesMatrix::geometric(const CMat& t, const CMat& a, int order) {
    const int n = a.rows();
    SeriesMatrix g(n, order);
    for (auto& entry : g.e_) entry.c.assign(static_cast<std::size_t>(order), 0.0);
    CMat pow = t;
    for (int k = 0; k < order; ++k) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g.at(i, j).c[static_cast<std::size_t>(k)] = pow.at(i, j);
        pow = pow * a;
    }
    return g;
}

SeriesMatrix SeriesMatrix::resolvent_taylor(const CMat& a, cx t0, int order) {
    const int n = a.rows();
    CMat shifted = a;
    for (int i = 0; i < n; ++i) shifted.at(i, i) -= t0;
    CMat b = LU(shifted).inverse();
    SeriesMatrix g(n, order);
    for (auto& entry : g.e_) entry.c.assign(static_cast<std::size_t>(order), 0.0);
    CMat pow = b;
    for (int k = 0; k < order; ++k) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g.at(i, j).c[static_cast<std::size_t>(k)] = pow.at(i, j);
        pow = pow * b;
    }
    return g;
}

CMat SeriesMatrix::coeff(int k) const {
    CMat m(n_, n_);
    if (k >= order_) throw TruncationTooSmall("series coefficient beyond the precision bound");
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) m.at(i, j) = at(i, j).coeff(k);
    return m;
}

SeriesMatrix SeriesMatrix::shear(const std::vector<int>& h) const {
    if (static_cast<int>(h.size()) != n_) throw Error("shear exponent count mismatch");
    int worst_drop = 0;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) worst_drop = std::max(worst_drop, h[static_cast<std::size_t>(j)] - h[static_cast<std::size_t>(i)]);
    SeriesMatrix out(n_, order_ - worst_drop);
    if (out.order_ <= 0)
        throw TruncationTooSmall("shearing consumed the entire series precision");
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            const LaurentSeries& src = at(i, j);
            LaurentSeries& dst = out.at(i, j);
            dst.lo = src.lo + h[static_cast<std::size_t>(i)] - h[static_cast<std::size_t>(j)];
            dst.c = src.c;
            // (D H) H^{-1} adds the diagonal constant h_i.
            if (i == j) {
                if (dst.lo > 0) {
                    // prepend zeros down to exponent 0
                    dst.c.insert(dst.c.begin(), static_cast<std::size_t>(dst.lo), 0.0);
                    dst.lo = 0;
                }
                int idx = -dst.lo;
                if (idx >= 0 && idx < static_cast<int>(dst.c.size()))
                    dst.c[static_cast<std::size_t>(idx)] += static_cast<double>(h[static_cast<std::size_t>(i)]);
            }
        }
    }
    return out;
}

}  // namespace dn
