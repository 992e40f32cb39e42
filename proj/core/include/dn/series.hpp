#pragma once

#include <vector>

#include "dn/linalg.hpp"

namespace dn {

/// Truncated Laurent series sum_{k=lo}^{lo+len-1} c_k x^k + O(x^{lo+len}).
struct LaurentSeries {
    int lo = 0;
    std::vector<cx> c;

    int order_bound() const { return lo + static_cast<int>(c.size()); }
    cx coeff(int k) const {
        if (k < lo || k >= order_bound()) return 0.0;
        return c[static_cast<std::size_t>(k - lo)];
    }
};

/// Matrix of truncated Laurent series in one local coordinate with a common
/// precision bound: every entry is known modulo x^{order}.
class SeriesMatrix {
  public:
    SeriesMatrix(int n, int order);

    /// T (I - A x)^{-1} = sum_k (T A^k) x^k, truncated.
    static SeriesMatrix geometric(const CMat& t, const CMat& a, int order);

    /// Taylor coefficients of (A - t)^{-1} around t0: sum_k B^{k+1} s^k with
    /// B = (A - t0)^{-1}.
    static SeriesMatrix resolvent_taylor(const CMat& a, cx t0, int order);

    int size() const { return n_; }
    int order() const { return order_; }
    LaurentSeries& at(int i, int j) { return e_[static_cast<std::size_t>(i) * n_ + j]; }
    const LaurentSeries& at(int i, int j) const {
        return e_[static_cast<std::size_t>(i) * n_ + j];
    }

    CMat coeff(int k) const;
    CMat constant_term() const { return coeff(0); }

    /// Gauge change by H = diag(x^{h_0},...,x^{h_n}):
    /// (D H) H^{-1} + H G H^{-1}, with D = x d/dx.  Entry (i,j) shifts by
    /// x^{h_i - h_j}; the precision bound drops accordingly.  Throws
    /// TruncationTooSmall when the constant term is no longer covered.
    SeriesMatrix shear(const std::vector<int>& h) const;

  private:
    int n_;
    int order_;  // every entry valid below this exponent
    std::vector<LaurentSeries> e_;
};

}  // namespace dn
