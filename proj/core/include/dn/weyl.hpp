#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "dn/polynomial.hpp"
#include "dn/rational.hpp"

namespace dn {

/// Exponent pair of the normal-ordered monomial Y^y X^x, with the commutation
/// relation X*Y - Y*X = 1.  In the t-chart Y = t and X = d/dt; in the w-chart
/// Y = w and X = d/dw.
struct YX {
    int y = 0;
    int x = 0;
    auto operator<=>(const YX&) const = default;
};

/// Element of the Weyl algebra, kept in normal order (all Y left of all X),
/// as a sparse map from exponent pairs to nonzero Gaussian-rational
/// coefficients.  Two elements are equal iff their maps are equal.
class WeylElement {
  public:
    WeylElement() = default;

    static WeylElement zero() { return {}; }
    static WeylElement one() { return monomial(0, 0, Gaussian(1)); }
    static WeylElement y(int pow = 1) { return monomial(pow, 0, Gaussian(1)); }
    static WeylElement x(int pow = 1) { return monomial(0, pow, Gaussian(1)); }
    /// theta = Y X  (t*d/dt in the t-chart)
    static WeylElement theta() { return monomial(1, 1, Gaussian(1)); }
    static WeylElement constant(Gaussian c) { return monomial(0, 0, std::move(c)); }
    static WeylElement monomial(int y, int x, Gaussian c);

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<YX, Gaussian>& terms() const { return terms_; }
    Gaussian coeff(int y, int x) const;
    int max_x_degree() const;
    int max_y_degree() const;

    WeylElement operator-() const;
    WeylElement& operator+=(const WeylElement& o);
    WeylElement& operator-=(const WeylElement& o);
    friend WeylElement operator+(WeylElement a, const WeylElement& b) { return a += b; }
    friend WeylElement operator-(WeylElement a, const WeylElement& b) { return a -= b; }
    friend WeylElement operator*(const WeylElement& a, const WeylElement& b);
    WeylElement& operator*=(const WeylElement& o) { return *this = *this * o; }
    WeylElement operator*(const Gaussian& s) const;
    WeylElement pow(int e) const;
    friend bool operator==(const WeylElement& a, const WeylElement& b) {
        return a.terms_ == b.terms_;
    }

    /// Product-reversing map fixing Y and negating X, re-normal-ordered.
    /// Applying it twice is the identity.
    WeylElement adjoint() const;

    /// Unique Q with Q*X = this; every monomial must carry X^1 at least.
    WeylElement right_divide_by_x() const;

    /// Slices by grade = (X exponent) - (Y exponent); omits empty slices.
    std::map<int, WeylElement> grade_slices() const;
    WeylElement grade_slice(int g) const;

    std::string str(const std::string& var = "t") const;

  private:
    void add_term(int y, int x, const Gaussian& c);
    std::map<YX, Gaussian> terms_;
};

/// Interprets a grade-0 element sum c_a Y^a X^a as a polynomial in theta via
/// Y^a X^a = theta (theta-1) ... (theta-a+1).  Throws on nonzero grade.
Poly grade0_to_theta(const WeylElement& e);

/// Inverse of grade0_to_theta.
WeylElement theta_to_grade0(const Poly& p);

/// Canonical form of a DN operator.  In the t-chart:
///   (t d/dt)^n t + sum_p g_p(t d/dt) (d/dt)^{p-1},   deg g_p <= n-p+1.
/// In the w-chart:
///   (w d/dw)^n + sum_p w^p G_p(w d/dw) prod_{l=1}^{p-1} (w d/dw + l).
struct CanonicalDN {
    enum class Chart { t_infinity, w_zero };
    int n = 0;
    std::vector<Poly> g;  // g[p-1] is g_p (or G_p), p = 1..n+1
    Chart chart = Chart::t_infinity;
};

/// Extracts the canonical coefficients of a t-chart operator of order n.
/// Throws MalformedOperator if the grade structure or the leading block is
/// wrong, DegreeOverflow if some g_p exceeds its degree bound.
CanonicalDN to_canonical(const WeylElement& L, int n);

/// Same extraction for the w-chart normal form.
CanonicalDN to_canonical_w(const WeylElement& L, int n);

/// Assembles the operator back from its canonical coefficients (either chart).
WeylElement from_canonical(const CanonicalDN& c);

}  // namespace dn
