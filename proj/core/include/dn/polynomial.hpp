#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "dn/rational.hpp"

namespace dn {

/// Univariate polynomial over the Gaussian rationals, dense ascending
/// coefficients, no trailing zeros.  Zero polynomial has an empty vector.
class Poly {
  public:
    Poly() = default;
    explicit Poly(Gaussian constant) {
        if (!constant.is_zero()) c_.push_back(std::move(constant));
    }
    explicit Poly(std::vector<Gaussian> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly x() { return Poly(std::vector<Gaussian>{Gaussian(0), Gaussian(1)}); }
    static Poly monomial(int deg, Gaussian coeff);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    const std::vector<Gaussian>& coeffs() const { return c_; }
    Gaussian coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : Gaussian();
    }
    Gaussian leading() const { return c_.empty() ? Gaussian() : c_.back(); }
    void set_coeff(int k, const Gaussian& v);

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly operator*(const Gaussian& s) const;
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    Gaussian eval(const Gaussian& x) const;
    std::complex<double> eval(std::complex<double> x) const;

    Poly derivative() const;
    /// p(a*x + b)
    Poly compose_affine(const Gaussian& a, const Gaussian& b) const;
    /// x^m * p(1/x); requires m >= degree
    Poly reverse(int m) const;
    Poly pow(int e) const;

    /// Quotient and remainder; divisor must be nonzero.
    static std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b);
    /// Exact division; throws if the remainder is nonzero.
    static Poly divexact(const Poly& a, const Poly& b);
    /// Monic gcd.
    static Poly gcd(Poly a, Poly b);

    Poly monic() const;
    /// Multiplicity of the root r (0 if not a root).
    int valuation_at(const Gaussian& r) const;
    /// Order of vanishing at 0 (degree+1-safe; 0 for nonzero constant term).
    int valuation_at_zero() const;

    /// Yun square-free decomposition: list of (factor, multiplicity) with
    /// pairwise-coprime square-free monic factors, product = monic(p).
    std::vector<std::pair<Poly, int>> squarefree_decomposition() const;

    std::vector<std::complex<double>> to_complex_coeffs() const;
    std::string str(const char* var = "t") const;

  private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<Gaussian> c_;
};

}  // namespace dn
