#include "dn/polynomial.hpp"

#include <sstream>

namespace dn {

Poly Poly::monomial(int deg, Gaussian coeff) {
    Poly p;
    if (!coeff.is_zero()) {
        p.c_.assign(static_cast<std::size_t>(deg) + 1, Gaussian());
        p.c_.back() = std::move(coeff);
    }
    return p;
}

void Poly::set_coeff(int k, const Gaussian& v) {
    if (k >= static_cast<int>(c_.size())) c_.resize(static_cast<std::size_t>(k) + 1, Gaussian());
    c_[static_cast<std::size_t>(k)] = v;
    trim();
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Gaussian());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Gaussian());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    Poly r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, Gaussian());
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    r.trim();
    return r;
}

Poly Poly::operator*(const Gaussian& s) const {
    Poly r = *this;
    for (auto& c : r.c_) c *= s;
    r.trim();
    return r;
}

Gaussian Poly::eval(const Gaussian& x) const {
    Gaussian acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::complex<double> Poly::eval(std::complex<double> x) const {
    std::complex<double> acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->to_complex();
    return acc;
}

Poly Poly::derivative() const {
    Poly r;
    if (c_.size() <= 1) return r;
    r.c_.resize(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) r.c_[k - 1] = c_[k] * Gaussian(static_cast<long>(k));
    r.trim();
    return r;
}

Poly Poly::compose_affine(const Gaussian& a, const Gaussian& b) const {
    // Horner in (a*x + b).
    Poly lin(std::vector<Gaussian>{b, a});
    Poly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * lin + Poly(*it);
    return acc;
}

Poly Poly::reverse(int m) const {
    if (m < degree()) throw Error("Poly::reverse: m below degree");
    std::vector<Gaussian> rc(static_cast<std::size_t>(m) + 1, Gaussian());
    for (std::size_t k = 0; k < c_.size(); ++k) rc[static_cast<std::size_t>(m) - k] = c_[k];
    return Poly(std::move(rc));
}

Poly Poly::pow(int e) const {
    Poly r{Gaussian(1)};
    Poly base = *this;
    for (; e > 0; e >>= 1) {
        if (e & 1) r *= base;
        if (e > 1) base *= base;
    }
    return r;
}

std::pair<Poly, Poly> Poly::divrem(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw Error("Poly::divrem: zero divisor");
    Poly q, r = a;
    Gaussian lead = b.leading();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int d = r.degree() - b.degree();
        Gaussian f = r.leading() / lead;
        q += monomial(d, f);
        r -= b * monomial(d, f);
    }
    return {q, r};
}

Poly Poly::divexact(const Poly& a, const Poly& b) {
    auto [q, r] = divrem(a, b);
    if (!r.is_zero()) throw Error("Poly::divexact: inexact division");
    return q;
}

Poly Poly::gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        auto [q, r] = divrem(a, b);
        (void)q;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return *this * (Gaussian(1) / leading());
}

int Poly::valuation_at(const Gaussian& r) const {
    if (is_zero()) throw Error("valuation of zero polynomial");
    Poly lin(std::vector<Gaussian>{-r, Gaussian(1)});
    Poly p = *this;
    int v = 0;
    while (true) {
        auto [q, rem] = divrem(p, lin);
        if (!rem.is_zero()) return v;
        ++v;
        p = std::move(q);
    }
}

int Poly::valuation_at_zero() const {
    if (is_zero()) throw Error("valuation of zero polynomial");
    int v = 0;
    while (c_[static_cast<std::size_t>(v)].is_zero()) ++v;
    return v;
}

std::vector<std::pair<Poly, int>> Poly::squarefree_decomposition() const {
    std::vector<std::pair<Poly, int>> out;
    Poly p = monic();
    if (p.degree() <= 0) return out;
    // Yun's algorithm (characteristic 0).
    Poly d = p.derivative();
    Poly a = gcd(p, d);
    Poly b = divexact(p, a);
    Poly c = divexact(d, a);
    int i = 1;
    while (b.degree() > 0) {
        Poly e = c - b.derivative();
        Poly f = gcd(b, e);
        if (f.degree() > 0) out.emplace_back(f, i);
        b = divexact(b, f);
        c = divexact(e, f);
        ++i;
    }
    return out;
}

std::vector<std::complex<double>> Poly::to_complex_coeffs() const {
    std::vector<std::complex<double>> out;
    out.reserve(c_.size());
    for (const auto& c : c_) out.push_back(c.to_complex());
    return out;
}

std::string Poly::str(const char* var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const Gaussian& c = c_[static_cast<std::size_t>(k)];
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        if (k == 0) {
            os << "(" << c.str() << ")";
        } else {
            if (!(c == Gaussian(1))) os << "(" << c.str() << ")*";
            os << var;
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

}  // namespace dn
