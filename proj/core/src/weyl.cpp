#include "dn/weyl.hpp"

#include <sstream>

#include "dn/errors.hpp"

namespace dn {

namespace {

// k! * C(b,k) * C(c,k) as an exact integer.
Rational reorder_coeff(int b, int c, int k) {
    mpz_class f, bk, ck;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
    mpz_bin_uiui(bk.get_mpz_t(), static_cast<unsigned long>(b), static_cast<unsigned long>(k));
    mpz_bin_uiui(ck.get_mpz_t(), static_cast<unsigned long>(c), static_cast<unsigned long>(k));
    return Rational(f * bk * ck);
}

}  // namespace

WeylElement WeylElement::monomial(int y, int x, Gaussian c) {
    if (y < 0 || x < 0) throw Error("negative Weyl exponent");
    WeylElement e;
    if (!c.is_zero()) e.terms_[{y, x}] = std::move(c);
    return e;
}

Gaussian WeylElement::coeff(int y, int x) const {
    auto it = terms_.find({y, x});
    return it == terms_.end() ? Gaussian() : it->second;
}

int WeylElement::max_x_degree() const {
    int m = 0;
    for (const auto& [k, c] : terms_) m = std::max(m, k.x);
    return m;
}

int WeylElement::max_y_degree() const {
    int m = 0;
    for (const auto& [k, c] : terms_) m = std::max(m, k.y);
    return m;
}

void WeylElement::add_term(int y, int x, const Gaussian& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace({y, x}, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

WeylElement WeylElement::operator-() const {
    WeylElement r = *this;
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
}

WeylElement& WeylElement::operator+=(const WeylElement& o) {
    for (const auto& [k, c] : o.terms_) add_term(k.y, k.x, c);
    return *this;
}

WeylElement& WeylElement::operator-=(const WeylElement& o) {
    for (const auto& [k, c] : o.terms_) add_term(k.y, k.x, -c);
    return *this;
}

WeylElement operator*(const WeylElement& a, const WeylElement& b) {
    // (Y^a1 X^b1)(Y^a2 X^b2): reorder the middle with
    // X^b Y^c = sum_k k! C(b,k) C(c,k) Y^{c-k} X^{b-k}.
    WeylElement r;
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) {
            Gaussian prod = ca * cb;
            int kmax = std::min(ka.x, kb.y);
            for (int k = 0; k <= kmax; ++k) {
                Gaussian c = prod * Gaussian(reorder_coeff(ka.x, kb.y, k));
                r.add_term(ka.y + kb.y - k, ka.x + kb.x - k, c);
            }
        }
    }
    return r;
}

WeylElement WeylElement::operator*(const Gaussian& s) const {
    WeylElement r;
    if (s.is_zero()) return r;
    r.terms_ = terms_;
    for (auto& [k, c] : r.terms_) c *= s;
    return r;
}

WeylElement WeylElement::pow(int e) const {
    WeylElement r = one();
    WeylElement base = *this;
    for (; e > 0; e >>= 1) {
        if (e & 1) r *= base;
        if (e > 1) base *= base;
    }
    return r;
}

WeylElement WeylElement::adjoint() const {
    // c Y^a X^b  ->  c (-X)^b Y^a, re-normal-ordered.
    WeylElement r;
    for (const auto& [k, c] : terms_) {
        Gaussian s = (k.x % 2 == 0) ? c : -c;
        int kmax = std::min(k.x, k.y);
        for (int j = 0; j <= kmax; ++j)
            r.add_term(k.y - j, k.x - j, s * Gaussian(reorder_coeff(k.x, k.y, j)));
    }
    return r;
}

WeylElement WeylElement::right_divide_by_x() const {
    WeylElement r;
    for (const auto& [k, c] : terms_) {
        if (k.x == 0)
            throw NotDivisible("monomial with X-exponent 0 in right division by X");
        r.terms_[{k.y, k.x - 1}] = c;
    }
    return r;
}

std::map<int, WeylElement> WeylElement::grade_slices() const {
    std::map<int, WeylElement> s;
    for (const auto& [k, c] : terms_) s[k.x - k.y].terms_[k] = c;
    return s;
}

WeylElement WeylElement::grade_slice(int g) const {
    WeylElement s;
    for (const auto& [k, c] : terms_)
        if (k.x - k.y == g) s.terms_[k] = c;
    return s;
}

std::string WeylElement::str(const std::string& var) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Leading block (lowest grade) first, then highest Y power.
    std::map<int, WeylElement> slices = grade_slices();
    for (auto sit = slices.begin(); sit != slices.end(); ++sit) {
        const auto& ts = sit->second.terms_;
        for (auto it = ts.rbegin(); it != ts.rend(); ++it) {
            if (!first) os << " + ";
            first = false;
            os << "(" << it->second.str() << ")";
            if (it->first.y > 0) {
                os << "*" << var;
                if (it->first.y > 1) os << "^" << it->first.y;
            }
            if (it->first.x > 0) {
                os << "*D" << var;
                if (it->first.x > 1) os << "^" << it->first.x;
            }
        }
    }
    return os.str();
}

Poly grade0_to_theta(const WeylElement& e) {
    Poly p;
    Poly theta = Poly::x();
    for (const auto& [k, c] : e.terms()) {
        if (k.x != k.y) throw Error("grade0_to_theta: element has nonzero grade");
        // Y^a X^a = theta (theta-1) ... (theta-a+1)
        Poly ff{Gaussian(1)};
        for (int i = 0; i < k.y; ++i) ff *= (theta - Poly(Gaussian(static_cast<long>(i))));
        p += ff * c;
    }
    return p;
}

WeylElement theta_to_grade0(const Poly& p) {
    // Newton forward differences: p = sum_a (D^a p)(0)/a! * theta^(a-falling).
    WeylElement e;
    Poly q = p;
    Rational fact(1);
    for (int a = 0; !q.is_zero(); ++a) {
        if (a > 0) fact *= Rational(a);
        Gaussian c = q.eval(Gaussian(0)) / Gaussian(fact);
        e += WeylElement::monomial(a, a, c);
        q = q.compose_affine(Gaussian(1), Gaussian(1)) - q;  // forward difference
    }
    return e;
}

CanonicalDN to_canonical(const WeylElement& L, int n) {
    if (n < 0) throw MalformedOperator("negative order");
    CanonicalDN c;
    c.n = n;
    c.chart = CanonicalDN::Chart::t_infinity;
    c.g.assign(static_cast<std::size_t>(n) + 1, Poly());

    WeylElement lead = WeylElement::theta().pow(n) * WeylElement::y();
    for (const auto& [grade, slice] : L.grade_slices()) {
        if (grade == -1) {
            if (!(slice == lead))
                throw MalformedOperator("grade -1 block differs from (t d/dt)^n t");
            continue;
        }
        if (grade < -1 || grade > n)
            throw MalformedOperator("grade " + std::to_string(grade) +
                                    " outside the canonical range");
        int p = grade + 1;  // slice = g_p(theta) X^{p-1}
        WeylElement shifted;
        for (const auto& [k, coeff] : slice.terms())
            shifted += WeylElement::monomial(k.y, k.x - (p - 1), coeff);
        Poly gp = grade0_to_theta(shifted);
        if (gp.degree() > n - p + 1)
            throw DegreeOverflow("g_" + std::to_string(p) + " exceeds degree bound");
        c.g[static_cast<std::size_t>(p) - 1] = std::move(gp);
    }
    if (L.grade_slice(-1).is_zero()) throw MalformedOperator("missing leading block");
    return c;
}

CanonicalDN to_canonical_w(const WeylElement& L, int n) {
    if (n < 0) throw MalformedOperator("negative order");
    CanonicalDN c;
    c.n = n;
    c.chart = CanonicalDN::Chart::w_zero;
    c.g.assign(static_cast<std::size_t>(n) + 1, Poly());

    WeylElement lead = WeylElement::theta().pow(n);
    Poly theta = Poly::x();
    for (const auto& [grade, slice] : L.grade_slices()) {
        if (grade == 0) {
            if (!(slice == lead))
                throw MalformedOperator("grade 0 block differs from (w d/dw)^n");
            continue;
        }
        if (grade > 0 || grade < -(n + 1))
            throw MalformedOperator("grade " + std::to_string(grade) +
                                    " outside the canonical range");
        int p = -grade;  // slice = w^p G_p(theta) prod_{l<p} (theta+l)
        WeylElement shifted;
        for (const auto& [k, coeff] : slice.terms()) {
            if (k.y < p) throw MalformedOperator("slice not left-divisible by w^p");
            shifted += WeylElement::monomial(k.y - p, k.x, coeff);
        }
        Poly q = grade0_to_theta(shifted);
        Poly prod{Gaussian(1)};
        for (int l = 1; l < p; ++l) prod *= (theta + Poly(Gaussian(static_cast<long>(l))));
        Poly Gp;
        try {
            Gp = Poly::divexact(q, prod);
        } catch (const Error&) {
            throw MalformedOperator("slice " + std::to_string(p) +
                                    " not divisible by the canonical factor");
        }
        if (Gp.degree() > n + 1 - p)
            throw DegreeOverflow("G_" + std::to_string(p) + " exceeds degree bound");
        c.g[static_cast<std::size_t>(p) - 1] = std::move(Gp);
    }
    if (!(L.grade_slice(0) == lead)) throw MalformedOperator("missing leading block");
    return c;
}

WeylElement from_canonical(const CanonicalDN& c) {
    const int n = c.n;
    if (static_cast<int>(c.g.size()) != n + 1) throw MalformedOperator("wrong g count");
    if (c.chart == CanonicalDN::Chart::t_infinity) {
        WeylElement L = WeylElement::theta().pow(n) * WeylElement::y();
        for (int p = 1; p <= n + 1; ++p) {
            const Poly& gp = c.g[static_cast<std::size_t>(p) - 1];
            if (gp.degree() > n - p + 1) throw DegreeOverflow("g_p degree bound violated");
            L += theta_to_grade0(gp) * WeylElement::x(p - 1);
        }
        return L;
    }
    WeylElement L = WeylElement::theta().pow(n);
    Poly theta = Poly::x();
    for (int p = 1; p <= n + 1; ++p) {
        const Poly& Gp = c.g[static_cast<std::size_t>(p) - 1];
        if (Gp.degree() > n + 1 - p) throw DegreeOverflow("G_p degree bound violated");
        Poly q = Gp;
        for (int l = 1; l < p; ++l) q *= (theta + Poly(Gaussian(static_cast<long>(l))));
        L += WeylElement::y(p) * theta_to_grade0(q);
    }
    return L;
}

}  // namespace dn
