#include "dn/dn_ops.hpp"

#include <algorithm>
#include <cmath>

#include "dn/errors.hpp"
#include "dn/roots.hpp"

namespace dn {

namespace {

WeylElement uustar() { return WeylElement::theta() + WeylElement::one(); }  // X*Y

WeylElement weyl_from_y_poly(const Poly& p) {
    WeylElement e;
    for (int k = 0; k <= p.degree(); ++k) e += WeylElement::monomial(k, 0, p.coeff(k));
    return e;
}

// Coefficients of a grade-p homogeneous element in the basis u^p (u u*)^k:
// strip X^p, read off the theta polynomial q, then expand q(s - (p+1)).
Poly expansion_coeffs(const WeylElement& slice, int p) {
    WeylElement shifted;
    for (const auto& [k, c] : slice.terms()) {
        if (k.x - k.y != p) throw Error("expansion_coeffs: slice has mixed grades");
        shifted += WeylElement::monomial(k.y, k.x - p, c);
    }
    Poly q = grade0_to_theta(shifted);
    return q.compose_affine(Gaussian(1), Gaussian(Rational(-(p + 1))));
}

// Continued-fraction rational approximation with bounded denominator.
bool approx_rational(double v, long max_den, Rational& out) {
    if (!std::isfinite(v)) return false;
    double x = v;
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(x);
        if (std::abs(fl) > 1e12) return false;
        long a = static_cast<long>(fl);
        long p2 = 0, q2 = 0;
        if (__builtin_mul_overflow(a, p1, &p2) || __builtin_add_overflow(p2, p0, &p2) ||
            __builtin_mul_overflow(a, q1, &q2) || __builtin_add_overflow(q2, q0, &q2))
            break;
        if (q2 > max_den || q2 < 0) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        double frac = x - fl;
        if (frac < 1e-12) break;
        x = 1.0 / frac;
    }
    if (q1 == 0) return false;
    out = Rational(p1, q1);
    out.canonicalize();
    return true;
}

}  // namespace

OperatorMatrix connection_operator_matrix(const DNMatrix& a) {
    const int n = a.n();
    OperatorMatrix m(n + 1);
    WeylElement theta = WeylElement::theta();
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            if (i == j + 1) {
                m.at(i, j) = -WeylElement::one();
            } else if (i <= j) {
                WeylElement e = (i == j) ? theta : WeylElement::zero();
                e -= WeylElement::x(j - i + 1) * a.entry(i, j);
                m.at(i, j) = std::move(e);
            }
        }
    }
    return m;
}

WeylElement build_l_infinity(const DNMatrix& a) {
    if (!a.exact()) throw InexactInput("build_l_infinity needs exact entries");
    AlmostTriangularMatrix m(connection_operator_matrix(a));
    return detright_forward(m).right_divide_by_x();
}

bool check_symmetry(const CanonicalDN& c) {
    for (int p = 1; p <= c.n + 1; ++p) {
        const Poly& gp = c.g[static_cast<std::size_t>(p) - 1];
        Poly mirrored = gp.compose_affine(Gaussian(-1), Gaussian(Rational(-p)));
        if ((c.n - p + 1) % 2 != 0) mirrored = -mirrored;
        if (!(gp == mirrored)) return false;
    }
    return true;
}

bool check_adjoint(const WeylElement& l, int n) {
    WeylElement rhs = (n % 2 == 0) ? l : -l;
    return l.adjoint() == rhs;
}

QMatrix k_matrix(int n, int p) {
    if (p < 1 || p > n + 1) throw Error("k_matrix: p out of range");
    const int size = n + 2 - p;
    QMatrix k;
    k.size = size;
    k.a.assign(static_cast<std::size_t>(size) * size, Rational(0));
    WeylElement uu = uustar();
    WeylElement uu_minus_p = uu - WeylElement::constant(Gaussian(Rational(p)));
    for (int i = 0; i < size; ++i) {
        WeylElement e = -(WeylElement::x(p) * uu_minus_p.pow(n + 1 - p - i) * uu.pow(i));
        Poly col = expansion_coeffs(e, p);
        for (int row = 0; row < size; ++row) {
            Gaussian c = col.coeff(row);
            if (!c.is_real()) throw Error("k_matrix: non-real coefficient");
            k.at(row, i) = c.re;
        }
    }
    return k;
}

std::vector<Gaussian> solve_exact(const QMatrix& k, std::vector<Gaussian> rhs) {
    const int n = k.size;
    if (static_cast<int>(rhs.size()) != n) throw Error("solve_exact: size mismatch");
    // Dense elimination over the Gaussian rationals.
    std::vector<Gaussian> m(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[static_cast<std::size_t>(i) * n + j] = Gaussian(k.at(i, j));
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (!m[static_cast<std::size_t>(r) * n + col].is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) throw SingularSolve("exact solve hit a zero column");
        if (pivot != col) {
            for (int j = 0; j < n; ++j)
                std::swap(m[static_cast<std::size_t>(pivot) * n + j],
                          m[static_cast<std::size_t>(col) * n + j]);
            std::swap(rhs[static_cast<std::size_t>(pivot)], rhs[static_cast<std::size_t>(col)]);
        }
        Gaussian inv = Gaussian(1) / m[static_cast<std::size_t>(col) * n + col];
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            Gaussian f = m[static_cast<std::size_t>(r) * n + col] * inv;
            if (f.is_zero()) continue;
            for (int j = col; j < n; ++j)
                m[static_cast<std::size_t>(r) * n + j] -=
                    f * m[static_cast<std::size_t>(col) * n + j];
            rhs[static_cast<std::size_t>(r)] -= f * rhs[static_cast<std::size_t>(col)];
        }
    }
    std::vector<Gaussian> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] =
            rhs[static_cast<std::size_t>(i)] / m[static_cast<std::size_t>(i) * n + i];
    return out;
}

std::vector<std::vector<Gaussian>> weyl_expansion(const DNMatrix& b) {
    const int n = b.n();
    OperatorMatrix m(n + 1);
    WeylElement uu = uustar();
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            if (i == j + 1) {
                m.at(i, j) = -WeylElement::one();
            } else if (i <= j) {
                WeylElement e = (i == j) ? uu : WeylElement::zero();
                e -= WeylElement::x(j - i + 1) * b.entry(i, j);
                m.at(i, j) = std::move(e);
            }
        }
    }
    WeylElement det = detright_forward(AlmostTriangularMatrix(m));

    std::vector<std::vector<Gaussian>> xs(static_cast<std::size_t>(n) + 1);
    for (int p = 1; p <= n + 1; ++p) {
        Poly col = expansion_coeffs(det.grade_slice(p), p);
        if (col.degree() > n + 1 - p) throw Error("weyl_expansion: degree overflow");
        std::vector<Gaussian> v(static_cast<std::size_t>(n + 2 - p));
        for (int k = 0; k <= n + 1 - p; ++k) v[static_cast<std::size_t>(k)] = col.coeff(k);
        xs[static_cast<std::size_t>(p) - 1] = std::move(v);
    }
    return xs;
}

std::vector<std::vector<Gaussian>> canonical_to_x(const CanonicalDN& c) {
    const int n = c.n;
    std::vector<std::vector<Gaussian>> xs(static_cast<std::size_t>(n) + 1);
    for (int p = 1; p <= n + 1; ++p) {
        const Poly& gp = c.g[static_cast<std::size_t>(p) - 1];
        std::vector<Gaussian> v(static_cast<std::size_t>(n + 2 - p));
        for (int k = 0; k <= n + 1 - p; ++k) {
            Gaussian coeff = gp.coeff(k);
            v[static_cast<std::size_t>(k)] = ((n + k + p - 1) % 2 == 0) ? coeff : -coeff;
        }
        xs[static_cast<std::size_t>(p) - 1] = std::move(v);
    }
    return xs;
}

DNMatrix reconstruct(const CanonicalDN& c) {
    if (c.chart != CanonicalDN::Chart::t_infinity)
        throw MalformedOperator("reconstruct expects the t-chart canonical form");
    const int n = c.n;
    auto target = canonical_to_x(c);

    // The expansion target corresponds to the tau transpose of the defining
    // matrix; solve antidiagonal by antidiagonal, then transpose back.
    DNMatrix b(n, true);
    for (int p = 1; p <= n + 1; ++p) {
        auto current = weyl_expansion(b);
        std::vector<Gaussian> rhs(static_cast<std::size_t>(n + 2 - p));
        for (int k = 0; k <= n + 1 - p; ++k)
            rhs[static_cast<std::size_t>(k)] =
                target[static_cast<std::size_t>(p) - 1][static_cast<std::size_t>(k)] -
                current[static_cast<std::size_t>(p) - 1][static_cast<std::size_t>(k)];
        auto anti = solve_exact(k_matrix(n, p), std::move(rhs));
        for (int i = 0; i <= n + 1 - p; ++i)
            b.set(i, p + i - 1, anti[static_cast<std::size_t>(i)]);
    }
    DNMatrix a = b.tau();
    if (!(build_l_infinity(a) == from_canonical(c)))
        throw SingularSolve("reconstruction failed to reproduce the operator");
    return a;
}

CanonicalDN to_dn0(const CanonicalDN& c) {
    CanonicalDN out;
    out.n = c.n;
    out.chart = (c.chart == CanonicalDN::Chart::t_infinity) ? CanonicalDN::Chart::w_zero
                                                            : CanonicalDN::Chart::t_infinity;
    out.g.reserve(c.g.size());
    for (int p = 1; p <= c.n + 1; ++p) {
        Poly m = c.g[static_cast<std::size_t>(p) - 1].compose_affine(Gaussian(-1),
                                                                     Gaussian(Rational(-p)));
        if ((c.n - p + 1) % 2 != 0) m = -m;
        out.g.push_back(std::move(m));
    }
    return out;
}

std::vector<Poly> ode_coefficients(const WeylElement& l) {
    std::vector<Poly> cs(static_cast<std::size_t>(l.max_x_degree()) + 1);
    for (const auto& [k, c] : l.terms())
        cs[static_cast<std::size_t>(k.x)] += Poly::monomial(k.y, c);
    return cs;
}

RationalFunction::RationalFunction(Poly n, Poly d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw Error("RationalFunction: zero denominator");
    Poly g = Poly::gcd(num, den);
    if (g.degree() > 0) {
        num = Poly::divexact(num, g);
        den = Poly::divexact(den, g);
    }
}

ResidueReport residues(const WeylElement& l, int n) {
    if (n < 1) throw Error("residues: order must be >= 1");
    auto cs = ode_coefficients(l);
    if (static_cast<int>(cs.size()) <= n || cs[static_cast<std::size_t>(n)].is_zero())
        throw MalformedOperator("operator has no order-n coefficient");
    const Poly& cn = cs[static_cast<std::size_t>(n)];
    const Poly cn1 = (n >= 1) ? cs[static_cast<std::size_t>(n) - 1] : Poly();

    if (Poly::gcd(cn, cn.derivative()).degree() > 0)
        throw RepeatedSingularity("leading coefficient has a multiple root");

    RationalFunction f(cn1, cn);

    ResidueReport rep;
    auto roots = poly_roots(cn.to_complex_coeffs());
    Poly dcn = cn.derivative();
    std::complex<double> sum = 0.0;
    Gaussian exact_sum;
    bool all_exact = true;
    for (auto r : roots) {
        ResidueEntry e;
        e.point = r;
        Rational re_r, im_r;
        Gaussian cand;
        bool got = approx_rational(r.real(), 1000000, re_r) &&
                   approx_rational(r.imag(), 1000000, im_r);
        if (got) cand = Gaussian(re_r, im_r);
        if (got && cn.eval(cand).is_zero()) {
            e.exact = true;
            e.exact_point = cand;
            e.exact_residue = cn1.eval(cand) / dcn.eval(cand);
            e.residue = e.exact_residue.to_complex();
            e.point = cand.to_complex();
            exact_sum += e.exact_residue;
        } else {
            all_exact = false;
            e.residue = cn1.eval(r) / dcn.eval(r);
        }
        sum += e.residue;
        rep.finite.push_back(std::move(e));
    }

    // Residue at infinity from the series of -c_{n-1}(1/w)/c_n(1/w) / w^2 at
    // w=0.  The polynomial part of the ratio has no residue there, so reduce
    // first.
    Poly tail = cn1.is_zero() ? Poly() : Poly::divrem(cn1, cn).second;
    const int m = cn.degree();
    Poly nw = tail.is_zero() ? Poly() : tail.reverse(m);
    Poly dw = cn.reverse(m);
    Gaussian d0 = dw.coeff(0);  // leading coefficient of c_n, nonzero
    Gaussian s0 = nw.coeff(0) / d0;
    Gaussian s1 = (nw.coeff(1) - s0 * dw.coeff(1)) / d0;
    rep.infinity_residue = -s1;

    rep.sum_residual = std::abs(sum + rep.infinity_residue.to_complex());
    if (all_exact) {
        Gaussian total = exact_sum + rep.infinity_residue;
        if (!total.is_zero()) rep.sum_residual = std::max(rep.sum_residual, 1.0);
    }
    return rep;
}

bool FuchsReport::all_regular() const {
    return std::all_of(points.begin(), points.end(),
                       [](const FuchsPoint& p) { return p.cls == PointClass::regular; });
}

FuchsReport fuchs_test(const WeylElement& l, int n) {
    auto cs = ode_coefficients(l);
    if (static_cast<int>(cs.size()) <= n || cs[static_cast<std::size_t>(n)].is_zero())
        throw MalformedOperator("operator has no order-n coefficient");
    const Poly& cn = cs[static_cast<std::size_t>(n)];

    // Square-free factors of c_n, refined until each factor is either coprime
    // to or fully accounted for inside every coefficient.
    std::vector<std::pair<Poly, int>> basis = cn.squarefree_decomposition();
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t bi = 0; bi < basis.size() && !changed; ++bi) {
            for (int k = 0; k < n && !changed; ++k) {
                if (cs[static_cast<std::size_t>(k)].is_zero()) continue;
                Poly rem = cs[static_cast<std::size_t>(k)];
                while (true) {
                    auto [q, r] = Poly::divrem(rem, basis[bi].first);
                    if (!r.is_zero()) break;
                    rem = q;
                    if (rem.is_zero()) break;
                }
                if (rem.is_zero()) continue;
                Poly g = Poly::gcd(basis[bi].first, rem);
                if (g.degree() > 0 && g.degree() < basis[bi].first.degree()) {
                    Poly cof = Poly::divexact(basis[bi].first, g);
                    int mult = basis[bi].second;
                    basis[bi] = {g, mult};
                    basis.emplace_back(cof, mult);
                    changed = true;
                }
            }
        }
    }

    FuchsReport rep;
    for (const auto& [f, mult] : basis) {
        bool regular = true;
        for (int k = 0; k < n && regular; ++k) {
            int need = mult - (n - k);
            if (need <= 0) continue;
            const Poly& ck = cs[static_cast<std::size_t>(k)];
            if (ck.is_zero()) continue;  // infinite valuation
            int have = 0;
            Poly rem = ck;
            while (have < need) {
                auto [q, r] = Poly::divrem(rem, f);
                if (!r.is_zero()) break;
                ++have;
                rem = std::move(q);
                if (rem.is_zero()) {
                    have = need;
                    break;
                }
            }
            if (have < need) regular = false;
        }
        for (auto r : poly_roots(f.to_complex_coeffs())) {
            FuchsPoint p;
            p.point = r;
            p.cls = regular ? PointClass::regular : PointClass::irregular;
            rep.points.push_back(p);
        }
    }

    // Infinity via t = 1/w: multiply through by w^M and test valuations at 0.
    int big = 0;
    for (const auto& c : cs) big = std::max(big, c.degree());
    WeylElement lw;
    WeylElement gen = WeylElement::monomial(2, 1, Gaussian(-1));  // -w^2 d/dw
    for (int k = 0; k < static_cast<int>(cs.size()); ++k) {
        const Poly& ck = cs[static_cast<std::size_t>(k)];
        if (ck.is_zero()) continue;
        lw += weyl_from_y_poly(ck.reverse(big)) * gen.pow(k);
    }
    auto cw = ode_coefficients(lw);
    int vn = cw[static_cast<std::size_t>(n)].valuation_at_zero();
    bool reg_inf = true;
    for (int k = 0; k < n; ++k) {
        if (cw[static_cast<std::size_t>(k)].is_zero()) continue;
        if (cw[static_cast<std::size_t>(k)].valuation_at_zero() - vn < -(n - k)) {
            reg_inf = false;
            break;
        }
    }
    FuchsPoint inf;
    inf.at_infinity = true;
    inf.cls = reg_inf ? PointClass::regular : PointClass::irregular;
    rep.points.push_back(inf);
    return rep;
}

}  // namespace dn
