#include <doctest.h>

#include "dn/dn_ops.hpp"
#include "dn/linalg.hpp"
#include "dn/rng.hpp"

using namespace dn;

namespace {

WeylElement Y(int p = 1) { return WeylElement::y(p); }
WeylElement X(int p = 1) { return WeylElement::x(p); }

// The cubic family: a(0,0)=lam, a(0,1)=-3/2 lam^2, a(0,2)=-lam^3,
// a(1,1)=-2 lam, a(1,2)=-3/2 lam^2, a(2,2)=lam.
DNMatrix cubic_family(const Rational& lam) {
    DNMatrix a(2);
    Gaussian l(lam);
    a.set(0, 0, l);
    a.set(0, 1, l * l * Gaussian(Rational(-3, 2)));
    a.set(0, 2, -(l * l * l));
    a.set(1, 1, l * Gaussian(-2));
    a.set(1, 2, l * l * Gaussian(Rational(-3, 2)));
    a.set(2, 2, l);
    return a;
}

WeylElement cubic_operator(const Rational& lam) {
    // t^3 D^2 + 3 t^2 D + t - lam
    return WeylElement::monomial(3, 2, Gaussian(1)) + WeylElement::monomial(2, 1, Gaussian(3)) +
           Y() - WeylElement::constant(Gaussian(lam));
}

}  // namespace

TEST_CASE("operator construction") {
    for (Rational lam : {Rational(0), Rational(1), Rational(2), Rational(-3, 2)}) {
        CHECK(build_l_infinity(cubic_family(lam)) == cubic_operator(lam));
    }

    DNMatrix a0(0);
    a0.set(0, 0, Gaussian(5));
    CHECK(build_l_infinity(a0) == Y() - WeylElement::constant(Gaussian(5)));

    DNMatrix a1(1);
    a1.set(0, 0, Gaussian(1));
    a1.set(0, 1, Gaussian(2));
    a1.set(1, 1, Gaussian(1));
    WeylElement want = WeylElement::theta() * Y() - WeylElement::theta() * Gaussian(2) -
                       WeylElement::one() - X();
    CHECK(build_l_infinity(a1) == want);
}

TEST_CASE("construction rejects numeric matrices") {
    DNMatrix a(1);
    a.set(0, 0, cx(0.5, 0.0));
    CHECK_THROWS_AS(build_l_infinity(a), InexactInput);
}

TEST_CASE("symmetry and adjoint verdicts") {
    DNMatrix a1(1);
    a1.set(0, 0, Gaussian(1));
    a1.set(0, 1, Gaussian(2));
    a1.set(1, 1, Gaussian(1));
    REQUIRE(a1.is_tau_symmetric());
    WeylElement l = build_l_infinity(a1);
    CanonicalDN c = to_canonical(l, 1);
    CHECK(check_symmetry(c));
    CHECK(check_adjoint(l, 1));

    // perturb g_1: -2 theta - 1 - eps
    CanonicalDN bad = c;
    bad.g[0] -= Poly(Gaussian(Rational(1, 7)));
    CHECK_FALSE(check_symmetry(bad));

    // order zero: t - 5 is fixed by the adjoint
    DNMatrix a0(0);
    a0.set(0, 0, Gaussian(5));
    CHECK(check_adjoint(build_l_infinity(a0), 0));

    // constant g_{n+1} always passes its own functional equation
    CanonicalDN constant_block;
    constant_block.n = 1;
    constant_block.g = {Poly(), Poly(Gaussian(Rational(9, 2)))};
    CHECK(check_symmetry(constant_block));

    // asymmetric matrix fails both
    DNMatrix b(1);
    b.set(0, 0, Gaussian(1));
    b.set(0, 1, Gaussian(2));
    b.set(1, 1, Gaussian(3));
    REQUIRE_FALSE(b.is_tau_symmetric());
    WeylElement lb = build_l_infinity(b);
    CHECK_FALSE(check_symmetry(to_canonical(lb, 1)));
    CHECK_FALSE(check_adjoint(lb, 1));
}

TEST_CASE("expansion change-of-variable matrices") {
    QMatrix k = k_matrix(1, 2);
    REQUIRE(k.size == 1);
    CHECK(k.at(0, 0) == Rational(-1));

    QMatrix k11 = k_matrix(1, 1);
    REQUIRE(k11.size == 2);
    CHECK(k11.at(0, 0) == Rational(1));
    CHECK(k11.at(0, 1) == Rational(0));
    CHECK(k11.at(1, 0) == Rational(-1));
    CHECK(k11.at(1, 1) == Rational(-1));

    for (int n = 0; n <= 8; ++n)
        for (int p = 1; p <= n + 1; ++p) {
            QMatrix kk = k_matrix(n, p);
            std::vector<Gaussian> e(static_cast<std::size_t>(kk.size));
            e[0] = Gaussian(1);
            CHECK_NOTHROW(solve_exact(kk, std::move(e)));
        }
}

TEST_CASE("matrix reconstruction") {
    // t - 5 -> (5)
    CanonicalDN c0;
    c0.n = 0;
    c0.g = {Poly(Gaussian(-5))};
    DNMatrix a0 = reconstruct(c0);
    CHECK(a0.entry(0, 0) == Gaussian(5));

    // the cubic family at lam = 2
    DNMatrix a2 = cubic_family(Rational(2));
    CanonicalDN c2 = to_canonical(cubic_operator(Rational(2)), 2);
    CHECK(reconstruct(c2) == a2);

    Rng rng(41);
    for (int n = 1; n <= 4; ++n) {
        for (int k = 0; k < 4; ++k) {
            DNMatrix a = rng.dn_matrix(n, k % 2 == 0);
            CHECK(reconstruct(to_canonical(build_l_infinity(a), n)) == a);
        }
    }
}

TEST_CASE("expansion dictionary matches the canonical coefficients") {
    Rng rng(43);
    for (int n = 1; n <= 3; ++n) {
        DNMatrix a = rng.dn_matrix(n, false);
        auto xs = weyl_expansion(a.tau());
        auto want = canonical_to_x(to_canonical(build_l_infinity(a), n));
        CHECK(xs == want);
    }
}

TEST_CASE("chart swap") {
    // constant block passes through with sign (+1)
    CanonicalDN c;
    c.n = 2;
    c.g = {Poly(), Poly(), Poly(Gaussian(Rational(7, 3)))};
    CanonicalDN w = to_dn0(c);
    CHECK(w.chart == CanonicalDN::Chart::w_zero);
    CHECK(w.g[2] == Poly(Gaussian(Rational(7, 3))));

    // order-one example: g_1 = -2x - 1 maps to G_1 = -2x - 1
    CanonicalDN c1;
    c1.n = 1;
    Poly x = Poly::x();
    c1.g = {x * Gaussian(-2) - Poly(Gaussian(1)), Poly(Gaussian(-1))};
    CanonicalDN w1 = to_dn0(c1);
    CHECK(w1.g[0] == x * Gaussian(-2) - Poly(Gaussian(1)));
    CHECK(w1.g[1] == Poly(Gaussian(-1)));

    // involutive
    Rng rng(47);
    for (int k = 0; k < 10; ++k) {
        int n = rng.uniform(0, 4);
        CanonicalDN r;
        r.n = n;
        for (int p = 1; p <= n + 1; ++p) {
            std::vector<Gaussian> cs;
            for (int d = 0; d <= n - p + 1; ++d) cs.push_back(rng.gaussian(5, 3, true));
            r.g.emplace_back(std::move(cs));
        }
        CanonicalDN twice = to_dn0(to_dn0(r));
        for (int p = 0; p <= n; ++p) CHECK(twice.g[static_cast<std::size_t>(p)] == r.g[static_cast<std::size_t>(p)]);
    }
}

TEST_CASE("the two w-chart assemblies agree") {
    // (w d/dw)^n + sum_p (-1)^n g_p(-w d/dw) (-w^2 d/dw)^{p-1} w
    // must equal the canonical product form built from the G_p.
    Rng rng(53);
    for (int n = 1; n <= 3; ++n) {
        DNMatrix a = rng.dn_matrix(n, true);
        CanonicalDN c = to_canonical(build_l_infinity(a), n);
        WeylElement via_canonical = from_canonical(to_dn0(c));

        WeylElement direct = WeylElement::theta().pow(n);
        WeylElement minus_w2d = WeylElement::monomial(2, 1, Gaussian(-1));
        for (int p = 1; p <= n + 1; ++p) {
            Poly gm = c.g[static_cast<std::size_t>(p) - 1].compose_affine(Gaussian(-1), Gaussian(0));
            WeylElement term = theta_to_grade0(gm) * minus_w2d.pow(p - 1) * Y();
            if (n % 2 != 0) term = -term;
            direct += term;
        }
        CHECK(direct == via_canonical);
    }
}

TEST_CASE("operator coefficients") {
    WeylElement l = cubic_operator(Rational(1));
    auto cs = ode_coefficients(l);
    REQUIRE(cs.size() == 3);
    Poly t = Poly::x();
    CHECK(cs[2] == t.pow(3));
    CHECK(cs[1] == t.pow(2) * Gaussian(3));
    CHECK(cs[0] == t - Poly(Gaussian(1)));
}

TEST_CASE("residues of the order-one example") {
    // (t^2 - 1) D + t: poles at 1 and -1, residues 1/2 each, -1 at infinity
    DNMatrix a(1);
    a.set(0, 1, Gaussian(1));
    WeylElement l = build_l_infinity(a);
    auto cs = ode_coefficients(l);
    Poly t = Poly::x();
    REQUIRE(cs[1] == t * t - Poly(Gaussian(1)));
    ResidueReport rep = residues(l, 1);
    REQUIRE(rep.finite.size() == 2);
    for (const auto& e : rep.finite) {
        CHECK(e.exact);
        CHECK(e.exact_residue == Gaussian(Rational(1, 2)));
    }
    CHECK(rep.infinity_residue == Gaussian(-1));
    CHECK(rep.sum_residual < 1e-12);
}

TEST_CASE("repeated singularities are rejected") {
    CHECK_THROWS_AS(residues(cubic_operator(Rational(1)), 2), RepeatedSingularity);
}

TEST_CASE("regularity classification") {
    // cubic family: irregular at 0 iff lam != 0; the point at infinity stays regular.
    for (Rational lam : {Rational(0), Rational(1), Rational(2), Rational(-3, 2)}) {
        FuchsReport rep = fuchs_test(cubic_operator(lam), 2);
        bool want_irregular = !(lam == Rational(0));
        bool saw_zero = false;
        for (const auto& p : rep.points) {
            if (p.at_infinity) {
                CHECK(p.cls == PointClass::regular);
            } else {
                CHECK(std::abs(p.point) < 1e-9);
                saw_zero = true;
                CHECK((p.cls == PointClass::irregular) == want_irregular);
            }
        }
        CHECK(saw_zero);
    }

    // (t^2-1) D + t is regular everywhere including infinity
    DNMatrix a(1);
    a.set(0, 1, Gaussian(1));
    FuchsReport rep = fuchs_test(build_l_infinity(a), 1);
    CHECK(rep.all_regular());
    REQUIRE(rep.points.size() == 3);
}

TEST_CASE("residue values on a random sample") {
    Rng rng(59);
    int done = 0;
    for (int tries = 0; tries < 40 && done < 3; ++tries) {
        DNMatrix a = rng.dn_matrix(3, true);
        WeylElement l = build_l_infinity(a);
        ResidueReport rep;
        try {
            rep = residues(l, 3);
        } catch (const RepeatedSingularity&) {
            continue;
        }
        REQUIRE(rep.finite.size() == 4);
        for (const auto& e : rep.finite) CHECK(std::abs(e.residue - cx(1.5, 0.0)) < 1e-9);
        CHECK(rep.infinity_residue == Gaussian(-6));
        CHECK(rep.sum_residual < 1e-9);
        ++done;
    }
    CHECK(done == 3);
}
