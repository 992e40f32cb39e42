#include <doctest.h>

#include <cmath>

#include "dn/dn_ops.hpp"
#include "dn/rng.hpp"
#include "dn/spectral.hpp"

using namespace dn;

namespace {

DNMatrix swap_matrix() {  // [[0,1],[1,0]]
    DNMatrix a(1);
    a.set(0, 1, Gaussian(1));
    return a;
}

DNMatrix cubic_lam1() {
    DNMatrix a(2);
    a.set(0, 0, Gaussian(1));
    a.set(0, 1, Gaussian(Rational(-3, 2)));
    a.set(0, 2, Gaussian(-1));
    a.set(1, 1, Gaussian(-2));
    a.set(1, 2, Gaussian(Rational(-3, 2)));
    a.set(2, 2, Gaussian(1));
    return a;
}

}  // namespace

TEST_CASE("characteristic polynomial via the minor recursion") {
    auto chi = char_poly(swap_matrix());
    REQUIRE(chi.size() == 3);
    CHECK(std::abs(chi[0] - cx(-1)) < 1e-15);  // t^2 - 1
    CHECK(std::abs(chi[1]) < 1e-15);
    CHECK(std::abs(chi[2] - cx(1)) < 1e-15);

    auto chi3 = char_poly(cubic_lam1());
    REQUIRE(chi3.size() == 4);  // t^3 exactly
    for (int k = 0; k < 3; ++k) CHECK(std::abs(chi3[static_cast<std::size_t>(k)]) < 1e-12);
    CHECK(std::abs(chi3[3] - cx(1)) < 1e-15);
}

TEST_CASE("eigendecomposition of the swap matrix") {
    ConnectionSpectrum spec = eigendecompose(swap_matrix());
    REQUIRE(spec.lambdas.size() == 2);
    CHECK(std::abs(spec.lambdas[0] + 1.0) < 1e-12);
    CHECK(std::abs(spec.lambdas[1] - 1.0) < 1e-12);
    normalize_basis(spec);
    // C^t J C = I
    CMat ctjc = spec.c.transpose() * j_matrix(1) * spec.c;
    CHECK((ctjc - CMat::identity(2)).norm_fro() < 1e-12);
    // normalized columns are (1,1)/sqrt(2) and (1,-1)/(i sqrt(2)), up to sign
    double s2 = std::sqrt(2.0);
    auto matches = [&](int col, cx a, cx b) {
        double direct = std::abs(spec.c.at(0, col) - a) + std::abs(spec.c.at(1, col) - b);
        double flipped = std::abs(spec.c.at(0, col) + a) + std::abs(spec.c.at(1, col) + b);
        return std::min(direct, flipped) < 1e-12;
    };
    CHECK(matches(1, cx(1 / s2), cx(1 / s2)));                       // eigenvalue +1
    CHECK(matches(0, cx(1) / (cx(0, 1) * s2), cx(-1) / (cx(0, 1) * s2)));  // eigenvalue -1
    // normalize is idempotent
    ConnectionSpectrum again = spec;
    normalize_basis(again);
    CHECK((again.c - spec.c).norm_fro() < 1e-12);
}

TEST_CASE("degenerate spectra are rejected") {
    CHECK_THROWS_AS(eigendecompose(cubic_lam1()), DegenerateSpectrum);
}

TEST_CASE("isotropic eigenvectors are reported") {
    // a_01 = 0 puts an eigenvector on the isotropic cone of the pairing
    DNMatrix a(1);
    a.set(0, 0, Gaussian(2));
    a.set(0, 1, Gaussian(0));
    a.set(1, 1, Gaussian(0));
    ConnectionSpectrum spec = eigendecompose(a);
    CHECK_THROWS_AS(normalize_basis(spec), NullVector);
}

TEST_CASE("prescribed rational spectrum is recovered") {
    // order 2, symmetric: entries solved from the target char poly
    // (t-l0)(t-l1)(t-l2) with a_00 = a_22 = s, a_01 = a_12 = q, a_11 = r.
    Rational l0(1), l1(Rational(-1, 2)), l2(3);
    Rational e1 = l0 + l1 + l2;
    Rational e2 = l0 * l1 + l0 * l2 + l1 * l2;
    Rational e3 = l0 * l1 * l2;
    Rational s(2);                       // free choice
    Rational r = e1 - 2 * s;
    Rational q = (s * s + 2 * s * r - e2) / 2;
    Rational c = 2 * q * s - s * s * r + e3;
    DNMatrix a(2);
    a.set(0, 0, Gaussian(s));
    a.set(2, 2, Gaussian(s));
    a.set(0, 1, Gaussian(q));
    a.set(1, 2, Gaussian(q));
    a.set(1, 1, Gaussian(r));
    a.set(0, 2, Gaussian(c));
    REQUIRE(a.is_tau_symmetric());
    ConnectionSpectrum spec = eigendecompose(a);
    std::vector<double> got;
    for (auto l : spec.lambdas) {
        CHECK(std::abs(l.imag()) < 1e-10);
        got.push_back(l.real());
    }
    std::sort(got.begin(), got.end());
    CHECK(std::abs(got[0] + 0.5) < 1e-10);
    CHECK(std::abs(got[1] - 1.0) < 1e-10);
    CHECK(std::abs(got[2] - 3.0) < 1e-10);
}

TEST_CASE("residue matrices of the swap matrix") {
    ConnectionSpectrum spec = eigendecompose(swap_matrix());
    normalize_basis(spec);
    residue_matrices(spec);
    REQUIRE(spec.s.size() == 2);
    for (const auto& s : spec.s) {
        cx tr = s.at(0, 0) + s.at(1, 1);
        CHECK(std::abs(tr - cx(-0.5)) < 1e-12);
        auto eigs = eigenvalues_qr(s);
        bool zero_and_half = (std::abs(eigs[0]) < 1e-10 && std::abs(eigs[1] + 0.5) < 1e-10) ||
                             (std::abs(eigs[1]) < 1e-10 && std::abs(eigs[0] + 0.5) < 1e-10);
        CHECK(zero_and_half);
    }
    // sign flip of a column leaves the residue matrices unchanged
    ConnectionSpectrum flipped = spec;
    for (int i = 0; i < 2; ++i) flipped.c.at(i, 0) = -flipped.c.at(i, 0);
    residue_matrices(flipped);
    CHECK((flipped.s[0] - spec.s[0]).norm_fro() < 1e-14);
    CHECK((flipped.s[1] - spec.s[1]).norm_fro() < 1e-14);
}

TEST_CASE("residue matrices against the direct conjugation") {
    Rng rng(61);
    DNMatrix a = rng.dn_matrix(3, true);
    ConnectionSpectrum spec;
    try {
        spec = eigendecompose(a);
    } catch (const DegenerateSpectrum&) {
        return;  // unlucky draw; covered by the seeded suites
    }
    normalize_basis(spec);
    residue_matrices(spec);
    CMat cinv = LU(spec.c).inverse();
    for (int j = 0; j <= 3; ++j) {
        CMat ej(4, 4);
        ej.at(j, j) = 1.0;
        CMat direct = -(t_matrix(3) * spec.c * ej * cinv);
        CHECK((direct - spec.s[static_cast<std::size_t>(j)]).norm_fro() < 1e-8);
    }
}

TEST_CASE("connection right-hand side") {
    ConnectionSpectrum spec = eigendecompose(swap_matrix());
    normalize_basis(spec);
    residue_matrices(spec);
    cx t(3.0, 0.0);
    CMat direct = connection_rhs(spec, t);
    CMat pf = connection_rhs_partial_fractions(spec, t);
    CHECK((direct - pf).norm_fro() < 1e-12);
    CHECK(std::abs(direct.at(0, 0)) < 1e-15);
    CHECK(std::abs(direct.at(0, 1)) < 1e-15);
    // t -> infinity: t * rhs -> -T
    cx big(1e8, 1e7);
    CMat scaled = connection_rhs(spec, big) * big;
    CHECK((scaled + t_matrix(1)).norm_fro() < 1e-6);
    CHECK_THROWS_AS(connection_rhs(spec, cx(1.0, 0.0), 1e-6), NearSingularity);
}

TEST_CASE("first model connection") {
    DNMatrix a = swap_matrix();
    FirstModelConnection f = first_model_connection(a);
    CHECK(f.pole.at(0, 0) == cx(-1.0));
    CHECK(f.pole.at(1, 1) == cx(-2.0));
    CHECK(f.constant.at(0, 1) == cx(1.0));
    CMat at2 = f.eval(cx(2.0));
    CHECK(std::abs(at2.at(0, 0) - cx(-0.5)) < 1e-15);

    DNMatrix a0(0);
    a0.set(0, 0, Gaussian(3));
    FirstModelConnection f0 = first_model_connection(a0);
    CHECK(f0.constant.at(0, 0) == cx(3.0));
    CHECK(f0.pole.at(0, 0) == cx(-1.0));
}

TEST_CASE("series matrices and the gauge change at infinity") {
    DNMatrix a = swap_matrix();
    SeriesMatrix g = SeriesMatrix::geometric(t_matrix(1), to_cmat(a), 4);
    CHECK((g.constant_term() - t_matrix(1)).norm_fro() == 0.0);

    NilpotencyCertificate cert = infinity_exponents(a, 4);
    CHECK(cert.index == 2);
    CHECK(cert.pow_np1_norm == 0.0);
    CHECK(cert.pow_n_norm > 0.9);  // the subdiagonal entry is 1
    CHECK_THROWS_AS(infinity_exponents(a, 2), TruncationTooSmall);

    Rng rng(67);
    for (int n = 1; n <= 4; ++n) {
        DNMatrix b = rng.dn_matrix(n, false);
        NilpotencyCertificate c = infinity_exponents(b, n + 2);
        CHECK(c.index == n + 1);
        CHECK(c.pow_np1_norm == 0.0);
        double expected = 1;
        for (int i = 1; i <= n; ++i) expected *= i;
        CHECK(c.pow_n_norm >= expected * 0.999);
    }
}
