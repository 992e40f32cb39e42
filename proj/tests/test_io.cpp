#include <doctest.h>

#include <json.hpp>

#include "dn/dn_ops.hpp"
#include "dn/serialize.hpp"
#include "dn/linalg.hpp"
#include "dn/rng.hpp"
#include "dn/weyl.hpp"

using namespace dn;

TEST_CASE("matrix json round trip") {
    Rng rng(73);
    for (int n = 0; n <= 4; ++n) {
        DNMatrix a = rng.dn_matrix(n, n % 2 == 0);
        DNMatrix b = dn_matrix_from_json(to_json(a));
        CHECK(a == b);
    }
}

TEST_CASE("matrix json accepts the documented entry formats") {
    nlohmann::json j = {
        {"n", 1},
        {"entries",
         {{"0,0", "1"}, {"0,1", "-3/2"}, {"1,1", {{"re", "0"}, {"im", "2/5"}}}}}};
    DNMatrix a = dn_matrix_from_json(j);
    CHECK(a.exact());
    CHECK(a.entry(0, 0) == Gaussian(1));
    CHECK(a.entry(0, 1) == Gaussian(Rational(-3, 2)));
    CHECK(a.entry(1, 1) == Gaussian(Rational(0), Rational(2, 5)));
    CHECK(a.entry(1, 0) == Gaussian(1));  // fixed subdiagonal

    nlohmann::json jf = {{"n", 0}, {"entries", {{"0,0", -1.5}}}};
    DNMatrix f = dn_matrix_from_json(jf);
    CHECK_FALSE(f.exact());
    CHECK(f.entry_c(0, 0) == cx(-1.5, 0.0));

    CHECK_THROWS_AS(dn_matrix_from_json(nlohmann::json{{"entries", nlohmann::json::object()}}),
                    MalformedMatrix);
    nlohmann::json out_of_range = {{"n", 1}, {"entries", {{"1,0", "3"}}}};
    CHECK_THROWS_AS(dn_matrix_from_json(out_of_range), MalformedMatrix);
}

TEST_CASE("operator matrix json round trip") {
    Rng rng(79);
    OperatorMatrix m(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j + 1)
                m.at(i, j) = -WeylElement::one();
            else if (i <= j)
                m.at(i, j) = rng.weyl(2, 2, 2, true);
        }
    CHECK(operator_matrix_from_json(to_json(m)) == m);
    CHECK_THROWS_AS(operator_matrix_from_json(nlohmann::json{{"size", 2}}), ParseError);
}

TEST_CASE("rational function reduction") {
    Poly t = Poly::x();
    RationalFunction f((t - Poly(Gaussian(1))) * (t + Poly(Gaussian(2))),
                       (t - Poly(Gaussian(1))) * t * Gaussian(3));
    CHECK(f.num.degree() == 1);
    CHECK(f.den.degree() == 1);
    CHECK(Poly::gcd(f.num, f.den).degree() == 0);
    CHECK_THROWS_AS(RationalFunction(t, Poly()), Error);
}

TEST_CASE("tau symmetry detection") {
    DNMatrix a(2);
    a.set(0, 0, Gaussian(2));
    a.set(2, 2, Gaussian(2));
    a.set(0, 1, Gaussian(Rational(1, 3)));
    a.set(1, 2, Gaussian(Rational(1, 3)));
    a.set(1, 1, Gaussian(-1));
    a.set(0, 2, Gaussian(7));
    CHECK(a.is_tau_symmetric());
    CHECK(a.tau() == a);
    a.set(0, 1, Gaussian(0));
    CHECK_FALSE(a.is_tau_symmetric());
    CHECK(a.tau().entry(1, 2) == Gaussian(0));
    CHECK(a.tau().entry(0, 1) == Gaussian(Rational(1, 3)));
}
