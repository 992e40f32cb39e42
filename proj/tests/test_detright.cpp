#include <doctest.h>

#include "dn/detright.hpp"
#include "dn/rng.hpp"

using namespace dn;

namespace {
WeylElement Y(int p = 1) { return WeylElement::y(p); }
WeylElement X(int p = 1) { return WeylElement::x(p); }
}  // namespace

TEST_CASE("two by two expansions") {
    // [[a, b], [-1, d]] -> d a + b
    OperatorMatrix m(2);
    m.at(0, 0) = Y();               // a
    m.at(0, 1) = X();               // b
    m.at(1, 0) = -WeylElement::one();
    m.at(1, 1) = X(2);              // d
    WeylElement want = X(2) * Y() + X();
    AlmostTriangularMatrix atm(m);
    CHECK(detright_forward(atm) == want);
    CHECK(detright_reverse(atm) == want);
    CHECK(detright_permutation(m) == want);

    // general 2x2 [[a,b],[c,d]] -> d a - b c (column n first)
    OperatorMatrix g(2);
    g.at(0, 0) = Y();
    g.at(0, 1) = X();
    g.at(1, 0) = Y(2);
    g.at(1, 1) = X(2);
    CHECK(detright_permutation(g) == X(2) * Y() - X() * Y(2));
}

TEST_CASE("identity and zero rows") {
    OperatorMatrix id(4);
    for (int i = 0; i < 4; ++i) id.at(i, i) = WeylElement::one();
    CHECK(detright_permutation(id) == WeylElement::one());

    // almost triangular with a zero top row
    OperatorMatrix z(3);
    for (int i = 1; i < 3; ++i) z.at(i, i - 1) = -WeylElement::one();
    z.at(1, 1) = Y();
    z.at(1, 2) = X();
    z.at(2, 2) = Y() * X();
    AlmostTriangularMatrix atm(z);
    CHECK(detright_forward(atm).is_zero());
    CHECK(detright_permutation(z).is_zero());
}

TEST_CASE("one by one") {
    OperatorMatrix m(1);
    m.at(0, 0) = Y() + X();
    CHECK(detright_permutation(m) == Y() + X());
    CHECK(detright_permutation(sign_conjugate(m)) == -(Y() + X()));
}

TEST_CASE("permutation oracle size bound") {
    OperatorMatrix m(5);
    for (int i = 0; i < 5; ++i) m.at(i, i) = WeylElement::one();
    CHECK_THROWS_AS(detright_permutation(m, 4), SizeExceeded);
}

TEST_CASE("tau transpose") {
    Rng rng(3);
    OperatorMatrix m(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m.at(i, j) = rng.weyl(2, 2, 2);
    CHECK(tau(tau(m)) == m);
    // diagonal reversal
    OperatorMatrix d(3);
    d.at(0, 0) = Y();
    d.at(1, 1) = X();
    d.at(2, 2) = Y() * X();
    OperatorMatrix td = tau(d);
    CHECK(td.at(0, 0) == Y() * X());
    CHECK(td.at(1, 1) == X());
    CHECK(td.at(2, 2) == Y());
}

TEST_CASE("tau preserves almost triangular matrices") {
    Rng rng(5);
    for (int k = 0; k < 5; ++k) {
        OperatorMatrix m(4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                if (i == j + 1)
                    m.at(i, j) = -WeylElement::one();
                else if (i <= j)
                    m.at(i, j) = rng.weyl(2, 2, 2);
            }
        CHECK(is_almost_triangular(tau(m)));
    }
}

TEST_CASE("forward equals reverse equals the permutation oracle") {
    Rng rng(17);
    for (int size = 2; size <= 5; ++size) {
        for (int k = 0; k < 6; ++k) {
            OperatorMatrix m(size);
            for (int i = 0; i < size; ++i)
                for (int j = 0; j < size; ++j) {
                    if (i == j + 1)
                        m.at(i, j) = -WeylElement::one();
                    else if (i <= j)
                        m.at(i, j) = rng.weyl(2, 2, 2);
                }
            AlmostTriangularMatrix atm(m);
            WeylElement f = detright_forward(atm);
            CHECK(f == detright_reverse(atm));
            CHECK(f == detright_permutation(m));
        }
    }
}

TEST_CASE("right principal minors expose the recursion") {
    OperatorMatrix m(2);
    m.at(0, 0) = Y();
    m.at(0, 1) = X();
    m.at(1, 0) = -WeylElement::one();
    m.at(1, 1) = X(2);
    auto minors = right_principal_minors(AlmostTriangularMatrix(m));
    REQUIRE(minors.size() == 3);
    CHECK(minors[0] == WeylElement::one());
    CHECK(minors[1] == Y());
    CHECK(minors[2] == X(2) * Y() + X());
}

TEST_CASE("sign conjugation flips by the size parity") {
    Rng rng(23);
    for (int size = 2; size <= 3; ++size) {
        OperatorMatrix m(size);
        for (int i = 0; i < size; ++i)
            for (int j = 0; j < size; ++j) m.at(i, j) = rng.weyl(1, 1, 2);
        WeylElement lhs = detright_permutation(sign_conjugate(m));
        WeylElement rhs = detright_permutation(m);
        if (size % 2 != 0) rhs = -rhs;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("determinant anti-involution identity") {
    Rng rng(29);
    for (int k = 0; k < 6; ++k) {
        int size = rng.uniform(2, 4);
        OperatorMatrix m(size);
        for (int i = 0; i < size; ++i)
            for (int j = 0; j < size; ++j) {
                if (i == j + 1)
                    m.at(i, j) = -WeylElement::one();
                else if (i <= j)
                    m.at(i, j) = rng.weyl(2, 2, 2);
            }
        WeylElement lhs = detright_forward(AlmostTriangularMatrix(m)).adjoint();
        WeylElement rhs = detright_forward(AlmostTriangularMatrix(adjoint_entrywise(tau(m))));
        CHECK(lhs == rhs);
    }
}
