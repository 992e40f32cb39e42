#include <doctest.h>

#include <algorithm>

#include "dn/linalg.hpp"
#include "dn/roots.hpp"

using namespace dn;

TEST_CASE("lu solve and inverse") {
    CMat m(3, 3);
    m.at(0, 0) = {2, 1};
    m.at(0, 1) = 1;
    m.at(0, 2) = {0, -1};
    m.at(1, 0) = 0.5;
    m.at(1, 1) = {3, 0};
    m.at(1, 2) = 2;
    m.at(2, 0) = {0, 2};
    m.at(2, 1) = -1;
    m.at(2, 2) = {1, 1};
    LU lu(m);
    CMat inv = lu.inverse();
    CHECK((m * inv - CMat::identity(3)).norm_fro() < 1e-12);
    CHECK((inv * m - CMat::identity(3)).norm_fro() < 1e-12);
    CHECK_THROWS_AS(LU(CMat(2, 2)), NearSingularity);
}

TEST_CASE("jacobi svd") {
    CMat m(3, 2);
    m.at(0, 0) = 3;
    m.at(1, 1) = {0, 4};
    SVD s = svd_jacobi(m);
    REQUIRE(s.s.size() == 2);
    CHECK(s.s[0] == doctest::Approx(4.0));
    CHECK(s.s[1] == doctest::Approx(3.0));

    // rank-one matrix
    CMat r(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.at(i, j) = cx(i + 1.0, 0) * cx(j - 1.5, 0.5);
    CHECK(rank(r, 1e-10) == 1);
    auto ns = null_space(r, 1e-10);
    CHECK(ns.size() == 2);
    for (const auto& v : ns) {
        auto rv = matvec(r, v);
        double norm = 0;
        for (auto val : rv) norm += std::norm(val);
        CHECK(std::sqrt(norm) < 1e-10);
    }
}

TEST_CASE("qr eigenvalues") {
    // known diagonalizable matrix with complex spectrum
    CMat m(3, 3);
    m.at(0, 0) = 1;
    m.at(0, 1) = 2;
    m.at(1, 0) = -2;
    m.at(1, 1) = 1;
    m.at(2, 2) = {4, 1};
    auto e = eigenvalues_qr(m);
    REQUIRE(e.size() == 3);
    auto has = [&](cx w) {
        return std::any_of(e.begin(), e.end(), [&](cx z) { return std::abs(z - w) < 1e-10; });
    };
    CHECK(has({1, 2}));
    CHECK(has({1, -2}));
    CHECK(has({4, 1}));

    // repeated non-defective eigenvalue stays accurate
    CMat p(4, 4);
    for (int i = 0; i < 4; ++i) p.at(i, i) = 1.0;
    p.at(0, 3) = 0.0;
    p.at(2, 2) = -1.0;
    auto e2 = eigenvalues_qr(p);
    int ones = 0, minus = 0;
    for (auto z : e2) {
        if (std::abs(z - cx(1.0)) < 1e-12) ++ones;
        if (std::abs(z + cx(1.0)) < 1e-12) ++minus;
    }
    CHECK(ones == 3);
    CHECK(minus == 1);
}

TEST_CASE("qr eigenvalues of a conjugated reflection cluster") {
    // B = V D V^{-1} with D = diag(1, 1, -1), V well conditioned.
    CMat v(3, 3), d(3, 3);
    v.at(0, 0) = 1;
    v.at(0, 1) = 2;
    v.at(0, 2) = {0, 1};
    v.at(1, 0) = 0.5;
    v.at(1, 1) = -1;
    v.at(1, 2) = 1;
    v.at(2, 0) = {0, -1};
    v.at(2, 1) = 0.25;
    v.at(2, 2) = 2;
    d.at(0, 0) = 1;
    d.at(1, 1) = 1;
    d.at(2, 2) = -1;
    CMat b = v * d * LU(v).inverse();
    auto e = eigenvalues_qr(b);
    int ones = 0, minus = 0;
    for (auto z : e) {
        if (std::abs(z - cx(1.0)) < 1e-9) ++ones;
        if (std::abs(z + cx(1.0)) < 1e-9) ++minus;
    }
    CHECK(ones == 2);
    CHECK(minus == 1);
}

TEST_CASE("aberth root finder") {
    // (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6
    std::vector<cx> c{-6, 11, -6, 1};
    auto r = poly_roots(c);
    std::sort(r.begin(), r.end(), [](cx a, cx b) { return a.real() < b.real(); });
    REQUIRE(r.size() == 3);
    CHECK(std::abs(r[0] - cx(1)) < 1e-12);
    CHECK(std::abs(r[1] - cx(2)) < 1e-12);
    CHECK(std::abs(r[2] - cx(3)) < 1e-12);

    // roots at the origin and complex pair
    std::vector<cx> c2{0, 0, 1, 0, 1};  // x^2 (x^2 + 1)
    auto r2 = poly_roots(c2);
    int zeros = 0, eye = 0;
    for (auto z : r2) {
        if (std::abs(z) < 1e-12) ++zeros;
        if (std::abs(z - cx(0, 1)) < 1e-10 || std::abs(z + cx(0, 1)) < 1e-10) ++eye;
    }
    CHECK(zeros == 2);
    CHECK(eye == 2);
}

TEST_CASE("clustered eigenvalues average a defective block") {
    // Jordan block perturbed below: eigenvalues split like sqrt(eps), the
    // cluster mean stays near the true value.
    CMat j(3, 3);
    for (int i = 0; i < 3; ++i) j.at(i, i) = 2.0;
    j.at(0, 1) = 1.0;
    j.at(1, 2) = 1.0;
    j.at(2, 0) = 1e-10;
    auto raw = eigenvalues_qr(j);
    auto clustered = clustered_eigenvalues(j, 1e-2);
    double raw_worst = 0, mean_worst = 0;
    for (auto e : raw) raw_worst = std::max(raw_worst, std::abs(e - cx(2.0)));
    for (auto e : clustered) mean_worst = std::max(mean_worst, std::abs(e - cx(2.0)));
    CHECK(raw_worst > 1e-5);      // the split is real
    CHECK(mean_worst < 1e-10);    // the mean recovers the trace
}

TEST_CASE("matrix powers") {
    CMat n(3, 3);
    n.at(1, 0) = 1;
    n.at(2, 1) = 2;
    CHECK(mat_pow(n, 2).at(2, 0) == cx(2.0));
    CHECK(mat_pow(n, 3).norm_fro() == 0.0);
}
