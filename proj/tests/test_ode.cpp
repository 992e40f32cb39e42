#include <doctest.h>

#include <cmath>

#include "dn/ode.hpp"

using namespace dn;

TEST_CASE("scalar exponential") {
    MatrixRhs rhs = [](cx) {
        CMat m(1, 1);
        m.at(0, 0) = 1.0;
        return m;
    };
    Path p{line_segment(0.0, 1.0)};
    CMat y = integrate_path(rhs, p, CMat::identity(1));
    CHECK(std::abs(y.at(0, 0) - cx(std::exp(1.0))) < 1e-10);
}

TEST_CASE("loop multiplier of a first order pole") {
    // y' = (a/t) y around the unit circle: multiplier exp(2 pi i a)
    cx a(1.0 / 3.0, 0.0);
    MatrixRhs rhs = [a](cx t) {
        CMat m(1, 1);
        m.at(0, 0) = a / t;
        return m;
    };
    Path loop{arc_segment(0.0, 1.0, 0.0, 2 * M_PI)};
    CMat y = integrate_path(rhs, loop, CMat::identity(1));
    cx want = std::exp(cx(0, 2 * M_PI) * a);
    CHECK(std::abs(y.at(0, 0) - want) < 1e-9);

    // reversing the path inverts the transport
    CMat back = integrate_path(rhs, reversed(loop), y);
    CHECK(std::abs(back.at(0, 0) - cx(1.0)) < 1e-9);
}

TEST_CASE("contractible loop without enclosed singularity") {
    MatrixRhs rhs = [](cx t) {
        CMat m(2, 2);
        m.at(0, 0) = 1.0 / t;
        m.at(0, 1) = 0.5;
        m.at(1, 1) = -2.0 / t;
        return m;
    };
    Path loop{arc_segment(cx(5.0, 0.0), 1.0, 0.0, 2 * M_PI)};
    CMat y = integrate_path(rhs, loop, CMat::identity(2));
    CHECK((y - CMat::identity(2)).norm_fro() < 1e-8);
}

TEST_CASE("step underflow near a singularity") {
    MatrixRhs rhs = [](cx t) {
        CMat m(1, 1);
        m.at(0, 0) = 1.0 / (t * t);
        return m;
    };
    // Path running straight into the double pole at 0.
    Path p{line_segment(1.0, 0.0)};
    CHECK_THROWS_AS(integrate_path(rhs, p, CMat::identity(1)), StepUnderflow);
}

TEST_CASE("segment geometry") {
    Segment arc = arc_segment(cx(1.0, 1.0), 2.0, 0.0, M_PI);
    CHECK(std::abs(arc.start() - cx(3.0, 1.0)) < 1e-15);
    CHECK(std::abs(arc.end() - cx(-1.0, 1.0)) < 1e-15);
    CHECK(arc.length() == doctest::Approx(2.0 * M_PI));
    Path p{line_segment(0.0, cx(3.0, 4.0))};
    CHECK(path_length(p) == doctest::Approx(5.0));
}
