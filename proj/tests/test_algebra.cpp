#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cmc1/algebra.hpp"
#include "oracles.hpp"

using namespace cmc1;
using namespace cmc1::testing;

TEST_CASE("star action basics") {
    Mat2 id = Mat2::identity();
    ExtComplex w(Complex(5, 2));
    CHECK(star_action(id, w).finite() == Complex(5, 2));

    // sigma_3 = (0 i; i 0) acts as w -> 1/w
    Mat2 s3{Complex(0, 0), Complex(0, 1), Complex(0, 1), Complex(0, 0)};
    CHECK(std::abs(star_action(s3, ExtComplex(Complex(2, 0))).finite() - Complex(0.5, 0)) <
          1e-15);
    CHECK(star_action(s3, ExtComplex(Complex{})).is_inf());
    CHECK(std::abs(star_action(s3, ExtComplex::inf()).finite()) < 1e-15);
}

TEST_CASE("star action composition over random SU(2) pairs") {
    for (int i = 0; i < 200; ++i) {
        Mat2 a = random_su2(), b = random_su2();
        ExtComplex w(random_complex(3.0));
        ExtComplex lhs = star_action(a, star_action(b, w));
        ExtComplex rhs = star_action(a * b, w);
        if (lhs.is_inf() || rhs.is_inf()) {
            CHECK(lhs.is_inf() == rhs.is_inf());
        } else {
            CHECK(std::abs(lhs.finite() - rhs.finite()) <
                  1e-12 * std::max(1.0, std::abs(rhs.finite())));
        }
    }
}

TEST_CASE("to_hyperbolic") {
    CHECK(dist(to_hyperbolic(Mat2::identity()).X, Mat2::identity()) == 0.0);

    // horosphere lift at z with a = 1
    Complex z(0.7, -0.4);
    Mat2 F{Complex(1), Complex(0), z, Complex(1)};
    Mat2 expect{Complex(1), std::conj(z), z, Complex(1) + std::norm(z)};
    CHECK(dist(to_hyperbolic(F).X, expect) < 1e-15);

    Mat2 bad{Complex(2), Complex(0), Complex(0), Complex(2)};
    CHECK_THROWS_AS(to_hyperbolic(bad), NonUnimodular);
}

TEST_CASE("to_hyperbolic eigenvalue oracle and rigid-motion covariance") {
    for (int i = 0; i < 100; ++i) {
        Mat2 F = random_sl2();
        Mat2 X = to_hyperbolic(F).X;
        auto ev = eigenvalues(X);
        CHECK(ev[0].real() > 0);
        CHECK(ev[1].real() > 0);
        CHECK(std::abs(ev[0] * ev[1] - 1.0) < 1e-9);

        Mat2 a = random_sl2();
        Mat2 lhs = to_hyperbolic(a * F).X;
        Mat2 rhs = a * X * a.adjoint();
        CHECK(dist(lhs, rhs) < 1e-9 * std::max(1.0, rhs.frobenius()));
    }
}

TEST_CASE("hermitian_to_ball") {
    BallPoint o = hermitian_to_ball(to_hyperbolic(Mat2::identity()));
    CHECK(o.norm() == 0.0);

    HermitianPoint X{Mat2{Complex(1), Complex(1), Complex(1), Complex(2)}};
    BallPoint p = hermitian_to_ball(X);
    CHECK(p.x1 == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(p.x2 == doctest::Approx(0.0));
    CHECK(p.x3 == doctest::Approx(-0.2).epsilon(1e-14));

    for (int i = 0; i < 10000; ++i) {
        Mat2 F = random_sl2(2.0);
        CHECK(hermitian_to_ball(to_hyperbolic(F)).norm() < 1.0);
    }
}

TEST_CASE("su2 defect") {
    for (int i = 0; i < 50; ++i) CHECK(su2_defect(random_su2()) < 1e-14);

    double th = 0.63;
    Mat2 d{std::polar(1.0, th), Complex(0), Complex(0), std::polar(1.0, -th)};
    CHECK(su2_defect(d) < 1e-14);

    Mat2 m{Complex(2), Complex(0), Complex(0), Complex(0.5)};
    CHECK(su2_defect(m) == doctest::Approx(std::sqrt(9.0 + 9.0 / 16.0)).epsilon(1e-12));

    // the zero set is invariant under one-sided SU(2) multiplication
    for (int i = 0; i < 50; ++i) {
        Mat2 u = random_su2(), v = random_su2();
        CHECK(su2_defect(u * v) < 1e-13);
    }
}

TEST_CASE("hermitian_sqrt") {
    for (int i = 0; i < 100; ++i) {
        Mat2 F = random_sl2();
        Mat2 H = F * F.adjoint();  // positive definite, det 1
        Mat2 S = hermitian_sqrt(H);
        CHECK(dist(S * S, H) < 1e-10 * std::max(1.0, H.frobenius()));
        CHECK(dist(S, S.adjoint()) < 1e-12 * S.frobenius());
    }
}
