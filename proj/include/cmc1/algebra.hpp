#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <optional>

#include "cmc1/errors.hpp"

namespace cmc1 {

using Complex = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

/// A point of the Riemann sphere: either a finite complex number or the
/// point at infinity, kept as a tag so projective operations stay exact.
struct ExtComplex {
    Complex value{0.0, 0.0};
    bool infinite = false;

    ExtComplex() = default;
    ExtComplex(Complex v) : value(v) {}              // NOLINT implicit
    ExtComplex(double v) : value(v, 0.0) {}          // NOLINT implicit
    static ExtComplex inf() { return ExtComplex{Complex{}, true}; }

    bool is_inf() const { return infinite; }
    Complex finite() const {
        if (infinite) throw Error("ExtComplex: finite() on infinity");
        return value;
    }

private:
    ExtComplex(Complex v, bool inf_) : value(v), infinite(inf_) {}
};

inline bool ext_close(const ExtComplex& a, const ExtComplex& b, double tol = 1e-9) {
    if (a.is_inf() || b.is_inf()) return a.is_inf() && b.is_inf();
    return std::abs(a.value - b.value) <= tol;
}

/// 2x2 complex matrix, row major.  Small enough that everything is by value.
struct Mat2 {
    Complex a11{}, a12{}, a21{}, a22{};

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Mat2 zero() { return {}; }

    Complex det() const { return a11 * a22 - a12 * a21; }
    Complex trace() const { return a11 + a22; }

    Mat2 adjoint() const {  // conjugate transpose
        return {std::conj(a11), std::conj(a21), std::conj(a12), std::conj(a22)};
    }
    Mat2 transpose() const { return {a11, a21, a12, a22}; }
    Mat2 conj() const { return {std::conj(a11), std::conj(a12), std::conj(a21), std::conj(a22)}; }

    Mat2 inverse() const {
        Complex d = det();
        if (std::abs(d) == 0.0) throw Error("Mat2: singular matrix");
        return {a22 / d, -a12 / d, -a21 / d, a11 / d};
    }

    double frobenius() const {
        return std::sqrt(std::norm(a11) + std::norm(a12) + std::norm(a21) + std::norm(a22));
    }

    friend Mat2 operator+(const Mat2& x, const Mat2& y) {
        return {x.a11 + y.a11, x.a12 + y.a12, x.a21 + y.a21, x.a22 + y.a22};
    }
    friend Mat2 operator-(const Mat2& x, const Mat2& y) {
        return {x.a11 - y.a11, x.a12 - y.a12, x.a21 - y.a21, x.a22 - y.a22};
    }
    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a11 * y.a11 + x.a12 * y.a21, x.a11 * y.a12 + x.a12 * y.a22,
                x.a21 * y.a11 + x.a22 * y.a21, x.a21 * y.a12 + x.a22 * y.a22};
    }
    friend Mat2 operator*(Complex s, const Mat2& x) {
        return {s * x.a11, s * x.a12, s * x.a21, s * x.a22};
    }
    friend Mat2 operator*(const Mat2& x, Complex s) { return s * x; }
};

inline double dist(const Mat2& x, const Mat2& y) { return (x - y).frobenius(); }

/// Point of H^3 in the Hermitian-matrix model: X = X*, det X = 1, tr X > 0.
struct HermitianPoint {
    Mat2 X;
};

/// Point of the Poincare ball model, |x| < 1.
struct BallPoint {
    double x1 = 0, x2 = 0, x3 = 0;
    double norm() const { return std::sqrt(x1 * x1 + x2 * x2 + x3 * x3); }
};

// ---------------------------------------------------------------------------

/// Moebius action a*w = (a11 w + a12)/(a21 w + a22) on the Riemann sphere.
ExtComplex star_action(const Mat2& a, const ExtComplex& w, double tol = -1.0);

/// f = F F*; requires det F = 1 within tol.
HermitianPoint to_hyperbolic(const Mat2& F, double tol = -1.0);

/// Decompose X = [[x0+x3, x1+i x2],[x1-i x2, x0-x3]] and map to the ball
/// through (x1,x2,x3)/(1+x0).
BallPoint hermitian_to_ball(const HermitianPoint& X);

/// ||M*M - I||_F + |det M - 1|; zero exactly on SU(2).
double su2_defect(const Mat2& M);

bool is_unimodular(const Mat2& M, double tol = -1.0);
bool is_hermitian(const Mat2& M, double tol = -1.0);

/// Positive-definite square root of a positive-definite Hermitian matrix
/// (closed form for 2x2).
Mat2 hermitian_sqrt(const Mat2& H);

/// Eigenvalues of a 2x2 complex matrix.
std::array<Complex, 2> eigenvalues(const Mat2& M);

/// Eigenvector for a given eigenvalue (unit norm); nullopt when the matrix is
/// within tol of a multiple of the identity.
std::optional<std::array<Complex, 2>> eigenvector(const Mat2& M, Complex lambda, double tol = 1e-12);

}  // namespace cmc1
