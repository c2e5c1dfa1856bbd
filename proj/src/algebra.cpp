#include "cmc1/algebra.hpp"

#include <cstdlib>

namespace cmc1 {

double default_tol() {
    static const double tol = [] {
        if (const char* s = std::getenv("CMC1_TOL")) {
            double v = std::atof(s);
            if (v > 0) return v;
        }
        return 1e-9;
    }();
    return tol;
}

static double tol_or_default(double tol) { return tol > 0 ? tol : default_tol(); }

ExtComplex star_action(const Mat2& a, const ExtComplex& w, double tol) {
    if (std::abs(a.det() - 1.0) > tol_or_default(tol))
        throw NonUnimodular("star_action coefficient matrix");
    if (w.is_inf()) {
        if (std::abs(a.a21) == 0.0) return ExtComplex::inf();
        return ExtComplex(a.a11 / a.a21);
    }
    Complex num = a.a11 * w.value + a.a12;
    Complex den = a.a21 * w.value + a.a22;
    if (std::abs(den) == 0.0) return ExtComplex::inf();
    return ExtComplex(num / den);
}

HermitianPoint to_hyperbolic(const Mat2& F, double tol) {
    if (std::abs(F.det() - 1.0) > tol_or_default(tol))
        throw NonUnimodular("to_hyperbolic: |det F - 1| too large");
    return {F * F.adjoint()};
}

BallPoint hermitian_to_ball(const HermitianPoint& P) {
    const Mat2& X = P.X;
    double x0 = 0.5 * (X.a11 + X.a22).real();
    double x3 = 0.5 * (X.a11 - X.a22).real();
    double x1 = X.a12.real();
    double x2 = X.a12.imag();
    return {x1 / (1.0 + x0), x2 / (1.0 + x0), x3 / (1.0 + x0)};
}

double su2_defect(const Mat2& M) {
    return dist(M.adjoint() * M, Mat2::identity()) + std::abs(M.det() - 1.0);
}

bool is_unimodular(const Mat2& M, double tol) {
    return std::abs(M.det() - 1.0) <= tol_or_default(tol);
}

bool is_hermitian(const Mat2& M, double tol) {
    return dist(M, M.adjoint()) <= tol_or_default(tol);
}

Mat2 hermitian_sqrt(const Mat2& H) {
    // sqrt(H) = (H + sqrt(det H) I) / sqrt(tr H + 2 sqrt(det H)) for H > 0
    double d = H.det().real();
    double t = H.trace().real();
    if (d <= 0 || t <= 0) throw Error("hermitian_sqrt: matrix not positive definite");
    double s = std::sqrt(d);
    double denom = std::sqrt(t + 2.0 * s);
    Mat2 R = H;
    R.a11 += s;
    R.a22 += s;
    return (1.0 / denom) * R;
}

std::array<Complex, 2> eigenvalues(const Mat2& M) {
    Complex tr = M.trace(), d = M.det();
    Complex disc = std::sqrt(tr * tr - 4.0 * d);
    return {0.5 * (tr + disc), 0.5 * (tr - disc)};
}

std::optional<std::array<Complex, 2>> eigenvector(const Mat2& M, Complex lambda, double tol) {
    // rows of M - lambda I; take the larger one and rotate it 90 degrees
    Complex r1a = M.a11 - lambda, r1b = M.a12;
    Complex r2a = M.a21, r2b = M.a22 - lambda;
    double n1 = std::abs(r1a) + std::abs(r1b);
    double n2 = std::abs(r2a) + std::abs(r2b);
    double scale = M.frobenius() + std::abs(lambda);
    if (std::max(n1, n2) <= tol * std::max(scale, 1.0)) return std::nullopt;
    Complex va, vb;
    if (n1 >= n2) {
        va = -r1b;
        vb = r1a;
    } else {
        va = -r2b;
        vb = r2a;
    }
    double n = std::sqrt(std::norm(va) + std::norm(vb));
    return std::array<Complex, 2>{va / n, vb / n};
}

}  // namespace cmc1
