// Test-only oracles, independent of the implementation paths they check.
#pragma once

#include <random>

#include "cmc1/mero.hpp"

namespace cmc1::testing {

inline std::mt19937& rng() {
    static std::mt19937 eng(20240817);
    return eng;
}

inline double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline Complex random_complex(double scale = 1.0) {
    return Complex(uniform(-scale, scale), uniform(-scale, scale));
}

// Random SU(2) via the unit-quaternion parameterization.
inline Mat2 random_su2() {
    double x0, x1, x2, x3, n;
    do {
        x0 = uniform(-1, 1);
        x1 = uniform(-1, 1);
        x2 = uniform(-1, 1);
        x3 = uniform(-1, 1);
        n = std::sqrt(x0 * x0 + x1 * x1 + x2 * x2 + x3 * x3);
    } while (n < 1e-3);
    x0 /= n;
    x1 /= n;
    x2 /= n;
    x3 /= n;
    return {Complex(x0, x3), Complex(x2, x1), Complex(-x2, x1), Complex(x0, -x3)};
}

// Random SL(2,C), normalized but kept away from degenerate determinants.
inline Mat2 random_sl2(double scale = 1.0) {
    while (true) {
        Mat2 m{random_complex(scale), random_complex(scale), random_complex(scale),
               random_complex(scale)};
        Complex d = m.det();
        if (std::abs(d) > 0.05) return (1.0 / std::sqrt(d)) * m;
    }
}

// Finite-difference Schwarzian derivative: independent oracle for the
// symbolic path (never used inside the library).
template <typename F>
Complex schwarzian_fd(F&& f, Complex z, double h = 1e-4) {
    Complex f1 = (f(z + h) - f(z - h)) / (2 * h);
    Complex f2 = (f(z + h) - 2.0 * f(z) + f(z - h)) / (h * h);
    Complex f3 = (f(z + 2 * h) - 2.0 * f(z + h) + 2.0 * f(z - h) - f(z - 2 * h)) /
                 (2 * h * h * h);
    return f3 / f1 - 1.5 * (f2 / f1) * (f2 / f1);
}

// Contour-integral residue oracle: (1/2 pi i) times the midpoint-rule value
// of the circle integral.
template <typename F>
Complex residue_contour(F&& f, Complex center, double radius, int n = 4096) {
    Complex acc{};
    for (int j = 0; j < n; ++j) {
        double t = 2.0 * kPi * (j + 0.5) / n;
        Complex z = center + radius * Complex(std::cos(t), std::sin(t));
        Complex zp = radius * Complex(-std::sin(t), std::cos(t));
        acc += f(z) * zp;
    }
    acc *= 2.0 * kPi / n;
    return acc / Complex(0.0, 2.0 * kPi);
}

// Random rational function with prescribed pole/zero counts inside |z| < s,
// poles separated enough for contour tests.
inline RationalFn random_rational(int nzeros, int npoles, double s = 2.0) {
    std::vector<Complex> zs, ps;
    auto far_from = [&](Complex z, const std::vector<Complex>& v) {
        for (auto w : v)
            if (std::abs(w - z) < 0.2) return false;
        return true;
    };
    while (static_cast<int>(zs.size()) < nzeros) {
        Complex z = random_complex(s);
        if (far_from(z, zs)) zs.push_back(z);
    }
    while (static_cast<int>(ps.size()) < npoles) {
        Complex z = random_complex(s);
        if (far_from(z, ps) && far_from(z, zs)) ps.push_back(z);
    }
    return RationalFn(Poly::from_roots(random_complex(1.0) + Complex(1.5), zs),
                      Poly::from_roots(1.0, ps));
}

}  // namespace cmc1::testing
