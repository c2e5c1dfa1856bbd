#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cmc1/mero.hpp"
#include "oracles.hpp"

using namespace cmc1;
using namespace cmc1::testing;

TEST_CASE("poly basics") {
    Poly p = Poly::from_roots(2.0, {Complex(1), Complex(-3)});
    CHECK(p.degree() == 2);
    CHECK(std::abs(p.eval(Complex(1)) - Complex(0)) < 1e-14);
    CHECK(std::abs(p.eval(Complex(2)) - 2.0 * Complex(1) * Complex(5)) < 1e-12);

    auto roots = Poly({Complex(-6), Complex(1), Complex(1)}).roots();  // z^2+z-6
    REQUIRE(roots.size() == 2);
    std::sort(roots.begin(), roots.end(),
              [](Complex a, Complex b) { return a.real() < b.real(); });
    CHECK(std::abs(roots[0] - Complex(-3)) < 1e-10);
    CHECK(std::abs(roots[1] - Complex(2)) < 1e-10);

    Poly q, r;
    Poly::divmod(Poly({Complex(1), Complex(0), Complex(0), Complex(1)}),
                 Poly({Complex(1), Complex(1)}), q, r);
    // z^3+1 = (z+1)(z^2-z+1)
    CHECK(q.degree() == 2);
    CHECK(r.zero());
}

TEST_CASE("rational reduction and arithmetic") {
    RationalFn f(Poly::from_roots(1.0, {Complex(1), Complex(2)}),
                 Poly::from_roots(3.0, {Complex(1)}));
    // (z-1)(z-2)/(3(z-1)) = (z-2)/3 with monic denominator 1
    CHECK(f.den().degree() == 0);
    CHECK(std::abs(f.eval(Complex(5)) - Complex(1)) < 1e-12);

    RationalFn a = RationalFn::x();
    RationalFn b(Poly::constant(1.0), Poly::from_roots(1.0, {Complex{}}));  // 1/z
    RationalFn c = a * b;
    CHECK(c.constant());
    CHECK(std::abs(c.eval(Complex(0.3, 0.2)) - Complex(1)) < 1e-14);
}

TEST_CASE("order_at") {
    // Q = z^-2 dz^2 at 0 has order -2
    Differential Q{2, RationalFn(Poly::constant(1.0), Poly::from_roots(1.0, {Complex{}, Complex{}}))};
    CHECK(order_at(Q, ExtComplex(Complex{})) == doctest::Approx(-2));

    // trinoid-shaped Hopf differential has order -2 at infinity
    Poly num({Complex(0.3), Complex(-0.1), Complex(0.4)});
    Poly den = Poly::from_roots(1.0, {Complex{}, Complex{}, Complex(1), Complex(1)});
    Differential Qt{2, RationalFn(num, den)};
    CHECK(order_at(Qt, ExtComplex::inf()) == doctest::Approx(-2));
    // Laurent oracle in the chart w = 1/z: Qhat(1/w)/w^4 ~ 0.4 w^{-2}
    CHECK(order_at(Qt, ExtComplex(Complex{})) == doctest::Approx(-2));

    RationalFn c = RationalFn::constant(2.5);
    CHECK(order_at(c, ExtComplex(Complex(0.3, 1.0))) == doctest::Approx(0));
}

TEST_CASE("residues") {
    Differential dzz{1, RationalFn(Poly::constant(1.0), Poly::from_roots(1.0, {Complex{}}))};
    CHECK(std::abs(residue_at(dzz, Complex{}) - Complex(1)) < 1e-14);

    // Remark A.9 data: dg = t z^mu (z^2-a^2)/(z^2-1)^2 dz with a^2 = (mu+1)/(mu-1)
    double mu = -0.37;
    double a2 = (mu + 1) / (mu - 1);
    Poly z2m1({Complex(-1.0), Complex{}, Complex(1.0)});
    PowerProduct dg(1.0, {{Complex{}, mu}},
                    RationalFn(Poly({Complex(-a2), Complex{}, Complex(1.0)}), z2m1 * z2m1));
    Differential dgf{1, dg};
    CHECK(std::abs(residue_at(dgf, Complex(1.0))) < 1e-12);
    CHECK(std::abs(residue_at(dgf, Complex(-1.0))) < 1e-12);
    CHECK_THROWS_AS(residue_at(dgf, Complex{}), NonMeromorphicPoint);

    // (A.19)-style criterion: residue of dg at z = a vanishes iff
    // p = (a mu + a - a^2)/(a mu + a - 1)
    double m = 3;
    mu = -0.41;
    double a = -(m + mu + 2) / (m - mu - 2);
    double pgood = (a * mu + a - a * a) / (a * mu + a - 1);
    auto make_dg = [&](double p) {
        return Differential{1, PowerProduct(1.0, {{Complex(1.0), mu}, {Complex(p), -mu - 2}},
                                            RationalFn(Poly::from_roots(1.0, {Complex{}}),
                                                       Poly::from_roots(1.0, {Complex(a), Complex(a)})))};
    };
    CHECK(std::abs(residue_at(make_dg(pgood), Complex(a))) < 1e-10);
    CHECK(std::abs(residue_at(make_dg(pgood + 0.2), Complex(a))) > 1e-4);
}

TEST_CASE("residue agrees with a contour integral on random rationals") {
    int cases = 0;
    while (cases < 120) {
        RationalFn f = random_rational(2, 3);
        Complex p = f.den().roots()[0];
        p = f.den().refine_root(p);
        // keep the other poles away from the contour
        double sep = 1e9;
        for (Complex q : f.den().roots())
            if (std::abs(q - p) > 1e-9) sep = std::min(sep, std::abs(q - p));
        double rad = 0.45 * std::min(sep, 1.0);
        if (rad < 1e-3) continue;
        Complex want = residue_contour([&](Complex z) { return f.eval(z); }, p, rad);
        Complex got = residue_at(f, p);
        CHECK(std::abs(want - got) < 1e-8 * std::max(1.0, std::abs(want)));
        ++cases;
    }
}

TEST_CASE("laurent expansion") {
    // 1/(z(z-1)) = -z^-1 - 1 - z - z^2 - ... at 0 (geometric oracle)
    RationalFn f(Poly::constant(1.0), Poly::from_roots(1.0, {Complex{}, Complex(1)}));
    LaurentSeries s = laurent_expand(f, Complex{}, 5);
    CHECK(s.k0 == -1);
    for (int k = -1; k <= 3; ++k)
        CHECK(std::abs(s.coeff_of(k) - Complex(-1)) < 1e-12);

    // entire input starts at a nonnegative order
    LaurentSeries e = laurent_expand(RationalFn(Poly({Complex(2), Complex(1)}), Poly::constant(1.0)),
                                     Complex(0.5), 3);
    CHECK(e.k0 >= 0);
}

TEST_CASE("schwarzian annihilates Moebius maps") {
    for (int i = 0; i < 30; ++i) {
        Mat2 m = random_sl2();
        RationalFn mob(Poly({m.a12, m.a11}), Poly({m.a22, m.a21}));
        Differential S = schwarzian(mob);
        CHECK(S.rational()->zero());
    }
}

TEST_CASE("schwarzian of a power law") {
    // S(z^l) = (1 - l^2)/(2 z^2) dz^2
    double l = 0.7;
    PowerProduct h(1.0, {{Complex{}, l}}, RationalFn::constant(1.0));
    Differential S = schwarzian(h);
    for (int i = 0; i < 10; ++i) {
        Complex z = random_complex(2.0) + Complex(3.0, 0);
        Complex want = (1 - l * l) / (2.0 * z * z);
        CHECK(std::abs(S.rational()->eval(z) - want) < 1e-10 * std::abs(want));
    }
}

TEST_CASE("schwarzian cocycle invariance S(a*h) = S(h)") {
    for (int i = 0; i < 120; ++i) {
        RationalFn h = random_rational(2, 1);
        Mat2 a = random_su2();
        Differential S1 = schwarzian(h);
        Differential S2 = schwarzian(mobius_apply(a, h));
        for (int k = 0; k < 3; ++k) {
            Complex z = random_complex(2.0);
            Complex v1 = S1.rational()->eval(z), v2 = S2.rational()->eval(z);
            if (!std::isfinite(std::abs(v1)) || std::abs(v1) > 1e8) continue;
            CHECK(std::abs(v1 - v2) < 1e-10 * std::max(1.0, std::abs(v1)));
        }
    }
}

TEST_CASE("schwarzian matches the finite-difference oracle") {
    RationalFn h = random_rational(2, 2);
    Differential S = schwarzian(h);
    for (int i = 0; i < 10; ++i) {
        Complex z = random_complex(1.5) + Complex(4.0, 3.0);
        Complex fd = schwarzian_fd([&](Complex w) { return h.eval(w); }, z);
        Complex sym = S.rational()->eval(z);
        if (std::abs(sym) > 1e4) continue;
        CHECK(std::abs(fd - sym) < 1e-3 * std::max(1.0, std::abs(sym)));
    }
}

TEST_CASE("hopf from gauss maps") {
    SUBCASE("equal maps give the zero differential") {
        MeroFn g = RationalFn::x();
        Differential Q = hopf_from_gauss_maps(g, g);
        CHECK(Q.zero());
    }
    SUBCASE("catenoid pair") {
        // g = c z^l, G = z^delta: Q = (delta^2 - l^2)/(4 z^2) dz^2
        double l = 0.8;
        int delta = 1;
        double c = (delta * delta - l * l) / (4 * l);
        PowerProduct g(std::abs(c), {{Complex{}, l}}, RationalFn::constant(c >= 0 ? 1.0 : -1.0));
        Differential Q = hopf_from_gauss_maps(MeroFn(g), MeroFn(RationalFn::x()));
        for (int i = 0; i < 20; ++i) {
            Complex z = random_complex(2.0) + Complex(0.2, 2.5);
            Complex want = (delta * delta - l * l) / (4.0 * z * z);
            CHECK(std::abs(Q.rational()->eval(z) - want) < 1e-9 * std::abs(want));
        }
    }
    SUBCASE("Prop A.15 pair") {
        double mu = -0.55;
        int m = 2;
        PowerProduct g(1.0, {{Complex{}, mu + 1}},
                       RationalFn(Poly({Complex(-(mu + 2)), Complex(mu)}),
                                  Poly({Complex(-mu), Complex(mu + 2)})));
        Poly Gn = Poly({Complex(-(m + 2.0)), Complex(double(m))}) *
                  Poly::from_roots(1.0, std::vector<Complex>(m + 1, Complex{}));
        RationalFn G(Gn, Poly({Complex(-double(m)), Complex(m + 2.0)}));
        Differential Q = hopf_from_gauss_maps(MeroFn(g), MeroFn(G));
        for (int i = 0; i < 20; ++i) {
            Complex z = random_complex(1.5) + Complex(2.5, 1.5);
            Complex want = (m * (m + 2.0) - mu * (mu + 2.0)) / 4.0 / (z * z);
            CHECK(std::abs(Q.rational()->eval(z) - want) < 1e-9 * std::abs(want));
        }
    }
    SUBCASE("Prop A.16 pair from the printed derivatives") {
        double mu = -0.5;
        int m = 2;
        double a = -(m + mu + 2) / (m - mu - 2);
        double p = (a * mu + a - a * a) / (a * mu + a - 1);
        Differential dG{1, RationalFn(Poly::from_roots(1.0, {Complex{}}) *
                                          Poly::from_roots(1.0, std::vector<Complex>(m - 2, Complex(p))),
                                      Poly::from_roots(1.0, std::vector<Complex>(m + 2, Complex(1.0))))};
        Differential dg{1, PowerProduct(1.0, {{Complex(1.0), mu}, {Complex(p), -mu - 2}},
                                        RationalFn(Poly::from_roots(1.0, {Complex{}}),
                                                   Poly::from_roots(1.0, {Complex(a), Complex(a)})))};
        Differential Q = hopf_from_derivatives(dg, dG);
        double qc = 4.0 * m * m * (m * (m + 2.0) - mu * (mu + 2.0)) /
                    (std::pow(m + mu, 2) * std::pow(2.0 - m + mu, 2));
        for (int i = 0; i < 20; ++i) {
            Complex z = random_complex(1.5) + Complex(3.0, 2.0);
            Complex want = qc / (z * (z - 1.0) * (z - 1.0) * (z - p) * (z - p));
            CHECK(std::abs(Q.rational()->eval(z) - want) < 1e-9 * std::abs(want));
        }
    }
}

TEST_CASE("frobenius indicial analysis") {
    SUBCASE("A.13 data at z = 0: roots {0,-1}, log term prop to mu+2-2/a-2/b") {
        double mu = -0.5, q = 0.8;
        Complex a(1.7, 0.4), b(-0.9, 1.2);
        // omega = Q/dg with dg = t z^2 (z-1)^mu (z-q)/((z-a)^2 (z-b)^2) dz,
        // Q = (z-q)/(z-1)^2 dz^2
        PowerProduct dg(1.0, {{Complex(1.0), mu}},
                        RationalFn(Poly::from_roots(1.0, {Complex{}, Complex{}, Complex(q)}),
                                   Poly::from_roots(1.0, {a, a, b, b})));
        RationalFn Q(Poly::from_roots(1.0, {Complex(q)}),
                     Poly::from_roots(1.0, {Complex(1.0), Complex(1.0)}));
        Differential omega = diff_div(Differential{2, Q}, Differential{1, dg});
        FrobeniusResult fr = frobenius_log_term(omega, Differential{2, Q}, Complex{}, -1);
        CHECK(fr.resonant);
        CHECK(fr.root_large == doctest::Approx(0.0).epsilon(1e-10));
        CHECK(fr.root_small == doctest::Approx(-1.0).epsilon(1e-10));
        Complex want = -(Complex(mu + 2) - 2.0 / a - 2.0 / b);
        CHECK(std::abs(fr.log_coefficient - want) < 1e-9 * std::abs(want));
    }
    SUBCASE("Euler equation: no log obstruction beyond the indicial structure") {
        // omega = z^-3 dz, Q = q2 z^-2 dz^2: pure Euler coefficients
        PowerProduct om(1.0, {{Complex{}, -3.2}}, RationalFn::constant(1.0));
        RationalFn Q(Poly::constant(0.5), Poly::from_roots(1.0, {Complex{}, Complex{}}));
        FrobeniusResult fr =
            frobenius_log_term(Differential{1, om}, Differential{2, Q}, Complex{}, -1);
        // indicial roots of s(s-1) + 3.2 s - 0.5: difference is irrational
        CHECK(!fr.resonant);

        // resonant Euler case: choose q2 so the roots differ by 2; the
        // obstruction vanishes because all higher coefficients are zero
        PowerProduct om2(1.0, {{Complex{}, -2.0}}, RationalFn::constant(1.0));
        // p_{-1} = 2: s(s-1) + 2 s + r = s^2 + s + r; roots differ by 2 when
        // 1 - 4r = 4, r = -3/4
        RationalFn Q2(Poly::constant(-0.75), Poly::from_roots(1.0, {Complex{}, Complex{}}));
        FrobeniusResult fr2 =
            frobenius_log_term(Differential{1, om2}, Differential{2, Q2}, Complex{}, 1);
        CHECK(fr2.resonant);
        CHECK(std::abs(fr2.log_coefficient) < 1e-12);
    }
}

TEST_CASE("rational primitive") {
    // f = z/(z-1)^4: residue at 1 vanishes
    RationalFn f(Poly::from_roots(1.0, {Complex{}}),
                 Poly::from_roots(1.0, std::vector<Complex>(4, Complex(1.0))));
    auto F = rational_primitive(f);
    REQUIRE(F.has_value());
    RationalFn back = F->derivative();
    for (int i = 0; i < 10; ++i) {
        Complex z = random_complex(2.0) + Complex(2.5, 1.0);
        CHECK(std::abs(back.eval(z) - f.eval(z)) < 1e-9 * std::max(1.0, std::abs(f.eval(z))));
    }
    // nonzero residue: no rational primitive
    RationalFn g(Poly::constant(1.0), Poly::from_roots(1.0, {Complex{}}));
    CHECK(!rational_primitive(g).has_value());
}

TEST_CASE("power product primitive") {
    SUBCASE("Remark A.9 dg integrates to gamma z^{mu+1}/(z^2-1)") {
        double mu = -0.5;
        double a2 = (mu + 1) / (mu - 1);
        Poly z2m1({Complex(-1.0), Complex{}, Complex(1.0)});
        PowerProduct dg(1.0, {{Complex{}, mu}},
                        RationalFn(Poly({Complex(-a2), Complex{}, Complex(1.0)}), z2m1 * z2m1));
        auto g = power_product_primitive(dg);
        REQUIRE(g.has_value());
        double gamma = std::abs(1.0 / (mu - 1.0));
        for (Complex z : {Complex(0.4, 0.2), Complex(2.0, 1.0), Complex(-0.3, 1.7)}) {
            double want = gamma * std::pow(std::abs(z), mu + 1) / std::abs(z * z - 1.0);
            CHECK(g->abs_eval(z) == doctest::Approx(want).epsilon(1e-9));
        }
    }
    SUBCASE("Remark A.19 dg has no power-product primitive") {
        double mu = -0.75, q = 1.0138902227588287;
        double q2 = q * q;
        double a2 = -(1 - mu - q2) / (3 + mu - 3 * q2);
        Complex a = std::sqrt(Complex(a2));
        Poly z2q2({Complex(-q2), Complex{}, Complex(1.0)});
        Poly z2({Complex{}, Complex{}, Complex(1.0)});
        Poly z2a2({Complex(-a * a), Complex{}, Complex(1.0)});
        PowerProduct dg(1.0, {{Complex(1.0), mu}, {Complex(-1.0), mu}},
                        RationalFn(z2q2 * z2, z2a2 * z2a2));
        CHECK(!power_product_primitive(dg).has_value());
    }
}

TEST_CASE("differential weight bookkeeping") {
    // sum of orders of a weight-2 rational differential over the sphere is -4
    for (int i = 0; i < 25; ++i) {
        RationalFn f = random_rational(3, 2);
        Differential Q{2, f};
        double total = order_at(Q, ExtComplex::inf());
        for (Complex z : f.num().roots()) total += 1;  // simple zeros by construction
        for (Complex z : f.den().roots()) total -= 1;
        CHECK(total == doctest::Approx(-4).epsilon(1e-9));
    }
}
