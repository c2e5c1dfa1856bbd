#include "cmc1/catalog.hpp"

#include <cmath>

namespace cmc1 {

double FamilyParams::get(const std::string& key) const {
    auto it = params.find(key);
    if (it == params.end()) throw ParamOutOfRange("missing parameter " + key);
    return it->second;
}

double FamilyParams::get_or(const std::string& key, double fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

int FamilyParams::get_int(const std::string& key) const {
    double v = get(key);
    int k = static_cast<int>(std::llround(v));
    if (std::abs(v - k) > 1e-9) throw ParamOutOfRange(key + " must be an integer");
    return k;
}

TrinoidConstraints trinoid_constraints(double mu1, double mu2, double mu3) {
    TrinoidConstraints out;
    double B1 = kPi * (mu1 + 1), B2 = kPi * (mu2 + 1), B3 = kPi * (mu3 + 1);
    double c1 = std::cos(B1), c2 = std::cos(B2), c3 = std::cos(B3);
    out.ineq42 = c1 * c1 + c2 * c2 + c3 * c3 + 2 * c1 * c2 * c3 < 1.0 - 1e-12;
    double d1 = -mu1 * (mu1 + 2) / 2, d2 = -mu2 * (mu2 + 2) / 2, d3 = -mu3 * (mu3 + 2) / 2;
    double disc = d1 * d1 + d2 * d2 + d3 * d3 - 2 * (d1 * d2 + d2 * d3 + d3 * d1);
    out.cond43 = std::abs(disc) > 1e-12;
    // (4.5): c3 q^2 + (c2 - c1 - c3) q + c1 = 0 with the c_j of (7.2)
    Poly quad({Complex(d1), Complex(d2 - d1 - d3), Complex(d3)});
    auto roots = quad.roots();
    if (roots.size() == 2) {
        out.q1 = roots[0];
        out.q2 = roots[1];
    } else if (roots.size() == 1) {
        out.q1 = out.q2 = roots[0];
    }
    return out;
}

namespace {

Differential one_form(RationalFn r) { return Differential{1, std::move(r)}; }
Differential one_form(PowerProduct p) { return Differential{1, std::move(p)}; }
Differential two_form(RationalFn r) { return Differential{2, std::move(r)}; }

RationalFn monomial(Complex lead, int deg) {
    std::vector<Complex> c(deg + 1, Complex{});
    c[deg] = lead;
    return RationalFn(Poly(std::move(c)), Poly::constant(1.0));
}

void require(bool ok, const std::string& what) {
    if (!ok) throw ParamOutOfRange(what);
}

void check_residue_zero(const Differential& dg, Complex p, const std::string& what) {
    Complex r = residue_at(dg, p);
    if (std::abs(r) > 1e-8)
        throw ParamOutOfRange("residue of dg does not vanish at " + what);
}

GaussSpec gauss_from_G(RationalFn G, Differential Q) {
    Differential dG{1, G.derivative()};
    return {std::move(G), std::move(dG), std::move(Q)};
}

SurfaceData horosphere(const FamilyParams& p) {
    double a = p.get("a");
    require(a != 0, "horosphere: a != 0");
    SurfaceData d;
    d.label = "horosphere";
    d.punctures = {ExtComplex::inf()};
    WeierstrassSpec ws;
    ws.g = MeroFn(RationalFn::constant(0.0));
    ws.dg = one_form(RationalFn());
    ws.omega = one_form(RationalFn::constant(a));
    d.weier = ws;
    GaussSpec gs;
    gs.G = RationalFn::constant(0.0);
    gs.dG = one_form(RationalFn());
    gs.Q = two_form(RationalFn());
    d.gauss = gs;
    d.annotations["ta"] = 0.0;
    d.annotations["ta_dual"] = 0.0;
    return d;
}

SurfaceData enneper(const FamilyParams& p, bool dual) {
    double a = p.get("a");
    require(a != 0, "enneper_cousin: a != 0");
    SurfaceData d;
    d.label = dual ? "enneper_dual" : "enneper_cousin";
    d.dual = dual;
    d.punctures = {ExtComplex::inf()};
    WeierstrassSpec ws;
    ws.g = MeroFn(RationalFn::x());
    ws.dg = one_form(RationalFn::constant(1.0));
    ws.omega = one_form(RationalFn::constant(a));
    d.weier = ws;
    d.annotations["ta"] = 4.0 * kPi;  // of the underlying (non-dual) surface
    return d;
}

SurfaceData catenoid_cousin(const FamilyParams& p) {
    double l = p.get("l");
    int delta = p.get_int("delta");
    double b = p.get_or("b", 0.0);
    require(l > 0, "catenoid_cousin: l > 0");
    require(delta >= 1, "catenoid_cousin: delta a positive integer");
    require(std::abs(l - delta) > 1e-12, "catenoid_cousin: l != delta");
    require(b >= 0, "catenoid_cousin: b >= 0");
    bool l_int = std::abs(l - std::round(l)) < 1e-12;
    require(b == 0 || l_int, "catenoid_cousin: b > 0 only for integer l");

    double c = (delta * delta - l * l) / (4.0 * l);
    SurfaceData d;
    d.label = "catenoid_cousin";
    d.punctures = {ExtComplex(Complex{}), ExtComplex::inf()};
    WeierstrassSpec ws;
    if (l_int) {
        int li = static_cast<int>(std::round(l));
        RationalFn g = monomial(c, li) + RationalFn::constant(b);
        ws.g = MeroFn(g);
        ws.dg = one_form(g.derivative());
        ws.omega = one_form(RationalFn(Poly::constant(1.0),
                                       Poly::from_roots(1.0, std::vector<Complex>(li + 1, Complex{}))));
    } else {
        RationalFn sgn = RationalFn::constant(c >= 0 ? 1.0 : -1.0);
        PowerProduct g(std::abs(c), {{Complex{}, l}}, sgn);
        ws.g = MeroFn(g);
        ws.dg = one_form(g.derivative());
        ws.omega = one_form(PowerProduct(1.0, {{Complex{}, -l - 1.0}},
                                         RationalFn::constant(1.0)));
    }
    d.weier = ws;
    d.gauss = gauss_from_G(monomial(1.0, delta),
                           two_form(RationalFn(Poly::constant((delta * delta - l * l) / 4.0),
                                               Poly::from_roots(1.0, {Complex{}, Complex{}}))));
    d.annotations["ta"] = 4.0 * kPi * l;
    d.annotations["ta_dual"] = 4.0 * kPi * delta;
    return d;
}

SurfaceData trinoid(const FamilyParams& p) {
    double m1 = p.get("mu1"), m2 = p.get("mu2"), m3 = p.get("mu3");
    require(m1 > -1 && m2 > -1 && m3 > -1, "trinoid: mu_j > -1");
    TrinoidConstraints tc = trinoid_constraints(m1, m2, m3);
    require(tc.ineq42, "trinoid: inequality (4.2)");
    require(tc.cond43, "trinoid: condition (4.3)");
    double c1 = -m1 * (m1 + 2) / 2, c2 = -m2 * (m2 + 2) / 2, c3 = -m3 * (m3 + 2) / 2;
    Poly qnum({Complex(0.5 * c1), Complex(0.5 * (c2 - c1 - c3)), Complex(0.5 * c3)});
    Poly qden = Poly::from_roots(1.0, {Complex{}, Complex{}, Complex(1.0), Complex(1.0)});
    RationalFn Q(qnum, qden);
    Complex s = tc.q1 + tc.q2, dq = tc.q1 - tc.q2;
    // G = z + (q1-q2)^2 / (2 (2z - s))
    RationalFn G = RationalFn::x() +
                   RationalFn(Poly::constant(dq * dq), Poly({-2.0 * s, Complex(4.0)}));
    SurfaceData d;
    d.label = "trinoid";
    d.punctures = {ExtComplex(Complex{}), ExtComplex(Complex(1.0)), ExtComplex::inf()};
    d.gauss = gauss_from_G(G, two_form(Q));
    d.annotations["ta"] = 2.0 * kPi * (4.0 + m1 + m2 + m3);
    d.annotations["ta_dual"] = 8.0 * kPi;
    auto rep = compatibility_check(*d.gauss, d.punctures);
    if (!rep.ok) throw ParamOutOfRange("trinoid: (G, Q) compatibility failed");
    return d;
}

SurfaceData fournoid(const FamilyParams& par) {
    double mu = par.get("mu"), a = par.get("a"), p = par.get("p");
    require(mu > -1, "fournoid: mu > -1");
    require(a > 0 && a < 1, "fournoid: a in (0, 1)");
    require(p != 0 && p != 1, "fournoid: p not in {0, 1}");
    double Na = p * std::pow(a, 4) - (3 * p * p - 1) * a * a + p;
    require(std::abs(Na) > 1e-12, "fournoid: p a^4 - (3p^2 - 1) a^2 + p != 0");

    RationalFn G(Poly({Complex{}, Complex(-1.0), Complex{}, Complex(p)}),
                 Poly({Complex(-p), Complex{}, Complex(1.0)}));
    double K = -mu * (mu + 2) * a * a * std::pow(a * a - 1.0 / (a * a), 2) / Na;
    Poly quart({Complex(p), Complex{}, Complex(-(3 * p * p - 1)), Complex{}, Complex(p)});
    double ia = 1.0 / a;
    Poly den = Poly::from_roots(1.0, {Complex(a), Complex(a), Complex(-a), Complex(-a),
                                      Complex(ia), Complex(ia), Complex(-ia), Complex(-ia)});
    RationalFn Q(Complex(K) * quart, den);
    SurfaceData d;
    d.label = "fournoid";
    d.punctures = {ExtComplex(Complex(a)), ExtComplex(Complex(-a)), ExtComplex(Complex(ia)),
                   ExtComplex(Complex(-ia))};
    d.gauss = gauss_from_G(G, two_form(Q));
    d.annotations["ta"] = 4.0 * kPi * (2 * mu + 3);
    d.annotations["ta_dual"] = 12.0 * kPi;
    auto rep = compatibility_check(*d.gauss, d.punctures);
    if (!rep.ok) throw ParamOutOfRange("fournoid: (G, Q) compatibility failed");
    return d;
}

// Remark A.9 data.  The printed total curvature there does not match the
// printed dg (the conical order at infinity comes out as -mu, not mu); the
// annotation carries the value the data actually produces, TA = 8 pi.
SurfaceData o2m4(const FamilyParams& p) {
    double mu = p.get("mu");
    double t = p.get_or("t", 1.0);
    require(mu > -1 && mu < 0, "o2m4: mu in (-1, 0)");
    require(t > 0, "o2m4: t > 0");
    double a2 = (mu + 1) / (mu - 1);
    double theta = mu * (mu + 2) * (mu - 1) / (4 * (mu + 1));
    RationalFn za2(Poly({Complex(-a2), Complex{}, Complex(1.0)}), Poly::constant(1.0));
    Poly z2m1({Complex(-1.0), Complex{}, Complex(1.0)});
    PowerProduct dg(t, {{Complex{}, mu}}, RationalFn(za2.num(), z2m1 * z2m1));
    Differential dgf = one_form(dg);
    check_residue_zero(dgf, Complex(1.0), "z = 1");
    check_residue_zero(dgf, Complex(-1.0), "z = -1");
    RationalFn Q = Complex(theta) * RationalFn(za2.num(), Poly::from_roots(1.0, {Complex{}, Complex{}}));
    SurfaceData d;
    d.label = "o2m4";
    d.punctures = {ExtComplex(Complex{}), ExtComplex::inf()};
    WeierstrassSpec ws;
    ws.dg = dgf;
    ws.omega = diff_div(two_form(Q), dgf);
    if (auto g = power_product_primitive(dg)) ws.g = MeroFn(*g);
    d.weier = ws;
    d.annotations["ta"] = 8.0 * kPi;
    return d;
}

// Remark A.10 data; same situation as o2m4, the data produces TA = 12 pi.
SurfaceData o2m5(const FamilyParams& p) {
    double mu = p.get("mu");
    double t = p.get_or("t", 1.0);
    require(mu > -1 && mu < 0, "o2m5: mu in (-1, 0)");
    require(t > 0, "o2m5: t > 0");
    double a3 = (mu + 1) / (mu - 2);
    double theta = mu * (mu * mu - 4) / (4 * (mu + 1));
    Poly z3a3({Complex(-a3), Complex{}, Complex{}, Complex(1.0)});
    Poly z3m1({Complex(-1.0), Complex{}, Complex{}, Complex(1.0)});
    PowerProduct dg(t, {{Complex{}, mu}}, RationalFn(z3a3, z3m1 * z3m1));
    Differential dgf = one_form(dg);
    for (int k = 0; k < 3; ++k) {
        Complex root = std::exp(Complex(0, 2.0 * kPi * k / 3.0));
        check_residue_zero(dgf, root, "a cube root of unity");
    }
    RationalFn Q = Complex(theta) * RationalFn(z3a3, Poly::from_roots(1.0, {Complex{}, Complex{}}));
    SurfaceData d;
    d.label = "o2m5";
    d.punctures = {ExtComplex(Complex{}), ExtComplex::inf()};
    WeierstrassSpec ws;
    ws.dg = dgf;
    ws.omega = diff_div(two_form(Q), dgf);
    if (auto g = power_product_primitive(dg)) ws.g = MeroFn(*g);
    d.weier = ws;
    d.annotations["ta"] = 12.0 * kPi;
    return d;
}

// Proposition A.15 pair (A.14)
SurfaceData o022(const FamilyParams& p) {
    double mu = p.get("mu");
    int m = p.get_int("m");
    double t = p.get_or("t", 1.0);
    require(mu > -1 && mu < 0, "o022: mu in (-1, 0)");
    require(m >= 1, "o022: m a positive integer");
    require(t > 0, "o022: t > 0");
    RationalFn gm_tail(Poly({Complex(-(mu + 2)), Complex(mu)}),
                       Poly({Complex(-mu), Complex(mu + 2)}));
    PowerProduct g(t, {{Complex{}, mu + 1}}, gm_tail);
    Poly Gnum = Poly({Complex(-(m + 2.0)), Complex(static_cast<double>(m))}) *
                Poly::from_roots(1.0, std::vector<Complex>(m + 1, Complex{}));
    RationalFn G(Gnum, Poly({Complex(-static_cast<double>(m)), Complex(m + 2.0)}));
    double qc = (m * (m + 2.0) - mu * (mu + 2.0)) / 4.0;
    RationalFn Q(Poly::constant(qc), Poly::from_roots(1.0, {Complex{}, Complex{}}));
    SurfaceData d;
    d.label = "o022";
    d.punctures = {ExtComplex(Complex(1.0)), ExtComplex(Complex{}), ExtComplex::inf()};
    WeierstrassSpec ws;
    ws.g = MeroFn(g);
    ws.dg = one_form(g.derivative());
    ws.omega = diff_div(two_form(Q), ws.dg);
    d.weier = ws;
    d.gauss = gauss_from_G(G, two_form(Q));
    d.annotations["ta"] = 4.0 * kPi * (mu + 2);
    d.annotations["ta_dual"] = 4.0 * kPi * (m + 2);
    return d;
}

// Proposition A.16 data (A.17)
SurfaceData o122(const FamilyParams& par) {
    double mu = par.get("mu");
    int m = par.get_int("m");
    double t = par.get_or("t", 1.0);
    require(mu > -1 && mu < 0, "o122: mu in (-1, 0)");
    require(m >= 2, "o122: m >= 2");
    require(t > 0, "o122: t > 0");
    double a = -(m + mu + 2) / (m - mu - 2);
    double p = (a * mu + a - a * a) / (a * mu + a - 1);
    // dG = z (z - p)^{m-2} / (z - 1)^{m+2}
    Poly dgn = Poly::from_roots(1.0, {Complex{}}) *
               Poly::from_roots(1.0, std::vector<Complex>(m - 2, Complex(p)));
    Poly dgd = Poly::from_roots(1.0, std::vector<Complex>(m + 2, Complex(1.0)));
    RationalFn dG(dgn, dgd);
    auto G = rational_primitive(dG);
    require(G.has_value(), "o122: dG has a nonvanishing residue");
    PowerProduct dg(t, {{Complex(1.0), mu}, {Complex(p), -mu - 2}},
                    RationalFn(Poly::from_roots(1.0, {Complex{}}),
                               Poly::from_roots(1.0, {Complex(a), Complex(a)})));
    Differential dgf = one_form(dg);
    check_residue_zero(dgf, Complex(a), "z = a");
    double qc = 4.0 * m * m * (m * (m + 2.0) - mu * (mu + 2.0)) /
                (std::pow(m + mu, 2) * std::pow(2.0 - m + mu, 2));
    RationalFn Q(Poly::constant(qc),
                 Poly::from_roots(1.0, {Complex{}, Complex(1.0), Complex(1.0), Complex(p), Complex(p)}));
    SurfaceData d;
    d.label = "o122";
    d.punctures = {ExtComplex(Complex{}), ExtComplex(Complex(1.0)), ExtComplex(Complex(p))};
    d.gauss = GaussSpec{*G, one_form(dG), two_form(Q)};
    WeierstrassSpec ws;
    ws.dg = dgf;
    ws.omega = diff_div(two_form(Q), dgf);
    if (auto g = power_product_primitive(dg)) ws.g = MeroFn(*g);
    d.weier = ws;
    d.annotations["ta"] = 4.0 * kPi * (mu + 2);
    d.annotations["ta_dual"] = 4.0 * kPi * (m + 1);
    return d;
}

// Proposition A.17 families, TA = 8 pi
SurfaceData o122_eq8pi(const FamilyParams& par) {
    int which = par.get_int("case");
    int m = par.get_int("m");
    double mu = par.get("mu");
    require(mu > -1 && mu < 0, "o122_eq8pi: mu in (-1, 0)");
    double p, theta;
    RationalFn dG;
    if (which == 1) {
        require(m >= 3, "o122_eq8pi case 1: m >= 3");
        double den = (m - 2.0) * (m - 2.0) - mu * mu;
        p = (m * (m + 2.0) - mu * (mu + 2.0)) / den;
        theta = std::pow(mu - 3.0 * m + 2.0, 2) * (m * (m + 2.0) - mu * (mu + 2.0)) /
                (den * den);
        Poly num = Poly::from_roots(1.0, {Complex{}, Complex{}}) *
                   Poly::from_roots(1.0, std::vector<Complex>(m - 3, Complex(p)));
        Poly d = Poly::from_roots(1.0, std::vector<Complex>(m + 2, Complex(1.0)));
        dG = RationalFn(num, d);
    } else if (which == 2) {
        require(m >= 1, "o122_eq8pi case 2: m >= 1");
        p = (mu + m + 2.0) / (mu + m);
        theta = (m - mu) * (mu + m + 2.0) / std::pow(m + mu, 2);
        double rad = 9.0 * std::pow(m - mu, 2) + 16.0 * m * (mu + 1) + 16.0 * mu * (m + 1);
        require(rad >= 0, "o122_eq8pi case 2: radicand >= 0");
        double best_res = 1e300;
        Complex best_a{};
        for (double sgn : {1.0, -1.0}) {
            double a = (m - mu + sgn * std::sqrt(rad)) / (2.0 * (mu + m));
            Poly num = Poly::from_roots(1.0, {Complex{}, Complex{}}) *
                       Poly::from_roots(1.0, std::vector<Complex>(m - 1, Complex(p)));
            Poly d = Poly::from_roots(1.0, std::vector<Complex>(m + 2, Complex(1.0))) *
                     Poly::from_roots(1.0, {Complex(a), Complex(a)});
            RationalFn cand(num, d);
            double res = std::abs(residue_at(cand, Complex(a)));
            if (res < best_res) {
                best_res = res;
                best_a = a;
                dG = cand;
            }
        }
        require(best_res < 1e-7, "o122_eq8pi case 2: residue of dG at a does not vanish");
    } else {
        throw ParamOutOfRange("o122_eq8pi: case must be 1 or 2");
    }
    auto G = rational_primitive(dG);
    require(G.has_value(), "o122_eq8pi: dG has a nonvanishing residue");
    RationalFn Q(Poly::constant(theta),
                 Poly::from_roots(1.0, {Complex{}, Complex(1.0), Complex(1.0), Complex(p), Complex(p)}));
    SurfaceData d;
    d.label = "o122_eq8pi";
    d.punctures = {ExtComplex(Complex{}), ExtComplex(Complex(1.0)), ExtComplex(Complex(p))};
    d.gauss = GaussSpec{*G, one_form(dG), two_form(Q)};
    d.annotations["ta"] = 8.0 * kPi;
    return d;
}

// Remark A.19 data (A.39)/(A.40)
SurfaceData o2220(const FamilyParams& par) {
    double mu = par.get("mu");
    double q = par.get("q");
    require(mu > -1 && mu < -0.5, "o2220: mu in (-1, -1/2)");
    require(q != 0 && std::abs(q) != 1.0, "o2220: q not in {0, +-1}");
    double q2 = q * q;
    double a2 = -(1.0 - mu - q2) / (3.0 + mu - 3.0 * q2);
    Complex a = std::sqrt(Complex(a2));
    require(std::abs(a) > 0, "o2220: a != 0");
    Complex ident = 2.0 * mu * a / (a * a - 1.0) + 2.0 * a / (a * a - q2) + 1.0 / a;
    require(std::abs(ident) < 1e-9, "o2220: printed residue identity");
    Poly z2q2({Complex(-q2), Complex{}, Complex(1.0)});
    Poly z2({Complex{}, Complex{}, Complex(1.0)});
    Poly z2a2({Complex(-a * a), Complex{}, Complex(1.0)});
    PowerProduct dg(1.0, {{Complex(1.0), mu}, {Complex(-1.0), mu}},
                    RationalFn(z2q2 * z2, z2a2 * z2a2));
    Differential dgf = one_form(dg);
    check_residue_zero(dgf, a, "z = a");
    check_residue_zero(dgf, -a, "z = -a");
    double qc = -mu * (mu + 2) / (q2 - 1.0);
    Poly z2m1({Complex(-1.0), Complex{}, Complex(1.0)});
    RationalFn Q = Complex(qc) * RationalFn(z2q2, z2m1 * z2m1);
    SurfaceData d;
    d.label = "o2220";
    d.punctures = {ExtComplex(Complex(1.0)), ExtComplex(Complex(-1.0)), ExtComplex::inf(),
                   ExtComplex(Complex{})};
    WeierstrassSpec ws;
    ws.dg = dgf;
    ws.omega = diff_div(two_form(Q), dgf);
    if (auto g = power_product_primitive(dg)) ws.g = MeroFn(*g);
    d.weier = ws;
    d.annotations["ta"] = 8.0 * kPi;
    return d;
}

}  // namespace

std::vector<std::string> catalog_families() {
    return {"horosphere", "enneper_cousin", "enneper_dual", "catenoid_cousin",
            "trinoid",    "fournoid",       "o2m4",         "o2m5",
            "o022",       "o122",           "o122_eq8pi",   "o2220"};
}

SurfaceData make(const FamilyParams& p) {
    if (p.name == "horosphere") return horosphere(p);
    if (p.name == "enneper_cousin") return enneper(p, false);
    if (p.name == "enneper_dual") return enneper(p, true);
    if (p.name == "catenoid_cousin") return catenoid_cousin(p);
    if (p.name == "trinoid") return trinoid(p);
    if (p.name == "fournoid") return fournoid(p);
    if (p.name == "o2m4") return o2m4(p);
    if (p.name == "o2m5") return o2m5(p);
    if (p.name == "o022") return o022(p);
    if (p.name == "o122") return o122(p);
    if (p.name == "o122_eq8pi") return o122_eq8pi(p);
    if (p.name == "o2220") return o2220(p);
    throw ParamOutOfRange("unknown family " + p.name);
}

}  // namespace cmc1
