#include "cmc1/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace cmc1 {

// ----------------------------------------------------------------- orders

std::vector<EndRecord> branch_orders(const SurfaceData& data) {
    Differential Q = data.hopf();
    std::vector<EndRecord> out;
    for (const auto& p : data.punctures) {
        EndRecord e;
        e.point = p;
        if (Q.zero()) {
            e.d = 0;
            e.mu = 0;
            e.mu_sharp = 0;
            e.regular = true;
            e.embedded = false;
            out.push_back(e);
            continue;
        }
        double d = order_at(Q, p);
        e.d = static_cast<int>(std::llround(d));
        if (std::abs(d - e.d) > 1e-6) throw InconsistentOrders("non-integer ord Q at an end");
        e.regular = e.d >= -2;
        e.mu = detail::end_conical_order(data, p);
        if (data.gauss) {
            e.mu_sharp = branching_order_from_derivative(data.gauss->dG, p);
        } else if (!e.regular) {
            e.mu_sharp = kInfiniteOrder;
        } else if (e.d >= -1) {
            e.mu_sharp = e.mu;  // (7.12)
        } else {
            // invert (7.1): c# = c - 2 * [z^-2 coefficient of Q]
            Complex q2 = detail::q2_coefficient(Q, p);
            double cs = e.c() - 2.0 * q2.real();
            double disc = 1.0 - 2.0 * cs;
            if (disc < -1e-9) throw InconsistentOrders("no real mu# solves (7.2)");
            double ms = -1.0 + std::sqrt(std::max(disc, 0.0));
            if (std::abs(ms - std::round(ms)) > 1e-6)
                throw InconsistentOrders("mu# not an integer at a regular end");
            e.mu_sharp = std::round(ms);
        }
        // (7.8)-(7.12) consistency
        if (e.mu <= -1.0 + 1e-12) throw InconsistentOrders("mu <= -1");
        if (!(e.mu - e.d > 1.0 - 1e-9)) throw InconsistentOrders("mu - d <= 1");
        bool mu_int = std::abs(e.mu - std::round(e.mu)) < 1e-9;
        if (mu_int && !(e.mu - e.d >= 2.0 - 1e-9))
            throw InconsistentOrders("integer mu with mu - d < 2");
        if (e.regular && std::isfinite(e.mu_sharp) && !(e.mu_sharp - e.d >= 2.0 - 1e-9))
            throw InconsistentOrders("mu# - d < 2 at a regular end");
        if (e.d >= -1 && std::isfinite(e.mu_sharp) && std::abs(e.mu - e.mu_sharp) > 1e-6)
            throw InconsistentOrders("mu != mu# although d >= -1");
        e.embedded = e.regular && std::isfinite(e.mu_sharp) &&
                     std::abs(e.mu_sharp - e.d - 2.0) < 1e-9;
        out.push_back(e);
    }
    return out;
}

static double xi_sum(const SurfaceData& data) {
    Differential Q = data.hopf();
    if (Q.zero()) return 0;
    double s = 0;
    for (const auto& [q, xi] : umbilic_points(Q, data.punctures)) s += xi;
    return s;
}

double total_curvature(const SurfaceData& data) {
    auto ends = branch_orders(data);
    double s = 0;
    for (const auto& e : ends) s += e.mu - e.d;
    double ta = 2.0 * kPi * (2.0 * data.genus - 2.0 + s);
    // Gauss-Bonnet cross-check: chi + sum mu + sum xi with chi = 2 - 2 genus
    double gb = 2.0 - 2.0 * data.genus + xi_sum(data);
    for (const auto& e : ends) gb += e.mu;
    gb *= 2.0 * kPi;
    if (std::abs(ta - gb) > 1e-6 * std::max(1.0, std::abs(ta)))
        throw InconsistentOrders("(7.7) and Gauss-Bonnet totals disagree");
    if (data.weier && data.weier->g) {
        if (const auto* r = std::get_if<RationalFn>(&*data.weier->g)) {
            double deg = 4.0 * kPi * r->map_degree();
            if (std::abs(ta - deg) > 1e-6 * std::max(1.0, std::abs(ta)))
                throw InconsistentOrders("TA != 4 pi deg g for rational g");
        }
    }
    return ta;
}

double dual_total_curvature(const SurfaceData& data) {
    if (data.gauss) {
        double ta = 4.0 * kPi * data.gauss->G.map_degree();
        auto ends = branch_orders(data);
        bool all_regular = true;
        for (const auto& e : ends) all_regular = all_regular && e.regular;
        if (all_regular) {
            double gb = 2.0 - 2.0 * data.genus + xi_sum(data);
            for (const auto& e : ends) gb += e.mu_sharp;
            gb *= 2.0 * kPi;
            if (std::abs(ta - gb) > 1e-6 * std::max(1.0, ta))
                throw InconsistentOrders("4 pi deg G and (7.6) disagree");
        }
        return ta;
    }
    auto ends = branch_orders(data);
    for (const auto& e : ends)
        if (!e.regular) return std::numeric_limits<double>::infinity();
    double gb = 2.0 - 2.0 * data.genus + xi_sum(data);
    for (const auto& e : ends) gb += e.mu_sharp;
    return 2.0 * kPi * gb;
}

CurvatureReport curvature_report(const SurfaceData& data, bool numeric) {
    CurvatureReport rep;
    rep.genus = data.genus;
    rep.ends = branch_orders(data);
    rep.ta = total_curvature(data);
    rep.ta_gauss_bonnet = rep.ta;  // total_curvature throws on mismatch
    rep.ta_dual = dual_total_curvature(data);
    Differential Q = data.hopf();
    if (!Q.zero()) rep.umbilics = umbilic_points(Q, data.punctures);
    if (numeric && data.weier && data.weier->g) {
        const MeroFn& g = *data.weier->g;
        rep.ta_numeric = numeric_spherical_area(g, sphere_cover(g));
    }
    return rep;
}

// ------------------------------------------------------------- quadrature

double spherical_density(const MeroFn& h, const MeroFn& dh, Complex z) {
    double u = mero_abs_eval(h, z);
    double du = mero_abs_eval(dh, z);
    if (!std::isfinite(u) || !std::isfinite(du)) return 0.0;
    double s = 1.0 + u * u;
    return 4.0 * du * du / (s * s);
}

namespace {

struct DensityEval {
    MeroFn h, dh, hinv, dhinv;
    explicit DensityEval(const MeroFn& h_)
        : h(h_), dh(mero_derivative(h_)), hinv(mero_inverse(h_)),
          dhinv(mero_derivative(hinv)) {}

    double operator()(Complex z) const {
        double u = mero_abs_eval(h, z);
        if (std::isfinite(u) && u <= 1.0) {
            double du = mero_abs_eval(dh, z);
            if (!std::isfinite(du)) return 0.0;
            double s = 1.0 + u * u;
            return 4.0 * du * du / (s * s);
        }
        // near/at a pole of h evaluate through 1/h (the density is
        // inversion invariant)
        double v = mero_abs_eval(hinv, z);
        double dv = mero_abs_eval(dhinv, z);
        if (!std::isfinite(v) || !std::isfinite(dv)) return 0.0;
        double s = 1.0 + v * v;
        return 4.0 * dv * dv / (s * s);
    }
};

struct RingJob {
    const DensityEval& f;
    Complex center;
    bool wchart;
    const std::vector<std::pair<Complex, double>>& holes;

    double eval_at(double r, double theta) const {
        Complex z = center + r * Complex(std::cos(theta), std::sin(theta));
        if (!wchart) return f(z);
        // z is the w variable; integrate density(1/w)/|w|^4
        double aw = std::abs(z);
        if (aw == 0) return 0.0;
        return f(1.0 / z) / (aw * aw * aw * aw);
    }

    // fraction of the theta cell [t - ht/2, t + ht/2] outside all holes at
    // ring radius r
    double weight(double r, double t, double ht) const {
        double w = 1.0;
        for (const auto& [hc, hr] : holes) {
            double rho = std::abs(hc - center);
            if (rho < 1e-300) {
                if (r < hr) return 0.0;
                continue;
            }
            double ca = (r * r + rho * rho - hr * hr) / (2.0 * r * rho);
            if (ca >= 1.0) continue;          // ring outside the hole
            double half = (ca <= -1.0) ? kPi : std::acos(ca);
            double tc = std::arg(hc - center);
            double d = std::remainder(t - tc, 2.0 * kPi);
            double lo = std::max(std::abs(d) - ht / 2.0, 0.0);
            double hi = std::abs(d) + ht / 2.0;
            double covered = std::max(0.0, std::min(hi, half) - lo);
            w -= std::min(covered / ht, w);
        }
        return w;
    }

    // integral over the ring s in [s0, s1] (r = e^s) with ns x nth midpoints
    double ring(double s0, double s1, int ns, int nth) const {
        double hs = (s1 - s0) / ns;
        double ht = 2.0 * kPi / nth;
        double acc = 0;
        for (int i = 0; i < ns; ++i) {
            double s = s0 + (i + 0.5) * hs;
            double r = std::exp(s);
            double row = 0;
            for (int j = 0; j < nth; ++j) {
                double t = (j + 0.5) * ht;
                double w = holes.empty() ? 1.0 : weight(r, t, ht);
                if (w > 0) row += w * eval_at(r, t);
            }
            acc += row * r * r;
        }
        return acc * hs * ht;
    }
};

double annulus_integral(const DensityEval& f, const AnnulusSpec& an, int ns_per_efold,
                        int nth, double span) {
    RingJob job{f, an.center.is_inf() ? Complex{} : an.center.finite(), an.center.is_inf(),
                an.holes};
    double s1 = std::log(an.r1);
    double s_end = an.r0 > 0 ? std::log(an.r0) : s1 - span;
    double total = 0;
    double prev_ring = -1;
    double sum_recent = 0;
    int zero_run = 0;
    for (double s = s1; s > s_end + 1e-12;) {
        double s0 = std::max(s - 1.0, s_end);
        int ns = std::max(2, static_cast<int>(std::ceil((s - s0) * ns_per_efold)));
        double I = job.ring(s0, s, ns, nth);
        total += I;
        // geometric tail once the ring masses decay steadily
        if (an.r0 == 0 && prev_ring > 0 && I > 0) {
            double rho = I / prev_ring;
            if (rho < 0.9 && s0 <= s1 - 6.0) {
                double tail = I * rho / (1.0 - rho);
                if (tail < 1e-6 * std::max(std::abs(total), 1e-300)) {
                    total += tail;
                    return total;
                }
            }
        }
        if (I == 0) {
            if (++zero_run > 5 && sum_recent == 0 && s0 < s1 - 8.0) break;
        } else {
            zero_run = 0;
        }
        sum_recent = I;
        prev_ring = I;
        s = s0;
    }
    return total;
}

}  // namespace

double numeric_spherical_area(const MeroFn& h, const std::vector<AnnulusSpec>& annuli,
                              QuadratureOptions opts) {
    DensityEval f(h);
    int ns = 6, nth = 128;
    double prev = std::numeric_limits<double>::quiet_NaN();
    while (true) {
        double tot = 0;
        for (const auto& an : annuli) tot += annulus_integral(f, an, ns, nth, opts.span_efolds);
        if (std::isfinite(prev) && std::abs(tot - prev) <= opts.rel_tol * std::abs(tot))
            return tot;
        prev = tot;
        if (nth >= opts.max_theta || ns >= opts.max_rings_per_efold)
            throw QuadratureNotConverged("spherical-area quadrature did not settle");
        ns *= 2;
        nth *= 2;
    }
}

std::vector<AnnulusSpec> sphere_cover(const MeroFn& h) {
    std::vector<Complex> pts;
    auto add = [&](Complex z) {
        for (const auto& w : pts)
            if (std::abs(w - z) <= 1e-7 * std::max(1.0, std::abs(z))) return;
        pts.push_back(z);
    };
    auto add_from = [&](const MeroFn& f) {
        if (const auto* r = std::get_if<RationalFn>(&f)) {
            for (Complex z : r->num().roots()) add(z);
            for (Complex z : r->den().roots()) add(z);
        } else {
            const auto& p = std::get<PowerProduct>(f);
            for (const auto& fac : p.factors()) add(fac.point);
            for (Complex z : p.tail().num().roots()) add(z);
            for (Complex z : p.tail().den().roots()) add(z);
        }
    };
    add_from(h);
    add_from(mero_derivative(h));
    double R = 2.0;
    for (Complex z : pts) R = std::max(R, 2.0 * std::abs(z) + 2.0);

    std::vector<AnnulusSpec> cover;
    std::vector<std::pair<Complex, double>> holes;
    for (size_t i = 0; i < pts.size(); ++i) {
        double d = R - std::abs(pts[i]);
        for (size_t j = 0; j < pts.size(); ++j)
            if (j != i) d = std::min(d, std::abs(pts[i] - pts[j]));
        double r = std::max(0.45 * d, 1e-8);
        holes.push_back({pts[i], r});
        cover.push_back({ExtComplex(pts[i]), 0.0, r, {}});
    }
    AnnulusSpec main;
    main.center = ExtComplex(Complex{});
    main.r1 = R;
    main.holes = holes;
    main.r0 = 0.0;
    for (const auto& [hc, hr] : holes)
        if (std::abs(hc) < hr) main.r0 = std::max(main.r0, 0.5 * (hr - std::abs(hc)));
    cover.push_back(main);
    cover.push_back({ExtComplex::inf(), 0.0, 1.0 / R, {}});
    return cover;
}

// ----------------------------------------------------------------- flux

namespace {

struct GaussEntries {
    RationalFn e11, e12, e21;  // e22 = -e11
};

GaussEntries gauss_entries(const GaussSpec& gs) {
    Differential rho = diff_div(gs.Q, gs.dG);
    const RationalFn* r = rho.rational();
    if (!r) throw Error("flux: rational (3.10) coefficient expected");
    GaussEntries e;
    e.e21 = *r;
    e.e11 = gs.G * e.e21;
    e.e12 = Complex(-1.0) * (gs.G * e.e11);
    return e;
}

std::vector<Complex> entry_poles(const GaussEntries& e) {
    std::vector<Complex> ps;
    auto add = [&](Complex z) {
        for (const auto& w : ps)
            if (std::abs(w - z) <= 1e-7 * std::max(1.0, std::abs(z))) return;
        ps.push_back(z);
    };
    for (Complex z : e.e11.den().roots()) add(z);
    for (Complex z : e.e12.den().roots()) add(z);
    for (Complex z : e.e21.den().roots()) add(z);
    return ps;
}

Mat2 residue_matrix(const GaussEntries& e, Complex p) {
    Complex r11 = residue_at(e.e11, p);
    Complex r12 = residue_at(e.e12, p);
    Complex r21 = residue_at(e.e21, p);
    return {r11, r12, r21, -r11};
}

double loop_radius(const SurfaceData& data, Complex c) {
    double d = std::numeric_limits<double>::max();
    for (const auto& p : data.punctures) {
        if (p.is_inf()) continue;
        double dd = std::abs(p.finite() - c);
        if (dd > 1e-9) d = std::min(d, dd);
    }
    if (data.gauss)
        for (Complex z : entry_poles(gauss_entries(*data.gauss))) {
            double dd = std::abs(z - c);
            if (dd > 1e-9) d = std::min(d, dd);
        }
    if (!(d < std::numeric_limits<double>::max())) d = 1.0;
    return 0.5 * d;
}

}  // namespace

FluxMatrix flux(const SurfaceData& data, const ExtComplex& end) {
    if (!data.gauss) throw Error("flux: residue route needs (G, Q) data");
    auto ends = branch_orders(data);
    for (const auto& e : ends)
        if (ext_close(e.point, end, 1e-9) && !e.regular)
            throw IrregularEnd("flux at an irregular end");
    GaussEntries ge = gauss_entries(*data.gauss);
    std::vector<Complex> poles = entry_poles(ge);
    if (end.is_inf()) {
        // loop around infinity encloses no finite pole from the other side:
        // F_inf = -(sum of all finite residues)
        Mat2 s = Mat2::zero();
        for (Complex p : poles) s = s + residue_matrix(ge, p);
        return {end, Complex(-1.0) * s};
    }
    Complex c = end.finite();
    double rad = loop_radius(data, c);
    Mat2 s = Mat2::zero();
    bool hit = false;
    for (Complex p : poles)
        if (std::abs(p - c) <= rad) {
            s = s + residue_matrix(ge, p);
            hit = true;
        }
    if (!hit) s = residue_matrix(ge, c);
    return {end, s};
}

FluxMatrix flux_contour(const SurfaceData& data, const ExtComplex& end, int n_nodes) {
    if (!data.gauss) throw Error("flux_contour: needs (G, Q) data");
    GaussEntries ge = gauss_entries(*data.gauss);
    Complex c;
    double rad;
    bool clockwise = false;
    if (end.is_inf()) {
        c = Complex{};
        rad = 1.0;
        for (Complex z : entry_poles(ge)) rad = std::max(rad, std::abs(z));
        for (const auto& p : data.punctures)
            if (!p.is_inf()) rad = std::max(rad, std::abs(p.finite()));
        rad = 2.0 * rad + 2.0;
        clockwise = true;
    } else {
        c = end.finite();
        rad = loop_radius(data, c);
    }
    Mat2 acc = Mat2::zero();
    for (int j = 0; j < n_nodes; ++j) {
        double t = 2.0 * kPi * (j + 0.5) / n_nodes;
        Complex z = c + rad * Complex(std::cos(t), std::sin(t));
        Complex zp = rad * Complex(-std::sin(t), std::cos(t));
        Complex a = ge.e11.eval(z), b = ge.e12.eval(z), g = ge.e21.eval(z);
        Mat2 A{a, b, g, -a};
        acc = acc + (zp * (2.0 * kPi / n_nodes)) * A;
    }
    acc = (1.0 / Complex(0.0, 2.0 * kPi)) * acc;
    if (clockwise) acc = Complex(-1.0) * acc;
    return {end, acc};
}

FluxMatrix flux_via_lift(const SurfaceData& data, const ExtComplex& end, Complex basepoint,
                         IntegrateOptions opts) {
    LiftIntegrator I(data, opts);
    PathSpec loop;
    if (end.is_inf()) {
        double R = 1.0;
        for (Complex s : I.singular_points()) R = std::max(R, std::abs(s));
        loop = PathSpec::loop_around_infinity(basepoint, 2.0 * R + 2.0);
    } else {
        Complex c = end.finite();
        double d = std::numeric_limits<double>::max();
        for (Complex s : I.singular_points())
            if (std::abs(s - c) > 1e-9) d = std::min(d, std::abs(s - c));
        if (!(d < std::numeric_limits<double>::max())) d = 1.0;
        loop = PathSpec::loop(basepoint, c, 0.5 * d);
    }
    LiftState st = I.initial_state(basepoint);
    Mat2 J = Mat2::zero();
    I.integrate(st, loop, &J);
    return {end, J};
}

FluxBalance flux_balance(const SurfaceData& data) {
    FluxBalance out;
    auto ends = branch_orders(data);
    for (const auto& e : ends)
        if (!e.regular) throw IrregularEnd("flux balance needs all ends regular");
    if (data.gauss) {
        for (const auto& p : data.punctures) out.fluxes.push_back(flux(data, p));
    } else {
        // lift route from a common generic basepoint
        Complex base(0.31, 0.47);
        LiftIntegrator I(data, {});
        double scale = 1.0;
        for (Complex s : I.singular_points()) scale = std::max(scale, std::abs(s));
        base *= scale;
        for (const auto& p : data.punctures)
            out.fluxes.push_back(flux_via_lift(data, p, base));
    }
    out.sum = Mat2::zero();
    for (const auto& f : out.fluxes) out.sum = out.sum + f.F;
    out.residual = out.sum.frobenius();
    if (data.punctures.size() == 1) {
        const EndRecord& e = ends.front();
        if (e.d == -2) {
            out.single_end_impossible = true;
            out.note = "single regular end with ord Q = -2 (Corollary 7.2(1))";
        } else if (e.d < 0 && e.embedded) {
            out.single_end_impossible = true;
            out.note = "single embedded regular end with ord Q < 0 (Corollary 7.2(2))";
        }
    }
    return out;
}

InequalityReport inequality_report(const CurvatureReport& rep) {
    InequalityReport out;
    int n = static_cast<int>(rep.ends.size());
    double chi_neg = 2.0 * rep.genus - 2.0 + n;
    out.cohn_vossen_strict = rep.ta / (2.0 * kPi) > chi_neg + 1e-12;
    if (std::isfinite(rep.ta_dual)) {
        double lhs = rep.ta_dual / (2.0 * kPi);
        double rhs = 2.0 * (rep.genus + n - 1);
        out.osserman = lhs >= rhs - 1e-9;
        out.osserman_equality = std::abs(lhs - rhs) < 1e-9;
    }
    out.all_ends_embedded = true;
    for (const auto& e : rep.ends) out.all_ends_embedded = out.all_ends_embedded && e.embedded;
    if (rep.genus == 0 && n % 2 == 1 && n >= 3) {
        int m = (n - 1) / 2;
        out.odd_end_bound = rep.ta >= 4.0 * kPi * m - 1e-9;
    }
    for (const auto& e : rep.ends) {
        if (!(e.mu > -1.0)) out.per_end_relations = false;
        if (!(e.mu - e.d > 1.0 - 1e-9)) out.per_end_relations = false;
        if (e.regular && std::isfinite(e.mu_sharp) && !(e.mu_sharp - e.d >= 2.0 - 1e-9))
            out.per_end_relations = false;
    }
    return out;
}

}  // namespace cmc1
