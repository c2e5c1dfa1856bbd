#include "cmc1/surface.hpp"

#include <algorithm>
#include <cmath>

namespace cmc1 {

Differential SurfaceData::hopf() const {
    if (gauss) return gauss->Q;
    if (weier) return weier->hopf();
    throw MissingHopf("surface data holds neither (G, Q) nor (g, omega)");
}

std::string SurfaceType::str() const {
    std::string s = genus == 0 ? "O(" : genus == 1 ? "I(" : ("G" + std::to_string(genus) + "(");
    for (size_t i = 0; i < end_orders.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(end_orders[i]);
    }
    return s + ")";
}

double Divisor::order_sum() const {
    double s = 0;
    for (const auto& e : entries) s += e.order;
    return s;
}

int branching_order_from_derivative(const Differential& dG, const ExtComplex& p) {
    if (dG.zero()) return 0;  // constant map
    double e = order_at(dG, p);
    long k = std::llround(e);
    if (std::abs(e - k) > 1e-6) throw InvalidOrder("non-integer branching order");
    if (k >= 0) return static_cast<int>(k);
    if (k == -1) throw InvalidOrder("simple pole of a map derivative");
    return static_cast<int>(-k - 2);
}

std::vector<std::pair<ExtComplex, int>> umbilic_points(const Differential& Q,
                                                       const std::vector<ExtComplex>& punctures) {
    std::vector<std::pair<ExtComplex, int>> out;
    if (Q.zero()) return out;
    const RationalFn* r = Q.rational();
    if (!r) throw Error("umbilic_points: rational Hopf differential expected");
    auto is_puncture = [&](const ExtComplex& z) {
        for (const auto& p : punctures)
            if (ext_close(p, z, 1e-7)) return true;
        return false;
    };
    // cluster the numerator roots into points with multiplicity
    std::vector<std::pair<Complex, int>> pts;
    for (Complex z : r->num().roots()) {
        bool found = false;
        for (auto& pr : pts)
            if (std::abs(pr.first - z) <= 1e-6 * std::max(1.0, std::abs(z))) {
                pr.second++;
                found = true;
                break;
            }
        if (!found) pts.push_back({z, 1});
    }
    for (const auto& [z, m] : pts)
        if (!is_puncture(ExtComplex(z))) out.push_back({ExtComplex(z), m});
    double oinf = order_at(Q, ExtComplex::inf());
    if (oinf > 0 && !is_puncture(ExtComplex::inf()))
        out.push_back({ExtComplex::inf(), static_cast<int>(std::llround(oinf))});
    return out;
}

SurfaceType surface_type(const SurfaceData& data) {
    Differential Q = data.hopf();
    SurfaceType t;
    t.genus = data.genus;
    if (Q.zero()) {
        // totally umbilic: the conventional type carries order 0 at each end
        t.end_orders.assign(data.punctures.size(), 0);
        return t;
    }
    for (const auto& p : data.punctures) {
        double d = order_at(Q, p);
        long k = std::llround(d);
        if (std::abs(d - k) > 1e-6) throw InvalidOrder("non-integer order of Q at an end");
        t.end_orders.push_back(static_cast<int>(k));
    }
    std::sort(t.end_orders.begin(), t.end_orders.end(), std::greater<int>());
    return t;
}

CompatibilityReport compatibility_check(const GaussSpec& gs,
                                        const std::vector<ExtComplex>& punctures) {
    CompatibilityReport rep;
    auto add_candidate = [](std::vector<ExtComplex>& v, const ExtComplex& z) {
        for (const auto& w : v)
            if (ext_close(w, z, 1e-7)) return;
        v.push_back(z);
    };
    std::vector<ExtComplex> cand;
    if (const RationalFn* q = gs.Q.rational()) {
        for (Complex z : q->num().roots()) add_candidate(cand, ExtComplex(z));
        for (Complex z : q->den().roots()) add_candidate(cand, ExtComplex(z));
    }
    if (const RationalFn* d = gs.dG.rational()) {
        for (Complex z : d->num().roots()) add_candidate(cand, ExtComplex(z));
        for (Complex z : d->den().roots()) add_candidate(cand, ExtComplex(z));
    }
    add_candidate(cand, ExtComplex::inf());
    for (const auto& p : punctures) add_candidate(cand, p);

    auto is_puncture = [&](const ExtComplex& z) {
        for (const auto& p : punctures)
            if (ext_close(p, z, 1e-7)) return true;
        return false;
    };
    for (const auto& z : cand) {
        CompatibilityReport::Item it;
        it.point = z;
        it.is_puncture = is_puncture(z);
        it.q_order = order_at(gs.Q, z);
        it.g_branching = branching_order_from_derivative(gs.dG, z);
        if (it.is_puncture) {
            it.ok = (it.g_branching - it.q_order >= 2.0 - 1e-9);
            it.detail = it.ok ? "completeness margin ok" : "branching(G) - d < 2";
        } else {
            it.ok = std::abs(it.q_order - it.g_branching) < 1e-9;
            it.detail = it.ok ? "ord Q matches branching of G" : "ord Q != branching of G";
        }
        rep.ok = rep.ok && it.ok;
        rep.items.push_back(it);
    }
    return rep;
}

namespace detail {

// Conical order of the pseudometric at an end, from the local exponent of dg.
double mu_from_dg(const Differential& dg, const ExtComplex& p) {
    if (dg.zero()) return 0.0;  // g constant (horosphere)
    double e = order_at(dg, p);  // 1-form order (chart rule at infinity)
    long k = std::llround(e);
    if (std::abs(e - k) < 1e-9) {
        if (k >= 0) return static_cast<double>(k);
        if (k == -1) throw InvalidOrder("dg has a residue-type pole at an end");
        return static_cast<double>(-k - 2);
    }
    double nu = e + 1.0;
    return std::abs(nu) - 1.0;
}

// Coefficient of (z-p)^{-2} of a weight-2 rational differential, in the
// correct chart.
Complex q2_coefficient(const Differential& Q, const ExtComplex& p) {
    const RationalFn* r = Q.rational();
    if (!r) throw Error("q2_coefficient: rational Hopf differential expected");
    if (!p.is_inf()) {
        LaurentSeries s = laurent_expand(*r, p.finite(), 6);
        return s.coeff_of(-2);
    }
    // w-chart: Qhat(1/w)/w^4; build by coefficient reversal
    int dn = r->num().degree(), dd = r->den().degree();
    std::vector<Complex> rn(r->num().coeffs().rbegin(), r->num().coeffs().rend());
    std::vector<Complex> rd(r->den().coeffs().rbegin(), r->den().coeffs().rend());
    // Qhat(1/w) = w^{dd-dn} * rn(w)/rd(w); divide by w^4
    int shift = dd - dn - 4;
    Poly num(std::move(rn)), den(std::move(rd));
    if (shift >= 0)
        num = num * Poly::from_roots(1.0, std::vector<Complex>(shift, Complex{}));
    else
        den = den * Poly::from_roots(1.0, std::vector<Complex>(-shift, Complex{}));
    LaurentSeries s = laurent_expand(RationalFn(num, den), Complex{}, 6);
    return s.coeff_of(-2);
}

// mu_j for GaussSpec data via the z^{-2} coefficient of Q:
// coeff = (c - c#)/2 with c = -mu(mu+2)/2, c# from the branching of G.
double mu_from_gauss(const GaussSpec& gs, const ExtComplex& p) {
    int mh = branching_order_from_derivative(gs.dG, p);
    double ch = -0.5 * mh * (mh + 2.0);
    Complex q2 = q2_coefficient(gs.Q, p);
    if (std::abs(q2.imag()) > 1e-7 * std::max(1.0, std::abs(q2)))
        throw InconsistentOrders("complex z^-2 coefficient of Q at an end");
    double c = ch + 2.0 * q2.real();
    double disc = 1.0 - 2.0 * c;
    if (disc < 0) throw InconsistentOrders("no real conical order solves (7.2)");
    return -1.0 + std::sqrt(disc);
}

double end_conical_order(const SurfaceData& data, const ExtComplex& p) {
    if (data.weier) return mu_from_dg(data.weier->dg, p);
    return mu_from_gauss(*data.gauss, p);
}

}  // namespace detail

Divisor pseudometric_divisor(const SurfaceData& data) {
    Divisor div;
    for (const auto& p : data.punctures) {
        double mu = detail::end_conical_order(data, p);
        if (mu <= -1.0 + 1e-12) throw InvalidOrder("conical order <= -1");
        div.entries.push_back({p, mu, false});
    }
    Differential Q = data.hopf();
    if (!Q.zero()) {
        for (const auto& [q, xi] : umbilic_points(Q, data.punctures))
            div.entries.push_back({q, static_cast<double>(xi), true});
    }
    return div;
}

}  // namespace cmc1
