#include "cmc1/integrate.hpp"

#include <algorithm>
#include <cmath>

namespace cmc1 {

// ----------------------------------------------------------------- paths

Complex PathSegment::point(double t) const {
    if (!arc) return a + t * (b - a);
    double th = th0 + t * (th1 - th0);
    return center + radius * Complex(std::cos(th), std::sin(th));
}

Complex PathSegment::velocity(double t) const {
    if (!arc) return b - a;
    double th = th0 + t * (th1 - th0);
    return radius * (th1 - th0) * Complex(-std::sin(th), std::cos(th));
}

double PathSegment::length() const {
    if (!arc) return std::abs(b - a);
    return radius * std::abs(th1 - th0);
}

double PathSegment::distance_to(Complex p) const {
    if (!arc) {
        Complex d = b - a;
        double L2 = std::norm(d);
        if (L2 == 0) return std::abs(p - a);
        double t = std::clamp(((p - a) * std::conj(d)).real() / L2, 0.0, 1.0);
        return std::abs(p - (a + t * d));
    }
    // distance to the arc: radial distance if the angle is inside the swept
    // range, otherwise distance to an endpoint
    Complex rel = p - center;
    double ang = std::arg(rel);
    double lo = std::min(th0, th1), hi = std::max(th0, th1);
    for (double k = -3; k <= 3; ++k) {
        double an = ang + 2 * kPi * k;
        if (an >= lo && an <= hi) return std::abs(std::abs(rel) - radius);
    }
    return std::min(std::abs(p - point(0.0)), std::abs(p - point(1.0)));
}

double PathSpec::length() const {
    double L = 0;
    for (const auto& s : segments) L += s.length();
    return L;
}

double PathSpec::distance_to(Complex p) const {
    double d = std::numeric_limits<double>::max();
    for (const auto& s : segments) d = std::min(d, s.distance_to(p));
    return d;
}

PathSpec PathSpec::line(Complex a, Complex b) {
    PathSpec p;
    p.segments.push_back({false, a, b, {}, 0, 0, 0});
    return p;
}

PathSpec& PathSpec::then_line(Complex b) {
    segments.push_back({false, end(), b, {}, 0, 0, 0});
    return *this;
}

PathSpec& PathSpec::then_arc(Complex center, double th0, double th1) {
    double r = std::abs(end() - center);
    PathSegment s;
    s.arc = true;
    s.center = center;
    s.radius = r;
    s.th0 = th0;
    s.th1 = th1;
    segments.push_back(s);
    return *this;
}

PathSpec PathSpec::loop(Complex base, Complex center, double radius) {
    Complex dir = (base - center) / std::abs(base - center);
    Complex zs = center + radius * dir;
    double th = std::arg(dir);
    PathSpec p = PathSpec::line(base, zs);
    p.then_arc(center, th, th + 2 * kPi);
    p.then_line(base);
    return p;
}

PathSpec PathSpec::loop_around_infinity(Complex base, double R) {
    Complex zs = R * base / std::abs(base);
    double th = std::arg(base);
    PathSpec p = PathSpec::line(base, zs);
    p.then_arc(Complex{}, th, th - 2 * kPi);  // clockwise = ccw around infinity
    p.then_line(base);
    return p;
}

// ------------------------------------------------------------- integrator

namespace {

void append_unique(std::vector<Complex>& v, Complex z, double tol = 1e-9) {
    for (const auto& w : v)
        if (std::abs(w - z) <= tol * std::max(1.0, std::abs(z))) return;
    v.push_back(z);
}

std::vector<int> log_indices(const PowerProduct& pp, const std::vector<Complex>& pts) {
    std::vector<int> idx;
    for (const auto& f : pp.factors()) {
        int found = -1;
        for (size_t i = 0; i < pts.size(); ++i)
            if (std::abs(pts[i] - f.point) <= 1e-9 * std::max(1.0, std::abs(f.point)))
                found = static_cast<int>(i);
        idx.push_back(found);
    }
    return idx;
}

}  // namespace

LiftIntegrator::LiftIntegrator(const SurfaceData& data, IntegrateOptions opts)
    : opts_(opts) {
    if (opts.form)
        form_ = *opts.form;
    else
        form_ = data.gauss ? LiftForm::gauss : LiftForm::weier;

    if (form_ == LiftForm::gauss) {
        if (!data.gauss) throw Error("gauss-form integration without (G, Q) data");
        const GaussSpec& gs = *data.gauss;
        Differential rho = diff_div(gs.Q, gs.dG);  // weight 1, rational after cancellation
        const RationalFn* r = rho.rational();
        if (!r) throw Error("gauss-form coefficient is not rational");
        e21_ = *r;
        e11_ = gs.G * e21_;
        e12_ = Complex(-1.0) * (gs.G * e11_);
        d11_ = e11_.derivative();
        d12_ = e12_.derivative();
        d21_ = e21_.derivative();
        for (Complex z : e11_.den().roots()) append_unique(singular_, z);
        for (Complex z : e12_.den().roots()) append_unique(singular_, z);
        for (Complex z : e21_.den().roots()) append_unique(singular_, z);
    } else {
        if (!data.weier) throw Error("weier-form integration without (g, omega) data");
        const WeierstrassSpec& ws = *data.weier;
        omega_coeff_ = ws.omega.coeff;
        dg_coeff_ = ws.dg.coeff;
        g_ = ws.g;
        // branch points: union over the multivalued pieces
        if (const auto* p = std::get_if<PowerProduct>(&omega_coeff_))
            for (const auto& f : p->factors()) append_unique(branch_points_, f.point);
        if (const auto* p = std::get_if<PowerProduct>(&dg_coeff_))
            for (const auto& f : p->factors()) append_unique(branch_points_, f.point);
        if (g_)
            if (const auto* p = std::get_if<PowerProduct>(&*g_))
                for (const auto& f : p->factors()) append_unique(branch_points_, f.point);
        if (const auto* p = std::get_if<PowerProduct>(&omega_coeff_))
            omega_log_index_ = log_indices(*p, branch_points_);
        if (const auto* p = std::get_if<PowerProduct>(&dg_coeff_))
            dg_log_index_ = log_indices(*p, branch_points_);
        if (g_)
            if (const auto* p = std::get_if<PowerProduct>(&*g_))
                g_log_index_ = log_indices(*p, branch_points_);
        track_g_ = !g_.has_value();
        // when g is not explicit, initial_state insists on opts.initial_g

        // singular set: poles of omega, dg, g plus all branch points
        auto add_poles = [&](const MeroFn& f) {
            if (const auto* r = std::get_if<RationalFn>(&f)) {
                for (Complex z : r->den().roots()) append_unique(singular_, z);
            } else {
                const auto& p = std::get<PowerProduct>(f);
                for (Complex z : p.tail().den().roots()) append_unique(singular_, z);
                for (const auto& f2 : p.factors())
                    if (f2.alpha < 0) append_unique(singular_, f2.point);
            }
        };
        add_poles(omega_coeff_);
        if (g_) add_poles(*g_);
        for (Complex z : branch_points_) append_unique(singular_, z);
        const auto* ro = std::get_if<RationalFn>(&omega_coeff_);
        if (!ro || !ro->zero()) omega_logderiv_ = mero_log_derivative(omega_coeff_);
    }
    for (const auto& p : data.punctures)
        if (!p.is_inf()) append_unique(singular_, p.finite());
}

Complex LiftIntegrator::eval_mero(const MeroFn& f, const std::vector<int>& idx,
                                  const std::vector<Complex>& logs, Complex z) const {
    if (const auto* r = std::get_if<RationalFn>(&f)) return r->eval(z);
    const auto& p = std::get<PowerProduct>(f);
    std::vector<Complex> sub(idx.size());
    for (size_t i = 0; i < idx.size(); ++i) sub[i] = logs[idx[i]];
    return p.eval_with_logs(sub, z);
}

LiftState LiftIntegrator::initial_state(Complex z0, const Mat2& F0) const {
    LiftState st;
    st.z = z0;
    st.F = F0;
    st.branch_logs.resize(branch_points_.size());
    for (size_t i = 0; i < branch_points_.size(); ++i)
        st.branch_logs[i] = std::log(z0 - branch_points_[i]);
    st.track_g = (form_ == LiftForm::weier);
    if (st.track_g) {
        if (g_)
            st.g_value = eval_mero(*g_, g_log_index_, st.branch_logs, z0);
        else if (opts_.initial_g)
            st.g_value = *opts_.initial_g;
        else if (const auto* r = std::get_if<RationalFn>(&dg_coeff_); r && r->zero())
            st.g_value = Complex{};
        else
            throw Error("weier data without explicit g needs IntegrateOptions::initial_g");
    }
    return st;
}

Mat2 LiftIntegrator::coefficient(const LiftState& st) const {
    if (form_ == LiftForm::gauss) {
        Complex a = e11_.eval(st.z), b = e12_.eval(st.z), c = e21_.eval(st.z);
        return {a, b, c, -a};
    }
    Complex om = eval_mero(omega_coeff_, omega_log_index_, st.branch_logs, st.z);
    Complex g = st.g_value;
    if (g_) g = eval_mero(*g_, g_log_index_, st.branch_logs, st.z);
    return {g * om, -g * g * om, om, -g * om};
}

Mat2 LiftIntegrator::coefficient_derivative(const LiftState& st) const {
    if (form_ == LiftForm::gauss) {
        Complex a = d11_.eval(st.z), b = d12_.eval(st.z), c = d21_.eval(st.z);
        return {a, b, c, -a};
    }
    Complex om = eval_mero(omega_coeff_, omega_log_index_, st.branch_logs, st.z);
    Complex omp = om * omega_logderiv_.eval(st.z);
    Complex g = st.g_value;
    if (g_) g = eval_mero(*g_, g_log_index_, st.branch_logs, st.z);
    Complex gp = eval_mero(dg_coeff_, dg_log_index_, st.branch_logs, st.z);
    Complex a = gp * om + g * omp;
    return {a, -(2.0 * g * gp * om + g * g * omp), omp, -a};
}

Mat2 LiftIntegrator::ddF(const LiftState& st) const {
    Mat2 A = coefficient(st);
    Mat2 Ap = coefficient_derivative(st);
    return form_ == LiftForm::gauss ? (Ap + A * A) * st.F : st.F * (A * A + Ap);
}

Mat2 LiftIntegrator::dF(const LiftState& st) const {
    Mat2 A = coefficient(st);
    return form_ == LiftForm::gauss ? A * st.F : st.F * A;
}

// Dormand-Prince 5(4) on the packed state (F, branch logs, g).
struct LiftOde {
    const LiftIntegrator& I;
    bool with_flux = false;

    size_t dim(const LiftState& st) const {
        return 4 + st.branch_logs.size() + (st.track_g ? 1 : 0) + (with_flux ? 4 : 0);
    }

    void pack(const LiftState& st, const Mat2& J, std::vector<Complex>& y) const {
        y.resize(dim(st));
        y[0] = st.F.a11;
        y[1] = st.F.a12;
        y[2] = st.F.a21;
        y[3] = st.F.a22;
        size_t k = 4;
        for (Complex l : st.branch_logs) y[k++] = l;
        if (st.track_g) y[k++] = st.g_value;
        if (with_flux) {
            y[k++] = J.a11;
            y[k++] = J.a12;
            y[k++] = J.a21;
            y[k++] = J.a22;
        }
    }

    void unpack(const std::vector<Complex>& y, LiftState& st, Mat2* J) const {
        st.F = {y[0], y[1], y[2], y[3]};
        size_t k = 4;
        for (auto& l : st.branch_logs) l = y[k++];
        if (st.track_g) st.g_value = y[k++];
        if (with_flux && J) *J = {y[k], y[k + 1], y[k + 2], y[k + 3]};
    }

    // derivative with respect to the path parameter t
    void eval(const PathSegment& seg, double t, const std::vector<Complex>& y,
              LiftState& scratch, std::vector<Complex>& dy) const {
        Complex z = seg.point(t);
        Complex zp = seg.velocity(t);
        scratch.z = z;
        scratch.F = {y[0], y[1], y[2], y[3]};
        size_t k = 4;
        for (auto& l : scratch.branch_logs) l = y[k++];
        if (scratch.track_g) scratch.g_value = y[k++];
        Mat2 A = I.coefficient(scratch);
        Mat2 dF = (I.form() == LiftForm::gauss) ? A * scratch.F : scratch.F * A;
        dy.resize(y.size());
        dy[0] = dF.a11 * zp;
        dy[1] = dF.a12 * zp;
        dy[2] = dF.a21 * zp;
        dy[3] = dF.a22 * zp;
        k = 4;
        for (size_t i = 0; i < scratch.branch_logs.size(); ++i)
            dy[k++] = zp / (z - I.branch_points()[i]);
        if (scratch.track_g) {
            Complex gp = I.eval_mero(I.dg_coeff_, I.dg_log_index_, scratch.branch_logs, z);
            dy[k++] = gp * zp;
        }
        if (with_flux) {
            // dJ = dF F^{-1} dz / (2 pi i)
            Mat2 dFF = dF * scratch.F.inverse();
            Complex f = zp / Complex(0.0, 2.0 * kPi);
            dy[k++] = dFF.a11 * f;
            dy[k++] = dFF.a12 * f;
            dy[k++] = dFF.a21 * f;
            dy[k++] = dFF.a22 * f;
        }
    }
};

namespace {

// Dormand–Prince coefficients
const double C2 = 1.0 / 5, C3 = 3.0 / 10, C4 = 4.0 / 5, C5 = 8.0 / 9;
const double A21 = 1.0 / 5;
const double A31 = 3.0 / 40, A32 = 9.0 / 40;
const double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
const double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
             A54 = -212.0 / 729;
const double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247,
             A64 = 49.0 / 176, A65 = -5103.0 / 18656;
const double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784,
             B6 = 11.0 / 84;
const double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920,
             E5 = -17253.0 / 339200, E6 = 22.0 / 525, E7 = -1.0 / 40;

}  // namespace

void LiftIntegrator::integrate(LiftState& st, const PathSpec& path) const {
    integrate(st, path, nullptr);
}

void LiftIntegrator::integrate(LiftState& st, const PathSpec& path, Mat2* flux_accum) const {
    if (std::abs(path.start() - st.z) > 1e-9 * std::max(1.0, std::abs(st.z)))
        throw Error("integrate: path does not start at the current state");
    for (Complex s : singular_) {
        if (path.distance_to(s) < std::min(opts_.clearance, path.clearance))
            throw SingularApproach("path too close to a singular point");
    }
    LiftOde ode{*this, flux_accum != nullptr};
    LiftState scratch = st;
    Mat2 J = flux_accum ? *flux_accum : Mat2::zero();

    std::vector<Complex> y, k1, k2, k3, k4, k5, k6, k7, ytmp, y5;
    for (const auto& seg : path.segments) {
        ode.pack(st, J, y);
        double t = 0.0;
        double h = std::min(opts_.max_step_fraction, 0.05);
        double facold = 1e-4;
        ode.eval(seg, t, y, scratch, k1);
        int steps = 0;
        while (t < 1.0) {
            if (++steps > 2000000) throw StepUnderflow("step count exceeded");
            h = std::min(h, 1.0 - t);
            auto stage = [&](const std::vector<double>& as,
                             const std::vector<const std::vector<Complex>*>& ks,
                             double c, std::vector<Complex>& out) {
                ytmp.resize(y.size());
                for (size_t i = 0; i < y.size(); ++i) {
                    Complex acc = y[i];
                    for (size_t j = 0; j < as.size(); ++j) acc += h * as[j] * (*ks[j])[i];
                    ytmp[i] = acc;
                }
                ode.eval(seg, t + c * h, ytmp, scratch, out);
            };
            stage({A21}, {&k1}, C2, k2);
            stage({A31, A32}, {&k1, &k2}, C3, k3);
            stage({A41, A42, A43}, {&k1, &k2, &k3}, C4, k4);
            stage({A51, A52, A53, A54}, {&k1, &k2, &k3, &k4}, C5, k5);
            stage({A61, A62, A63, A64, A65}, {&k1, &k2, &k3, &k4, &k5}, 1.0, k6);
            y5.resize(y.size());
            for (size_t i = 0; i < y.size(); ++i)
                y5[i] = y[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] +
                                    B6 * k6[i]);
            ode.eval(seg, t + h, y5, scratch, k7);
            double err = 0.0;
            for (size_t i = 0; i < y.size(); ++i) {
                Complex e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] +
                                 E6 * k6[i] + E7 * k7[i]);
                double sc = opts_.atol +
                            opts_.rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
                double q = std::abs(e) / sc;
                err += q * q;
            }
            err = std::sqrt(err / static_cast<double>(y.size()));
            double fac11 = std::pow(std::max(err, 1e-16), 0.2);
            double fac = fac11 / std::pow(facold, 0.08);
            fac = std::max(1.0 / 6.0, std::min(3.0, fac / 0.9));
            double hnew = h / fac;
            if (err <= 1.0) {
                t += h;
                y.swap(y5);
                k1.swap(k7);  // FSAL
                facold = std::max(err, 1e-4);
                if (opts_.renormalize_det) {
                    Mat2 F{y[0], y[1], y[2], y[3]};
                    Complex dt_ = F.det();
                    st.det_drift = std::max(st.det_drift, std::abs(dt_ - 1.0));
                    Complex s = std::sqrt(dt_);
                    y[0] /= s;
                    y[1] /= s;
                    y[2] /= s;
                    y[3] /= s;
                    // renormalization invalidates FSAL slightly; re-evaluate
                    ode.eval(seg, t, y, scratch, k1);
                }
                h = std::min(hnew, opts_.max_step_fraction);
            } else {
                h = hnew;
                if (h < 1e-14) throw StepUnderflow("adaptive step below minimum");
            }
        }
        ode.unpack(y, st, &J);
        st.z = seg.end();
    }
    if (flux_accum) *flux_accum = J;
}

// ------------------------------------------------------------- operations

Mat2 coefficient_matrix(const SurfaceData& data, Complex z, IntegrateOptions opts) {
    LiftIntegrator I(data, opts);
    LiftState st = I.initial_state(z);
    return I.coefficient(st);
}

LiftState integrate_lift(const SurfaceData& data, const PathSpec& path, const Mat2& F0,
                         IntegrateOptions opts) {
    LiftIntegrator I(data, opts);
    LiftState st = I.initial_state(path.start(), F0);
    I.integrate(st, path);
    return st;
}

Mat2 dual_lift(const Mat2& F, double tol) {
    if (!is_unimodular(F, tol)) throw NonUnimodular("dual_lift");
    return F.inverse();
}

GaussMapsAtPoint gauss_maps_from_lift(const LiftIntegrator& I, const LiftState& st) {
    Mat2 d = I.dF(st);
    GaussMapsAtPoint out{};
    double s = d.frobenius();
    if (std::abs(d.a11) < 1e-13 * s && std::abs(d.a21) < 1e-13 * s)
        throw IndeterminateQuotient("dF column vanishes");
    Complex g1 = -d.a12 / d.a11, g2 = -d.a22 / d.a21;
    Complex G1 = d.a11 / d.a21, G2 = d.a12 / d.a22;
    out.g = g1;
    out.G = G1;
    out.pair_mismatch = std::max(std::abs(g1 - g2), std::abs(G1 - G2));
    // quotient derivatives from dF' = (A' + A^2) F (or the right-sided form)
    Mat2 dd = I.ddF(st);
    out.g_prime = -(dd.a12 * d.a11 - d.a12 * dd.a11) / (d.a11 * d.a11);
    out.G_prime = (dd.a11 * d.a21 - d.a11 * dd.a21) / (d.a21 * d.a21);
    return out;
}

Mat2 monodromy(const SurfaceData& data, const ExtComplex& puncture, Complex basepoint,
               IntegrateOptions opts) {
    LiftIntegrator I(data, opts);
    PathSpec loop;
    if (puncture.is_inf()) {
        double R = 1.0;
        for (Complex s : I.singular_points()) R = std::max(R, std::abs(s));
        loop = PathSpec::loop_around_infinity(basepoint, 2.0 * R + 2.0);
    } else {
        Complex c = puncture.finite();
        double d = std::numeric_limits<double>::max();
        for (Complex s : I.singular_points())
            if (std::abs(s - c) > 1e-9) d = std::min(d, std::abs(s - c));
        if (!(d < std::numeric_limits<double>::max())) d = 2.0 * std::abs(basepoint - c);
        loop = PathSpec::loop(basepoint, c, 0.5 * d);
    }
    LiftState st = I.initial_state(basepoint);
    I.integrate(st, loop);
    return st.F;
}

MonodromyRep full_representation(const SurfaceData& data, Complex basepoint,
                                 IntegrateOptions opts, double relation_tol) {
    data.require_genus_zero();
    MonodromyRep rep;
    rep.basepoint = basepoint;
    std::vector<ExtComplex> finite;
    bool has_inf = false;
    for (const auto& p : data.punctures) {
        if (p.is_inf())
            has_inf = true;
        else
            finite.push_back(p);
    }
    std::sort(finite.begin(), finite.end(), [&](const ExtComplex& x, const ExtComplex& y) {
        return std::arg(x.finite() - basepoint) < std::arg(y.finite() - basepoint);
    });
    Mat2 prod = Mat2::identity();
    for (const auto& p : finite) {
        Mat2 M = monodromy(data, p, basepoint, opts);
        if (!is_unimodular(M, 1e-6)) throw NonUnimodular("monodromy generator");
        rep.generators.push_back({p, M});
        prod = prod * M;
    }
    if (has_inf) {
        Mat2 M = monodromy(data, ExtComplex::inf(), basepoint, opts);
        rep.generators.push_back({ExtComplex::inf(), M});
        prod = prod * M;
    }
    double err = std::min(dist(prod, Mat2::identity()),
                          dist(prod, Complex(-1.0) * Mat2::identity()));
    rep.relation_error = err;
    if (err > relation_tol)
        throw RelationViolated("ordered product of generators is not +-id");
    return rep;
}

}  // namespace cmc1
