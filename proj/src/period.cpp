#include "cmc1/period.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>

namespace cmc1 {

const char* to_string(ReducibilityClass c) {
    switch (c) {
        case ReducibilityClass::irreducible: return "irreducible";
        case ReducibilityClass::H1_reducible: return "H1_reducible";
        default: return "H3_reducible";
    }
}

const char* to_string(UnitarizabilityVerdict v) {
    switch (v) {
        case UnitarizabilityVerdict::unitarizable: return "unitarizable";
        case UnitarizabilityVerdict::not_unitarizable: return "not_unitarizable";
        default: return "borderline";
    }
}

namespace {

bool is_pm_identity(const Mat2& M, double tol) {
    return dist(M, Mat2::identity()) <= tol ||
           dist(M, Complex(-1.0) * Mat2::identity()) <= tol;
}

// Hermitian basis I, sx, sy, sz; H = h0 I + h1 sx + h2 sy + h3 sz has
// H12 = h1 - i h2.
Mat2 from_coords(const Eigen::Vector4d& h) {
    return {Complex(h(0) + h(3), 0.0), Complex(h(1), -h(2)),
            Complex(h(1), h(2)), Complex(h(0) - h(3), 0.0)};
}

Eigen::Vector4d to_coords(const Mat2& H) {
    Eigen::Vector4d h;
    h(0) = 0.5 * (H.a11 + H.a22).real();
    h(3) = 0.5 * (H.a11 - H.a22).real();
    h(1) = H.a12.real();
    h(2) = -H.a12.imag();
    return h;
}

}  // namespace

ReducibilityClass reducibility(const MonodromyRep& rep, double tol) {
    bool all_central = true;
    for (const auto& g : rep.generators) all_central = all_central && is_pm_identity(g.M, tol);
    if (all_central) return ReducibilityClass::H3_reducible;

    // pick the first non-central generator and try its eigenbasis
    const Mat2* M0 = nullptr;
    for (const auto& g : rep.generators)
        if (!is_pm_identity(g.M, tol)) {
            M0 = &g.M;
            break;
        }
    auto ev = eigenvalues(*M0);
    if (std::abs(ev[0] - ev[1]) < tol) return ReducibilityClass::irreducible;  // parabolic
    auto v1 = eigenvector(*M0, ev[0]);
    auto v2 = eigenvector(*M0, ev[1]);
    if (!v1 || !v2) return ReducibilityClass::irreducible;
    Mat2 V{(*v1)[0], (*v2)[0], (*v1)[1], (*v2)[1]};
    if (std::abs(V.det()) < 1e-10) return ReducibilityClass::irreducible;
    Mat2 Vi = V.inverse();
    for (const auto& g : rep.generators) {
        Mat2 D = Vi * g.M * V;
        double off = std::abs(D.a12) + std::abs(D.a21);
        if (off > tol * std::max(1.0, g.M.frobenius()))
            return ReducibilityClass::irreducible;
    }
    return ReducibilityClass::H1_reducible;
}

UnitarizabilityReport unitarizability(const MonodromyRep& rep, UnitarizabilityOptions opts) {
    UnitarizabilityReport out;
    // fast necessary filter: real traces in [-2, 2]
    for (const auto& g : rep.generators) {
        Complex tr = g.M.trace();
        if (std::abs(tr.imag()) > opts.trace_tol || std::abs(tr.real()) > 2.0 + opts.trace_tol)
            out.trace_filter_passed = false;
    }

    ReducibilityClass cls = reducibility(rep);
    if (cls == ReducibilityClass::H3_reducible) {
        out.defect = 0;
        for (const auto& g : rep.generators) out.defect = std::max(out.defect, su2_defect(g.M));
        out.H = Mat2::identity();
        out.definite = true;
        out.conjugator = Mat2::identity();
        out.verdict = out.defect <= opts.threshold ? UnitarizabilityVerdict::unitarizable
                                                   : UnitarizabilityVerdict::not_unitarizable;
        return out;
    }
    if (cls == ReducibilityClass::H1_reducible) {
        // common eigenbasis V; unitarizable iff every eigenvalue is unimodular,
        // with invariant form H = (V^{-1})* V^{-1}
        const Mat2* M0 = nullptr;
        for (const auto& g : rep.generators)
            if (!is_pm_identity(g.M, 1e-7)) {
                M0 = &g.M;
                break;
            }
        auto ev = eigenvalues(*M0);
        auto v1 = eigenvector(*M0, ev[0]);
        auto v2 = eigenvector(*M0, ev[1]);
        Mat2 V{(*v1)[0], (*v2)[0], (*v1)[1], (*v2)[1]};
        V = (1.0 / std::sqrt(V.det())) * V;
        Mat2 Vi = V.inverse();
        double worst = 0;
        for (const auto& g : rep.generators) {
            auto lam = eigenvalues(g.M);
            worst = std::max(worst, std::abs(std::abs(lam[0]) - 1.0));
            worst = std::max(worst, std::abs(std::abs(lam[1]) - 1.0));
        }
        out.defect = worst;
        out.H = Vi.adjoint() * Vi;
        out.definite = out.H.det().real() > 0 && out.H.trace().real() > 0;
        if (out.defect <= opts.threshold && out.definite && out.trace_filter_passed) {
            out.verdict = UnitarizabilityVerdict::unitarizable;
            out.conjugator = hermitian_sqrt(out.H);
        } else if (out.defect <= opts.borderline && out.definite) {
            out.verdict = UnitarizabilityVerdict::borderline;
        } else {
            out.verdict = UnitarizabilityVerdict::not_unitarizable;
        }
        return out;
    }

    // irreducible: solve the joint linear system M* H M - H = 0 over the
    // 4-dimensional real space of Hermitian matrices
    Eigen::MatrixXd S(4 * rep.generators.size(), 4);
    for (size_t r = 0; r < rep.generators.size(); ++r) {
        const Mat2& M = rep.generators[r].M;
        for (int c = 0; c < 4; ++c) {
            Eigen::Vector4d e = Eigen::Vector4d::Zero();
            e(c) = 1.0;
            Mat2 B = from_coords(e);
            Mat2 R = M.adjoint() * B * M - B;
            S.block<4, 1>(4 * static_cast<int>(r), c) = to_coords(R);
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(S, Eigen::ComputeFullV);
    out.defect = svd.singularValues()(3);
    Eigen::Vector4d h = svd.matrixV().col(3);
    Mat2 H = from_coords(h);
    if (H.trace().real() < 0) H = Complex(-1.0) * H;
    out.H = H;
    double det = H.det().real(), tr = H.trace().real();
    out.definite = det > 0 && tr > 0;
    double cond = 1e300;
    if (out.definite) {
        double disc = std::sqrt(std::max(tr * tr - 4 * det, 0.0));
        double lmin = 0.5 * (tr - disc), lmax = 0.5 * (tr + disc);
        cond = lmax / std::max(lmin, 1e-300);
    }
    if (out.trace_filter_passed && out.definite && out.defect <= opts.threshold &&
        cond <= opts.max_condition) {
        out.verdict = UnitarizabilityVerdict::unitarizable;
        out.conjugator = hermitian_sqrt(H);
    } else if (out.definite && out.defect <= opts.borderline && out.defect > opts.threshold) {
        out.verdict = UnitarizabilityVerdict::borderline;
    } else {
        out.verdict = UnitarizabilityVerdict::not_unitarizable;
    }
    return out;
}

std::string PeriodScanResult::table() const {
    std::ostringstream os;
    os.precision(12);
    os << "# " << parameter << " defect\n";
    for (size_t i = 0; i < values.size(); ++i)
        os << values[i] << " " << defects[i] << "\n";
    os << "# roots (defect < threshold, H positive definite):\n";
    for (const auto& r : roots) os << "# root " << r.value << " defect " << r.defect << "\n";
    return os.str();
}

PeriodScanResult period_solve(const std::function<SurfaceData(double)>& family,
                              const std::string& parameter, double lo, double hi,
                              double step, Complex basepoint, IntegrateOptions iopts,
                              UnitarizabilityOptions uopts) {
    PeriodScanResult res;
    res.parameter = parameter;
    auto defect_of = [&](double v) {
        SurfaceData d = family(v);
        MonodromyRep rep = full_representation(d, basepoint, iopts);
        return unitarizability(rep, uopts);
    };
    for (double v = lo; v <= hi + 1e-12; v += step) {
        res.values.push_back(v);
        res.defects.push_back(defect_of(v).defect);
    }
    // bracket interior local minima of the (nonnegative) defect curve
    auto golden = [&](double a, double b) {
        const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
        double c = b - gr * (b - a), d = a + gr * (b - a);
        double fc = defect_of(c).defect, fd = defect_of(d).defect;
        while (b - a > 1e-10 * std::max(1.0, std::abs(b))) {
            if (fc < fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - gr * (b - a);
                fc = defect_of(c).defect;
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + gr * (b - a);
                fd = defect_of(d).defect;
            }
        }
        return 0.5 * (a + b);
    };
    for (size_t i = 1; i + 1 < res.values.size(); ++i) {
        if (res.defects[i] < res.defects[i - 1] && res.defects[i] < res.defects[i + 1]) {
            double r = golden(res.values[i - 1], res.values[i + 1]);
            UnitarizabilityReport rep = defect_of(r);
            PeriodScanResult::Root root{r, rep.defect, rep.definite};
            if (rep.defect < uopts.threshold && rep.definite)
                res.roots.push_back(root);
            else
                res.rejected_minima.push_back(root);
        }
    }
    return res;
}

MeroFn reducible_deformation(const MeroFn& g, double t) {
    if (t <= 0) throw ParamOutOfRange("deformation parameter t must be positive");
    if (const auto* r = std::get_if<RationalFn>(&g)) return Complex(t) * *r;
    return std::get<PowerProduct>(g).scaled(Complex(t));
}

WeierstrassSpec reducible_deformation(const WeierstrassSpec& ws, double t) {
    if (t <= 0) throw ParamOutOfRange("deformation parameter t must be positive");
    WeierstrassSpec out = ws;
    if (out.g) *out.g = reducible_deformation(*ws.g, t);
    // dg scales with g; omega = Q/dg scales inversely so Q is unchanged
    if (const auto* r = std::get_if<RationalFn>(&ws.dg.coeff))
        out.dg.coeff = Complex(t) * *r;
    else
        out.dg.coeff = std::get<PowerProduct>(ws.dg.coeff).scaled(Complex(t));
    if (const auto* r = std::get_if<RationalFn>(&ws.omega.coeff))
        out.omega.coeff = Complex(1.0 / t) * *r;
    else
        out.omega.coeff = std::get<PowerProduct>(ws.omega.coeff).scaled(Complex(1.0 / t));
    return out;
}

}  // namespace cmc1
