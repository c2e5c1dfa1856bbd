#include "cmc1/mesh.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace cmc1 {

MeshGrid MeshGrid::annulus(Complex center, double r0, double r1, int nr, int ntheta) {
    MeshGrid g;
    g.kind = Kind::annulus;
    g.center = center;
    g.r0 = r0;
    g.r1 = r1;
    g.nr = nr;
    g.ntheta = ntheta;
    return g;
}

MeshGrid MeshGrid::rect(double x0, double x1, double y0, double y1, int nx, int ny) {
    MeshGrid g;
    g.kind = Kind::rect;
    g.x0 = x0;
    g.x1 = x1;
    g.y0 = y0;
    g.y1 = y1;
    g.nx = nx;
    g.ny = ny;
    return g;
}

HermitianPoint ball_to_hermitian(const BallPoint& p) {
    double n2 = p.x1 * p.x1 + p.x2 * p.x2 + p.x3 * p.x3;
    double f = 1.0 - n2;
    double x0 = (1.0 + n2) / f;
    double x1 = 2.0 * p.x1 / f, x2 = 2.0 * p.x2 / f, x3 = 2.0 * p.x3 / f;
    return {Mat2{Complex(x0 + x3, 0), Complex(x1, x2), Complex(x1, -x2), Complex(x0 - x3, 0)}};
}

Mesh sample_surface(const SurfaceData& data, const MeshGrid& grid, bool dual,
                    SampleOptions opts) {
    data.require_genus_zero();
    bool use_dual = dual || data.dual;
    LiftIntegrator I(data, opts.integrate);

    // grid vertices: rows x cols with column-major adjacency used for the tree
    int rows, cols;
    std::vector<Complex> zs;
    if (grid.kind == MeshGrid::Kind::annulus) {
        rows = grid.nr;
        cols = grid.ntheta + 1;  // duplicated seam
        double s0 = std::log(grid.r0), s1 = std::log(grid.r1);
        for (int i = 0; i < rows; ++i) {
            double r = std::exp(s0 + (s1 - s0) * (rows == 1 ? 0.0 : double(i) / (rows - 1)));
            for (int j = 0; j < cols; ++j) {
                double th = 2.0 * kPi * j / grid.ntheta;
                zs.push_back(grid.center + r * Complex(std::cos(th), std::sin(th)));
            }
        }
    } else {
        rows = grid.ny;
        cols = grid.nx;
        for (int i = 0; i < rows; ++i) {
            double y = grid.y0 + (grid.y1 - grid.y0) * (rows == 1 ? 0.0 : double(i) / (rows - 1));
            for (int j = 0; j < cols; ++j) {
                double x = grid.x0 + (grid.x1 - grid.x0) * (cols == 1 ? 0.0 : double(j) / (cols - 1));
                zs.push_back(Complex(x, y));
            }
        }
    }

    Mesh mesh;
    Complex base = zs[0];

    // unitarizing gauge for non-simply-connected charts
    Mat2 P_inv = Mat2::identity();
    if (grid.kind == MeshGrid::Kind::annulus && !data.punctures.empty()) {
        try {
            MonodromyRep rep = full_representation(data, base, opts.integrate);
            UnitarizabilityReport ur = unitarizability(rep);
            if (ur.verdict == UnitarizabilityVerdict::unitarizable && opts.conjugate_to_unitary &&
                ur.conjugator) {
                P_inv = ur.conjugator->inverse();
            } else if (ur.verdict != UnitarizabilityVerdict::unitarizable) {
                mesh.periods_open = true;  // universal-cover chart only
            }
        } catch (const Error&) {
            mesh.periods_open = true;
        }
    }

    // spanning tree: along the first row, then radially/vertically per column
    std::vector<LiftState> states(zs.size());
    LiftState st = I.initial_state(base);
    states[0] = st;
    auto edge_path = [&](int i0, int j0, int i1, int j1) {
        Complex a = zs[i0 * cols + j0], b2 = zs[i1 * cols + j1];
        if (grid.kind == MeshGrid::Kind::annulus && i0 == i1) {
            double th0 = 2.0 * kPi * j0 / grid.ntheta;
            double th1 = 2.0 * kPi * j1 / grid.ntheta;
            PathSpec p;
            PathSegment s;
            s.arc = true;
            s.center = grid.center;
            s.radius = std::abs(a - grid.center);
            s.th0 = th0;
            s.th1 = th1;
            p.segments.push_back(s);
            return p;
        }
        return PathSpec::line(a, b2);
    };
    for (int j = 1; j < cols; ++j) {
        LiftState next = states[j - 1];
        I.integrate(next, edge_path(0, j - 1, 0, j));
        states[j] = next;
    }
    for (int j = 0; j < cols; ++j)
        for (int i = 1; i < rows; ++i) {
            LiftState next = states[(i - 1) * cols + j];
            I.integrate(next, edge_path(i - 1, j, i, j));
            states[i * cols + j] = next;
        }

    // map through the surface (or its dual) and attach metric data
    Differential Q = data.hopf();
    mesh.vertices.resize(zs.size());
    for (size_t k = 0; k < zs.size(); ++k) {
        const LiftState& s = states[k];
        Mat2 Fg = s.F * P_inv;
        Mat2 Fuse = use_dual ? dual_lift(Fg) : Fg;
        Mesh::Vertex v;
        v.z = s.z;
        v.F = Fuse;
        HermitianPoint X = to_hyperbolic(Fuse, 1e-6);
        v.pos = hermitian_to_ball(X);
        double qa = 0;
        if (!Q.zero()) qa = mero_abs_eval(Q.coeff, s.z);
        v.qhat_abs = qa;
        GaussMapsAtPoint gm = gauss_maps_from_lift(I, s);
        Complex m = use_dual ? gm.G : gm.g;
        Complex mp = use_dual ? gm.G_prime : gm.g_prime;
        if (I.form() == LiftForm::weier && !use_dual) {
            // exact values straight from the data
            m = s.g_value;
            if (const auto* r = std::get_if<RationalFn>(&data.weier->dg.coeff))
                mp = r->eval(s.z);
            else
                mp = gm.g_prime;
        }
        double u = std::norm(m);
        v.dsigma2 = 4.0 * std::norm(mp) / ((1.0 + u) * (1.0 + u));
        if (std::abs(mp) > 0)
            v.ds2 = (1.0 + u) * (1.0 + u) * (qa * qa) / std::norm(mp);
        else
            v.ds2 = std::numeric_limits<double>::infinity();
        if (Q.zero()) {
            // totally umbilic: flat induced metric through |omega|
            v.dsigma2 = 0;
            if (data.weier) v.ds2 = std::pow(mero_abs_eval(data.weier->omega.coeff, s.z), 2);
        }
        v.K = v.ds2 > 0 ? -v.dsigma2 / v.ds2 : 0.0;
        v.valid = v.pos.norm() <= opts.clip;
        if (!v.valid) mesh.clipped++;
        mesh.vertices[k] = v;
    }
    for (int i = 0; i + 1 < rows; ++i)
        for (int j = 0; j + 1 < cols; ++j) {
            std::array<int, 4> q{i * cols + j, i * cols + j + 1, (i + 1) * cols + j + 1,
                                 (i + 1) * cols + j};
            bool ok = true;
            for (int idx : q) ok = ok && mesh.vertices[idx].valid;
            if (ok) mesh.quads.push_back(q);
        }
    return mesh;
}

MetricCheckReport metric_checks(const Mesh& mesh, double rel_tol) {
    MetricCheckReport rep;
    for (const auto& v : mesh.vertices) {
        if (!v.valid || !std::isfinite(v.ds2)) continue;
        rep.checked++;
        double want = 4.0 * v.qhat_abs * v.qhat_abs;
        double got = v.ds2 * v.dsigma2;
        double err = std::abs(got - want) / std::max({want, 1e-300});
        if (want == 0) err = std::abs(got);
        rep.max_product_rel_err = std::max(rep.max_product_rel_err, err);
        rep.max_K = std::max(rep.max_K, v.K);
        if (err > rel_tol || v.K > 1e-9) rep.ok = false;
    }
    return rep;
}

void export_obj(const Mesh& mesh, const std::string& path) {
    // vertices are renumbered compactly over the valid ones
    std::vector<int> index(mesh.vertices.size(), -1);
    std::string body;
    char line[160];
    int next = 1;
    for (size_t i = 0; i < mesh.vertices.size(); ++i) {
        const auto& v = mesh.vertices[i];
        if (!v.valid) continue;
        index[i] = next++;
        std::snprintf(line, sizeof line, "v %.17g %.17g %.17g\n", v.pos.x1, v.pos.x2, v.pos.x3);
        body += line;
    }
    for (const auto& q : mesh.quads) {
        std::snprintf(line, sizeof line, "f %d %d %d %d\n", index[q[0]], index[q[1]],
                      index[q[2]], index[q[3]]);
        body += line;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("export_obj: cannot open " + path);
    out << body;
    out.close();

    std::string kbody;
    for (size_t i = 0; i < mesh.vertices.size(); ++i) {
        const auto& v = mesh.vertices[i];
        if (!v.valid) continue;
        std::snprintf(line, sizeof line, "%.17g %.17g %.17g\n", v.z.real(), v.z.imag(), v.K);
        kbody += line;
    }
    std::ofstream outk(path + ".k", std::ios::binary);
    outk << kbody;
}

}  // namespace cmc1
