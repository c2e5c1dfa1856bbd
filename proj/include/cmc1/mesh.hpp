#pragma once

#include "cmc1/period.hpp"

namespace cmc1 {

struct MeshGrid {
    enum class Kind { annulus, rect };
    Kind kind = Kind::annulus;
    // annulus: log-radial spacing between r0 and r1, full turn in theta,
    // seam duplicated so faces close up
    Complex center{};
    double r0 = 0.1, r1 = 1.0;
    int nr = 8, ntheta = 16;
    // rectangle
    double x0 = -1, x1 = 1, y0 = -1, y1 = 1;
    int nx = 8, ny = 8;

    static MeshGrid annulus(Complex center, double r0, double r1, int nr, int ntheta);
    static MeshGrid rect(double x0, double x1, double y0, double y1, int nx, int ny);
};

struct Mesh {
    struct Vertex {
        Complex z{};
        BallPoint pos;
        Mat2 F;             // lift at the vertex (after any unitarizing gauge)
        double ds2 = 0;     // conformal factor of the induced metric
        double dsigma2 = 0; // conformal factor of the pseudometric
        double K = 0;       // Gaussian curvature
        double qhat_abs = 0;
        bool valid = true;
    };
    std::vector<Vertex> vertices;
    std::vector<std::array<int, 4>> quads;
    bool periods_open = false;  // universal-cover chart only
    int clipped = 0;            // vertices dropped at the ideal boundary
};

struct SampleOptions {
    IntegrateOptions integrate;
    bool conjugate_to_unitary = true;  // gauge the lift so closed periods close
    double clip = 1.0 - 1e-6;
};

/// Integrate the lift over a spanning tree of the grid, map through
/// f = F F* (or the dual) into the Poincare ball, and attach metric data.
Mesh sample_surface(const SurfaceData& data, const MeshGrid& grid, bool dual = false,
                    SampleOptions opts = {});

struct MetricCheckReport {
    bool ok = true;
    double max_product_rel_err = 0;  // ds^2 * dsigma^2 vs 4 |Qhat|^2
    double max_K = -std::numeric_limits<double>::infinity();
    int checked = 0;
};

/// Pointwise Gauss-equation check ds^2 dsigma^2 = 4 |Qhat|^2 and K <= 0.
MetricCheckReport metric_checks(const Mesh& mesh, double rel_tol = 1e-7);

/// Wavefront OBJ plus a sidecar <path>.k with per-vertex curvature.
void export_obj(const Mesh& mesh, const std::string& path);

/// Hermitian point back from a ball point (inverse of hermitian_to_ball).
HermitianPoint ball_to_hermitian(const BallPoint& p);

}  // namespace cmc1
