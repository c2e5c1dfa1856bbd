#pragma once

#include "cmc1/integrate.hpp"

namespace cmc1 {

struct EndRecord {
    ExtComplex point;
    int d = 0;                  // ord_p Q
    double mu = 0;              // conical order of dsigma^2 (branching of g)
    double mu_sharp = 0;        // branching of G; infinity sentinel at irregular ends
    bool regular = true;
    bool embedded = false;      // mu# - d == 2 criterion
    double c() const { return -0.5 * mu * (mu + 2.0); }
    double c_sharp() const { return -0.5 * mu_sharp * (mu_sharp + 2.0); }
};

constexpr double kInfiniteOrder = std::numeric_limits<double>::infinity();

struct CurvatureReport {
    double ta = 0;                 // total absolute curvature, from (7.7)
    double ta_gauss_bonnet = 0;    // cross-check via chi + sum mu + sum xi
    double ta_dual = 0;            // 4 pi deg G, or infinity sentinel
    std::optional<double> ta_numeric;  // spherical-area quadrature when runnable
    std::vector<EndRecord> ends;
    std::vector<std::pair<ExtComplex, int>> umbilics;
    int genus = 0;
    double over_4pi(double v) const { return v / (4.0 * kPi); }
    bool near_4pi_multiple(double v, double tol = 1e-6) const {
        double m = v / (4.0 * kPi);
        return std::abs(m - std::round(m)) <= tol;
    }
};

struct FluxMatrix {
    ExtComplex end;
    Mat2 F;
};

struct FluxBalance {
    std::vector<FluxMatrix> fluxes;
    Mat2 sum;
    double residual = 0;
    bool single_end_impossible = false;  // Corollary 7.2 predicates
    std::string note;
};

struct InequalityReport {
    bool cohn_vossen_strict = false;       // TA/2pi > 2 genus - 2 + n
    bool osserman = false;                 // TA#/2pi >= 2(genus + n - 1)
    bool osserman_equality = false;
    bool all_ends_embedded = false;
    bool odd_end_bound = true;             // TA >= 4 pi m for n = 2m+1, genus 0
    bool per_end_relations = true;         // (7.8)/(7.10)/(7.11)
    std::string detail;
};

// --------------------------------------------------------------- orders

/// Per-end (mu, mu#, d); throws InconsistentOrders when the (7.8)-(7.12)
/// relations fail.
std::vector<EndRecord> branch_orders(const SurfaceData& data);

/// TA(f) from (7.7), cross-checked against the Gauss-Bonnet form.
double total_curvature(const SurfaceData& data);

/// TA(f#) = 4 pi deg G; infinity sentinel when G is not rational.
double dual_total_curvature(const SurfaceData& data);

CurvatureReport curvature_report(const SurfaceData& data, bool numeric = false);

// ------------------------------------------------------------ quadrature

/// Polar annulus around a finite center or around infinity (w = 1/z chart).
/// r0 == 0 integrates all the way in, with geometric rings and tail
/// extrapolation.  Holes are disks excluded from this annulus (they are
/// covered by their own annuli).
struct AnnulusSpec {
    ExtComplex center;
    double r0 = 0, r1 = 1;
    std::vector<std::pair<Complex, double>> holes;
};

struct QuadratureOptions {
    double rel_tol = 2e-3;
    int max_theta = 4096;
    int max_rings_per_efold = 64;
    double span_efolds = 36.0;
};

/// Spherical-area density 4|h'|^2/(1+|h|^2)^2 of a meromorphic map,
/// evaluated through |h| and |h'| only (single-valued for power products).
double spherical_density(const MeroFn& h, const MeroFn& dh, Complex z);

/// Adaptive 2-D quadrature of the spherical-area density over the given
/// annuli.  The canonical sphere cover comes from sphere_cover().
double numeric_spherical_area(const MeroFn& h, const std::vector<AnnulusSpec>& annuli,
                              QuadratureOptions opts = {});

/// Cover of the whole sphere: patches around every zero, pole, branch and
/// critical point of h, one main annulus, and the cap around infinity.
std::vector<AnnulusSpec> sphere_cover(const MeroFn& h);

// ----------------------------------------------------------------- flux

/// Flux at one end by exact residue extraction of the rational (3.10)
/// coefficient (GaussSpec).
FluxMatrix flux(const SurfaceData& data, const ExtComplex& end);

/// Flux by numeric contour quadrature of the same coefficient (test oracle),
/// radius of the circle as in the monodromy loop.
FluxMatrix flux_contour(const SurfaceData& data, const ExtComplex& end, int n_nodes = 2048);

/// Flux at a regular end of Weierstrass-only data via the lift (common
/// basepoint keyhole loop).
FluxMatrix flux_via_lift(const SurfaceData& data, const ExtComplex& end, Complex basepoint,
                         IntegrateOptions opts = {});

FluxBalance flux_balance(const SurfaceData& data);

// ----------------------------------------------------------- inequalities

InequalityReport inequality_report(const CurvatureReport& rep);

}  // namespace cmc1
