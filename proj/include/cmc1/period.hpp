#pragma once

#include "cmc1/integrate.hpp"

namespace cmc1 {

enum class ReducibilityClass { irreducible, H1_reducible, H3_reducible };
const char* to_string(ReducibilityClass c);

enum class UnitarizabilityVerdict { unitarizable, not_unitarizable, borderline };
const char* to_string(UnitarizabilityVerdict v);

struct UnitarizabilityReport {
    double defect = 0;                     // >= 0; smallest singular value of the
                                           // stacked invariance system
    Mat2 H = Mat2::identity();             // invariant Hermitian form (trace > 0)
    bool definite = false;                 // H positive definite
    std::optional<Mat2> conjugator;        // P with P M_j P^{-1} in SU(2)
    UnitarizabilityVerdict verdict = UnitarizabilityVerdict::not_unitarizable;
    bool trace_filter_passed = true;       // traces real and in [-2, 2]
};

struct PeriodScanResult {
    std::string parameter;
    std::vector<double> values;
    std::vector<double> defects;
    struct Root {
        double value;
        double defect;
        bool definite;
    };
    std::vector<Root> roots;  // accepted: defect below threshold and H > 0
    std::vector<Root> rejected_minima;

    /// Two-column table (parameter, defect) plus a root list.
    std::string table() const;
};

struct UnitarizabilityOptions {
    double threshold = 1e-6;
    double borderline = 1e-4;
    double trace_tol = 1e-6;
    double max_condition = 1e6;
};

/// Decide whether the representation is conjugate into SU(2) via a joint
/// invariant Hermitian form.  Reducible representations go through the
/// simultaneous-diagonalization path first.
UnitarizabilityReport unitarizability(const MonodromyRep& rep,
                                      UnitarizabilityOptions opts = {});

/// irreducible / H1 (simultaneously diagonalizable) / H3 (all +-id).
ReducibilityClass reducibility(const MonodromyRep& rep, double tol = 1e-7);

/// Scan a one-parameter family for parameter values closing the period
/// problem: evaluate the unitarizability defect on a grid, bracket the local
/// minima, refine each by golden-section search, accept positive-definite
/// sub-threshold roots.
PeriodScanResult period_solve(const std::function<SurfaceData(double)>& family,
                              const std::string& parameter, double lo, double hi,
                              double step, Complex basepoint,
                              IntegrateOptions iopts = {},
                              UnitarizabilityOptions uopts = {});

/// The reducible one-parameter deformation g -> t g.
MeroFn reducible_deformation(const MeroFn& g, double t);
WeierstrassSpec reducible_deformation(const WeierstrassSpec& ws, double t);

}  // namespace cmc1
