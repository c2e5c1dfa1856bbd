#pragma once

#include <functional>

#include "cmc1/surface.hpp"

namespace cmc1 {

// ---------------------------------------------------------------- paths

struct PathSegment {
    // line from a to b, or arc around center with radius from angle th0 to th1
    // (th1 > th0 counterclockwise; a full turn spans 2 pi)
    bool arc = false;
    Complex a{}, b{};
    Complex center{};
    double radius = 0, th0 = 0, th1 = 0;

    Complex point(double t) const;     // t in [0, 1]
    Complex velocity(double t) const;  // d point / dt
    Complex start() const { return point(0.0); }
    Complex end() const { return point(1.0); }
    double length() const;
    double distance_to(Complex p) const;
};

struct PathSpec {
    std::vector<PathSegment> segments;
    double clearance = 5e-3;

    Complex start() const { return segments.front().start(); }
    Complex end() const { return segments.back().end(); }
    double length() const;
    double distance_to(Complex p) const;

    static PathSpec line(Complex a, Complex b);
    PathSpec& then_line(Complex b);
    PathSpec& then_arc(Complex center, double th0, double th1);
    /// Keyhole loop: base -> circle around center (radius), one full
    /// counterclockwise turn, back to base.
    static PathSpec loop(Complex base, Complex center, double radius);
    /// Clockwise circle of given radius through base/|base|*R, used as the
    /// loop around infinity.
    static PathSpec loop_around_infinity(Complex base, double R);
};

// ------------------------------------------------------------- lift state

enum class LiftForm {
    gauss,  // dF = A(z) F with A = [[G,-G^2],[1,-G]] Q/dG   (single-valued)
    weier,  // dF = F A(z) with A = [[g,-g^2],[1,-g]] omega  (g multivalued)
};

struct LiftState {
    Complex z{};
    Mat2 F = Mat2::identity();
    std::vector<Complex> branch_logs;  // continuous log(z - p_j), one per branch point
    Complex g_value{};                 // current value of g (weier form)
    bool track_g = false;
    double det_drift = 0;              // max |det F - 1| seen before renormalization
};

struct IntegrateOptions {
    double rtol = 1e-11;
    double atol = 1e-11;
    double clearance = 5e-3;
    bool renormalize_det = true;
    std::optional<LiftForm> form;      // default: gauss if available, else weier
    std::optional<Complex> initial_g;  // for weier data without explicit g
    double max_step_fraction = 0.25;   // of segment parameter
};

class LiftIntegrator {
public:
    LiftIntegrator(const SurfaceData& data, IntegrateOptions opts = {});

    LiftForm form() const { return form_; }
    const std::vector<Complex>& branch_points() const { return branch_points_; }
    /// Points paths must avoid: punctures plus poles of the coefficient.
    const std::vector<Complex>& singular_points() const { return singular_; }

    LiftState initial_state(Complex z0, const Mat2& F0 = Mat2::identity()) const;
    /// Continue the state along the path (resumable; path must start at state.z).
    void integrate(LiftState& st, const PathSpec& path) const;
    /// Same, also accumulating J = (1/2 pi i) int dF F^{-1} along the way.
    void integrate(LiftState& st, const PathSpec& path, Mat2* flux_accum) const;

    /// Coefficient matrix A(z) at the state (traceless).
    Mat2 coefficient(const LiftState& st) const;
    /// Derivative of the lift: A F (gauss) or F A (weier).
    Mat2 dF(const LiftState& st) const;
    /// z-derivative of the coefficient at the state.
    Mat2 coefficient_derivative(const LiftState& st) const;
    /// Second derivative of the lift, (A' + A^2) F or F (A^2 + A').
    Mat2 ddF(const LiftState& st) const;

private:
    friend struct LiftOde;
    LiftForm form_;
    IntegrateOptions opts_;
    // gauss form: precomputed rational entries (e22 = -e11)
    RationalFn e11_, e12_, e21_;
    RationalFn d11_, d12_, d21_;  // their derivatives
    // weier form
    std::optional<MeroFn> g_;          // explicit g when available
    MeroFn omega_coeff_ = RationalFn();
    MeroFn dg_coeff_ = RationalFn();
    RationalFn omega_logderiv_;
    std::vector<Complex> branch_points_;
    std::vector<int> omega_log_index_, g_log_index_, dg_log_index_;
    bool track_g_ = false;
    std::vector<Complex> singular_;

    Complex eval_mero(const MeroFn& f, const std::vector<int>& idx,
                      const std::vector<Complex>& logs, Complex z) const;
};

// ------------------------------------------------------------- operations

struct MonodromyRep {
    Complex basepoint{};
    struct Generator {
        ExtComplex puncture;
        Mat2 M;
    };
    std::vector<Generator> generators;
    double relation_error = 0;  // distance of the ordered product from +-id
};

/// Coefficient matrix of the lift equation at z (traceless).
Mat2 coefficient_matrix(const SurfaceData& data, Complex z,
                        IntegrateOptions opts = {});

/// Integrate the lift along a path from F0.
LiftState integrate_lift(const SurfaceData& data, const PathSpec& path, const Mat2& F0,
                         IntegrateOptions opts = {});

/// Duality F -> F^{-1}.
Mat2 dual_lift(const Mat2& F, double tol = -1.0);

struct GaussMapsAtPoint {
    Complex g, G;
    Complex g_prime, G_prime;
    double pair_mismatch;  // disagreement between the two quotient forms
};
/// Recover g and G at the state from exact lift derivatives (3.7)/(3.8).
GaussMapsAtPoint gauss_maps_from_lift(const LiftIntegrator& I, const LiftState& st);

/// Monodromy around one puncture: keyhole loop from the basepoint, F0 = id.
Mat2 monodromy(const SurfaceData& data, const ExtComplex& puncture, Complex basepoint,
               IntegrateOptions opts = {});

/// Generators for all punctures from one basepoint, ordered by argument, with
/// the product relation checked to +-id.
MonodromyRep full_representation(const SurfaceData& data, Complex basepoint,
                                 IntegrateOptions opts = {}, double relation_tol = 1e-6);

}  // namespace cmc1
