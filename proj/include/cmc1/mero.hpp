#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "cmc1/algebra.hpp"

namespace cmc1 {

// ---------------------------------------------------------------------------
// Polynomials over C, coefficients ascending by degree.  The zero polynomial
// is the empty list.

class Poly {
public:
    Poly() = default;
    Poly(std::initializer_list<Complex> cs) : c_(cs) { strip(); }
    explicit Poly(std::vector<Complex> cs) : c_(std::move(cs)) { strip(); }
    static Poly constant(Complex v) { return Poly({v}); }
    static Poly x() { return Poly({Complex(0.0), Complex(1.0)}); }
    static Poly from_roots(Complex lead, const std::vector<Complex>& roots);

    bool zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for 0
    Complex lead() const { return c_.empty() ? Complex{} : c_.back(); }
    const std::vector<Complex>& coeffs() const { return c_; }
    Complex coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : Complex{};
    }
    double scale() const;  // max |coeff|

    Complex eval(Complex z) const;
    Poly derivative() const;
    /// Taylor coefficients about z0 (all of them; degree+1 values).
    std::vector<Complex> taylor(Complex z0) const;

    /// Multiplicity of z0 as a root, counted with tolerance relative to the
    /// coefficient scale.
    int root_multiplicity(Complex z0, double tol = 1e-8) const;
    /// Deflate by (z - z0) once (assumes z0 is a root; remainder discarded).
    Poly deflate(Complex z0) const;
    /// One Newton step refinement loop for a root near z0.
    Complex refine_root(Complex z0, int iters = 8) const;
    /// All roots (companion-matrix eigenvalues, Newton-polished).
    std::vector<Complex> roots() const;
    /// Scale of |p| near z: sum |c_i| |z|^i.
    double eval_scale(Complex z) const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Complex s, const Poly& a);
    /// Quotient-remainder division.
    static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);

private:
    void strip();
    std::vector<Complex> c_;
};

/// Roots of p grouped into clusters of multiplicity m, each refined by Newton
/// on the (m-1)-th derivative (accurate even for multiple roots).  Clusters
/// that fail the derivative-vanishing validation are split back into simple
/// roots.
std::vector<std::pair<Complex, int>> cluster_roots(const Poly& p, double group_tol = 1e-2);

// ---------------------------------------------------------------------------

/// Quotient of polynomials with common factors cancelled (roots matched
/// within tolerance) and monic denominator.
class RationalFn {
public:
    RationalFn() : num_(), den_(Poly::constant(1.0)) {}
    RationalFn(Poly num, Poly den);
    static RationalFn constant(Complex v) { return RationalFn(Poly::constant(v), Poly::constant(1.0)); }
    static RationalFn x() { return RationalFn(Poly::x(), Poly::constant(1.0)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool zero() const { return num_.zero(); }
    bool constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
    /// deg num - deg den (behavior as z -> inf); INT_MIN-ish for zero.
    int asymptotic_degree() const;
    /// Degree as a map CP1 -> CP1.
    int map_degree() const { return std::max(num_.degree(), den_.degree()); }

    Complex eval(Complex z) const { return num_.eval(z) / den_.eval(z); }
    RationalFn derivative() const;
    /// Logarithmic derivative num'/num - den'/den.
    RationalFn log_derivative() const;

    friend RationalFn operator+(const RationalFn& a, const RationalFn& b);
    friend RationalFn operator-(const RationalFn& a, const RationalFn& b);
    friend RationalFn operator*(const RationalFn& a, const RationalFn& b);
    friend RationalFn operator/(const RationalFn& a, const RationalFn& b);
    friend RationalFn operator*(Complex s, const RationalFn& a);

private:
    Poly num_, den_;
};

/// Moebius change of the argument: h -> a * h (matrix action on the value).
RationalFn mobius_apply(const Mat2& a, const RationalFn& h);

// ---------------------------------------------------------------------------

/// t * prod (z - p_j)^{alpha_j} * tail(z), with t > 0, the p_j mutually
/// distinct, every alpha_j a non-integer real, and tail free of zeros and
/// poles at the p_j.  Integer exponents are absorbed into the tail on
/// normalization.
class PowerProduct {
public:
    struct Factor {
        Complex point;
        double alpha;
    };

    PowerProduct() : t_(1.0), tail_(RationalFn::constant(1.0)) {}
    PowerProduct(double t, std::vector<Factor> factors, RationalFn tail);
    static PowerProduct from_rational(const RationalFn& r) { return PowerProduct(1.0, {}, r); }

    double t() const { return t_; }
    const std::vector<Factor>& factors() const { return factors_; }
    const RationalFn& tail() const { return tail_; }
    /// Exponent of the factor at p (0 when p is not a branch point).
    double exponent_at(Complex p, double tol = 1e-9) const;

    /// |value| (single-valued even though the function is multivalued).
    double abs_eval(Complex z) const;
    /// Principal-branch value.
    Complex eval_principal(Complex z) const;
    /// Value with caller-supplied continuous logs log(z - p_j), one per factor
    /// in order.
    Complex eval_with_logs(const std::vector<Complex>& logs, Complex z) const;

    /// Sum alpha_j/(z-p_j) + tail'/tail, a rational function.
    RationalFn log_derivative() const;
    PowerProduct derivative() const;
    PowerProduct scaled(Complex s) const;  // s * this (|s| into t, phase into tail)

    /// Real local exponent at a finite point (alpha_j + ord of tail) or at
    /// infinity via the chart rule for functions.
    double local_exponent(const ExtComplex& p) const;
    /// Sum of factor exponents plus tail asymptotic degree.
    double asymptotic_degree() const;

private:
    void normalize();
    double t_;
    std::vector<Factor> factors_;
    RationalFn tail_;
};

using MeroFn = std::variant<RationalFn, PowerProduct>;

// ---------------------------------------------------------------------------

/// Weighted differential: weight 1 for 1-forms, 2 for 2-differentials.
struct Differential {
    int weight = 1;
    MeroFn coeff = RationalFn();

    bool zero() const;
    const RationalFn* rational() const { return std::get_if<RationalFn>(&coeff); }
    const PowerProduct* power_product() const { return std::get_if<PowerProduct>(&coeff); }
};

struct LaurentSeries {
    Complex point;
    int k0 = 0;                    // starting order, leading coefficient nonzero
    std::vector<Complex> coeffs;   // coeffs[i] multiplies (z-p)^(k0+i)

    Complex coeff_of(int k) const {
        int i = k - k0;
        return (i >= 0 && i < static_cast<int>(coeffs.size())) ? coeffs[i] : Complex{};
    }
};

// ---------------------------------------------------------------------------
// Operations

/// Vanishing/pole order at p (finite or infinity).  For differentials the
/// chart at infinity shifts the order by -2*weight.  PowerProduct inputs may
/// return a non-integer real.
double order_at(const Differential& d, const ExtComplex& p);
double order_at(const RationalFn& f, const ExtComplex& p);

/// Residue (coefficient of (z-p)^{-1}) of a weight-1 differential at a finite
/// point.  Throws NonMeromorphicPoint at a fractional branch point.
Complex residue_at(const Differential& omega, Complex p);
Complex residue_at(const RationalFn& f, Complex p);

/// First `count` Laurent coefficients of a rational function at p.
LaurentSeries laurent_expand(const RationalFn& f, Complex p, int count);

/// Schwarzian derivative S(h) = [(h''/h')' - (h''/h')^2/2] dz^2.
Differential schwarzian(const RationalFn& h);
Differential schwarzian(const PowerProduct& h);
Differential schwarzian(const MeroFn& h);
/// Same, but from the derivative dh = h' dz (enough to determine S(h)).
Differential schwarzian_from_derivative(const Differential& dh);

/// Q = (S(g) - S(G))/2 from the two Gauss maps (or their derivatives).
Differential hopf_from_gauss_maps(const MeroFn& g, const MeroFn& G);
Differential hopf_from_derivatives(const Differential& dg, const Differential& dG);

struct FrobeniusResult {
    double root_large = 0, root_small = 0;
    bool resonant = false;               // roots differ by a nonnegative integer
    Complex log_coefficient{};           // obstruction, meaningful when resonant
};

/// Indicial analysis of X'' - (log omega_hat)' X' + sign * Qhat X = 0 at a
/// regular singular point p; sign=-1 is the lift equation for (g, omega),
/// sign=+1 its dual counterpart for (G, Q/dG).
FrobeniusResult frobenius_log_term(const Differential& omega, const Differential& Q,
                                   Complex p, int sign);

/// Primitive of a rational differential whose residues all vanish; nullopt if
/// a residue is nonzero.
std::optional<RationalFn> rational_primitive(const RationalFn& f, double tol = 1e-8);

/// Primitive of a power-product differential in power-product form, when one
/// exists (linear-ansatz solve, verified by differentiation).
std::optional<PowerProduct> power_product_primitive(const PowerProduct& dg, double tol = 1e-7);

// small helpers shared with other modules
Differential diff_mul(const Differential& a, const Differential& b);   // weights add
Differential diff_div(const Differential& a, const Differential& b);   // weights subtract
RationalFn mero_log_derivative(const MeroFn& f);
double mero_abs_eval(const MeroFn& f, Complex z);
MeroFn mero_derivative(const MeroFn& f);
MeroFn mero_inverse(const MeroFn& f);  // 1/f
/// Collapse a factorless power product to its rational tail.
MeroFn mero_simplify(const MeroFn& f);

}  // namespace cmc1
