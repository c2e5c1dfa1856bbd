#pragma once

#include <map>
#include <string>

#include "cmc1/mero.hpp"

namespace cmc1 {

/// Data given as hyperbolic Gauss map plus Hopf differential.  dG is the
/// primary representation of G's branching; G itself is the rational
/// primitive (always present for catalog data).
struct GaussSpec {
    RationalFn G;
    Differential dG;   // weight 1
    Differential Q;    // weight 2
};

/// Data given as secondary Gauss map plus 1-form omega = Q/dg.  g is
/// multivalued in general; it is stored explicitly when it has closed
/// power-product (or rational) form, and dg always.
struct WeierstrassSpec {
    std::optional<MeroFn> g;
    Differential dg;      // weight 1
    Differential omega;   // weight 1
    Differential hopf() const { return diff_mul(omega, dg); }
};

struct SurfaceData {
    int genus = 0;
    std::vector<ExtComplex> punctures;
    std::optional<GaussSpec> gauss;
    std::optional<WeierstrassSpec> weier;
    std::string label;
    bool dual = false;  // interpret as the dual surface (lift F^{-1})
    std::map<std::string, double> annotations;

    /// Hopf differential, from whichever spec is present.
    Differential hopf() const;
    void require_genus_zero() const {
        if (genus != 0) throw UnsupportedGenus("construction supports genus 0 only");
    }
};

struct SurfaceType {
    int genus = 0;
    std::vector<int> end_orders;  // sorted descending
    std::string str() const;      // "O(-2,-2,-2)" / "I(-4)"
    bool operator==(const SurfaceType&) const = default;
    bool operator<(const SurfaceType& o) const {
        return std::tie(genus, end_orders) < std::tie(o.genus, o.end_orders);
    }
};

struct Divisor {
    struct Entry {
        ExtComplex point;
        double order;
        bool umbilic = false;
    };
    std::vector<Entry> entries;
    double order_sum() const;
};

struct CompatibilityReport {
    struct Item {
        ExtComplex point;
        bool is_puncture;
        double q_order;
        int g_branching;
        bool ok;
        std::string detail;
    };
    bool ok = true;
    std::vector<Item> items;
};

/// Branching order of the map with derivative dG at p: ord_p(dG) where the
/// map is finite, -ord_p(dG)-2 at a pole.
int branching_order_from_derivative(const Differential& dG, const ExtComplex& p);

/// Umbilic points: zeros of Q away from the punctures (infinity included when
/// it is not a puncture), with their orders.
std::vector<std::pair<ExtComplex, int>> umbilic_points(const Differential& Q,
                                                       const std::vector<ExtComplex>& punctures);

/// Genus and ord_{p_j} Q at every puncture.  Zero Hopf differential (the
/// totally umbilic case) reports all end orders 0.
SurfaceType surface_type(const SurfaceData& data);

/// Compatibility of (G, Q): at every non-puncture the order of Q equals the
/// branching order of G, and at punctures branching(G) - d_j >= 2.
CompatibilityReport compatibility_check(const GaussSpec& gs,
                                        const std::vector<ExtComplex>& punctures);

/// Divisor of the curvature-1 pseudometric: conical orders mu_j at the
/// punctures plus xi_k = ord Q at the umbilics.
Divisor pseudometric_divisor(const SurfaceData& data);

namespace detail {
/// Conical order of dsigma^2 at an end: from the local exponent of dg for
/// Weierstrass data, from the z^{-2} coefficient of Q for Gauss data.
double end_conical_order(const SurfaceData& data, const ExtComplex& p);
double mu_from_dg(const Differential& dg, const ExtComplex& p);
Complex q2_coefficient(const Differential& Q, const ExtComplex& p);
}  // namespace detail

}  // namespace cmc1
