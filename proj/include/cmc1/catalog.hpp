#pragma once

#include "cmc1/surface.hpp"

namespace cmc1 {

struct FamilyParams {
    std::string name;
    std::map<std::string, double> params;

    double get(const std::string& key) const;
    double get_or(const std::string& key, double fallback) const;
    int get_int(const std::string& key) const;
};

struct TrinoidConstraints {
    bool ineq42 = false;   // cos^2 B1 + cos^2 B2 + cos^2 B3 + 2 cos B1 cos B2 cos B3 < 1
    bool cond43 = false;   // c1^2 + c2^2 + c3^2 - 2(c1 c2 + c2 c3 + c3 c1) != 0
    Complex q1, q2;        // zeros of the Hopf differential
};

TrinoidConstraints trinoid_constraints(double mu1, double mu2, double mu3);

/// Construct a catalog family; throws ParamOutOfRange naming the violated
/// constraint.  Known names: horosphere, enneper_cousin, enneper_dual,
/// catenoid_cousin, trinoid, fournoid, o2m4, o2m5, o022, o122, o122_eq8pi,
/// o2220.
SurfaceData make(const FamilyParams& p);

std::vector<std::string> catalog_families();

}  // namespace cmc1
