#pragma once

#include <json.hpp>

#include "cmc1/geometry.hpp"
#include "cmc1/mesh.hpp"
#include "cmc1/period.hpp"
#include "cmc1/verify.hpp"

namespace cmc1 {

using Json = nlohmann::ordered_json;

Json to_json(Complex z);
Json to_json(const ExtComplex& z);
Json to_json(const Mat2& m);
Json to_json(const Poly& p);
Json to_json(const RationalFn& r);
Json to_json(const PowerProduct& p);
Json to_json(const MeroFn& f);
Json to_json(const Differential& d);
Json to_json(const SurfaceData& d);

Complex complex_from_json(const Json& j);
ExtComplex ext_from_json(const Json& j);
Poly poly_from_json(const Json& j);
RationalFn rational_from_json(const Json& j);
PowerProduct power_product_from_json(const Json& j);
MeroFn mero_from_json(const Json& j);
Differential differential_from_json(const Json& j);
SurfaceData surface_from_json(const Json& j);

/// Curvature quantities carry both the raw value and the 4 pi multiple.
Json curvature_json(const CurvatureReport& rep);
Json flux_json(const FluxBalance& fb);
Json monodromy_json(const MonodromyRep& rep, const UnitarizabilityReport& ur,
                    ReducibilityClass cls);
Json scan_json(const PeriodScanResult& res);
Json case_json(const CaseReport& rep);
Json candidates_json(const std::vector<TypeCandidate>& cands);
Json compatibility_json(const CompatibilityReport& rep);
Json divisor_json(const Divisor& div);

}  // namespace cmc1
