#include "cmc1/serialize.hpp"

namespace cmc1 {

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const ExtComplex& z) {
    if (z.is_inf()) return Json("inf");
    return to_json(z.value);
}

Json to_json(const Mat2& m) {
    return Json::array({to_json(m.a11), to_json(m.a12), to_json(m.a21), to_json(m.a22)});
}

Json to_json(const Poly& p) {
    Json arr = Json::array();
    for (const auto& c : p.coeffs()) arr.push_back(to_json(c));
    return arr;
}

Json to_json(const RationalFn& r) {
    return Json{{"num", to_json(r.num())}, {"den", to_json(r.den())}};
}

Json to_json(const PowerProduct& p) {
    Json factors = Json::array();
    for (const auto& f : p.factors())
        factors.push_back(Json{{"p", to_json(f.point)}, {"alpha", f.alpha}});
    return Json{{"t", p.t()}, {"factors", factors}, {"tail", to_json(p.tail())}};
}

Json to_json(const MeroFn& f) {
    if (const auto* r = std::get_if<RationalFn>(&f))
        return Json{{"kind", "rational"}, {"value", to_json(*r)}};
    return Json{{"kind", "power_product"}, {"value", to_json(std::get<PowerProduct>(f))}};
}

Json to_json(const Differential& d) {
    return Json{{"weight", d.weight}, {"coeff", to_json(d.coeff)}};
}

Json to_json(const SurfaceData& d) {
    Json j;
    j["label"] = d.label;
    j["genus"] = d.genus;
    Json ps = Json::array();
    for (const auto& p : d.punctures) ps.push_back(to_json(p));
    j["punctures"] = ps;
    j["dual"] = d.dual;
    if (d.gauss) {
        j["gauss"] = Json{{"G", to_json(d.gauss->G)},
                          {"dG", to_json(d.gauss->dG)},
                          {"Q", to_json(d.gauss->Q)}};
    }
    if (d.weier) {
        Json w;
        if (d.weier->g) w["g"] = to_json(*d.weier->g);
        w["dg"] = to_json(d.weier->dg);
        w["omega"] = to_json(d.weier->omega);
        j["weier"] = w;
    }
    Json ann;
    for (const auto& [k, v] : d.annotations) ann[k] = v;
    j["annotations"] = ann;
    return j;
}

Complex complex_from_json(const Json& j) {
    return Complex(j.at(0).get<double>(), j.at(1).get<double>());
}

ExtComplex ext_from_json(const Json& j) {
    if (j.is_string() && j.get<std::string>() == "inf") return ExtComplex::inf();
    return ExtComplex(complex_from_json(j));
}

Poly poly_from_json(const Json& j) {
    std::vector<Complex> c;
    for (const auto& e : j) c.push_back(complex_from_json(e));
    return Poly(std::move(c));
}

RationalFn rational_from_json(const Json& j) {
    return RationalFn(poly_from_json(j.at("num")), poly_from_json(j.at("den")));
}

PowerProduct power_product_from_json(const Json& j) {
    std::vector<PowerProduct::Factor> fs;
    for (const auto& f : j.at("factors"))
        fs.push_back({complex_from_json(f.at("p")), f.at("alpha").get<double>()});
    return PowerProduct(j.at("t").get<double>(), fs, rational_from_json(j.at("tail")));
}

MeroFn mero_from_json(const Json& j) {
    if (j.at("kind").get<std::string>() == "rational")
        return rational_from_json(j.at("value"));
    return power_product_from_json(j.at("value"));
}

Differential differential_from_json(const Json& j) {
    return Differential{j.at("weight").get<int>(), mero_from_json(j.at("coeff"))};
}

SurfaceData surface_from_json(const Json& j) {
    SurfaceData d;
    d.label = j.value("label", std::string{});
    d.genus = j.value("genus", 0);
    for (const auto& p : j.at("punctures")) d.punctures.push_back(ext_from_json(p));
    d.dual = j.value("dual", false);
    if (j.contains("gauss")) {
        GaussSpec gs{rational_from_json(j["gauss"].at("G")),
                     differential_from_json(j["gauss"].at("dG")),
                     differential_from_json(j["gauss"].at("Q"))};
        d.gauss = gs;
    }
    if (j.contains("weier")) {
        WeierstrassSpec ws;
        if (j["weier"].contains("g")) ws.g = mero_from_json(j["weier"]["g"]);
        ws.dg = differential_from_json(j["weier"].at("dg"));
        ws.omega = differential_from_json(j["weier"].at("omega"));
        d.weier = ws;
    }
    if (j.contains("annotations"))
        for (auto it = j["annotations"].begin(); it != j["annotations"].end(); ++it)
            d.annotations[it.key()] = it.value().get<double>();
    return d;
}

static Json value_over_4pi(double v) {
    Json j;
    j["value"] = v;
    if (std::isfinite(v)) {
        j["over_4pi"] = v / (4.0 * kPi);
        double m = v / (4.0 * kPi);
        j["integer_4pi_multiple"] = std::abs(m - std::round(m)) <= 1e-6;
    } else {
        j["over_4pi"] = "inf";
        j["integer_4pi_multiple"] = false;
    }
    return j;
}

Json curvature_json(const CurvatureReport& rep) {
    Json j;
    j["ta"] = value_over_4pi(rep.ta);
    j["ta_dual"] = value_over_4pi(rep.ta_dual);
    if (rep.ta_numeric) j["ta_numeric"] = value_over_4pi(*rep.ta_numeric);
    Json ends = Json::array();
    for (const auto& e : rep.ends) {
        Json je;
        je["point"] = to_json(e.point);
        je["d"] = e.d;
        je["mu"] = e.mu;
        je["mu_sharp"] = std::isfinite(e.mu_sharp) ? Json(e.mu_sharp) : Json("inf");
        je["c"] = e.c();
        if (std::isfinite(e.mu_sharp)) je["c_sharp"] = e.c_sharp();
        je["regular"] = e.regular;
        je["embedded"] = e.embedded;
        ends.push_back(je);
    }
    j["ends"] = ends;
    Json um = Json::array();
    for (const auto& [q, xi] : rep.umbilics)
        um.push_back(Json{{"point", to_json(q)}, {"xi", xi}});
    j["umbilics"] = um;
    return j;
}

Json flux_json(const FluxBalance& fb) {
    Json j;
    Json fl = Json::array();
    for (const auto& f : fb.fluxes) {
        fl.push_back(Json{{"end", to_json(f.end)},
                          {"matrix", to_json(f.F)},
                          {"norm", f.F.frobenius()},
                          {"trace", to_json(f.F.trace())}});
    }
    j["fluxes"] = fl;
    j["sum"] = to_json(fb.sum);
    j["residual"] = fb.residual;
    j["single_end_impossible"] = fb.single_end_impossible;
    if (!fb.note.empty()) j["note"] = fb.note;
    return j;
}

Json monodromy_json(const MonodromyRep& rep, const UnitarizabilityReport& ur,
                    ReducibilityClass cls) {
    Json j;
    j["basepoint"] = to_json(rep.basepoint);
    Json gens = Json::array();
    for (const auto& g : rep.generators) {
        gens.push_back(Json{{"puncture", to_json(g.puncture)},
                            {"matrix", to_json(g.M)},
                            {"trace", to_json(g.M.trace())},
                            {"su2_defect", su2_defect(g.M)}});
    }
    j["generators"] = gens;
    j["relation_error"] = rep.relation_error;
    j["reducibility"] = to_string(cls);
    j["unitarizability"] = Json{{"verdict", to_string(ur.verdict)},
                                {"defect", ur.defect},
                                {"H", to_json(ur.H)},
                                {"definite", ur.definite}};
    return j;
}

Json scan_json(const PeriodScanResult& res) {
    Json j;
    j["parameter"] = res.parameter;
    j["values"] = res.values;
    j["defects"] = res.defects;
    Json roots = Json::array();
    for (const auto& r : res.roots)
        roots.push_back(Json{{"value", r.value}, {"defect", r.defect}, {"definite", r.definite}});
    j["roots"] = roots;
    Json rej = Json::array();
    for (const auto& r : res.rejected_minima)
        rej.push_back(Json{{"value", r.value}, {"defect", r.defect}, {"definite", r.definite}});
    j["rejected_minima"] = rej;
    return j;
}

Json case_json(const CaseReport& rep) {
    Json j;
    j["case"] = rep.id;
    j["confirmed"] = rep.confirmed;
    j["lines"] = rep.lines;
    Json vals;
    for (const auto& [k, v] : rep.values) vals[k] = v;
    j["values"] = vals;
    return j;
}

Json candidates_json(const std::vector<TypeCandidate>& cands) {
    Json arr = Json::array();
    for (const auto& c : cands) {
        Json j;
        j["type"] = c.type.str();
        j["genus"] = c.type.genus;
        j["end_orders"] = c.type.end_orders;
        j["ta_min_over_2pi"] = c.ta_min_over_2pi;
        j["ta_exact"] = c.ta_exact;
        j["constraints"] = c.constraints;
        if (!c.notes.empty()) j["notes"] = c.notes;
        arr.push_back(j);
    }
    return arr;
}

Json compatibility_json(const CompatibilityReport& rep) {
    Json j;
    j["ok"] = rep.ok;
    Json items = Json::array();
    for (const auto& it : rep.items) {
        items.push_back(Json{{"point", to_json(it.point)},
                             {"is_puncture", it.is_puncture},
                             {"q_order", it.q_order},
                             {"g_branching", it.g_branching},
                             {"ok", it.ok},
                             {"detail", it.detail}});
    }
    j["items"] = items;
    return j;
}

Json divisor_json(const Divisor& div) {
    Json arr = Json::array();
    for (const auto& e : div.entries)
        arr.push_back(Json{{"point", to_json(e.point)}, {"order", e.order},
                           {"umbilic", e.umbilic}});
    return Json{{"entries", arr}, {"order_sum", div.order_sum()}};
}

}  // namespace cmc1
