// Command-line front end: construct catalog surfaces, check data, compute
// curvature/flux/monodromy reports, run period scans, the type enumerator,
// the appendix case verifiers, and mesh export.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "cmc1/catalog.hpp"
#include "cmc1/serialize.hpp"

using namespace cmc1;

namespace {

struct Common {
    std::string out;
    std::string report = "human";
};

void emit(const Common& c, const Json& structured, const std::string& human) {
    std::string text = c.report == "structured" ? structured.dump(2) + "\n" : human;
    if (c.out.empty() || c.out == "-") {
        std::cout << text;
    } else {
        std::ofstream f(c.out, std::ios::binary);
        f << text;
    }
}

SurfaceData load_data(const std::string& path) {
    Json j;
    if (path.empty() || path == "-") {
        std::cin >> j;
    } else {
        std::ifstream f(path);
        if (!f) throw UsageError("cannot open " + path);
        f >> j;
    }
    return surface_from_json(j);
}

std::map<std::string, double> parse_params(const std::vector<std::string>& kvs) {
    std::map<std::string, double> out;
    for (const auto& kv : kvs) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw UsageError("--param expects key=value");
        out[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    }
    return out;
}

Complex default_basepoint(const SurfaceData& d) {
    double scale = 1.0;
    for (const auto& p : d.punctures)
        if (!p.is_inf()) scale = std::max(scale, std::abs(p.finite()));
    // off the real axis, where the catalog families keep their punctures
    return Complex(0.0, 0.375) * scale;
}

std::string human_curvature(const CurvatureReport& rep) {
    std::ostringstream os;
    os.precision(12);
    os << "TA(f)   = " << rep.ta << "  (" << rep.ta / (4 * kPi) << " * 4pi)\n";
    if (std::isfinite(rep.ta_dual))
        os << "TA(f#)  = " << rep.ta_dual << "  (" << rep.ta_dual / (4 * kPi) << " * 4pi)\n";
    else
        os << "TA(f#)  = infinite (irregular end)\n";
    if (rep.ta_numeric)
        os << "TA numeric quadrature = " << *rep.ta_numeric << "\n";
    for (const auto& e : rep.ends) {
        os << "end ";
        if (e.point.is_inf())
            os << "inf";
        else
            os << e.point.finite();
        os << ": d = " << e.d << ", mu = " << e.mu << ", mu# = ";
        if (std::isfinite(e.mu_sharp))
            os << e.mu_sharp;
        else
            os << "inf";
        os << (e.regular ? ", regular" : ", irregular") << (e.embedded ? ", embedded" : "")
           << "\n";
    }
    for (const auto& [q, xi] : rep.umbilics)
        os << "umbilic " << (q.is_inf() ? Complex(0, 0) : q.finite()) << " xi = " << xi
           << (q.is_inf() ? " (at inf)" : "") << "\n";
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CMC-1 surface toolkit (Bryant representation)"};
    app.require_subcommand(1);
    Common common;
    app.add_option("--out", common.out, "output path (default stdout)");
    app.add_option("--report", common.report, "report format: human|structured")
        ->check(CLI::IsMember({"human", "structured"}));

    // catalog
    auto* cat = app.add_subcommand("catalog", "emit a catalog family as a data document");
    std::string cat_name;
    std::vector<std::string> cat_params;
    cat->add_option("--name", cat_name, "family name")->required();
    cat->add_option("--param", cat_params, "family parameter key=value");

    // check
    auto* chk = app.add_subcommand("check", "compatibility + residue + divisor report");
    std::string chk_data;
    chk->add_option("--data", chk_data, "data document (file or - for stdin)");

    // curvature
    auto* cur = app.add_subcommand("curvature", "curvature report");
    std::string cur_data;
    bool cur_numeric = false;
    cur->add_option("--data", cur_data, "data document");
    cur->add_flag("--numeric", cur_numeric, "run the spherical-area quadrature check");

    // flux
    auto* flx = app.add_subcommand("flux", "flux matrices and balancing");
    std::string flx_data;
    flx->add_option("--data", flx_data, "data document");

    // monodromy
    auto* mon = app.add_subcommand("monodromy", "generators, reducibility, unitarizability");
    std::string mon_data, mon_base;
    mon->add_option("--data", mon_data, "data document");
    mon->add_option("--basepoint", mon_base, "basepoint re,im");

    // period-solve
    auto* per = app.add_subcommand("period-solve", "parameter scan for closed periods");
    std::string per_family, per_scan;
    std::vector<std::string> per_params;
    per->add_option("--family", per_family, "catalog family")->required();
    per->add_option("--param", per_params, "fixed parameter key=value");
    per->add_option("--scan", per_scan, "scan spec name=lo:hi:step")->required();

    // verify
    auto* ver = app.add_subcommand("verify", "appendix case verifiers and type enumerator");
    std::string ver_case;
    double ver_budget = 4.0;
    int ver_m2 = 1, ver_m3 = 1, ver_m4 = 1, ver_grid = 101;
    ver->add_option("--case", ver_case, "enumerate|A13|A14|A18|parity")->required();
    ver->add_option("--budget", ver_budget, "TA budget over 2 pi (enumerate)");
    ver->add_option("--m2", ver_m2);
    ver->add_option("--m3", ver_m3);
    ver->add_option("--m4", ver_m4);
    ver->add_option("--grid", ver_grid, "grid points");

    // mesh
    auto* msh = app.add_subcommand("mesh", "sample a surface and export OBJ");
    std::string msh_data, msh_grid, msh_out = "mesh.obj";
    bool msh_dual = false;
    msh->add_option("--data", msh_data, "data document");
    msh->add_option("--grid", msh_grid, "annulus:r0,r1,nr,ntheta or rect:x0,x1,y0,y1,nx,ny")
        ->required();
    msh->add_option("--mesh-out", msh_out, "OBJ output path");
    msh->add_flag("--dual", msh_dual, "mesh the dual surface");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (cat->parsed()) {
            FamilyParams fp{cat_name, parse_params(cat_params)};
            SurfaceData d = make(fp);
            emit(common, to_json(d), to_json(d).dump(2) + "\n");
        } else if (chk->parsed()) {
            SurfaceData d = load_data(chk_data);
            Json j;
            std::ostringstream human;
            if (d.gauss && !d.gauss->Q.zero()) {
                auto rep = compatibility_check(*d.gauss, d.punctures);
                j["compatibility"] = compatibility_json(rep);
                human << "compatibility: " << (rep.ok ? "ok" : "FAILED") << "\n";
            }
            Divisor div = pseudometric_divisor(d);
            j["divisor"] = divisor_json(div);
            j["type"] = surface_type(d).str();
            human << "type " << surface_type(d).str() << ", divisor order sum "
                  << div.order_sum() << "\n";
            emit(common, j, human.str());
        } else if (cur->parsed()) {
            SurfaceData d = load_data(cur_data);
            CurvatureReport rep = curvature_report(d, cur_numeric);
            emit(common, curvature_json(rep), human_curvature(rep));
        } else if (flx->parsed()) {
            SurfaceData d = load_data(flx_data);
            FluxBalance fb = flux_balance(d);
            std::ostringstream os;
            os.precision(12);
            os << "flux residual " << fb.residual << "\n";
            for (const auto& f : fb.fluxes)
                os << "  end " << (f.end.is_inf() ? "inf" : std::to_string(f.end.finite().real()))
                   << " norm " << f.F.frobenius() << "\n";
            if (fb.single_end_impossible) os << "impossible: " << fb.note << "\n";
            emit(common, flux_json(fb), os.str());
        } else if (mon->parsed()) {
            SurfaceData d = load_data(mon_data);
            Complex base = default_basepoint(d);
            if (!mon_base.empty()) {
                auto comma = mon_base.find(',');
                base = Complex(std::stod(mon_base.substr(0, comma)),
                               comma == std::string::npos ? 0.0
                                                          : std::stod(mon_base.substr(comma + 1)));
            }
            MonodromyRep rep = full_representation(d, base);
            UnitarizabilityReport ur = unitarizability(rep);
            ReducibilityClass cls = reducibility(rep);
            std::ostringstream os;
            os.precision(12);
            os << "reducibility: " << to_string(cls) << "\n";
            os << "unitarizability: " << to_string(ur.verdict) << " (defect " << ur.defect
               << ")\n";
            for (const auto& g : rep.generators)
                os << "  generator trace " << g.M.trace() << "\n";
            os << "product relation error " << rep.relation_error << "\n";
            emit(common, monodromy_json(rep, ur, cls), os.str());
        } else if (per->parsed()) {
            auto params = parse_params(per_params);
            auto eq = per_scan.find('=');
            if (eq == std::string::npos) throw UsageError("--scan expects name=lo:hi:step");
            std::string pname = per_scan.substr(0, eq);
            double lo, hi, step;
            if (std::sscanf(per_scan.c_str() + eq + 1, "%lf:%lf:%lf", &lo, &hi, &step) != 3)
                throw UsageError("--scan expects name=lo:hi:step");
            auto family = [&](double v) {
                auto ps = params;
                ps[pname] = v;
                return make(FamilyParams{per_family, ps});
            };
            Complex base = default_basepoint(family(0.5 * (lo + hi)));
            PeriodScanResult res = period_solve(family, pname, lo, hi, step, base);
            std::ostringstream os;
            os << res.table();
            if (res.roots.empty()) os << "# no unitarizable root located\n";
            emit(common, scan_json(res), os.str());
        } else if (ver->parsed()) {
            Json j;
            std::ostringstream os;
            if (ver_case == "enumerate") {
                auto cands = enumerate_types(ver_budget);
                j = candidates_json(cands);
                for (const auto& c : cands) os << c.type.str() << "\n";
            } else if (ver_case == "A13" || ver_case == "A14" || ver_case == "A18" ||
                       ver_case == "parity") {
                CaseReport rep;
                if (ver_case == "A13") rep = verify_A13(ver_grid);
                if (ver_case == "A14") rep = verify_A14(ver_grid);
                if (ver_case == "A18") rep = verify_A18(ver_m2, ver_m3, ver_m4);
                if (ver_case == "parity") rep = verify_parity_bounds();
                j = case_json(rep);
                os << rep.id << ": " << (rep.confirmed ? "confirmed" : "NOT CONFIRMED") << "\n";
                for (const auto& l : rep.lines) os << "  " << l << "\n";
            } else {
                throw UsageError("unknown verify case " + ver_case);
            }
            emit(common, j, os.str());
        } else if (msh->parsed()) {
            SurfaceData d = load_data(msh_data);
            MeshGrid grid;
            double a0, a1, a2v, a3v;
            int n1, n2;
            if (std::sscanf(msh_grid.c_str(), "annulus:%lf,%lf,%d,%d", &a0, &a1, &n1, &n2) == 4) {
                grid = MeshGrid::annulus(Complex{}, a0, a1, n1, n2);
            } else if (std::sscanf(msh_grid.c_str(), "rect:%lf,%lf,%lf,%lf,%d,%d", &a0, &a1,
                                   &a2v, &a3v, &n1, &n2) == 6) {
                grid = MeshGrid::rect(a0, a1, a2v, a3v, n1, n2);
            } else {
                throw UsageError("bad --grid spec");
            }
            Mesh mesh = sample_surface(d, grid, msh_dual);
            export_obj(mesh, msh_out);
            MetricCheckReport mc = metric_checks(mesh);
            Json j{{"vertices", mesh.vertices.size()},
                   {"faces", mesh.quads.size()},
                   {"clipped", mesh.clipped},
                   {"periods_open", mesh.periods_open},
                   {"metric_ok", mc.ok},
                   {"metric_max_rel_err", mc.max_product_rel_err},
                   {"out", msh_out}};
            std::ostringstream os;
            os << "wrote " << msh_out << " (" << mesh.vertices.size() << " vertices, "
               << mesh.quads.size() << " faces, " << mesh.clipped << " clipped)\n";
            if (mesh.periods_open) os << "warning: periods open; universal-cover chart\n";
            emit(common, j, os.str());
        }
    } catch (const UsageError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const ParamOutOfRange& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const InconsistentOrders& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 3;
    }
    return 0;
}
