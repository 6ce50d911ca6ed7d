// Batch front-end: load a JSON document describing a category (optionally a
// deformation, twisted complexes, and a gauge cochain), run a verification or
// construction, and emit deterministic reports and result files.
//
// Exit codes: 0 success, 1 check failure, 2 input error.
// With --out STEM the command writes STEM.json (result document, when the
// command produces one), STEM.txt (the plain-text report), and
// STEM.report.json (the machine-readable report).  A relative STEM is resolved
// against $ADENG_OUT when that variable is set.

#include "CLI11.hpp"
#include "json.hpp"

#include "ade/deformed.hpp"
#include "ade/functor.hpp"
#include "ade/hochschild.hpp"
#include "ade/io.hpp"
#include "ade/kadeishvili.hpp"
#include "ade/splitting.hpp"
#include "ade/trees.hpp"
#include "ade/twisted.hpp"

#include <cstdlib>
#include <iostream>
#include <sstream>

using namespace ade;
using json = nlohmann::ordered_json;

namespace {

struct Options {
    std::string file;
    int a_max = 0; // 0 = command default
    int k_max = 0; // 0 = as loaded
    int jobs = 0;
    bool trace = false;
    std::string out;
    std::string object; // uncurve-object target
};

struct Outcome {
    bool ok = true;
    std::string text;              // plain-text report (printed to stdout)
    json report = json::object();  // machine-readable companion
    std::string artifact;          // result document bytes, possibly empty
};

std::string resolve_out(const std::string& stem) {
    if (stem.empty() || stem.front() == '/') return stem;
    const char* dir = std::getenv("ADENG_OUT");
    if (!dir || !*dir) return stem;
    std::string d = dir;
    if (d.back() != '/') d += '/';
    return d + stem;
}

Document load(const Options& opt) {
    Document doc = load_document(opt.file);
    if (opt.k_max > 0) {
        doc.category->k_max = std::max(doc.category->k_max, opt.k_max);
        if (doc.deformation)
            doc.deformation->k_max = std::max(doc.deformation->k_max, opt.k_max);
    }
    return doc;
}

AInfDeformation& require_deformation(Document& doc) {
    if (!doc.deformation)
        throw SchemaError("deformation: this command needs a deformation section");
    return *doc.deformation;
}

void header(std::ostringstream& os, const char* command, const Options& opt,
            const Document& doc, int a_max) {
    os << "# adeng " << command << "\n";
    os << "input: " << opt.file << "\n";
    os << "base: vars=" << doc.base->num_vars << " truncation=" << doc.base->truncation
       << " relations=" << doc.base->relations.size() << "\n";
    os << "bounds: a_max=" << a_max << " k_max=" << doc.category->k_max;
    if (doc.deformation) os << " deformation_k_max=" << doc.deformation->k_max;
    os << "\n";
}

void base_report(json& rep, const char* command, const Document& doc, int a_max) {
    rep["command"] = command;
    rep["a_max"] = a_max;
    rep["k_max"] = doc.category->k_max;
    rep["truncation"] = doc.base->truncation;
}

void describe(std::ostringstream& os, json& rep, const char* part, const RelationReport& r) {
    os << part << ": " << (r.ok ? "ok" : "FAILED") << " (arity bound " << r.arity_bound
       << ", " << r.tuples_checked << " tuples)\n";
    for (const auto& v : r.violations) os << "  violation: " << v << "\n";
    json jr;
    jr["ok"] = r.ok;
    jr["arity_bound"] = r.arity_bound;
    jr["tuples_checked"] = r.tuples_checked;
    jr["violations"] = r.violations;
    rep[part] = std::move(jr);
}

// ---------------------------------------------------------------------------

Outcome cmd_verify(const Options& opt) {
    Document doc = load(opt);
    int a_max = opt.a_max > 0 ? opt.a_max : doc.category->k_max + 2;
    Outcome out;
    std::ostringstream os;
    header(os, "verify", opt, doc, a_max);
    base_report(out.report, "verify", doc, a_max);

    RelationReport cr = check_relations(*doc.category, a_max, opt.jobs);
    describe(os, out.report, "category", cr);
    out.ok = cr.ok;
    if (doc.deformation) {
        RelationReport dr = check_relations(*doc.deformation, a_max, opt.jobs);
        describe(os, out.report, "deformation", dr);
        out.ok = out.ok && dr.ok;
    }
    if (!doc.twisted.empty()) {
        AInfDeformation trivial = AInfDeformation::trivial(*doc.category, doc.base);
        const AInfDeformation& def = doc.deformation ? *doc.deformation : trivial;
        json tws = json::array();
        for (const auto& X : doc.twisted) {
            RelationReport tr = validate_tw_object(def, X);
            os << "twisted " << X.name << ": " << (tr.ok ? "ok" : "FAILED") << "\n";
            for (const auto& v : tr.violations) os << "  violation: " << v << "\n";
            json jt;
            jt["name"] = X.name;
            jt["ok"] = tr.ok;
            jt["violations"] = tr.violations;
            tws.push_back(std::move(jt));
            out.ok = out.ok && tr.ok;
        }
        out.report["twisted"] = std::move(tws);
    }
    os << "result: " << (out.ok ? "verified up to bound" : "violations found") << "\n";
    out.report["ok"] = out.ok;
    out.text = os.str();
    return out;
}

Outcome cmd_minimal_model(const Options& opt) {
    Document doc = load(opt);
    int a_max = opt.a_max > 0 ? opt.a_max : 4;
    Outcome out;
    std::ostringstream os;
    header(os, "minimal-model", opt, doc, a_max);
    base_report(out.report, "minimal-model", doc, a_max);

    Splitting sp = compute_splitting(*doc.category);
    MinimalModel mm = minimal_model(*doc.category, sp, a_max, opt.jobs);
    json dims = json::array();
    for (const auto& [hk, hs] : sp.spaces) {
        os << "H(" << doc.category->objects[hk.first] << ", " << doc.category->objects[hk.second]
           << "): dim " << hs.dim_h() << " of " << hs.dim() << "\n";
        json d;
        d["source"] = doc.category->objects[hk.first];
        d["target"] = doc.category->objects[hk.second];
        d["dim_h"] = hs.dim_h();
        d["dim"] = hs.dim();
        dims.push_back(std::move(d));
    }
    os << "products: " << mm.hc.products.size() << " nonzero structure constants up to arity "
       << a_max << "\n";
    out.report["homs"] = std::move(dims);
    out.report["products"] = (int)mm.hc.products.size();
    out.report["ok"] = true;
    out.artifact = emit_minimal_model(mm, *doc.category);
    out.text = os.str();
    return out;
}

void optimization_summary(std::ostringstream& os, json& rep, const AInfCategory& cat,
                          const OptimizationResult& res) {
    os << "optimization: " << res.trace.size() << " iterations\n";
    json steps = json::array();
    for (size_t i = 0; i < res.trace.size(); ++i) {
        os << "  iteration " << i + 1 << ": twist of m-adic order " << res.trace[i].min_order
           << "\n";
        steps.push_back(res.trace[i].min_order);
    }
    for (const auto& [obj, v] : res.optimized.curvature)
        os << "curvature " << cat.objects[obj] << ": "
           << v.str(cat.hom_basis(obj, obj)) << "\n";
    if (res.optimized.curvature.empty()) os << "curvature: 0 on every object\n";
    rep["iterations"] = std::move(steps);
    rep["curvature_free"] = res.optimized.curvature.empty();
}

Outcome cmd_optimize(const Options& opt) {
    Document doc = load(opt);
    AInfDeformation& def = require_deformation(doc);
    int a_max = opt.a_max > 0 ? opt.a_max : def.k_max;
    Outcome out;
    std::ostringstream os;
    header(os, "optimize-curvature", opt, doc, a_max);
    base_report(out.report, "optimize-curvature", doc, a_max);

    Splitting sp = compute_splitting(*doc.category);
    OptimizationResult res = optimize_curvature(def, sp);
    optimization_summary(os, out.report, *doc.category, res);
    out.report["ok"] = true;
    out.artifact = emit_optimization(res, opt.trace);
    out.text = os.str();
    return out;
}

Outcome cmd_deformed_mm(const Options& opt) {
    Document doc = load(opt);
    AInfDeformation& def = require_deformation(doc);
    int a_max = opt.a_max > 0 ? opt.a_max : 4;
    Outcome out;
    std::ostringstream os;
    header(os, "deformed-minimal-model", opt, doc, a_max);
    base_report(out.report, "deformed-minimal-model", doc, a_max);

    Splitting sp = compute_splitting(*doc.category);
    DeformedMinimalModel mm = deformed_minimal_model(def, sp, a_max);
    optimization_summary(os, out.report, *doc.category, mm.opt);
    os << "deformed products: " << mm.hcq.correction.size() << " corrected tuples up to arity "
       << a_max << "\n";
    for (const auto& [obj, v] : mm.hcq.curvature)
        os << "transferred curvature " << mm.hc->objects[obj] << ": "
           << v.str(mm.hc->hom_basis(obj, obj)) << "\n";
    out.report["corrected_tuples"] = (int)mm.hcq.correction.size();
    out.report["transferred_curvature_objects"] = (int)mm.hcq.curvature.size();
    out.report["ok"] = true;
    out.artifact = emit_deformed_minimal_model(mm, opt.trace);
    out.text = os.str();
    return out;
}

Outcome cmd_hochschild_mc(const Options& opt) {
    Document doc = load(opt);
    AInfDeformation& def = require_deformation(doc);
    int a_max = opt.a_max > 0 ? opt.a_max : def.k_max + 2;
    Outcome out;
    std::ostringstream os;
    header(os, "hochschild-mc", opt, doc, a_max);
    base_report(out.report, "hochschild-mc", doc, a_max);

    HochschildCochain nu = deformation_to_mc(def);
    HochschildCochain defect = mc_defect(nu, a_max);
    out.ok = defect.is_zero();
    os << "maurer-cartan defect up to arity " << a_max << ": "
       << (out.ok ? "0" : "nonzero") << "\n";
    json bad = json::array();
    for (const auto& [obj, v] : defect.comp0)
        if (!v.is_zero()) bad.push_back("object " + doc.category->objects[obj]);
    for (const auto& [key, v] : defect.comps) {
        if (v.is_zero()) continue;
        std::string names;
        for (int id : key) names += (names.empty() ? "" : ", ") + doc.category->elems[id].name;
        bad.push_back("(" + names + ")");
    }
    for (const auto& b : bad) os << "  nonzero at " << b.get<std::string>() << "\n";
    out.report["nonzero_components"] = std::move(bad);
    out.report["ok"] = out.ok;
    out.text = os.str();
    return out;
}

Outcome cmd_gauge(const Options& opt) {
    Document doc = load(opt);
    AInfDeformation& def = require_deformation(doc);
    if (!doc.gauge_cochain)
        throw SchemaError("gauge: this command needs a gauge section");
    int a_max = opt.a_max > 0 ? opt.a_max : def.k_max + 2;
    Outcome out;
    std::ostringstream os;
    header(os, "gauge", opt, doc, a_max);
    base_report(out.report, "gauge", doc, a_max);

    HochschildCochain nu = deformation_to_mc(def);
    HochschildCochain moved = gauge(nu, *doc.gauge_cochain);
    AInfDeformation gauged = mc_to_deformation(*doc.category, moved);
    bool mc = mc_defect(moved, a_max).is_zero();
    os << "gauged deformation: " << gauged.correction.size() << " corrected tuples, "
       << gauged.curvature.size() << " curved objects\n";
    os << "maurer-cartan after gauge: " << (mc ? "holds" : "violated") << "\n";
    out.report["maurer_cartan"] = mc;
    out.report["ok"] = true;
    out.artifact = emit_document(gauged);
    out.text = os.str();
    return out;
}

Outcome cmd_tw_curvature(const Options& opt) {
    Document doc = load(opt);
    if (doc.twisted.empty())
        throw SchemaError("twisted: this command needs a twisted section");
    AInfDeformation trivial = AInfDeformation::trivial(*doc.category, doc.base);
    const AInfDeformation& def = doc.deformation ? *doc.deformation : trivial;
    int a_max = opt.a_max > 0 ? opt.a_max : def.k_max;
    Outcome out;
    std::ostringstream os;
    header(os, "tw-curvature", opt, doc, a_max);
    base_report(out.report, "tw-curvature", doc, a_max);

    json objs = json::array();
    for (const auto& X : doc.twisted) {
        RelationReport vr = validate_tw_object(def, X);
        out.ok = out.ok && vr.ok;
        AddMorphism curv = tw_curvature(def, X);
        os << "twisted " << X.name << ": " << (vr.ok ? "valid" : "INVALID")
           << (curv.is_zero() ? ", curvature 0" : ", curvature nonzero") << "\n";
        json jo;
        jo["name"] = X.name;
        jo["valid"] = vr.ok;
        jo["curvature_zero"] = curv.is_zero();
        json blocks = json::array();
        for (const auto& [ij, v] : curv.blocks) {
            if (v.is_zero()) continue;
            const auto& basis = doc.category->hom_basis(X.summands[ij.first].obj,
                                                        X.summands[ij.second].obj);
            os << "  block " << ij.first << " -> " << ij.second << ": " << v.str(basis) << "\n";
            json jb;
            jb["from"] = ij.first;
            jb["to"] = ij.second;
            jb["value"] = v.str(basis);
            blocks.push_back(std::move(jb));
        }
        jo["curvature_blocks"] = std::move(blocks);
        objs.push_back(std::move(jo));
    }
    out.report["twisted"] = std::move(objs);
    out.report["ok"] = out.ok;
    out.text = os.str();
    return out;
}

Outcome cmd_uncurve(const Options& opt) {
    Document doc = load(opt);
    AInfDeformation& def = require_deformation(doc);
    int obj = -1;
    if (!opt.object.empty()) {
        obj = doc.category->object_index(opt.object);
    } else if (!def.curvature.empty()) {
        obj = def.curvature.begin()->first;
    } else {
        obj = 0;
    }
    Outcome out;
    std::ostringstream os;
    header(os, "uncurve-object", opt, doc, def.k_max);
    base_report(out.report, "uncurve-object", doc, def.k_max);

    Splitting sp = compute_splitting(*doc.category);
    UncurveResult res = attempt_uncurve_object(def, sp, obj);
    const auto& basis = doc.category->hom_basis(obj, obj);
    os << "object: " << doc.category->objects[obj] << "\n";
    out.report["object"] = doc.category->objects[obj];
    out.ok = res.ok;
    if (res.ok) {
        os << "uncurvable: yes\n";
        os << "twist r: " << res.r.str(basis) << "\n";
        out.report["r"] = res.r.str(basis);
    } else {
        os << "uncurvable: obstructed under greedy strategy at m-adic order "
           << res.obstruction_order << "\n";
        os << "harmonic obstruction: " << res.obstruction.str(basis) << "\n";
        out.report["obstruction_order"] = res.obstruction_order;
        out.report["obstruction"] = res.obstruction.str(basis);
    }
    out.report["ok"] = out.ok;
    out.text = os.str();
    return out;
}

Outcome cmd_check_d_zero(const Options& opt) {
    Document doc = load(opt);
    AInfDeformation& def = require_deformation(doc);
    if (!def.curvature.empty())
        throw InvariantError("deformation.curvature: check-d-zero needs a curvature-free deformation");
    int a_max = opt.a_max > 0 ? opt.a_max : 3;
    Outcome out;
    std::ostringstream os;
    header(os, "check-d-zero", opt, doc, a_max);
    base_report(out.report, "check-d-zero", doc, a_max);

    Splitting sp = compute_splitting(*doc.category);
    RelationReport maps = check_cohomology_maps(def, sp);
    describe(os, out.report, "comparison_maps", maps);
    out.ok = maps.ok;

    bool dz = check_d_zero(def, sp);
    os << "deformed differential on the harmonic part: " << (dz ? "D = 0" : "D != 0") << "\n";
    out.report["d_zero"] = dz;
    if (dz) {
        DeformedMinimalModel mm = deformed_minimal_model(def, sp, a_max);
        bool flat0 = mm.hcq.curvature.empty();
        bool flat1 = true;
        for (const auto& [key, v] : mm.hcq.correction)
            if (key.size() == 1 && !v.is_zero()) flat1 = false;
        os << "minimal model: curvature " << (flat0 ? "0" : "nonzero") << ", differential "
           << (flat1 ? "0" : "nonzero") << "\n";
        out.report["minimal_model_curvature_zero"] = flat0;
        out.report["minimal_model_differential_zero"] = flat1;
        out.ok = out.ok && flat0 && flat1;
    }
    out.report["ok"] = out.ok;
    out.text = os.str();
    return out;
}

Outcome cmd_cohomology_compare(const Options& opt) {
    Document doc = load(opt);
    AInfDeformation& def = require_deformation(doc);
    if (!def.curvature.empty())
        throw InvariantError(
            "deformation.curvature: cohomology-compare needs a curvature-free deformation");
    Outcome out;
    std::ostringstream os;
    header(os, "cohomology-compare", opt, doc, def.k_max);
    base_report(out.report, "cohomology-compare", doc, def.k_max);

    Splitting sp = compute_splitting(*doc.category);
    CohomologyComparison cc = cohomology_comparison(def, sp);
    json dims = json::array();
    for (const auto& [hk, d] : cc.dims) {
        os << "H(" << doc.category->objects[hk.first] << ", " << doc.category->objects[hk.second]
           << "): actual " << d.first << ", flat " << d.second << "\n";
        json jd;
        jd["source"] = doc.category->objects[hk.first];
        jd["target"] = doc.category->objects[hk.second];
        jd["actual"] = d.first;
        jd["flat"] = d.second;
        dims.push_back(std::move(jd));
    }
    bool flat = cc.flat();
    os << "cohomology: " << (flat ? "free of the expected rank (projective over B)"
                                  : "smaller than the flat expectation")
       << "\n";
    out.report["dims"] = std::move(dims);
    out.report["projective"] = flat;
    out.report["ok"] = true;
    out.text = os.str();
    return out;
}

int finish(const Outcome& out, const Options& opt, const char* command) {
    std::cout << out.text;
    if (!opt.out.empty()) {
        std::string stem = resolve_out(opt.out);
        if (!out.artifact.empty()) write_file(stem + ".json", out.artifact);
        write_file(stem + ".txt", out.text);
        write_file(stem + ".report.json", out.report.dump(2) + "\n");
    }
    (void)command;
    return out.ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact A-infinity deformation engine"};
    app.require_subcommand(1);

    Options opt;
    long trees_n = 0;

    auto add_common = [&](CLI::App* sub, bool needs_file) {
        if (needs_file) sub->add_option("file", opt.file, "input JSON document")->required();
        sub->add_option("--a-max", opt.a_max, "arity bound for checks/transfer");
        sub->add_option("--k-max", opt.k_max, "raise the declared product arity bound");
        sub->add_option("--jobs", opt.jobs, "worker thread cap (0 = default)");
        sub->add_flag("--trace", opt.trace, "include the optimization trace in artifacts");
        sub->add_option("--out", opt.out, "output stem for artifact/report files");
    };

    std::map<std::string, Outcome (*)(const Options&)> commands = {
        {"verify", cmd_verify},
        {"minimal-model", cmd_minimal_model},
        {"deformed-minimal-model", cmd_deformed_mm},
        {"optimize-curvature", cmd_optimize},
        {"hochschild-mc", cmd_hochschild_mc},
        {"gauge", cmd_gauge},
        {"tw-curvature", cmd_tw_curvature},
        {"uncurve-object", cmd_uncurve},
        {"check-d-zero", cmd_check_d_zero},
        {"cohomology-compare", cmd_cohomology_compare},
    };
    for (auto& [name, fn] : commands) {
        CLI::App* sub = app.add_subcommand(name);
        add_common(sub, true);
        if (name == "uncurve-object")
            sub->add_option("--object", opt.object, "object to uncurve");
    }
    CLI::App* trees = app.add_subcommand("trees", "count transfer trees");
    trees->add_option("--count", trees_n, "number of leaves")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (trees->parsed()) {
            if (trees_n < 2) {
                std::cerr << "trees --count needs at least 2 leaves\n";
                return 2;
            }
            std::cout << count_trees((int)trees_n) << "\n";
            return 0;
        }
        for (auto& [name, fn] : commands)
            if (app.get_subcommand(name)->parsed()) return finish(fn(opt), opt, name.c_str());
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const SchemaError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const InvariantError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const BaseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const ModelError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    }
}
