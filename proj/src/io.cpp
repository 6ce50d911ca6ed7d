#include "ade/io.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace ade {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// files

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError("cannot write file: " + path);
    out << bytes;
}

// ---------------------------------------------------------------------------
// schema helpers

namespace {

[[noreturn]] void schema_fail(const std::string& path, const std::string& what) {
    throw SchemaError(path + ": " + what);
}

const json& field(const json& j, const std::string& path, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) schema_fail(path + "." + key, "missing required field");
    return *it;
}

const json* opt_field(const json& j, const char* key) {
    auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

int get_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) schema_fail(path, "expected an integer");
    return j.get<int>();
}

std::string get_str(const json& j, const std::string& path) {
    if (!j.is_string()) schema_fail(path, "expected a string");
    return j.get<std::string>();
}

const json& get_arr(const json& j, const std::string& path) {
    if (!j.is_array()) schema_fail(path, "expected an array");
    return j;
}

const json& get_obj(const json& j, const std::string& path) {
    if (!j.is_object()) schema_fail(path, "expected an object");
    return j;
}

Rational parse_rational(const json& j, const std::string& path) {
    if (!j.is_string()) schema_fail(path, "expected a rational string like \"3/2\"");
    try {
        return Rational(j.get<std::string>());
    } catch (const std::exception&) {
        schema_fail(path, "not a rational number: " + j.get<std::string>());
    }
}

Exponents parse_exponents(const json& j, const std::string& path, int vars) {
    const json& arr = get_arr(j, path);
    if ((int)arr.size() != vars)
        schema_fail(path, "expected " + std::to_string(vars) + " exponents");
    Exponents e;
    for (size_t i = 0; i < arr.size(); ++i) {
        int v = get_int(arr[i], path + "[" + std::to_string(i) + "]");
        if (v < 0) schema_fail(path + "[" + std::to_string(i) + "]", "negative exponent");
        e.push_back((unsigned)v);
    }
    return e;
}

// A coefficient is a rational string or an array [{coeff, exponents}].
Coefficient parse_coeff(const json& j, const std::string& path, const BaseSpecPtr& base) {
    if (j.is_string()) return Coefficient(base, parse_rational(j, path));
    if (!j.is_array()) schema_fail(path, "expected a rational string or a term array");
    Coefficient c(base);
    for (size_t i = 0; i < j.size(); ++i) {
        std::string p = path + "[" + std::to_string(i) + "]";
        const json& term = get_obj(j[i], p);
        Rational r = parse_rational(field(term, p, "coeff"), p + ".coeff");
        Exponents e = parse_exponents(field(term, p, "exponents"), p + ".exponents",
                                      base->num_vars);
        c += Coefficient::monomial(base, e, r);
    }
    return c;
}

// A combination over a hom basis: [{coeff, name}].  Returns the key and fills
// the target hom space implied by the names.
VectorB parse_combo(const json& j, const std::string& path, const AInfCategory& cat,
                    const BaseSpecPtr& base, int src, int tgt) {
    VectorB v(base);
    const json& arr = get_arr(j, path);
    for (size_t i = 0; i < arr.size(); ++i) {
        std::string p = path + "[" + std::to_string(i) + "]";
        const json& t = get_obj(arr[i], p);
        Coefficient c = parse_coeff(field(t, p, "coeff"), p + ".coeff", base);
        std::string name = get_str(field(t, p, "name"), p + ".name");
        int id = -1;
        try {
            id = cat.global_id(name);
        } catch (const ModelError&) {
            schema_fail(p + ".name", "unknown basis element: " + name);
        }
        const auto& e = cat.elems[id];
        if (e.src != src || e.tgt != tgt)
            schema_fail(p + ".name", "element " + name + " lies in the wrong hom space");
        v.set_comp(e.idx, v.comp(e.idx) + c);
    }
    return v;
}

std::vector<int> parse_inputs(const json& j, const std::string& path,
                              const AInfCategory& cat, std::vector<std::string>* names) {
    const json& arr = get_arr(j, path);
    if (arr.empty()) schema_fail(path, "empty input tuple");
    std::vector<int> key;
    for (size_t i = 0; i < arr.size(); ++i) {
        std::string p = path + "[" + std::to_string(i) + "]";
        std::string name = get_str(arr[i], p);
        try {
            key.push_back(cat.global_id(name));
        } catch (const ModelError&) {
            schema_fail(p, "unknown basis element: " + name);
        }
        if (names) names->push_back(name);
    }
    return key;
}

BaseSpecPtr parse_base(const json& j) {
    const json& b = get_obj(j, "base");
    int vars = get_int(field(b, "base", "vars"), "base.vars");
    int trunc = get_int(field(b, "base", "truncation"), "base.truncation");
    if (vars < 0) schema_fail("base.vars", "must be nonnegative");
    if (trunc < 1) schema_fail("base.truncation", "must be at least 1");
    std::vector<Exponents> rels;
    if (const json* r = opt_field(b, "relations")) {
        const json& arr = get_arr(*r, "base.relations");
        for (size_t i = 0; i < arr.size(); ++i)
            rels.push_back(
                parse_exponents(arr[i], "base.relations[" + std::to_string(i) + "]", vars));
    }
    try {
        return make_base(vars, trunc, std::move(rels));
    } catch (const BaseError& e) {
        throw InvariantError(std::string("base: ") + e.what());
    }
}

std::shared_ptr<AInfCategory> parse_category(const json& j) {
    const json& c = get_obj(j, "category");
    auto cat = std::make_shared<AInfCategory>();

    if (const json* g = opt_field(c, "grading")) {
        std::string s = get_str(*g, "category.grading");
        if (s == "Z")
            cat->grading = AInfCategory::Grading::Z;
        else if (s == "Z2")
            cat->grading = AInfCategory::Grading::Z2;
        else
            schema_fail("category.grading", "expected \"Z\" or \"Z2\"");
    }
    if (const json* k = opt_field(c, "k_max")) {
        cat->k_max = get_int(*k, "category.k_max");
        if (cat->k_max < 1) schema_fail("category.k_max", "must be at least 1");
    }
    if (const json* f = opt_field(c, "complete")) {
        if (!f->is_boolean()) schema_fail("category.complete", "expected a boolean");
        cat->complete = f->get<bool>();
    }

    const json& objs = get_arr(field(c, "category", "objects"), "category.objects");
    for (size_t i = 0; i < objs.size(); ++i) {
        std::string name = get_str(objs[i], "category.objects[" + std::to_string(i) + "]");
        for (const auto& o : cat->objects)
            if (o == name)
                schema_fail("category.objects[" + std::to_string(i) + "]",
                            "duplicate object name: " + name);
        cat->add_object(name);
    }

    auto object_of = [&](const json& v, const std::string& path) {
        std::string name = get_str(v, path);
        for (int i = 0; i < (int)cat->objects.size(); ++i)
            if (cat->objects[i] == name) return i;
        schema_fail(path, "unknown object: " + name);
    };

    const json& homs = get_arr(field(c, "category", "homs"), "category.homs");
    for (size_t i = 0; i < homs.size(); ++i) {
        std::string p = "category.homs[" + std::to_string(i) + "]";
        const json& h = get_obj(homs[i], p);
        int src = object_of(field(h, p, "source"), p + ".source");
        int tgt = object_of(field(h, p, "target"), p + ".target");
        std::vector<BasisElement> basis;
        const json& barr = get_arr(field(h, p, "basis"), p + ".basis");
        for (size_t t = 0; t < barr.size(); ++t) {
            std::string bp = p + ".basis[" + std::to_string(t) + "]";
            const json& be = get_obj(barr[t], bp);
            basis.push_back({get_str(field(be, bp, "name"), bp + ".name"),
                             get_int(field(be, bp, "degree"), bp + ".degree")});
        }
        try {
            cat->add_hom(src, tgt, std::move(basis));
        } catch (const ModelError& e) {
            schema_fail(p, e.what());
        }
    }

    const json& ids = get_obj(field(c, "category", "identities"), "category.identities");
    for (auto it = ids.begin(); it != ids.end(); ++it) {
        std::string p = "category.identities." + it.key();
        int obj = -1;
        for (int i = 0; i < (int)cat->objects.size(); ++i)
            if (cat->objects[i] == it.key()) obj = i;
        if (obj < 0) schema_fail(p, "unknown object: " + it.key());
        try {
            cat->set_identity(obj, get_str(it.value(), p));
        } catch (const ModelError& e) {
            schema_fail(p, e.what());
        }
    }
    for (int i = 0; i < (int)cat->objects.size(); ++i)
        if (!cat->identity_of.count(i))
            schema_fail("category.identities", "no identity for object " + cat->objects[i]);

    if (const json* prods = opt_field(c, "products")) {
        const json& arr = get_arr(*prods, "category.products");
        for (size_t i = 0; i < arr.size(); ++i) {
            std::string p = "category.products[" + std::to_string(i) + "]";
            const json& pr = get_obj(arr[i], p);
            std::vector<std::string> names;
            parse_inputs(field(pr, p, "inputs"), p + ".inputs", *cat, &names);
            if (const json* a = opt_field(pr, "arity"))
                if (get_int(*a, p + ".arity") != (int)names.size())
                    schema_fail(p + ".arity", "does not match the number of inputs");
            std::vector<std::pair<Rational, std::string>> value;
            const json& out = get_arr(field(pr, p, "output"), p + ".output");
            for (size_t t = 0; t < out.size(); ++t) {
                std::string op = p + ".output[" + std::to_string(t) + "]";
                const json& term = get_obj(out[t], op);
                value.emplace_back(parse_rational(field(term, op, "coeff"), op + ".coeff"),
                                   get_str(field(term, op, "name"), op + ".name"));
            }
            try {
                cat->set_product(names, value);
            } catch (const ModelError& e) {
                schema_fail(p, e.what());
            }
        }
    }
    return cat;
}

std::shared_ptr<AInfDeformation> parse_deformation(const json& j, const AInfCategory& cat,
                                                   const BaseSpecPtr& base) {
    const json& d = get_obj(j, "deformation");
    auto def = std::make_shared<AInfDeformation>(AInfDeformation::trivial(cat, base));
    if (const json* k = opt_field(d, "k_max")) {
        def->k_max = get_int(*k, "deformation.k_max");
        if (def->k_max < cat.k_max)
            schema_fail("deformation.k_max", "must be at least the category k_max");
    }
    if (const json* f = opt_field(d, "complete")) {
        if (!f->is_boolean()) schema_fail("deformation.complete", "expected a boolean");
        def->complete = f->get<bool>();
    }

    if (const json* prods = opt_field(d, "products_q")) {
        const json& arr = get_arr(*prods, "deformation.products_q");
        for (size_t i = 0; i < arr.size(); ++i) {
            std::string p = "deformation.products_q[" + std::to_string(i) + "]";
            const json& pr = get_obj(arr[i], p);
            std::vector<std::string> names;
            std::vector<int> key = parse_inputs(field(pr, p, "inputs"), p + ".inputs", cat, &names);
            if (const json* a = opt_field(pr, "arity"))
                if (get_int(*a, p + ".arity") != (int)key.size())
                    schema_fail(p + ".arity", "does not match the number of inputs");
            std::vector<int> chain;
            try {
                chain = cat.object_chain(key);
            } catch (const ModelError& e) {
                schema_fail(p + ".inputs", e.what());
            }
            VectorB full = parse_combo(field(pr, p, "output"), p + ".output", cat, base,
                                       chain.front(), chain.back());
            VectorB corr = full - VectorB::from_rational(base, cat.product(key));
            try {
                def->set_correction(names, std::move(corr));
            } catch (const ModelError& e) {
                throw InvariantError(p + ": " + e.what());
            }
        }
    }

    if (const json* curv = opt_field(d, "curvature")) {
        const json& arr = get_arr(*curv, "deformation.curvature");
        for (size_t i = 0; i < arr.size(); ++i) {
            std::string p = "deformation.curvature[" + std::to_string(i) + "]";
            const json& e = get_obj(arr[i], p);
            std::string name = get_str(field(e, p, "object"), p + ".object");
            int obj = -1;
            for (int t = 0; t < (int)cat.objects.size(); ++t)
                if (cat.objects[t] == name) obj = t;
            if (obj < 0) schema_fail(p + ".object", "unknown object: " + name);
            VectorB v = parse_combo(field(e, p, "value"), p + ".value", cat, base, obj, obj);
            try {
                def->set_curvature(obj, std::move(v));
            } catch (const ModelError& ex) {
                throw InvariantError(p + ": " + ex.what());
            }
        }
    }
    return def;
}

std::vector<TwObject> parse_twisted(const json& j, const AInfCategory& cat,
                                    const BaseSpecPtr& base) {
    std::vector<TwObject> out;
    const json& arr = get_arr(j, "twisted");
    for (size_t i = 0; i < arr.size(); ++i) {
        std::string p = "twisted[" + std::to_string(i) + "]";
        const json& t = get_obj(arr[i], p);
        TwObject X;
        X.name = get_str(field(t, p, "name"), p + ".name");
        const json& sums = get_arr(field(t, p, "summands"), p + ".summands");
        for (size_t s = 0; s < sums.size(); ++s) {
            std::string sp = p + ".summands[" + std::to_string(s) + "]";
            const json& se = get_obj(sums[s], sp);
            std::string name = get_str(field(se, sp, "object"), sp + ".object");
            int obj = -1;
            for (int q = 0; q < (int)cat.objects.size(); ++q)
                if (cat.objects[q] == name) obj = q;
            if (obj < 0) schema_fail(sp + ".object", "unknown object: " + name);
            int shift = 0;
            if (const json* sh = opt_field(se, "shift")) shift = get_int(*sh, sp + ".shift");
            X.summands.push_back({obj, shift});
        }
        X.delta = AddMorphism(base, 1);
        if (const json* dl = opt_field(t, "delta")) {
            const json& darr = get_arr(*dl, p + ".delta");
            for (size_t s = 0; s < darr.size(); ++s) {
                std::string dp = p + ".delta[" + std::to_string(s) + "]";
                const json& de = get_obj(darr[s], dp);
                int from = get_int(field(de, dp, "from"), dp + ".from");
                int to = get_int(field(de, dp, "to"), dp + ".to");
                if (from < 0 || from >= (int)X.summands.size())
                    schema_fail(dp + ".from", "summand index out of range");
                if (to < 0 || to >= (int)X.summands.size())
                    schema_fail(dp + ".to", "summand index out of range");
                VectorB v = parse_combo(field(de, dp, "value"), dp + ".value", cat, base,
                                        X.summands[from].obj, X.summands[to].obj);
                X.delta.set_block(from, to, std::move(v));
            }
        }
        out.push_back(std::move(X));
    }
    return out;
}

std::shared_ptr<HochschildCochain> parse_gauge(const json& j, const AInfCategory& cat,
                                               const BaseSpecPtr& base) {
    const json& g = get_obj(j, "gauge");
    int deg = 0;
    if (const json* d = opt_field(g, "degree")) deg = get_int(*d, "gauge.degree");
    int a_max = get_int(field(g, "gauge", "a_max"), "gauge.a_max");
    auto phi =
        std::make_shared<HochschildCochain>(HochschildCochain::zero(cat, base, deg, a_max));
    if (const json* c0 = opt_field(g, "components0")) {
        const json& arr = get_arr(*c0, "gauge.components0");
        for (size_t i = 0; i < arr.size(); ++i) {
            std::string p = "gauge.components0[" + std::to_string(i) + "]";
            const json& e = get_obj(arr[i], p);
            std::string name = get_str(field(e, p, "object"), p + ".object");
            int obj = -1;
            for (int t = 0; t < (int)cat.objects.size(); ++t)
                if (cat.objects[t] == name) obj = t;
            if (obj < 0) schema_fail(p + ".object", "unknown object: " + name);
            VectorB v = parse_combo(field(e, p, "value"), p + ".value", cat, base, obj, obj);
            try {
                phi->set0(obj, std::move(v));
            } catch (const ModelError& ex) {
                throw InvariantError(p + ": " + ex.what());
            }
        }
    }
    if (const json* cs = opt_field(g, "components")) {
        const json& arr = get_arr(*cs, "gauge.components");
        for (size_t i = 0; i < arr.size(); ++i) {
            std::string p = "gauge.components[" + std::to_string(i) + "]";
            const json& e = get_obj(arr[i], p);
            std::vector<int> key = parse_inputs(field(e, p, "inputs"), p + ".inputs", cat, nullptr);
            std::vector<int> chain;
            try {
                chain = cat.object_chain(key);
            } catch (const ModelError& ex) {
                schema_fail(p + ".inputs", ex.what());
            }
            VectorB v = parse_combo(field(e, p, "value"), p + ".value", cat, base,
                                    chain.front(), chain.back());
            try {
                phi->set(key, std::move(v));
            } catch (const ModelError& ex) {
                throw InvariantError(p + ": " + ex.what());
            }
        }
    }
    return phi;
}

} // namespace

// ---------------------------------------------------------------------------
// loading

Document parse_document(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        size_t byte = e.byte > 0 ? (size_t)e.byte - 1 : 0;
        if (byte > text.size()) byte = text.size();
        size_t line = 1, col = 1;
        for (size_t i = 0; i < byte; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError("JSON parse error at line " + std::to_string(line) + ", column " +
                         std::to_string(col));
    }
    if (!j.is_object()) throw SchemaError("document: expected a JSON object");

    Document doc;
    doc.base = parse_base(field(j, "document", "base"));
    doc.category = parse_category(field(j, "document", "category"));
    if (const json* d = opt_field(j, "deformation"))
        doc.deformation = parse_deformation(*d, *doc.category, doc.base);
    if (const json* t = opt_field(j, "twisted"))
        doc.twisted = parse_twisted(*t, *doc.category, doc.base);
    if (const json* g = opt_field(j, "gauge"))
        doc.gauge_cochain = parse_gauge(*g, *doc.category, doc.base);
    return doc;
}

Document load_document(const std::string& path) { return parse_document(read_file(path)); }

// ---------------------------------------------------------------------------
// emission

namespace {

json rational_json(const Rational& r) { return json(r.str()); }

json coeff_json(const Coefficient& c) {
    if (c.is_zero()) return json("0");
    const auto& terms = c.terms();
    if (terms.size() == 1 && BaseSpec::total_degree(terms.begin()->first) == 0)
        return rational_json(terms.begin()->second);
    json arr = json::array();
    for (const auto& [e, r] : terms) {
        json t;
        t["coeff"] = rational_json(r);
        t["exponents"] = e;
        arr.push_back(std::move(t));
    }
    return arr;
}

json combo_json(const VectorB& v, const GradedBasis& basis) {
    json arr = json::array();
    for (const auto& [i, c] : v.comps()) {
        json t;
        t["coeff"] = coeff_json(c);
        t["name"] = basis.name(i);
        arr.push_back(std::move(t));
    }
    return arr;
}

json q_combo_json(const QVector& v, const GradedBasis& basis) {
    json arr = json::array();
    for (int i = 0; i < (int)v.size(); ++i) {
        if (v[i] == 0) continue;
        json t;
        t["coeff"] = rational_json(v[i]);
        t["name"] = basis.name(i);
        arr.push_back(std::move(t));
    }
    return arr;
}

json base_json(const BaseSpec& b) {
    json j;
    j["vars"] = b.num_vars;
    j["truncation"] = b.truncation;
    j["relations"] = b.relations;
    return j;
}

json inputs_json(const AInfCategory& cat, const std::vector<int>& key) {
    json arr = json::array();
    for (int id : key) arr.push_back(cat.elems[id].name);
    return arr;
}

json category_json(const AInfCategory& cat) {
    json j;
    j["grading"] = cat.grading == AInfCategory::Grading::Z ? "Z" : "Z2";
    j["k_max"] = cat.k_max;
    j["complete"] = cat.complete;
    j["objects"] = cat.objects;
    json homs = json::array();
    for (const auto& [hk, basis] : cat.homs) {
        json h;
        h["source"] = cat.objects[hk.first];
        h["target"] = cat.objects[hk.second];
        json barr = json::array();
        for (const auto& be : basis.elements) {
            json e;
            e["name"] = be.name;
            e["degree"] = be.degree;
            barr.push_back(std::move(e));
        }
        h["basis"] = std::move(barr);
        homs.push_back(std::move(h));
    }
    j["homs"] = std::move(homs);
    json ids;
    for (const auto& [obj, id] : cat.identity_of) ids[cat.objects[obj]] = cat.elems[id].name;
    j["identities"] = std::move(ids);
    json prods = json::array();
    for (const auto& [key, value] : cat.products) {
        auto chain = cat.object_chain(key);
        json p;
        p["arity"] = (int)key.size();
        p["inputs"] = inputs_json(cat, key);
        p["output"] = q_combo_json(value, cat.hom_basis(chain.front(), chain.back()));
        prods.push_back(std::move(p));
    }
    j["products"] = std::move(prods);
    return j;
}

json deformation_json(const AInfDeformation& def) {
    const AInfCategory& cat = *def.ref;
    json j;
    j["k_max"] = def.k_max;
    j["complete"] = def.complete;
    json prods = json::array();
    for (const auto& [key, corr] : def.correction) {
        auto chain = cat.object_chain(key);
        VectorB full = VectorB::from_rational(def.base, cat.product(key)) + corr;
        json p;
        p["arity"] = (int)key.size();
        p["inputs"] = inputs_json(cat, key);
        p["output"] = combo_json(full, cat.hom_basis(chain.front(), chain.back()));
        prods.push_back(std::move(p));
    }
    j["products_q"] = std::move(prods);
    json curv = json::array();
    for (const auto& [obj, v] : def.curvature) {
        json e;
        e["object"] = cat.objects[obj];
        e["value"] = combo_json(v, cat.hom_basis(obj, obj));
        curv.push_back(std::move(e));
    }
    j["curvature"] = std::move(curv);
    return j;
}

json twisted_json(const AInfCategory& cat, const std::vector<TwObject>& objs) {
    json arr = json::array();
    for (const TwObject& X : objs) {
        json t;
        t["name"] = X.name;
        json sums = json::array();
        for (const auto& s : X.summands) {
            json se;
            se["object"] = cat.objects[s.obj];
            se["shift"] = s.shift;
            sums.push_back(std::move(se));
        }
        t["summands"] = std::move(sums);
        json darr = json::array();
        for (const auto& [ij, v] : X.delta.blocks) {
            if (v.is_zero()) continue;
            json de;
            de["from"] = ij.first;
            de["to"] = ij.second;
            de["value"] =
                combo_json(v, cat.hom_basis(X.summands[ij.first].obj, X.summands[ij.second].obj));
            darr.push_back(std::move(de));
        }
        t["delta"] = std::move(darr);
        arr.push_back(std::move(t));
    }
    return arr;
}

json gauge_json(const AInfCategory& cat, const HochschildCochain& phi) {
    json j;
    j["degree"] = phi.deg;
    j["a_max"] = phi.a_max;
    json c0 = json::array();
    for (const auto& [obj, v] : phi.comp0) {
        json e;
        e["object"] = cat.objects[obj];
        e["value"] = combo_json(v, cat.hom_basis(obj, obj));
        c0.push_back(std::move(e));
    }
    j["components0"] = std::move(c0);
    json cs = json::array();
    for (const auto& [key, v] : phi.comps) {
        auto chain = cat.object_chain(key);
        json e;
        e["inputs"] = inputs_json(cat, key);
        e["value"] = combo_json(v, cat.hom_basis(chain.front(), chain.back()));
        cs.push_back(std::move(e));
    }
    j["components"] = std::move(cs);
    return j;
}

json document_json(const Document& doc) {
    json j;
    j["base"] = base_json(*doc.base);
    j["category"] = category_json(*doc.category);
    if (doc.deformation) j["deformation"] = deformation_json(*doc.deformation);
    if (!doc.twisted.empty()) j["twisted"] = twisted_json(*doc.category, doc.twisted);
    if (doc.gauge_cochain) j["gauge"] = gauge_json(*doc.category, *doc.gauge_cochain);
    return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Twist maps keyed by object, serialized as [{object, value}] in End coords.
json object_map_json(const AInfCategory& cat, const std::map<int, VectorB>& m) {
    json arr = json::array();
    for (const auto& [obj, v] : m) {
        if (v.is_zero()) continue;
        json e;
        e["object"] = cat.objects[obj];
        e["value"] = combo_json(v, cat.hom_basis(obj, obj));
        arr.push_back(std::move(e));
    }
    return arr;
}

json trace_json(const AInfCategory& cat, const std::vector<OptimizationStep>& trace) {
    json arr = json::array();
    for (const auto& step : trace) {
        json e;
        e["min_order"] = step.min_order;
        e["twist"] = object_map_json(cat, step.r);
        arr.push_back(std::move(e));
    }
    return arr;
}

} // namespace

std::string emit_document(const Document& doc) { return dump(document_json(doc)); }

std::string emit_document(const AInfCategory& cat) {
    json j;
    j["base"] = base_json(BaseSpec(0, 1));
    j["category"] = category_json(cat);
    return dump(j);
}

std::string emit_document(const AInfDeformation& def) {
    json j;
    j["base"] = base_json(*def.base);
    j["category"] = category_json(*def.ref);
    j["deformation"] = deformation_json(def);
    return dump(j);
}

std::string emit_minimal_model(const MinimalModel& mm, const AInfCategory& source) {
    json j;
    j["base"] = base_json(BaseSpec(0, 1));
    j["category"] = category_json(mm.hc);
    json fn = json::array();
    for (const auto& [key, v] : mm.functor) {
        auto chain = mm.hc.object_chain(key);
        json e;
        e["inputs"] = inputs_json(mm.hc, key);
        e["output"] = q_combo_json(v, source.hom_basis(chain.front(), chain.back()));
        fn.push_back(std::move(e));
    }
    j["functor"] = std::move(fn);
    return dump(j);
}

std::string emit_deformed_minimal_model(const DeformedMinimalModel& mm, bool with_trace) {
    const AInfCategory& src = *mm.opt.optimized.ref;
    json j;
    j["base"] = base_json(*mm.hcq.base);
    j["category"] = category_json(*mm.hc);
    j["deformation"] = deformation_json(mm.hcq);
    json fn = json::array();
    for (const auto& [key, v] : mm.functor) {
        auto chain = mm.hc->object_chain(key);
        json e;
        e["inputs"] = inputs_json(*mm.hc, key);
        e["output"] = combo_json(v, src.hom_basis(chain.front(), chain.back()));
        fn.push_back(std::move(e));
    }
    j["functor"] = std::move(fn);
    j["functor0"] = object_map_json(src, mm.functor0);
    if (with_trace) j["trace"] = trace_json(src, mm.opt.trace);
    return dump(j);
}

std::string emit_optimization(const OptimizationResult& opt, bool with_trace) {
    const AInfCategory& cat = *opt.optimized.ref;
    json j;
    j["base"] = base_json(*opt.optimized.base);
    j["category"] = category_json(cat);
    j["deformation"] = deformation_json(opt.optimized);
    j["r_total"] = object_map_json(cat, opt.r_total);
    if (with_trace) j["trace"] = trace_json(cat, opt.trace);
    return dump(j);
}

} // namespace ade
