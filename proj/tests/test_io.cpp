#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ade/io.hpp"
#include "instances.hpp"

using namespace ade;
using namespace ade::testing;

namespace {

Document roundtrip(const std::string& text) { return parse_document(emit_document(parse_document(text))); }

const char* minimal_doc = R"({
  "base": {"vars": 0, "truncation": 1},
  "category": {
    "objects": ["X"],
    "homs": [{"source": "X", "target": "X", "basis": [{"name": "e", "degree": 0}]}],
    "identities": {"X": "e"}
  }
})";

const char* curved_doc = R"({
  "base": {"vars": 1, "truncation": 3},
  "category": {
    "k_max": 2,
    "objects": ["X"],
    "homs": [{"source": "X", "target": "X",
              "basis": [{"name": "e", "degree": 0}, {"name": "c", "degree": 2}]}],
    "identities": {"X": "e"}
  },
  "deformation": {
    "curvature": [{"object": "X", "value": [{"coeff": [{"coeff": "1", "exponents": [1]}],
                                             "name": "c"}]}]
  }
})";

} // namespace

TEST_CASE("minimal valid document loads") {
    Document doc = parse_document(minimal_doc);
    CHECK(doc.base->num_vars == 0);
    CHECK(doc.category->objects == std::vector<std::string>{"X"});
    CHECK(doc.category->hom_dim(0, 0) == 1);
    CHECK(doc.category->is_identity(0));
    CHECK(doc.deformation == nullptr);
    CHECK(check_relations(*doc.category, 3).ok);
}

TEST_CASE("curved document loads with infinitesimal curvature") {
    Document doc = parse_document(curved_doc);
    REQUIRE(doc.deformation != nullptr);
    CHECK(doc.deformation->ref == doc.category.get());
    VectorB c = doc.deformation->curvature_of(0);
    CHECK(c == VectorB::unit(doc.base, 1) * Coefficient::monomial(doc.base, {1}));
    CHECK(check_relations(*doc.deformation, 3).ok);
}

TEST_CASE("schema and invariant errors name the problem") {
    // Unknown basis element name in a product.
    std::string bad = curved_doc;
    CHECK_THROWS_AS(parse_document(R"({
      "base": {"vars": 0, "truncation": 1},
      "category": {
        "objects": ["X"],
        "homs": [{"source": "X", "target": "X", "basis": [{"name": "e", "degree": 0}]}],
        "identities": {"X": "e"},
        "products": [{"inputs": ["nope"], "output": []}]
      }
    })"),
                    SchemaError);
    // Missing required field.
    CHECK_THROWS_AS(parse_document(R"({"base": {"vars": 0}})"), SchemaError);
    // Curvature of m-adic order 0.
    CHECK_THROWS_AS(parse_document(R"({
      "base": {"vars": 1, "truncation": 2},
      "category": {
        "objects": ["X"],
        "homs": [{"source": "X", "target": "X",
                  "basis": [{"name": "e", "degree": 0}, {"name": "c", "degree": 2}]}],
        "identities": {"X": "e"}
      },
      "deformation": {"curvature": [{"object": "X", "value": [{"coeff": "1", "name": "c"}]}]}
    })"),
                    InvariantError);
    // Malformed JSON reports line and column.
    try {
        parse_document("{\n  \"base\": oops\n}");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("emission is deterministic and round trips") {
    for (const char* text : {minimal_doc, curved_doc}) {
        Document doc = parse_document(text);
        std::string once = emit_document(doc);
        std::string twice = emit_document(parse_document(once));
        CHECK(once == twice);
    }
}

TEST_CASE("deformation round trip preserves corrections and curvature") {
    auto base = make_base(1, 4);
    AInfCategory cat = massey_dg();
    AInfDeformation def = AInfDeformation::trivial(cat, base);
    VectorB v(base);
    v.set_comp(4, Coefficient::monomial(base, {2}, Rational(-3, 2))); // -3/2 q^2 m
    def.set_correction({"a", "u"}, v);
    def.set_curvature(0, VectorB::unit(base, 3) * Coefficient::monomial(base, {1}));

    Document doc = parse_document(emit_document(def));
    REQUIRE(doc.deformation != nullptr);
    CHECK(doc.deformation->correction.size() == 1);
    auto key = std::vector<int>{cat.global_id("a"), cat.global_id("u")};
    // The reloaded document owns a fresh BaseSpec, so compare term maps.
    CHECK(doc.deformation->correction.at(key).comp(4) == v.comp(4));
    CHECK(doc.deformation->curvature_of(0).comp(3) == def.curvature_of(0).comp(3));
    CHECK(emit_document(*doc.deformation) == emit_document(def));
}

TEST_CASE("classical category emission round trips products") {
    AInfCategory cat = four_dim_dg();
    Document doc = parse_document(emit_document(cat));
    CHECK(doc.category->products == cat.products);
    CHECK(doc.category->k_max == cat.k_max);
    CHECK(emit_document(*doc.category) == emit_document(cat));
}

TEST_CASE("twisted complexes and gauge cochains round trip") {
    auto base = make_base(1, 3);
    AInfCategory cat = central_curvature_algebra();
    AInfDeformation def = central_curvature_deformation(cat, base);

    Document doc;
    doc.base = base;
    doc.category = std::make_shared<AInfCategory>(cat);
    doc.deformation = std::make_shared<AInfDeformation>(
        central_curvature_deformation(*doc.category, base));
    TwObject X;
    X.name = "D";
    X.summands = {{0, 1}, {0, 0}};
    X.delta = AddMorphism(base, 1);
    X.delta.set_block(0, 1, VectorB::unit(base, 1));
    X.delta.set_block(1, 0, VectorB::unit(base, 0) * Coefficient::monomial(base, {1}));
    doc.twisted.push_back(X);
    auto phi = std::make_shared<HochschildCochain>(
        HochschildCochain::zero(*doc.category, base, -1, 2));
    phi->set0(0, VectorB::unit(base, 0) * Coefficient::monomial(base, {1}));
    doc.gauge_cochain = phi;

    std::string once = emit_document(doc);
    Document back = parse_document(once);
    REQUIRE(back.twisted.size() == 1);
    CHECK(back.twisted[0].summands == X.summands);
    CHECK(back.twisted[0].delta.blocks.size() == 2);
    REQUIRE(back.gauge_cochain != nullptr);
    CHECK(back.gauge_cochain->deg == -1);
    CHECK(back.gauge_cochain->at0(0).comp(0) == phi->at0(0).comp(0));
    CHECK(emit_document(back) == once);
}

TEST_CASE("minimal model artifacts load and verify") {
    AInfCategory cat = massey_dg();
    Splitting sp = compute_splitting(cat);
    MinimalModel mm = minimal_model(cat, sp, 4);
    Document doc = parse_document(emit_minimal_model(mm, cat));
    CHECK(!doc.category->complete);
    CHECK(check_relations(*doc.category, 6).ok);

    auto base = make_base(1, 4);
    AInfDeformation def = central_curvature_deformation(central_curvature_algebra(), base);
    // Rebuild against a stable category copy.
    auto catp = std::make_shared<AInfCategory>(central_curvature_algebra());
    AInfDeformation cdef = central_curvature_deformation(*catp, base);
    Splitting csp = compute_splitting(*catp);
    DeformedMinimalModel dmm = deformed_minimal_model(cdef, csp, 4);
    Document out = parse_document(emit_deformed_minimal_model(dmm, true));
    REQUIRE(out.deformation != nullptr);
    CHECK(check_relations(*out.deformation, 6).ok);
    CHECK(emit_document(*out.deformation) == emit_document(dmm.hcq));
}
