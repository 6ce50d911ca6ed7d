#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ade/twisted.hpp"
#include "instances.hpp"

#include <random>

using namespace ade;
using namespace ade::testing;

namespace {

// (A[1] + A, delta = [[0, c], [q id, 0]]) over the centrally curved algebra;
// the order-zero entry c sits strictly above the diagonal, the infinitesimal
// entry q id below it.
TwObject flat_double(BaseSpecPtr base) {
    TwObject X;
    X.name = "D";
    X.summands = {{0, 1}, {0, 0}};
    X.delta = AddMorphism(base, 1);
    // block 0 -> 1 has C-degree 1 - 0 + 1 = 2: c
    X.delta.set_block(0, 1, VectorB::unit(base, 1));
    // block 1 -> 0 has C-degree 1 - 1 + 0 = 0: q e
    X.delta.set_block(1, 0, VectorB::unit(base, 0) * Coefficient::monomial(base, {1}));
    return X;
}

TwObject plain(const std::string& name, int obj, BaseSpecPtr base) {
    return TwObject{name, {{obj, 0}}, AddMorphism(base, 1)};
}

} // namespace

TEST_CASE("the canonical double of a centrally curved algebra is flat") {
    AInfCategory cat = central_curvature_algebra();
    BaseSpecPtr base = make_base(1, 4);
    AInfDeformation def = central_curvature_deformation(cat, base);

    TwObject X = flat_double(base);
    CHECK(validate_tw_object(def, X).ok);
    CHECK(tw_curvature(def, X).is_zero());

    // the one-summand object keeps its curvature q c
    TwObject A = plain("A", 0, base);
    AddMorphism cu = tw_curvature(def, A);
    CHECK(cu.block(0, 0) == VectorB::unit(base, 1) * Coefficient::monomial(base, {1}));
}

TEST_CASE("the materialized twisted completion satisfies the curved relations") {
    AInfCategory cat = central_curvature_algebra();
    BaseSpecPtr base = make_base(1, 4);
    AInfDeformation def = central_curvature_deformation(cat, base);
    TwCategory twc = materialize_tw(def, {plain("A", 0, base), flat_double(base)});
    CHECK(twc.ref->hom_dim(1, 1) == 8);
    CHECK(twc.def.curvature.count(0) == 1); // plain object stays curved
    CHECK(twc.def.curvature.count(1) == 0); // the double is flat
    RelationReport rep = check_tw_relations(twc, 4);
    CHECK_MESSAGE(rep.ok, (rep.violations.empty() ? std::string() : rep.violations.front()));

    // pack/unpack round-trips block morphisms
    AddMorphism d = flat_double(base).delta;
    CHECK(twc.unpack(1, 1, twc.pack(1, 1, d), 1) == d);
}

TEST_CASE("shift twists are load-bearing for additive completions") {
    AInfCategory cat = four_dim_dg();
    BaseSpecPtr base = make_base(1, 2);
    AInfDeformation def = AInfDeformation::trivial(cat, base);
    TwObject Y{"Y", {{0, 0}, {0, 1}}, AddMorphism(base, 1)};

    TwCategory good = materialize_tw(def, {Y});
    CHECK(check_tw_relations(good, 3).ok);

    SignTable broken;
    broken.shift_twist = 0;
    TwCategory bad = materialize_tw(def, {Y}, broken);
    CHECK(!check_tw_relations(bad, 3, broken).ok);
}

TEST_CASE("a classical cone is a valid twisted complex") {
    AInfCategory cat = four_dim_dg();
    BaseSpecPtr base = make_base(1, 2);
    AInfDeformation def = AInfDeformation::trivial(cat, base);
    TwObject C{"C", {{0, 0}, {0, 1}}, AddMorphism(base, 1)};
    C.delta.set_block(0, 1, VectorB::unit(base, 0)); // id: A -> A[1], C-degree 0
    CHECK(validate_tw_object(def, C).ok);
    TwCategory twc = materialize_tw(def, {C, plain("A", 0, base)});
    RelationReport rep = check_tw_relations(twc, 3);
    CHECK_MESSAGE(rep.ok, (rep.violations.empty() ? std::string() : rep.violations.front()));

    // a lower-triangular mod-m differential is rejected
    TwObject Bad{"B", {{0, 0}, {0, 1}}, AddMorphism(base, 1)};
    Bad.delta.set_block(1, 0, VectorB::unit(base, 2)); // z: C-degree 2, but i >= j
    CHECK(!validate_tw_object(def, Bad).ok);
}

TEST_CASE("twisting deforms products consistently and can be undone") {
    AInfCategory cat = four_dim_dg();
    BaseSpecPtr base = make_base(1, 3);
    AInfDeformation triv = AInfDeformation::trivial(cat, base);
    VectorB qx = VectorB::unit(base, 1) * Coefficient::monomial(base, {1});
    AInfDeformation twisted = twist_by(triv, {{0, qx}});
    CHECK(check_relations_serial(twisted, 4).ok);
    // curvature = mu^1(q x) + mu^2(q x, q x) = -q z
    VectorB want(base);
    want.set_comp(2, Coefficient::monomial(base, {1}, -1));
    CHECK(twisted.curvature_of(0) == want);

    Splitting sp = compute_splitting(cat);
    UncurveResult res = attempt_uncurve_object(twisted, sp, 0);
    REQUIRE(res.ok);
    CHECK(object_twist_curvature(twisted, 0, res.r).is_zero());
    AInfDeformation flat = twist_by(twisted, {{0, res.r}});
    CHECK(flat.curvature.empty());
    CHECK(check_relations_serial(flat, 4).ok);
}

TEST_CASE("central curvature is obstructed against uncurving") {
    AInfCategory cat = central_curvature_algebra();
    BaseSpecPtr base = make_base(1, 3);
    AInfDeformation def = central_curvature_deformation(cat, base);
    Splitting sp = compute_splitting(cat);
    UncurveResult res = attempt_uncurve_object(def, sp, 0);
    CHECK(!res.ok);
    CHECK(res.obstruction_order == 1);
    CHECK(res.obstruction == VectorB::unit(base, 1) * Coefficient::monomial(base, {1}));
}

TEST_CASE("random twists of flat deformations stay valid and uncurvable") {
    AInfCategory cat = massey_dg();
    BaseSpecPtr base = make_base(1, 3);
    AInfDeformation triv = AInfDeformation::trivial(cat, base);
    Splitting sp = compute_splitting(cat);
    std::mt19937 rng(23);
    for (int trial = 0; trial < 6; ++trial) {
        VectorB r(base);
        for (int t : {1, 2}) { // a, u: the degree-1 elements
            if (rng() % 2) continue;
            Rational c((int)(rng() % 5) - 2);
            if (c == 0) c = 1;
            unsigned e = 1 + rng() % 2;
            r.set_comp(t, Coefficient::monomial(base, {e}, c));
        }
        AInfDeformation twisted = twist_by(triv, {{0, r}});
        CHECK(check_relations_serial(twisted, 4).ok);
        UncurveResult res = attempt_uncurve_object(twisted, sp, 0);
        CHECK(res.ok);
        if (res.ok) CHECK(object_twist_curvature(twisted, 0, res.r).is_zero());
    }
}
