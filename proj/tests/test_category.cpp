#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ade/category.hpp"
#include "instances.hpp"

using namespace ade;
using namespace ade::testing;

// ---------------------------------------------------------------------------
// Independent oracles for the explicitly displayed low-arity relations, with
// hard-coded literal signs.  These deliberately do not consult the SignTable.
// ---------------------------------------------------------------------------

static QVector apply_linear(const AInfCategory& cat, const std::vector<int>& prefix,
                            const QVector& inner, int isrc, int itgt,
                            const std::vector<int>& suffix) {
    // product(prefix ++ [basis of inner] ++ suffix), extended linearly.
    const auto& ids = cat.hom_elems.at({isrc, itgt});
    QVector out;
    for (int j = 0; j < (int)inner.size(); ++j) {
        if (inner[j] == 0) continue;
        std::vector<int> key = prefix;
        key.push_back(ids[j]);
        key.insert(key.end(), suffix.begin(), suffix.end());
        QVector v = cat.product(key);
        if (out.empty()) out.assign(v.size(), 0);
        for (int t = 0; t < (int)v.size(); ++t) out[t] += inner[j] * v[t];
    }
    return out;
}

static QVector& acc(QVector& total, const QVector& term, int sgn) {
    if (term.empty()) return total;
    if (total.empty()) total.assign(term.size(), 0);
    for (int t = 0; t < (int)term.size(); ++t) total[t] += Rational(sgn) * term[t];
    return total;
}

// ||a|| parity helpers
static int par(const AInfCategory& cat, int id) { return ((cat.rdeg(id) % 2) + 2) % 2; }

// mu^1(mu^1(a)) = 0
static QVector oracle_rel1(const AInfCategory& cat, int a) {
    const auto& ea = cat.elems[a];
    return apply_linear(cat, {}, cat.product({a}), ea.src, ea.tgt, {});
}

// (-1)^{||b||} mu^2(mu^1(a), b) + mu^2(a, mu^1(b)) + mu^1(mu^2(a, b)) = 0
static QVector oracle_rel2(const AInfCategory& cat, int a, int b) {
    const auto& ea = cat.elems[a];
    const auto& eb = cat.elems[b];
    QVector total;
    acc(total, apply_linear(cat, {}, cat.product({a}), ea.src, ea.tgt, {b}),
        par(cat, b) ? -1 : 1);
    acc(total, apply_linear(cat, {a}, cat.product({b}), eb.src, eb.tgt, {}), 1);
    acc(total, apply_linear(cat, {}, cat.product({a, b}), eb.src, ea.tgt, {}), 1);
    return total;
}

// full three-input relation, all six terms with literal signs
static QVector oracle_rel3(const AInfCategory& cat, int a, int b, int c) {
    const auto& ea = cat.elems[a];
    const auto& eb = cat.elems[b];
    const auto& ec = cat.elems[c];
    QVector total;
    int sb = par(cat, b), sc = par(cat, c);
    // mu^3 outer with mu^1 inner
    acc(total, apply_linear(cat, {a, b}, cat.product({c}), ec.src, ec.tgt, {}), 1);
    acc(total, apply_linear(cat, {a}, cat.product({b}), eb.src, eb.tgt, {c}), sc ? -1 : 1);
    acc(total, apply_linear(cat, {}, cat.product({a}), ea.src, ea.tgt, {b, c}),
        (sb + sc) % 2 ? -1 : 1);
    // mu^2 outer with mu^2 inner
    acc(total, apply_linear(cat, {a}, cat.product({b, c}), ec.src, eb.tgt, {}), 1);
    acc(total, apply_linear(cat, {}, cat.product({a, b}), eb.src, ea.tgt, {c}), sc ? -1 : 1);
    // mu^1 outer with mu^3 inner
    acc(total, apply_linear(cat, {}, cat.product({a, b, c}), ec.src, ea.tgt, {}), 1);
    return total;
}

TEST_CASE("generic defect agrees with the displayed low-arity relations") {
    for (const AInfCategory& cat : {four_dim_dg(), massey_dg()}) {
        for (const auto& key : composable_tuples(cat, 1)) {
            QVector d = ainf_defect(cat, key);
            QVector o = oracle_rel1(cat, key[0]);
            if (o.empty()) o.assign(d.size(), 0);
            CHECK(d == o);
        }
        for (const auto& key : composable_tuples(cat, 2)) {
            QVector d = ainf_defect(cat, key);
            QVector o = oracle_rel2(cat, key[0], key[1]);
            if (o.empty()) o.assign(d.size(), 0);
            CHECK(d == o);
        }
        for (const auto& key : composable_tuples(cat, 3)) {
            QVector d = ainf_defect(cat, key);
            QVector o = oracle_rel3(cat, key[0], key[1], key[2]);
            if (o.empty()) o.assign(d.size(), 0);
            CHECK(d == o);
        }
    }
}

TEST_CASE("shipped dg instances satisfy the relations") {
    for (const AInfCategory& cat : {four_dim_dg(), massey_dg(), three_dim_dg(),
                                    central_curvature_algebra(), hom_complex_category()}) {
        RelationReport rep = check_relations_serial(cat, 4);
        CHECK_MESSAGE(rep.ok, (rep.violations.empty() ? std::string() : rep.violations.front()));
    }
}

TEST_CASE("relation check has nonzero canceling terms, so each sign is load-bearing") {
    AInfCategory cat = four_dim_dg();
    SignTable flipped;
    flipped.relation_insertion = 0;
    CHECK(!check_relations_serial(cat, 3, flipped).ok);
    SignTable flipped2;
    flipped2.unit_left = 0;
    CHECK(!check_relations_serial(cat, 3, flipped2).ok);
}

TEST_CASE("parallel and serial checkers produce identical reports") {
    AInfCategory cat = massey_dg();
    RelationReport a = check_relations(cat, 4, 4);
    RelationReport b = check_relations_serial(cat, 4);
    CHECK(a.ok == b.ok);
    CHECK(a.tuples_checked == b.tuples_checked);
    CHECK(a.violations == b.violations);

    // Same comparison on a deliberately broken category (d(z) = m kills d^2 = 0).
    cat.set_product({"p"}, {{1, "m"}});
    RelationReport c = check_relations(cat, 4, 4);
    RelationReport d = check_relations_serial(cat, 4);
    CHECK(!c.ok);
    CHECK(c.violations == d.violations);
}

TEST_CASE("unitality and degree bookkeeping are verified") {
    AInfCategory cat = four_dim_dg();
    cat.set_product({"x", "e"}, {{2, "x"}}); // breaks mu^2(a, id) = a
    CHECK(!check_relations_serial(cat, 2).ok);

    AInfCategory cat2 = four_dim_dg();
    cat2.set_product({"x"}, {{1, "x"}}); // wrong degree
    CHECK(!check_relations_serial(cat2, 2).ok);
}

TEST_CASE("curved deformations: displayed first relations and full checker") {
    auto B = make_base(1, 4);
    AInfCategory cat = central_curvature_algebra();
    AInfDeformation def = central_curvature_deformation(cat, B);

    // mu^1(mu^0) = 0 is the empty-tuple relation.
    CHECK(curved_defect_object(def, 0).is_zero());

    // one-input relation oracle: mu^1(mu^1 a) + (-1)^{||a||} mu^2(mu^0, a) + mu^2(a, mu^0)
    for (const auto& key : composable_tuples(cat, 1)) {
        int a = key[0];
        VectorB curv = def.curvature_of(0);
        VectorB total(B);
        VectorB m1a = def.product_q({a});
        // mu^1(mu^1(a)) term
        for (const auto& [j, c] : m1a.comps())
            total += def.product_q({cat.hom_elems.at({0, 0})[j]}) * c;
        for (const auto& [j, c] : curv.comps()) {
            int cid = cat.hom_elems.at({0, 0})[j];
            total += def.product_q({cid, a}) * (c * Rational(par(cat, a) ? -1 : 1));
            total += def.product_q({a, cid}) * c;
        }
        CHECK(total == curved_defect(def, key));
        CHECK(total.is_zero());
    }

    RelationReport rep = check_relations_serial(def, 4);
    CHECK_MESSAGE(rep.ok, (rep.violations.empty() ? std::string() : rep.violations.front()));
}

TEST_CASE("deformed-differential instances satisfy the curved relations") {
    auto B = make_base(1, 4);
    AInfCategory c1 = d_zero_category();
    AInfDeformation d1 = d_zero_deformation(c1, B);
    CHECK(check_relations_serial(d1, 4).ok);

    AInfCategory c2 = hom_complex_category();
    AInfDeformation d2 = hom_complex_deformation(c2, B);
    CHECK(check_relations_serial(d2, 4).ok);

    // parallel variant agrees
    RelationReport a = check_relations(d1, 4, 3);
    RelationReport b = check_relations_serial(d1, 4);
    CHECK(a.ok == b.ok);
    CHECK(a.tuples_checked == b.tuples_checked);
}

TEST_CASE("structural validation of deformations") {
    auto B = make_base(1, 3);
    AInfCategory cat = three_dim_dg();
    AInfDeformation def = AInfDeformation::trivial(cat, B);
    VectorB v(B);
    v.set_comp(2, Coefficient(B, 1)); // constant term: not infinitesimal
    CHECK_THROWS_AS(def.set_correction({"e"}, v), ModelError);
    VectorB w(B);
    w.set_comp(1, Coefficient::monomial(B, {1})); // x has degree 1, curvature needs 2
    def.curvature[0] = w;
    CHECK(!check_relations_serial(def, 2).ok);
}

TEST_CASE("multilinear evaluation matches basis expansion") {
    auto B = make_base(1, 3);
    AInfCategory cat = four_dim_dg();
    AInfDeformation def = AInfDeformation::trivial(cat, B);
    VectorB vx = VectorB::unit(B, 1) * Coefficient(B, 2); // 2 x
    VectorB vz(B);
    vz.set_comp(2, Coefficient::monomial(B, {1}, 3)); // 3q z
    VectorB r = def.evaluate_product({vx, vz}, {0, 0, 0}); // mu^2(2x, 3q z)
    // mu^2(x, z) = (-1)^{|z|} x*z = w
    VectorB expect(B);
    expect.set_comp(3, Coefficient::monomial(B, {1}, 6));
    CHECK(r == expect);
}
