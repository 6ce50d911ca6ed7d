#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ade/graded.hpp"

using namespace ade;

static Coefficient q(const BaseSpecPtr& b, unsigned p = 1, Rational c = 1) {
    return Coefficient::monomial(b, {p}, c);
}

TEST_CASE("vector arithmetic and slices") {
    auto B = make_base(1, 3);
    VectorB v(B);
    v.set_comp(0, Coefficient(B, 2) + q(B));
    v.set_comp(2, q(B, 2, Rational(1, 3)));
    CHECK(v.madic_order(B->truncation) == 0);
    CHECK((v - v).is_zero());
    CHECK(v.slice(2).comp(2) == q(B, 2, Rational(1, 3)));
    CHECK(v.slice(1).comp(0) == q(B));
    QVector lead = v.leading(3);
    CHECK(lead == QVector{2, 0, 0});
}

TEST_CASE("invert_leading via terminating Neumann series") {
    auto B = make_base(1, 4);
    // f = [[1, q], [q^2, 1 + q]]
    LinearMapB f(B, 2, 2);
    f.col(0).set_comp(0, Coefficient(B, 1));
    f.col(0).set_comp(1, q(B, 2));
    f.col(1).set_comp(0, q(B));
    f.col(1).set_comp(1, Coefficient(B, 1) + q(B));
    LinearMapB g = f.invert_leading();
    CHECK(f.compose(g) == LinearMapB::identity(B, 2));
    CHECK(g.compose(f) == LinearMapB::identity(B, 2));

    // Singular leading term must throw.
    LinearMapB s(B, 2, 2);
    s.col(0).set_comp(0, q(B));
    CHECK_THROWS_AS(s.invert_leading(), BaseError);
}

TEST_CASE("preimage_under solves degree by degree") {
    auto B = make_base(1, 4);
    // f: B^1 -> B^2, x -> (x + q x, q^2 x); leading term injective.
    LinearMapB f(B, 2, 1);
    f.col(0).set_comp(0, Coefficient(B, 1) + q(B));
    f.col(0).set_comp(1, q(B, 2));

    VectorB y(B);
    y.set_comp(0, Coefficient(B, 3) + q(B, 1, 3));
    y.set_comp(1, q(B, 2, 3));
    auto x = f.preimage_under(y);
    REQUIRE(x.has_value());
    CHECK(f.apply(*x) == y);
    CHECK(x->comp(0) == Coefficient(B, 3));

    VectorB bad(B);
    bad.set_comp(1, q(B)); // q in the second slot is not hit
    CHECK(!f.preimage_under(bad).has_value());
}

TEST_CASE("leading_term_map reduces mod m") {
    auto B = make_base(2, 3);
    LinearMapB f(B, 2, 2);
    f.col(0).set_comp(0, Coefficient(B, 5) + Coefficient::monomial(B, {1, 1}));
    f.col(1).set_comp(1, Coefficient::monomial(B, {0, 1}));
    RatMat lead = f.leading_term_map();
    CHECK(lead.at(0, 0) == 5);
    CHECK(lead.at(1, 1) == 0);
    CHECK(lead.rank() == 1);
}
