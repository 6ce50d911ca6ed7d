#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ade/base.hpp"
#include "ade/ratmat.hpp"

using namespace ade;

TEST_CASE("base ring arithmetic is exact and truncated") {
    auto B = make_base(2, 3); // Q[q1,q2]/m^3
    Coefficient q1 = Coefficient::monomial(B, {1, 0});
    Coefficient q2 = Coefficient::monomial(B, {0, 1});
    Coefficient c = Coefficient(B, Rational(3, 2)) + q1 * q2;
    CHECK(c.str() == "3/2 + q1*q2");
    CHECK((q1 * q1 * q1).is_zero());           // m^3 = 0
    CHECK(!(q1 * q1 * q2).is_zero() == false); // degree 3 dies too
    CHECK((q1 * q2 * q2).is_zero());
    CHECK(c.madic_order() == 0);
    CHECK((c - Coefficient(B, Rational(3, 2))).madic_order() == 2);
    CHECK(Coefficient(B).madic_order() == 3); // order of zero = truncation
}

TEST_CASE("monomial relations act as a divisibility filter") {
    // B = Q[q1,q2]/(q1*q2, m^4): mixed monomials vanish.
    auto B = make_base(2, 4, {{1, 1}});
    Coefficient q1 = Coefficient::monomial(B, {1, 0});
    Coefficient q2 = Coefficient::monomial(B, {0, 1});
    CHECK((q1 * q2).is_zero());
    CHECK(!(q1 * q1).is_zero());
    CHECK((q1 * q1 * q1).str() == "q1^3");
    // Q-basis of B: 1, q1, q1^2, q1^3, q2, q2^2, q2^3.
    CHECK(B->monomial_basis().size() == 7);
}

TEST_CASE("divide_monomial is an exact quotient") {
    auto B = make_base(1, 4);
    Coefficient q = Coefficient::monomial(B, {1});
    Coefficient c = q * q * Rational(5) + q * q * q;
    Coefficient d = c.divide_monomial({2});
    CHECK(d.str() == "5 + q");
    CHECK_THROWS_AS(c.divide_monomial({3}), BaseError);
    CHECK(Coefficient(B).divide_monomial({2}).is_zero());
}

TEST_CASE("textual form matches the documented shape") {
    auto B = make_base(2, 4);
    Coefficient c = Coefficient::monomial(B, {2, 1}, Rational(3, 2)) -
                    Coefficient::monomial(B, {0, 3}) + Coefficient(B, Rational(-1, 7));
    // Lex order on exponent vectors: (0,0) < (0,3) < (2,1).
    CHECK(c.str() == "-1/7 - q2^3 + 3/2 q1^2*q2");
    CHECK(Coefficient(B).str() == "0");
}

TEST_CASE("rational matrices: rref, inverse, kernel, solve") {
    RatMat m(3, 3);
    // [[1,2,3],[2,4,6],[1,0,1]] has rank 2.
    int vals[3][3] = {{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m.at(i, j) = vals[i][j];
    CHECK(m.rank() == 2);
    auto ker = m.kernel_basis();
    REQUIRE(ker.size() == 1);
    CHECK(is_zero(m.apply(ker[0])));
    CHECK(!m.inverse().has_value());

    RatMat id = RatMat::identity(3);
    auto inv = id.inverse();
    REQUIRE(inv.has_value());
    CHECK(*inv == id);

    auto sol = m.solve({6, 12, 2}); // = column sums
    REQUIRE(sol.has_value());
    CHECK(m.apply(*sol) == QVector{6, 12, 2});
    CHECK(!m.solve({1, 0, 0}).has_value()); // inconsistent
}

TEST_CASE("deterministic leftmost pivots") {
    RatMat m(2, 3);
    m.at(0, 1) = 2;
    m.at(1, 2) = 5;
    auto piv = m.rref_in_place();
    CHECK(piv == std::vector<int>{1, 2});
    CHECK(m.at(0, 1) == 1);
    CHECK(m.at(1, 2) == 1);
}
