#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ade/splitting.hpp"
#include "instances.hpp"

using namespace ade;
using namespace ade::testing;

static QVector unit_vec(int n, int i) {
    QVector v(n, 0);
    v[i] = 1;
    return v;
}

TEST_CASE("splitting of the four-dimensional dg algebra") {
    AInfCategory cat = four_dim_dg();
    Splitting sp = compute_splitting(cat);
    const HomSplitting& s = sp.spaces.at({0, 0});
    // mu^1(x) = -z, everything else closed: H = {e, w}, I = {z}, R = {x}.
    CHECK(s.dim_h() == 2);
    CHECK(s.dim_r() == 1);
    CHECK(s.R[0] == unit_vec(4, 1));
    CHECK(s.I[0] == scale(unit_vec(4, 2), -1));
    CHECK(s.H[0] == unit_vec(4, 0));
    CHECK(s.H[1] == unit_vec(4, 3));
    CHECK(s.h_degrees == std::vector<int>{0, 3});
}

TEST_CASE("splitting identities pi + mu1 h + h mu1 = id, h^2 = 0, pi mu1 = 0") {
    for (const AInfCategory& cat : {four_dim_dg(), massey_dg(), d_zero_category()}) {
        Splitting sp = compute_splitting(cat);
        for (const auto& [hk, s] : sp.spaces) {
            int n = s.dim();
            for (int i = 0; i < n; ++i) {
                QVector v = unit_vec(n, i);
                QVector lhs = add(apply_pi(s, v),
                                  add(s.mu1.apply(apply_h(s, v)), apply_h(s, s.mu1.apply(v))));
                CHECK(lhs == v);
                CHECK(is_zero(apply_h(s, apply_h(s, v))));
                CHECK(is_zero(apply_pi(s, s.mu1.apply(v))));
                CHECK(apply_pi(s, apply_pi(s, v)) == apply_pi(s, v));
                // h(mu^1(r)) = r for r in R, h(H) = 0
            }
            for (const QVector& r : s.R) CHECK(apply_h(s, s.mu1.apply(r)) == r);
            for (const QVector& h : s.H) {
                CHECK(is_zero(apply_h(s, h)));
                CHECK(is_zero(s.mu1.apply(h)));
                CHECK(apply_pi(s, h) == h);
            }
        }
    }
}

TEST_CASE("splitting is deterministic") {
    AInfCategory cat = massey_dg();
    Splitting a = compute_splitting(cat);
    Splitting b = compute_splitting(cat);
    const auto& sa = a.spaces.at({0, 0});
    const auto& sb = b.spaces.at({0, 0});
    CHECK(sa.H == sb.H);
    CHECK(sa.R == sb.R);
    CHECK(sa.I == sb.I);
}

TEST_CASE("splitting rejects a non-square-zero differential") {
    AInfCategory cat = massey_dg();
    cat.set_product({"p"}, {{1, "m"}}); // d(p) = m makes mu^1 fail mu^1 mu^1 = 0
    CHECK_THROWS_AS(compute_splitting(cat), ModelError);
}
