#pragma once

// Shared concrete instances for the test suites.  Everything here is built
// from dg-algebra data via the explicit dictionary
//
//   mu^1(a) = (-1)^{|a|} d(a),      mu^2(a2, a1) = (-1)^{|a1|} a2 * a1,
//
// which is the unique one-sign-per-slot dictionary compatible with the
// engine's relation convention (checked by the relation suite itself).

#include "ade/category.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ade::testing {

using Combo = std::vector<std::pair<Rational, std::string>>;

struct DgAlgebra {
    std::vector<BasisElement> basis; // first element is the unit, degree 0
    std::map<std::string, Combo> diff;
    std::map<std::pair<std::string, std::string>, Combo> prod; // (a, b) -> a*b, unit pairs implied
};

inline AInfCategory dg_to_ainf(const DgAlgebra& dg) {
    AInfCategory cat;
    cat.k_max = 2;
    int x = cat.add_object("X");
    cat.add_hom(x, x, dg.basis);
    cat.set_identity(x, dg.basis.front().name);
    auto degree_of = [&](const std::string& n) {
        for (const auto& b : dg.basis)
            if (b.name == n) return b.degree;
        throw ModelError("unknown dg basis element: " + n);
    };
    for (const auto& [a, da] : dg.diff) {
        Combo v;
        for (const auto& [c, n] : da) v.emplace_back(c * sign_pow(degree_of(a)), n);
        cat.set_product({a}, v);
    }
    for (const auto& [ab, val] : dg.prod) {
        Combo v;
        for (const auto& [c, n] : val) v.emplace_back(c * sign_pow(degree_of(ab.second)), n);
        cat.set_product({ab.first, ab.second}, v); // mu^2(a, b), b applied first
    }
    return cat;
}

// Four-dimensional dg algebra with interacting differential and product:
// d(x) = z, x*z = z*x = w.  The one-input relation on (x, x) has two nonzero
// canceling terms, so every sign in the convention is load-bearing here.
inline AInfCategory four_dim_dg() {
    DgAlgebra dg;
    dg.basis = {{"e", 0}, {"x", 1}, {"z", 2}, {"w", 3}};
    dg.diff["x"] = {{1, "z"}};
    dg.prod[{"x", "z"}] = {{1, "w"}};
    dg.prod[{"z", "x"}] = {{1, "w"}};
    return dg_to_ainf(dg);
}

// Five-dimensional dg algebra with a nonvanishing triple Massey product
// <[a],[a],[a]>: d(u) = a*a, a*u = m, and m survives in cohomology.
inline AInfCategory massey_dg() {
    DgAlgebra dg;
    dg.basis = {{"e", 0}, {"a", 1}, {"u", 1}, {"p", 2}, {"m", 2}};
    dg.diff["u"] = {{1, "p"}};
    dg.prod[{"a", "a"}] = {{1, "p"}};
    dg.prod[{"a", "u"}] = {{1, "m"}};
    return dg_to_ainf(dg);
}

// Graded algebra with zero differential and a central degree-2 element c,
// c*c = 0; carries the central curvature mu^0 = q c.
inline AInfCategory central_curvature_algebra() {
    DgAlgebra dg;
    dg.basis = {{"e", 0}, {"c", 2}};
    return dg_to_ainf(dg);
}

inline AInfDeformation central_curvature_deformation(const AInfCategory& cat, BaseSpecPtr base) {
    AInfDeformation def = AInfDeformation::trivial(cat, base);
    def.set_curvature(0, VectorB::unit(base, 1) * Coefficient::monomial(base, {1}));
    return def;
}

// Three-dimensional dg algebra e, x, z with d(x) = z and no other products;
// carrier of the deformed-differential instance below.
inline AInfCategory three_dim_dg() {
    DgAlgebra dg;
    dg.basis = {{"e", 0}, {"x", 1}, {"z", 2}};
    dg.diff["x"] = {{1, "z"}};
    return dg_to_ainf(dg);
}

// Four-dimensional dg algebra e, x, y, z with d(x) = z, y a harmonic
// degree-1 cycle, and no non-unit products.  Splitting: H = {e, y}, I = {z},
// R = {x}.
inline AInfCategory d_zero_category() {
    DgAlgebra dg;
    dg.basis = {{"e", 0}, {"x", 1}, {"y", 1}, {"z", 2}};
    dg.diff["x"] = {{1, "z"}};
    return dg_to_ainf(dg);
}

// Curvature-free deformation of d_zero_category with mu_q^1(y) = -q z.  Since
// mu_q^1(x) = -z, this makes mu_q^1(y) = mu_q^1(q x) with q x in m*R: the
// deformed differential D on the harmonic part vanishes while E does not.
inline AInfDeformation d_zero_deformation(const AInfCategory& cat, BaseSpecPtr base) {
    AInfDeformation def = AInfDeformation::trivial(cat, base);
    VectorB v(base);
    v.set_comp(3, Coefficient::monomial(base, {1}, -1)); // -q z
    def.set_correction({"y"}, v);
    return def;
}

// Two objects, Hom(X, Y) = <s, t> with |s| = 0, |t| = 1, zero differential,
// deformed by mu_q^1(s) = q t.  The harmonic part is everything, and the
// deformed differential D sends s to q t.
inline AInfCategory hom_complex_category() {
    AInfCategory cat;
    cat.k_max = 2;
    int x = cat.add_object("X");
    int y = cat.add_object("Y");
    cat.add_hom(x, x, {{"idX", 0}});
    cat.add_hom(y, y, {{"idY", 0}});
    cat.add_hom(x, y, {{"s", 0}, {"t", 1}});
    cat.set_identity(x, "idX");
    cat.set_identity(y, "idY");
    return cat;
}

inline AInfDeformation hom_complex_deformation(const AInfCategory& cat, BaseSpecPtr base) {
    AInfDeformation def = AInfDeformation::trivial(cat, base);
    VectorB v(base);
    v.set_comp(1, Coefficient::monomial(base, {1})); // q t
    def.set_correction({"s"}, v);
    return def;
}

} // namespace ade::testing
