#pragma once

// Functors between curved deformations.  A functor F : C_q -> D_q has an
// object map, B-multilinear components F^k of degree 1 - k for k >= 1, and an
// infinitesimal curvature component F^0_X in m End^1(FX).  The curved functor
// relations state, for every composable tuple (a_k, ..., a_1),
//
//   sum_{0 <= j <= i <= k} (-1)^{||a_j|| + ... + ||a_1||}
//       F(a_k, ..., a_{i+1}, mu_q(a_i, ..., a_{j+1}), a_j, ..., a_1)
//     = sum mu_q(F(block_l), ..., F(block_1)),
//
// where the right-hand sum runs over decompositions of the tuple into
// consecutive blocks, empty blocks contributing F^0 at their object.  The
// inner mu_q on the left includes the zero-arity case (curvature insertion),
// and the k = 0 relation reads F^1(mu^0_X) = mu^0_{FX} + sum mu_q(F^0, ..., F^0).

#include "ade/category.hpp"

namespace ade {

struct DeformedFunctor {
    const AInfDeformation* src = nullptr;
    const AInfDeformation* dst = nullptr;
    std::vector<int> obj_map;  // source object index -> target object index
    int a_max = 1;             // components of arity > a_max are zero...
    bool complete = true;      // ...or merely unknown, when false
    std::map<int, VectorB> comp0;              // X -> F^0_X
    std::map<std::vector<int>, VectorB> comps; // source basis tuples, written order

    static DeformedFunctor identity(const AInfDeformation& def);
    VectorB comp0_of(int obj) const;
};

// Multilinear evaluation of F on written-order inputs along a source object
// chain; arities above a_max evaluate to zero.
VectorB apply_functor(const DeformedFunctor& F, const std::vector<VectorB>& inputs,
                      const std::vector<int>& chain);

// Left minus right side of the curved functor relation on one composable
// source basis tuple (written order), or on one object for the k = 0 relation.
VectorB functor_defect(const DeformedFunctor& F, const std::vector<int>& key,
                       const SignTable& signs = default_signs());
VectorB functor_defect_object(const DeformedFunctor& F, int obj,
                              const SignTable& signs = default_signs());

// Structure checks (degrees, infinitesimal curvature component) and the
// relations on all tuples up to the bound (clamped to what the functor and an
// incomplete source category actually determine).
RelationReport check_functor_relations(const DeformedFunctor& F, int a_max,
                                       const SignTable& signs = default_signs());

// Mod-m reduction: the classical functor components (arity >= 1 only).
std::map<std::vector<int>, QVector> functor_leading(const DeformedFunctor& F);

// Gauge equivalence: both deformations live on the same category and the
// leading term is the identity functor.
bool is_gauge(const DeformedFunctor& F);

enum class FunctorClass { GaugeEquivalence, Isomorphism, QuasiIsomorphism, None };

// Classification by the leading term: gauge equivalence (identity leading
// term), isomorphism (bijective object map, invertible leading F^1 matrices),
// quasi-isomorphism (the induced map on mu^1-cohomology is invertible, via
// splittings of both sides), or none of these.
FunctorClass classify(const DeformedFunctor& F);

// Transport of an uncurving morphism: if S removes the curvature of X then
// F^0_X + F^1(S) + F^2(S, S) + ... removes the curvature of F(X).
VectorB transport_uncurving(const DeformedFunctor& F, int obj, const VectorB& s);

// The uncurving gauge functor from twist_by(def, r) back to def: F^0 = r,
// F^1 = Id, higher components zero.
DeformedFunctor untwist_functor(const AInfDeformation& twisted, const AInfDeformation& def,
                                const std::map<int, VectorB>& r);

// Composition G after F; both functors must have complete component data.
DeformedFunctor compose(const DeformedFunctor& G, const DeformedFunctor& F,
                        const SignTable& signs = default_signs());

} // namespace ade
