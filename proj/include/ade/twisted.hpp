#pragma once

// Additive and twisted completions of a deformed category.
//
// Objects of the additive completion are formal sums of right-shifted objects
// A_1[k_1] + ... + A_n[k_n]; morphisms are block matrices whose (i -> j) block
// lives in Hom(A_i, B_j)[m_j - k_i] (so its C-degree is the tw-degree minus
// m_j plus k_i).  Products act blockwise with the shift twist
//
//   mu_Add(a_k, ..., a_1) = (-1)^{sum_{j < i} ||a_i|| l_j} mu(a_k, ..., a_1),
//
// where l_j is the difference of shifts across a_j and ||a_i|| is the reduced
// C-degree of the block of a_i.  A twisted complex decorates such a sum with a
// degree-1 endomorphism delta whose mod-m part is strictly upper triangular
// and Maurer-Cartan for the undeformed products; the twisted products embrace
// the deformed products with delta insertions, and the curvature of (X, delta)
// is the failure of delta to be Maurer-Cartan for mu_q.

#include "ade/category.hpp"
#include "ade/splitting.hpp"

#include <memory>

namespace ade {

struct TwSummand {
    int obj = 0;   // object index in the underlying category
    int shift = 0; // right shift k: V[k]^d = V^{d-k}
    bool operator==(const TwSummand& o) const { return obj == o.obj && shift == o.shift; }
};

// Block matrix of morphisms between two formal sums; key (i, j) is the block
// from source summand i to target summand j.
struct AddMorphism {
    BaseSpecPtr base;
    int deg = 0; // tw-degree
    std::map<std::pair<int, int>, VectorB> blocks;

    AddMorphism() = default;
    AddMorphism(BaseSpecPtr b, int d) : base(std::move(b)), deg(d) {}

    void set_block(int i, int j, VectorB v);
    VectorB block(int i, int j) const;
    bool is_zero() const;
    int madic_order(int truncation_if_zero) const;
    AddMorphism slice(int d) const; // m-degree-d part, blockwise

    AddMorphism& operator+=(const AddMorphism& o);
    friend AddMorphism operator+(AddMorphism a, const AddMorphism& b) { return a += b; }
    AddMorphism operator*(const Rational& s) const;
    AddMorphism operator-() const { return *this * Rational(-1); }
    bool operator==(const AddMorphism& o) const { return deg == o.deg && blocks == o.blocks; }
    bool operator!=(const AddMorphism& o) const { return !(*this == o); }
};

struct TwObject {
    std::string name;
    std::vector<TwSummand> summands;
    AddMorphism delta; // degree-1 endomorphism
};

// Deformed additive product on block morphisms; inputs in written order
// (a_k, ..., a_1) along the chain of formal sums chain[0] = src(a_1), ...,
// chain[k] = tgt(a_k).  Validates block degrees.  Exact for complete
// deformations; throws ModelError otherwise.
AddMorphism add_product(const AInfDeformation& def, const std::vector<AddMorphism>& inputs,
                        const std::vector<const TwObject*>& chain,
                        const SignTable& signs = default_signs());

// Twisted product: the additive product summed over all delta insertions
// (finite because products above k_max vanish).
AddMorphism tw_product(const AInfDeformation& def, const std::vector<AddMorphism>& inputs,
                       const std::vector<const TwObject*>& chain,
                       const SignTable& signs = default_signs());

// Curvature of the twisted complex: the summand curvatures on the diagonal
// plus sum_{k >= 1} mu_Add_q^k(delta, ..., delta).
AddMorphism tw_curvature(const AInfDeformation& def, const TwObject& X,
                         const SignTable& signs = default_signs());

// Mod-m part of delta.
AddMorphism delta_leading(const TwObject& X);

// Structural validity of a twisted complex: block degrees, strictly upper
// triangular mod-m part, and the classical Maurer-Cartan equation for it.
RelationReport validate_tw_object(const AInfDeformation& def, const TwObject& X,
                                  const SignTable& signs = default_signs());

// The twisted completion restricted to a finite list of twisted complexes,
// materialized as an honest curved deformation so the generic checkers and
// reductions apply.  Hom bases are ordered blockwise ((i, j) lexicographic,
// then the C-basis order); identities of formal sums are not single basis
// vectors, so the materialized category declares none and relations are
// checked with check_tw_relations below.
struct TwCategory {
    std::shared_ptr<AInfCategory> ref; // mod-m twisted completion
    AInfDeformation def;               // tw products and curvature over ref
    std::vector<TwObject> objs;
    const AInfCategory* underlying = nullptr; // the category the blocks live in

    // Basis index of C-basis element t in block (i, j) of Hom(objs[x], objs[y]).
    int basis_index(int x, int y, int i, int j, int t) const;
    VectorB pack(int x, int y, const AddMorphism& f) const;
    AddMorphism unpack(int x, int y, const VectorB& v, int deg) const;
};

TwCategory materialize_tw(const AInfDeformation& def, std::vector<TwObject> objs,
                          const SignTable& signs = default_signs());

// Curved relation check on a materialized twisted completion (skips the
// identity-existence structure check, see above).
RelationReport check_tw_relations(const TwCategory& twc, int a_max,
                                  const SignTable& signs = default_signs());

// Twisting every object X by the infinitesimal degree-1 element r_X (a
// one-summand, shift-zero twisted complex, so no shift signs): the new
// products insert r's everywhere and the new curvature is
// mu^0 + sum_k mu_q^k(r, ..., r).  This is the uncurving transform.
AInfDeformation twist_by(const AInfDeformation& def, const std::map<int, VectorB>& r,
                         const SignTable& signs = default_signs());

// Curvature of the one-summand twist (X, r) of an object.
VectorB object_twist_curvature(const AInfDeformation& def, int obj, const VectorB& r,
                               const SignTable& signs = default_signs());

struct UncurveResult {
    bool ok = false;
    VectorB r;             // accumulated twist with curvature killed slice by slice
    VectorB obstruction;   // harmonic part of the first unremovable slice
    int obstruction_order = 0;
};

// Greedy slice-by-slice uncurving of one object: at each m-order the harmonic
// part of the curvature is the obstruction; when it vanishes the curvature
// slice is peeled off with the contraction h.
UncurveResult attempt_uncurve_object(const AInfDeformation& def, const Splitting& sp, int obj,
                                     const SignTable& signs = default_signs());

} // namespace ade
