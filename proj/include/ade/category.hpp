#pragma once

// Strictly unital A-infinity categories with finite hom bases and sparse
// structure constants, together with their curved deformations over a
// truncated local base ring, and the relation/defect checkers.
//
// Conventions.  A product tuple is written mu(a_k, ..., a_1) with a_1 applied
// first: a_1 in Hom(X_1, X_2), ..., a_k in Hom(X_k, X_{k+1}).  Tuple keys
// store global element ids left to right in exactly that written order, i.e.
// key[0] = a_k and key.back() = a_1.  mu^k has degree 2 - k; the reduced
// degree of a morphism is ||a|| = |a| - 1.

#include "ade/base.hpp"
#include "ade/graded.hpp"
#include "ade/signs.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace ade {

struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using HomKey = std::pair<int, int>; // (source object, target object)

struct AInfCategory {
    enum class Grading { Z, Z2 };

    struct Elem {
        int src = -1, tgt = -1; // object indices
        int idx = -1;           // index inside its hom basis
        int degree = 0;
        std::string name;
    };

    Grading grading = Grading::Z;
    int k_max = 2;        // products of arity > k_max vanish (or are unknown, see below)
    bool complete = true; // false for computed minimal models: products above k_max
                          // are not known to vanish, so checks stop at k_max
    std::vector<std::string> objects;
    std::map<HomKey, GradedBasis> homs;
    std::map<int, int> identity_of;                 // object -> global element id
    std::vector<Elem> elems;                        // global id -> data
    std::map<HomKey, std::vector<int>> hom_elems;   // hom -> global ids by basis index
    std::map<std::vector<int>, QVector> products;   // explicit structure constants

    // --- construction -----------------------------------------------------
    int add_object(const std::string& name);
    void add_hom(int src, int tgt, std::vector<BasisElement> basis);
    void set_identity(int obj, const std::string& name);
    // Inputs named in written order mu(a_k, ..., a_1); value over the basis of
    // Hom(src(a_1), tgt(a_k)).
    void set_product(const std::vector<std::string>& inputs,
                     const std::vector<std::pair<Rational, std::string>>& value);

    // --- lookups ----------------------------------------------------------
    int object_index(const std::string& name) const;
    int global_id(const std::string& elem_name) const; // throws on miss
    const GradedBasis& hom_basis(int src, int tgt) const;
    int hom_dim(int src, int tgt) const;
    bool is_identity(int id) const;
    int rdeg(int id) const { return elems[id].degree - 1; }

    // Object chain of a composable tuple; X_1 = chain[0], ..., X_{k+1} = chain[k].
    // Throws ModelError if the tuple is not composable.
    std::vector<int> object_chain(const std::vector<int>& key) const;

    // Structure-constant lookup with strict unitality applied for identity
    // inputs that have no explicit entry; zero above k_max or when absent.
    QVector product(const std::vector<int>& key, const SignTable& signs = default_signs()) const;

    // Degrees agree on the nose (Z) or mod 2 (Z2).
    bool degrees_equal(long a, long b) const;
};

// Enumerate all composable basis tuples of the given arity in lexicographic
// key order.
void for_each_composable(const AInfCategory& cat, int arity,
                         const std::function<void(const std::vector<int>&)>& fn);
std::vector<std::vector<int>> composable_tuples(const AInfCategory& cat, int arity);

// A curved deformation of `ref` over `base`: full products are the reference
// products plus an infinitesimal correction, together with an infinitesimal
// curvature element mu^0_X in End^2(X) for each object.
struct AInfDeformation {
    const AInfCategory* ref = nullptr;
    BaseSpecPtr base;
    int k_max = 2;                                   // >= ref->k_max
    bool complete = true;                            // products above k_max known to vanish
    std::map<std::vector<int>, VectorB> correction;  // nu = mu_q - mu; entries have m-order >= 1
    std::map<int, VectorB> curvature;                // object -> End^2 element, m-order >= 1

    static AInfDeformation trivial(const AInfCategory& cat, BaseSpecPtr base);

    void set_correction(const std::vector<std::string>& inputs, VectorB value);
    void set_curvature(int obj, VectorB value);
    VectorB curvature_of(int obj) const;

    // Full deformed product mu_q on a basis tuple.
    VectorB product_q(const std::vector<int>& key, const SignTable& signs = default_signs()) const;

    // Multilinear extension: inputs given in written order (a_k first); the
    // object chain must be supplied because zero vectors carry no hom data.
    VectorB evaluate_product(const std::vector<VectorB>& inputs,
                             const std::vector<int>& chain,
                             const SignTable& signs = default_signs()) const;
};

// Left-hand side of the A-infinity relation on a composable basis tuple
// (uncurved, rational).
QVector ainf_defect(const AInfCategory& cat, const std::vector<int>& key,
                    const SignTable& signs = default_signs());

// Left-hand side of the curved relation on a composable basis tuple (length
// may be 0 when `obj` is given: the relation mu^1(mu^0_X) = 0).
VectorB curved_defect(const AInfDeformation& def, const std::vector<int>& key,
                      const SignTable& signs = default_signs());
VectorB curved_defect_object(const AInfDeformation& def, int obj,
                             const SignTable& signs = default_signs());

struct RelationReport {
    bool ok = true;
    int arity_bound = 0;     // tuple lengths actually checked
    long tuples_checked = 0;
    std::vector<std::string> violations; // capped human-readable messages

    void fail(const std::string& msg);
};

// Full verification: degree bookkeeping and composability of stored products,
// strict unitality, and the (curved) relations on every composable tuple up
// to the bound.  `jobs` <= 0 uses the OpenMP default; the serial variants are
// the reference implementations and must produce identical reports.
RelationReport check_relations(const AInfCategory& cat, int a_max, int jobs = 0,
                               const SignTable& signs = default_signs());
RelationReport check_relations_serial(const AInfCategory& cat, int a_max,
                                      const SignTable& signs = default_signs());
RelationReport check_relations(const AInfDeformation& def, int a_max, int jobs = 0,
                               const SignTable& signs = default_signs());
RelationReport check_relations_serial(const AInfDeformation& def, int a_max,
                                      const SignTable& signs = default_signs());

} // namespace ade
