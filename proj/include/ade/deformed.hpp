#pragma once

// Deformed decompositions and minimal models.
//
// For a deformation of a category with homological splitting Hom = H + I + R,
// the deformed differential restricted to B (x) R stays injective, giving two
// change-of-basis decompositions of B (x) Hom:
//
//   (B (x) H)  +  mu_q^1(B (x) R)  +  (B (x) R)        columns [H | mu_q^1 R | R]
//   H_q        +  mu_q^1(B (x) R)  +  (B (x) R)        columns [H - EH | mu_q^1 R | R]
//
// where D, E, F are the components of mu_q^1 on B (x) H in the first
// decomposition and H_q = { h - Eh } collects the deformed counterparts.  The
// deformed codifferential h_q inverts mu_q^1 on the middle summand (and kills
// the other two), pi_q projects onto H_q, and phi : H_q -> B (x) H strips the
// R-component.
//
// Curvature optimization repeatedly uncurves by -h_q(mu^0); the i-th twist has
// m-adic order at least 2^i, so the loop terminates at the truncation order
// and the result has curvature inside H_q.  The deformed minimal model then
// runs the tree-sum transfer with h_q / pi_q decorations on the optimized
// category and pulls the structure back along phi; its mod-m reduction is the
// classical minimal model on the nose.

#include "ade/kadeishvili.hpp"
#include "ade/splitting.hpp"
#include "ade/twisted.hpp"

#include <memory>

namespace ade {

struct DefHomOps {
    BaseSpecPtr base;
    const HomSplitting* hs = nullptr;
    int dim = 0, dim_h = 0, dim_r = 0;
    LinearMapB mu1q;     // matrix of mu_q^1 on this hom space
    LinearMapB psi_inv;  // inverse of [H | mu_q^1 R | R]
    LinearMapB psi2_inv; // inverse of [H_q | mu_q^1 R | R]
    std::vector<VectorB> Hq; // deformed counterparts of the H basis vectors
    LinearMapB D;        // dim_h x dim_h, H-basis coordinates
    LinearMapB E;        // dim_r x dim_h, R-basis coordinates
    LinearMapB F;        // dim_r x dim_h, R-basis coordinates
};

struct DefOps {
    const AInfDeformation* def = nullptr;
    const Splitting* sp = nullptr;
    std::map<HomKey, DefHomOps> spaces;
};

DefOps compute_def_operators(const AInfDeformation& def, const Splitting& sp,
                             const SignTable& signs = default_signs());

// Extended deformed codifferential: inverse of mu_q^1 on the middle summand,
// zero on H_q and B (x) R; value lies in the R-span (hom coordinates).
VectorB apply_hq(const DefHomOps& ops, const VectorB& v);
// Projection onto H_q along the other two summands (hom coordinates).
VectorB apply_piq(const DefHomOps& ops, const VectorB& v);
// phi composed with pi_q: H-basis coordinates of the H_q-component.
VectorB phi_of(const DefHomOps& ops, const VectorB& v);
// phi^{-1}: H-basis coordinates to the deformed counterpart in hom coordinates.
VectorB phi_inv_of(const DefHomOps& ops, const VectorB& h_coords);

// Curvature lies in H_q (no middle or R component).
bool has_optimal_curvature(const AInfDeformation& def, const Splitting& sp,
                           const SignTable& signs = default_signs());

struct OptimizationStep {
    std::map<int, VectorB> r; // the twist applied at this iteration
    int min_order = 0;        // smallest m-adic order among its entries
};

struct OptimizationResult {
    AInfDeformation optimized;      // uncurving of the input by -r_total
    std::map<int, VectorB> r_total; // sum of the per-iteration twists
    std::vector<OptimizationStep> trace;
};

OptimizationResult optimize_curvature(const AInfDeformation& def, const Splitting& sp,
                                      const SignTable& signs = default_signs());

struct DeformedMinimalModel {
    std::shared_ptr<AInfCategory> hc; // classical minimal model (shared shape/names)
    AInfDeformation hcq;              // its deformation with the transferred products
    std::map<std::vector<int>, QVector> classical_functor;
    std::map<std::vector<int>, VectorB> functor; // F_q, arity >= 1, values in C coords
    std::map<int, VectorB> functor0;             // F_q^0 = -r per object
    OptimizationResult opt;
};

DeformedMinimalModel deformed_minimal_model(const AInfDeformation& def, const Splitting& sp,
                                            int a_max,
                                            const SignTable& signs = default_signs());

// Curvature-free and D = 0 on every hom space (the case where the minimal
// model keeps zero differential and the mod-m cohomology spans the deformed
// cohomology freely).
bool check_d_zero(const AInfDeformation& def, const Splitting& sp,
                  const SignTable& signs = default_signs());

// Q-dimensions of the observed cohomology of (Hom_q, mu_q^1) against the flat
// expectation dim_Q(B) * dim H, per hom space.  Requires a curvature-free
// deformation.
struct CohomologyComparison {
    std::map<HomKey, std::pair<int, int>> dims; // (actual, flat)
    bool flat() const {
        for (const auto& [k, d] : dims)
            if (d.first != d.second) return false;
        return true;
    }
};

CohomologyComparison cohomology_comparison(const AInfDeformation& def, const Splitting& sp,
                                           const SignTable& signs = default_signs());

// Identities of the comparison maps between (Hom_q, mu_q^1) and (B (x) H, D)
// for a curvature-free deformation, per hom space:
//
//   to_h . from_h = id,   to_h . mu_q^1 = D . to_h,   mu_q^1 . from_h = from_h . D,
//   D^2 = 0,              F = -E D,
//
// where to_h takes the H-component of the decomposition [H | mu_q^1 R | R]
// and from_h sends h to h - Eh.
RelationReport check_cohomology_maps(const AInfDeformation& def, const Splitting& sp,
                                     const SignTable& signs = default_signs());

} // namespace ade
