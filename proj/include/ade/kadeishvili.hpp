#pragma once

// Classical minimal models by the tree-sum transfer formula: products on the
// harmonic part H are
//
//   mu_H^n(h_n, ..., h_1) = sum_T (-1)^{N_T} Res(T),   n >= 2,
//
// over all planar trees with n leaves whose internal nodes carry >= 2
// children; Res(T) decorates internal nodes with h∘mu and the root with
// pi∘mu.  The comparison functor uses h at the root as well, with sign
// (-1)^{N_T + 1}, and F^1 is the inclusion of H.

#include "ade/category.hpp"
#include "ade/splitting.hpp"
#include "ade/trees.hpp"

namespace ade {

struct MinimalModel {
    AInfCategory hc; // products up to hc.k_max = a_max; hc.complete == false
    // Comparison functor HC -> C: keys are HC tuples (written order), values
    // live in the hom coordinates of C.  Arity 1 is the inclusion of H.
    std::map<std::vector<int>, QVector> functor;
};

// Deterministic basis-element names of the minimal model, shared with the
// deformed construction so that reductions agree byte for byte.
std::string hc_elem_name(const AInfCategory& cat, int src, int tgt, int i);

MinimalModel minimal_model(const AInfCategory& cat, const Splitting& sp, int a_max,
                           int jobs = 0, const SignTable& signs = default_signs());

// Multilinear product evaluation with rational vectors (written order, with
// the object chain X_1 ... X_{k+1}).
QVector q_evaluate(const AInfCategory& cat, const std::vector<QVector>& inputs,
                   const std::vector<int>& chain, const SignTable& signs = default_signs());

// Residue of one tree on rational inputs in C coordinates (inputs in written
// order); `h_at_root` selects the functor decoration.  Exposed for the
// symbolic expansion tests.
QVector evaluate_pi_tree(const AInfCategory& cat, const Splitting& sp, const TreeShape& tree,
                         const std::vector<QVector>& inputs, const std::vector<int>& chain,
                         bool h_at_root, const SignTable& signs = default_signs());

} // namespace ade
