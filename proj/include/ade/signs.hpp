#pragma once

// Every Koszul-type sign used by the engine comes from this table, so that a
// single test suite can pin the convention and mutation tests can verify that
// each entry is load-bearing.  Entry values are parity weights: 1 gives the
// convention the relations are stated in, 0 mutates the sign away (a uniform
// parity offset would cancel out of every quadratic relation, so dropping the
// parity dependence is the honest single-sign mutation).

#include "ade/rational.hpp"

namespace ade {

struct SignTable {
    // (-1)^{||a_1|| + ... + ||a_m||} in front of an inner product inserted
    // after the first m inputs of a curved structure relation.
    int relation_insertion = 1;
    // mu^2(id_Y, a) = (-1)^{|a|} a (left unit acts with a Koszul sign).
    int unit_left = 1;
    // (-1)^{(||a_i|| + ... + ||a_1||) ||omega||} in the Gerstenhaber circle product.
    int gerstenhaber_insertion = 1;
    // [eta, omega] = eta . omega - (-1)^{||omega|| ||eta||} omega . eta.
    int bracket_swap = 1;
    // (-1)^{sum_{j < i} ||a_i|| l_j} twisting the additive-completion products.
    int shift_twist = 1;
    // (-1)^{||a_1|| + ... + ||a_j||} in the curved-functor relation.
    int functor_insertion = 1;
    // (-1)^{N_T} over internal nodes in minimal-model tree sums
    // ((-1)^{N_T + 1} for the comparison functor).
    int tree_internal = 1;

    int sgn(long long parity, int weight) const {
        return ((parity * weight) % 2 == 0) ? 1 : -1;
    }
};

inline const SignTable& default_signs() {
    static SignTable t;
    return t;
}

} // namespace ade
