#pragma once

// Planar rooted trees in which every internal node has at least two children;
// these index the summands of minimal-model tree formulas.  Enumeration order
// is canonical: compositions of the leaf count in lexicographic order, then
// the cartesian product of child enumerations with the leftmost child varying
// slowest.

#include <string>
#include <vector>

namespace ade {

struct TreeShape {
    std::vector<TreeShape> children; // empty = leaf

    bool is_leaf() const { return children.empty(); }
    int leaf_count() const;
    // Canonical text form: leaf "*", internal node "(child...child)".
    std::string str() const;
    bool operator==(const TreeShape& o) const { return children == o.children; }
};

// Number of internal (non-leaf, non-root) nodes N_T.
int internal_node_count(const TreeShape& root);

// All shapes with n >= 2 leaves, in canonical order.
std::vector<TreeShape> enumerate_trees(int n);

// Tree count by direct dynamic programming over compositions (no tree
// objects); agrees with enumerate_trees(n).size().
long long count_trees(int n);

} // namespace ade
