#pragma once

// Homological splitting Hom = H + I + R of each hom space of an A-infinity
// category with respect to mu^1: I = im(mu^1), ker(mu^1) = H + I, and the
// codifferential h sends mu^1(r) back to r and kills H and R.
//
// The choice is made canonical by ordered Gaussian elimination with leftmost
// pivots: R is spanned by the standard basis vectors at the pivot columns of
// the mu^1 matrix, I by their images (in the same order), and H by the
// canonical kernel basis vectors that extend I to ker(mu^1), in order.

#include "ade/category.hpp"
#include "ade/ratmat.hpp"

#include <map>
#include <vector>

namespace ade {

struct HomSplitting {
    RatMat mu1;              // matrix of mu^1 on this hom space
    std::vector<QVector> H;  // harmonic basis vectors (hom coordinates)
    std::vector<QVector> I;  // I[j] = mu1 * R[j]
    std::vector<QVector> R;  // standard basis vectors at pivot columns
    std::vector<int> h_degrees; // degree of each H basis vector
    RatMat basis;            // columns [H | I | R]
    RatMat coords;           // basis^{-1}; rows grouped the same way

    int dim() const { return mu1.rows(); }
    int dim_h() const { return (int)H.size(); }
    int dim_r() const { return (int)R.size(); }

    QVector h_coords(const QVector& v) const;  // coordinates of the H-component
    QVector i_coords(const QVector& v) const;  // R-coordinates of the I-component
    QVector r_coords(const QVector& v) const;  // coordinates of the R-component
};

struct Splitting {
    const AInfCategory* cat = nullptr;
    std::map<HomKey, HomSplitting> spaces;
};

Splitting compute_splitting(const AInfCategory& cat);

// Codifferential: h(mu^1(r)) = r, h(H) = h(R) = 0; returns hom coordinates.
QVector apply_h(const HomSplitting& sp, const QVector& v);
// Projection onto H along I + R; returns hom coordinates.
QVector apply_pi(const HomSplitting& sp, const QVector& v);

} // namespace ade
