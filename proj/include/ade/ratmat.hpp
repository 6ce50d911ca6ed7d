#pragma once

// Dense exact linear algebra over Q: deterministic Gaussian elimination with
// leftmost pivots, used for splittings, leading-term inverses and kernel
// computations.  Matrices are small (hom-space or flattened-module sized).

#include "ade/rational.hpp"

#include <optional>
#include <vector>

namespace ade {

using QVector = std::vector<Rational>;

class RatMat {
public:
    RatMat() = default;
    RatMat(int rows, int cols) : rows_(rows), cols_(cols), a_(rows, QVector(cols, 0)) {}

    static RatMat identity(int n);
    static RatMat from_columns(const std::vector<QVector>& cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rational& at(int i, int j) { return a_[i][j]; }
    const Rational& at(int i, int j) const { return a_[i][j]; }

    QVector column(int j) const;
    QVector apply(const QVector& x) const;      // this * x
    RatMat operator*(const RatMat& o) const;
    RatMat operator+(const RatMat& o) const;
    RatMat operator-(const RatMat& o) const;
    bool operator==(const RatMat& o) const { return a_ == o.a_; }
    bool is_zero() const;

    // Reduced row echelon form; returns pivot column indices in increasing
    // order.  Elimination always takes the topmost available row for the
    // leftmost unprocessed column, so results are canonical.
    std::vector<int> rref_in_place();

    int rank() const;
    // Basis of the null space, one vector per free column, in column order.
    std::vector<QVector> kernel_basis() const;
    // Inverse; std::nullopt when singular.
    std::optional<RatMat> inverse() const;
    // One solution of this * x = b, or std::nullopt when inconsistent.
    // Free variables are set to zero, so the answer is canonical.
    std::optional<QVector> solve(const QVector& b) const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<QVector> a_;
};

bool is_zero(const QVector& v);
QVector add(const QVector& a, const QVector& b);
QVector sub(const QVector& a, const QVector& b);
QVector scale(const QVector& a, const Rational& s);

} // namespace ade
