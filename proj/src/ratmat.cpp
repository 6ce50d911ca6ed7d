#include "ade/ratmat.hpp"

#include <cassert>
#include <stdexcept>

namespace ade {

RatMat RatMat::identity(int n) {
    RatMat m(n, n);
    for (int i = 0; i < n; ++i) m.a_[i][i] = 1;
    return m;
}

RatMat RatMat::from_columns(const std::vector<QVector>& cols) {
    int r = cols.empty() ? 0 : (int)cols[0].size();
    RatMat m(r, (int)cols.size());
    for (int j = 0; j < (int)cols.size(); ++j) {
        assert((int)cols[j].size() == r);
        for (int i = 0; i < r; ++i) m.a_[i][j] = cols[j][i];
    }
    return m;
}

QVector RatMat::column(int j) const {
    QVector c(rows_);
    for (int i = 0; i < rows_; ++i) c[i] = a_[i][j];
    return c;
}

QVector RatMat::apply(const QVector& x) const {
    assert((int)x.size() == cols_);
    QVector y(rows_, 0);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (a_[i][j] != 0 && x[j] != 0) y[i] += a_[i][j] * x[j];
    return y;
}

RatMat RatMat::operator*(const RatMat& o) const {
    assert(cols_ == o.rows_);
    RatMat out(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k)
            if (a_[i][k] != 0)
                for (int j = 0; j < o.cols_; ++j)
                    if (o.a_[k][j] != 0) out.a_[i][j] += a_[i][k] * o.a_[k][j];
    return out;
}

RatMat RatMat::operator+(const RatMat& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    RatMat out = *this;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.a_[i][j] += o.a_[i][j];
    return out;
}

RatMat RatMat::operator-(const RatMat& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    RatMat out = *this;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.a_[i][j] -= o.a_[i][j];
    return out;
}

bool RatMat::is_zero() const {
    for (const auto& row : a_)
        for (const auto& x : row)
            if (x != 0) return false;
    return true;
}

std::vector<int> RatMat::rref_in_place() {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < cols_ && row < rows_; ++col) {
        int p = -1;
        for (int i = row; i < rows_; ++i)
            if (a_[i][col] != 0) { p = i; break; }
        if (p < 0) continue;
        std::swap(a_[row], a_[p]);
        Rational inv = a_[row][col];
        for (int j = col; j < cols_; ++j) a_[row][j] /= inv;
        for (int i = 0; i < rows_; ++i) {
            if (i == row || a_[i][col] == 0) continue;
            Rational f = a_[i][col];
            for (int j = col; j < cols_; ++j) a_[i][j] -= f * a_[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

int RatMat::rank() const {
    RatMat tmp = *this;
    return (int)tmp.rref_in_place().size();
}

std::vector<QVector> RatMat::kernel_basis() const {
    RatMat tmp = *this;
    std::vector<int> pivots = tmp.rref_in_place();
    std::vector<bool> is_pivot(cols_, false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<QVector> out;
    for (int free = 0; free < cols_; ++free) {
        if (is_pivot[free]) continue;
        QVector v(cols_, 0);
        v[free] = 1;
        for (int r = 0; r < (int)pivots.size(); ++r) v[pivots[r]] = -tmp.a_[r][free];
        out.push_back(std::move(v));
    }
    return out;
}

std::optional<RatMat> RatMat::inverse() const {
    if (rows_ != cols_) return std::nullopt;
    RatMat aug(rows_, 2 * cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) aug.a_[i][j] = a_[i][j];
        aug.a_[i][cols_ + i] = 1;
    }
    std::vector<int> piv = aug.rref_in_place();
    if ((int)piv.size() != rows_ || (!piv.empty() && piv.back() >= cols_)) return std::nullopt;
    RatMat inv(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) inv.a_[i][j] = aug.a_[i][cols_ + j];
    return inv;
}

std::optional<QVector> RatMat::solve(const QVector& b) const {
    assert((int)b.size() == rows_);
    RatMat aug(rows_, cols_ + 1);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) aug.a_[i][j] = a_[i][j];
        aug.a_[i][cols_] = b[i];
    }
    std::vector<int> piv = aug.rref_in_place();
    if (!piv.empty() && piv.back() == cols_) return std::nullopt; // pivot in rhs column
    QVector x(cols_, 0);
    for (int r = 0; r < (int)piv.size(); ++r) x[piv[r]] = aug.a_[r][cols_];
    return x;
}

bool is_zero(const QVector& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

QVector add(const QVector& a, const QVector& b) {
    assert(a.size() == b.size());
    QVector out = a;
    for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return out;
}

QVector sub(const QVector& a, const QVector& b) {
    assert(a.size() == b.size());
    QVector out = a;
    for (size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
    return out;
}

QVector scale(const QVector& a, const Rational& s) {
    QVector out = a;
    for (auto& x : out) x *= s;
    return out;
}

} // namespace ade
