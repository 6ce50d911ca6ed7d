#pragma once

// Free graded B-modules B (x) V for a finite graded basis of V, and B-linear
// maps between them.  The key tools are order-by-order inversion of maps whose
// leading (mod-m) term is invertible, and degreewise preimage computation for
// maps with injective leading term.

#include "ade/base.hpp"
#include "ade/ratmat.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ade {

struct BasisElement {
    std::string name;
    int degree = 0;
};

struct GradedBasis {
    std::vector<BasisElement> elements;

    int dim() const { return (int)elements.size(); }
    int degree(int i) const { return elements[i].degree; }
    const std::string& name(int i) const { return elements[i].name; }
    int index_of(const std::string& n) const; // -1 when absent
};

// Element of B (x) V, sparse over the basis of V.
class VectorB {
public:
    VectorB() = default;
    explicit VectorB(BaseSpecPtr base) : base_(std::move(base)) {}

    static VectorB unit(BaseSpecPtr base, int idx, const Rational& c = Rational(1));
    static VectorB from_rational(BaseSpecPtr base, const QVector& v);

    const BaseSpecPtr& base() const { return base_; }
    bool is_zero() const;
    const std::map<int, Coefficient>& comps() const { return comps_; }
    Coefficient comp(int i) const;
    void set_comp(int i, Coefficient c);

    int madic_order(int truncation_if_zero) const;
    VectorB slice(int d) const; // m-degree-d part
    QVector leading(int dim) const; // mod-m reduction as a rational vector

    VectorB operator-() const;
    VectorB& operator+=(const VectorB& o);
    VectorB& operator-=(const VectorB& o);
    friend VectorB operator+(VectorB a, const VectorB& b) { return a += b; }
    friend VectorB operator-(VectorB a, const VectorB& b) { return a -= b; }
    VectorB operator*(const Coefficient& c) const;
    VectorB operator*(const Rational& s) const;

    bool operator==(const VectorB& o) const;
    bool operator!=(const VectorB& o) const { return !(*this == o); }

    std::string str(const GradedBasis& basis) const;

private:
    BaseSpecPtr base_;
    std::map<int, Coefficient> comps_; // index -> nonzero coefficient
};

// B-linear map B (x) V -> B (x) W given by columns (images of basis vectors).
class LinearMapB {
public:
    LinearMapB() = default;
    LinearMapB(BaseSpecPtr base, int rows, int cols);

    static LinearMapB identity(BaseSpecPtr base, int n);
    static LinearMapB from_rational(BaseSpecPtr base, const RatMat& m);
    static LinearMapB from_columns(BaseSpecPtr base, int rows, std::vector<VectorB> cols);

    int rows() const { return rows_; }
    int cols() const { return (int)cols_v_.size(); }
    const VectorB& col(int j) const { return cols_v_[j]; }
    VectorB& col(int j) { return cols_v_[j]; }
    const BaseSpecPtr& base() const { return base_; }

    VectorB apply(const VectorB& x) const;
    LinearMapB compose(const LinearMapB& inner) const; // this ∘ inner
    LinearMapB operator+(const LinearMapB& o) const;
    LinearMapB operator-(const LinearMapB& o) const;
    bool is_zero() const;
    bool operator==(const LinearMapB& o) const;

    // Reduction mod m as a rational matrix.
    RatMat leading_term_map() const;

    // Exact inverse when the leading term is invertible, via the terminating
    // Neumann series (I + A0^{-1} E)^{-1} A0^{-1} with E infinitesimal.
    // Throws BaseError when the leading term is singular.
    LinearMapB invert_leading() const;

    // Solve this(x) = y slice by m-degree when the leading term is injective;
    // std::nullopt when no solution exists.  Free coordinates are set to zero
    // in every slice, so the answer is canonical.
    std::optional<VectorB> preimage_under(const VectorB& y) const;

private:
    BaseSpecPtr base_;
    int rows_ = 0;
    std::vector<VectorB> cols_v_;
};

} // namespace ade
