#include "ade/graded.hpp"

#include <cassert>
#include <sstream>

namespace ade {

int GradedBasis::index_of(const std::string& n) const {
    for (int i = 0; i < dim(); ++i)
        if (elements[i].name == n) return i;
    return -1;
}

VectorB VectorB::unit(BaseSpecPtr base, int idx, const Rational& c) {
    VectorB v(base);
    if (c != 0) v.comps_.emplace(idx, Coefficient(base, c));
    return v;
}

VectorB VectorB::from_rational(BaseSpecPtr base, const QVector& q) {
    VectorB v(base);
    for (int i = 0; i < (int)q.size(); ++i)
        if (q[i] != 0) v.comps_.emplace(i, Coefficient(base, q[i]));
    return v;
}

bool VectorB::is_zero() const {
    for (const auto& [i, c] : comps_)
        if (!c.is_zero()) return false;
    return true;
}

Coefficient VectorB::comp(int i) const {
    auto it = comps_.find(i);
    return it == comps_.end() ? Coefficient(base_) : it->second;
}

void VectorB::set_comp(int i, Coefficient c) {
    if (c.is_zero())
        comps_.erase(i);
    else {
        if (!base_) base_ = c.base();
        comps_[i] = std::move(c);
    }
}

int VectorB::madic_order(int truncation_if_zero) const {
    int best = truncation_if_zero;
    for (const auto& [i, c] : comps_)
        if (!c.is_zero()) best = std::min(best, c.madic_order());
    return best;
}

VectorB VectorB::slice(int d) const {
    VectorB out(base_);
    for (const auto& [i, c] : comps_) {
        Coefficient s = c.slice(d);
        if (!s.is_zero()) out.comps_.emplace(i, std::move(s));
    }
    return out;
}

QVector VectorB::leading(int dim) const {
    QVector q(dim, 0);
    for (const auto& [i, c] : comps_) {
        assert(i < dim);
        q[i] = c.constant_term();
    }
    return q;
}

VectorB VectorB::operator-() const {
    VectorB out(base_);
    for (const auto& [i, c] : comps_) out.comps_.emplace(i, -c);
    return out;
}

VectorB& VectorB::operator+=(const VectorB& o) {
    if (!base_) base_ = o.base_;
    for (const auto& [i, c] : o.comps_) {
        auto it = comps_.find(i);
        if (it == comps_.end()) {
            if (!c.is_zero()) comps_.emplace(i, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) comps_.erase(it);
        }
    }
    return *this;
}

VectorB& VectorB::operator-=(const VectorB& o) { return *this += -o; }

VectorB VectorB::operator*(const Coefficient& c) const {
    VectorB out(base_ ? base_ : c.base());
    for (const auto& [i, x] : comps_) {
        Coefficient y = x * c;
        if (!y.is_zero()) out.comps_.emplace(i, std::move(y));
    }
    return out;
}

VectorB VectorB::operator*(const Rational& s) const {
    VectorB out(base_);
    if (s == 0) return out;
    for (const auto& [i, x] : comps_) out.comps_.emplace(i, x * s);
    return out;
}

bool VectorB::operator==(const VectorB& o) const {
    VectorB d = *this;
    d -= o;
    return d.is_zero();
}

std::string VectorB::str(const GradedBasis& basis) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : comps_) {
        if (!first) os << " + ";
        os << '(' << c.str() << ") " << basis.name(i);
        first = false;
    }
    return os.str();
}

LinearMapB::LinearMapB(BaseSpecPtr base, int rows, int cols)
    : base_(std::move(base)), rows_(rows), cols_v_(cols, VectorB(base_)) {}

LinearMapB LinearMapB::identity(BaseSpecPtr base, int n) {
    LinearMapB m(base, n, n);
    for (int i = 0; i < n; ++i) m.cols_v_[i] = VectorB::unit(base, i);
    return m;
}

LinearMapB LinearMapB::from_rational(BaseSpecPtr base, const RatMat& q) {
    LinearMapB m(base, q.rows(), q.cols());
    for (int j = 0; j < q.cols(); ++j) m.cols_v_[j] = VectorB::from_rational(base, q.column(j));
    return m;
}

LinearMapB LinearMapB::from_columns(BaseSpecPtr base, int rows, std::vector<VectorB> cols) {
    LinearMapB m(base, rows, 0);
    m.cols_v_ = std::move(cols);
    return m;
}

VectorB LinearMapB::apply(const VectorB& x) const {
    VectorB y(base_);
    for (const auto& [j, c] : x.comps()) {
        assert(j < cols());
        y += cols_v_[j] * c;
    }
    return y;
}

LinearMapB LinearMapB::compose(const LinearMapB& inner) const {
    assert(inner.rows_ == cols());
    LinearMapB out(base_, rows_, inner.cols());
    for (int j = 0; j < inner.cols(); ++j) out.cols_v_[j] = apply(inner.cols_v_[j]);
    return out;
}

LinearMapB LinearMapB::operator+(const LinearMapB& o) const {
    assert(rows_ == o.rows_ && cols() == o.cols());
    LinearMapB out = *this;
    for (int j = 0; j < cols(); ++j) out.cols_v_[j] += o.cols_v_[j];
    return out;
}

LinearMapB LinearMapB::operator-(const LinearMapB& o) const {
    assert(rows_ == o.rows_ && cols() == o.cols());
    LinearMapB out = *this;
    for (int j = 0; j < cols(); ++j) out.cols_v_[j] -= o.cols_v_[j];
    return out;
}

bool LinearMapB::is_zero() const {
    for (const auto& c : cols_v_)
        if (!c.is_zero()) return false;
    return true;
}

bool LinearMapB::operator==(const LinearMapB& o) const {
    if (rows_ != o.rows_ || cols() != o.cols()) return false;
    for (int j = 0; j < cols(); ++j)
        if (!(cols_v_[j] == o.cols_v_[j])) return false;
    return true;
}

RatMat LinearMapB::leading_term_map() const {
    RatMat m(rows_, cols());
    for (int j = 0; j < cols(); ++j) {
        QVector c = cols_v_[j].leading(rows_);
        for (int i = 0; i < rows_; ++i) m.at(i, j) = c[i];
    }
    return m;
}

LinearMapB LinearMapB::invert_leading() const {
    if (rows_ != cols()) throw BaseError("invert_leading: map is not square");
    auto inv0 = leading_term_map().inverse();
    if (!inv0) throw BaseError("invert_leading: leading term is singular");
    LinearMapB g0 = from_rational(base_, *inv0);
    // this = A0 + E with E infinitesimal; inverse = sum_k (-A0^{-1} E)^k A0^{-1}.
    LinearMapB correction = g0.compose(*this) - identity(base_, rows_); // A0^{-1} E
    LinearMapB term = g0;       // (-A0^{-1} E)^0 A0^{-1}
    LinearMapB total = g0;
    int n = base_ ? base_->truncation : 1;
    for (int k = 1; k < n; ++k) {
        term = correction.compose(term);
        for (int j = 0; j < term.cols(); ++j) term.col(j) = -term.col(j);
        if (term.is_zero()) break;
        total = total + term;
    }
    return total;
}

std::optional<VectorB> LinearMapB::preimage_under(const VectorB& y) const {
    RatMat a0 = leading_term_map();
    int n = base_ ? base_->truncation : 1;
    VectorB x(base_);
    for (int d = 0; d < n; ++d) {
        VectorB residual = y - apply(x);
        VectorB rd = residual.slice(d);
        if (rd.is_zero()) continue;
        // Solve A0 * (slice-d correction) = rd, one monomial at a time.
        std::map<Exponents, QVector> by_monomial;
        for (const auto& [i, c] : rd.comps())
            for (const auto& [e, q] : c.terms()) {
                auto& v = by_monomial[e];
                if (v.empty()) v.assign(rows_, 0);
                v[i] = q;
            }
        for (const auto& [e, rhs] : by_monomial) {
            auto sol = a0.solve(rhs);
            if (!sol) return std::nullopt;
            for (int j = 0; j < cols(); ++j)
                if ((*sol)[j] != 0) {
                    Coefficient c = x.comp(j);
                    c += Coefficient::monomial(base_, e, (*sol)[j]);
                    x.set_comp(j, std::move(c));
                }
        }
    }
    if (!(apply(x) == y)) return std::nullopt;
    return x;
}

} // namespace ade
