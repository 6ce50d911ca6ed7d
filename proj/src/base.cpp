#include "ade/base.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace ade {

BaseSpec::BaseSpec(int g, int n, std::vector<Exponents> rels)
    : num_vars(g), truncation(n), relations(std::move(rels)) {
    if (g < 0 || n < 1)
        throw BaseError("base ring needs num_vars >= 0 and truncation >= 1");
    for (const auto& r : relations)
        if ((int)r.size() != g)
            throw BaseError("relation monomial has wrong number of variables");
}

long BaseSpec::total_degree(const Exponents& e) {
    long d = 0;
    for (unsigned x : e) d += x;
    return d;
}

static bool divides(const Exponents& a, const Exponents& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

bool BaseSpec::is_normal(const Exponents& e) const {
    if (total_degree(e) >= truncation) return false;
    for (const auto& r : relations)
        if (divides(r, e)) return false;
    return true;
}

const std::vector<Exponents>& BaseSpec::monomial_basis() const {
    if (!basis_cache_.empty() || truncation == 0) return basis_cache_;
    // Enumerate exponent vectors of total degree < N in lex order.
    Exponents cur(num_vars, 0);
    // Recursive lex enumeration without recursion: odometer with degree bound.
    std::vector<Exponents> out;
    std::function<void(int, long)> rec = [&](int pos, long used) {
        if (pos == num_vars) {
            if (is_normal(cur)) out.push_back(cur);
            return;
        }
        for (long v = 0; used + v < truncation; ++v) {
            cur[pos] = (unsigned)v;
            rec(pos + 1, used + v);
        }
        cur[pos] = 0;
    };
    rec(0, 0);
    std::sort(out.begin(), out.end());
    basis_cache_ = std::move(out);
    return basis_cache_;
}

std::string BaseSpec::var_name(int i) const {
    if (num_vars == 1) return "q";
    return "q" + std::to_string(i + 1);
}

BaseSpecPtr make_base(int g, int n, std::vector<Exponents> rels) {
    return std::make_shared<const BaseSpec>(g, n, std::move(rels));
}

BaseSpecPtr rational_base() {
    static BaseSpecPtr b = make_base(0, 1);
    return b;
}

Coefficient::Coefficient(BaseSpecPtr base, const Rational& constant) : base_(std::move(base)) {
    if (constant != 0) {
        Exponents e(base_ ? base_->num_vars : 0, 0);
        if (!base_ || base_->is_normal(e)) terms_.emplace(std::move(e), constant);
    }
}

Coefficient Coefficient::monomial(BaseSpecPtr base, const Exponents& e, const Rational& c) {
    Coefficient out(std::move(base));
    if ((int)e.size() != out.base_->num_vars)
        throw BaseError("monomial exponent vector has wrong length");
    if (c != 0 && out.base_->is_normal(e)) out.terms_.emplace(e, c);
    return out;
}

Rational Coefficient::constant_term() const {
    if (terms_.empty()) return 0;
    const auto& [e, c] = *terms_.begin();
    if (BaseSpec::total_degree(e) == 0) return c;
    return 0;
}

int Coefficient::madic_order() const {
    if (terms_.empty()) return base_ ? base_->truncation : 0;
    long best = base_->truncation;
    for (const auto& [e, c] : terms_) best = std::min(best, BaseSpec::total_degree(e));
    return (int)best;
}

Coefficient Coefficient::slice(int d) const {
    Coefficient out(base_);
    for (const auto& [e, c] : terms_)
        if (BaseSpec::total_degree(e) == d) out.terms_.emplace(e, c);
    return out;
}

Coefficient Coefficient::operator-() const {
    Coefficient out(base_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
}

void Coefficient::require_same_base(const Coefficient& o) {
    if (!base_) base_ = o.base_;
    if (o.base_ && base_ != o.base_)
        throw BaseError("mixing coefficients over different base rings");
}

void Coefficient::insert_term(const Exponents& e, const Rational& c) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        if (c != 0) terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Coefficient& Coefficient::operator+=(const Coefficient& o) {
    require_same_base(o);
    for (const auto& [e, c] : o.terms_) insert_term(e, c);
    return *this;
}

Coefficient& Coefficient::operator-=(const Coefficient& o) {
    require_same_base(o);
    for (const auto& [e, c] : o.terms_) insert_term(e, -c);
    return *this;
}

Coefficient operator*(const Coefficient& a, const Coefficient& b) {
    Coefficient out(a.base_ ? a.base_ : b.base_);
    if (a.base_ && b.base_ && a.base_ != b.base_)
        throw BaseError("mixing coefficients over different base rings");
    if (!out.base_) return out;
    Exponents e(out.base_->num_vars);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            if (out.base_->is_normal(e)) out.insert_term(e, ca * cb);
        }
    }
    return out;
}

Coefficient Coefficient::operator*(const Rational& s) const {
    Coefficient out(base_);
    if (s == 0) return out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, c * s);
    return out;
}

Coefficient Coefficient::divide_monomial(const Exponents& d) const {
    Coefficient out(base_);
    if (terms_.empty()) return out;
    if ((int)d.size() != base_->num_vars)
        throw BaseError("divisor exponent vector has wrong length");
    for (const auto& [e, c] : terms_) {
        Exponents q(e.size());
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] < d[i]) throw BaseError("coefficient not divisible by monomial");
            q[i] = e[i] - d[i];
        }
        out.terms_.emplace(std::move(q), c);
    }
    return out;
}

std::string monomial_str(const BaseSpec& base, const Exponents& e) {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!first) os << '*';
        os << base.var_name((int)i);
        if (e[i] > 1) os << '^' << e[i];
        first = false;
    }
    return os.str();
}

std::string Coefficient::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Rational a = c;
        if (first) {
            if (a < 0) { os << '-'; a = -a; }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        std::string mono = monomial_str(*base_, e);
        if (mono.empty()) {
            os << a.str();
        } else {
            if (a != 1) os << a.str() << ' ';
            os << mono;
        }
        first = false;
    }
    return os.str();
}

} // namespace ade
