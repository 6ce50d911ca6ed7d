#pragma once

// Coefficient arithmetic in a truncated local base ring
//
//   B = Q[q_1, ..., q_g] / (monomial relations + m^N),   m = (q_1, ..., q_g).
//
// Elements are finite sums of rational multiples of normal monomials: exponent
// vectors of total degree < N that are not divisible by any relation monomial.
// Because the quotient ideal is generated by monomials, the normal form is a
// pure divisibility filter and all arithmetic stays exact.

#include "ade/rational.hpp"

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace ade {

using Exponents = std::vector<unsigned>; // one entry per variable, lex-ordered keys

struct BaseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Immutable description of the base ring, shared by every coefficient in a run.
struct BaseSpec {
    int num_vars = 0;        // g; 0 means B = Q
    int truncation = 1;      // N with m^N = 0; must be >= 1
    std::vector<Exponents> relations; // extra monomial generators of the ideal

    BaseSpec() = default;
    BaseSpec(int g, int n, std::vector<Exponents> rels = {});

    // Total degree of an exponent vector.
    static long total_degree(const Exponents& e);

    // True when the monomial survives in B (degree < N, not divisible by a relation).
    bool is_normal(const Exponents& e) const;

    // All normal monomials in lex order; this is the canonical Q-basis of B.
    const std::vector<Exponents>& monomial_basis() const;

    std::string var_name(int i) const; // "q1", ..., or "q" when g == 1

private:
    mutable std::vector<Exponents> basis_cache_;
};

using BaseSpecPtr = std::shared_ptr<const BaseSpec>;

BaseSpecPtr make_base(int g, int n, std::vector<Exponents> rels = {});

// The trivial base B = Q (g = 0, N = 1); used by classical (undeformed) code paths.
BaseSpecPtr rational_base();

// An element of B.  The zero element may carry a null base pointer; it combines
// with elements of any base.
class Coefficient {
public:
    Coefficient() = default;
    explicit Coefficient(BaseSpecPtr base) : base_(std::move(base)) {}
    Coefficient(BaseSpecPtr base, const Rational& constant);

    static Coefficient monomial(BaseSpecPtr base, const Exponents& e,
                                const Rational& c = Rational(1));

    bool is_zero() const { return terms_.empty(); }
    const BaseSpecPtr& base() const { return base_; }
    const std::map<Exponents, Rational>& terms() const { return terms_; }

    // Constant (m-degree 0) part as a rational; the "reduction mod m".
    Rational constant_term() const;

    // Smallest total degree among terms, or the truncation order N for zero
    // (m^N = 0, so N acts as the infinity sentinel).
    int madic_order() const;

    // Keep only terms of total degree exactly d.
    Coefficient slice(int d) const;

    Coefficient operator-() const;
    Coefficient& operator+=(const Coefficient& o);
    Coefficient& operator-=(const Coefficient& o);
    friend Coefficient operator+(Coefficient a, const Coefficient& b) { return a += b; }
    friend Coefficient operator-(Coefficient a, const Coefficient& b) { return a -= b; }
    friend Coefficient operator*(const Coefficient& a, const Coefficient& b);
    Coefficient operator*(const Rational& s) const;

    bool operator==(const Coefficient& o) const { return terms_ == o.terms_; }
    bool operator!=(const Coefficient& o) const { return !(*this == o); }

    // Exact division by the monomial q^e; throws BaseError if any term is not
    // divisible.  (Used e.g. to divide a curvature by its leading variable.)
    Coefficient divide_monomial(const Exponents& e) const;

    // Canonical textual form: terms in lex order joined by " + " / " - ",
    // e.g. "3/2 q1^2*q2 - q2^3"; zero prints "0".
    std::string str() const;

private:
    void insert_term(const Exponents& e, const Rational& c);
    void require_same_base(const Coefficient& o);

    BaseSpecPtr base_;                      // null only for the default zero
    std::map<Exponents, Rational> terms_;   // normal monomials only, no zero values
};

std::string monomial_str(const BaseSpec& base, const Exponents& e);

} // namespace ade
