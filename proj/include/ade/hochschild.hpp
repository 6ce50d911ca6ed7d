#pragma once

// Hochschild cochains of an A-infinity category with coefficients in the base
// ring, the Gerstenhaber circle product and bracket, the differential
// [mu, -], Maurer-Cartan defects, and the exact gauge action.
//
// A cochain eta of shifted degree s is a finite family of B-multilinear
// components: an arity-0 part eta^0_X in Hom(X, X) of degree s + 1 for each
// object, and arity-k structure constants on composable basis tuples (written
// order, as for products) whose values have degree ||a_1|| + ... + ||a_k|| +
// s + 1.  Components of arity above `a_max` vanish identically, so every
// operation below is exact; the circle product grows the arity bound to
// top(eta) + top(omega) - 1 and throws ArityOverflow when a requested cap
// cannot hold the exact result.

#include "ade/category.hpp"

namespace ade {

struct ArityOverflow : ModelError {
    using ModelError::ModelError;
};

struct HochschildCochain {
    const AInfCategory* cat = nullptr;
    BaseSpecPtr base;
    int deg = 0;   // shifted degree ||eta||
    int a_max = 0; // components of arity > a_max are identically zero

    std::map<int, VectorB> comp0;              // object -> arity-0 component
    std::map<std::vector<int>, VectorB> comps; // basis tuple -> value

    static HochschildCochain zero(const AInfCategory& cat, BaseSpecPtr base, int deg, int a_max);

    // Setters validate composability and degree bookkeeping and drop zeros.
    void set0(int obj, VectorB v);
    void set(const std::vector<int>& key, VectorB v);
    VectorB at0(int obj) const;
    VectorB at(const std::vector<int>& key) const;

    bool is_zero() const;
    int madic_order() const; // min over all components; truncation N when zero

    HochschildCochain& operator+=(const HochschildCochain& o);
    HochschildCochain& operator-=(const HochschildCochain& o);
    friend HochschildCochain operator+(HochschildCochain a, const HochschildCochain& b) {
        return a += b;
    }
    friend HochschildCochain operator-(HochschildCochain a, const HochschildCochain& b) {
        return a -= b;
    }
    HochschildCochain operator*(const Rational& s) const;
    HochschildCochain operator-() const;
    bool operator==(const HochschildCochain& o) const;
    bool operator!=(const HochschildCochain& o) const { return !(*this == o); }
};

// The structure maps of a complete category as a degree-1 cochain over `base`
// (strict-unit products are materialized so the table is self-contained).
HochschildCochain structure_cochain(const AInfCategory& cat, BaseSpecPtr base);

// Multilinear evaluation of the arity-|inputs| component on B-valued inputs in
// written order along the given object chain.
VectorB evaluate_component(const HochschildCochain& eta, const std::vector<VectorB>& inputs,
                           const std::vector<int>& chain);

// Gerstenhaber circle product (insert omega into eta, Koszul sign
// (-1)^{||omega|| (||a_m|| + ... + ||a_1||)} over the inputs to the right of
// the insertion).  `a_cap` < 0 means "no cap"; otherwise ArityOverflow is
// thrown when the exact result needs arities above the cap.
HochschildCochain circ(const HochschildCochain& eta, const HochschildCochain& omega,
                       int a_cap = -1, const SignTable& signs = default_signs());

// [eta, omega] = eta . omega - (-1)^{||eta|| ||omega||} omega . eta.
HochschildCochain bracket(const HochschildCochain& eta, const HochschildCochain& omega,
                          int a_cap = -1, const SignTable& signs = default_signs());

// d(eta) = [mu, eta]; requires a complete category.
HochschildCochain differential(const HochschildCochain& eta, int a_cap = -1,
                               const SignTable& signs = default_signs());

// Components of d(nu) + nu . nu up to arity `a_max` (exact per component; for
// odd-degree nu this is d(nu) + (1/2)[nu, nu]).
HochschildCochain mc_defect(const HochschildCochain& nu, int a_max,
                            const SignTable& signs = default_signs());

// Dictionary between curved deformations and degree-1 cochains: nu = mu_q - mu
// with the curvature as arity-0 part.
HochschildCochain deformation_to_mc(const AInfDeformation& def);
AInfDeformation mc_to_deformation(const AInfCategory& cat, const HochschildCochain& nu);

// Exact gauge action of an infinitesimal degree-0 cochain phi: the time-1 flow
// of nu' = [nu, phi] + d(phi), summed as the terminating exponential series
//
//   nu . phi = sum_n ad^n(nu) / n!  +  sum_n ad^n(d phi) / (n + 1)!,
//
// with ad(x) = [x, phi].  Gauging by -phi inverts gauging by phi, and gauge
// transforms of Maurer-Cartan elements stay Maurer-Cartan.
HochschildCochain gauge(const HochschildCochain& nu, const HochschildCochain& phi,
                        const SignTable& signs = default_signs());

} // namespace ade
