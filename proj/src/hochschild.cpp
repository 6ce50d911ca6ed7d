#include "ade/hochschild.hpp"

#include <cassert>

namespace ade {

static const std::vector<int>& hom_ids(const AInfCategory& cat, int src, int tgt) {
    static const std::vector<int> empty;
    auto it = cat.hom_elems.find({src, tgt});
    return it == cat.hom_elems.end() ? empty : it->second;
}

HochschildCochain HochschildCochain::zero(const AInfCategory& cat, BaseSpecPtr base, int deg,
                                          int a_max) {
    HochschildCochain c;
    c.cat = &cat;
    c.base = std::move(base);
    c.deg = deg;
    c.a_max = a_max;
    return c;
}

void HochschildCochain::set0(int obj, VectorB v) {
    const GradedBasis& end = cat->hom_basis(obj, obj);
    for (const auto& [t, c] : v.comps())
        if (!c.is_zero() && !cat->degrees_equal(end.degree(t), deg + 1))
            throw ModelError("cochain arity-0 component has wrong degree at " + end.name(t));
    if (v.is_zero())
        comp0.erase(obj);
    else
        comp0[obj] = std::move(v);
}

void HochschildCochain::set(const std::vector<int>& key, VectorB v) {
    if ((int)key.size() > a_max) throw ModelError("cochain entry above the arity bound");
    std::vector<int> chain = cat->object_chain(key);
    const GradedBasis& out = cat->hom_basis(chain.front(), chain.back());
    long in_deg = deg + 1 - (long)key.size();
    for (int id : key) in_deg += cat->elems[id].degree;
    for (const auto& [t, c] : v.comps())
        if (!c.is_zero() && !cat->degrees_equal(out.degree(t), in_deg))
            throw ModelError("cochain entry has wrong degree at " + out.name(t));
    if (v.is_zero())
        comps.erase(key);
    else
        comps[key] = std::move(v);
}

VectorB HochschildCochain::at0(int obj) const {
    auto it = comp0.find(obj);
    return it == comp0.end() ? VectorB(base) : it->second;
}

VectorB HochschildCochain::at(const std::vector<int>& key) const {
    auto it = comps.find(key);
    return it == comps.end() ? VectorB(base) : it->second;
}

bool HochschildCochain::is_zero() const {
    for (const auto& [o, v] : comp0)
        if (!v.is_zero()) return false;
    for (const auto& [k, v] : comps)
        if (!v.is_zero()) return false;
    return true;
}

int HochschildCochain::madic_order() const {
    int n = base->truncation;
    for (const auto& [o, v] : comp0) n = std::min(n, v.madic_order(base->truncation));
    for (const auto& [k, v] : comps) n = std::min(n, v.madic_order(base->truncation));
    return n;
}

static void require_compatible(const HochschildCochain& a, const HochschildCochain& b) {
    if (a.cat != b.cat) throw ModelError("cochains live over different categories");
    if (a.base != b.base && !(a.base && b.base && a.base->num_vars == b.base->num_vars &&
                              a.base->truncation == b.base->truncation &&
                              a.base->relations == b.base->relations))
        throw ModelError("cochains live over different base rings");
}

HochschildCochain& HochschildCochain::operator+=(const HochschildCochain& o) {
    require_compatible(*this, o);
    if (deg != o.deg) throw ModelError("cannot add cochains of different degree");
    a_max = std::max(a_max, o.a_max);
    for (const auto& [obj, v] : o.comp0) {
        VectorB s = at0(obj) + v;
        if (s.is_zero())
            comp0.erase(obj);
        else
            comp0[obj] = std::move(s);
    }
    for (const auto& [key, v] : o.comps) {
        VectorB s = at(key) + v;
        if (s.is_zero())
            comps.erase(key);
        else
            comps[key] = std::move(s);
    }
    return *this;
}

HochschildCochain& HochschildCochain::operator-=(const HochschildCochain& o) {
    return *this += -o;
}

HochschildCochain HochschildCochain::operator*(const Rational& s) const {
    HochschildCochain out = zero(*cat, base, deg, a_max);
    if (s == 0) return out;
    for (const auto& [obj, v] : comp0) out.comp0[obj] = v * s;
    for (const auto& [key, v] : comps) out.comps[key] = v * s;
    return out;
}

HochschildCochain HochschildCochain::operator-() const { return *this * Rational(-1); }

bool HochschildCochain::operator==(const HochschildCochain& o) const {
    return cat == o.cat && deg == o.deg && comp0 == o.comp0 && comps == o.comps;
}

HochschildCochain structure_cochain(const AInfCategory& cat, BaseSpecPtr base) {
    if (!cat.complete)
        throw ModelError("structure cochain needs a complete category (products above "
                         "k_max must be known to vanish)");
    HochschildCochain mu = HochschildCochain::zero(cat, base, 1, cat.k_max);
    for (int k = 1; k <= cat.k_max; ++k)
        for_each_composable(cat, k, [&](const std::vector<int>& key) {
            QVector v = cat.product(key);
            if (!is_zero(v)) mu.comps[key] = VectorB::from_rational(base, v);
        });
    return mu;
}

VectorB evaluate_component(const HochschildCochain& eta, const std::vector<VectorB>& inputs,
                           const std::vector<int>& chain) {
    const AInfCategory& cat = *eta.cat;
    int k = (int)inputs.size();
    assert((int)chain.size() == k + 1);
    VectorB out(eta.base);
    std::vector<int> key(k);
    Coefficient one(eta.base, 1);
    std::function<void(int, const Coefficient&)> rec = [&](int slot, const Coefficient& c) {
        if (slot == k) {
            out += eta.at(key) * c;
            return;
        }
        // inputs[slot] is a_{k-slot} in Hom(chain[k-slot-1], chain[k-slot]).
        const std::vector<int>& ids = hom_ids(cat, chain[k - slot - 1], chain[k - slot]);
        for (const auto& [idx, coeff] : inputs[slot].comps()) {
            assert(idx < (int)ids.size());
            key[slot] = ids[idx];
            Coefficient c2 = c * coeff;
            if (!c2.is_zero()) rec(slot + 1, c2);
        }
    };
    rec(0, one);
    return out;
}

HochschildCochain circ(const HochschildCochain& eta, const HochschildCochain& omega, int a_cap,
                       const SignTable& signs) {
    require_compatible(eta, omega);
    const AInfCategory& cat = *eta.cat;
    int top = eta.a_max == 0 ? 0 : std::max(0, eta.a_max + omega.a_max - 1);
    if (a_cap >= 0 && top > a_cap)
        throw ArityOverflow("circle product needs arity " + std::to_string(top) +
                            " > cap " + std::to_string(a_cap));
    HochschildCochain out = HochschildCochain::zero(cat, eta.base, eta.deg + omega.deg, top);
    if (eta.a_max == 0) return out;

    // Arity 0: insert omega^0_X into eta^1.
    for (const auto& [obj, w] : omega.comp0) {
        VectorB v = evaluate_component(eta, {w}, {obj, obj});
        if (!v.is_zero()) out.comp0[obj] = (out.at0(obj) + v);
        if (out.comp0.count(obj) && out.comp0[obj].is_zero()) out.comp0.erase(obj);
    }

    // Arity n >= 1 on every composable basis tuple.
    for (int n = 1; n <= top; ++n)
        for_each_composable(cat, n, [&](const std::vector<int>& key) {
            std::vector<int> chain = cat.object_chain(key);
            VectorB total(eta.base);
            for (int l = 0; l <= std::min(n, omega.a_max); ++l) {
                for (int m = 0; m + l <= n; ++m) {
                    if (n - l + 1 > eta.a_max) continue;
                    VectorB iv;
                    int isrc, itgt;
                    if (l == 0) {
                        isrc = itgt = chain[m];
                        iv = omega.at0(isrc);
                    } else {
                        std::vector<int> inner(key.begin() + (n - m - l), key.begin() + (n - m));
                        iv = omega.at(inner);
                        isrc = chain[m];
                        itgt = chain[m + l];
                    }
                    if (iv.is_zero()) continue;
                    long parity = 0;
                    for (int i = 1; i <= m; ++i) parity += cat.rdeg(key[n - i]);
                    int sgn = signs.sgn(parity * omega.deg, signs.gerstenhaber_insertion);
                    std::vector<int> outer(key.begin(), key.begin() + (n - m - l));
                    outer.push_back(-1);
                    outer.insert(outer.end(), key.begin() + (n - m), key.end());
                    int slot = (int)(n - m - l);
                    const std::vector<int>& ids = hom_ids(cat, isrc, itgt);
                    for (const auto& [j, coeff] : iv.comps()) {
                        outer[slot] = ids[j];
                        total += eta.at(outer) * (coeff * Rational(sgn));
                    }
                }
            }
            if (!total.is_zero()) out.comps[key] = std::move(total);
        });
    return out;
}

HochschildCochain bracket(const HochschildCochain& eta, const HochschildCochain& omega, int a_cap,
                          const SignTable& signs) {
    HochschildCochain out = circ(eta, omega, a_cap, signs);
    int sw = signs.sgn((long long)eta.deg * omega.deg, signs.bracket_swap);
    out += circ(omega, eta, a_cap, signs) * Rational(-sw);
    return out;
}

HochschildCochain differential(const HochschildCochain& eta, int a_cap, const SignTable& signs) {
    return bracket(structure_cochain(*eta.cat, eta.base), eta, a_cap, signs);
}

static HochschildCochain truncated(HochschildCochain c, int a_max) {
    for (auto it = c.comps.begin(); it != c.comps.end();)
        it = (int)it->first.size() > a_max ? c.comps.erase(it) : std::next(it);
    c.a_max = std::min(c.a_max, a_max);
    return c;
}

HochschildCochain mc_defect(const HochschildCochain& nu, int a_max, const SignTable& signs) {
    HochschildCochain d = differential(nu, -1, signs) + circ(nu, nu, -1, signs);
    return truncated(std::move(d), a_max);
}

HochschildCochain deformation_to_mc(const AInfDeformation& def) {
    if (!def.complete)
        throw ModelError("only complete deformations translate to Maurer-Cartan elements");
    HochschildCochain nu = HochschildCochain::zero(*def.ref, def.base, 1, def.k_max);
    nu.comps = def.correction;
    nu.comp0 = def.curvature;
    return nu;
}

AInfDeformation mc_to_deformation(const AInfCategory& cat, const HochschildCochain& nu) {
    if (nu.cat != &cat) throw ModelError("cochain does not live over this category");
    if (nu.deg != 1) throw ModelError("a Maurer-Cartan element must have degree 1");
    if (nu.madic_order() < 1) throw ModelError("a Maurer-Cartan element must be infinitesimal");
    AInfDeformation def = AInfDeformation::trivial(cat, nu.base);
    def.k_max = std::max(cat.k_max, nu.a_max);
    def.correction = nu.comps;
    def.curvature = nu.comp0;
    return def;
}

HochschildCochain gauge(const HochschildCochain& nu, const HochschildCochain& phi,
                        const SignTable& signs) {
    require_compatible(nu, phi);
    if (phi.deg != 0) throw ModelError("gauge parameters must have degree 0");
    if (nu.deg != 1) throw ModelError("only degree-1 cochains are gauged");
    if (phi.madic_order() < 1) throw ModelError("gauge parameters must be infinitesimal");
    int n_max = nu.base->truncation;
    HochschildCochain out = nu;
    // sum_n ad^n(nu) / n!
    HochschildCochain term = nu;
    Rational fact = 1;
    for (int n = 1; n <= n_max; ++n) {
        term = bracket(term, phi, -1, signs);
        if (term.is_zero()) break;
        fact *= n;
        out += term * (Rational(1) / fact);
    }
    // sum_n ad^n(d phi) / (n + 1)!
    term = differential(phi, -1, signs);
    fact = 1;
    out += term;
    for (int n = 1; n <= n_max; ++n) {
        term = bracket(term, phi, -1, signs);
        if (term.is_zero()) break;
        fact *= n + 1;
        out += term * (Rational(1) / fact);
    }
    return out;
}

} // namespace ade
