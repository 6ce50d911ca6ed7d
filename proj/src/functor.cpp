#include "ade/functor.hpp"

#include "ade/splitting.hpp"

#include <cassert>

namespace ade {

namespace {

// Decompositions of k inputs into l consecutive blocks: cut positions
// c_0 = 0 <= c_1 <= ... <= c_l = k with 1 <= l <= lmax and at most max_empty
// empty blocks (each empty block contributes an infinitesimal F^0, so more
// than truncation - 1 of them vanish anyway).
void for_each_blocking(int k, int lmax, int max_empty,
                       const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> cuts{0};
    std::function<void(int, int)> rec = [&](int covered, int empties) {
        int l = (int)cuts.size() - 1;
        if (l >= 1 && covered == k) fn(cuts);
        if (l == lmax) return;
        for (int n = 0; n <= k - covered; ++n) {
            if (n == 0 && empties == max_empty) continue;
            cuts.push_back(covered + n);
            rec(covered + n, empties + (n == 0 ? 1 : 0));
            cuts.pop_back();
        }
    };
    rec(0, 0);
    (void)lmax;
}

// Written-order subkey of the ascending input range (lo, hi].
std::vector<int> sub_key(const std::vector<int>& key, int lo, int hi) {
    int k = (int)key.size();
    return std::vector<int>(key.begin() + (k - hi), key.begin() + (k - lo));
}

// Right-hand side of the functor relation: all block decompositions fed
// through `outer` (the codomain products, or G for composition).
VectorB blocking_sum(const DeformedFunctor& F, const std::vector<int>& key,
                     const std::vector<int>& chain, int lmax, int out_dim,
                     const std::function<VectorB(const std::vector<VectorB>&,
                                                 const std::vector<int>&)>& outer) {
    int k = (int)key.size();
    VectorB total(F.src->base);
    (void)out_dim;
    for_each_blocking(k, lmax, F.src->base->truncation - 1, [&](const std::vector<int>& cuts) {
        int l = (int)cuts.size() - 1;
        std::vector<VectorB> inputs; // written order: topmost block first
        std::vector<int> dchain(l + 1);
        bool dead = false;
        for (int m = l; m >= 1 && !dead; --m) {
            if (cuts[m] == cuts[m - 1]) {
                VectorB f0 = F.comp0_of(chain[cuts[m]]);
                if (f0.is_zero()) dead = true;
                inputs.push_back(std::move(f0));
            } else {
                std::vector<int> bk = sub_key(key, cuts[m - 1], cuts[m]);
                auto it = F.comps.find(bk);
                if (it == F.comps.end()) dead = true;
                else inputs.push_back(it->second);
            }
        }
        if (dead) return;
        for (int m = 0; m <= l; ++m) dchain[m] = F.obj_map[chain[cuts[m]]];
        total += outer(inputs, dchain);
    });
    return total;
}

void check_functor_structure(const DeformedFunctor& F, RelationReport& rep) {
    const AInfCategory& sc = *F.src->ref;
    const AInfCategory& dc = *F.dst->ref;
    if (F.obj_map.size() != sc.objects.size()) {
        rep.fail("object map has the wrong size");
        return;
    }
    int trunc = F.src->base->truncation;
    for (const auto& [obj, v] : F.comp0) {
        if (v.madic_order(trunc) < 1) rep.fail("functor curvature component is not infinitesimal");
        const GradedBasis& end = dc.hom_basis(F.obj_map[obj], F.obj_map[obj]);
        for (const auto& [t, c] : v.comps())
            if (!dc.degrees_equal(end.degree(t), 1))
                rep.fail("functor curvature component of " + sc.objects[obj] +
                         " has a term of degree != 1");
    }
    for (const auto& [key, v] : F.comps) {
        if (v.is_zero() || key.empty()) continue;
        std::vector<int> chain = sc.object_chain(key);
        long want = 1 - (long)key.size();
        for (int id : key) want += sc.elems[id].degree;
        const GradedBasis& out = dc.hom_basis(F.obj_map[chain.front()], F.obj_map[chain.back()]);
        for (const auto& [t, c] : v.comps())
            if (!dc.degrees_equal(out.degree(t), want))
                rep.fail("functor component violates the degree rule on a tuple");
    }
}

} // namespace

DeformedFunctor DeformedFunctor::identity(const AInfDeformation& def) {
    DeformedFunctor F;
    F.src = F.dst = &def;
    for (int x = 0; x < (int)def.ref->objects.size(); ++x) F.obj_map.push_back(x);
    F.a_max = 1;
    for (int id = 0; id < (int)def.ref->elems.size(); ++id)
        F.comps[{id}] = VectorB::unit(def.base, def.ref->elems[id].idx);
    return F;
}

VectorB DeformedFunctor::comp0_of(int obj) const {
    auto it = comp0.find(obj);
    return it == comp0.end() ? VectorB(src->base) : it->second;
}

VectorB apply_functor(const DeformedFunctor& F, const std::vector<VectorB>& inputs,
                      const std::vector<int>& chain) {
    const AInfCategory& sc = *F.src->ref;
    int k = (int)inputs.size();
    assert((int)chain.size() == k + 1);
    VectorB out(F.src->base);
    if (k > F.a_max) return out;
    std::vector<int> key(k);
    std::function<void(int, const Coefficient&)> rec = [&](int slot, const Coefficient& c) {
        if (c.is_zero()) return;
        if (slot == k) {
            auto it = F.comps.find(key);
            if (it != F.comps.end()) out += it->second * c;
            return;
        }
        int s = chain[k - slot - 1], t = chain[k - slot];
        const auto& ids = sc.hom_elems.at({s, t});
        for (const auto& [j, cj] : inputs[slot].comps()) {
            key[slot] = ids[j];
            rec(slot + 1, c * cj);
        }
    };
    rec(0, Coefficient(F.src->base, 1));
    return out;
}

VectorB functor_defect(const DeformedFunctor& F, const std::vector<int>& key,
                       const SignTable& signs) {
    const AInfCategory& sc = *F.src->ref;
    if (!F.dst->complete) throw ModelError("functor relations need a complete codomain");
    int k = (int)key.size();
    std::vector<int> chain = sc.object_chain(key);
    VectorB lhs(F.src->base);
    for (int j = 0; j <= k; ++j) {
        int parity = 0;
        for (int m = 1; m <= j; ++m) parity += sc.rdeg(key[k - m]);
        int sg = signs.sgn(parity, signs.functor_insertion);
        for (int i = j; i <= k; ++i) {
            int s = i - j;
            VectorB inner = s == 0 ? F.src->curvature_of(chain[j])
                                   : F.src->product_q(sub_key(key, j, i), signs);
            if (inner.is_zero()) continue;
            std::vector<VectorB> outer;
            std::vector<int> ochain;
            for (int m = 0; m < k - i; ++m)
                outer.push_back(VectorB::unit(F.src->base, sc.elems[key[m]].idx));
            outer.push_back(std::move(inner));
            for (int m = k - j; m < k; ++m)
                outer.push_back(VectorB::unit(F.src->base, sc.elems[key[m]].idx));
            for (int m = 0; m <= j; ++m) ochain.push_back(chain[m]);
            for (int m = i; m <= k; ++m) ochain.push_back(chain[m]);
            lhs += apply_functor(F, outer, ochain) * Rational(sg);
        }
    }
    int out_dim = F.dst->ref->hom_dim(F.obj_map[chain.front()], F.obj_map[chain.back()]);
    VectorB rhs = blocking_sum(F, key, chain, F.dst->k_max, out_dim,
                               [&](const std::vector<VectorB>& inputs,
                                   const std::vector<int>& dchain) {
                                   return F.dst->evaluate_product(inputs, dchain, signs);
                               });
    return lhs - rhs;
}

VectorB functor_defect_object(const DeformedFunctor& F, int obj, const SignTable& signs) {
    if (!F.dst->complete) throw ModelError("functor relations need a complete codomain");
    VectorB lhs = apply_functor(F, {F.src->curvature_of(obj)}, {obj, obj});
    int fx = F.obj_map[obj];
    VectorB rhs = F.dst->curvature_of(fx);
    VectorB f0 = F.comp0_of(obj);
    if (!f0.is_zero()) {
        int lmax = std::min(F.dst->k_max, F.src->base->truncation - 1);
        for (int l = 1; l <= lmax; ++l) {
            std::vector<VectorB> inputs(l, f0);
            std::vector<int> chain(l + 1, fx);
            rhs += F.dst->evaluate_product(inputs, chain, signs);
        }
    }
    return lhs - rhs;
}

RelationReport check_functor_relations(const DeformedFunctor& F, int a_max,
                                       const SignTable& signs) {
    RelationReport rep;
    if (!F.dst->complete) {
        rep.fail("functor relations need a complete codomain");
        return rep;
    }
    check_functor_structure(F, rep);
    if (!rep.ok) return rep;
    const AInfCategory& sc = *F.src->ref;
    int bound = a_max;
    if (!F.complete) bound = std::min(bound, F.a_max - 1);
    if (!F.src->complete) bound = std::min(bound, F.src->k_max);
    rep.arity_bound = bound;
    for (int x = 0; x < (int)sc.objects.size(); ++x) {
        ++rep.tuples_checked;
        if (!functor_defect_object(F, x, signs).is_zero())
            rep.fail("functor curvature relation fails at object " + sc.objects[x]);
    }
    for (int k = 1; k <= bound; ++k)
        for_each_composable(sc, k, [&](const std::vector<int>& key) {
            ++rep.tuples_checked;
            if (!functor_defect(F, key, signs).is_zero()) {
                std::string msg = "functor relation fails on (";
                for (size_t i = 0; i < key.size(); ++i)
                    msg += (i ? ", " : "") + sc.elems[key[i]].name;
                rep.fail(msg + ")");
            }
        });
    return rep;
}

std::map<std::vector<int>, QVector> functor_leading(const DeformedFunctor& F) {
    std::map<std::vector<int>, QVector> out;
    for (const auto& [key, v] : F.comps) {
        std::vector<int> chain = F.src->ref->object_chain(key);
        int dim = F.dst->ref->hom_dim(F.obj_map[chain.front()], F.obj_map[chain.back()]);
        QVector lead = v.leading(dim);
        if (!is_zero(lead)) out.emplace(key, std::move(lead));
    }
    return out;
}

bool is_gauge(const DeformedFunctor& F) {
    if (F.src->ref != F.dst->ref) return false;
    for (int x = 0; x < (int)F.obj_map.size(); ++x)
        if (F.obj_map[x] != x) return false;
    const AInfCategory& sc = *F.src->ref;
    std::map<std::vector<int>, QVector> lead = functor_leading(F);
    for (const auto& [key, v] : lead)
        if (key.size() != 1) return false;
    for (int id = 0; id < (int)sc.elems.size(); ++id) {
        QVector unit(sc.hom_dim(sc.elems[id].src, sc.elems[id].tgt), 0);
        unit[sc.elems[id].idx] = 1;
        auto it = lead.find({id});
        if (it == lead.end() || it->second != unit) return false;
    }
    return true;
}

FunctorClass classify(const DeformedFunctor& F) {
    if (is_gauge(F)) return FunctorClass::GaugeEquivalence;
    const AInfCategory& sc = *F.src->ref;
    const AInfCategory& dc = *F.dst->ref;
    std::map<std::vector<int>, QVector> lead = functor_leading(F);

    // leading F^1 as one rational matrix per hom space
    auto f1_matrix = [&](HomKey hk) {
        const auto& ids = sc.hom_elems.at(hk);
        int out_dim = dc.hom_dim(F.obj_map[hk.first], F.obj_map[hk.second]);
        std::vector<QVector> cols;
        for (int id : ids) {
            auto it = lead.find({id});
            cols.push_back(it == lead.end() ? QVector(out_dim, 0) : it->second);
        }
        return RatMat::from_columns(cols);
    };

    // isomorphism: bijective object map and invertible leading F^1 everywhere
    std::vector<int> hit(dc.objects.size(), 0);
    for (int x : F.obj_map) ++hit[x];
    bool obj_bijective = true;
    for (int h : hit) obj_bijective &= (h == 1);
    if (obj_bijective) {
        bool iso = true;
        for (const auto& [hk, ids] : sc.hom_elems) {
            RatMat m = f1_matrix(hk);
            if (m.rows() != m.cols() || !m.inverse()) iso = false;
        }
        if (iso) return FunctorClass::Isomorphism;
    }

    // quasi-isomorphism: the induced map on mu^1-cohomology is invertible
    Splitting ssp = compute_splitting(sc);
    Splitting dsp = compute_splitting(dc);
    bool qiso = obj_bijective;
    for (const auto& [hk, shs] : ssp.spaces) {
        if (!qiso) break;
        HomKey dk{F.obj_map[hk.first], F.obj_map[hk.second]};
        const HomSplitting& dhs = dsp.spaces.at(dk);
        RatMat m = f1_matrix(hk);
        std::vector<QVector> cols;
        for (const QVector& h : shs.H) cols.push_back(dhs.h_coords(m.apply(h)));
        RatMat induced = RatMat::from_columns(cols);
        if (shs.dim_h() == 0 && dhs.dim_h() == 0) continue;
        if (induced.rows() != induced.cols() || !induced.inverse()) qiso = false;
    }
    return qiso ? FunctorClass::QuasiIsomorphism : FunctorClass::None;
}

VectorB transport_uncurving(const DeformedFunctor& F, int obj, const VectorB& s) {
    int trunc = F.src->base->truncation;
    if (s.madic_order(trunc) < 1) throw ModelError("uncurving morphisms must be infinitesimal");
    VectorB t = F.comp0_of(obj);
    int kmax = std::min(F.a_max, trunc - 1);
    for (int k = 1; k <= kmax; ++k)
        t += apply_functor(F, std::vector<VectorB>(k, s), std::vector<int>(k + 1, obj));
    return t;
}

DeformedFunctor untwist_functor(const AInfDeformation& twisted, const AInfDeformation& def,
                                const std::map<int, VectorB>& r) {
    if (twisted.ref != def.ref) throw ModelError("untwist_functor needs a shared category");
    DeformedFunctor F = DeformedFunctor::identity(def);
    F.src = &twisted;
    F.dst = &def;
    for (const auto& [obj, v] : r)
        if (!v.is_zero()) F.comp0[obj] = v;
    return F;
}

DeformedFunctor compose(const DeformedFunctor& G, const DeformedFunctor& F,
                        const SignTable& signs) {
    (void)signs;
    if (F.dst != G.src) throw ModelError("compose: functors do not chain");
    if (!F.complete || !G.complete) throw ModelError("compose needs complete functors");
    DeformedFunctor GF;
    GF.src = F.src;
    GF.dst = G.dst;
    for (int x : F.obj_map) GF.obj_map.push_back(G.obj_map[x]);
    GF.a_max = std::max(1, G.a_max * F.a_max);
    const AInfCategory& sc = *F.src->ref;
    int trunc = F.src->base->truncation;
    for (int x = 0; x < (int)sc.objects.size(); ++x) {
        VectorB v = G.comp0_of(F.obj_map[x]);
        VectorB f0 = F.comp0_of(x);
        if (!f0.is_zero()) {
            int lmax = std::min(G.a_max, trunc - 1);
            for (int l = 1; l <= lmax; ++l)
                v += apply_functor(G, std::vector<VectorB>(l, f0),
                                   std::vector<int>(l + 1, F.obj_map[x]));
        }
        if (!v.is_zero()) GF.comp0[x] = std::move(v);
    }
    for (int n = 1; n <= GF.a_max; ++n)
        for_each_composable(sc, n, [&](const std::vector<int>& key) {
            std::vector<int> chain = sc.object_chain(key);
            VectorB v = blocking_sum(F, key, chain, G.a_max, 0,
                                     [&](const std::vector<VectorB>& inputs,
                                         const std::vector<int>& dchain) {
                                         return apply_functor(G, inputs, dchain);
                                     });
            if (!v.is_zero()) GF.comps[key] = std::move(v);
        });
    return GF;
}

} // namespace ade
