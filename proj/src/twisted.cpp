#include "ade/twisted.hpp"

#include <functional>
#include <sstream>

namespace ade {

static const std::vector<int>& hom_ids(const AInfCategory& cat, int src, int tgt) {
    static const std::vector<int> empty;
    auto it = cat.hom_elems.find({src, tgt});
    return it == cat.hom_elems.end() ? empty : it->second;
}

// --- AddMorphism -----------------------------------------------------------

void AddMorphism::set_block(int i, int j, VectorB v) {
    if (v.is_zero())
        blocks.erase({i, j});
    else
        blocks[{i, j}] = std::move(v);
}

VectorB AddMorphism::block(int i, int j) const {
    auto it = blocks.find({i, j});
    return it == blocks.end() ? VectorB(base) : it->second;
}

bool AddMorphism::is_zero() const {
    for (const auto& [k, v] : blocks)
        if (!v.is_zero()) return false;
    return true;
}

int AddMorphism::madic_order(int truncation_if_zero) const {
    int n = truncation_if_zero;
    for (const auto& [k, v] : blocks) n = std::min(n, v.madic_order(truncation_if_zero));
    return n;
}

AddMorphism AddMorphism::slice(int d) const {
    AddMorphism out(base, deg);
    for (const auto& [k, v] : blocks) out.set_block(k.first, k.second, v.slice(d));
    return out;
}

AddMorphism& AddMorphism::operator+=(const AddMorphism& o) {
    if (deg != o.deg && !o.is_zero() && !is_zero())
        throw ModelError("cannot add block morphisms of different degree");
    for (const auto& [k, v] : o.blocks) set_block(k.first, k.second, block(k.first, k.second) + v);
    return *this;
}

AddMorphism AddMorphism::operator*(const Rational& s) const {
    AddMorphism out(base, deg);
    if (s == 0) return out;
    for (const auto& [k, v] : blocks) out.blocks[k] = v * s;
    return out;
}

// --- additive and twisted products -----------------------------------------

static void validate_block_degrees(const AInfCategory& cat, const AddMorphism& f,
                                   const TwObject& src, const TwObject& tgt) {
    for (const auto& [key, v] : f.blocks) {
        auto [i, j] = key;
        if (i < 0 || i >= (int)src.summands.size() || j < 0 || j >= (int)tgt.summands.size())
            throw ModelError("block index out of range");
        const TwSummand& a = src.summands[i];
        const TwSummand& b = tgt.summands[j];
        const GradedBasis& gb = cat.hom_basis(a.obj, b.obj);
        long want = f.deg - b.shift + a.shift; // C-degree of this block
        for (const auto& [t, c] : v.comps())
            if (!c.is_zero() && !cat.degrees_equal(gb.degree(t), want))
                throw ModelError("block morphism entry has wrong degree");
    }
}

AddMorphism add_product(const AInfDeformation& def, const std::vector<AddMorphism>& inputs,
                        const std::vector<const TwObject*>& chain, const SignTable& signs) {
    const AInfCategory& cat = *def.ref;
    int k = (int)inputs.size();
    if ((int)chain.size() != k + 1) throw ModelError("chain length must be arity + 1");
    // inputs[slot] = a_{k-slot} maps chain[k-slot-1] -> chain[k-slot]
    for (int slot = 0; slot < k; ++slot)
        validate_block_degrees(cat, inputs[slot], *chain[k - slot - 1], *chain[k - slot]);
    AddMorphism out(def.base, 2 - k);
    for (const auto& a : inputs) out.deg += a.deg;
    // Summand paths s_0, ..., s_k with s_m a summand index of chain[m].
    std::vector<int> path(k + 1);
    std::function<void(int)> rec = [&](int m) {
        if (m > k) {
            std::vector<VectorB> blocks_w; // written order a_k, ..., a_1
            std::vector<int> cchain(k + 1);
            for (int t = 0; t <= k; ++t) cchain[t] = chain[t]->summands[path[t]].obj;
            bool nonzero = true;
            for (int slot = 0; slot < k && nonzero; ++slot) {
                int i = k - slot; // a_i
                VectorB b = inputs[slot].block(path[i - 1], path[i]);
                if (b.is_zero()) nonzero = false;
                blocks_w.push_back(std::move(b));
            }
            if (!nonzero) return;
            // shift twist: sum_i ||a_i||_C (t_{i-1} - t_0)
            long parity = 0;
            long t0 = chain[0]->summands[path[0]].shift;
            for (int i = 2; i <= k; ++i) {
                long ti = chain[i]->summands[path[i]].shift;
                long tim1 = chain[i - 1]->summands[path[i - 1]].shift;
                long rd = inputs[k - i].deg - ti + tim1 - 1; // ||a_i||_C
                parity += rd * (tim1 - t0);
            }
            int sgn = signs.sgn(parity, signs.shift_twist);
            VectorB v = def.evaluate_product(blocks_w, cchain, signs) * Rational(sgn);
            out.set_block(path[0], path[k], out.block(path[0], path[k]) + v);
            return;
        }
        for (int s = 0; s < (int)chain[m]->summands.size(); ++s) {
            path[m] = s;
            rec(m + 1);
        }
    };
    rec(0);
    return out;
}

AddMorphism tw_product(const AInfDeformation& def, const std::vector<AddMorphism>& inputs,
                       const std::vector<const TwObject*>& chain, const SignTable& signs) {
    if (!def.complete)
        throw ModelError("twisted products need a complete deformation (products above "
                         "k_max must be known to vanish)");
    int k = (int)inputs.size();
    AddMorphism out(def.base, 2 - k);
    for (const auto& a : inputs) out.deg += a.deg;
    // Insert n_m copies of delta at position m (between a_m and a_{m+1}),
    // with k + sum n_m <= k_max.
    std::vector<int> ns(k + 1, 0);
    std::function<void(int, int)> rec = [&](int m, int budget) {
        if (m > k) {
            std::vector<AddMorphism> ext;
            std::vector<const TwObject*> echain;
            echain.push_back(chain[0]);
            // build in written order: deltas at position k first
            for (int p = k; p >= 0; --p) {
                if (p < k) ext.push_back(inputs[k - 1 - p]);
                for (int c = 0; c < ns[p]; ++c) ext.push_back(chain[p]->delta);
            }
            for (int p = 0; p <= k; ++p) {
                for (int c = 0; c < ns[p]; ++c) echain.push_back(chain[p]);
                if (p < k) echain.push_back(chain[p + 1]);
            }
            out += add_product(def, ext, echain, signs);
            return;
        }
        for (int n = 0; n <= budget; ++n) {
            ns[m] = n;
            rec(m + 1, budget - n);
        }
    };
    rec(0, std::max(0, def.k_max - k));
    return out;
}

AddMorphism tw_curvature(const AInfDeformation& def, const TwObject& X, const SignTable& signs) {
    if (!def.complete) throw ModelError("twisted curvature needs a complete deformation");
    AddMorphism out(def.base, 2);
    for (int i = 0; i < (int)X.summands.size(); ++i)
        out.set_block(i, i, def.curvature_of(X.summands[i].obj));
    for (int k = 1; k <= def.k_max; ++k) {
        std::vector<AddMorphism> deltas(k, X.delta);
        std::vector<const TwObject*> chain(k + 1, &X);
        out += add_product(def, deltas, chain, signs);
    }
    return out;
}

AddMorphism delta_leading(const TwObject& X) { return X.delta.slice(0); }

RelationReport validate_tw_object(const AInfDeformation& def, const TwObject& X,
                                  const SignTable& signs) {
    RelationReport rep;
    const AInfCategory& cat = *def.ref;
    if (X.delta.deg != 1) rep.fail("twisted differential of " + X.name + " must have degree 1");
    try {
        validate_block_degrees(cat, X.delta, X, X);
    } catch (const ModelError& e) {
        rep.fail(X.name + ": " + e.what());
    }
    AddMorphism lead = delta_leading(X);
    for (const auto& [key, v] : lead.blocks)
        if (!v.is_zero() && key.first >= key.second)
            rep.fail("mod-m twisted differential of " + X.name +
                     " is not strictly upper triangular");
    // classical Maurer-Cartan for the mod-m part
    AInfDeformation triv = AInfDeformation::trivial(cat, def.base);
    TwObject X0{X.name, X.summands, lead};
    AddMorphism mc(def.base, 2);
    for (int k = 1; k <= cat.k_max; ++k) {
        std::vector<AddMorphism> deltas(k, lead);
        std::vector<const TwObject*> chain(k + 1, &X0);
        mc += add_product(triv, deltas, chain, signs);
    }
    ++rep.tuples_checked;
    if (!mc.is_zero())
        rep.fail("mod-m twisted differential of " + X.name +
                 " fails the classical Maurer-Cartan equation");
    return rep;
}

// --- materialization --------------------------------------------------------

int TwCategory::basis_index(int x, int y, int i, int j, int t) const {
    int off = 0;
    const TwObject& X = objs[x];
    const TwObject& Y = objs[y];
    const AInfCategory& c = *underlying;
    for (int bi = 0; bi < (int)X.summands.size(); ++bi)
        for (int bj = 0; bj < (int)Y.summands.size(); ++bj) {
            int d = c.hom_dim(X.summands[bi].obj, Y.summands[bj].obj);
            if (bi == i && bj == j) return off + t;
            off += d;
        }
    throw ModelError("block index out of range");
}

VectorB TwCategory::pack(int x, int y, const AddMorphism& f) const {
    VectorB out(def.base);
    for (const auto& [key, v] : f.blocks)
        for (const auto& [t, c] : v.comps())
            out.set_comp(basis_index(x, y, key.first, key.second, t), c);
    return out;
}

AddMorphism TwCategory::unpack(int x, int y, const VectorB& v, int deg) const {
    AddMorphism out(def.base, deg);
    const TwObject& X = objs[x];
    const TwObject& Y = objs[y];
    const AInfCategory& c = *underlying;
    int off = 0;
    for (int bi = 0; bi < (int)X.summands.size(); ++bi)
        for (int bj = 0; bj < (int)Y.summands.size(); ++bj) {
            int d = c.hom_dim(X.summands[bi].obj, Y.summands[bj].obj);
            VectorB blk(def.base);
            for (const auto& [t, coeff] : v.comps())
                if (t >= off && t < off + d) blk.set_comp(t - off, coeff);
            if (!blk.is_zero()) out.set_block(bi, bj, std::move(blk));
            off += d;
        }
    return out;
}

TwCategory materialize_tw(const AInfDeformation& def, std::vector<TwObject> objs,
                          const SignTable& signs) {
    const AInfCategory& c = *def.ref;
    TwCategory twc;
    twc.underlying = &c;
    twc.objs = std::move(objs);
    twc.ref = std::make_shared<AInfCategory>();
    AInfCategory& tcat = *twc.ref;
    tcat.grading = c.grading;
    tcat.k_max = def.k_max;
    tcat.complete = true;
    for (const TwObject& X : twc.objs) {
        RelationReport v = validate_tw_object(def, X, signs);
        if (!v.ok) throw ModelError(v.violations.front());
        tcat.add_object(X.name);
    }
    int n = (int)twc.objs.size();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            const TwObject& X = twc.objs[x];
            const TwObject& Y = twc.objs[y];
            std::vector<BasisElement> basis;
            for (int i = 0; i < (int)X.summands.size(); ++i)
                for (int j = 0; j < (int)Y.summands.size(); ++j) {
                    const GradedBasis& gb =
                        c.hom_basis(X.summands[i].obj, Y.summands[j].obj);
                    for (int t = 0; t < gb.dim(); ++t) {
                        std::ostringstream nm;
                        nm << X.name << '>' << Y.name << '|' << i << ',' << j << '|'
                           << gb.name(t);
                        basis.push_back({nm.str(), gb.degree(t) + Y.summands[j].shift -
                                                       X.summands[i].shift});
                    }
                }
            if (!basis.empty()) tcat.add_hom(x, y, std::move(basis));
        }
    AInfDeformation tdef = AInfDeformation::trivial(tcat, def.base);
    tdef.k_max = def.k_max;
    // products: evaluate the twisted product on every composable basis tuple
    for (int k = 1; k <= def.k_max; ++k)
        for_each_composable(tcat, k, [&](const std::vector<int>& key) {
            std::vector<int> ochain = tcat.object_chain(key);
            std::vector<const TwObject*> chain;
            for (int o : ochain) chain.push_back(&twc.objs[o]);
            std::vector<AddMorphism> inputs;
            for (int slot = 0; slot < k; ++slot) {
                const auto& e = tcat.elems[key[slot]];
                // decode the basis index back into a single block entry
                AddMorphism a(def.base, e.degree);
                const TwObject& S = twc.objs[e.src];
                const TwObject& T = twc.objs[e.tgt];
                int off = 0;
                for (int bi = 0; bi < (int)S.summands.size(); ++bi)
                    for (int bj = 0; bj < (int)T.summands.size(); ++bj) {
                        int d = c.hom_dim(S.summands[bi].obj, T.summands[bj].obj);
                        if (e.idx >= off && e.idx < off + d)
                            a.set_block(bi, bj, VectorB::unit(def.base, e.idx - off));
                        off += d;
                    }
                inputs.push_back(std::move(a));
            }
            AddMorphism v = tw_product(def, inputs, chain, signs);
            VectorB packed = twc.pack(ochain.front(), ochain.back(), v);
            if (packed.is_zero()) return;
            QVector lead = packed.leading(tcat.hom_dim(ochain.front(), ochain.back()));
            if (!is_zero(lead)) tcat.products[key] = lead;
            VectorB corr = packed - VectorB::from_rational(def.base, lead);
            if (!corr.is_zero()) tdef.correction[key] = std::move(corr);
        });
    for (int x = 0; x < n; ++x) {
        AddMorphism cu = tw_curvature(def, twc.objs[x], signs);
        VectorB packed = twc.pack(x, x, cu);
        if (!packed.is_zero()) tdef.set_curvature(x, packed);
    }
    twc.def = std::move(tdef);
    twc.def.ref = twc.ref.get();
    return twc;
}

RelationReport check_tw_relations(const TwCategory& twc, int a_max, const SignTable& signs) {
    RelationReport rep;
    const AInfCategory& tcat = *twc.ref;
    rep.arity_bound = a_max;
    for (int x = 0; x < (int)tcat.objects.size(); ++x) {
        VectorB d = curved_defect_object(twc.def, x, signs);
        ++rep.tuples_checked;
        if (!d.is_zero()) rep.fail("curved relation fails on empty tuple at " + tcat.objects[x]);
    }
    for (int k = 1; k <= a_max; ++k)
        for_each_composable(tcat, k, [&](const std::vector<int>& key) {
            ++rep.tuples_checked;
            VectorB d = curved_defect(twc.def, key, signs);
            if (!d.is_zero()) {
                std::string names;
                for (int id : key) names += tcat.elems[id].name + " ";
                rep.fail("curved relation fails on (" + names + ")");
            }
        });
    return rep;
}

// --- uncurving --------------------------------------------------------------

VectorB object_twist_curvature(const AInfDeformation& def, int obj, const VectorB& r,
                               const SignTable& signs) {
    VectorB out = def.curvature_of(obj);
    for (int k = 1; k <= def.k_max; ++k) {
        std::vector<VectorB> inputs(k, r);
        std::vector<int> chain(k + 1, obj);
        out += def.evaluate_product(inputs, chain, signs);
    }
    return out;
}

AInfDeformation twist_by(const AInfDeformation& def, const std::map<int, VectorB>& r,
                         const SignTable& signs) {
    if (!def.complete) throw ModelError("twisting needs a complete deformation");
    const AInfCategory& cat = *def.ref;
    int n_trunc = def.base->truncation;
    for (const auto& [obj, v] : r) {
        if (v.madic_order(n_trunc) < 1) throw ModelError("twists must be infinitesimal");
        const GradedBasis& end = cat.hom_basis(obj, obj);
        for (const auto& [t, c] : v.comps())
            if (!c.is_zero() && !cat.degrees_equal(end.degree(t), 1))
                throw ModelError("twists must have degree 1");
    }
    auto r_of = [&](int obj) {
        auto it = r.find(obj);
        return it == r.end() ? VectorB(def.base) : it->second;
    };
    AInfDeformation out = AInfDeformation::trivial(cat, def.base);
    out.k_max = def.k_max;
    for (int k = 1; k <= def.k_max; ++k)
        for_each_composable(cat, k, [&](const std::vector<int>& key) {
            std::vector<int> ochain = cat.object_chain(key);
            VectorB total(def.base);
            std::vector<int> ns(k + 1, 0);
            std::function<void(int, int)> rec = [&](int m, int budget) {
                if (m > k) {
                    std::vector<VectorB> ext;
                    std::vector<int> echain{ochain[0]};
                    for (int p = k; p >= 0; --p) {
                        if (p < k)
                            ext.push_back(VectorB::unit(def.base, cat.elems[key[k - 1 - p]].idx));
                        for (int c2 = 0; c2 < ns[p]; ++c2) ext.push_back(r_of(ochain[p]));
                    }
                    for (int p = 0; p <= k; ++p) {
                        for (int c2 = 0; c2 < ns[p]; ++c2) echain.push_back(ochain[p]);
                        if (p < k) echain.push_back(ochain[p + 1]);
                    }
                    total += def.evaluate_product(ext, echain, signs);
                    return;
                }
                for (int c2 = 0; c2 <= budget; ++c2) {
                    ns[m] = c2;
                    rec(m + 1, budget - c2);
                }
            };
            rec(0, std::max(0, def.k_max - k));
            QVector refv = cat.product(key, signs);
            VectorB corr = total - VectorB::from_rational(def.base, refv);
            if (!corr.is_zero()) out.correction[key] = std::move(corr);
        });
    for (int x = 0; x < (int)cat.objects.size(); ++x) {
        VectorB cu = object_twist_curvature(def, x, r_of(x), signs);
        if (!cu.is_zero()) out.set_curvature(x, cu);
    }
    return out;
}

UncurveResult attempt_uncurve_object(const AInfDeformation& def, const Splitting& sp, int obj,
                                     const SignTable& signs) {
    if (!def.complete) throw ModelError("uncurving needs a complete deformation");
    const AInfCategory& cat = *def.ref;
    const HomSplitting& hs = sp.spaces.at({obj, obj});
    int n_trunc = def.base->truncation;
    int dim = cat.hom_dim(obj, obj);
    UncurveResult res;
    res.r = VectorB(def.base);
    res.obstruction = VectorB(def.base);
    for (int round = 0; round <= n_trunc; ++round) {
        VectorB c = object_twist_curvature(def, obj, res.r, signs);
        int ord = c.madic_order(n_trunc);
        if (ord >= n_trunc) {
            res.ok = true;
            return res;
        }
        // peel the lowest slice monomial by monomial
        VectorB s = c.slice(ord);
        VectorB delta_r(def.base);
        std::map<Exponents, QVector> by_monomial;
        for (const auto& [t, coeff] : s.comps())
            for (const auto& [e, q] : coeff.terms()) {
                auto [it, fresh] = by_monomial.emplace(e, QVector(dim, 0));
                it->second[t] += q;
            }
        for (const auto& [e, v] : by_monomial) {
            QVector obs = apply_pi(hs, v);
            if (!is_zero(obs)) {
                for (int t = 0; t < dim; ++t)
                    if (obs[t] != 0) {
                        Coefficient cc = res.obstruction.comp(t);
                        cc += Coefficient::monomial(def.base, e, obs[t]);
                        res.obstruction.set_comp(t, cc);
                    }
                res.obstruction_order = ord;
            }
            QVector pull = apply_h(hs, v);
            for (int t = 0; t < dim; ++t)
                if (pull[t] != 0) {
                    Coefficient cc = delta_r.comp(t);
                    cc += Coefficient::monomial(def.base, e, -pull[t]);
                    delta_r.set_comp(t, cc);
                }
        }
        if (!res.obstruction.is_zero()) return res; // ok == false
        res.r += delta_r;
    }
    return res; // unreachable in practice: order grows every round
}

} // namespace ade
