#include "ade/kadeishvili.hpp"

#include <cassert>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ade {

std::string hc_elem_name(const AInfCategory& cat, int src, int tgt, int i) {
    return "h" + std::to_string(i) + "_" + cat.objects[src] + "_" + cat.objects[tgt];
}

QVector q_evaluate(const AInfCategory& cat, const std::vector<QVector>& inputs,
                   const std::vector<int>& chain, const SignTable& signs) {
    int k = (int)inputs.size();
    assert((int)chain.size() == k + 1);
    int dim = cat.hom_dim(chain.front(), chain.back());
    QVector out(dim, 0);
    std::vector<int> key(k);
    std::function<void(int, const Rational&)> rec = [&](int slot, const Rational& c) {
        if (slot == k) {
            QVector v = cat.product(key, signs);
            for (int t = 0; t < dim; ++t) out[t] += c * v[t];
            return;
        }
        // inputs[slot] is a_{k-slot} in Hom(chain[k-slot-1], chain[k-slot]).
        int src = chain[k - slot - 1], tgt = chain[k - slot];
        const auto& ids = cat.hom_elems.at({src, tgt});
        for (int j = 0; j < (int)inputs[slot].size(); ++j) {
            if (inputs[slot][j] == 0) continue;
            key[slot] = ids[j];
            rec(slot + 1, c * inputs[slot][j]);
        }
    };
    rec(0, 1);
    return out;
}

namespace {

struct TreeEval {
    const AInfCategory& cat;
    const Splitting& sp;
    const std::vector<QVector>& asc; // inputs ascending: asc[i] = h_{i+1}
    const std::vector<int>& chain;   // objects ascending: chain[0..n]
    const SignTable& signs;

    // Evaluate the subtree whose leaves start at ascending position `lo`
    // (0-based); returns the value before the node decoration is applied.
    QVector node(const TreeShape& t, int lo, int& span) const {
        if (t.is_leaf()) {
            span = 1;
            return asc[lo];
        }
        std::vector<QVector> child_vals;
        std::vector<int> sub_chain{chain[lo]};
        int pos = lo;
        for (const auto& c : t.children) {
            int cspan = 0;
            QVector v = node(c, pos, cspan);
            if (!c.is_leaf()) {
                // internal node decoration: h ∘ mu
                const HomSplitting& hs = sp.spaces.at({chain[pos], chain[pos + cspan]});
                v = apply_h(hs, v);
            }
            child_vals.push_back(std::move(v));
            pos += cspan;
            sub_chain.push_back(chain[pos]);
        }
        span = pos - lo;
        // mu arguments in written order: reverse of ascending child order.
        std::vector<QVector> args(child_vals.rbegin(), child_vals.rend());
        return q_evaluate(cat, args, sub_chain, signs);
    }
};

} // namespace

QVector evaluate_pi_tree(const AInfCategory& cat, const Splitting& sp, const TreeShape& tree,
                         const std::vector<QVector>& inputs, const std::vector<int>& chain,
                         bool h_at_root, const SignTable& signs) {
    int n = (int)inputs.size();
    assert(tree.leaf_count() == n);
    std::vector<QVector> asc(inputs.rbegin(), inputs.rend());
    TreeEval ev{cat, sp, asc, chain, signs};
    int span = 0;
    QVector v = ev.node(tree, 0, span);
    const HomSplitting& hs = sp.spaces.at({chain.front(), chain.back()});
    return h_at_root ? apply_h(hs, v) : apply_pi(hs, v);
}

MinimalModel minimal_model(const AInfCategory& cat, const Splitting& sp, int a_max, int jobs,
                           const SignTable& signs) {
    if (a_max < 2) throw ModelError("minimal_model needs a_max >= 2");
    MinimalModel mm;
    AInfCategory& hc = mm.hc;
    hc.grading = cat.grading;
    hc.k_max = a_max;
    hc.complete = false;
    for (const auto& name : cat.objects) hc.add_object(name);
    for (const auto& [hk, hs] : sp.spaces) {
        if (hs.dim_h() == 0) continue;
        std::vector<BasisElement> basis;
        for (int i = 0; i < hs.dim_h(); ++i)
            basis.push_back({hc_elem_name(cat, hk.first, hk.second, i), hs.h_degrees[i]});
        hc.add_hom(hk.first, hk.second, std::move(basis));
    }
    // Identities descend: the identity is a canonical kernel vector, hence an
    // H basis vector on the nose.
    for (const auto& [obj, id] : cat.identity_of) {
        const auto it = sp.spaces.find({obj, obj});
        if (it == sp.spaces.end()) continue;
        const HomSplitting& hs = it->second;
        QVector unit(hs.dim(), 0);
        unit[cat.elems[id].idx] = 1;
        for (int i = 0; i < hs.dim_h(); ++i)
            if (hs.H[i] == unit) hc.set_identity(obj, hc_elem_name(cat, obj, obj, i));
    }
    // F^1 is the inclusion of H.
    for (const auto& [hk, ids] : hc.hom_elems) {
        const HomSplitting& hs = sp.spaces.at(hk);
        for (int i = 0; i < (int)ids.size(); ++i) mm.functor[{ids[i]}] = hs.H[i];
    }
    // Tree sums for arities 2..a_max.
    for (int n = 2; n <= a_max; ++n) {
        std::vector<TreeShape> shapes = enumerate_trees(n);
        auto tuples = composable_tuples(hc, n);
        std::vector<std::pair<QVector, QVector>> results(tuples.size()); // (product, functor)
        auto eval_tuple = [&](size_t ti) {
            const std::vector<int>& key = tuples[ti];
            std::vector<int> chain = hc.object_chain(key);
            std::vector<QVector> inputs; // written order, C coordinates
            for (int id : key) {
                const auto& e = hc.elems[id];
                inputs.push_back(sp.spaces.at({e.src, e.tgt}).H[e.idx]);
            }
            const HomSplitting& out_hs = sp.spaces.at({chain.front(), chain.back()});
            QVector prod(out_hs.dim(), 0), fun(out_hs.dim(), 0);
            for (const auto& t : shapes) {
                QVector pi_val = evaluate_pi_tree(cat, sp, t, inputs, chain, false, signs);
                QVector h_val = evaluate_pi_tree(cat, sp, t, inputs, chain, true, signs);
                int nt = internal_node_count(t);
                int sp_ = signs.sgn(nt, signs.tree_internal);
                prod = add(prod, scale(pi_val, sp_));
                fun = add(fun, scale(h_val, -sp_));
            }
            results[ti] = {out_hs.h_coords(prod), fun};
        };
#ifdef _OPENMP
        int nt_jobs = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt_jobs)
        for (long ti = 0; ti < (long)tuples.size(); ++ti) eval_tuple((size_t)ti);
#else
        (void)jobs;
        for (size_t ti = 0; ti < tuples.size(); ++ti) eval_tuple(ti);
#endif
        for (size_t ti = 0; ti < tuples.size(); ++ti) {
            if (!is_zero(results[ti].first)) hc.products[tuples[ti]] = results[ti].first;
            if (!is_zero(results[ti].second)) mm.functor[tuples[ti]] = results[ti].second;
        }
    }
    return mm;
}

} // namespace ade
