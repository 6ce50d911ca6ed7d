#include "ade/deformed.hpp"

#include <cassert>

namespace ade {

namespace {

// Coordinate blocks of a decomposition: [0, dim_h) harmonic, then dim_r middle
// coordinates, then dim_r bottom coordinates.
VectorB block_of(const VectorB& coords, int lo, int n) {
    VectorB out(coords.base());
    for (const auto& [i, c] : coords.comps())
        if (i >= lo && i < lo + n) out.set_comp(i - lo, c);
    return out;
}

VectorB combine(BaseSpecPtr base, const std::vector<VectorB>& cols, const VectorB& coords) {
    VectorB out(std::move(base));
    for (const auto& [j, c] : coords.comps()) out += cols[j] * c;
    return out;
}

std::vector<VectorB> lift_all(BaseSpecPtr base, const std::vector<QVector>& vs) {
    std::vector<VectorB> out;
    out.reserve(vs.size());
    for (const QVector& v : vs) out.push_back(VectorB::from_rational(base, v));
    return out;
}

DefHomOps compute_hom_ops(const AInfDeformation& def, const HomSplitting& hs,
                          const std::vector<int>& ids, const SignTable& signs) {
    DefHomOps ops;
    ops.base = def.base;
    ops.hs = &hs;
    ops.dim = hs.dim();
    ops.dim_h = hs.dim_h();
    ops.dim_r = hs.dim_r();

    std::vector<VectorB> mu_cols;
    mu_cols.reserve(ops.dim);
    for (int t = 0; t < ops.dim; ++t) mu_cols.push_back(def.product_q({ids[t]}, signs));
    ops.mu1q = LinearMapB::from_columns(def.base, ops.dim, std::move(mu_cols));

    std::vector<VectorB> H = lift_all(def.base, hs.H);
    std::vector<VectorB> R = lift_all(def.base, hs.R);
    std::vector<VectorB> mu_r;
    mu_r.reserve(ops.dim_r);
    for (const VectorB& r : R) mu_r.push_back(ops.mu1q.apply(r));

    std::vector<VectorB> cols = H;
    cols.insert(cols.end(), mu_r.begin(), mu_r.end());
    cols.insert(cols.end(), R.begin(), R.end());
    ops.psi_inv = LinearMapB::from_columns(def.base, ops.dim, cols).invert_leading();

    LinearMapB D(def.base, ops.dim_h, ops.dim_h);
    LinearMapB E(def.base, ops.dim_r, ops.dim_h);
    LinearMapB F(def.base, ops.dim_r, ops.dim_h);
    ops.Hq.reserve(ops.dim_h);
    for (int j = 0; j < ops.dim_h; ++j) {
        VectorB c = ops.psi_inv.apply(ops.mu1q.apply(H[j]));
        D.col(j) = block_of(c, 0, ops.dim_h);
        E.col(j) = block_of(c, ops.dim_h, ops.dim_r);
        F.col(j) = block_of(c, ops.dim_h + ops.dim_r, ops.dim_r);
        ops.Hq.push_back(H[j] - combine(def.base, R, E.col(j)));
    }
    ops.D = std::move(D);
    ops.E = std::move(E);
    ops.F = std::move(F);

    std::vector<VectorB> cols2 = ops.Hq;
    cols2.insert(cols2.end(), mu_r.begin(), mu_r.end());
    cols2.insert(cols2.end(), R.begin(), R.end());
    ops.psi2_inv = LinearMapB::from_columns(def.base, ops.dim, std::move(cols2)).invert_leading();
    return ops;
}

} // namespace

DefOps compute_def_operators(const AInfDeformation& def, const Splitting& sp,
                             const SignTable& signs) {
    if (sp.cat != def.ref) throw ModelError("splitting belongs to a different category");
    DefOps out;
    out.def = &def;
    out.sp = &sp;
    for (const auto& [hk, hs] : sp.spaces)
        out.spaces.emplace(hk, compute_hom_ops(def, hs, def.ref->hom_elems.at(hk), signs));
    return out;
}

VectorB apply_hq(const DefHomOps& ops, const VectorB& v) {
    VectorB beta = block_of(ops.psi2_inv.apply(v), ops.dim_h, ops.dim_r);
    return combine(ops.base, lift_all(ops.base, ops.hs->R), beta);
}

VectorB apply_piq(const DefHomOps& ops, const VectorB& v) {
    return combine(ops.base, ops.Hq, phi_of(ops, v));
}

VectorB phi_of(const DefHomOps& ops, const VectorB& v) {
    return block_of(ops.psi2_inv.apply(v), 0, ops.dim_h);
}

VectorB phi_inv_of(const DefHomOps& ops, const VectorB& h_coords) {
    return combine(ops.base, ops.Hq, h_coords);
}

bool has_optimal_curvature(const AInfDeformation& def, const Splitting& sp,
                           const SignTable& signs) {
    DefOps ops = compute_def_operators(def, sp, signs);
    for (const auto& [obj, c] : def.curvature) {
        const DefHomOps& e = ops.spaces.at({obj, obj});
        if (apply_piq(e, c) != c) return false;
    }
    return true;
}

OptimizationResult optimize_curvature(const AInfDeformation& def, const Splitting& sp,
                                      const SignTable& signs) {
    OptimizationResult res;
    res.optimized = def;
    const int trunc = def.base->truncation;
    std::map<int, VectorB> twist; // accumulated -r_total
    // Each round doubles the m-adic order of the residual twist, so the loop
    // ends well before 2 * truncation iterations; more means a bug.
    for (int iter = 0; iter < 2 * trunc + 2; ++iter) {
        DefOps ops = compute_def_operators(res.optimized, sp, signs);
        OptimizationStep step;
        step.min_order = trunc;
        for (const auto& [obj, c] : res.optimized.curvature) {
            VectorB ri = apply_hq(ops.spaces.at({obj, obj}), c);
            if (ri.is_zero()) continue;
            step.min_order = std::min(step.min_order, ri.madic_order(trunc));
            step.r.emplace(obj, std::move(ri));
        }
        if (step.r.empty()) return res;
        for (const auto& [obj, ri] : step.r) {
            auto it = res.r_total.emplace(obj, VectorB(def.base)).first;
            it->second += ri;
            twist[obj] = -it->second;
        }
        res.trace.push_back(std::move(step));
        res.optimized = twist_by(def, twist, signs);
    }
    throw ModelError("curvature optimization failed to converge");
}

namespace {

// Deformed tree residue: same recursion as the classical transfer, with the
// deformed products at the nodes and h_q as the internal decoration.  Returns
// the root value before the root decoration.
struct DefTreeEval {
    const AInfDeformation& def;
    const DefOps& ops;
    const std::vector<VectorB>& asc; // inputs ascending: asc[i] = h_{i+1}
    const std::vector<int>& chain;   // objects ascending: chain[0..n]
    const SignTable& signs;

    VectorB node(const TreeShape& t, int lo, int& span) const {
        if (t.is_leaf()) {
            span = 1;
            return asc[lo];
        }
        std::vector<VectorB> child_vals;
        std::vector<int> sub_chain{chain[lo]};
        int pos = lo;
        for (const auto& c : t.children) {
            int cspan = 0;
            VectorB v = node(c, pos, cspan);
            if (!c.is_leaf()) v = apply_hq(ops.spaces.at({chain[pos], chain[pos + cspan]}), v);
            child_vals.push_back(std::move(v));
            pos += cspan;
            sub_chain.push_back(chain[pos]);
        }
        span = pos - lo;
        std::vector<VectorB> args(child_vals.rbegin(), child_vals.rend());
        return def.evaluate_product(args, sub_chain, signs);
    }
};

void require_infinitesimal(const VectorB& v, const char* what) {
    if (v.madic_order(v.base()->truncation) < 1)
        throw ModelError(std::string("deformed minimal model: ") + what +
                         " does not reduce to the classical one mod m");
}

} // namespace

DeformedMinimalModel deformed_minimal_model(const AInfDeformation& def, const Splitting& sp,
                                            int a_max, const SignTable& signs) {
    DeformedMinimalModel dm;
    dm.opt = optimize_curvature(def, sp, signs);
    const AInfDeformation& copt = dm.opt.optimized;

    MinimalModel mm = minimal_model(*def.ref, sp, a_max, 0, signs);
    dm.hc = std::make_shared<AInfCategory>(std::move(mm.hc));
    for (auto& [key, v] : mm.functor) dm.classical_functor.emplace(key, std::move(v));

    AInfDeformation& hcq = dm.hcq;
    hcq.ref = dm.hc.get();
    hcq.base = def.base;
    hcq.k_max = a_max;
    hcq.complete = false;

    DefOps ops = compute_def_operators(copt, sp, signs);

    // Optimal curvature lies in H_q; transport it with phi.
    for (const auto& [obj, c] : copt.curvature) {
        const DefHomOps& e = ops.spaces.at({obj, obj});
        VectorB alpha = phi_of(e, c);
        if (phi_inv_of(e, alpha) != c)
            throw ModelError("optimized curvature escapes the harmonic part");
        if (!alpha.is_zero()) hcq.curvature[obj] = std::move(alpha);
    }
    for (const auto& [obj, r] : dm.opt.r_total)
        if (!r.is_zero()) dm.functor0[obj] = -r;

    // Arity 1: the product is phi pi_q mu_q^1 phi^{-1}; the functor is the
    // inclusion of the deformed counterparts.
    for (const auto& [hk, ids] : dm.hc->hom_elems) {
        const DefHomOps& e = ops.spaces.at(hk);
        for (int i = 0; i < (int)ids.size(); ++i) {
            dm.functor[{ids[i]}] = e.Hq[i];
            VectorB val = phi_of(e, e.mu1q.apply(e.Hq[i]));
            if (val.is_zero()) continue;
            require_infinitesimal(val, "the arity-1 product");
            hcq.correction[{ids[i]}] = std::move(val);
        }
    }

    // Arities 2..a_max by tree sums with the deformed decorations.
    for (int n = 2; n <= a_max; ++n) {
        std::vector<TreeShape> shapes = enumerate_trees(n);
        for (const std::vector<int>& key : composable_tuples(*dm.hc, n)) {
            std::vector<int> chain = dm.hc->object_chain(key);
            std::vector<VectorB> asc;
            for (auto it = key.rbegin(); it != key.rend(); ++it) {
                const auto& el = dm.hc->elems[*it];
                asc.push_back(ops.spaces.at({el.src, el.tgt}).Hq[el.idx]);
            }
            DefTreeEval ev{copt, ops, asc, chain, signs};
            VectorB raw(def.base);
            for (const auto& t : shapes) {
                int span = 0;
                VectorB v = ev.node(t, 0, span);
                raw += v * Rational(signs.sgn(internal_node_count(t), signs.tree_internal));
            }
            const DefHomOps& out = ops.spaces.at({chain.front(), chain.back()});
            VectorB prod = phi_of(out, raw);
            auto pit = dm.hc->products.find(key);
            if (pit != dm.hc->products.end())
                prod -= VectorB::from_rational(def.base, pit->second);
            if (!prod.is_zero()) {
                require_infinitesimal(prod, "a transferred product");
                hcq.correction[key] = std::move(prod);
            }
            VectorB fun = -apply_hq(out, raw);
            if (!fun.is_zero()) dm.functor[key] = std::move(fun);
        }
    }
    return dm;
}

bool check_d_zero(const AInfDeformation& def, const Splitting& sp, const SignTable& signs) {
    if (!def.curvature.empty()) return false;
    DefOps ops = compute_def_operators(def, sp, signs);
    for (const auto& [hk, e] : ops.spaces)
        if (!e.D.is_zero()) return false;
    return true;
}

RelationReport check_cohomology_maps(const AInfDeformation& def, const Splitting& sp,
                                     const SignTable& signs) {
    RelationReport rep;
    if (!def.curvature.empty()) {
        rep.fail("comparison maps need a curvature-free deformation");
        return rep;
    }
    DefOps ops = compute_def_operators(def, sp, signs);
    for (const auto& [hk, e] : ops.spaces) {
        ++rep.tuples_checked;
        std::vector<VectorB> pcols;
        for (int j = 0; j < e.dim; ++j)
            pcols.push_back(block_of(e.psi_inv.apply(VectorB::unit(def.base, j)), 0, e.dim_h));
        LinearMapB to_h = LinearMapB::from_columns(def.base, e.dim_h, std::move(pcols));
        LinearMapB from_h = LinearMapB::from_columns(def.base, e.dim, e.Hq);
        std::string where =
            " on Hom(" + def.ref->objects[hk.first] + ", " + def.ref->objects[hk.second] + ")";
        if (!(to_h.compose(from_h) == LinearMapB::identity(def.base, e.dim_h)))
            rep.fail("to_h . from_h != id" + where);
        if (!(to_h.compose(e.mu1q) == e.D.compose(to_h)))
            rep.fail("to_h is not a chain map" + where);
        if (!(e.mu1q.compose(from_h) == from_h.compose(e.D)))
            rep.fail("from_h is not a chain map" + where);
        if (!e.D.compose(e.D).is_zero()) rep.fail("D^2 != 0" + where);
        if (!(e.F + e.E.compose(e.D)).is_zero()) rep.fail("F != -E D" + where);
    }
    return rep;
}

CohomologyComparison cohomology_comparison(const AInfDeformation& def, const Splitting& sp,
                                           const SignTable& signs) {
    if (!def.curvature.empty())
        throw ModelError("cohomology comparison needs a curvature-free deformation");
    DefOps ops = compute_def_operators(def, sp, signs);
    const std::vector<Exponents>& monos = def.base->monomial_basis();
    const int mn = (int)monos.size();
    std::map<Exponents, int> mono_idx;
    for (int i = 0; i < mn; ++i) mono_idx.emplace(monos[i], i);

    CohomologyComparison cmp;
    for (const auto& [hk, e] : ops.spaces) {
        // Q-linear matrix of mu_q^1 on the flattened module B (x) Hom.
        RatMat m(e.dim * mn, e.dim * mn);
        for (int j = 0; j < e.dim; ++j)
            for (int mj = 0; mj < mn; ++mj) {
                VectorB v = e.mu1q.col(j) * Coefficient::monomial(def.base, monos[mj]);
                for (const auto& [i, c] : v.comps())
                    for (const auto& [exp, r] : c.terms())
                        m.at(i * mn + mono_idx.at(exp), j * mn + mj) = r;
            }
        int rank = m.rank();
        cmp.dims.emplace(hk, std::make_pair(e.dim * mn - 2 * rank, e.dim_h * mn));
    }
    return cmp;
}

} // namespace ade
