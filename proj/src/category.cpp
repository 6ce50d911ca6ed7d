#include "ade/category.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ade {

static const std::vector<int>& ids_of(const AInfCategory& cat, int src, int tgt) {
    static const std::vector<int> empty;
    auto it = cat.hom_elems.find({src, tgt});
    return it == cat.hom_elems.end() ? empty : it->second;
}

int AInfCategory::add_object(const std::string& name) {
    objects.push_back(name);
    return (int)objects.size() - 1;
}

void AInfCategory::add_hom(int src, int tgt, std::vector<BasisElement> basis) {
    HomKey hk{src, tgt};
    if (homs.count(hk)) throw ModelError("hom space declared twice");
    GradedBasis gb{std::move(basis)};
    std::vector<int>& ids = hom_elems[hk];
    for (int i = 0; i < gb.dim(); ++i) {
        for (const auto& e : elems)
            if (e.name == gb.name(i))
                throw ModelError("duplicate basis element name: " + gb.name(i));
        elems.push_back({src, tgt, i, gb.degree(i), gb.name(i)});
        ids.push_back((int)elems.size() - 1);
    }
    homs.emplace(hk, std::move(gb));
}

void AInfCategory::set_identity(int obj, const std::string& name) {
    int id = global_id(name);
    const Elem& e = elems[id];
    if (e.src != obj || e.tgt != obj) throw ModelError("identity must live in End(X)");
    if (!degrees_equal(e.degree, 0)) throw ModelError("identity must have degree 0");
    identity_of[obj] = id;
}

void AInfCategory::set_product(const std::vector<std::string>& inputs,
                               const std::vector<std::pair<Rational, std::string>>& value) {
    std::vector<int> key;
    key.reserve(inputs.size());
    for (const auto& n : inputs) key.push_back(global_id(n));
    std::vector<int> chain = object_chain(key);
    const GradedBasis& out = hom_basis(chain.front(), chain.back());
    QVector v(out.dim(), 0);
    for (const auto& [c, n] : value) {
        int id = global_id(n);
        const Elem& e = elems[id];
        if (e.src != chain.front() || e.tgt != chain.back())
            throw ModelError("product value lies in the wrong hom space: " + n);
        v[e.idx] += c;
    }
    if ((int)key.size() > k_max) throw ModelError("product arity exceeds k_max");
    products[key] = std::move(v);
}

int AInfCategory::object_index(const std::string& name) const {
    for (int i = 0; i < (int)objects.size(); ++i)
        if (objects[i] == name) return i;
    throw ModelError("unknown object: " + name);
}

int AInfCategory::global_id(const std::string& n) const {
    for (int i = 0; i < (int)elems.size(); ++i)
        if (elems[i].name == n) return i;
    throw ModelError("unknown basis element: " + n);
}

const GradedBasis& AInfCategory::hom_basis(int src, int tgt) const {
    static const GradedBasis empty{};
    auto it = homs.find({src, tgt});
    return it == homs.end() ? empty : it->second;
}

int AInfCategory::hom_dim(int src, int tgt) const { return hom_basis(src, tgt).dim(); }

bool AInfCategory::is_identity(int id) const {
    auto it = identity_of.find(elems[id].src);
    return it != identity_of.end() && it->second == id;
}

std::vector<int> AInfCategory::object_chain(const std::vector<int>& key) const {
    int k = (int)key.size();
    std::vector<int> chain(k + 1);
    if (k == 0) throw ModelError("object_chain needs a nonempty tuple");
    chain[0] = elems[key[k - 1]].src; // src(a_1)
    for (int i = 1; i <= k; ++i) {
        const Elem& ai = elems[key[k - i]]; // a_i
        if (ai.src != chain[i - 1]) throw ModelError("tuple is not composable");
        chain[i] = ai.tgt;
    }
    return chain;
}

bool AInfCategory::degrees_equal(long a, long b) const {
    if (grading == Grading::Z2) return ((a - b) % 2) == 0;
    return a == b;
}

QVector AInfCategory::product(const std::vector<int>& key, const SignTable& signs) const {
    int k = (int)key.size();
    std::vector<int> chain = object_chain(key);
    int dim = hom_dim(chain.front(), chain.back());
    QVector zero(dim, 0);
    if (k > k_max) return zero;
    auto it = products.find(key);
    if (it != products.end()) return it->second;
    // Strict unitality supplies every product with an identity input that has
    // no explicit table entry.
    if (k == 2) {
        const Elem& a2 = elems[key[0]];
        const Elem& a1 = elems[key[1]];
        if (is_identity(key[1])) { // mu^2(a, id) = a
            QVector v = zero;
            v[a2.idx] = 1;
            return v;
        }
        if (is_identity(key[0])) { // mu^2(id, a) = (-1)^{|a|} a
            QVector v = zero;
            v[a1.idx] = signs.sgn(a1.degree, signs.unit_left);
            return v;
        }
    }
    return zero;
}

void for_each_composable(const AInfCategory& cat, int arity,
                         const std::function<void(const std::vector<int>&)>& fn) {
    if (arity <= 0) return;
    std::vector<int> key(arity);
    // Choose a_1, then extend the chain upward; keys are emitted with
    // key[arity-1] = a_1, and iteration over global ids keeps things lex-sorted
    // per slot.
    std::function<void(int, int)> rec = [&](int i, int src) {
        // placing a_i, which must start at object `src`
        for (int id = 0; id < (int)cat.elems.size(); ++id) {
            const auto& e = cat.elems[id];
            if (i > 1 && e.src != src) continue;
            key[arity - i] = id;
            if (i == arity)
                fn(key);
            else
                rec(i + 1, e.tgt);
        }
    };
    rec(1, -1);
}

std::vector<std::vector<int>> composable_tuples(const AInfCategory& cat, int arity) {
    std::vector<std::vector<int>> out;
    for_each_composable(cat, arity, [&](const std::vector<int>& k) { out.push_back(k); });
    return out;
}

AInfDeformation AInfDeformation::trivial(const AInfCategory& cat, BaseSpecPtr base) {
    AInfDeformation d;
    d.ref = &cat;
    d.base = std::move(base);
    d.k_max = cat.k_max;
    return d;
}

void AInfDeformation::set_correction(const std::vector<std::string>& inputs, VectorB value) {
    std::vector<int> key;
    for (const auto& n : inputs) key.push_back(ref->global_id(n));
    ref->object_chain(key); // composability check
    if ((int)key.size() > k_max) throw ModelError("correction arity exceeds k_max");
    if (value.madic_order(base->truncation) < 1)
        throw ModelError("deformation correction must be infinitesimal");
    if (value.is_zero())
        correction.erase(key);
    else
        correction[key] = std::move(value);
}

void AInfDeformation::set_curvature(int obj, VectorB value) {
    if (value.madic_order(base->truncation) < 1)
        throw ModelError("curvature must be infinitesimal");
    if (value.is_zero())
        curvature.erase(obj);
    else
        curvature[obj] = std::move(value);
}

VectorB AInfDeformation::curvature_of(int obj) const {
    auto it = curvature.find(obj);
    return it == curvature.end() ? VectorB(base) : it->second;
}

VectorB AInfDeformation::product_q(const std::vector<int>& key, const SignTable& signs) const {
    VectorB out(base);
    if ((int)key.size() <= ref->k_max) {
        QVector q = ref->product(key, signs);
        out += VectorB::from_rational(base, q);
    }
    auto it = correction.find(key);
    if (it != correction.end()) out += it->second;
    return out;
}

VectorB AInfDeformation::evaluate_product(const std::vector<VectorB>& inputs,
                                          const std::vector<int>& chain,
                                          const SignTable& signs) const {
    int k = (int)inputs.size();
    assert((int)chain.size() == k + 1);
    VectorB out(base);
    std::vector<int> key(k);
    Coefficient one(base, 1);
    std::function<void(int, const Coefficient&)> rec = [&](int slot, const Coefficient& c) {
        if (slot == k) {
            out += product_q(key, signs) * c;
            return;
        }
        // inputs[slot] is a_{k-slot}, an element of Hom(chain[k-slot-1], chain[k-slot]).
        int src = chain[k - slot - 1], tgt = chain[k - slot];
        const std::vector<int>& ids = ids_of(*ref, src, tgt);
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

// --- defects ---------------------------------------------------------------

QVector ainf_defect(const AInfCategory& cat, const std::vector<int>& key, const SignTable& signs) {
    int k = (int)key.size();
    std::vector<int> chain = cat.object_chain(key);
    int dim = cat.hom_dim(chain.front(), chain.back());
    QVector total(dim, 0);
    for (int l = 1; l <= k; ++l) {
        for (int m = 0; m + l <= k; ++m) {
            // inner product on (a_{m+l}, ..., a_{m+1}) = key[k-m-l .. k-m-1]
            std::vector<int> inner(key.begin() + (k - m - l), key.begin() + (k - m));
            QVector iv = cat.product(inner, signs);
            if (is_zero(iv)) continue;
            long parity = 0;
            for (int i = 1; i <= m; ++i) parity += cat.rdeg(key[k - i]);
            int sgn = signs.sgn(parity, signs.relation_insertion);
            // outer tuple: a_k..a_{m+l+1}, inner slot, a_m..a_1
            std::vector<int> outer(key.begin(), key.begin() + (k - m - l));
            outer.push_back(-1); // slot
            outer.insert(outer.end(), key.begin() + (k - m), key.end());
            int slot = (int)(k - m - l);
            int isrc = chain[m], itgt = chain[m + l];
            const std::vector<int>& ids = ids_of(cat, isrc, itgt);
            for (int j = 0; j < (int)iv.size(); ++j) {
                if (iv[j] == 0) continue;
                outer[slot] = ids[j];
                QVector ov = cat.product(outer, signs);
                for (int t = 0; t < dim; ++t) total[t] += Rational(sgn) * iv[j] * ov[t];
            }
        }
    }
    return total;
}

VectorB curved_defect(const AInfDeformation& def, const std::vector<int>& key,
                      const SignTable& signs) {
    const AInfCategory& cat = *def.ref;
    int k = (int)key.size();
    std::vector<int> chain = cat.object_chain(key);
    VectorB total(def.base);
    for (int l = 0; l <= k; ++l) {
        for (int m = 0; m + l <= k; ++m) {
            VectorB iv;
            int isrc, itgt;
            if (l == 0) {
                // curvature inserted at object X_{m+1}
                isrc = itgt = chain[m];
                iv = def.curvature_of(isrc);
            } else {
                std::vector<int> inner(key.begin() + (k - m - l), key.begin() + (k - m));
                iv = def.product_q(inner, signs);
                isrc = chain[m];
                itgt = chain[m + l];
            }
            if (iv.is_zero()) continue;
            long parity = 0;
            for (int i = 1; i <= m; ++i) parity += cat.rdeg(key[k - i]);
            int sgn = signs.sgn(parity, signs.relation_insertion);
            std::vector<int> outer(key.begin(), key.begin() + (k - m - l));
            outer.push_back(-1);
            outer.insert(outer.end(), key.begin() + (k - m), key.end());
            int slot = (int)(k - m - l);
            const std::vector<int>& ids = ids_of(cat, isrc, itgt);
            for (const auto& [j, coeff] : iv.comps()) {
                outer[slot] = ids[j];
                total += def.product_q(outer, signs) * (coeff * Rational(sgn));
            }
        }
    }
    return total;
}

VectorB curved_defect_object(const AInfDeformation& def, int obj, const SignTable& signs) {
    // Arity-0 relation: mu^1_q(mu^0_X) = 0.
    const AInfCategory& cat = *def.ref;
    VectorB curv = def.curvature_of(obj);
    VectorB total(def.base);
    const std::vector<int>& ids = ids_of(cat, obj, obj);
    for (const auto& [j, coeff] : curv.comps())
        total += def.product_q({ids[j]}, signs) * coeff;
    return total;
}

// --- verification ----------------------------------------------------------

void RelationReport::fail(const std::string& msg) {
    ok = false;
    if (violations.size() < 50) violations.push_back(msg);
}

static std::string tuple_str(const AInfCategory& cat, const std::vector<int>& key) {
    std::ostringstream os;
    os << '(';
    for (size_t i = 0; i < key.size(); ++i) {
        if (i) os << ", ";
        os << cat.elems[key[i]].name;
    }
    os << ')';
    return os.str();
}

static void check_category_structure(const AInfCategory& cat, RelationReport& rep,
                                     const SignTable& signs) {
    for (int x = 0; x < (int)cat.objects.size(); ++x) {
        if (cat.hom_dim(x, x) > 0 && !cat.identity_of.count(x))
            rep.fail("object " + cat.objects[x] + " has no identity morphism");
    }
    for (const auto& [key, value] : cat.products) {
        int k = (int)key.size();
        std::vector<int> chain;
        try {
            chain = cat.object_chain(key);
        } catch (const ModelError&) {
            rep.fail("non-composable product key " + tuple_str(cat, key));
            continue;
        }
        const GradedBasis& out = cat.hom_basis(chain.front(), chain.back());
        long in_deg = 2 - k;
        for (int id : key) in_deg += cat.elems[id].degree;
        for (int t = 0; t < (int)value.size(); ++t) {
            if (value[t] == 0) continue;
            if (!cat.degrees_equal(out.degree(t), in_deg))
                rep.fail("product " + tuple_str(cat, key) + " violates degree bookkeeping at " +
                         out.name(t));
        }
        // Strict unitality on stored entries with identity inputs.
        bool has_id = false;
        for (int id : key) has_id |= cat.is_identity(id);
        if (!has_id) continue;
        QVector expected((int)value.size(), 0);
        if (k == 2 && cat.is_identity(key[1]) && !cat.is_identity(key[0]))
            expected[cat.elems[key[0]].idx] = 1;
        else if (k == 2 && cat.is_identity(key[0]))
            expected[cat.elems[key[1]].idx] =
                signs.sgn(cat.elems[key[1]].degree, signs.unit_left);
        if (value != expected)
            rep.fail("strict unitality violated at " + tuple_str(cat, key));
    }
}

template <class CheckTuple>
static void run_tuples(const std::vector<std::vector<int>>& tuples, int jobs, bool parallel,
                       RelationReport& rep, const CheckTuple& check) {
    std::vector<std::string> msgs(tuples.size());
#ifdef _OPENMP
    if (parallel) {
        int nt = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
        for (long i = 0; i < (long)tuples.size(); ++i) msgs[i] = check(tuples[i]);
    } else
#endif
    {
        (void)jobs;
        for (size_t i = 0; i < tuples.size(); ++i) msgs[i] = check(tuples[i]);
    }
    rep.tuples_checked += (long)tuples.size();
    for (const auto& m : msgs)
        if (!m.empty()) rep.fail(m);
}

static RelationReport check_category_impl(const AInfCategory& cat, int a_max, int jobs,
                                          bool parallel, const SignTable& signs) {
    RelationReport rep;
    check_category_structure(cat, rep, signs);
    rep.arity_bound = cat.complete ? a_max : std::min(a_max, cat.k_max);
    for (int k = 1; k <= rep.arity_bound; ++k) {
        auto tuples = composable_tuples(cat, k);
        run_tuples(tuples, jobs, parallel, rep, [&](const std::vector<int>& key) -> std::string {
            QVector d = ainf_defect(cat, key, signs);
            if (!is_zero(d)) return "A-infinity relation fails on " + tuple_str(cat, key);
            return {};
        });
    }
    return rep;
}

RelationReport check_relations(const AInfCategory& cat, int a_max, int jobs,
                               const SignTable& signs) {
    return check_category_impl(cat, a_max, jobs, true, signs);
}
RelationReport check_relations_serial(const AInfCategory& cat, int a_max, const SignTable& signs) {
    return check_category_impl(cat, a_max, 1, false, signs);
}

static void check_deformation_structure(const AInfDeformation& def, RelationReport& rep) {
    const AInfCategory& cat = *def.ref;
    int n = def.base->truncation;
    for (const auto& [key, value] : def.correction) {
        if (value.madic_order(n) < 1)
            rep.fail("correction at " + tuple_str(cat, key) + " is not infinitesimal");
        std::vector<int> chain = cat.object_chain(key);
        const GradedBasis& out = cat.hom_basis(chain.front(), chain.back());
        long in_deg = 2 - (long)key.size();
        for (int id : key) in_deg += cat.elems[id].degree;
        for (const auto& [t, c] : value.comps())
            if (!c.is_zero() && !cat.degrees_equal(out.degree(t), in_deg))
                rep.fail("deformed product " + tuple_str(cat, key) +
                         " violates degree bookkeeping at " + out.name(t));
    }
    for (const auto& [obj, value] : def.curvature) {
        if (value.madic_order(n) < 1)
            rep.fail("curvature at " + cat.objects[obj] + " is not infinitesimal");
        const GradedBasis& end = cat.hom_basis(obj, obj);
        for (const auto& [t, c] : value.comps())
            if (!c.is_zero() && !cat.degrees_equal(end.degree(t), 2))
                rep.fail("curvature at " + cat.objects[obj] + " has a component of wrong degree: " +
                         end.name(t));
    }
}

static RelationReport check_deformation_impl(const AInfDeformation& def, int a_max, int jobs,
                                             bool parallel, const SignTable& signs) {
    RelationReport rep;
    const AInfCategory& cat = *def.ref;
    check_deformation_structure(def, rep);
    int bound = a_max;
    if (!def.complete) {
        bound = std::min(bound, def.curvature.empty() ? def.k_max : def.k_max - 1);
    }
    rep.arity_bound = bound;
    for (int x = 0; x < (int)cat.objects.size(); ++x) {
        VectorB d = curved_defect_object(def, x, signs);
        ++rep.tuples_checked;
        if (!d.is_zero()) rep.fail("curved relation fails on empty tuple at " + cat.objects[x]);
    }
    for (int k = 1; k <= bound; ++k) {
        auto tuples = composable_tuples(cat, k);
        run_tuples(tuples, jobs, parallel, rep, [&](const std::vector<int>& key) -> std::string {
            VectorB d = curved_defect(def, key, signs);
            if (!d.is_zero()) return "curved relation fails on " + tuple_str(cat, key);
            return {};
        });
    }
    return rep;
}

RelationReport check_relations(const AInfDeformation& def, int a_max, int jobs,
                               const SignTable& signs) {
    return check_deformation_impl(def, a_max, jobs, true, signs);
}
RelationReport check_relations_serial(const AInfDeformation& def, int a_max,
                                      const SignTable& signs) {
    return check_deformation_impl(def, a_max, 1, false, signs);
}

} // namespace ade
