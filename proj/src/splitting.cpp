#include "ade/splitting.hpp"

#include <cassert>

namespace ade {

QVector HomSplitting::h_coords(const QVector& v) const {
    QVector c = coords.apply(v);
    return QVector(c.begin(), c.begin() + dim_h());
}

QVector HomSplitting::i_coords(const QVector& v) const {
    QVector c = coords.apply(v);
    return QVector(c.begin() + dim_h(), c.begin() + dim_h() + dim_r());
}

QVector HomSplitting::r_coords(const QVector& v) const {
    QVector c = coords.apply(v);
    return QVector(c.begin() + dim_h() + dim_r(), c.end());
}

static HomSplitting split_space(const AInfCategory& cat, HomKey hk) {
    const std::vector<int>& ids = cat.hom_elems.at(hk);
    int n = (int)ids.size();
    HomSplitting sp;
    sp.mu1 = RatMat(n, n);
    for (int j = 0; j < n; ++j) {
        QVector col = cat.product({ids[j]});
        for (int i = 0; i < n; ++i) sp.mu1.at(i, j) = col[i];
    }
    // Pivot columns of mu^1 give R; their images give I.
    RatMat work = sp.mu1;
    std::vector<int> pivots = work.rref_in_place();
    for (int p : pivots) {
        QVector r(n, 0);
        r[p] = 1;
        sp.R.push_back(r);
        sp.I.push_back(sp.mu1.column(p));
    }
    // Extend I to ker(mu^1) by canonical kernel vectors, in order.
    std::vector<QVector> ker = sp.mu1.kernel_basis();
    std::vector<QVector> accepted = sp.I;
    for (const QVector& k : ker) {
        std::vector<QVector> trial = accepted;
        trial.push_back(k);
        RatMat m = RatMat::from_columns(trial);
        if (m.rank() == (int)trial.size()) {
            sp.H.push_back(k);
            accepted.push_back(k);
        }
    }
    for (const QVector& h : sp.H) {
        int deg = 0;
        for (int i = 0; i < n; ++i)
            if (h[i] != 0) deg = cat.hom_basis(hk.first, hk.second).degree(i);
        sp.h_degrees.push_back(deg);
    }
    std::vector<QVector> cols;
    cols.insert(cols.end(), sp.H.begin(), sp.H.end());
    cols.insert(cols.end(), sp.I.begin(), sp.I.end());
    cols.insert(cols.end(), sp.R.begin(), sp.R.end());
    sp.basis = RatMat::from_columns(cols);
    auto inv = sp.basis.inverse();
    if (!inv) throw ModelError("splitting basis is singular (mu^1 not square-zero?)");
    sp.coords = *inv;
    return sp;
}

Splitting compute_splitting(const AInfCategory& cat) {
    Splitting out;
    out.cat = &cat;
    for (const auto& [hk, basis] : cat.homs)
        if (basis.dim() > 0) out.spaces.emplace(hk, split_space(cat, hk));
    return out;
}

QVector apply_h(const HomSplitting& sp, const QVector& v) {
    QVector ic = sp.i_coords(v);
    QVector out(sp.dim(), 0);
    for (int j = 0; j < sp.dim_r(); ++j)
        if (ic[j] != 0)
            for (int i = 0; i < sp.dim(); ++i) out[i] += ic[j] * sp.R[j][i];
    return out;
}

QVector apply_pi(const HomSplitting& sp, const QVector& v) {
    QVector hc = sp.h_coords(v);
    QVector out(sp.dim(), 0);
    for (int j = 0; j < sp.dim_h(); ++j)
        if (hc[j] != 0)
            for (int i = 0; i < sp.dim(); ++i) out[i] += hc[j] * sp.H[j][i];
    return out;
}

} // namespace ade
