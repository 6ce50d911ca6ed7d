#include "ade/trees.hpp"

#include <functional>
#include <map>
#include <stdexcept>

namespace ade {

int TreeShape::leaf_count() const {
    if (is_leaf()) return 1;
    int n = 0;
    for (const auto& c : children) n += c.leaf_count();
    return n;
}

std::string TreeShape::str() const {
    if (is_leaf()) return "*";
    std::string s = "(";
    for (const auto& c : children) s += c.str();
    return s + ")";
}

static int nonleaf_nodes(const TreeShape& t) {
    if (t.is_leaf()) return 0;
    int n = 1;
    for (const auto& c : t.children) n += nonleaf_nodes(c);
    return n;
}

int internal_node_count(const TreeShape& root) {
    int n = 0;
    for (const auto& c : root.children) n += nonleaf_nodes(c);
    return n;
}

// Compositions of n into >= min_parts parts, lexicographic by part sequence.
static void compositions(int n, int min_parts,
                         const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> parts;
    std::function<void(int)> rec = [&](int rest) {
        if (rest == 0) {
            if ((int)parts.size() >= min_parts) fn(parts);
            return;
        }
        for (int c = 1; c <= rest; ++c) {
            parts.push_back(c);
            rec(rest - c);
            parts.pop_back();
        }
    };
    rec(n);
}

static const std::vector<TreeShape>& trees_memo(int n) {
    static std::map<int, std::vector<TreeShape>> memo;
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    std::vector<TreeShape> out;
    if (n == 1) {
        out.push_back(TreeShape{});
    } else {
        compositions(n, 2, [&](const std::vector<int>& parts) {
            // Cartesian product of child lists, leftmost child slowest.
            std::vector<const std::vector<TreeShape>*> lists;
            for (int p : parts) lists.push_back(&trees_memo(p));
            std::vector<size_t> odo(parts.size(), 0);
            for (;;) {
                TreeShape t;
                for (size_t i = 0; i < parts.size(); ++i) t.children.push_back((*lists[i])[odo[i]]);
                out.push_back(std::move(t));
                int i = (int)parts.size() - 1;
                while (i >= 0 && ++odo[i] == lists[i]->size()) odo[i--] = 0;
                if (i < 0) break;
            }
        });
    }
    return memo.emplace(n, std::move(out)).first->second;
}

std::vector<TreeShape> enumerate_trees(int n) {
    if (n < 2) throw std::invalid_argument("tree shapes need at least two leaves");
    return trees_memo(n);
}

long long count_trees(int n) {
    if (n < 1) throw std::invalid_argument("count_trees needs n >= 1");
    std::vector<long long> c(n + 1, 0);
    c[1] = 1;
    for (int k = 2; k <= n; ++k) {
        long long total = 0;
        compositions(k, 2, [&](const std::vector<int>& parts) {
            long long prod = 1;
            for (int p : parts) prod *= c[p];
            total += prod;
        });
        c[k] = total;
    }
    return n == 1 ? 1 : c[n];
}

} // namespace ade
