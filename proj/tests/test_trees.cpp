#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ade/trees.hpp"


#include <functional>
#include <set>

using namespace ade;

// Independent oracle: the count satisfies the closed two-term recurrence
// n a_n = 3(2n-3) a_{n-1} - (n-3) a_{n-2}, a_1 = a_2 = 1.
static long long recurrence_count(int n) {
    std::vector<long long> a(std::max(n + 1, 3), 0);
    a[1] = 1;
    a[2] = 1;
    for (int k = 3; k <= n; ++k) a[k] = (3 * (2 * k - 3) * a[k - 1] - (k - 3) * a[k - 2]) / k;
    return a[n];
}

TEST_CASE("tree counts match the independent recurrence for n = 2..9") {
    std::vector<long long> expected = {1, 3, 11, 45, 197, 903};
    for (int n = 2; n <= 7; ++n) {
        CHECK(count_trees(n) == expected[n - 2]);
        CHECK((long long)enumerate_trees(n).size() == expected[n - 2]);
    }
    for (int n = 2; n <= 9; ++n) {
        CHECK(count_trees(n) == recurrence_count(n));
        CHECK((long long)enumerate_trees(n).size() == recurrence_count(n));
    }
}

TEST_CASE("enumeration order is canonical and shapes are distinct") {
    auto t3 = enumerate_trees(3);
    REQUIRE(t3.size() == 3);
    CHECK(t3[0].str() == "(***)");   // corolla, composition (1,1,1)
    CHECK(t3[1].str() == "(*(**))"); // composition (1,2)
    CHECK(t3[2].str() == "((**)*)"); // composition (2,1)
    CHECK(internal_node_count(t3[0]) == 0);
    CHECK(internal_node_count(t3[1]) == 1);
    CHECK(internal_node_count(t3[2]) == 1);

    for (int n = 2; n <= 6; ++n) {
        std::set<std::string> seen;
        for (const auto& t : enumerate_trees(n)) {
            CHECK(t.leaf_count() == n);
            for (const auto& c : t.children) (void)c;
            CHECK(seen.insert(t.str()).second); // all distinct
        }
    }
}

TEST_CASE("internal nodes never count the root or leaves") {
    for (const auto& t : enumerate_trees(4)) {
        int n = internal_node_count(t);
        CHECK(n >= 0);
        CHECK(n <= 2); // at most two non-root internal nodes on 4 leaves
    }
    // the corolla has none
    CHECK(internal_node_count(enumerate_trees(4)[0]) == 0);
}

TEST_CASE("every internal node has at least two children") {
    std::function<void(const TreeShape&)> walk = [&](const TreeShape& t) {
        if (!t.is_leaf()) {
            CHECK(t.children.size() >= 2);
            for (const auto& c : t.children) walk(c);
        }
    };
    for (int n = 2; n <= 6; ++n)
        for (const auto& t : enumerate_trees(n)) walk(t);
}
