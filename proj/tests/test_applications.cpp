#include <doctest.h>

#include <set>

#include "lowhigh/applications.hpp"
#include "lowhigh/errors.hpp"
#include "lowhigh/incremental.hpp"
#include "test_util.hpp"

using namespace lowhigh;

namespace {

std::set<int> path_set(const std::vector<int>& p) { return {p.begin(), p.end()}; }

std::set<int> intersect(const std::set<int>& a, const std::set<int>& b) {
    std::set<int> out;
    for (int v : a)
        if (b.count(v)) out.insert(v);
    return out;
}

// validity oracle: same dominator parents with only the forest and extra edges
bool valid_for(const LowHighState& st, const std::vector<int>& forest, const ValidSet& extra) {
    FlowGraph h(st.graph.n, st.graph.start);
    for (int v = 1; v <= st.graph.n; ++v)
        if (forest[v]) h.add_edge(forest[v], v);
    for (auto [u, v] : extra.edges) h.add_edge(u, v);
    return brute_force_dominators(h).parent == brute_force_dominators(st.graph).parent;
}

}  // namespace

TEST_CASE("divergent parents follow the witnesses") {
    LowHighState st = initialize(testutil::g2());
    CHECK(st.trees.blue[4] == 3);
    CHECK(st.trees.red[4] == 5);
    CHECK(st.trees.blue[2] == 1);
    CHECK(st.trees.red[2] == 1);

    insert_edge(st, 1, 3);
    // 3 is marked afterwards, but the refreshed witness (2,3) still serves
    // as its blue parent, keeping the trees maximally edge-disjoint
    CHECK(st.trees.blue[3] == 2);
    CHECK(st.trees.red[3] == 1);
    CHECK(st.mark[3]);
}

TEST_CASE("two disjoint paths") {
    LowHighState st = initialize(testutil::g2());
    DomTree oracle = brute_force_dominators(st.graph);

    PathPair p = query_two_disjoint_paths(st, 3, 5);
    CHECK(p.to_first == std::vector<int>{1, 2, 3});
    CHECK(p.to_second == std::vector<int>{1, 5});
    CHECK(intersect(path_set(p.to_first), path_set(p.to_second)) ==
          intersect(testutil::dominator_set(oracle, 3), testutil::dominator_set(oracle, 5)));

    PathPair same = query_two_disjoint_paths(st, 4, 4);
    CHECK(intersect(path_set(same.to_first), path_set(same.to_second)) ==
          testutil::dominator_set(oracle, 4));

    LowHighState tri = initialize(testutil::g3());
    PathPair q = query_two_disjoint_paths(tri, 2, 3);
    CHECK(intersect(path_set(q.to_first), path_set(q.to_second)) == std::set<int>{1});

    CHECK_THROWS_AS(query_two_disjoint_paths(initialize(FlowGraph(3)), 2, 3), UnreachableVertex);
}

TEST_CASE("avoiding paths") {
    LowHighState chain = initialize(testutil::g1());
    CHECK_FALSE(query_avoiding_path(chain, 4, 2).has_value());
    CHECK_FALSE(query_avoiding_path(chain, 3, 3).has_value());

    LowHighState st = initialize(testutil::g2());
    auto path = query_avoiding_path(st, 4, 2);
    REQUIRE(path.has_value());
    CHECK(*path == std::vector<int>{1, 5, 4});
}

TEST_CASE("valid sets on the fixtures") {
    SUBCASE("tree edges everywhere need nothing") {
        LowHighState st = initialize(testutil::g1());
        std::vector<int> forest = {0, 0, 1, 2, 3};
        ValidSet vs = valid_set(st, forest);
        CHECK(vs.edges.empty());
        CHECK(valid_for(st, forest, vs));
    }
    SUBCASE("a wrong parent needs one witness edge") {
        LowHighState st = initialize(testutil::g2());
        std::vector<int> forest = {0, 0, 1, 2, 3, 1};
        ValidSet vs = valid_set(st, forest);
        CHECK(vs.edges == std::vector<std::pair<int, int>>{{5, 4}});
        CHECK(valid_for(st, forest, vs));
    }
    SUBCASE("the empty forest needs one or two edges per vertex") {
        LowHighState st = initialize(testutil::g2());
        std::vector<int> forest(6, 0);
        ValidSet vs = valid_set(st, forest);
        std::size_t expect = 0;
        for (int v = 2; v <= 5; ++v) expect += st.mark[v] ? 1 : 2;
        CHECK(vs.edges.size() == expect);
        CHECK(valid_for(st, forest, vs));
    }
    SUBCASE("bad forests are rejected") {
        LowHighState st = initialize(testutil::g2());
        std::vector<int> not_an_edge = {0, 0, 1, 2, 2, 1};
        CHECK_THROWS_AS(valid_set(st, not_an_edge), InvalidForest);
        std::vector<int> cyclic = {0, 0, 3, 2, 0, 0};
        CHECK_THROWS_AS(valid_set(st, cyclic), InvalidForest);
        std::vector<int> rooted_start = {0, 2, 1, 2, 3, 1};
        CHECK_THROWS_AS(valid_set(st, rooted_start), InvalidForest);
    }
}

TEST_CASE("strong divergence verifier") {
    FlowGraph g1 = testutil::g1();
    auto [t1, o1, trees1] = compute_low_high(g1);
    CHECK(verify_strongly_divergent(g1, brute_force_dominators(g1), trees1));

    FlowGraph g2 = testutil::g2();
    auto [t2, o2, trees2] = compute_low_high(g2);
    CHECK(verify_strongly_divergent(g2, brute_force_dominators(g2), trees2));

    SpanningTreePair bad = trees2;
    bad.blue[4] = bad.red[4] = 3;
    CHECK_FALSE(verify_strongly_divergent(g2, brute_force_dominators(g2), bad));
}

TEST_CASE("divergence holds along random insertion replays") {
    SplitMix64 rng(99);
    for (int round = 0; round < 8; ++round) {
        int n = rng.range(4, 18);
        LowHighState st = initialize(FlowGraph(n));
        int m = rng.range(n, 3 * n);
        for (int i = 0; i < m; ++i) {
            int x = rng.range(1, n);
            int y = rng.range(1, n);
            insert_edge(st, x, y);
            DomTree oracle = brute_force_dominators(st.graph);
            REQUIRE(verify_strongly_divergent(st.graph, oracle, st.trees));
        }
    }
}
