#pragma once

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "lowhigh/dominators.hpp"
#include "lowhigh/graph.hpp"
#include "lowhigh/rng.hpp"

namespace testutil {

using lowhigh::FlowGraph;

inline FlowGraph g1() {
    FlowGraph g(4);
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    g.add_edge(3, 4);
    return g;
}

inline FlowGraph g2() {
    FlowGraph g(5);
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    g.add_edge(3, 4);
    g.add_edge(1, 5);
    g.add_edge(5, 4);
    return g;
}

inline FlowGraph g3() {
    FlowGraph g(3);
    g.add_edge(1, 2);
    g.add_edge(2, 1);
    g.add_edge(1, 3);
    g.add_edge(3, 1);
    g.add_edge(2, 3);
    g.add_edge(3, 2);
    return g;
}

inline std::vector<std::pair<int, int>> sorted_edges(const FlowGraph& g) {
    auto es = g.edges();
    std::sort(es.begin(), es.end());
    return es;
}

inline FlowGraph random_graph(lowhigh::SplitMix64& rng, int n, int m) {
    FlowGraph g(n);
    for (int i = 0; i < m; ++i) {
        int u = rng.range(1, n);
        int v = rng.range(1, n);
        g.add_edge(u, v);
    }
    return g;
}

/// Proper dominators of v: the vertices on the tree path above it.
inline std::set<int> dominator_set(const lowhigh::DomTree& d, int v) {
    std::set<int> s;
    while (v != d.root) {
        s.insert(v);
        v = d.parent[v];
    }
    s.insert(d.root);
    return s;
}

inline bool strongly_connected_oracle(const FlowGraph& g, int skip = 0) {
    int from = 0, expected = 0;
    for (int v = 1; v <= g.n; ++v)
        if (v != skip) {
            ++expected;
            if (!from) from = v;
        }
    if (!from) return false;
    for (const auto* adj : {&g.out_adj, &g.in_adj}) {
        std::vector<char> vis(g.n + 1, 0);
        std::vector<int> queue = {from};
        vis[from] = 1;
        int count = 1;
        for (std::size_t qi = 0; qi < queue.size(); ++qi)
            for (int v : (*adj)[queue[qi]])
                if (!vis[v] && v != skip) {
                    vis[v] = 1;
                    queue.push_back(v);
                    ++count;
                }
        if (count != expected) return false;
    }
    return true;
}

/// Brute 2-vertex-connectivity: strong connectivity plus per-vertex
/// deletion sweeps. Independent of the dominator-based product check.
inline bool two_vertex_connected_oracle(const FlowGraph& g) {
    if (g.n < 3) return false;
    if (!strongly_connected_oracle(g)) return false;
    for (int v = 1; v <= g.n; ++v)
        if (!strongly_connected_oracle(g, v)) return false;
    return true;
}

inline FlowGraph random_two_vertex_connected(lowhigh::SplitMix64& rng, int n) {
    FlowGraph g(n);
    std::vector<int> cycle(n);
    for (int i = 0; i < n; ++i) cycle[i] = i + 1;
    for (int i = n - 1; i > 0; --i) std::swap(cycle[i], cycle[rng.range(0, i)]);
    std::set<std::pair<int, int>> present;
    for (int i = 0; i < n; ++i) {
        int u = cycle[i], v = cycle[(i + 1) % n];
        present.emplace(u, v);
        g.add_edge(u, v);
    }
    while (!two_vertex_connected_oracle(g)) {
        int u = rng.range(1, n);
        int v = rng.range(1, n);
        if (u == v || !present.emplace(u, v).second) continue;
        g.add_edge(u, v);
    }
    return g;
}

}  // namespace testutil
