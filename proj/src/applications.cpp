#include "lowhigh/applications.hpp"

#include <algorithm>
#include <unordered_set>

#include "lowhigh/errors.hpp"

namespace lowhigh {

namespace {

std::vector<int> root_path(const std::vector<int>& parent, int root, int v) {
    std::vector<int> path;
    while (v != root) {
        path.push_back(v);
        v = parent[v];
    }
    path.push_back(root);
    std::reverse(path.begin(), path.end());
    return path;
}

std::unordered_set<long long> edge_set(const FlowGraph& g) {
    std::unordered_set<long long> s;
    s.reserve(g.m * 2);
    for (int u = 1; u <= g.n; ++u)
        for (int v : g.out_adj[u]) s.insert((long long)u * (g.n + 1) + v);
    return s;
}

}  // namespace

void refresh_divergent(LowHighState& st, const std::vector<int>& changed) {
    for (int v : changed) {
        if (v == st.dom.root || !st.dom.reachable(v)) continue;
        st.trees.blue[v] = st.low[v] ? st.low[v] : st.dom.parent[v];
        st.trees.red[v] = st.high[v] ? st.high[v] : st.dom.parent[v];
    }
}

PathPair query_two_disjoint_paths(const LowHighState& st, int v, int w) {
    if (!st.dom.reachable(v)) throw UnreachableVertex(v);
    if (!st.dom.reachable(w)) throw UnreachableVertex(w);
    PathPair p;
    if (st.before(v, w)) {
        p.to_first = root_path(st.trees.blue, st.dom.root, v);
        p.to_second = root_path(st.trees.red, st.dom.root, w);
    } else {
        p.to_first = root_path(st.trees.red, st.dom.root, v);
        p.to_second = root_path(st.trees.blue, st.dom.root, w);
    }
    return p;
}

std::optional<std::vector<int>> query_avoiding_path(const LowHighState& st, int v, int w) {
    if (!st.dom.reachable(v)) throw UnreachableVertex(v);
    if (!st.graph.valid_vertex(w) || !st.dom.reachable(w))
        return root_path(st.trees.blue, st.dom.root, v);  // w on no path from the start
    if (st.dom.is_ancestor(w, v)) return std::nullopt;    // w dominates v
    if (st.before(v, w)) return root_path(st.trees.blue, st.dom.root, v);
    return root_path(st.trees.red, st.dom.root, v);
}

ValidSet valid_set(const LowHighState& st, const std::vector<int>& forest_parent) {
    const int n = st.graph.n;
    if ((int)forest_parent.size() < n + 1) throw InvalidForest("forest parent map too short");
    auto edges = edge_set(st.graph);
    auto tp = [&](int v) { return forest_parent[v]; };
    if (tp(st.dom.root) != 0) throw InvalidForest("start vertex has a forest parent");
    for (int v = 1; v <= n; ++v) {
        int p = tp(v);
        if (p == 0) continue;
        if (!st.graph.valid_vertex(p)) throw InvalidForest("forest parent id out of range");
        if (!edges.count((long long)p * (n + 1) + v)) throw InvalidForest("forest edge missing from the graph");
        if (!st.dom.reachable(v) || !st.dom.reachable(p)) throw InvalidForest("forest touches unreachable vertices");
    }
    // cycle check
    {
        std::vector<int> state(n + 1, 0);  // 0 fresh, 1 on path, 2 done
        for (int v = 1; v <= n; ++v) {
            int u = v;
            std::vector<int> path;
            while (u != 0 && state[u] == 0) {
                state[u] = 1;
                path.push_back(u);
                u = tp(u);
            }
            if (u != 0 && state[u] == 1) throw InvalidForest("forest parent map has a cycle");
            for (int q : path) state[q] = 2;
        }
    }

    ValidSet out;
    for (int v = 1; v <= n; ++v) {
        if (v == st.dom.root || !st.dom.reachable(v)) continue;
        const int t = tp(v), d = st.dom.parent[v];
        if (t == d) continue;
        if (st.mark[v]) {
            out.edges.emplace_back(d, v);
            continue;
        }
        if (st.low[v] == 0 || st.high[v] == 0)
            throw InvariantViolation("unmarked vertex lacks a witness edge");
        if (t == 0) {
            out.edges.emplace_back(st.low[v], v);
            out.edges.emplace_back(st.high[v], v);
        } else if (st.before(v, t)) {
            out.edges.emplace_back(st.low[v], v);
        } else {
            out.edges.emplace_back(st.high[v], v);
        }
    }
    return out;
}

bool verify_strongly_divergent(const FlowGraph& g, const DomTree& d, const SpanningTreePair& trees) {
    const int n = g.n;
    auto edges = edge_set(g);
    // both parent maps must be spanning trees over the reachable set made of graph edges
    for (int v = 1; v <= n; ++v) {
        if (!d.reachable(v) || v == d.root) continue;
        for (const auto* par : {&trees.blue, &trees.red}) {
            int p = (*par)[v];
            if (p == 0 || !edges.count((long long)p * (n + 1) + v)) return false;
            int steps = 0, u = v;
            while (u != d.root) {
                u = (*par)[u];
                if (u == 0 || ++steps > n) return false;
            }
        }
    }

    std::vector<std::vector<char>> bmask(n + 1), rmask(n + 1), dmask(n + 1);
    auto fill_mask = [&](const std::vector<int>& par, int v, std::vector<char>& mask) {
        mask.assign(n + 1, 0);
        int u = v;
        while (u != d.root) {
            mask[u] = 1;
            u = par[u];
        }
        mask[d.root] = 1;
    };
    std::vector<int> reach;
    for (int v = 1; v <= n; ++v) {
        if (!d.reachable(v)) continue;
        reach.push_back(v);
        fill_mask(trees.blue, v, bmask[v]);
        fill_mask(trees.red, v, rmask[v]);
        fill_mask(d.parent, v, dmask[v]);
    }

    for (int v : reach) {
        for (int w : reach) {
            bool first = true, second = true;
            for (int u : reach) {
                bool common_dom = dmask[v][u] && dmask[w][u];
                if ((bmask[v][u] && rmask[w][u]) != common_dom) first = false;
                if ((rmask[v][u] && bmask[w][u]) != common_dom) second = false;
                if (!first && !second) break;
            }
            if (!first && !second) return false;
        }
    }
    return true;
}

}  // namespace lowhigh
