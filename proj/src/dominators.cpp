#include "lowhigh/dominators.hpp"

#include <algorithm>

#include "lowhigh/errors.hpp"

namespace lowhigh {

DomTree::DomTree(int n, int root)
    : n(n), root(root), parent(n + 1, 0), depth(n + 1, 0), pre(n + 1, 0), post(n + 1, 0), children(n + 1) {}

int DomTree::reachable_count() const {
    int k = 0;
    for (int v = 1; v <= n; ++v)
        if (reachable(v)) ++k;
    return k;
}

void DomTree::renumber() {
    std::fill(pre.begin(), pre.end(), 0);
    std::fill(post.begin(), post.end(), 0);
    int next_pre = 0, next_post = 0;
    std::vector<std::pair<int, std::size_t>> stack;
    stack.emplace_back(root, 0);
    pre[root] = ++next_pre;
    while (!stack.empty()) {
        auto& [u, i] = stack.back();
        if (i < children[u].size()) {
            int ch = children[u][i++];
            pre[ch] = ++next_pre;
            stack.emplace_back(ch, 0);
        } else {
            post[u] = ++next_post;
            stack.pop_back();
        }
    }
}

std::vector<int> DomTree::order() const {
    std::vector<int> out(reachable_count(), 0);
    for (int v = 1; v <= n; ++v)
        if (pre[v]) out[pre[v] - 1] = v;
    return out;
}

namespace {

// Path compression over the semidominator forest; processes the path
// iteratively to stay safe on deep graphs.
void compress(int v, int cutoff, std::vector<int>& par, const std::vector<int>& semi, std::vector<int>& label,
              std::vector<int>& path) {
    path.clear();
    int r = v;
    while (par[r] > cutoff) {
        path.push_back(r);
        r = par[r];
    }
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
        int u = *it;
        int p = par[u];
        if (semi[label[p]] < semi[label[u]]) label[u] = label[p];
        par[u] = par[p];
    }
}

}  // namespace

DomTree compute_dominators(const FlowGraph& g) {
    const int n = g.n;
    std::vector<int> label2pre(n + 1, 0), pre2label(n + 1, 0), dfs_parent(n + 1, 0);
    int N = 0;

    {
        std::vector<std::size_t> it(n + 1, 0);
        std::vector<int> stack;
        label2pre[g.start] = ++N;
        pre2label[N] = g.start;
        stack.push_back(g.start);
        while (!stack.empty()) {
            int u = stack.back();
            std::size_t& i = it[u];
            if (i < g.out_adj[u].size()) {
                int v = g.out_adj[u][i++];
                if (!label2pre[v]) {
                    label2pre[v] = ++N;
                    pre2label[N] = v;
                    dfs_parent[label2pre[v]] = label2pre[u];
                    stack.push_back(v);
                }
            } else {
                stack.pop_back();
            }
        }
    }

    std::vector<int> semi(N + 1), label(N + 1), par(N + 1), idom(N + 1, 0), path;
    for (int i = 0; i <= N; ++i) semi[i] = label[i] = i;
    for (int i = 1; i <= N; ++i) par[i] = dfs_parent[i];

    for (int i = N; i >= 2; --i) {
        int w = pre2label[i];
        for (int u : g.in_adj[w]) {
            int v = label2pre[u];
            if (!v) continue;
            int best;
            if (v <= i) {
                best = v;
            } else {
                compress(v, i, par, semi, label, path);
                best = label[v];
            }
            if (semi[best] < semi[i]) semi[i] = semi[best];
        }
    }

    idom[1] = 1;
    for (int i = 2; i <= N; ++i) {
        int x = dfs_parent[i];
        while (x > semi[i]) x = idom[x];
        idom[i] = x;
    }

    DomTree d(n, g.start);
    for (int i = 2; i <= N; ++i) d.parent[pre2label[i]] = pre2label[idom[i]];
    for (int v = 1; v <= n; ++v)
        if (v != g.start && d.parent[v]) d.children[d.parent[v]].push_back(v);
    // depths top-down in preorder of the dfs (ancestors have smaller idom chains)
    for (int i = 2; i <= N; ++i) {
        int v = pre2label[i];
        d.depth[v] = d.depth[d.parent[v]] + 1;
    }
    d.renumber();
    return d;
}

DomTree brute_force_dominators(const FlowGraph& g) {
    const int n = g.n;
    std::vector<char> base(n + 1, 0);
    std::vector<int> queue;
    auto sweep = [&](int banned, std::vector<char>& vis) {
        std::fill(vis.begin(), vis.end(), 0);
        if (g.start == banned) return;
        queue.clear();
        vis[g.start] = 1;
        queue.push_back(g.start);
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int u = queue[qi];
            for (int v : g.out_adj[u])
                if (!vis[v] && v != banned) {
                    vis[v] = 1;
                    queue.push_back(v);
                }
        }
    };
    sweep(0, base);

    // doms[w] collects the proper dominators of w
    std::vector<std::vector<int>> doms(n + 1);
    std::vector<char> vis(n + 1, 0);
    for (int v = 1; v <= n; ++v) {
        if (!base[v]) continue;
        sweep(v, vis);
        for (int w = 1; w <= n; ++w)
            if (base[w] && w != v && !vis[w]) doms[w].push_back(v);
    }

    DomTree d(n, g.start);
    for (int w = 1; w <= n; ++w) {
        if (!base[w] || w == g.start) continue;
        // parent = the proper dominator one level up the chain
        const std::size_t k = doms[w].size();
        int p = 0;
        for (int u : doms[w])
            if (doms[u].size() == k - 1) p = u;
        if (p == 0) throw InvariantViolation("dominator chain broken in oracle");
        d.parent[w] = p;
        d.depth[w] = (int)k;
    }
    for (int v = 1; v <= n; ++v)
        if (v != g.start && d.parent[v]) d.children[d.parent[v]].push_back(v);
    d.renumber();
    return d;
}

DomTree make_dom_tree(int n, int root, const std::vector<int>& parent) {
    DomTree d(n, root);
    for (int v = 1; v <= n; ++v)
        if (v != root) d.parent[v] = v < (int)parent.size() ? parent[v] : 0;
    d.parent[root] = 0;
    for (int v = 1; v <= n; ++v)
        if (v != root && d.parent[v]) d.children[d.parent[v]].push_back(v);
    // depths with cycle guard
    for (int v = 1; v <= n; ++v) {
        if (!d.reachable(v)) continue;
        int steps = 0, u = v;
        while (u != root) {
            u = d.parent[u];
            if (u == 0 || ++steps > n) throw InvariantViolation("parent map is not a tree rooted at the start vertex");
        }
        d.depth[v] = steps;
    }
    d.renumber();
    return d;
}

int nca(const DomTree& d, int u, int v) {
    if (!d.reachable(u)) throw UnreachableVertex(u);
    if (!d.reachable(v)) throw UnreachableVertex(v);
    while (u != v) {
        if (d.depth[u] > d.depth[v]) {
            u = d.parent[u];
        } else if (d.depth[v] > d.depth[u]) {
            v = d.parent[v];
        } else {
            u = d.parent[u];
            v = d.parent[v];
        }
    }
    return u;
}

bool is_descendant(const DomTree& d, int u, int v) {
    if (!d.reachable(u)) throw UnreachableVertex(u);
    if (!d.reachable(v)) throw UnreachableVertex(v);
    return d.is_ancestor(v, u);
}

FlowGraph derived_graph(const FlowGraph& g, const DomTree& d, int w) {
    if (!d.reachable(w) || d.children[w].empty()) throw NoChildren(w);
    FlowGraph out(g.n, w);
    std::vector<std::pair<int, int>> es;
    for (int u : d.children[w]) {
        for (int v : g.in_adj[u]) {
            if (!d.reachable(v)) continue;
            if (d.is_ancestor(u, v)) continue;  // target an ancestor of the source: null
            int src = v;
            if (v != w) {
                while (d.parent[src] != w) src = d.parent[src];
            }
            es.emplace_back(src, u);
        }
    }
    std::sort(es.begin(), es.end());
    es.erase(std::unique(es.begin(), es.end()), es.end());
    for (auto [a, b] : es) out.add_edge(a, b);
    return out;
}

}  // namespace lowhigh
