#include "lowhigh/twovcss.hpp"

#include <algorithm>
#include <set>

#include "lowhigh/dominators.hpp"
#include "lowhigh/errors.hpp"
#include "lowhigh/incremental.hpp"

namespace lowhigh {

namespace {

bool flat(const DomTree& d) {
    for (int v = 1; v <= d.n; ++v)
        if (v != d.root && d.parent[v] != d.root) return false;
    return true;
}

}  // namespace

bool strongly_connected(const FlowGraph& g, int skip) {
    int from = 0;
    int expected = 0;
    for (int v = 1; v <= g.n; ++v) {
        if (v == skip) continue;
        ++expected;
        if (!from) from = v;
    }
    if (!from) return false;
    std::vector<char> vis(g.n + 1, 0);
    std::vector<int> queue;
    auto bfs = [&](const std::vector<std::vector<int>>& adj) {
        std::fill(vis.begin(), vis.end(), 0);
        queue.assign(1, from);
        vis[from] = 1;
        int count = 1;
        for (std::size_t qi = 0; qi < queue.size(); ++qi)
            for (int v : adj[queue[qi]])
                if (!vis[v] && v != skip) {
                    vis[v] = 1;
                    queue.push_back(v);
                    ++count;
                }
        return count;
    };
    return bfs(g.out_adj) == expected && bfs(g.in_adj) == expected;
}

bool is_2vc(const FlowGraph& g) {
    if (g.n < 3) return false;
    if (!flat(compute_dominators(g))) return false;
    if (!flat(compute_dominators(reverse(g)))) return false;
    return strongly_connected(g, g.start);
}

std::vector<std::pair<int, int>> scss_2approx(const FlowGraph& g) {
    if (!strongly_connected(g)) throw NotStronglyConnected();
    std::set<std::pair<int, int>> picked;
    std::vector<char> vis(g.n + 1, 0);
    std::vector<int> queue;
    // out-tree: edge (parent, child); in-tree: edge (child, parent)
    for (bool forward : {true, false}) {
        const auto& adj = forward ? g.out_adj : g.in_adj;
        std::fill(vis.begin(), vis.end(), 0);
        queue.assign(1, g.start);
        vis[g.start] = 1;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int u = queue[qi];
            for (int v : adj[u])
                if (!vis[v]) {
                    vis[v] = 1;
                    queue.push_back(v);
                    if (forward)
                        picked.emplace(u, v);
                    else
                        picked.emplace(v, u);
                }
        }
    }
    return {picked.begin(), picked.end()};
}

namespace {

// One direction of the witness pass: make sure every vertex keeps an
// in-edge from an order-smaller vertex and one from an order-larger vertex
// (or the start). Missing sides are patched with the id-smallest qualifying
// graph edge. Returns the number of edges added.
int witness_pass(const FlowGraph& g, const std::vector<int>& pos, int start,
                 std::set<std::pair<int, int>>& picked, bool reversed) {
    int added = 0;
    std::vector<std::vector<int>> in_picked(g.n + 1);
    for (auto [u, v] : picked) {
        if (reversed)
            in_picked[u].push_back(v);  // reversed edge (v,u) enters u
        else
            in_picked[v].push_back(u);
    }
    for (int v = 1; v <= g.n; ++v) {
        if (v == start) continue;
        bool have_low = false, have_high = false;
        for (int u : in_picked[v]) {
            if (pos[u] < pos[v]) have_low = true;
            if (pos[u] > pos[v]) have_high = true;
        }
        int want_low = 0, want_high = 0;
        if (have_low && have_high) continue;
        for (int u : g.in_adj[v]) {
            if (pos[u] < pos[v] && (want_low == 0 || u < want_low)) want_low = u;
            if ((pos[u] > pos[v] || u == start) && (want_high == 0 || u < want_high)) want_high = u;
        }
        int u = 0;
        if (!have_low)
            u = want_low;
        else if (!have_high)
            u = want_high;
        if (u == 0) throw InvariantViolation("missing witness edge in 2vcss pass");
        auto e = reversed ? std::make_pair(v, u) : std::make_pair(u, v);
        if (picked.insert(e).second) ++added;
    }
    return added;
}

}  // namespace

SubgraphResult approx_2vcss(const FlowGraph& g) {
    if (!is_2vc(g)) throw Not2VC();
    const int s = 1;

    SubgraphResult out;
    std::set<std::pair<int, int>> picked;

    // strongly connected core of the graph without s
    {
        std::vector<int> compact(g.n + 1, 0), back(g.n, 0);
        int k = 0;
        for (int v = 1; v <= g.n; ++v)
            if (v != s) {
                compact[v] = ++k;
                back[k] = v;
            }
        FlowGraph sub(k, 1);
        for (int u = 1; u <= g.n; ++u) {
            if (u == s) continue;
            for (int v : g.out_adj[u])
                if (v != s) sub.add_edge(compact[u], compact[v]);
        }
        for (auto [a, b] : scss_2approx(sub)) picked.emplace(back[a], back[b]);
        out.scss_edges = (int)picked.size();
    }

    // forward witnesses under a low-high order rooted at s
    {
        FlowGraph rooted = g;
        rooted.start = s;
        LowHighState st = initialize(rooted);
        out.forward_added = witness_pass(g, st.dom.pre, s, picked, false);
    }
    // mirror pass on the reverse graph
    {
        FlowGraph rev = reverse(g);
        rev.start = s;
        LowHighState st = initialize(rev);
        out.reverse_added = witness_pass(rev, st.dom.pre, s, picked, true);
    }

    out.edges.assign(picked.begin(), picked.end());
    return out;
}

}  // namespace lowhigh
