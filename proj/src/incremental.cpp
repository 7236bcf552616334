#include "lowhigh/incremental.hpp"

#include <algorithm>
#include <set>

#include "lowhigh/applications.hpp"
#include "lowhigh/core.hpp"
#include "lowhigh/errors.hpp"

namespace lowhigh {

namespace {

void check_ids(const FlowGraph& g, int x, int y) {
    if (!g.valid_vertex(x)) throw IdOutOfRange(x, g.n);
    if (!g.valid_vertex(y)) throw IdOutOfRange(y, g.n);
}

// First in-edge witnesses for v under the current order. low: a reachable
// source other than the parent ordered before v; high: a reachable
// non-descendant ordered after v.
void recompute_witnesses(LowHighState& st, int v) {
    st.low[v] = st.high[v] = 0;
    const DomTree& d = st.dom;
    for (int u : st.graph.in_adj[v]) {
        if (!d.reachable(u)) continue;
        if (st.low[v] == 0 && u != d.parent[v] && d.pre[u] < d.pre[v]) st.low[v] = u;
        if (st.high[v] == 0 && d.pre[u] > d.pre[v] && !d.is_ancestor(v, u)) st.high[v] = u;
        if (st.low[v] && st.high[v]) break;
    }
}

// Local housekeeping when an insertion leaves the tree unchanged: keep the
// mark exact and, when both witnesses are free, use the new edge to make
// the divergent trees maximally edge-disjoint.
void touch_up_unaffected(LowHighState& st, int x, int y) {
    if (y == st.dom.root) return;
    if (x == st.dom.parent[y]) {
        st.mark[y] = 1;
    } else if (st.low[y] == 0 && st.high[y] == 0 && !st.dom.is_ancestor(y, x)) {
        if (st.before(x, y))
            st.low[y] = x;
        else
            st.high[y] = x;
    }
    refresh_divergent(st, {y});
}

}  // namespace

AffectedReport affected_search(const LowHighState& st, int x, int y) {
    const FlowGraph& g = st.graph;
    const DomTree& d = st.dom;
    AffectedReport rep;
    rep.nca = nca(d, x, y);
    if (y == d.root) return rep;
    const int zdepth = d.depth[rep.nca];
    if (zdepth >= d.depth[d.parent[y]]) return rep;
    int carrier = y;
    while (d.parent[carrier] != rep.nca) carrier = d.parent[carrier];
    rep.carrier = carrier;

    Scratch& ws = st.scratch;
    ws.ensure(g.n);
    const int epoch = ++ws.epoch;
    auto touch = [epoch](std::vector<int>& stamps, int v) {
        bool fresh = stamps[v] != epoch;
        stamps[v] = epoch;
        return fresh;
    };
    auto stale = [epoch](const std::vector<int>& stamps, int v) { return stamps[v] != epoch; };

    std::vector<int> walk;
    ws.best[y] = d.depth[y];
    ws.last[y] = x;
    touch(ws.best_stamp, y);
    ws.bucket[ws.best[y]].push_back(y);

    for (int level = d.depth[y]; level > zdepth; --level) {
        auto& slot = ws.bucket[level];
        while (!slot.empty()) {
            int v = slot.back();
            slot.pop_back();
            if (!stale(ws.final_stamp, v) || ws.best[v] != level) continue;
            touch(ws.final_stamp, v);
            const int parent_depth = d.depth[d.parent[v]];
            if (parent_depth <= zdepth || level <= parent_depth) continue;

            // v reattaches below the nca; sweep its old subtree (pieces
            // claimed by deeper affected vertices are already owned)
            rep.affected.push_back(v);
            rep.last_source.push_back(ws.last[v]);
            walk.assign(1, v);
            while (!walk.empty()) {
                int u = walk.back();
                walk.pop_back();
                if (!touch(ws.explored_stamp, u)) continue;
                ws.owner[u] = v;
                rep.scanned.push_back(u);
                rep.scanned_edge_count += (long long)(g.out_adj[u].size() + g.in_adj[u].size());
                for (int ch : d.children[u])
                    if (stale(ws.explored_stamp, ch)) walk.push_back(ch);
                for (int t : g.out_adj[u]) {
                    if (!stale(ws.final_stamp, t) || !stale(ws.explored_stamp, t)) continue;
                    int cand = std::min(level, d.depth[t]);
                    if (cand > zdepth && (stale(ws.best_stamp, t) || cand > ws.best[t])) {
                        touch(ws.best_stamp, t);
                        ws.best[t] = cand;
                        ws.last[t] = u;
                        ws.bucket[cand].push_back(t);
                    }
                }
            }
        }
    }

    rep.scanned_vertex_count = (long long)rep.scanned.size();
    rep.source_class.resize(rep.affected.size(), 0);
    for (std::size_t i = 1; i < rep.affected.size(); ++i)
        rep.source_class[i] = ws.owner[rep.last_source[i]];
    return rep;
}

namespace {

// roots_first replays the remaining start-vertex edges before everything
// else: their targets become children of the root and can never be
// reparented again, which keeps later affected sets small
void replay(LowHighState& st, bool roots_first = false) {
    FlowGraph full = std::move(st.graph);
    const int n = full.n;

    st.graph = FlowGraph(n, full.start);
    st.dom = DomTree(n, full.start);
    st.mark.assign(n + 1, 0);
    st.low.assign(n + 1, 0);
    st.high.assign(n + 1, 0);
    st.trees.blue.assign(n + 1, 0);
    st.trees.red.assign(n + 1, 0);

    // phase 1: the DFS tree edge reaches each vertex first and attaches it
    // as a marked leaf
    std::vector<int> tree_parent(n + 1, 0);
    {
        std::vector<std::size_t> it(n + 1, 0);
        std::vector<int> stack = {full.start};
        std::vector<char> seen(n + 1, 0);
        seen[full.start] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            std::size_t& i = it[u];
            if (i < full.out_adj[u].size()) {
                int v = full.out_adj[u][i++];
                if (!seen[v]) {
                    seen[v] = 1;
                    tree_parent[v] = u;
                    st.graph.add_edge(u, v);
                    st.dom.parent[v] = u;
                    st.dom.depth[v] = st.dom.depth[u] + 1;
                    st.dom.children[u].push_back(v);
                    st.mark[v] = 1;
                    st.trees.blue[v] = st.trees.red[v] = u;
                    stack.push_back(v);
                }
            } else {
                stack.pop_back();
            }
        }
    }
    st.dom.renumber();

    // phase 2: remaining edges through the regular insertion; replay work
    // is charged to the restart, not to the search counters
    const Counters saved = st.counters;
    const bool saved_trace = st.collect_trace;
    st.collect_trace = false;
    std::vector<char> tree_edge_used(n + 1, 0);
    if (roots_first) {
        for (int v : full.out_adj[full.start]) {
            if (!tree_edge_used[v] && tree_parent[v] == full.start) {
                tree_edge_used[v] = 1;
                continue;
            }
            insert_edge(st, full.start, v);
        }
    }
    for (int u = 1; u <= n; ++u) {
        if (roots_first && u == full.start) continue;
        for (int v : full.out_adj[u]) {
            if (!tree_edge_used[v] && tree_parent[v] == u) {
                tree_edge_used[v] = 1;
                continue;
            }
            insert_edge(st, u, v);
        }
    }
    st.counters = saved;
    st.collect_trace = saved_trace;
    st.graph = std::move(full);  // same multiset, original adjacency order
}

}  // namespace

void reinitialize(LowHighState& st) { replay(st); }

LowHighState initialize(const FlowGraph& g) {
    LowHighState st;
    st.graph = g;
    replay(st);
    return st;
}

LowHighState initialize_roots_first(const FlowGraph& g) {
    LowHighState st;
    st.graph = g;
    replay(st, true);
    return st;
}

std::tuple<DomTree, std::vector<int>, SpanningTreePair> compute_low_high(const FlowGraph& g) {
    LowHighState st = initialize(g);
    std::vector<int> order = st.dom.order();
    return {std::move(st.dom), std::move(order), std::move(st.trees)};
}

void insert_edge(LowHighState& st, int x, int y) {
    check_ids(st.graph, x, y);
    st.graph.add_edge(x, y);
    if (st.collect_trace) st.trace = InsertionTrace{};
    if (!st.dom.reachable(x)) return;
    if (!st.dom.reachable(y)) {
        reinitialize(st);
        ++st.counters.restarts;
        return;
    }

    AffectedReport rep = affected_search(st, x, y);
    if (st.collect_trace) {
        st.trace.ran_search = true;
        st.trace.report = rep;
    }
    st.counters.scanned_vertices += rep.scanned_vertex_count;
    st.counters.scanned_edges += rep.scanned_edge_count;

    if (rep.empty()) {
        touch_up_unaffected(st, x, y);
        return;
    }

    for (int v : rep.affected) st.mark[v] = 0;
    if (rep.nca == x) st.mark[y] = 1;

    bool used_fallback = false;
    std::vector<int> new_children = derived_low_high(st, rep, {x, y}, used_fallback);
    if (used_fallback) ++st.counters.fallbacks;

    // splice: every affected vertex becomes a child of the nca
    for (int v : rep.affected) {
        auto& siblings = st.dom.children[st.dom.parent[v]];
        siblings.erase(std::find(siblings.begin(), siblings.end(), v));
    }
    std::vector<int> walk;
    for (int v : rep.affected) {
        st.dom.parent[v] = rep.nca;
        st.dom.depth[v] = st.dom.depth[rep.nca] + 1;
        walk.assign(1, v);
        while (!walk.empty()) {
            int u = walk.back();
            walk.pop_back();
            for (int ch : st.dom.children[u]) {
                st.dom.depth[ch] = st.dom.depth[u] + 1;
                walk.push_back(ch);
            }
        }
    }
    st.dom.children[rep.nca] = std::move(new_children);
    st.dom.renumber();

    std::vector<int> touched = rep.affected;
    touched.push_back(rep.carrier);
    for (int v : touched) recompute_witnesses(st, v);
    refresh_divergent(st, touched);
}

void insert_edge_simple(LowHighState& st, int x, int y) {
    check_ids(st.graph, x, y);
    st.graph.add_edge(x, y);
    if (st.collect_trace) st.trace = InsertionTrace{};
    if (!st.dom.reachable(x)) return;
    if (!st.dom.reachable(y)) {
        reinitialize(st);
        ++st.counters.restarts;
        return;
    }

    AffectedReport rep = affected_search(st, x, y);
    st.counters.scanned_vertices += rep.scanned_vertex_count;
    st.counters.scanned_edges += rep.scanned_edge_count;

    // sparse subgraph with the same dominator tree: both divergent trees,
    // the last edge of each affected vertex, the new edge
    FlowGraph sparse(st.graph.n, st.graph.start);
    std::set<std::pair<int, int>> seen;
    auto add = [&](int u, int v) {
        if (u != 0 && seen.emplace(u, v).second) sparse.add_edge(u, v);
    };
    for (int v = 1; v <= st.graph.n; ++v) {
        if (v == st.dom.root || !st.dom.reachable(v)) continue;
        add(st.trees.blue[v], v);
        add(st.trees.red[v], v);
    }
    for (std::size_t i = 0; i < rep.affected.size(); ++i)
        if (rep.affected[i] != y) add(rep.last_source[i], rep.affected[i]);
    add(x, y);
    if (st.collect_trace) {
        st.trace.ran_search = true;
        st.trace.report = rep;
        st.trace.sparse_subgraph_edges = sparse.m;
    }

    LowHighState rebuilt;
    rebuilt.graph = std::move(sparse);
    replay(rebuilt);
    st.dom = std::move(rebuilt.dom);
    st.mark = std::move(rebuilt.mark);
    st.low = std::move(rebuilt.low);
    st.high = std::move(rebuilt.high);
    st.trees = std::move(rebuilt.trees);
}

void insert_edge_slt(LowHighState& st, int x, int y) {
    check_ids(st.graph, x, y);
    bool source_reachable = st.dom.reachable(x);
    st.graph.add_edge(x, y);
    if (source_reachable) {
        reinitialize(st);
        ++st.counters.restarts;
    }
}

void insert_edge_slt_nca(LowHighState& st, int x, int y) {
    check_ids(st.graph, x, y);
    st.graph.add_edge(x, y);
    if (!st.dom.reachable(x)) return;
    if (!st.dom.reachable(y)) {
        reinitialize(st);
        ++st.counters.restarts;
        return;
    }
    int z = nca(st.dom, x, y);
    if (y != st.dom.root && st.dom.depth[z] < st.dom.depth[st.dom.parent[y]]) {
        reinitialize(st);
        ++st.counters.restarts;
        return;
    }
    touch_up_unaffected(st, x, y);
}

}  // namespace lowhigh
