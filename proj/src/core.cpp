#include "lowhigh/core.hpp"

#include <algorithm>

#include "lowhigh/errors.hpp"
#include "lowhigh/incremental.hpp"

namespace lowhigh {

bool DerivedAffectedGraph::has_edge(int u, int v) const {
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
}

bool verify_low_high(const FlowGraph& g, const DomTree& d, const std::vector<int>& order) {
    const int n = g.n;
    if (d.n != n) return false;
    if ((int)order.size() != d.reachable_count()) return false;
    std::vector<int> pos(n + 1, 0);
    for (std::size_t i = 0; i < order.size(); ++i) {
        int v = order[i];
        if (v < 1 || v > n || !d.reachable(v) || pos[v]) return false;
        pos[v] = (int)i + 1;
    }
    if (order.empty() || order[0] != d.root) return false;

    // preorder test: each vertex's parent must be on the open ancestor stack
    std::vector<int> stack = {d.root};
    for (std::size_t i = 1; i < order.size(); ++i) {
        int v = order[i];
        while (!stack.empty() && stack.back() != d.parent[v]) stack.pop_back();
        if (stack.empty()) return false;
        stack.push_back(v);
    }

    for (int v = 1; v <= n; ++v) {
        if (!d.reachable(v) || v == d.root) continue;
        bool tree_edge = false;
        for (int u : g.in_adj[v])
            if (u == d.parent[v]) {
                tree_edge = true;
                break;
            }
        if (tree_edge) continue;
        bool have_low = false, have_high = false;
        for (int u : g.in_adj[v]) {
            if (!d.reachable(u)) continue;
            if (pos[u] < pos[v])
                have_low = true;
            else if (pos[u] > pos[v] && !d.is_ancestor(v, u))
                have_high = true;
            if (have_low && have_high) break;
        }
        if (!have_low || !have_high) return false;
    }
    return true;
}

bool certify_dominator_tree(const FlowGraph& g, const DomTree& t, const std::vector<int>& order) {
    if (t.n != g.n || t.root != g.start) return false;
    // the tree must span exactly the vertices reachable in g
    std::vector<char> seen(g.n + 1, 0);
    std::vector<int> queue = {g.start};
    seen[g.start] = 1;
    for (std::size_t qi = 0; qi < queue.size(); ++qi)
        for (int v : g.out_adj[queue[qi]])
            if (!seen[v]) {
                seen[v] = 1;
                queue.push_back(v);
            }
    for (int v = 1; v <= g.n; ++v)
        if (seen[v] != (t.reachable(v) ? 1 : 0)) return false;

    // parent property: for every edge (u,v) between reachable vertices,
    // u must lie in the subtree of t's parent of v
    for (int u = 1; u <= g.n; ++u) {
        if (!seen[u]) continue;
        for (int v : g.out_adj[u]) {
            if (!seen[v] || v == t.root) continue;
            if (!t.is_ancestor(t.parent[v], u)) return false;
        }
    }
    return verify_low_high(g, t, order);
}

DerivedAffectedGraph build_derived_affected(const LowHighState& st, const AffectedReport& rep,
                                            std::pair<int, int> new_edge) {
    const FlowGraph& g = st.graph;
    const DomTree& d = st.dom;
    const int n = g.n;

    DerivedAffectedGraph local;
    local.root = rep.nca;
    local.carrier = rep.carrier;
    local.lo_sentinel = n + 1;
    local.hi_sentinel = n + 2;
    local.affected = rep.affected;

    Scratch& ws = st.scratch;
    ws.ensure(n);
    const int epoch = ++ws.epoch;
    auto in_a = [&](int v) { return ws.flag_stamp[v] == epoch; };
    for (int v : rep.affected) ws.flag_stamp[v] = epoch;
    if (local.carrier == 0 || in_a(local.carrier))
        throw InvariantViolation("carrier missing or affected");
    for (int v : rep.affected)
        if (!d.is_ancestor(local.carrier, v))
            throw InvariantViolation("affected vertex outside the carrier subtree");

    std::vector<std::pair<int, int>> raw;
    raw.emplace_back(local.root, local.lo_sentinel);
    raw.emplace_back(local.root, local.hi_sentinel);
    if (st.mark[local.carrier]) {
        raw.emplace_back(local.root, local.carrier);
    } else {
        raw.emplace_back(local.lo_sentinel, local.carrier);
        raw.emplace_back(local.hi_sentinel, local.carrier);
    }

    // phase 1: walk each affected vertex's old subtree (nested affected
    // subtrees excluded) and project edges into affected vertices or the
    // carrier onto the subtree's affected root
    auto owned = [&](int v) { return ws.explored_stamp[v] == epoch; };
    std::vector<int> stack;
    for (int q : rep.affected) {
        stack.push_back(q);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            if (owned(u)) continue;
            ws.explored_stamp[u] = epoch;
            for (int ch : d.children[u])
                if (!in_a(ch)) stack.push_back(ch);
            for (int t : g.out_adj[u]) {
                if (in_a(t)) {
                    if (q != t) raw.emplace_back(q, t);  // self-projections are null derived edges
                } else if (t == local.carrier) {
                    raw.emplace_back(q, local.carrier);
                }
            }
        }
    }

    // phase 2: sources outside every affected subtree contract to the carrier
    bool skipped_new = false;
    for (int w : rep.affected) {
        for (int u : g.in_adj[w]) {
            if (!skipped_new && u == new_edge.first && w == new_edge.second) {
                skipped_new = true;
                continue;
            }
            if (owned(u) || !d.reachable(u)) continue;
            if (u == local.root)
                throw InvariantViolation("pre-insertion edge from the nca into an affected vertex");
            raw.emplace_back(local.carrier, w);
        }
    }

    // the inserted edge itself
    const auto [x, y] = new_edge;
    if (x == local.root) {
        raw.emplace_back(local.root, y);
        local.new_edge_class = DerivedAffectedGraph::NewEdgeClass::root;
    } else {
        int f = x;
        while (d.parent[f] != local.root) f = d.parent[f];
        if (st.before(local.carrier, f)) {
            raw.emplace_back(local.hi_sentinel, y);
            local.new_edge_class = DerivedAffectedGraph::NewEdgeClass::hi;
        } else {
            raw.emplace_back(local.lo_sentinel, y);
            local.new_edge_class = DerivedAffectedGraph::NewEdgeClass::lo;
        }
    }

    local.raw_edge_count = (int)raw.size();
    std::sort(raw.begin(), raw.end());
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    local.edges = std::move(raw);
    return local;
}

SpanningTreePair candidate_trees(const DerivedAffectedGraph& local, const AffectedReport& rep,
                                 const LowHighState& st) {
    const int n = st.graph.n;
    SpanningTreePair t;
    t.blue.assign(n + 3, 0);
    t.red.assign(n + 3, 0);
    t.blue[local.lo_sentinel] = t.red[local.lo_sentinel] = local.root;
    t.blue[local.hi_sentinel] = t.red[local.hi_sentinel] = local.root;
    if (st.mark[local.carrier]) {
        t.blue[local.carrier] = t.red[local.carrier] = local.root;
    } else {
        t.blue[local.carrier] = local.lo_sentinel;
        t.red[local.carrier] = local.hi_sentinel;
    }

    Scratch& ws = st.scratch;
    ws.ensure(n);
    const int epoch = ++ws.epoch;
    auto anchor = [&](int v) { return ws.flag_stamp[v] == epoch; };  // affected or the carrier
    for (int v : rep.affected) ws.flag_stamp[v] = epoch;
    ws.flag_stamp[local.carrier] = epoch;

    int inserted_parent = local.root;
    if (local.new_edge_class == DerivedAffectedGraph::NewEdgeClass::lo)
        inserted_parent = local.lo_sentinel;
    else if (local.new_edge_class == DerivedAffectedGraph::NewEdgeClass::hi)
        inserted_parent = local.hi_sentinel;

    for (std::size_t i = 0; i < rep.affected.size(); ++i) {
        int v = rep.affected[i];
        t.blue[v] = rep.source_class[i] ? rep.source_class[i] : inserted_parent;
        // red side: project the old blue parent onto the nearest affected
        // vertex or the carrier above it
        int u = st.trees.blue[v];
        while (u && !anchor(u)) u = st.dom.parent[u];
        t.red[v] = u;
    }
    return t;
}

bool verify_flat_divergent(const DerivedAffectedGraph& local, const SpanningTreePair& trees) {
    std::vector<int> verts = {local.lo_sentinel, local.hi_sentinel};
    if (local.carrier) verts.push_back(local.carrier);
    verts.insert(verts.end(), local.affected.begin(), local.affected.end());

    for (int v : verts) {
        int b = v < (int)trees.blue.size() ? trees.blue[v] : 0;
        int r = v < (int)trees.red.size() ? trees.red[v] : 0;
        if (b == 0 || r == 0) return false;
        if (!local.has_edge(b, v) || !local.has_edge(r, v)) return false;
        bool both_root = b == local.root && r == local.root;
        bool distinct = b != r && b != local.root && r != local.root;
        if (!both_root && !distinct) return false;
    }

    const int limit = local.vertex_count();
    auto root_path = [&](const std::vector<int>& par, int v, std::vector<int>& out) {
        out.clear();
        int steps = 0;
        while (v != local.root) {
            out.push_back(v);
            v = par[v];
            if (v == 0 || ++steps > limit) return false;
        }
        out.push_back(local.root);
        return true;
    };

    std::vector<int> pb, pr;
    for (int v : verts) {
        if (!root_path(trees.blue, v, pb) || !root_path(trees.red, v, pr)) return false;
        // the two root paths may share only the endpoints
        for (int a : pb) {
            if (a == v || a == local.root) continue;
            for (int b : pr)
                if (a == b) return false;
        }
    }
    return true;
}

std::vector<int> auxiliary_low_high(const DerivedAffectedGraph& local, SpanningTreePair t) {
    // compact indices keep the peel independent of the host graph size
    std::vector<int> ids = {local.root, local.lo_sentinel, local.hi_sentinel};
    if (local.carrier) ids.push_back(local.carrier);
    ids.insert(ids.end(), local.affected.begin(), local.affected.end());
    std::sort(ids.begin(), ids.end());
    const int k = (int)ids.size();
    auto idx = [&](int v) { return (int)(std::lower_bound(ids.begin(), ids.end(), v) - ids.begin()); };

    // peelable vertices, ascending id for deterministic picks
    std::vector<int> peelable = local.affected;
    if (local.carrier) peelable.push_back(local.carrier);
    std::sort(peelable.begin(), peelable.end());

    std::vector<char> alive(k, 1);
    std::vector<std::vector<int>> blue_kids(k), red_kids(k);
    auto attach = [&](std::vector<std::vector<int>>& kids, int p, int v) { kids[idx(p)].push_back(v); };
    auto detach = [&](std::vector<std::vector<int>>& kids, int p, int v) {
        auto& list = kids[idx(p)];
        list.erase(std::find(list.begin(), list.end(), v));
    };
    for (int v : peelable) {
        attach(blue_kids, t.blue[v], v);
        attach(red_kids, t.red[v], v);
    }

    struct Deletion {
        int v, blue_parent, red_parent;
        bool spliced_red;  // which tree lost an internal vertex at this step
    };
    std::vector<Deletion> deletions;
    deletions.reserve(peelable.size());
    std::size_t remaining = peelable.size();

    while (remaining > 0) {
        int pick = 0;
        for (int v : peelable) {
            if (!alive[idx(v)]) continue;
            int indeg = t.blue[v] == t.red[v] ? 1 : 2;
            if (indeg > (int)(blue_kids[idx(v)].size() + red_kids[idx(v)].size())) {
                pick = v;
                break;
            }
        }
        if (!pick) throw StuckPeel("no eligible vertex in the divergent-tree peel");

        const int bp = t.blue[pick], rp = t.red[pick];
        // an eligible vertex has at most one child over both trees
        bool spliced_red = false;
        if (!blue_kids[idx(pick)].empty()) {
            int w = blue_kids[idx(pick)].front();
            detach(blue_kids, pick, w);
            t.blue[w] = bp;
            attach(blue_kids, bp, w);
        } else if (!red_kids[idx(pick)].empty()) {
            int w = red_kids[idx(pick)].front();
            detach(red_kids, pick, w);
            t.red[w] = rp;
            attach(red_kids, rp, w);
            spliced_red = true;
        }
        detach(blue_kids, bp, pick);
        detach(red_kids, rp, pick);
        alive[idx(pick)] = 0;
        deletions.push_back({pick, bp, rp, spliced_red});
        --remaining;
    }

    // Rebuild in reverse deletion order. The vertex always lands strictly
    // between its two recorded parents, immediately next to the parent on
    // the side whose tree was spliced, so the edge it stood in for gets its
    // witness back.
    std::vector<int> layout = {local.lo_sentinel, local.hi_sentinel};
    auto position = [&](int v) {
        return (int)(std::find(layout.begin(), layout.end(), v) - layout.begin());
    };
    for (auto it = deletions.rbegin(); it != deletions.rend(); ++it) {
        if (it->blue_parent == local.root) {
            layout.insert(layout.begin() + 1, it->v);
            continue;
        }
        int pb = position(it->blue_parent);
        int pr = position(it->red_parent);
        int at;
        if (it->spliced_red)
            at = pb < pr ? pr : pr + 1;  // next to the red parent, facing the blue one
        else
            at = pr < pb ? pb : pb + 1;  // next to the blue parent, facing the red one
        layout.insert(layout.begin() + at, it->v);
    }
    return layout;
}

std::pair<FlowGraph, std::vector<int>> derived_to_flow_graph(const DerivedAffectedGraph& local) {
    std::vector<int> labels = {local.root, local.lo_sentinel, local.hi_sentinel};
    if (local.carrier) labels.push_back(local.carrier);
    labels.insert(labels.end(), local.affected.begin(), local.affected.end());
    std::vector<int> compact(local.hi_sentinel + 1, 0);
    for (std::size_t i = 0; i < labels.size(); ++i) compact[labels[i]] = (int)i + 1;
    FlowGraph g((int)labels.size(), 1);
    for (auto [u, v] : local.edges) g.add_edge(compact[u], compact[v]);
    return {std::move(g), std::move(labels)};
}

std::vector<int> greedy_peel_low_high(const DerivedAffectedGraph& local) {
    std::vector<int> peelable = local.affected;
    if (local.carrier) peelable.push_back(local.carrier);
    std::sort(peelable.begin(), peelable.end());

    const int top = local.hi_sentinel;
    std::vector<char> alive(top + 1, 0);
    alive[local.root] = alive[local.lo_sentinel] = alive[local.hi_sentinel] = 1;
    for (int v : peelable) alive[v] = 1;
    std::vector<std::pair<int, int>> edges = local.edges;

    auto flat_without = [&](int banned) {
        // compact graph over the surviving vertices
        std::vector<int> verts;
        for (int v = 1; v <= top; ++v)
            if (alive[v] && v != banned) verts.push_back(v);
        std::vector<int> compact(top + 1, 0);
        for (std::size_t i = 0; i < verts.size(); ++i) compact[verts[i]] = (int)i + 1;
        FlowGraph g((int)verts.size(), compact[local.root]);
        for (auto [u, v] : edges)
            if (compact[u] && compact[v]) g.add_edge(compact[u], compact[v]);
        DomTree d = compute_dominators(g);
        for (int v = 1; v <= g.n; ++v)
            if (v != g.start && d.parent[v] != g.start) return false;
        return true;
    };

    struct Deletion {
        int v;
        bool root_edge;
        std::vector<int> in_neighbors;
    };
    std::vector<Deletion> deletions;
    std::size_t remaining = peelable.size();

    while (remaining > 0) {
        int pick = 0;
        bool pick_root_edge = false;
        std::vector<int> pick_in;
        for (int v : peelable) {
            if (!alive[v]) continue;
            bool root_edge = false;
            std::vector<int> ins;
            for (auto [a, b] : edges) {
                if (b != v) continue;
                if (a == local.root) root_edge = true;
                if (std::find(ins.begin(), ins.end(), a) == ins.end()) ins.push_back(a);
            }
            if (!root_edge && ins.size() < 2) continue;
            if (!flat_without(v)) continue;
            pick = v;
            pick_root_edge = root_edge;
            pick_in = std::move(ins);
            break;
        }
        if (!pick) throw StuckPeel("no vertex peelable with a flat remainder");
        alive[pick] = 0;
        std::erase_if(edges, [&](const std::pair<int, int>& e) { return e.first == pick || e.second == pick; });
        deletions.push_back({pick, pick_root_edge, std::move(pick_in)});
        --remaining;
    }

    std::vector<int> layout = {local.lo_sentinel, local.hi_sentinel};
    auto position = [&](int v) {
        return (int)(std::find(layout.begin(), layout.end(), v) - layout.begin());
    };
    for (auto it = deletions.rbegin(); it != deletions.rend(); ++it) {
        if (it->root_edge) {
            layout.insert(layout.begin() + 1, it->v);
        } else {
            int earliest = (int)layout.size();
            for (int u : it->in_neighbors) earliest = std::min(earliest, position(u));
            layout.insert(layout.begin() + earliest + 1, it->v);
        }
    }
    return layout;
}

namespace {

// Direct check of the definition on the local graph: root first, then the
// layout; every non-root vertex needs its root edge or in-edges on both
// sides.
bool local_order_is_low_high(const DerivedAffectedGraph& local, const std::vector<int>& layout) {
    std::vector<std::pair<int, int>> pos;  // vertex -> position
    pos.reserve(layout.size());
    for (std::size_t i = 0; i < layout.size(); ++i) pos.emplace_back(layout[i], (int)i + 1);
    std::sort(pos.begin(), pos.end());
    auto position = [&](int v) {
        auto it = std::lower_bound(pos.begin(), pos.end(), std::make_pair(v, 0));
        return it != pos.end() && it->first == v ? it->second : 0;  // 0: the root
    };
    for (int v : layout) {
        if (local.has_edge(local.root, v)) continue;
        bool lo = false, hi = false;
        const int at = position(v);
        for (auto [a, b] : local.edges) {
            if (b != v || a == v) continue;
            if (position(a) < at)
                lo = true;
            else
                hi = true;
        }
        if (!lo || !hi) return false;
    }
    return true;
}

// With a handful of affected vertices the augmentation space is tiny: try
// the interior permutations directly against the definition.
bool enumerate_small_layout(const DerivedAffectedGraph& local, std::vector<int>& out) {
    std::vector<int> middle = local.affected;
    middle.push_back(local.carrier);
    std::sort(middle.begin(), middle.end());
    do {
        std::vector<int> layout;
        layout.reserve(middle.size() + 2);
        layout.push_back(local.lo_sentinel);
        layout.insert(layout.end(), middle.begin(), middle.end());
        layout.push_back(local.hi_sentinel);
        if (local_order_is_low_high(local, layout)) {
            out = std::move(layout);
            return true;
        }
    } while (std::next_permutation(middle.begin(), middle.end()));
    return false;
}

// The candidate heuristic comes with no guarantee. When it fails, compute a
// full state of the compact local graph and read divergent trees off its
// witness arrays: blue from low, red from high, root for marked vertices.
bool bootstrap_trees(const DerivedAffectedGraph& local, SpanningTreePair& trees) {
    auto [compact, labels] = derived_to_flow_graph(local);
    LowHighState sub = initialize_roots_first(compact);
    for (std::size_t i = 1; i < labels.size(); ++i) {
        int orig = labels[i];
        int cv = (int)i + 1;
        if (!sub.dom.reachable(cv)) return false;
        if (sub.mark[cv]) {
            trees.blue[orig] = trees.red[orig] = local.root;
            continue;
        }
        if (!sub.low[cv] || !sub.high[cv]) return false;
        trees.blue[orig] = labels[sub.low[cv] - 1];
        trees.red[orig] = labels[sub.high[cv] - 1];
    }
    return verify_flat_divergent(local, trees);
}

// the bootstrap recursion shrinks in practice but has no strict decrease
// proof, so cap it and fall through to the greedy peel beyond the cap
thread_local int bootstrap_depth = 0;

struct DepthGuard {
    DepthGuard() { ++bootstrap_depth; }
    ~DepthGuard() { --bootstrap_depth; }
};

}  // namespace

std::vector<int> derived_low_high(LowHighState& st, const AffectedReport& rep, std::pair<int, int> new_edge,
                                  bool& used_fallback) {
    DerivedAffectedGraph local = build_derived_affected(st, rep, new_edge);
    SpanningTreePair trees = candidate_trees(local, rep, st);
    for (int v : local.affected)
        if (st.mark[v]) trees.blue[v] = trees.red[v] = local.root;
    if (st.mark[local.carrier]) trees.blue[local.carrier] = trees.red[local.carrier] = local.root;

    bool ok = verify_flat_divergent(local, trees);
    used_fallback = !ok;
    if (st.collect_trace) {
        st.trace.has_local_graph = true;
        st.trace.local = local;
        st.trace.local_trees = trees;
        st.trace.trees_verified = ok;
        st.trace.used_fallback = !ok;
    }
    std::vector<int> layout;
    if (ok) {
        layout = auxiliary_low_high(local, trees);
    } else if (local.affected.size() <= 4 && enumerate_small_layout(local, layout)) {
        // done: a small interior was ordered by direct enumeration
    } else if (bootstrap_depth < 32) {
        DepthGuard guard;
        if (bootstrap_trees(local, trees)) {
            layout = auxiliary_low_high(local, trees);
        } else {
            layout = greedy_peel_low_high(local);
        }
    } else {
        layout = greedy_peel_low_high(local);
    }

    if (layout.front() != local.lo_sentinel || layout.back() != local.hi_sentinel)
        throw InvariantViolation("local order is not sentinel-bounded");

    // expand: old children before the carrier, the local order's interior,
    // old children after the carrier
    std::vector<int> result;
    const auto& old_children = st.dom.children[local.root];
    for (int ch : old_children)
        if (st.before(ch, local.carrier)) result.push_back(ch);
    result.insert(result.end(), layout.begin() + 1, layout.end() - 1);
    for (int ch : old_children)
        if (st.before(local.carrier, ch)) result.push_back(ch);
    return result;
}

}  // namespace lowhigh
