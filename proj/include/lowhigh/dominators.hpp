#pragma once

#include <vector>

#include "lowhigh/graph.hpp"

namespace lowhigh {

/// Rooted tree over the reachable vertices, stored as a parent map plus
/// ordered children lists. pre/post are DFS numbers in children-list order
/// (0 for unreachable vertices), so ancestor tests are O(1). The preorder
/// numbers double as the position of a vertex in the maintained order.
struct DomTree {
    int n = 0;
    int root = 0;
    std::vector<int> parent;  // 0 for the root and for unreachable vertices
    std::vector<int> depth;   // meaningful for reachable vertices, depth(root) = 0
    std::vector<int> pre, post;
    std::vector<std::vector<int>> children;

    DomTree() = default;
    DomTree(int n, int root);

    bool reachable(int v) const { return v == root || (v >= 1 && v <= n && parent[v] != 0); }

    /// u an ancestor of v or u == v; both must be reachable.
    bool is_ancestor(int u, int v) const {
        return pre[u] != 0 && pre[v] != 0 && pre[u] <= pre[v] && post[v] <= post[u];
    }

    int reachable_count() const;

    /// Rebuild pre/post by one DFS in children-list order.
    void renumber();

    /// Vertices in pre order (the order this tree currently encodes).
    std::vector<int> order() const;
};

/// Semi-NCA variant of the Lengauer-Tarjan algorithm (semidominators with
/// path compression, then an upward NCA pass). Children lists come out in
/// ascending id order.
DomTree compute_dominators(const FlowGraph& g);

/// Oracle by definition: n reachability sweeps, one per deleted vertex.
/// Independent of the path-compression implementation above.
DomTree brute_force_dominators(const FlowGraph& g);

/// Tree from a raw parent map; children ordered ascending by id.
/// Throws InvariantViolation on cycles.
DomTree make_dom_tree(int n, int root, const std::vector<int>& parent);

/// Nearest common ancestor by walking parent links from the deeper vertex.
int nca(const DomTree& d, int u, int v);

/// True iff u lies in the subtree of v. O(1).
bool is_descendant(const DomTree& d, int u, int v);

/// Projection of the edges entering children of w onto {w} ∪ children(w):
/// an edge (v,u) with u a child of w maps to (v',u) where v' is w itself or
/// the child of w that is an ancestor of v; edges whose target is an
/// ancestor of the source are dropped, duplicates removed. Returned as a
/// graph on the original id space with start w.
FlowGraph derived_graph(const FlowGraph& g, const DomTree& d, int w);

/// Full certificate check: t spans exactly the reachable set, every edge
/// (v,w) with both ends reachable has v in the subtree of t's parent of w,
/// and order is a low-high order of t in g.
bool certify_dominator_tree(const FlowGraph& g, const DomTree& t, const std::vector<int>& order);

}  // namespace lowhigh
