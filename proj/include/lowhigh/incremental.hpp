#pragma once

#include <tuple>
#include <vector>

#include "lowhigh/state.hpp"

namespace lowhigh {

/// Bottleneck search from the target of the inserted edge (x,y) over
/// pre-insertion depths; identifies every vertex whose tree parent changes
/// and, as a byproduct, the union of their old subtrees. Both endpoints
/// must be reachable.
AffectedReport affected_search(const LowHighState& st, int x, int y);

/// Builds the state by replaying the graph's edges into an empty shadow:
/// a DFS hands each newly reached vertex its tree edge (constant-time leaf
/// attach), every remaining edge goes through insert_edge.
LowHighState initialize(const FlowGraph& g);

/// Re-runs the replay over the state's stored graph in place. Counters are
/// preserved and not advanced by the replay's internal searches.
void reinitialize(LowHighState& st);

/// Replay variant that inserts the start vertex's remaining edges first;
/// used on the contracted local graphs, whose final tree is flat, to keep
/// the replay's affected sets small.
LowHighState initialize_roots_first(const FlowGraph& g);

/// The sophisticated insertion: locates affected vertices, reorders the
/// children of their new parent through the contracted local graph, and
/// refreshes witnesses of the touched vertices. O(n) plus search work.
void insert_edge(LowHighState& st, int x, int y);

/// The sparse-subgraph insertion: recomputes tree, order, and witnesses
/// from the union of the two divergent trees, the last-edge list, and the
/// new edge (at most 3(n-1)+1 edges).
void insert_edge_simple(LowHighState& st, int x, int y);

/// Baseline: full recomputation whenever the edge source is reachable.
void insert_edge_slt(LowHighState& st, int x, int y);

/// Baseline: full recomputation only when the nca test shows the tree can
/// change or reachability grows; otherwise refreshes the target locally.
void insert_edge_slt_nca(LowHighState& st, int x, int y);

/// Static entry point: tree, order, and divergent trees of g by replay.
std::tuple<DomTree, std::vector<int>, SpanningTreePair> compute_low_high(const FlowGraph& g);

}  // namespace lowhigh
