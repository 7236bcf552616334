#pragma once

#include <utility>
#include <vector>

#include "lowhigh/state.hpp"

namespace lowhigh {

/// True iff order is a preorder of d covering exactly the reachable
/// vertices and, for every reachable v other than the root, the tree edge
/// (d(v),v) is present or v has an in-edge from an order-smaller vertex and
/// one from an order-larger non-descendant.
bool verify_low_high(const FlowGraph& g, const DomTree& d, const std::vector<int>& order);

/// Builds the contracted local graph for one insertion. Must run against
/// the pre-insertion tree (after the mark updates for this insertion).
DerivedAffectedGraph build_derived_affected(const LowHighState& pre_state, const AffectedReport& report,
                                            std::pair<int, int> new_edge);

/// Cheap tree candidates from the search classes and the maintained blue
/// parents. No correctness guarantee; callers verify and fall back.
SpanningTreePair candidate_trees(const DerivedAffectedGraph& local, const AffectedReport& report,
                                 const LowHighState& pre_state);

/// Checks that both parent maps are spanning trees of the local graph made
/// of its edges, that the two root paths of every vertex meet only in the
/// root and the vertex, and that each vertex's two parents are either both
/// the root or pairwise distinct from each other and the root.
bool verify_flat_divergent(const DerivedAffectedGraph& local, const SpanningTreePair& trees);

/// Peeling pass over verified divergent trees. Returns the local order with
/// lo_sentinel first and hi_sentinel last. Throws StuckPeel if no vertex is
/// eligible, which signals violated preconditions.
std::vector<int> auxiliary_low_high(const DerivedAffectedGraph& local, SpanningTreePair trees);

/// Fallback that needs no trees: peels any vertex with a root edge or two
/// distinct in-neighbors whose removal keeps the rest reachable with a flat
/// dominator tree, then re-inserts next to its witnesses.
std::vector<int> greedy_peel_low_high(const DerivedAffectedGraph& local);

/// Whole per-insertion ordering step: local graph, candidate trees with the
/// mark overrides, verification, peel (or fallback), and expansion into the
/// new ordered child list of the nca vertex.
std::vector<int> derived_low_high(LowHighState& pre_state, const AffectedReport& report,
                                  std::pair<int, int> new_edge, bool& used_fallback);

/// Compact copy of the local graph for dominator checks; second member maps
/// compact ids (1-based, root first) back to the original ids.
std::pair<FlowGraph, std::vector<int>> derived_to_flow_graph(const DerivedAffectedGraph& local);

}  // namespace lowhigh
