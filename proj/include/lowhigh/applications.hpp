#pragma once

#include <optional>
#include <vector>

#include "lowhigh/state.hpp"

namespace lowhigh {

struct PathPair {
    std::vector<int> to_first, to_second;  // vertex sequences from the start vertex
};

struct ValidSet {
    std::vector<std::pair<int, int>> edges;
};

/// Re-derive blue/red parents from the witness arrays for the given
/// vertices: blue follows low (else the tree parent), red follows high.
void refresh_divergent(LowHighState& st, const std::vector<int>& changed);

/// Two maximally vertex-disjoint paths from the start vertex; the paths
/// meet exactly in the common dominators of v and w.
PathPair query_two_disjoint_paths(const LowHighState& st, int v, int w);

/// Path from the start vertex to v that avoids w, or nullopt iff w
/// dominates v.
std::optional<std::vector<int>> query_avoiding_path(const LowHighState& st, int v, int w);

/// Minimum set of non-forest edges restoring the dominator tree of the
/// full graph to the forest given as a parent map (0 = no parent).
ValidSet valid_set(const LowHighState& st, const std::vector<int>& forest_parent);

/// Exhaustive strong-divergence check, O(n^3); intended for small
/// instances. d supplies the dominator sets (pass an oracle tree to keep
/// the check independent).
bool verify_strongly_divergent(const FlowGraph& g, const DomTree& d, const SpanningTreePair& trees);

}  // namespace lowhigh
