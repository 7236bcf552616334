#pragma once

#include <utility>
#include <vector>

#include "lowhigh/graph.hpp"

namespace lowhigh {

struct SubgraphResult {
    std::vector<std::pair<int, int>> edges;
    int scss_edges = 0;
    int forward_added = 0;
    int reverse_added = 0;
};

/// Strong connectivity over all vertices except skip (0 = none).
bool strongly_connected(const FlowGraph& g, int skip = 0);

/// n >= 3, flat dominator trees in both directions from the graph's start
/// vertex, and strong connectivity without it.
bool is_2vc(const FlowGraph& g);

/// Union of one out-tree and one in-tree from the start vertex: at most
/// 2(n-1) edges, strongly connected. Throws NotStronglyConnected.
std::vector<std::pair<int, int>> scss_2approx(const FlowGraph& g);

/// 2-approximation of the smallest 2-vertex-connected spanning subgraph:
/// strongly connected core without vertex 1, then low/high witness edges in
/// both directions. At most 4(n-1) edges. Throws Not2VC.
SubgraphResult approx_2vcss(const FlowGraph& g);

}  // namespace lowhigh
