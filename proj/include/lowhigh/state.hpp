#pragma once

#include <utility>
#include <vector>

#include "lowhigh/dominators.hpp"
#include "lowhigh/graph.hpp"

namespace lowhigh {

/// Two rooted spanning trees as parent maps. For the maintained pair,
/// blue parents come from the low witnesses and red parents from the high
/// witnesses; for local peeling graphs the arrays are sized to also hold
/// the two sentinel ids.
struct SpanningTreePair {
    std::vector<int> blue, red;
};

struct Counters {
    long long scanned_vertices = 0;  // nu accumulated over all searches
    long long scanned_edges = 0;     // mu accumulated over all searches
    int restarts = 0;                // full recomputations (unreachable target, baselines)
    int fallbacks = 0;               // greedy peel invocations
};

/// Result of the affected-vertex search for one insertion.
struct AffectedReport {
    int nca = 0;      // nearest common ancestor of the inserted edge's endpoints
    int carrier = 0;  // child of nca whose old subtree holds every affected vertex; 0 if none
    std::vector<int> affected;      // identification order; front() is the edge target when nonempty
    std::vector<int> last_source;   // per affected v: source of the edge that set v's final bottleneck
    std::vector<int> source_class;  // per affected v: nearest affected ancestor of last_source, 0 for the edge target
    std::vector<int> scanned;       // union of the affected vertices' old subtrees
    long long scanned_vertex_count = 0;
    long long scanned_edge_count = 0;
    bool empty() const { return affected.empty(); }
};

/// Contracted local flow graph built per insertion: the affected vertices,
/// their carrier, and two sentinels standing for the sibling blocks ordered
/// before/after the carrier. Sentinel ids live just above the graph's id
/// range. Edges are deduplicated; raw_edge_count is the pre-dedup tally.
struct DerivedAffectedGraph {
    int root = 0;  // the nca vertex; its local dominator tree is flat
    int carrier = 0;
    int lo_sentinel = 0;
    int hi_sentinel = 0;
    std::vector<int> affected;
    std::vector<std::pair<int, int>> edges;
    int raw_edge_count = 0;
    enum class NewEdgeClass { lo, hi, root };
    NewEdgeClass new_edge_class = NewEdgeClass::root;

    int vertex_count() const { return (int)affected.size() + 4; }
    bool has_edge(int u, int v) const;
};

/// Diagnostics captured for the last insertion when collect_trace is set.
struct InsertionTrace {
    bool ran_search = false;
    AffectedReport report;
    bool has_local_graph = false;
    DerivedAffectedGraph local;
    SpanningTreePair local_trees;
    bool trees_verified = false;
    bool used_fallback = false;
    int sparse_subgraph_edges = -1;  // |H'| for the simple variant
};

/// Reusable per-state work buffers. Entries are valid only when their stamp
/// matches the current epoch, so a fresh use is one increment instead of an
/// O(n) clear. Bucket levels drain completely during each search.
struct Scratch {
    std::vector<int> best, last, owner;
    std::vector<int> best_stamp, final_stamp, explored_stamp, flag_stamp;
    std::vector<std::vector<int>> bucket;
    int epoch = 0;

    void ensure(int n) {
        if ((int)best.size() < n + 1) {
            best.resize(n + 1);
            last.resize(n + 1);
            owner.resize(n + 1);
            best_stamp.resize(n + 1, 0);
            final_stamp.resize(n + 1, 0);
            explored_stamp.resize(n + 1, 0);
            flag_stamp.resize(n + 1, 0);
            bucket.resize(n + 1);
        }
    }
};

/// Full incremental state: the stored graph, its dominator tree with
/// children lists kept in order (so dom.pre is the position of a vertex in
/// the maintained low-high order), the witness arrays, and the divergent
/// spanning tree parents.
struct LowHighState {
    FlowGraph graph;
    DomTree dom;
    std::vector<char> mark;       // (d(v),v) present in the graph
    std::vector<int> low, high;   // witness edge sources, 0 = none
    SpanningTreePair trees;       // blue/red parents over reachable vertices
    Counters counters;
    bool collect_trace = false;
    InsertionTrace trace;
    mutable Scratch scratch;

    bool before(int u, int v) const { return dom.pre[u] < dom.pre[v]; }
    std::vector<int> order() const { return dom.order(); }
};

}  // namespace lowhigh
