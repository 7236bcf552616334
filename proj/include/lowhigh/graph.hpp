#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace lowhigh {

/// Directed multigraph with a distinguished start vertex. Vertices are
/// dense 1-based ids; id 0 is the null sentinel. Parallel edges and
/// self-loops are stored verbatim.
struct FlowGraph {
    int n = 0;
    int start = 1;
    int m = 0;
    std::vector<std::vector<int>> out_adj;  // slot 0 unused
    std::vector<std::vector<int>> in_adj;

    FlowGraph() = default;
    explicit FlowGraph(int n, int start = 1);

    bool valid_vertex(int v) const { return v >= 1 && v <= n; }
    void add_edge(int u, int v);  // O(1) append; throws IdOutOfRange

    /// Edge list grouped by source id ascending, adjacency order within a source.
    std::vector<std::pair<int, int>> edges() const;
};

enum class GraphFormat { edgelist, dimacs };

/// edgelist: "n m" header, optional "s <id>" line before the edges,
/// one "u v" per line, '#' comments. dimacs: "p <name> n m" header and
/// "a u v" arc lines, 'c' comments.
FlowGraph load_graph(std::istream& in, GraphFormat format);

/// Reads a file, sniffing the format from the first non-comment line.
FlowGraph load_graph_file(const std::string& path);

void serialize_edgelist(const FlowGraph& g, std::ostream& out);

FlowGraph reverse(const FlowGraph& g);

}  // namespace lowhigh
