#include "lowhigh/graph.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "lowhigh/errors.hpp"

namespace lowhigh {

FlowGraph::FlowGraph(int n, int start) : n(n), start(start), out_adj(n + 1), in_adj(n + 1) {}

void FlowGraph::add_edge(int u, int v) {
    if (!valid_vertex(u)) throw IdOutOfRange(u, n);
    if (!valid_vertex(v)) throw IdOutOfRange(v, n);
    out_adj[u].push_back(v);
    in_adj[v].push_back(u);
    ++m;
}

std::vector<std::pair<int, int>> FlowGraph::edges() const {
    std::vector<std::pair<int, int>> es;
    es.reserve(m);
    for (int u = 1; u <= n; ++u)
        for (int v : out_adj[u]) es.emplace_back(u, v);
    return es;
}

namespace {

bool next_payload_line(std::istream& in, std::string& line, int& lineno, char comment) {
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t i = line.find_first_not_of(" \t\r");
        if (i == std::string::npos) continue;
        if (line[i] == comment) continue;
        return true;
    }
    return false;
}

}  // namespace

FlowGraph load_graph(std::istream& in, GraphFormat format) {
    std::string line;
    int lineno = 0;
    const char comment = format == GraphFormat::edgelist ? '#' : 'c';

    if (!next_payload_line(in, line, lineno, comment)) throw ParseError(lineno, "missing header");

    int n = 0, m = 0;
    {
        std::istringstream hs(line);
        if (format == GraphFormat::dimacs) {
            std::string p, name;
            if (!(hs >> p >> name >> n >> m) || p != "p")
                throw ParseError(lineno, "expected 'p <name> n m' header");
        } else if (!(hs >> n >> m)) {
            throw ParseError(lineno, "expected 'n m' header");
        }
        if (n < 1) throw ParseError(lineno, "vertex count must be positive");
        if (m < 0) throw ParseError(lineno, "negative edge count");
    }

    FlowGraph g(n);
    bool edges_started = false;
    int read = 0;
    while (read < m) {
        if (!next_payload_line(in, line, lineno, comment))
            throw ParseError(lineno, "expected " + std::to_string(m) + " edges, got " + std::to_string(read));
        std::istringstream ls(line);
        if (format == GraphFormat::dimacs) {
            std::string a;
            int u, v;
            if (!(ls >> a >> u >> v) || a != "a") throw ParseError(lineno, "expected 'a u v' arc line");
            if (!g.valid_vertex(u) || !g.valid_vertex(v)) throw IdOutOfRange(!g.valid_vertex(u) ? u : v, n);
            g.add_edge(u, v);
            ++read;
        } else {
            if (line.find('s') != std::string::npos && !edges_started) {
                std::string s;
                int id;
                std::istringstream ss(line);
                if ((ss >> s >> id) && s == "s") {
                    if (!g.valid_vertex(id)) throw IdOutOfRange(id, n);
                    g.start = id;
                    continue;
                }
            }
            int u, v;
            if (!(ls >> u >> v)) throw ParseError(lineno, "expected 'u v' edge line");
            if (!g.valid_vertex(u) || !g.valid_vertex(v)) throw IdOutOfRange(!g.valid_vertex(u) ? u : v, n);
            g.add_edge(u, v);
            edges_started = true;
            ++read;
        }
    }
    return g;
}

FlowGraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open graph file: " + path);
    // sniff: a leading 'p' or 'c' line means dimacs
    std::string line;
    GraphFormat fmt = GraphFormat::edgelist;
    std::streampos pos = in.tellg();
    while (std::getline(in, line)) {
        std::size_t i = line.find_first_not_of(" \t\r");
        if (i == std::string::npos) continue;
        if (line[i] == 'p' || line[i] == 'c' || line[i] == 'a') fmt = GraphFormat::dimacs;
        break;
    }
    in.clear();
    in.seekg(pos);
    return load_graph(in, fmt);
}

void serialize_edgelist(const FlowGraph& g, std::ostream& out) {
    out << g.n << ' ' << g.m << '\n';
    if (g.start != 1) out << "s " << g.start << '\n';
    for (int u = 1; u <= g.n; ++u)
        for (int v : g.out_adj[u]) out << u << ' ' << v << '\n';
}

FlowGraph reverse(const FlowGraph& g) {
    FlowGraph r(g.n, g.start);
    r.m = g.m;
    r.out_adj = g.in_adj;
    r.in_adj = g.out_adj;
    return r;
}

}  // namespace lowhigh
