#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "lowhigh/applications.hpp"
#include "lowhigh/bench.hpp"
#include "lowhigh/errors.hpp"
#include "lowhigh/incremental.hpp"

namespace {

void print_path(const std::vector<int>& path) {
    for (std::size_t i = 0; i < path.size(); ++i) std::cout << (i ? " " : "") << path[i];
    std::cout << '\n';
}

// forest file: one "u v" tree edge per line (parent u of v), '#' comments
std::vector<int> load_forest(const std::string& path, int n) {
    std::ifstream in(path);
    if (!in) throw lowhigh::Error("cannot open forest file: " + path);
    std::vector<int> parent(n + 1, 0);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t i = line.find_first_not_of(" \t\r");
        if (i == std::string::npos || line[i] == '#') continue;
        std::istringstream ls(line);
        int u, v;
        if (!(ls >> u >> v)) throw lowhigh::ParseError(lineno, "expected 'u v' tree edge");
        if (v < 1 || v > n || u < 1 || u > n) throw lowhigh::ParseError(lineno, "vertex id out of range");
        if (parent[v]) throw lowhigh::ParseError(lineno, "vertex has two forest parents");
        parent[v] = u;
    }
    return parent;
}

int run_bench(const std::vector<std::string>& graphs, const std::string& mode_s, const std::string& algo_s,
              double percent, std::uint64_t seed, bool verify, int repeats, const std::string& out_path,
              bool parallel) {
    auto mode = lowhigh::parse_mode(mode_s);
    auto algo = lowhigh::parse_algo(algo_s);
    if (!mode || !algo) {
        std::cerr << "unknown mode or algorithm\n";
        return 1;
    }

    std::vector<lowhigh::WorkloadSpec> specs;
    for (const auto& g : graphs) {
        lowhigh::WorkloadSpec spec;
        spec.graph_path = g;
        spec.mode = *mode;
        spec.algo = *algo;
        spec.percent = percent;
        spec.seed = seed;
        spec.verify = verify;
        spec.repeats = repeats;
        specs.push_back(spec);
    }

    std::vector<lowhigh::ReportRow> rows(specs.size());
    std::vector<std::exception_ptr> errors(specs.size());
    if (parallel && specs.size() > 1) {
        std::vector<std::thread> workers;
        for (std::size_t i = 0; i < specs.size(); ++i)
            workers.emplace_back([&, i] {
                try {
                    rows[i] = lowhigh::run_experiment(specs[i]);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            });
        for (auto& w : workers) w.join();
    } else {
        for (std::size_t i = 0; i < specs.size(); ++i) {
            try {
                rows[i] = lowhigh::run_experiment(specs[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    }

    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw lowhigh::Error("cannot open output file: " + out_path);
        out = &file;
    }
    lowhigh::write_csv_header(*out);
    for (const auto& row : rows) lowhigh::write_csv_row(*out, row);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"incremental low-high orders: benchmarks and path queries"};
    app.require_subcommand(1);

    auto* bench = app.add_subcommand("bench", "run a workload and emit one CSV row per graph");
    std::vector<std::string> graphs;
    std::string mode = "dynamize", algo = "efficient", out_path;
    double percent = 0.1;
    std::uint64_t seed = 0;
    bool verify = false, parallel = false;
    int repeats = 1;
    bench->add_option("--graph", graphs, "input graph file (repeatable)")->required();
    bench->add_option("--mode", mode, "dynamize | random | 2vcss");
    bench->add_option("--percent", percent, "fraction of edges removed/added")->check(CLI::Range(0.0, 1.0));
    bench->add_option("--algo", algo, "efficient | simple | slt | slt-nca | lhz");
    bench->add_option("--seed", seed, "workload seed");
    bench->add_flag("--verify", verify, "check every insertion against the oracles");
    bench->add_option("--repeats", repeats, "timing repetitions")->check(CLI::PositiveNumber);
    bench->add_option("--out", out_path, "CSV output file (default stdout)");
    bench->add_flag("--parallel", parallel, "run independent graphs on separate threads");

    auto* query = app.add_subcommand("query", "answer path queries on a graph");
    std::string qgraph;
    query->add_option("--graph", qgraph, "input graph file")->required();
    query->require_subcommand(1);
    auto* two = query->add_subcommand("two-paths", "two maximally vertex-disjoint paths from the start");
    int qv = 0, qw = 0;
    two->add_option("v", qv)->required();
    two->add_option("w", qw)->required();
    auto* avoid = query->add_subcommand("avoid", "path to v avoiding w, if one exists");
    int av = 0, aw = 0;
    avoid->add_option("v", av)->required();
    avoid->add_option("w", aw)->required();
    auto* vset = query->add_subcommand("valid-set", "minimum edge set restoring the dominators of a forest");
    std::string tfile;
    vset->add_option("forest", tfile, "forest file: 'u v' tree edges")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (bench->parsed())
            return run_bench(graphs, mode, algo, percent, seed, verify, repeats, out_path, parallel);

        lowhigh::FlowGraph g = lowhigh::load_graph_file(qgraph);
        lowhigh::LowHighState st = lowhigh::initialize(g);
        if (two->parsed()) {
            auto pair = lowhigh::query_two_disjoint_paths(st, qv, qw);
            print_path(pair.to_first);
            print_path(pair.to_second);
        } else if (avoid->parsed()) {
            auto path = lowhigh::query_avoiding_path(st, av, aw);
            if (path)
                print_path(*path);
            else
                std::cout << "none\n";
        } else if (vset->parsed()) {
            auto result = lowhigh::valid_set(st, load_forest(tfile, g.n));
            for (auto [u, v] : result.edges) std::cout << u << ' ' << v << '\n';
        }
        return 0;
    } catch (const lowhigh::VerificationFailure& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return 1;
    }
}
