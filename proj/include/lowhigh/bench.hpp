#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lowhigh/state.hpp"

namespace lowhigh {

enum class Mode { dynamize, random_insert, twovcss };
enum class Algo { efficient, simple, slt, slt_nca, lhz };

const char* to_string(Algo a);
std::optional<Mode> parse_mode(const std::string& s);
std::optional<Algo> parse_algo(const std::string& s);

struct WorkloadSpec {
    std::string graph_path;
    std::string graph_name;
    Mode mode = Mode::dynamize;
    double percent = 0.1;
    std::uint64_t seed = 0;
    Algo algo = Algo::efficient;
    bool verify = false;
    int repeats = 1;
};

struct ReportRow {
    std::string graph;
    int n = 0;
    int m_start = 0;
    int m_final = 0;
    std::string algo;
    double seconds = 0.0;
    long long nu_total = 0;
    long long mu_total = 0;
    int restarts = 0;
    int fallbacks = 0;
    std::string verified;  // pass, fail, or na
};

/// Removes ceil(percent*m) uniformly sampled edges; they come back as the
/// insertion sequence, already shuffled.
std::pair<FlowGraph, std::vector<std::pair<int, int>>> dynamize(const FlowGraph& g, double percent,
                                                                std::uint64_t seed);

/// ceil(percent*m) fresh non-loop edges not present in the graph (nor
/// drawn twice). Throws SaturatedGraph when no candidate pair is left.
std::vector<std::pair<int, int>> random_insertions(const FlowGraph& g, double percent, std::uint64_t seed);

/// Applies one insertion with the chosen algorithm.
void apply_insertion(LowHighState& st, Algo algo, int x, int y);

/// Per-insertion verification battery. before() snapshots the pre-insertion
/// tree and oracle; after() checks the post state and throws
/// VerificationFailure naming the first broken assertion.
struct VerifyContext {
    int n = 0;
    DomTree oracle;          // oracle tree for the current graph
    std::vector<int> pre_parent, pre_depth, pre_pre, pre_post;
    bool divergence_checks = true;  // O(n^3) pair sweep, for small n

    void start(const LowHighState& st);
    void before(const LowHighState& st);
    void after(const LowHighState& st, Algo algo, std::size_t index);
};

ReportRow run_experiment_on(FlowGraph g, const WorkloadSpec& spec);
ReportRow run_experiment(const WorkloadSpec& spec);  // loads spec.graph_path

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const ReportRow& row);

}  // namespace lowhigh
