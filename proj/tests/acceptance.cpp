// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "lowhigh/applications.hpp"
#include "lowhigh/bench.hpp"
#include "lowhigh/core.hpp"
#include "lowhigh/errors.hpp"
#include "lowhigh/incremental.hpp"
#include "lowhigh/rng.hpp"
#include "lowhigh/twovcss.hpp"
#include "test_util.hpp"

using namespace lowhigh;
using clock_type = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = true;
    std::string note;

    void fail(const std::string& why) {
        pass = false;
        if (note.empty()) note = why;
    }
};

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::string fmt(const char* pattern, ...) {
    char buf[256];
    va_list args;
    va_start(args, pattern);
    std::vsnprintf(buf, sizeof buf, pattern, args);
    va_end(args);
    return buf;
}

// ---- AC1/AC2/AC3/AC4/AC7(bound)/AC9: the correctness sweep ---------------

struct SweepResult {
    Outcome ac1, ac2, ac3, ac4, ac7_bound, ac9;
    long long insertions = 0;
    long long fallbacks = 0;
    long long fallback_opportunities = 0;  // insertions with a nonempty affected set
    double elapsed = 0;
};

SweepResult correctness_sweep() {
    SweepResult out;
    auto t0 = clock_type::now();
    const int graphs = 200;
    for (int round = 0; round < graphs; ++round) {
        SplitMix64 rng(1000 + round);
        const int n = rng.range(5, 60);
        const double density = 1.5 + 4.5 * (double)rng.below(1000) / 1000.0;
        const int m = std::max(n, (int)(density * n));

        LowHighState fast = initialize(FlowGraph(n));
        LowHighState simple = initialize(FlowGraph(n));
        LowHighState slt = initialize(FlowGraph(n));
        LowHighState slt_nca = initialize(FlowGraph(n));
        fast.collect_trace = true;
        simple.collect_trace = true;

        VerifyContext ctx;
        ctx.start(fast);

        for (int i = 0; i < m; ++i) {
            const int x = rng.range(1, n);
            const int y = rng.range(1, n);
            ++out.insertions;
            ctx.before(fast);
            int fallbacks_before = fast.counters.fallbacks;
            try {
                insert_edge(fast, x, y);
                ctx.after(fast, Algo::efficient, (std::size_t)i);
            } catch (const VerificationFailure& e) {
                const std::string& what = e.check;
                // route the failure to the criterion that owns the check
                if (what.find("affected set") != std::string::npos ||
                    what.find("scanned") != std::string::npos ||
                    what.find("carrier") != std::string::npos ||
                    what.find("local graph") != std::string::npos ||
                    what.find("sibling order") != std::string::npos)
                    out.ac2.fail(fmt("round %d insertion %d: %s", round, i, what.c_str()));
                else if (what.find("divergent") != std::string::npos ||
                         what.find("shared tree edge") != std::string::npos)
                    out.ac4.fail(fmt("round %d insertion %d: %s", round, i, what.c_str()));
                else
                    out.ac1.fail(fmt("round %d insertion %d: %s", round, i, what.c_str()));
            }
            if (fast.trace.ran_search && !fast.trace.report.empty()) {
                ++out.fallback_opportunities;
                if (fast.counters.fallbacks > fallbacks_before) {
                    ++out.fallbacks;
                    // AC9: a fallback-produced order must still pass the checker
                    if (!verify_low_high(fast.graph, fast.dom, fast.dom.order()))
                        out.ac9.fail(fmt("round %d insertion %d: fallback order rejected", round, i));
                }
            }

            insert_edge_simple(simple, x, y);
            insert_edge_slt(slt, x, y);
            insert_edge_slt_nca(slt_nca, x, y);
            if (simple.dom.parent != fast.dom.parent)
                out.ac3.fail(fmt("round %d insertion %d: simple tree differs", round, i));
            if (slt.dom.parent != fast.dom.parent)
                out.ac3.fail(fmt("round %d insertion %d: slt tree differs", round, i));
            if (slt_nca.dom.parent != fast.dom.parent)
                out.ac3.fail(fmt("round %d insertion %d: slt-nca tree differs", round, i));
            if (!verify_low_high(simple.graph, simple.dom, simple.dom.order()))
                out.ac3.fail(fmt("round %d insertion %d: simple order rejected", round, i));
            if (!verify_low_high(slt.graph, slt.dom, slt.dom.order()))
                out.ac3.fail(fmt("round %d insertion %d: slt order rejected", round, i));
            if (!verify_low_high(slt_nca.graph, slt_nca.dom, slt_nca.dom.order()))
                out.ac3.fail(fmt("round %d insertion %d: slt-nca order rejected", round, i));
            if (simple.trace.sparse_subgraph_edges > 3 * (n - 1) + 1)
                out.ac3.fail(fmt("round %d insertion %d: sparse subgraph too large", round, i));
        }

        long long work = fast.counters.scanned_vertices + fast.counters.scanned_edges;
        if (work > (long long)(n + 1) * (fast.graph.m + n))
            out.ac7_bound.fail(fmt("round %d: work %lld exceeds (n+1)(m+n)", round, work));
    }
    out.elapsed = seconds_since(t0);
    if (out.elapsed >= 120.0) out.ac1.fail(fmt("sweep took %.1fs, budget 120s", out.elapsed));
    return out;
}

// ---- AC5: valid sets ------------------------------------------------------

// random subset of a random spanning tree of the reachable part
std::vector<int> random_forest(const FlowGraph& g, SplitMix64& rng, bool full_tree) {
    std::vector<int> parent(g.n + 1, 0);
    std::vector<char> seen(g.n + 1, 0);
    std::vector<int> stack = {g.start};
    seen[g.start] = 1;
    while (!stack.empty()) {
        int at = (int)rng.below(stack.size());
        int u = stack[at];
        stack.erase(stack.begin() + at);
        for (int v : g.out_adj[u])
            if (!seen[v]) {
                seen[v] = 1;
                parent[v] = u;
                stack.push_back(v);
            }
    }
    if (!full_tree)
        for (int v = 1; v <= g.n; ++v)
            if (parent[v] && rng.below(2)) parent[v] = 0;
    return parent;
}

bool same_dominators(const FlowGraph& g, const std::vector<int>& forest,
                     const std::vector<std::pair<int, int>>& extra, const DomTree& oracle) {
    FlowGraph h(g.n, g.start);
    for (int v = 1; v <= g.n; ++v)
        if (forest[v]) h.add_edge(forest[v], v);
    for (auto [u, v] : extra) h.add_edge(u, v);
    return brute_force_dominators(h).parent == oracle.parent;
}

Outcome valid_sets() {
    Outcome out;
    // exhaustive minimality at tiny scale
    for (int round = 0; round < 100; ++round) {
        SplitMix64 rng(9000 + round);
        const int n = rng.range(3, 8);
        FlowGraph g = testutil::random_graph(rng, n, rng.range(n, 14));
        DomTree oracle = brute_force_dominators(g);
        LowHighState st = initialize(g);
        std::vector<int> forest = random_forest(g, rng, round % 3 == 0);

        ValidSet result;
        try {
            result = valid_set(st, forest);
        } catch (const std::exception& e) {
            out.fail(fmt("round %d: %s", round, e.what()));
            continue;
        }
        if (!same_dominators(g, forest, result.edges, oracle)) {
            out.fail(fmt("round %d: output not valid", round));
            continue;
        }

        std::set<std::pair<int, int>> tree_edges;
        for (int v = 1; v <= n; ++v)
            if (forest[v]) tree_edges.insert({forest[v], v});
        std::vector<std::pair<int, int>> candidates;
        for (auto e : g.edges())
            if (!tree_edges.count(e) &&
                std::find(candidates.begin(), candidates.end(), e) == candidates.end())
                candidates.push_back(e);
        if (candidates.size() > 12) continue;  // exhaustive check only at the stated scale

        int best = -1;
        for (int size = 0; size <= (int)candidates.size() && best < 0; ++size) {
            for (unsigned mask = 0; mask < (1u << candidates.size()); ++mask) {
                if (__builtin_popcount(mask) != size) continue;
                std::vector<std::pair<int, int>> subset;
                for (std::size_t b = 0; b < candidates.size(); ++b)
                    if (mask & (1u << b)) subset.push_back(candidates[b]);
                if (same_dominators(g, forest, subset, oracle)) {
                    best = size;
                    break;
                }
            }
        }
        if (best != (int)result.edges.size())
            out.fail(fmt("round %d: got %zu edges, exhaustive minimum %d", round, result.edges.size(),
                         best));
    }

    // validity (including the empty forest) at larger scale
    for (int round = 0; round < 60 && out.pass; ++round) {
        SplitMix64 rng(9600 + round);
        const int n = rng.range(5, 60);
        FlowGraph g = testutil::random_graph(rng, n, rng.range(n, 5 * n));
        DomTree oracle = brute_force_dominators(g);
        LowHighState st = initialize(g);
        for (int variant = 0; variant < 3; ++variant) {
            std::vector<int> forest =
                variant == 2 ? std::vector<int>(n + 1, 0) : random_forest(g, rng, variant == 0);
            ValidSet result = valid_set(st, forest);
            if (!same_dominators(g, forest, result.edges, oracle))
                out.fail(fmt("round %d variant %d: output not valid", round, variant));
        }
    }
    return out;
}

// ---- AC6: the 2VCSS approximation ------------------------------------------

Outcome twovcss_sweep() {
    Outcome out;
    {
        SubgraphResult tri = approx_2vcss(testutil::g3());
        if (tri.edges.size() != 6) out.fail(fmt("triangle gave %zu edges, want 6", tri.edges.size()));
    }
    for (int round = 0; round < 100; ++round) {
        SplitMix64 rng(17000 + round);
        const int n = rng.range(4, 40);
        FlowGraph g = testutil::random_two_vertex_connected(rng, n);
        SubgraphResult r;
        try {
            r = approx_2vcss(g);
        } catch (const std::exception& e) {
            out.fail(fmt("round %d: %s", round, e.what()));
            continue;
        }
        if ((int)r.edges.size() > 4 * (n - 1))
            out.fail(fmt("round %d: %zu edges exceed 4(n-1)", round, r.edges.size()));
        FlowGraph h(n, g.start);
        auto in_g = testutil::sorted_edges(g);
        for (auto e : r.edges) {
            if (!std::binary_search(in_g.begin(), in_g.end(), e))
                out.fail(fmt("round %d: edge not from the input", round));
            h.add_edge(e.first, e.second);
        }
        if (!testutil::two_vertex_connected_oracle(h))
            out.fail(fmt("round %d: output not 2-vertex-connected", round));
    }
    return out;
}

// ---- AC7: instrumented subquadratic growth ---------------------------------

FlowGraph random_strongly_connected(SplitMix64& rng, int n, int m) {
    FlowGraph g(n);
    std::vector<int> cycle(n);
    for (int i = 0; i < n; ++i) cycle[i] = i + 1;
    for (int i = n - 1; i > 0; --i) std::swap(cycle[i], cycle[rng.range(0, i)]);
    std::set<std::pair<int, int>> present;
    for (int i = 0; i < n; ++i) {
        int u = cycle[i], v = cycle[(i + 1) % n];
        present.emplace(u, v);
        g.add_edge(u, v);
    }
    while (g.m < m) {
        int u = rng.range(1, n);
        int v = rng.range(1, n);
        if (u == v || !present.emplace(u, v).second) continue;
        g.add_edge(u, v);
    }
    return g;
}

struct GrowthResult {
    Outcome outcome;
    long long work_single = 0, work_double = 0;
    double elapsed = 0;
};

GrowthResult counter_growth() {
    GrowthResult out;
    auto t0 = clock_type::now();
    SplitMix64 rng(555);
    const int n = 1000, m = 5000;
    FlowGraph base = random_strongly_connected(rng, n, m);

    auto run = [&](double percent) {
        auto sequence = random_insertions(base, percent, 777);
        LowHighState st = initialize(base);
        for (auto [x, y] : sequence) insert_edge(st, x, y);
        return st.counters.scanned_vertices + st.counters.scanned_edges;
    };
    out.work_single = run(0.08);  // 400 insertions
    out.work_double = run(0.16);  // 800 insertions, same prefix
    if (out.work_single <= 0)
        out.outcome.fail("no scanned work recorded");
    else if (out.work_double >= 4 * out.work_single)
        out.outcome.fail(
            fmt("work %lld -> %lld quadrupled or worse", out.work_single, out.work_double));
    out.elapsed = seconds_since(t0);
    if (out.elapsed >= 300.0) out.outcome.fail(fmt("took %.1fs, budget 300s", out.elapsed));
    return out;
}

// ---- AC8: qualitative ranking -----------------------------------------------

struct RankingResult {
    Outcome outcome;
    double fast = 0, simple = 0, slt = 0;
};

RankingResult ranking() {
    RankingResult out;
    SplitMix64 rng(4242);
    const int n = 1200, m = 6000;
    FlowGraph base = random_strongly_connected(rng, n, m);
    auto sequence = random_insertions(base, 0.1, 4243);

    auto timed = [&](Algo algo) {
        auto t0 = clock_type::now();
        LowHighState st = initialize(base);
        for (auto [x, y] : sequence) apply_insertion(st, algo, x, y);
        return seconds_since(t0);
    };
    out.fast = timed(Algo::efficient);
    out.simple = timed(Algo::simple);
    out.slt = timed(Algo::slt);
    if (!(out.fast < out.simple && out.simple < out.slt))
        out.outcome.fail(fmt("ranking broken: efficient %.3fs, simple %.3fs, slt %.3fs", out.fast,
                             out.simple, out.slt));
    return out;
}

int report(const char* name, const Outcome& o, const std::string& detail) {
    std::printf("%s: %s%s%s\n", name, o.pass ? "PASS" : "FAIL", detail.empty() ? "" : " — ",
                detail.c_str());
    if (!o.pass) std::printf("    %s\n", o.note.c_str());
    return o.pass ? 0 : 1;
}

}  // namespace

int main() {
    int failures = 0;

    SweepResult sweep = correctness_sweep();
    failures += report("AC1 (correctness sweep)", sweep.ac1,
                       fmt("200 graphs, %lld insertions, oracle+checker+certificate each, %.1fs",
                           sweep.insertions, sweep.elapsed));
    failures += report("AC2 (update invariants)", sweep.ac2,
                       "affected-diff, scanned-subtree, carrier, local-graph, depth, agreement checks");
    failures += report("AC3 (variant agreement)", sweep.ac3,
                       "simple/slt/slt-nca trees identical, orders checker-valid");
    failures += report("AC4 (strong divergence)", sweep.ac4,
                       "pairwise path checks and shared-edge audit on graphs up to n=25");

    Outcome ac5 = valid_sets();
    failures += report("AC5 (valid sets)", ac5,
                       "exhaustive minima at n<=8, validity with empty and partial forests at n<=60");

    Outcome ac6 = twovcss_sweep();
    failures += report("AC6 (2vcss approximation)", ac6,
                       "100 random 2vc digraphs within 4(n-1) edges; triangle exact");

    GrowthResult growth = counter_growth();
    failures += report(
        "AC7 (instrumented work)", growth.outcome,
        fmt("per-run bound held in AC1; doubling insertions: %lld -> %lld (%.2fx), %.1fs",
            growth.work_single, growth.work_double,
            growth.work_single ? (double)growth.work_double / growth.work_single : 0.0,
            growth.elapsed));
    failures += report("AC7 (per-run counter bound)", sweep.ac7_bound,
                       "nu+mu <= (n+1)(m+n) on every AC1 run");

    RankingResult rank = ranking();
    failures += report("AC8 (qualitative ranking)", rank.outcome,
                       fmt("efficient %.3fs < simple %.3fs < slt %.3fs", rank.fast, rank.simple,
                           rank.slt));

    failures += report("AC9 (fallback accounting)", sweep.ac9,
                       fmt("%lld fallbacks over %lld eligible insertions (%.2f%%), none rejected",
                           sweep.fallbacks, sweep.fallback_opportunities,
                           sweep.fallback_opportunities
                               ? 100.0 * sweep.fallbacks / sweep.fallback_opportunities
                               : 0.0));

    return failures ? 1 : 0;
}
