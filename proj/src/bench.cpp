#include "lowhigh/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <unordered_set>

#include "lowhigh/applications.hpp"
#include "lowhigh/core.hpp"
#include "lowhigh/errors.hpp"
#include "lowhigh/incremental.hpp"
#include "lowhigh/rng.hpp"
#include "lowhigh/twovcss.hpp"

namespace lowhigh {

const char* to_string(Algo a) {
    switch (a) {
        case Algo::efficient: return "efficient";
        case Algo::simple: return "simple";
        case Algo::slt: return "slt";
        case Algo::slt_nca: return "slt-nca";
        case Algo::lhz: return "lhz";
    }
    return "?";
}

std::optional<Mode> parse_mode(const std::string& s) {
    if (s == "dynamize") return Mode::dynamize;
    if (s == "random") return Mode::random_insert;
    if (s == "2vcss") return Mode::twovcss;
    return std::nullopt;
}

std::optional<Algo> parse_algo(const std::string& s) {
    if (s == "efficient") return Algo::efficient;
    if (s == "simple") return Algo::simple;
    if (s == "slt") return Algo::slt;
    if (s == "slt-nca") return Algo::slt_nca;
    if (s == "lhz") return Algo::lhz;
    return std::nullopt;
}

std::pair<FlowGraph, std::vector<std::pair<int, int>>> dynamize(const FlowGraph& g, double percent,
                                                                std::uint64_t seed) {
    auto all = g.edges();
    const int m = (int)all.size();
    const int k = std::min<int>(m, (int)std::ceil(percent * m));
    SplitMix64 rng(seed);
    std::vector<int> idx(m);
    for (int i = 0; i < m; ++i) idx[i] = i;
    for (int i = 0; i < k; ++i) std::swap(idx[i], idx[i + (int)rng.below((std::uint64_t)(m - i))]);

    std::vector<char> removed(m, 0);
    std::vector<std::pair<int, int>> sequence;
    sequence.reserve(k);
    for (int i = 0; i < k; ++i) {
        removed[idx[i]] = 1;
        sequence.push_back(all[idx[i]]);
    }
    FlowGraph base(g.n, g.start);
    for (int i = 0; i < m; ++i)
        if (!removed[i]) base.add_edge(all[i].first, all[i].second);
    return {std::move(base), std::move(sequence)};
}

std::vector<std::pair<int, int>> random_insertions(const FlowGraph& g, double percent, std::uint64_t seed) {
    const long long n = g.n;
    std::unordered_set<long long> present;
    long long distinct = 0;
    for (int u = 1; u <= g.n; ++u)
        for (int v : g.out_adj[u])
            if (u != v && present.insert((long long)u * (n + 1) + v).second) ++distinct;

    const int k = (int)std::ceil(percent * g.m);
    SplitMix64 rng(seed);
    std::vector<std::pair<int, int>> out;
    out.reserve(k);
    while ((int)out.size() < k) {
        if (distinct == n * (n - 1)) throw SaturatedGraph();
        int u = 1 + (int)rng.below((std::uint64_t)n);
        int v = 1 + (int)rng.below((std::uint64_t)n);
        if (u == v) continue;
        if (!present.insert((long long)u * (n + 1) + v).second) continue;
        ++distinct;
        out.emplace_back(u, v);
    }
    return out;
}

void apply_insertion(LowHighState& st, Algo algo, int x, int y) {
    switch (algo) {
        case Algo::efficient: insert_edge(st, x, y); break;
        case Algo::simple: insert_edge_simple(st, x, y); break;
        case Algo::slt: insert_edge_slt(st, x, y); break;
        case Algo::slt_nca: insert_edge_slt_nca(st, x, y); break;
        case Algo::lhz: throw Error("lhz is not an insertion algorithm");
    }
}

namespace {

std::unordered_set<long long> edge_keys(const FlowGraph& g) {
    std::unordered_set<long long> s;
    s.reserve(g.m * 2);
    for (int u = 1; u <= g.n; ++u)
        for (int v : g.out_adj[u]) s.insert((long long)u * (g.n + 1) + v);
    return s;
}

}  // namespace

void VerifyContext::start(const LowHighState& st) {
    n = st.graph.n;
    oracle = brute_force_dominators(st.graph);
    divergence_checks = n <= 25;
}

void VerifyContext::before(const LowHighState& st) {
    pre_parent = st.dom.parent;
    pre_depth = st.dom.depth;
    pre_pre = st.dom.pre;
    pre_post = st.dom.post;
}

void VerifyContext::after(const LowHighState& st, Algo algo, std::size_t index) {
    auto fail = [&](const char* what) { throw VerificationFailure(index, what); };
    DomTree fresh = brute_force_dominators(st.graph);

    for (int v = 1; v <= n; ++v) {
        if (st.dom.parent[v] != fresh.parent[v]) fail("dominator tree differs from the oracle");
        if (st.dom.reachable(v) != fresh.reachable(v)) fail("reachability differs from the oracle");
    }

    if (!verify_low_high(st.graph, st.dom, st.dom.order())) fail("order rejected by the low-high checker");
    if (!certify_dominator_tree(st.graph, st.dom, st.dom.order())) fail("certificate rejected");

    if (divergence_checks) {
        if (!verify_strongly_divergent(st.graph, fresh, st.trees)) fail("spanning trees not strongly divergent");
        for (int v = 1; v <= n; ++v) {
            if (!st.dom.reachable(v) || v == st.dom.root) continue;
            if (st.trees.blue[v] == st.trees.red[v] &&
                !(st.trees.blue[v] == st.dom.parent[v] && st.mark[v] && !st.low[v] && !st.high[v]))
                fail("shared tree edge without a null-witness mark");
        }
    }

    if (algo != Algo::simple) {
        auto keys = edge_keys(st.graph);
        auto has = [&](int u, int v) { return keys.count((long long)u * (n + 1) + v) != 0; };
        for (int v = 1; v <= n; ++v) {
            if (!st.dom.reachable(v) || v == st.dom.root) continue;
            if ((st.mark[v] != 0) != has(st.dom.parent[v], v)) fail("mark does not match the tree edge");
            if (!st.mark[v] && (!st.low[v] || !st.high[v])) fail("unmarked vertex with a null witness");
            if (st.low[v] && !(has(st.low[v], v) && st.low[v] != st.dom.parent[v] &&
                               st.dom.pre[st.low[v]] < st.dom.pre[v]))
                fail("low witness invalid");
            if (st.high[v] && !(has(st.high[v], v) && st.dom.pre[st.high[v]] > st.dom.pre[v] &&
                                !st.dom.is_ancestor(v, st.high[v])))
                fail("high witness invalid");
        }
    }

    if (st.collect_trace && st.trace.ran_search) {
        const AffectedReport& rep = st.trace.report;
        // the affected set is exactly the set of parent changes
        std::vector<char> in_a(n + 1, 0);
        for (int v : rep.affected) in_a[v] = 1;
        for (int v = 1; v <= n; ++v) {
            bool was_reachable = v == st.dom.root || pre_parent[v] != 0;
            bool changed = was_reachable && pre_parent[v] != fresh.parent[v];
            if (changed != (in_a[v] != 0)) fail("affected set differs from the oracle diff");
        }
        auto pre_anc = [&](int a, int v) {
            return pre_pre[a] != 0 && pre_pre[v] != 0 && pre_pre[a] <= pre_pre[v] && pre_post[v] <= pre_post[a];
        };
        for (int u : rep.scanned) {
            bool covered = false;
            for (int a : rep.affected)
                if (pre_anc(a, u)) {
                    covered = true;
                    break;
                }
            if (!covered) fail("scanned vertex outside every affected subtree");
            if (st.dom.depth[u] >= pre_depth[u]) fail("scanned vertex depth did not decrease");
        }
        if (!rep.empty()) {
            if (pre_parent[rep.carrier] != rep.nca) fail("carrier is not a child of the nca");
            for (int a : rep.affected)
                if (!pre_anc(rep.carrier, a)) fail("affected vertex outside the carrier subtree");
        }
        if (st.trace.has_local_graph) {
            const auto& local = st.trace.local;
            if (local.vertex_count() > rep.scanned_vertex_count + 4) fail("local graph vertex bound violated");
            if (local.raw_edge_count > rep.scanned_edge_count + 5) fail("local graph edge bound violated");
            auto [compact, labels] = derived_to_flow_graph(local);
            DomTree flat = brute_force_dominators(compact);
            for (int v = 1; v <= compact.n; ++v)
                if (v != compact.start && flat.parent[v] != compact.start)
                    fail("local graph dominator tree not flat");
        }
        if (!rep.empty()) {
            // relative order of unaffected old sibling pairs is preserved
            for (int p = 1; p <= n; ++p) {
                if (pre_pre[p] == 0) continue;
                std::vector<int> kids;
                for (int v = 1; v <= n; ++v)
                    if (v != st.dom.root && pre_parent[v] == p && !in_a[v]) kids.push_back(v);
                for (std::size_t i = 0; i < kids.size(); ++i)
                    for (std::size_t j = i + 1; j < kids.size(); ++j) {
                        int u = kids[i], v = kids[j];
                        if ((pre_pre[u] < pre_pre[v]) != (st.dom.pre[u] < st.dom.pre[v]))
                            fail("unaffected sibling order changed");
                    }
            }
        }
        if (st.trace.sparse_subgraph_edges >= 0 && st.trace.sparse_subgraph_edges > 3 * (n - 1) + 1)
            fail("sparse subgraph exceeds 3(n-1)+1 edges");
    }

    oracle = std::move(fresh);
}

namespace {

ReportRow run_incremental(FlowGraph base, std::vector<std::pair<int, int>> sequence, const WorkloadSpec& spec) {
    using clock = std::chrono::steady_clock;
    ReportRow row;
    row.graph = spec.graph_name;
    row.n = base.n;
    row.m_start = base.m;
    row.algo = to_string(spec.algo);
    row.verified = spec.verify ? "pass" : "na";

    double total = 0.0;
    LowHighState st;
    for (int rep = 0; rep < std::max(1, spec.repeats); ++rep) {
        if (spec.verify && rep == 0) {
            auto t0 = clock::now();
            st = initialize(base);
            total += std::chrono::duration<double>(clock::now() - t0).count();
            st.collect_trace = true;
            VerifyContext ctx;
            ctx.start(st);
            for (std::size_t i = 0; i < sequence.size(); ++i) {
                ctx.before(st);
                auto t1 = clock::now();
                apply_insertion(st, spec.algo, sequence[i].first, sequence[i].second);
                total += std::chrono::duration<double>(clock::now() - t1).count();
                ctx.after(st, spec.algo, i);
            }
            st.collect_trace = false;
        } else {
            auto t0 = clock::now();
            st = initialize(base);
            for (auto [x, y] : sequence) apply_insertion(st, spec.algo, x, y);
            total += std::chrono::duration<double>(clock::now() - t0).count();
        }
    }
    row.seconds = total / std::max(1, spec.repeats);
    row.m_final = st.graph.m;
    row.nu_total = st.counters.scanned_vertices;
    row.mu_total = st.counters.scanned_edges;
    row.restarts = st.counters.restarts;
    row.fallbacks = st.counters.fallbacks;
    return row;
}

ReportRow run_twovcss(const FlowGraph& g, const WorkloadSpec& spec) {
    using clock = std::chrono::steady_clock;
    ReportRow row;
    row.graph = spec.graph_name;
    row.n = g.n;
    row.m_start = g.m;
    row.algo = to_string(spec.algo);
    row.verified = spec.verify ? "pass" : "na";

    double total = 0.0;
    SubgraphResult result;
    for (int rep = 0; rep < std::max(1, spec.repeats); ++rep) {
        auto t0 = clock::now();
        result = approx_2vcss(g);
        total += std::chrono::duration<double>(clock::now() - t0).count();
    }
    row.seconds = total / std::max(1, spec.repeats);
    row.m_final = (int)result.edges.size();

    if (spec.verify) {
        auto keys = edge_keys(g);
        for (auto [u, v] : result.edges)
            if (!keys.count((long long)u * (g.n + 1) + v)) throw VerificationFailure(0, "2vcss edge not in the input");
        if ((int)result.edges.size() > 4 * (g.n - 1)) throw VerificationFailure(0, "2vcss exceeds 4(n-1) edges");
        FlowGraph h(g.n, g.start);
        for (auto [u, v] : result.edges) h.add_edge(u, v);
        if (!is_2vc(h)) throw VerificationFailure(0, "2vcss output not 2-vertex-connected");
    }
    return row;
}

}  // namespace

ReportRow run_experiment_on(FlowGraph g, const WorkloadSpec& spec) {
    switch (spec.mode) {
        case Mode::twovcss:
            return run_twovcss(g, spec);
        case Mode::dynamize: {
            auto [base, sequence] = dynamize(g, spec.percent, spec.seed);
            return run_incremental(std::move(base), std::move(sequence), spec);
        }
        case Mode::random_insert: {
            if (!strongly_connected(g)) throw NotStronglyConnected();
            auto sequence = random_insertions(g, spec.percent, spec.seed);
            return run_incremental(std::move(g), std::move(sequence), spec);
        }
    }
    throw Error("unknown mode");
}

ReportRow run_experiment(const WorkloadSpec& spec) {
    FlowGraph g = load_graph_file(spec.graph_path);
    WorkloadSpec named = spec;
    if (named.graph_name.empty()) {
        auto slash = spec.graph_path.find_last_of('/');
        named.graph_name = slash == std::string::npos ? spec.graph_path : spec.graph_path.substr(slash + 1);
    }
    return run_experiment_on(std::move(g), named);
}

void write_csv_header(std::ostream& out) {
    out << "graph,n,m_start,m_final,algo,seconds,nu_total,mu_total,restarts,fallbacks,verified\n";
}

void write_csv_row(std::ostream& out, const ReportRow& row) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", row.seconds);
    out << row.graph << ',' << row.n << ',' << row.m_start << ',' << row.m_final << ',' << row.algo << ','
        << buf << ',' << row.nu_total << ',' << row.mu_total << ',' << row.restarts << ',' << row.fallbacks
        << ',' << row.verified << '\n';
}

}  // namespace lowhigh
