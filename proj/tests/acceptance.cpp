// Acceptance run: one PASS/FAIL line per criterion. Pass criterion numbers to run a subset.

#include "corpus.hpp"
#include "mimham/counterexample.hpp"
#include "mimham/gadgets.hpp"
#include "mimham/ham.hpp"
#include "mimham/mim.hpp"
#include "mimham/reduction.hpp"
#include "mimham/witness.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace mimham;

namespace {

struct Outcome {
    bool pass = false;
    std::string summary;
};

struct CorpusEntry {
    Formula formula;
    NormalizedFormula normalized;
    std::optional<Instance> instance; // when Reducible
};

const std::vector<CorpusEntry>& corpus_entries()
{
    static const std::vector<CorpusEntry> entries = [] {
        std::vector<CorpusEntry> out;
        for (auto& f : corpus::acceptance_formulas()) {
            CorpusEntry e{f, normalize(f), std::nullopt};
            if (e.normalized.status == NormalStatus::Reducible)
                e.instance = reduce(e.normalized);
            out.push_back(std::move(e));
        }
        return out;
    }();
    return entries;
}

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// 1. SAT <=> Hamiltonian path over the exhaustive small corpus.
Outcome equivalence()
{
    int sat = 0, mismatches = 0, budget = 0;
    std::uint64_t max_nodes = 0;
    for (const auto& e : corpus_entries()) {
        bool expect = sat_oracle(e.formula).has_value();
        sat += expect;
        bool got;
        if (!e.instance) {
            got = e.normalized.status == NormalStatus::DecidedSat;
        } else {
            auto r = find_ham_path(e.instance->graph);
            max_nodes = std::max(max_nodes, r.nodes);
            if (r.status == SearchStatus::BudgetExceeded) {
                ++budget;
                continue;
            }
            got = r.status == SearchStatus::Found;
        }
        mismatches += expect != got;
    }
    const int total = static_cast<int>(corpus_entries().size());
    return {mismatches == 0 && budget == 0,
            fmt("%d formulas (%d sat, %d unsat), %d mismatches, %d budget stops, max %llu search nodes", total, sat,
                total - sat, mismatches, budget, static_cast<unsigned long long>(max_nodes))};
}

// 2. Width of the emitted orders.
Outcome widths()
{
    std::vector<Instance> instances;
    for (const auto& e : corpus_entries())
        if (e.instance)
            instances.push_back(*e.instance);
    std::mt19937_64 rng(2024);
    int random = 0;
    while (random < 50) {
        int n = 1 + static_cast<int>(rng() % 6), m = 1 + static_cast<int>(rng() % 6);
        auto nf = normalize(corpus::random_formula(rng, n, m));
        if (nf.status != NormalStatus::Reducible)
            continue;
        instances.push_back(reduce(nf));
        ++random;
    }
    int worst_path = 0, worst_cycle = 0, bad = 0;
    for (const auto& inst : instances) {
        auto p = mim_width(inst.graph, inst.order, 25);
        Instance cyc = to_cycle_instance(inst);
        auto c = mim_width(cyc.graph, cyc.order, 26);
        worst_path = std::max(worst_path, p.width);
        worst_cycle = std::max(worst_cycle, c.width);
        bad += p.exceeded || c.exceeded;
    }
    return {bad == 0, fmt("%zu instances (%d random), max path width %d <= 25, max cycle width %d <= 26",
                          instances.size(), random, worst_path, worst_cycle)};
}

// 3. Gadget contract for the shipped catalog.
Outcome gadgets()
{
    std::vector<ClauseGadget> catalog;
    {
        std::ifstream in(std::string(MIMHAM_DATA_DIR) + "/gadgets.txt");
        std::stringstream ss;
        ss << in.rdbuf();
        catalog = read_catalog(ss.str());
    }
    bool ok = catalog.size() == 2;
    std::string detail;
    for (const auto& g : catalog) {
        ok &= g.graph == build_clause_gadget(g.k).graph;
        auto fast = verify_gadget_contract(g);
        auto slow = verify_gadget_contract_slow(g);
        ok &= fast.ok && slow.ok && fast.forests == slow.forests;
        ok &= g.graph.vertex_count() <= kGadgetVertexBound;
        ok &= fast.pair_paths.size() == static_cast<std::size_t>(g.k);
        for (int i = 0; i < g.k && i < static_cast<int>(fast.pair_paths.size()); ++i) {
            ok &= verify_path(g.graph, fast.pair_paths[i]).ok;
            auto [s, t] = g.pairs[i];
            const auto& p = fast.pair_paths[i];
            ok &= (p.front() == s && p.back() == t) || (p.front() == t && p.back() == s);
        }

        // Harness: gadget, one outside vertex per door, those form a clique, terminals S and T
        // see every outside vertex. Every Hamiltonian S-T path must cross along one pair.
        Graph h(g.graph.vertex_count());
        for (const auto& e : g.graph.edges())
            h.add_edge(e.u, e.v);
        std::vector<int> outside;
        for (auto [s, t] : g.pairs)
            for (int d : {s, t}) {
                int r = h.add_vertex();
                h.add_edge(r, d);
                outside.push_back(r);
            }
        for (std::size_t a = 0; a < outside.size(); ++a)
            for (std::size_t b = a + 1; b < outside.size(); ++b)
                h.add_edge(outside[a], outside[b]);
        int S = h.add_vertex(), T = h.add_vertex();
        for (int r : outside) {
            h.add_edge(S, r);
            h.add_edge(T, r);
        }
        SearchOptions so;
        so.endpoints = std::pair{S, T};
        so.enumerate_limit = 1'000'000;
        auto en = enumerate_ham_paths(h, so);
        int violations = 0;
        const int inner = g.graph.vertex_count();
        for (const auto& p : en.paths) {
            std::vector<int> at;
            for (std::size_t k = 0; k < p.size(); ++k)
                if (p[k] < inner)
                    at.push_back(static_cast<int>(k));
            int a = p[at.front()], b = p[at.back()];
            bool pair = std::any_of(g.pairs.begin(), g.pairs.end(), [&](auto st) {
                return (st.first == a && st.second == b) || (st.first == b && st.second == a);
            });
            violations += !(at.back() - at.front() + 1 == inner && pair);
        }
        ok &= en.complete && violations == 0;
        if (!detail.empty())
            detail += "; ";
        detail += fmt("gamma%d: %d vertices, %llu forests, %zu harness paths, %d violations", g.k, inner,
                      static_cast<unsigned long long>(fast.forests), en.paths.size(), violations);
    }
    return {ok, detail};
}

// 4. Assignment -> path -> assignment.
Outcome witness_round_trip()
{
    int checked = 0, bad = 0;
    for (const auto& e : corpus_entries()) {
        if (!e.instance)
            continue;
        auto a = sat_oracle(e.instance->formula);
        if (!a)
            continue;
        ++checked;
        HamPath p = path_from_assignment(*e.instance, *a);
        bool ok = verify_path(e.instance->graph, p, true, true).ok;
        ok = ok && evaluate(e.instance->formula, assignment_from_path(*e.instance, p));
        ok = ok && evaluate(e.formula, e.normalized.lift(assignment_from_path(*e.instance, p)));
        bad += !ok;
    }
    Instance paper = reduce(normalize(corpus::paper_formula()));
    Assignment fig5({{1, false}, {2, false}, {3, true}, {4, true}});
    HamPath p = path_from_assignment(paper, fig5);
    bool fig_ok = verify_path(paper.graph, p, true, true).ok && assignment_from_path(paper, p) == fig5;
    return {bad == 0 && fig_ok,
            fmt("%d satisfiable instances round-trip, %d failures; running example path %s", checked, bad,
                fig_ok ? "validates and recovers x1=x2=0, x3=x4=1" : "FAILED")};
}

// 5. Respectability, dt-triples and dummy-freeness of solver paths.
Outcome respectability()
{
    std::uint64_t paths = 0;
    int bad = 0, incomplete = 0, budget = 0;
    for (const auto& e : corpus_entries()) {
        if (!e.instance)
            continue;
        const Instance& inst = *e.instance;
        SearchOptions so;
        so.enumerate_limit = 100;
        auto en = enumerate_ham_paths(inst.graph, so);
        budget += en.status == SearchStatus::BudgetExceeded;
        incomplete += !en.complete;
        for (const auto& p : en.paths) {
            ++paths;
            bool ok = verify_path(inst.graph, p, true, true).ok;
            ok = ok && check_respectable(inst, p, inst.n, inst.m).ok && consecutive_dt_check(inst, p);
            bad += !ok;
        }
    }
    return {bad == 0 && budget == 0,
            fmt("%llu solver paths checked, %d violations, %d instances stopped at the 100-path limit, %d budget stops",
                static_cast<unsigned long long>(paths), bad, incomplete, budget)};
}

// 6. Chain graphs.
Outcome chain_graphs()
{
    std::mt19937_64 rng(6);
    int bad = 0, max_seen = 0, largest = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        int total = 2 + static_cast<int>(rng() % 199);
        int a = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(total - 1));
        std::vector<int> left;
        Graph g = oracle::random_chain_graph(rng, a, total - a, left);
        auto cut = make_cut(g, left);
        int mim = max_induced_matching(cut, 5).size;
        max_seen = std::max(max_seen, mim);
        largest = std::max(largest, g.vertex_count());
        bad += mim > 1 || !is_chain_graph(cut);
    }
    return {bad == 0, fmt("1000 chain graphs up to %d vertices, max induced matching %d", largest, max_seen)};
}

// 7. Induced matching solver against subset enumeration.
Outcome induced_matching()
{
    std::uint64_t cuts = 0;
    int bad = 0;
    auto check = [&](const Graph& g, std::uint32_t side) {
        std::vector<int> left;
        for (int v = 0; v < g.vertex_count(); ++v)
            if (side >> v & 1u)
                left.push_back(v);
        auto cut = make_cut(g, left);
        auto got = max_induced_matching(cut, 100);
        ++cuts;
        bad += got.size != oracle::induced_matching_bruteforce(g, cut) || !is_induced_matching(cut, got.witness.edges);
    };
    // Every graph on up to 6 vertices with every cut.
    for (int n = 1; n <= 6; ++n) {
        const int pairs = n * (n - 1) / 2;
        for (std::uint64_t code = 0; code < (std::uint64_t{1} << pairs); ++code) {
            Graph g = oracle::graph_from_code(n, code);
            for (std::uint32_t side = 0; side < (1u << n); ++side)
                check(g, side);
        }
    }
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30000; ++trial) {
        int n = 7 + static_cast<int>(rng() % 3);
        Graph g = oracle::random_graph(rng, n, 0.1 + 0.8 * static_cast<double>(rng() % 100) / 100.0);
        check(g, static_cast<std::uint32_t>(rng() % (1u << n)));
    }
    return {bad == 0, fmt("%llu cuts (exhaustive to 6 vertices, random 7-9), %d disagreements",
                          static_cast<unsigned long long>(cuts), bad)};
}

// 8. Counterexample to the PP08 reduction.
Outcome counterexample()
{
    CounterexampleOptions o;
    std::optional<Counterexample> ce;
    CounterexampleStats st;
    int reached = o.max_n;
    // Escalate the range when nothing turns up.
    for (; !ce && reached <= 8; o.min_n = reached + 1, o.max_n = ++reached)
        ce = search_counterexample(o, &st);
    if (!ce)
        return {false, fmt("no counterexample with n <= 8 (%llu candidates, %llu orderings, %llu undecided)",
                           static_cast<unsigned long long>(st.graphs), static_cast<unsigned long long>(st.orderings),
                           static_cast<unsigned long long>(st.h_budget_exceeded))};
    Graph g = ce->g.graph();
    bool ok = true;
    try {
        ce->g.validate();
    } catch (const CounterexampleError&) {
        ok = false;
    }
    // G: no Hamiltonian cycle, by permutation brute force and both engines.
    ok &= !oracle::ham_cycle_bruteforce(g);
    for (Engine e : {Engine::Dp, Engine::Backtrack}) {
        SearchOptions so;
        so.engine = e;
        ok &= find_ham_cycle(g, so).status == SearchStatus::NotFound;
    }
    // H: the returned cycle validates, and an independent run of the other engine agrees.
    PP08Output rebuilt = pp08_reduce(ce->g);
    ok &= rebuilt.h == ce->h.h && is_ham_cycle(rebuilt.h, ce->cycle);
    SearchOptions dp;
    dp.engine = rebuilt.h.vertex_count() <= kDpMaxVertices ? Engine::Dp : Engine::Backtrack;
    auto again = find_ham_cycle(rebuilt.h, dp);
    ok &= again.status == SearchStatus::Found && is_ham_cycle(rebuilt.h, again.path);
    return {ok, fmt("G with n=%d, %zu edges, connected, no Hamiltonian cycle; H with %d vertices has one "
                    "(%llu non-Hamiltonian candidates, %llu orderings tried)",
                    ce->g.n, ce->g.edges.size(), ce->h.h.vertex_count(), static_cast<unsigned long long>(st.graphs),
                    static_cast<unsigned long long>(st.orderings))};
}

// 9. Hamiltonian path oracle against permutation brute force.
Outcome ham_oracle()
{
    std::uint64_t graphs = 0;
    int bad = 0;
    auto check = [&](const Graph& g) {
        ++graphs;
        bool expect = oracle::ham_path_bruteforce(g);
        for (Engine e : {Engine::Dp, Engine::Backtrack}) {
            SearchOptions so;
            so.engine = e;
            auto r = find_ham_path(g, so);
            bool got = r.status == SearchStatus::Found;
            bad += got != expect || (got && !verify_path(g, r.path).ok);
        }
    };
    for (int n = 1; n <= 7; ++n) {
        const int pairs = n * (n - 1) / 2;
        for (std::uint64_t code = 0; code < (std::uint64_t{1} << pairs); ++code)
            check(oracle::graph_from_code(n, code));
    }
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 20000; ++trial) {
        int n = 8 + static_cast<int>(rng() % 2);
        check(oracle::random_graph(rng, n, 0.1 + 0.6 * static_cast<double>(rng() % 100) / 100.0));
    }
    return {bad == 0, fmt("%llu graphs (every graph to 7 vertices, random 8-9), both engines, %d disagreements",
                          static_cast<unsigned long long>(graphs), bad)};
}

} // namespace

int main(int argc, char** argv)
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"SAT iff Hamiltonian path", equivalence},
        {"width of emitted orders", widths},
        {"clause gadget contract", gadgets},
        {"witness round trip", witness_round_trip},
        {"respectability of solver paths", respectability},
        {"chain graphs", chain_graphs},
        {"induced matching oracle", induced_matching},
        {"PP08 counterexample", counterexample},
        {"Hamiltonian path oracle", ham_oracle},
    };
    std::set<int> only;
    for (int i = 1; i < argc; ++i)
        only.insert(std::atoi(argv[i]));
    bool all = true;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const int id = static_cast<int>(k) + 1;
        if (!only.empty() && !only.count(id))
            continue;
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        all &= o.pass;
        std::cout << "criterion " << id << " (" << criteria[k].first << "): " << (o.pass ? "PASS" : "FAIL") << " - "
                  << o.summary << fmt(" [%.1fs]", secs) << std::endl;
    }
    return all ? 0 : 1;
}
