#include "mimham/counterexample.hpp"
#include "mimham/ham.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <set>

using namespace mimham;

namespace {

BipartiteInstance c4() { return {2, {{1, 1}, {1, 2}, {2, 1}, {2, 2}}}; }

BipartiteInstance c6() { return {3, {{1, 1}, {1, 2}, {2, 2}, {2, 3}, {3, 1}, {3, 3}}}; }

std::set<int> neighbor_set(const Graph& g, int v) { return {g.neighbors(v).begin(), g.neighbors(v).end()}; }

} // namespace

TEST_CASE("reduction of small cycles")
{
    auto h4 = pp08_reduce(c4());
    CHECK(h4.h.vertex_count() == 8);
    CHECK(h4.twin.empty());
    CHECK(h4.subdivision.size() == 4);
    for (auto [e1, x] : h4.subdivision)
        for (auto [e2, y] : h4.subdivision)
            if (x != y)
                CHECK(h4.h.has_edge(x, y));

    auto h6 = pp08_reduce(c6());
    CHECK(h6.h.vertex_count() == 12);
    CHECK(h6.twin.empty());
    // 6 subdivided edges, K6 on the middle layer, and step 4 edges.
    int step4 = 0;
    for (int i = 1; i <= 3; ++i)
        for (auto [key, x] : h6.subdivision)
            if (key.first < i)
                ++step4;
    CHECK(h6.h.edge_count() == static_cast<std::size_t>(12 + 15 + step4));
    // Original edges are gone.
    CHECK_FALSE(h6.h.has_edge(h6.a[0], h6.b[0]));
}

TEST_CASE("reduction steps")
{
    // a1 ~ b1 b2; a2 ~ b1 b2 b3; a3 ~ b1 b3. Only b1 has degree 3.
    BipartiteInstance g{3, {{1, 1}, {1, 2}, {2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 3}}};
    auto out = pp08_reduce(g);
    REQUIRE(out.twin.count(1));
    CHECK(out.twin.size() == 1);
    for (auto [j, tw] : out.twin)
        CHECK(neighbor_set(out.h, tw) == neighbor_set(out.h, out.b[j - 1]));
    CHECK(out.labels[out.twin.at(1)] == "b1'");
    // Step 4: a_i sees a_{i'}b_j exactly when i' <= i.
    for (int i = 1; i <= 3; ++i)
        for (auto [key, x] : out.subdivision)
            CHECK(out.h.has_edge(out.a[i - 1], x) == (key.first <= i));
    // Permuting A changes only step-4 edges.
    std::vector<int> order{3, 1, 2};
    auto other = pp08_reduce(g.reorder_a(order));
    CHECK(other.h.vertex_count() == out.h.vertex_count());
}

TEST_CASE("input validation")
{
    CHECK_THROWS_AS(pp08_reduce(BipartiteInstance{2, {{1, 1}, {2, 2}}}), DegreeViolation);
    Graph k24(6);
    for (int a : {0, 1})
        for (int b : {2, 3, 4, 5})
            k24.add_edge(a, b);
    CHECK_THROWS_AS(bipartite_from_graph(k24, std::vector<int>{0, 1}, std::vector<int>{2, 3, 4, 5}), UnbalancedSides);
    Graph tri(4);
    tri.add_edge(0, 1);
    tri.add_edge(0, 2);
    tri.add_edge(1, 2);
    tri.add_edge(2, 3);
    CHECK_THROWS_AS(bipartite_from_graph(tri, std::vector<int>{0, 1}, std::vector<int>{2, 3}), NotBipartite);

    Graph cyc(4);
    for (int v = 0; v < 4; ++v)
        cyc.add_edge(v, (v + 1) % 4);
    auto b = bipartite_from_graph(cyc, std::vector<int>{0, 2}, std::vector<int>{1, 3});
    CHECK(b == c4());
    CHECK(read_bipartite(write_bipartite(c6())) == c6());
}

TEST_CASE("C4 is not a counterexample")
{
    CHECK(find_ham_cycle(c4().graph()).status == SearchStatus::Found);
}

TEST_CASE("canonical form ignores side orderings")
{
    auto g = c6();
    std::vector<int> order{2, 3, 1};
    CHECK(bipartite_canonical_form(g) == bipartite_canonical_form(g.reorder_a(order)));
    BipartiteInstance swapped_b{3, {}};
    for (auto [i, j] : g.edges)
        swapped_b.edges.emplace_back(i, 4 - j);
    std::sort(swapped_b.edges.begin(), swapped_b.edges.end());
    CHECK(bipartite_canonical_form(g) == bipartite_canonical_form(swapped_b));
}

TEST_CASE("search below the first hit finds nothing")
{
    CounterexampleOptions o;
    o.max_n = 3;
    CHECK_FALSE(search_counterexample(o));
    o.max_n = 2;
    o.require_connected = false;
    CHECK_FALSE(search_counterexample(o));
}

TEST_CASE("search finds a verified counterexample")
{
    CounterexampleStats st;
    auto ce = search_counterexample({}, &st);
    REQUIRE(ce);
    ce->g.validate();
    // Frozen from the search: n = 4, nine edges, b1 of degree 3 in G.
    CHECK(ce->g.n == 4);
    CHECK(write_bipartite(ce->g) == "bipartite 4\nab 1 1\nab 1 2\nab 2 1\nab 2 3\nab 2 4\nab 3 1\nab 3 2\nab 4 3\nab 4 4\n");
    Graph g = ce->g.graph();
    CHECK(is_connected(g));
    CHECK_FALSE(oracle::ham_cycle_bruteforce(g));
    CHECK(is_ham_cycle(ce->h.h, ce->cycle));
    CHECK(ce->h.h.vertex_count() == 18);
    // The reduction is deterministic: rebuilding H gives the same graph.
    CHECK(pp08_reduce(ce->g).h == ce->h.h);
    CHECK(st.graphs >= 1);
}

TEST_CASE("forward direction on Hamiltonian inputs")
{
    // Every Hamiltonian G with n <= 3 yields a Hamiltonian H under every A-ordering.
    for (const auto& g : {c4(), c6(), BipartiteInstance{3, {{1, 1}, {1, 2}, {1, 3}, {2, 1}, {2, 2}, {3, 2}, {3, 3}}}}) {
        REQUIRE(find_ham_cycle(g.graph()).status == SearchStatus::Found);
        std::vector<int> order(static_cast<std::size_t>(g.n));
        std::iota(order.begin(), order.end(), 1);
        do {
            auto h = pp08_reduce(g.reorder_a(order));
            CHECK(find_ham_cycle(h.h).status == SearchStatus::Found);
        } while (std::next_permutation(order.begin(), order.end()));
    }
}

TEST_CASE("dot export")
{
    auto dot = pp08_dot(pp08_reduce(c6()));
    CHECK(dot.find("rank=same") != std::string::npos);
    CHECK(dot.find("a1b2") != std::string::npos);
}
