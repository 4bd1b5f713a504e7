#include "mimham/graph.hpp"
#include "mimham/mim.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <set>

using namespace mimham;

namespace {

Graph cycle_graph(int n)
{
    Graph g(n);
    for (int v = 0; v < n; ++v)
        g.add_edge(v, (v + 1) % n);
    return g;
}

std::set<std::pair<int, int>> crossing_set(const BipartiteCut& cut)
{
    return {cut.crossing.begin(), cut.crossing.end()};
}

} // namespace

TEST_CASE("graph basics and errors")
{
    Graph g(3);
    g.add_edge(0, 1);
    g.add_edge(2, 1, EdgeKind::Dummy);
    CHECK(g.edge_count() == 2);
    CHECK(g.has_edge(1, 0));
    CHECK(g.is_dummy(1, 2));
    CHECK(g.edge_kind(0, 1) == EdgeKind::Core);
    CHECK_THROWS_AS(g.add_edge(0, 0), GraphError);
    CHECK_THROWS_AS(g.add_edge(0, 1), GraphError);
    CHECK_THROWS_AS(g.add_edge(0, 3), GraphError);
    g.remove_edge(1, 2);
    CHECK(g.dummy_count() == 0);
    CHECK_THROWS_AS(LinearOrder({0, 0, 1}), NotAPermutation);
}

TEST_CASE("graph text format is byte exact")
{
    Graph g(4);
    g.add_edge(2, 3, EdgeKind::Dummy);
    g.add_edge(0, 1);
    g.add_edge(0, 3);
    const std::string text = "graph 4\ne 0 1 core\ne 0 3 core\ne 2 3 dummy\n";
    CHECK(write_graph(g) == text);
    CHECK(read_graph(text) == g);
    LinearOrder o({2, 0, 3, 1});
    CHECK(write_order(o) == "order 2 0 3 1\n");
    CHECK(read_order(write_order(o)) == o);
    CHECK(to_dot(g).find("style=dashed") != std::string::npos);
}

TEST_CASE("prefix cuts")
{
    Graph p3(3);
    p3.add_edge(0, 1);
    p3.add_edge(1, 2);
    auto id = LinearOrder::identity(3);
    CHECK(crossing_set(prefix_cut(p3, id, 1)) == std::set<std::pair<int, int>>{{0, 1}});
    CHECK(prefix_cut(p3, id, 3).crossing.empty());
    CHECK_THROWS_AS(prefix_cut(p3, id, 0), PositionOutOfRange);
    CHECK_THROWS_AS(prefix_cut(p3, id, 4), PositionOutOfRange);

    // Cycle 0-1-2-3, cut after two vertices: crossing edges {1,2} and {0,3}.
    auto c4 = prefix_cut(cycle_graph(4), LinearOrder::identity(4), 2);
    CHECK(crossing_set(c4) == std::set<std::pair<int, int>>{{0, 3}, {1, 2}});
    CHECK(c4.left() == std::vector<int>{0, 1});
    CHECK(c4.right() == std::vector<int>{2, 3});
}

TEST_CASE("induced matching small cases")
{
    // k disjoint crossing edges.
    Graph m(10);
    std::vector<int> left;
    for (int i = 0; i < 5; ++i) {
        m.add_edge(i, 5 + i);
        left.push_back(i);
    }
    auto r = max_induced_matching(make_cut(m, left), 10);
    CHECK(r.size == 5);
    CHECK(r.witness.size() == 5);
    // Capped: reports cap + 1 with a witness of that size.
    auto capped = max_induced_matching(make_cut(m, left), 2);
    CHECK(capped.size == 3);
    CHECK(capped.witness.size() == 3);
    CHECK(is_induced_matching(make_cut(m, left), capped.witness.edges));

    Graph k33(6);
    for (int a = 0; a < 3; ++a)
        for (int b = 3; b < 6; ++b)
            k33.add_edge(a, b);
    CHECK(max_induced_matching(make_cut(k33, std::vector<int>{0, 1, 2}), 5).size == 1);

    Graph two(4);
    two.add_edge(0, 2);
    two.add_edge(1, 3);
    auto cut2 = make_cut(two, std::vector<int>{0, 1});
    CHECK_FALSE(is_chain_graph(cut2));
    CHECK(max_induced_matching(cut2, 5).size == 2);
    CHECK(is_chain_graph(make_cut(Graph(3), std::vector<int>{0, 1})));
}

TEST_CASE("induced matching agrees with subset enumeration")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 1500; ++trial) {
        int n = 2 + static_cast<int>(rng() % 9);
        Graph g = oracle::random_graph(rng, n, 0.2 + 0.6 * static_cast<double>(rng() % 100) / 100.0);
        std::vector<int> left;
        for (int v = 0; v < n; ++v)
            if (rng() & 1)
                left.push_back(v);
        auto cut = make_cut(g, left);
        int expect = oracle::induced_matching_bruteforce(g, cut);
        auto got = max_induced_matching(cut, 100);
        CHECK(got.size == expect);
        CHECK(is_induced_matching(cut, got.witness.edges));
        // With a cap below the answer we get exactly cap + 1.
        if (expect >= 2)
            CHECK(max_induced_matching(cut, expect - 2).size == expect - 1);
    }
}

TEST_CASE("adding a crossing edge moves the induced matching by at most one")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        Graph g = oracle::random_graph(rng, 9, 0.3);
        std::vector<int> left{0, 1, 2, 3};
        int before = max_induced_matching(make_cut(g, left), 50).size;
        int a = static_cast<int>(rng() % 4), b = 4 + static_cast<int>(rng() % 5);
        if (g.has_edge(a, b))
            continue;
        g.add_edge(a, b);
        int after = max_induced_matching(make_cut(g, left), 50).size;
        // It can drop: the new edge may join two matched edges.
        CHECK(std::abs(after - before) <= 1);
    }
}

TEST_CASE("chain graphs have induced matching at most one")
{
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<int> left;
        Graph g = oracle::random_chain_graph(rng, 1 + static_cast<int>(rng() % 30), 1 + static_cast<int>(rng() % 30), left);
        auto cut = make_cut(g, left);
        CHECK(is_chain_graph(cut));
        CHECK(max_induced_matching(cut, 5).size <= 1);
    }
}

TEST_CASE("mim width")
{
    Graph e(2);
    e.add_edge(0, 1);
    CHECK(mim_width(e, LinearOrder({1, 0}), 5).width == 1);

    // kK2 with all left endpoints first: the middle cut is an induced matching of size k.
    const int k = 7;
    Graph mk(2 * k);
    std::vector<int> seq;
    for (int i = 0; i < k; ++i) {
        mk.add_edge(i, k + i);
        seq.push_back(i);
    }
    for (int i = 0; i < k; ++i)
        seq.push_back(k + i);
    auto rep = mim_width(mk, LinearOrder(seq), 25);
    CHECK(rep.width == k);
    CHECK(rep.argmax_position == k);
    CHECK_FALSE(rep.exceeded);
    auto over = mim_width(mk, LinearOrder(seq), 4);
    CHECK(over.exceeded);
    CHECK(over.width == 5);
    CHECK(over.witness.size() == 5);
    CHECK_THROWS_AS(mim_width(mk, LinearOrder::identity(3), 4), NotAPermutation);
}

TEST_CASE("mim width is invariant under relabeling")
{
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 4 + static_cast<int>(rng() % 8);
        Graph g = oracle::random_graph(rng, n, 0.35);
        std::vector<int> seq(static_cast<std::size_t>(n)), relabel(static_cast<std::size_t>(n));
        std::iota(seq.begin(), seq.end(), 0);
        std::iota(relabel.begin(), relabel.end(), 0);
        std::shuffle(seq.begin(), seq.end(), rng);
        std::shuffle(relabel.begin(), relabel.end(), rng);
        Graph h(n);
        for (const auto& ed : g.edges())
            h.add_edge(relabel[ed.u], relabel[ed.v]);
        std::vector<int> seq2;
        for (int v : seq)
            seq2.push_back(relabel[v]);
        CHECK(mim_width(g, LinearOrder(seq), 20).width == mim_width(h, LinearOrder(seq2), 20).width);
    }
}

TEST_CASE("induced subgraph and connectivity")
{
    Graph c4 = cycle_graph(4);
    auto all = induced_subgraph(c4, std::vector<int>{0, 1, 2, 3});
    CHECK(all.graph.edge_count() == 4);
    auto none = induced_subgraph(c4, std::vector<int>{});
    CHECK(none.graph.vertex_count() == 0);
    auto p3 = induced_subgraph(c4, std::vector<int>{1, 2, 3});
    CHECK(p3.graph.edge_count() == 2);
    CHECK(p3.to_old == std::vector<int>{1, 2, 3});
    CHECK(p3.to_new[0] == -1);
    CHECK(is_connected(p3.graph));
    CHECK_FALSE(is_connected(Graph(2)));
}
