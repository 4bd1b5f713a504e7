#include "corpus.hpp"
#include "mimham/ham.hpp"
#include "mimham/reduction.hpp"
#include "mimham/witness.hpp"

#include <doctest.h>

using namespace mimham;

namespace {

const Assignment kFig5({{1, false}, {2, false}, {3, true}, {4, true}});

Instance paper_instance() { return reduce(normalize(corpus::paper_formula())); }

} // namespace

TEST_CASE("running example path")
{
    Instance inst = paper_instance();
    HamPath p = path_from_assignment(inst, kFig5);
    auto chk = verify_path(inst.graph, p, true, true);
    CHECK_MESSAGE(chk.ok, chk.message);
    CHECK(p.front() == inst.s);
    CHECK(p[1] == inst.s_i[1]);
    CHECK(p.back() == inst.t);
    CHECK(assignment_from_path(inst, p) == kFig5);
    CHECK(check_respectable(inst, p, inst.n, inst.m).ok);
    CHECK(consecutive_dt_check(inst, p));
    CHECK(traversal(inst, p, 1, inst.m) == Traversal::FalseOrder);
    CHECK(traversal(inst, p, 3, inst.m) == Traversal::TrueOrder);

    // Clause 1 = (x1, -x2, x3): x1 is false, so the detour happens at -x2, i.e. the 1-side of x2.
    auto [sigma, tau] = inst.gadgets[1].pairs[1];
    auto at = std::find(p.begin(), p.end(), sigma) - p.begin();
    CHECK(p[at - 1] == inst.cycle[2][1][In1]);
    auto exit = std::find(p.begin(), p.end(), tau) - p.begin();
    CHECK(p[exit + 1] == inst.cycle[2][1][Out1]);
    CHECK(exit - at + 1 == static_cast<long>(inst.gadgets[1].vertices.size()));

    // Reversed input is accepted and oriented from s.
    HamPath rev(p.rbegin(), p.rend());
    CHECK(assignment_from_path(inst, rev) == kFig5);
}

TEST_CASE("every satisfying assignment round-trips")
{
    Instance inst = paper_instance();
    for (const auto& a : all_satisfying(inst.formula)) {
        HamPath p = path_from_assignment(inst, a);
        CHECK(verify_path(inst.graph, p, true, true).ok);
        CHECK(assignment_from_path(inst, p) == a);
        CHECK(check_respectable(inst, p, inst.n, inst.m).ok);
    }
    CHECK_THROWS_AS(path_from_assignment(inst, Assignment::from_bits(4, 0)), NotSatisfying);
}

TEST_CASE("two-literal clause on two variables")
{
    Instance inst = reduce(parse_dimacs("p cnf 2 1\n1 -2 0\n"));
    Assignment a({{1, false}, {2, false}});
    HamPath p = path_from_assignment(inst, a);
    CHECK(p.size() == static_cast<std::size_t>(inst.graph.vertex_count()));
    CHECK(verify_path(inst.graph, p, true, true).ok);
}

TEST_CASE("verify_path reports the first violation")
{
    Graph g(4);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 3, EdgeKind::Dummy);
    CHECK(verify_path(g, std::vector<int>{0, 1, 2, 3}).ok);
    auto rep = verify_path(g, std::vector<int>{0, 1, 0, 1});
    CHECK_FALSE(rep.ok);
    CHECK(rep.index == 2);
    auto dummy = verify_path(g, std::vector<int>{0, 1, 2, 3}, true, true);
    CHECK_FALSE(dummy.ok);
    CHECK(dummy.index == 3);
    CHECK(dummy.message.find("2-3") != std::string::npos);
    CHECK_FALSE(verify_path(g, std::vector<int>{0, 1, 2}).ok);
    CHECK(verify_path(g, std::vector<int>{0, 1, 2}, false).ok);
    CHECK_FALSE(verify_path(g, std::vector<int>{0, 2}, false).ok);
}

TEST_CASE("solver paths are respectable")
{
    Instance inst = paper_instance();
    SearchOptions o;
    o.enumerate_limit = 100;
    auto en = enumerate_ham_paths(inst.graph, o);
    CHECK(en.status != SearchStatus::BudgetExceeded);
    REQUIRE_FALSE(en.paths.empty());
    for (const auto& p : en.paths) {
        CHECK(verify_path(inst.graph, p, true, true).ok);
        CHECK(check_respectable(inst, p, inst.n, inst.m).ok);
        CHECK(consecutive_dt_check(inst, p));
        CHECK(evaluate(inst.formula, assignment_from_path(inst, p)));
    }
}

TEST_CASE("hand-built violations")
{
    Instance inst = paper_instance();
    HamPath p = path_from_assignment(inst, kFig5);

    // Swap a vertex of D_1^1 with one of D_1^2 and add whatever edges that takes.
    HamPath q = p;
    auto x = std::find(q.begin(), q.end(), inst.cycle[1][1][Out1]);
    auto y = std::find(q.begin(), q.end(), inst.cycle[1][2][Out1]);
    std::iter_swap(x, y);
    Instance bent = inst;
    for (std::size_t k = 0; k + 1 < q.size(); ++k)
        if (!bent.graph.has_edge(q[k], q[k + 1]))
            bent.graph.add_edge(q[k], q[k + 1]);
    REQUIRE(verify_path(bent.graph, q).ok);
    auto r = check_respectable(bent, q, 1, 2);
    CHECK_FALSE(r.ok);
    CHECK(r.condition == 2);
    CHECK_FALSE(consecutive_dt_check(bent, q));
    CHECK_THROWS_AS(assignment_from_path(bent, q), IrregularTraversal);
    try {
        assignment_from_path(bent, q);
    } catch (const IrregularTraversal& e) {
        CHECK(e.variable() == 1);
    }

    // Splitting a dot triple.
    HamPath split = p;
    auto d = std::find(split.begin(), split.end(), inst.cycle[2][2][DotIn]);
    std::iter_swap(d, d + 2);
    CHECK_FALSE(consecutive_dt_check(inst, split));

    CHECK_THROWS_AS(check_respectable(inst, std::vector<int>{inst.s, inst.t}, 1, 1), NotAPath);
}

TEST_CASE("cycle instances")
{
    Instance cyc = to_cycle_instance(paper_instance());
    auto r = find_ham_cycle(cyc.graph);
    REQUIRE(r.status == SearchStatus::Found);
    HamPath p = path_from_cycle(cyc, r.path);
    CHECK(p.front() == cyc.s);
    CHECK(p.back() == cyc.t);
    CHECK(p.size() + 1 == static_cast<std::size_t>(cyc.graph.vertex_count()));
    CHECK(evaluate(cyc.formula, assignment_from_path(cyc, p)));
}

TEST_CASE("witness files")
{
    HamPath p{3, 1, 4, 1, 5};
    CHECK(write_path(p) == "path 3 1 4 1 5\n");
    CHECK(read_path(write_path(p)) == p);
    CHECK(write_assignment(kFig5) == "assign 1=0 2=0 3=1 4=1\n");
    CHECK(read_assignment(write_assignment(kFig5)) == kFig5);
    CHECK_THROWS(read_assignment("assign 1=2\n"));
}
