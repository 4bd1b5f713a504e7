#include "mimham/counterexample.hpp"

#include "mimham/ham.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace mimham {

int BipartiteInstance::degree_a(int i) const
{
    return static_cast<int>(std::count_if(edges.begin(), edges.end(), [i](auto e) { return e.first == i; }));
}

int BipartiteInstance::degree_b(int j) const
{
    return static_cast<int>(std::count_if(edges.begin(), edges.end(), [j](auto e) { return e.second == j; }));
}

void BipartiteInstance::validate() const
{
    if (n < 1)
        throw DegreeViolation("bipartite instance needs n >= 1");
    for (std::size_t k = 0; k < edges.size(); ++k) {
        auto [i, j] = edges[k];
        if (i < 1 || i > n || j < 1 || j > n)
            throw DegreeViolation("edge a" + std::to_string(i) + "b" + std::to_string(j) + " out of range");
        if (k > 0 && edges[k - 1] >= edges[k])
            throw DegreeViolation("edges must be sorted and distinct");
    }
    for (int v = 1; v <= n; ++v) {
        for (auto [name, d] : {std::pair{"a", degree_a(v)}, std::pair{"b", degree_b(v)}})
            if (d < 2 || d > 3)
                throw DegreeViolation(std::string(name) + std::to_string(v) + " has degree " + std::to_string(d) +
                                      ", expected 2 or 3");
    }
}

Graph BipartiteInstance::graph() const
{
    Graph g(2 * n);
    for (auto [i, j] : edges)
        g.add_edge(i - 1, n + j - 1);
    return g;
}

BipartiteInstance BipartiteInstance::reorder_a(std::span<const int> order) const
{
    BipartiteInstance out{n, {}};
    for (auto [i, j] : edges)
        out.edges.emplace_back(order[i - 1], j);
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

BipartiteInstance bipartite_from_graph(const Graph& g, std::span<const int> a_side, std::span<const int> b_side)
{
    if (a_side.size() != b_side.size())
        throw UnbalancedSides("sides have " + std::to_string(a_side.size()) + " and " + std::to_string(b_side.size()) +
                              " vertices");
    const int n = static_cast<int>(a_side.size());
    std::vector<int> index(static_cast<std::size_t>(g.vertex_count()), 0); // +i for a_i, -j for b_j
    for (int k = 0; k < n; ++k) {
        for (auto [v, tag] : {std::pair{a_side[k], k + 1}, std::pair{b_side[k], -(k + 1)}}) {
            if (v < 0 || v >= g.vertex_count() || index[v] != 0)
                throw NotBipartite("side lists must name distinct vertices of the graph");
            index[v] = tag;
        }
    }
    if (2 * n != g.vertex_count())
        throw NotBipartite("sides do not cover every vertex");
    BipartiteInstance out{n, {}};
    for (const auto& e : g.edges()) {
        int x = index[e.u], y = index[e.v];
        if ((x > 0) == (y > 0))
            throw NotBipartite("edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " inside one side");
        out.edges.emplace_back(std::max(x, y), -std::min(x, y));
    }
    std::sort(out.edges.begin(), out.edges.end());
    out.validate();
    return out;
}

PP08Output pp08_reduce(const BipartiteInstance& g)
{
    g.validate();
    const int n = g.n;
    PP08Output out;
    out.h = Graph(2 * n);
    for (int i = 1; i <= n; ++i) {
        out.a.push_back(i - 1);
        out.labels.push_back("a" + std::to_string(i));
    }
    for (int j = 1; j <= n; ++j) {
        out.b.push_back(n + j - 1);
        out.labels.push_back("b" + std::to_string(j));
    }
    // Steps 1-2: each edge a_i b_j becomes a_i - (a_i b_j) - b_j.
    std::vector<int> middle;
    for (auto [i, j] : g.edges) {
        int x = out.h.add_vertex();
        out.subdivision[{i, j}] = x;
        out.labels.push_back("a" + std::to_string(i) + "b" + std::to_string(j));
        out.h.add_edge(out.a[i - 1], x);
        out.h.add_edge(out.b[j - 1], x);
        middle.push_back(x);
    }
    // Step 3.
    for (std::size_t p = 0; p < middle.size(); ++p)
        for (std::size_t q = p + 1; q < middle.size(); ++q)
            out.h.add_edge(middle[p], middle[q]);
    // Step 4: a_i sees every a_{i'} b_j with i' <= i.
    for (int i = 1; i <= n; ++i)
        for (auto [key, x] : out.subdivision)
            if (key.first <= i && !out.h.has_edge(out.a[i - 1], x))
                out.h.add_edge(out.a[i - 1], x);
    // Step 5.
    for (int j = 1; j <= n; ++j) {
        if (g.degree_b(j) != 3)
            continue;
        std::vector<int> nb(out.h.neighbors(out.b[j - 1]).begin(), out.h.neighbors(out.b[j - 1]).end());
        int twin = out.h.add_vertex();
        out.twin[j] = twin;
        out.labels.push_back("b" + std::to_string(j) + "'");
        for (int x : nb)
            out.h.add_edge(twin, x);
    }
    return out;
}

std::string pp08_dot(const PP08Output& out)
{
    std::ostringstream os;
    os << "graph H {\n  node [shape=circle];\n";
    for (int v = 0; v < out.h.vertex_count(); ++v)
        os << "  " << v << " [label=\"" << out.labels[v] << "\"];\n";
    auto rank = [&](auto&& ids) {
        os << "  { rank=same;";
        for (int v : ids)
            os << ' ' << v;
        os << " }\n";
    };
    rank(out.a);
    std::vector<int> mid, low(out.b);
    for (auto [key, x] : out.subdivision)
        mid.push_back(x);
    for (auto [j, x] : out.twin)
        low.push_back(x);
    rank(mid);
    rank(low);
    for (const auto& e : out.h.edges())
        os << "  " << e.u << " -- " << e.v << ";\n";
    os << "}\n";
    return os.str();
}

bool is_ham_cycle(const Graph& g, std::span<const int> cycle)
{
    const int n = g.vertex_count();
    if (n < 3 || static_cast<int>(cycle.size()) != n)
        return false;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int v : cycle) {
        if (v < 0 || v >= n || seen[v])
            return false;
        seen[v] = 1;
    }
    for (int k = 0; k < n; ++k)
        if (!g.has_edge(cycle[k], cycle[(k + 1) % n]))
            return false;
    return true;
}

namespace {

using Rows = std::vector<std::uint32_t>; // row i-1: bitmask of the b_j adjacent to a_i

Rows rows_of(const BipartiteInstance& g)
{
    Rows rows(static_cast<std::size_t>(g.n), 0);
    for (auto [i, j] : g.edges)
        rows[i - 1] |= 1u << (j - 1);
    return rows;
}

BipartiteInstance from_rows(int n, const Rows& rows)
{
    BipartiteInstance g{n, {}};
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (rows[i - 1] >> (j - 1) & 1u)
                g.edges.emplace_back(i, j);
    return g;
}

Rows canonical(int n, const Rows& rows)
{
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    Rows best;
    do {
        Rows mapped(rows.size(), 0);
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (int j = 0; j < n; ++j)
                if (rows[r] >> j & 1u)
                    mapped[r] |= 1u << perm[j];
        std::sort(mapped.begin(), mapped.end());
        if (best.empty() || mapped < best)
            best = std::move(mapped);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

} // namespace

std::vector<std::uint32_t> bipartite_canonical_form(const BipartiteInstance& g)
{
    return canonical(g.n, rows_of(g));
}

std::optional<Counterexample> search_counterexample(const CounterexampleOptions& opts, CounterexampleStats* stats)
{
    CounterexampleStats local;
    CounterexampleStats& st = stats ? *stats : local;
    for (int n = std::max(opts.min_n, 2); n <= opts.max_n; ++n) {
        std::vector<std::uint32_t> choices;
        for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
            int pc = __builtin_popcount(mask);
            if (pc == 2 || pc == 3)
                choices.push_back(mask);
        }
        std::set<Rows> seen;
        std::optional<Counterexample> found;
        Rows rows;
        std::vector<int> col(static_cast<std::size_t>(n), 0);

        // Rows are generated in nondecreasing order, which already removes A-permutations.
        auto examine = [&]() -> bool {
            for (int c : col)
                if (c < 2)
                    return false;
            BipartiteInstance g = from_rows(n, rows);
            Graph gg = g.graph();
            if (opts.require_connected && !is_connected(gg))
                return false;
            if (find_ham_cycle(gg).status != SearchStatus::NotFound)
                return false;
            if (!seen.insert(canonical(n, rows)).second)
                return false;
            ++st.graphs;
            std::set<std::vector<std::pair<int, int>>> tried;
            std::vector<int> order(static_cast<std::size_t>(n));
            std::iota(order.begin(), order.end(), 1);
            do {
                BipartiteInstance cand = g.reorder_a(order);
                if (!tried.insert(cand.edges).second)
                    continue;
                if (st.orderings >= opts.max_checks)
                    throw BudgetExhausted("counterexample search budget of " + std::to_string(opts.max_checks) +
                                          " orderings exhausted");
                ++st.orderings;
                PP08Output h = pp08_reduce(cand);
                SearchOptions so;
                so.node_budget = opts.h_node_budget;
                SearchResult r = find_ham_cycle(h.h, so);
                if (r.status == SearchStatus::BudgetExceeded)
                    ++st.h_budget_exceeded;
                if (r.status == SearchStatus::Found) {
                    found = Counterexample{std::move(cand), std::move(h), std::move(r.path)};
                    return true;
                }
            } while (std::next_permutation(order.begin(), order.end()));
            return false;
        };

        auto rec = [&](auto&& self, std::size_t from) -> bool {
            const int placed = static_cast<int>(rows.size());
            if (placed == n)
                return examine();
            int deficit = 0;
            for (int c : col)
                deficit += std::max(0, 2 - c);
            if (deficit > 3 * (n - placed))
                return false;
            for (std::size_t k = from; k < choices.size(); ++k) {
                std::uint32_t mask = choices[k];
                bool ok = true;
                for (int j = 0; j < n; ++j)
                    if ((mask >> j & 1u) && col[j] == 3)
                        ok = false;
                if (!ok)
                    continue;
                for (int j = 0; j < n; ++j)
                    col[j] += static_cast<int>(mask >> j & 1u);
                rows.push_back(mask);
                bool hit = self(self, k);
                rows.pop_back();
                for (int j = 0; j < n; ++j)
                    col[j] -= static_cast<int>(mask >> j & 1u);
                if (hit)
                    return true;
            }
            return false;
        };
        if (rec(rec, 0))
            return found;
    }
    return std::nullopt;
}

std::string write_bipartite(const BipartiteInstance& g)
{
    std::ostringstream os;
    os << "bipartite " << g.n << '\n';
    for (auto [i, j] : g.edges)
        os << "ab " << i << ' ' << j << '\n';
    return os.str();
}

BipartiteInstance read_bipartite(std::string_view text)
{
    BipartiteInstance g;
    bool header = false;
    for (auto line : split_lines(text)) {
        auto tok = split_tokens(line);
        if (tok.empty() || tok[0].starts_with('#'))
            continue;
        if (tok[0] == "bipartite" && tok.size() == 2) {
            g.n = parse_int(tok[1], "bipartite header");
            header = true;
        } else if (tok[0] == "ab" && tok.size() == 3) {
            g.edges.emplace_back(parse_int(tok[1], "ab line"), parse_int(tok[2], "ab line"));
        } else {
            throw GraphError("unrecognized bipartite line '" + std::string(line) + "'");
        }
    }
    if (!header)
        throw GraphError("missing 'bipartite <n>' header");
    std::sort(g.edges.begin(), g.edges.end());
    g.validate();
    return g;
}

} // namespace mimham
