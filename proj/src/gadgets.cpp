#include "mimham/gadgets.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace mimham {

VariableGadgetLayout build_variable_gadget(int variable, int columns)
{
    if (columns < 1)
        throw GadgetError("variable gadget needs at least one column");
    VariableGadgetLayout out;
    out.variable = variable;
    out.columns = columns;
    out.graph = Graph(2 + 6 * columns);
    out.cycle.resize(static_cast<std::size_t>(columns));
    for (int j = 0; j < columns; ++j)
        for (int slot = 0; slot < 6; ++slot)
            out.cycle[j][slot] = 2 + 6 * j + slot;
    for (int j = 0; j < columns; ++j) {
        const auto& c = out.cycle[j];
        for (int slot = 0; slot < 6; ++slot)
            out.graph.add_edge(c[slot], c[(slot + 1) % 6]);
        if (j + 1 < columns) {
            const auto& d = out.cycle[j + 1];
            out.graph.add_edge(c[Out1], d[In1]);
            out.graph.add_edge(c[Out0], d[In0]);
        }
    }
    out.graph.add_edge(out.s, out.cycle.front()[In0]);
    out.graph.add_edge(out.s, out.cycle.front()[In1]);
    out.graph.add_edge(out.t, out.cycle.back()[Out0]);
    out.graph.add_edge(out.t, out.cycle.back()[Out1]);
    return out;
}

bool ClauseGadget::is_distinguished(int v) const
{
    return std::any_of(pairs.begin(), pairs.end(), [v](auto p) { return p.first == v || p.second == v; });
}

namespace {

// Shipped gadgets, exactly what search_gadget(k, 10 or 16) returns with the default seed.
// sigma_i = 2(i-1), tau_i = 2(i-1)+1; vertices 2k..3k-1 are the chain vertices.
constexpr std::pair<int, int> kGamma2Edges[] = {
    {0, 4}, {0, 7}, {1, 5}, {1, 6}, {2, 5}, {2, 7}, {3, 4}, {3, 6}, {6, 7},
};
constexpr std::pair<int, int> kGamma3Edges[] = {
    {0, 1}, {0, 6}, {0, 12}, {1, 3}, {1, 5}, {1, 8}, {1, 9}, {1, 13}, {2, 3}, {2, 7},
    {2, 13}, {3, 5}, {3, 6}, {3, 10}, {3, 14}, {4, 5}, {4, 8}, {4, 14}, {5, 7}, {5, 11},
    {5, 12}, {9, 14}, {9, 15}, {10, 12}, {10, 15}, {11, 13}, {11, 15},
};

ClauseGadget from_edges(int k, int n, std::span<const std::pair<int, int>> edges)
{
    ClauseGadget g;
    g.k = k;
    g.graph = Graph(n);
    for (auto [u, v] : edges)
        g.graph.add_edge(u, v);
    for (int i = 0; i < k; ++i)
        g.pairs.emplace_back(2 * i, 2 * i + 1);
    return g;
}

using Mask = std::uint32_t;

// Enumerates spanning linear forests of a gadget whose path endpoints are distinguished.
// Paths are listed by increasing start vertex and each path ends at a larger vertex than it
// starts, so every forest is produced exactly once.
class ForestEnumerator {
public:
    explicit ForestEnumerator(const ClauseGadget& g) : g_(g), n_(g.graph.vertex_count())
    {
        adj_.assign(static_cast<std::size_t>(n_), 0);
        for (int v = 0; v < n_; ++v)
            for (int w : g.graph.neighbors(v))
                adj_[v] |= Mask{1} << w;
        partner_.assign(static_cast<std::size_t>(n_), -1);
        for (auto [s, t] : g.pairs) {
            partner_[s] = t;
            partner_[t] = s;
            dist_ |= (Mask{1} << s) | (Mask{1} << t);
        }
        full_ = n_ == 32 ? ~Mask{0} : (Mask{1} << n_) - 1;
        report_.pair_paths.resize(g.pairs.size());
    }

    ContractReport run()
    {
        start_paths(0, -1);
        if (report_.reason.empty()) {
            for (std::size_t i = 0; i < g_.pairs.size(); ++i)
                if (report_.pair_paths[i].empty()) {
                    report_.reason = "no Hamiltonian path between sigma_" + std::to_string(i + 1) + " and tau_" +
                                     std::to_string(i + 1);
                    break;
                }
        }
        report_.ok = report_.reason.empty();
        return report_;
    }

private:
    bool done() const { return !report_.reason.empty(); }

    void start_paths(Mask covered, int previous_start)
    {
        if (done())
            return;
        if (covered == full_) {
            record();
            return;
        }
        if (!viable(covered, -1))
            return;
        for (Mask c = dist_ & ~covered; c; c &= c - 1) {
            int s = std::countr_zero(c);
            if (s <= previous_start)
                continue;
            paths_.push_back({s});
            extend(s, covered | (Mask{1} << s), s);
            paths_.pop_back();
            if (done())
                return;
        }
    }

    void extend(int v, Mask covered, int start)
    {
        for (Mask nb = adj_[v] & ~covered; nb; nb &= nb - 1) {
            int w = std::countr_zero(nb);
            Mask next = covered | (Mask{1} << w);
            paths_.back().push_back(w);
            if (viable(next, w))
                extend(w, next, start);
            if (((dist_ >> w) & 1) && w > start)
                start_paths(next, start);
            paths_.back().pop_back();
            if (done())
                return;
        }
    }

    // Every uncovered vertex needs an uncovered neighbour or the current path head.
    bool viable(Mask covered, int head) const
    {
        Mask head_nb = head >= 0 ? adj_[head] : 0;
        for (Mask u = full_ & ~covered; u; u &= u - 1) {
            int x = std::countr_zero(u);
            if ((adj_[x] & ~covered) == 0 && !((head_nb >> x) & 1))
                return false;
        }
        return true;
    }

    void record()
    {
        ++report_.forests;
        if (paths_.size() != 1) {
            report_.reason = "spanning path system with " + std::to_string(paths_.size()) + " paths";
            report_.counter_witness = paths_;
            return;
        }
        const auto& p = paths_.front();
        int a = p.front();
        int b = p.back();
        if (partner_[a] != b) {
            report_.reason = "spanning path joins " + std::to_string(a) + " and " + std::to_string(b) +
                             ", which are not a pair";
            report_.counter_witness = paths_;
            return;
        }
        for (std::size_t i = 0; i < g_.pairs.size(); ++i) {
            auto [s, t] = g_.pairs[i];
            if (report_.pair_paths[i].empty() && ((s == a && t == b) || (s == b && t == a))) {
                report_.pair_paths[i] = p;
                if (p.front() != s)
                    std::reverse(report_.pair_paths[i].begin(), report_.pair_paths[i].end());
            }
        }
    }

    const ClauseGadget& g_;
    int n_;
    std::vector<Mask> adj_;
    std::vector<int> partner_;
    Mask dist_ = 0;
    Mask full_ = 0;
    std::vector<std::vector<int>> paths_;
    ContractReport report_;
};

void check_size(const ClauseGadget& g)
{
    if (g.graph.vertex_count() > kGadgetCheckMaxVertices)
        throw GadgetTooLarge("gadget has " + std::to_string(g.graph.vertex_count()) + " vertices, limit " +
                             std::to_string(kGadgetCheckMaxVertices));
    std::vector<char> seen(static_cast<std::size_t>(g.graph.vertex_count()), 0);
    for (auto [s, t] : g.pairs)
        for (int v : {s, t}) {
            if (v < 0 || v >= g.graph.vertex_count() || seen[v])
                throw GadgetError("distinguished vertices must be distinct and in range");
            seen[v] = 1;
        }
}

} // namespace

ClauseGadget build_clause_gadget(int k)
{
    if (k == 2)
        return from_edges(2, 8, kGamma2Edges);
    if (k == 3)
        return from_edges(3, 16, kGamma3Edges);
    throw GadgetError("no clause gadget for k = " + std::to_string(k));
}

ContractReport verify_gadget_contract(const ClauseGadget& g)
{
    check_size(g);
    return ForestEnumerator(g).run();
}

ContractReport verify_gadget_contract_slow(const ClauseGadget& g)
{
    // Edge-subset search: pick edges one at a time, keeping max degree 2 and no cycle;
    // at the end every vertex must have degree >= 1, and degree-1 vertices must be distinguished.
    check_size(g);
    const int n = g.graph.vertex_count();
    const auto edges = g.graph.edges();
    std::vector<int> partner(static_cast<std::size_t>(n), -1);
    for (auto [s, t] : g.pairs) {
        partner[s] = t;
        partner[t] = s;
    }
    ContractReport report;
    report.pair_paths.resize(g.pairs.size());
    std::vector<int> degree(static_cast<std::size_t>(n), 0);
    std::vector<int> chosen;

    auto find = [](std::vector<int>& parent, int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };

    auto to_paths = [&](std::vector<int> picked) {
        std::vector<std::vector<int>> nbr(static_cast<std::size_t>(n));
        for (int e : picked) {
            nbr[edges[e].u].push_back(edges[e].v);
            nbr[edges[e].v].push_back(edges[e].u);
        }
        std::vector<char> used(static_cast<std::size_t>(n), 0);
        std::vector<std::vector<int>> paths;
        for (int v = 0; v < n; ++v) {
            if (used[v] || nbr[v].size() != 1)
                continue;
            std::vector<int> p{v};
            used[v] = 1;
            int prev = -1;
            int cur = v;
            for (;;) {
                int next = -1;
                for (int w : nbr[cur])
                    if (w != prev)
                        next = w;
                if (next == -1 || used[next])
                    break;
                prev = cur;
                cur = next;
                used[cur] = 1;
                p.push_back(cur);
            }
            paths.push_back(std::move(p));
        }
        return paths;
    };

    auto evaluate_leaf = [&]() {
        for (int v = 0; v < n; ++v) {
            if (degree[v] == 0)
                return;
            if (degree[v] == 1 && partner[v] == -1)
                return;
        }
        ++report.forests;
        auto paths = to_paths(chosen);
        if (paths.size() != 1 || partner[paths[0].front()] != paths[0].back()) {
            report.reason = paths.size() != 1 ? "spanning path system with " + std::to_string(paths.size()) + " paths"
                                              : "spanning path joins a non-pair";
            report.counter_witness = paths;
            return;
        }
        for (std::size_t i = 0; i < g.pairs.size(); ++i) {
            auto [s, t] = g.pairs[i];
            auto& p = paths[0];
            if (report.pair_paths[i].empty() && (p.front() == s || p.front() == t)) {
                report.pair_paths[i] = p;
                if (p.front() != s)
                    std::reverse(report.pair_paths[i].begin(), report.pair_paths[i].end());
            }
        }
    };

    std::vector<int> parent(static_cast<std::size_t>(n));
    auto recurse = [&](auto&& self, std::size_t e) -> void {
        if (!report.reason.empty())
            return;
        if (e == edges.size()) {
            evaluate_leaf();
            return;
        }
        auto [u, v, kind] = edges[e];
        (void)kind;
        if (degree[u] < 2 && degree[v] < 2) {
            std::iota(parent.begin(), parent.end(), 0);
            for (int c : chosen) {
                int a = find(parent, edges[c].u);
                int b = find(parent, edges[c].v);
                parent[a] = b;
            }
            if (find(parent, u) != find(parent, v)) {
                ++degree[u];
                ++degree[v];
                chosen.push_back(static_cast<int>(e));
                self(self, e + 1);
                chosen.pop_back();
                --degree[u];
                --degree[v];
            }
        }
        self(self, e + 1);
    };
    recurse(recurse, 0);

    if (report.reason.empty())
        for (std::size_t i = 0; i < g.pairs.size(); ++i)
            if (report.pair_paths[i].empty()) {
                report.reason = "no Hamiltonian path for pair " + std::to_string(i + 1);
                break;
            }
    report.ok = report.reason.empty();
    return report;
}

namespace {

// Rotation-symmetric template: classes sigma, tau (one vertex per pair index), forced
// degree-2 chain vertices c_j on sigma_j - c_j - tau_{j+1}, `orbits` classes of k rotating
// vertices, and `fixed` single vertices. Edges are chosen as whole rotation orbits.
struct Template {
    int k;
    int orbits;
    int fixed;

    int vertex_count() const { return 3 * k + k * orbits + fixed; }
    int class_count() const { return 2 + orbits + fixed; }
    bool rotating(int cls) const { return cls < 2 + orbits; }

    int vertex(int cls, int j) const
    {
        j %= k;
        if (cls == 0)
            return 2 * j;
        if (cls == 1)
            return 2 * j + 1;
        if (rotating(cls))
            return 3 * k + k * (cls - 2) + j;
        return 3 * k + k * orbits + (cls - 2 - orbits);
    }

    std::vector<std::vector<std::pair<int, int>>> edge_orbits() const
    {
        std::vector<std::vector<std::pair<int, int>>> out;
        for (int a = 0; a < class_count(); ++a)
            for (int b = a; b < class_count(); ++b) {
                if (!rotating(a) && !rotating(b) && a == b)
                    continue;
                int shifts = rotating(a) && rotating(b) ? k : 1;
                for (int d = 0; d < shifts; ++d) {
                    std::vector<std::pair<int, int>> es;
                    for (int j = 0; j < k; ++j) {
                        int u = vertex(a, j);
                        int v = vertex(b, j + d);
                        if (u != v)
                            es.emplace_back(std::min(u, v), std::max(u, v));
                    }
                    std::sort(es.begin(), es.end());
                    es.erase(std::unique(es.begin(), es.end()), es.end());
                    if (!es.empty() && std::find(out.begin(), out.end(), es) == out.end())
                        out.push_back(std::move(es));
                }
            }
        return out;
    }
};

std::optional<ClauseGadget> try_candidate(const Template& t, const std::vector<std::vector<std::pair<int, int>>>& orbits,
                                          std::uint64_t chosen_bits, const std::vector<char>& chosen_vec)
{
    ClauseGadget g;
    g.k = t.k;
    g.graph = Graph(t.vertex_count());
    for (int i = 0; i < t.k; ++i)
        g.pairs.emplace_back(2 * i, 2 * i + 1);
    for (int j = 0; j < t.k; ++j) {
        int c = 2 * t.k + j;
        g.graph.add_edge(2 * j, c);
        g.graph.add_edge(c, 2 * ((j + 1) % t.k) + 1);
    }
    for (std::size_t b = 0; b < orbits.size(); ++b) {
        bool on = chosen_vec.empty() ? ((chosen_bits >> b) & 1) != 0 : chosen_vec[b] != 0;
        if (!on)
            continue;
        for (auto [u, v] : orbits[b])
            if (!g.graph.has_edge(u, v))
                g.graph.add_edge(u, v);
    }
    // Non-distinguished vertices need degree >= 2 to be interior.
    for (int v = 2 * t.k; v < g.graph.vertex_count(); ++v)
        if (g.graph.degree(v) < 2)
            return std::nullopt;
    if (!is_connected(g.graph))
        return std::nullopt;
    if (verify_gadget_contract(g).ok)
        return g;
    return std::nullopt;
}

} // namespace

std::optional<ClauseGadget> search_gadget(int k, int max_vertices, const GadgetSearchOptions& opts)
{
    if (k != 2 && k != 3)
        throw GadgetError("search_gadget supports k in {2, 3}");
    max_vertices = std::min(max_vertices, kGadgetCheckMaxVertices);
    if (2 * k > max_vertices)
        return std::nullopt;
    constexpr std::size_t kExhaustiveOrbits = 20;
    std::mt19937_64 rng(opts.seed);
    std::uint64_t examined = 0;
    auto charge = [&] {
        if (++examined > opts.budget)
            throw BudgetExhausted("gadget search budget of " + std::to_string(opts.budget) + " candidates exhausted");
    };

    for (int n = 3 * k; n <= max_vertices; ++n) {
        for (int orbits = 0; 3 * k + k * orbits <= n; ++orbits) {
            Template t{k, orbits, n - 3 * k - k * orbits};
            auto edge_orbits = t.edge_orbits();
            if (edge_orbits.size() <= kExhaustiveOrbits) {
                std::uint64_t limit = std::uint64_t{1} << edge_orbits.size();
                for (std::uint64_t bits = 0; bits < limit; ++bits) {
                    charge();
                    if (auto g = try_candidate(t, edge_orbits, bits, {}))
                        return g;
                }
            }
        }
        // Templates too large for exhaustive enumeration are sampled, each orbit kept with
        // probability 0.3.
        for (int orbits = 0; 3 * k + k * orbits <= n; ++orbits) {
            Template t{k, orbits, n - 3 * k - k * orbits};
            auto edge_orbits = t.edge_orbits();
            // Several fixed vertices would break the rotation picture; only sample with at most one.
            if (edge_orbits.size() <= kExhaustiveOrbits || t.fixed > 1)
                continue;
            std::bernoulli_distribution keep(0.3);
            std::vector<char> chosen(edge_orbits.size());
            for (std::uint64_t round = 0; round < opts.samples_per_template; ++round) {
                charge();
                for (auto& c : chosen)
                    c = keep(rng) ? 1 : 0;
                if (auto g = try_candidate(t, edge_orbits, 0, chosen))
                    return g;
            }
        }
    }
    return std::nullopt;
}

std::string write_gadget(const ClauseGadget& g)
{
    std::ostringstream out;
    out << "gadget " << g.k << '\n';
    out << write_graph(g.graph);
    for (std::size_t i = 0; i < g.pairs.size(); ++i)
        out << "pair " << i + 1 << ' ' << g.pairs[i].first << ' ' << g.pairs[i].second << '\n';
    return out.str();
}

ClauseGadget read_gadget(std::string_view text)
{
    ClauseGadget g;
    g.graph = read_graph(text);
    std::map<int, std::pair<int, int>> pairs;
    int line_no = 0;
    for (auto line : split_lines(text)) {
        ++line_no;
        auto tok = split_tokens(line);
        if (tok.empty())
            continue;
        auto where = "gadget line " + std::to_string(line_no);
        if (tok[0] == "gadget" && tok.size() == 2) {
            g.k = parse_int(tok[1], where);
        } else if (tok[0] == "pair") {
            if (tok.size() != 4)
                throw GadgetError(where + ": expected 'pair <i> <sigma> <tau>'");
            int i = parse_int(tok[1], where);
            if (pairs.count(i))
                throw GadgetError(where + ": duplicate pair " + std::to_string(i));
            pairs[i] = {parse_int(tok[2], where), parse_int(tok[3], where)};
        }
    }
    for (int i = 1; i <= static_cast<int>(pairs.size()); ++i) {
        if (!pairs.count(i))
            throw GadgetError("pair indices must be 1.." + std::to_string(pairs.size()));
        g.pairs.push_back(pairs[i]);
    }
    if (g.k == 0)
        g.k = static_cast<int>(g.pairs.size());
    if (g.k != static_cast<int>(g.pairs.size()))
        throw GadgetError("gadget declares k=" + std::to_string(g.k) + " but lists " + std::to_string(g.pairs.size()) +
                          " pairs");
    for (auto [s, t] : g.pairs)
        if (s < 0 || t < 0 || s >= g.graph.vertex_count() || t >= g.graph.vertex_count())
            throw GadgetError("pair vertex out of range");
    return g;
}

std::string write_catalog(const std::vector<ClauseGadget>& gadgets)
{
    std::string out;
    for (const auto& g : gadgets)
        out += write_gadget(g);
    return out;
}

std::vector<ClauseGadget> read_catalog(std::string_view text)
{
    std::vector<ClauseGadget> out;
    std::size_t pos = 0;
    for (;;) {
        auto begin = text.find("gadget ", pos);
        if (begin == std::string_view::npos)
            break;
        auto end = text.find("\ngadget ", begin);
        auto chunk = text.substr(begin, end == std::string_view::npos ? std::string_view::npos : end + 1 - begin);
        out.push_back(read_gadget(chunk));
        if (end == std::string_view::npos)
            break;
        pos = end + 1;
    }
    return out;
}

} // namespace mimham
