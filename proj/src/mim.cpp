#include "mimham/mim.hpp"

#include <algorithm>
#include <boost/dynamic_bitset.hpp>

namespace mimham {

namespace {

using Bits = boost::dynamic_bitset<std::uint64_t>;

// Maximum clique on the compatibility graph of one conflict component
// (compatible = the two crossing edges can share an induced matching).
// Greedy colouring gives the bound; colour classes are cliques of the conflict graph.
class CliqueSearch {
public:
    CliqueSearch(std::vector<Bits> compat, int target) : compat_(std::move(compat)), target_(target) {}

    std::vector<int> run()
    {
        Bits all(compat_.size());
        all.set();
        std::vector<int> current;
        expand(current, all);
        return best_;
    }

private:
    void colour_sort(const Bits& candidates, std::vector<int>& order, std::vector<int>& bounds) const
    {
        Bits uncoloured = candidates;
        int colour = 0;
        while (uncoloured.any()) {
            ++colour;
            Bits available = uncoloured;
            for (auto v = available.find_first(); v != Bits::npos; v = available.find_next(v)) {
                // Vertices sharing a colour must be pairwise incompatible.
                available &= ~compat_[v];
                available.reset(v);
                uncoloured.reset(v);
                order.push_back(static_cast<int>(v));
                bounds.push_back(colour);
            }
        }
    }

    void expand(std::vector<int>& current, Bits candidates)
    {
        if (static_cast<int>(best_.size()) >= target_)
            return;
        std::vector<int> order;
        std::vector<int> bounds;
        colour_sort(candidates, order, bounds);
        for (int idx = static_cast<int>(order.size()) - 1; idx >= 0; --idx) {
            if (current.size() + static_cast<std::size_t>(bounds[idx]) <= best_.size())
                return;
            int v = order[idx];
            current.push_back(v);
            Bits next = candidates & compat_[v];
            if (next.none()) {
                if (current.size() > best_.size())
                    best_ = current;
            } else {
                expand(current, next);
            }
            current.pop_back();
            if (static_cast<int>(best_.size()) >= target_)
                return;
            candidates.reset(v);
        }
    }

    std::vector<Bits> compat_;
    int target_;
    std::vector<int> best_;
};

} // namespace

std::vector<int> BipartiteCut::left() const
{
    std::vector<int> out;
    for (int v = 0; v < static_cast<int>(in_left.size()); ++v)
        if (in_left[v])
            out.push_back(v);
    return out;
}

std::vector<int> BipartiteCut::right() const
{
    std::vector<int> out;
    for (int v = 0; v < static_cast<int>(in_left.size()); ++v)
        if (!in_left[v])
            out.push_back(v);
    return out;
}

BipartiteCut make_cut(const Graph& g, std::span<const int> left_vertices)
{
    BipartiteCut cut;
    cut.in_left.assign(static_cast<std::size_t>(g.vertex_count()), 0);
    for (int v : left_vertices) {
        if (v < 0 || v >= g.vertex_count())
            throw GraphError("cut vertex " + std::to_string(v) + " out of range");
        cut.in_left[v] = 1;
    }
    for (int u = 0; u < g.vertex_count(); ++u) {
        if (!cut.in_left[u])
            continue;
        for (int v : g.neighbors(u))
            if (!cut.in_left[v])
                cut.crossing.emplace_back(u, v);
    }
    return cut;
}

BipartiteCut prefix_cut(const Graph& g, const LinearOrder& order, int i)
{
    if (order.size() != g.vertex_count())
        throw NotAPermutation("order has " + std::to_string(order.size()) + " entries for " +
                              std::to_string(g.vertex_count()) + " vertices");
    if (i < 1 || i > g.vertex_count())
        throw PositionOutOfRange("prefix position " + std::to_string(i) + " outside [1, " +
                                 std::to_string(g.vertex_count()) + "]");
    auto seq = order.sequence();
    return make_cut(g, seq.subspan(0, static_cast<std::size_t>(i)));
}

bool is_induced_matching(const BipartiteCut& cut, std::span<const std::pair<int, int>> edges)
{
    std::vector<int> matched_partner(cut.in_left.size(), -1);
    for (auto [a, b] : edges) {
        if (a < 0 || b < 0 || a >= static_cast<int>(cut.in_left.size()) || b >= static_cast<int>(cut.in_left.size()))
            return false;
        if (!cut.in_left[a] || cut.in_left[b])
            return false;
        if (matched_partner[a] != -1 || matched_partner[b] != -1)
            return false;
        matched_partner[a] = b;
        matched_partner[b] = a;
    }
    for (auto [a, b] : edges)
        if (std::find(cut.crossing.begin(), cut.crossing.end(), std::pair{a, b}) == cut.crossing.end())
            return false;
    for (auto [a, b] : cut.crossing)
        if (matched_partner[a] != -1 && matched_partner[b] != -1 && matched_partner[a] != b)
            return false;
    return true;
}

InducedMatching max_induced_matching(const BipartiteCut& cut, int cap)
{
    InducedMatching result;
    const auto& edges = cut.crossing;
    const int m = static_cast<int>(edges.size());
    if (m == 0 || cap < 0)
        return result;

    // Conflict graph: share an endpoint, or an endpoint of one is adjacent to an endpoint of the other.
    const auto n = cut.in_left.size();
    std::vector<std::vector<int>> incident(n);
    for (int e = 0; e < m; ++e) {
        incident[edges[e].first].push_back(e);
        incident[edges[e].second].push_back(e);
    }
    std::vector<Bits> conflict(static_cast<std::size_t>(m), Bits(static_cast<std::size_t>(m)));
    for (int e = 0; e < m; ++e) {
        auto [a, b] = edges[e];
        // Every crossing edge touching a or b, or touching a neighbour of a or b, conflicts.
        for (int x : {a, b})
            for (int f : incident[x]) {
                conflict[e].set(f);
                auto [c, d] = edges[f];
                int other = (c == x) ? d : c;
                for (int g2 : incident[other])
                    conflict[e].set(g2);
            }
        conflict[e].reset(e);
    }

    // Components of the conflict graph are solved independently and summed.
    std::vector<int> component(static_cast<std::size_t>(m), -1);
    std::vector<std::vector<int>> members;
    for (int e = 0; e < m; ++e) {
        if (component[e] != -1)
            continue;
        int id = static_cast<int>(members.size());
        members.emplace_back();
        std::vector<int> stack{e};
        component[e] = id;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            members[id].push_back(x);
            for (auto f = conflict[x].find_first(); f != Bits::npos; f = conflict[x].find_next(f))
                if (component[f] == -1) {
                    component[f] = id;
                    stack.push_back(static_cast<int>(f));
                }
        }
    }

    const int target = cap + 1;
    std::vector<int> chosen;
    for (auto& comp : members) {
        std::sort(comp.begin(), comp.end());
        int remaining = target - static_cast<int>(chosen.size());
        if (remaining <= 0)
            break;
        if (comp.size() == 1) {
            chosen.push_back(comp[0]);
            continue;
        }
        const auto k = comp.size();
        std::vector<Bits> compat(k, Bits(k));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                if (i != j && !conflict[comp[i]].test(static_cast<std::size_t>(comp[j])))
                    compat[i].set(j);
        CliqueSearch search(std::move(compat), remaining);
        for (int local : search.run())
            chosen.push_back(comp[local]);
    }
    if (static_cast<int>(chosen.size()) > target)
        chosen.resize(static_cast<std::size_t>(target));
    std::sort(chosen.begin(), chosen.end());
    result.size = static_cast<int>(chosen.size());
    for (int e : chosen)
        result.witness.edges.push_back(edges[e]);
    return result;
}

WidthReport mim_width(const Graph& g, const LinearOrder& order, int cap)
{
    const int n = g.vertex_count();
    if (order.size() != n)
        throw NotAPermutation("order has " + std::to_string(order.size()) + " entries for " + std::to_string(n) +
                              " vertices");
    WidthReport report;
    BipartiteCut cut;
    cut.in_left.assign(static_cast<std::size_t>(n), 0);
    for (int i = 1; i <= n; ++i) {
        int v = order.at(i - 1);
        cut.in_left[v] = 1;
        // Update crossing edges incrementally: edges to v leave, edges from v to the right enter.
        std::erase_if(cut.crossing, [v](const std::pair<int, int>& e) { return e.second == v; });
        for (int w : g.neighbors(v))
            if (!cut.in_left[w])
                cut.crossing.emplace_back(v, w);
        auto mm = max_induced_matching(cut, cap);
        report.per_prefix.push_back(mm.size);
        if (mm.size > report.width || report.argmax_position == 0) {
            report.width = mm.size;
            report.argmax_position = i;
            report.witness = std::move(mm.witness);
        }
        if (mm.size > cap) {
            report.exceeded = true;
            break;
        }
    }
    return report;
}

std::optional<std::vector<int>> is_chain_graph(const BipartiteCut& cut)
{
    const auto n = cut.in_left.size();
    std::vector<std::vector<int>> nbrs(n);
    for (auto [a, b] : cut.crossing)
        nbrs[a].push_back(b);
    std::vector<int> left = cut.left();
    for (int a : left)
        std::sort(nbrs[a].begin(), nbrs[a].end());
    std::stable_sort(left.begin(), left.end(), [&](int x, int y) { return nbrs[x].size() < nbrs[y].size(); });
    for (std::size_t i = 1; i < left.size(); ++i) {
        const auto& small = nbrs[left[i - 1]];
        const auto& big = nbrs[left[i]];
        if (!std::includes(big.begin(), big.end(), small.begin(), small.end()))
            return std::nullopt;
    }
    return left;
}

} // namespace mimham
