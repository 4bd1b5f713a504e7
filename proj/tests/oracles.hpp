#pragma once

// Naive reference implementations. Deliberately simple; only for small inputs.

#include "mimham/graph.hpp"
#include "mimham/mim.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using mimham::BipartiteCut;
using mimham::Graph;

// Largest induced matching of the cut graph by trying every subset of crossing edges.
inline int induced_matching_bruteforce(const Graph& g, const BipartiteCut& cut)
{
    const auto& e = cut.crossing;
    const int k = static_cast<int>(e.size());
    int best = 0;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
        int size = __builtin_popcountll(mask);
        if (size <= best)
            continue;
        bool ok = true;
        for (int a = 0; a < k && ok; ++a) {
            if (!(mask >> a & 1))
                continue;
            for (int b = a + 1; b < k && ok; ++b) {
                if (!(mask >> b & 1))
                    continue;
                auto [u1, v1] = e[a];
                auto [u2, v2] = e[b];
                if (u1 == u2 || v1 == v2)
                    ok = false;
                // In the cut graph only left-right pairs can be adjacent.
                else if (g.has_edge(u1, v2) || g.has_edge(u2, v1))
                    ok = false;
            }
        }
        if (ok)
            best = size;
    }
    return best;
}

inline bool ham_path_bruteforce(const Graph& g)
{
    const int n = g.vertex_count();
    if (n == 0)
        return false;
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    do {
        bool ok = true;
        for (int i = 0; i + 1 < n && ok; ++i)
            ok = g.has_edge(p[i], p[i + 1]);
        if (ok)
            return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
}

inline bool ham_cycle_bruteforce(const Graph& g)
{
    const int n = g.vertex_count();
    if (n < 3)
        return false;
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    // Fix vertex 0 first.
    do {
        bool ok = g.has_edge(p[n - 1], p[0]);
        for (int i = 0; i + 1 < n && ok; ++i)
            ok = g.has_edge(p[i], p[i + 1]);
        if (ok)
            return true;
    } while (std::next_permutation(p.begin() + 1, p.end()));
    return false;
}

inline Graph random_graph(std::mt19937_64& rng, int n, double p)
{
    Graph g(n);
    std::bernoulli_distribution coin(p);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng))
                g.add_edge(u, v);
    return g;
}

// Graph on n vertices from the bits of `code` over the pairs (u, v), u < v, in lexicographic order.
inline Graph graph_from_code(int n, std::uint64_t code)
{
    Graph g(n);
    int bit = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v, ++bit)
            if (code >> bit & 1)
                g.add_edge(u, v);
    return g;
}

// Random chain graph: left vertices 0..a-1 with nested neighborhoods in a..a+b-1.
inline Graph random_chain_graph(std::mt19937_64& rng, int a, int b, std::vector<int>& left)
{
    Graph g(a + b);
    std::vector<int> thresholds(static_cast<std::size_t>(a));
    for (auto& t : thresholds)
        t = static_cast<int>(rng() % static_cast<std::uint64_t>(b + 1));
    std::vector<int> right(static_cast<std::size_t>(b));
    std::iota(right.begin(), right.end(), a);
    std::shuffle(right.begin(), right.end(), rng);
    left.clear();
    for (int i = 0; i < a; ++i) {
        left.push_back(i);
        for (int r = 0; r < thresholds[i]; ++r)
            g.add_edge(i, right[r]);
    }
    // Edges inside a side do not change the cut graph; add some to make sure they are ignored.
    for (int k = 0; k < a; ++k) {
        int u = static_cast<int>(rng() % static_cast<std::uint64_t>(a));
        int v = static_cast<int>(rng() % static_cast<std::uint64_t>(a));
        if (u != v && !g.has_edge(u, v))
            g.add_edge(u, v);
    }
    return g;
}

} // namespace oracle
