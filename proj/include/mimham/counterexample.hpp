#pragma once

#include "mimham/graph.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mimham {

class CounterexampleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class DegreeViolation : public CounterexampleError {
public:
    using CounterexampleError::CounterexampleError;
};
class UnbalancedSides : public CounterexampleError {
public:
    using CounterexampleError::CounterexampleError;
};
class NotBipartite : public CounterexampleError {
public:
    using CounterexampleError::CounterexampleError;
};

/// Bipartite graph with ordered sides a_1..a_n and b_1..b_n. An edge (i, j) joins a_i and b_j
/// (both 1-based). Edges are kept sorted.
struct BipartiteInstance {
    int n = 0;
    std::vector<std::pair<int, int>> edges;

    int degree_a(int i) const;
    int degree_b(int j) const;
    /// Throws DegreeViolation unless every vertex has degree 2 or 3.
    void validate() const;
    /// a_i is vertex i-1, b_j is vertex n+j-1.
    Graph graph() const;
    /// Same graph with a_i renamed to a_{order[i-1]}.
    BipartiteInstance reorder_a(std::span<const int> order) const;

    bool operator==(const BipartiteInstance&) const = default;
};

/// Reads sides off a graph. Throws UnbalancedSides, NotBipartite or DegreeViolation.
BipartiteInstance bipartite_from_graph(const Graph& g, std::span<const int> a_side, std::span<const int> b_side);

struct PP08Output {
    Graph h;
    std::vector<int> a;                       // a_i -> vertex, index i-1
    std::vector<int> b;                       // b_j -> vertex, index j-1
    std::map<std::pair<int, int>, int> subdivision; // (i, j) -> vertex a_i b_j
    std::map<int, int> twin;                  // j -> vertex b_j'
    std::vector<std::string> labels;
};

PP08Output pp08_reduce(const BipartiteInstance& g);

/// Layered drawing: A on top, subdivision vertices in the middle, B and twins below.
std::string pp08_dot(const PP08Output& out);

struct CounterexampleOptions {
    int min_n = 2;
    int max_n = 6;
    bool require_connected = true;
    std::uint64_t h_node_budget = 50'000'000; // per Hamiltonicity check of H
    std::uint64_t max_checks = 50'000'000;    // total (graph, ordering) pairs examined
};

struct CounterexampleStats {
    std::uint64_t graphs = 0;           // canonical candidates with no Hamiltonian cycle
    std::uint64_t orderings = 0;        // H instances built
    std::uint64_t h_budget_exceeded = 0;
};

struct Counterexample {
    BipartiteInstance g;
    PP08Output h;
    std::vector<int> cycle; // Hamiltonian cycle of h.h
};

/// First (graph, A-ordering) pair in enumeration order where G has no Hamiltonian cycle and
/// its reduction H has one. Throws BudgetExhausted past opts.max_checks.
std::optional<Counterexample> search_counterexample(const CounterexampleOptions& opts = {},
                                                    CounterexampleStats* stats = nullptr);

/// Canonical biadjacency rows of g under permutations of A and of B (sides are not swapped).
std::vector<std::uint32_t> bipartite_canonical_form(const BipartiteInstance& g);

/// True when `cycle` visits every vertex of g once and consecutive vertices (wrapping) are adjacent.
bool is_ham_cycle(const Graph& g, std::span<const int> cycle);

// "bipartite <n>" then "ab <i> <j>" lines.
std::string write_bipartite(const BipartiteInstance& g);
BipartiteInstance read_bipartite(std::string_view text);

} // namespace mimham
