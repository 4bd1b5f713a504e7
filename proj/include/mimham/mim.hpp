#pragma once

#include "mimham/graph.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace mimham {

/// The bipartite graph G[A, V \ A]: only edges with one endpoint on each side.
struct BipartiteCut {
    std::vector<char> in_left;                  // indexed by vertex id
    std::vector<std::pair<int, int>> crossing;  // (left endpoint, right endpoint)

    std::vector<int> left() const;
    std::vector<int> right() const;
};

struct MatchingWitness {
    std::vector<std::pair<int, int>> edges;

    int size() const { return static_cast<int>(edges.size()); }
};

struct InducedMatching {
    int size = 0; // exact when <= cap, otherwise cap + 1
    MatchingWitness witness;
};

class PositionOutOfRange : public GraphError {
public:
    using GraphError::GraphError;
};

BipartiteCut make_cut(const Graph& g, std::span<const int> left_vertices);

/// Cut after the first `i` vertices of `order`, 1 <= i <= |V|.
BipartiteCut prefix_cut(const Graph& g, const LinearOrder& order, int i);

/// Maximum induced matching of the cut graph, stopping early once cap + 1 is reached.
InducedMatching max_induced_matching(const BipartiteCut& cut, int cap);

/// True iff `edges` is an induced matching of the cut graph.
bool is_induced_matching(const BipartiteCut& cut, std::span<const std::pair<int, int>> edges);

struct WidthReport {
    int width = 0;
    int argmax_position = 0;        // prefix length achieving `width`
    MatchingWitness witness;
    std::vector<int> per_prefix;    // mim-value of each prefix 1..n, capped at cap + 1
    bool exceeded = false;          // width > cap; scan stopped at argmax_position
};

/// Linear mim-width of `order`, exact up to `cap`.
WidthReport mim_width(const Graph& g, const LinearOrder& order, int cap);

/// Orders the left side by neighborhood inclusion if the cut graph is a chain graph.
std::optional<std::vector<int>> is_chain_graph(const BipartiteCut& cut);

} // namespace mimham
