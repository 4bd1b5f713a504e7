#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mimham {

enum class EdgeKind : std::uint8_t { Core, Dummy };

struct Edge {
    int u = 0;
    int v = 0;
    EdgeKind kind = EdgeKind::Core;

    bool operator==(const Edge&) const = default;
};

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotAPermutation : public GraphError {
public:
    using GraphError::GraphError;
};

/// Thrown by searches that run out of their node or candidate budget.
class BudgetExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
class Graph {
public:
    Graph() = default;
    explicit Graph(int vertex_count);

    int add_vertex();
    /// Throws GraphError on loops, parallel edges, or out-of-range endpoints.
    void add_edge(int u, int v, EdgeKind kind = EdgeKind::Core);
    void remove_edge(int u, int v);

    int vertex_count() const { return static_cast<int>(adj_.size()); }
    std::size_t edge_count() const { return edge_count_; }
    std::span<const int> neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    bool has_edge(int u, int v) const;
    EdgeKind edge_kind(int u, int v) const;
    bool is_dummy(int u, int v) const { return dummy_.count(key(u, v)) != 0; }

    /// All edges with u < v, lexicographically sorted.
    std::vector<Edge> edges() const;
    std::size_t dummy_count() const { return dummy_.size(); }

    bool operator==(const Graph& other) const { return adj_ == other.adj_ && dummy_ == other.dummy_; }

private:
    static std::pair<int, int> key(int u, int v) { return u < v ? std::pair{u, v} : std::pair{v, u}; }
    void check_vertex(int v) const;

    std::vector<std::vector<int>> adj_;
    std::set<std::pair<int, int>> dummy_;
    std::size_t edge_count_ = 0;
};

/// Permutation of vertex ids with O(1) rank lookup.
class LinearOrder {
public:
    LinearOrder() = default;
    /// Throws NotAPermutation unless `sequence` is a permutation of 0..n-1.
    explicit LinearOrder(std::vector<int> sequence);

    static LinearOrder identity(int n);

    int size() const { return static_cast<int>(sequence_.size()); }
    int at(int position) const { return sequence_[position]; }
    int position_of(int vertex) const { return position_[vertex]; }
    std::span<const int> sequence() const { return sequence_; }

    bool operator==(const LinearOrder&) const = default;

private:
    std::vector<int> sequence_;
    std::vector<int> position_;
};

struct InducedSubgraph {
    Graph graph;
    std::vector<int> to_new; // -1 for vertices outside the set
    std::vector<int> to_old;
};

InducedSubgraph induced_subgraph(const Graph& g, std::span<const int> vertices);

bool is_connected(const Graph& g);

// Text formats.
//   graph <n>
//   e <u> <v> <core|dummy>     (u < v, lexicographic)
//   order <v1> <v2> ...
std::string write_graph(const Graph& g);
Graph read_graph(std::string_view text);
std::string write_order(const LinearOrder& order);
LinearOrder read_order(std::string_view text);

/// Graphviz export; dummy edges are dashed. `labels` may be empty.
std::string to_dot(const Graph& g, std::span<const std::string> labels = {}, std::string_view name = "G");

// Small tokenizer shared by the line-based readers.
std::vector<std::string_view> split_tokens(std::string_view line);
std::vector<std::string_view> split_lines(std::string_view text);
int parse_int(std::string_view token, std::string_view context);

} // namespace mimham
