#pragma once

#include "mimham/graph.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mimham {

enum class SearchStatus { Found, NotFound, BudgetExceeded };
enum class Engine { Auto, Dp, Backtrack };

inline constexpr int kDpMaxVertices = 22;

struct SearchOptions {
    std::optional<std::pair<int, int>> endpoints; // path must run between these two vertices
    std::uint64_t node_budget = 2'000'000'000;
    std::uint64_t time_budget_ms = 0;            // 0: no time limit
    std::size_t enumerate_limit = 1;
    bool forbid_dummy = false;
    Engine engine = Engine::Auto;
};

struct SearchResult {
    SearchStatus status = SearchStatus::NotFound;
    std::vector<int> path; // for cycles: the vertices in cycle order, closing edge implied
    std::uint64_t nodes = 0;
};

struct Enumeration {
    std::vector<std::vector<int>> paths;
    bool complete = false; // false when stopped by the limit or the budget
    SearchStatus status = SearchStatus::NotFound; // BudgetExceeded if the budget stopped it
    std::uint64_t nodes = 0;
};

SearchResult find_ham_path(const Graph& g, const SearchOptions& opts = {});
SearchResult find_ham_cycle(const Graph& g, const SearchOptions& opts = {});

/// Hamiltonian paths up to opts.enumerate_limit, each once, oriented from the smaller endpoint.
Enumeration enumerate_ham_paths(const Graph& g, const SearchOptions& opts = {});

std::string to_string(SearchStatus s);

} // namespace mimham
