#include "mimham/ham.hpp"

#include <algorithm>
#include <chrono>
#include <functional>

namespace mimham {

namespace {

struct BudgetHit {};

class Budget {
public:
    explicit Budget(const SearchOptions& opts) :
        nodes_limit_(opts.node_budget), time_limit_ms_(opts.time_budget_ms), start_(std::chrono::steady_clock::now())
    {
    }

    void tick()
    {
        if (++nodes > nodes_limit_)
            throw BudgetHit{};
        if (time_limit_ms_ != 0 && (nodes & 4095) == 0) {
            auto elapsed = std::chrono::steady_clock::now() - start_;
            if (std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count() >
                static_cast<long long>(time_limit_ms_))
                throw BudgetHit{};
        }
    }

    std::uint64_t nodes = 0;

private:
    std::uint64_t nodes_limit_;
    std::uint64_t time_limit_ms_;
    std::chrono::steady_clock::time_point start_;
};

std::vector<std::vector<int>> working_adjacency(const Graph& g, bool forbid_dummy)
{
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.vertex_count()));
    for (int v = 0; v < g.vertex_count(); ++v)
        for (int w : g.neighbors(v))
            if (!forbid_dummy || !g.is_dummy(v, w))
                adj[v].push_back(w);
    return adj;
}

// Depth-first extension of a path from a fixed start, optionally towards a fixed end.
// Pruning: every unvisited vertex other than the end needs two usable neighbours
// (unvisited ones or the current head), at most one may have a single one when the end is
// free, and the unvisited vertices must stay connected to the head.
class Backtracker {
public:
    using Visit = std::function<bool(const std::vector<int>&)>; // return false to stop

    Backtracker(const std::vector<std::vector<int>>& adj, Budget& budget) :
        adj_(adj), n_(static_cast<int>(adj.size())), budget_(budget)
    {
        visited_.assign(static_cast<std::size_t>(n_), 0);
        free_degree_.assign(static_cast<std::size_t>(n_), 0);
        head_mark_.assign(static_cast<std::size_t>(n_), 0);
        seen_.assign(static_cast<std::size_t>(n_), 0);
        for (int v = 0; v < n_; ++v)
            free_degree_[v] = static_cast<int>(adj_[v].size());
    }

    // Returns false if the visitor asked to stop.
    bool run(int start, int target, const Visit& visit)
    {
        target_ = target;
        visit_ = &visit;
        stop_ = false;
        enter(start);
        dfs(start);
        leave(start);
        return !stop_;
    }

private:
    void enter(int v)
    {
        visited_[v] = 1;
        path_.push_back(v);
        for (int w : adj_[v])
            --free_degree_[w];
    }

    void leave(int v)
    {
        for (int w : adj_[v])
            ++free_degree_[w];
        path_.pop_back();
        visited_[v] = 0;
    }

    // Returns false when the state cannot be completed. With a fixed end, an unvisited vertex
    // with exactly two usable neighbours forces both edges; `forced_next` is set when such a
    // vertex hangs off the head.
    bool feasible(int head, int& forced_next)
    {
        forced_next = -1;
        const int remaining = n_ - static_cast<int>(path_.size());
        ++stamp_;
        for (int w : adj_[head])
            head_mark_[w] = stamp_;
        int dead_ends = 0;
        int first_unvisited = -1;
        for (int w = 0; w < n_; ++w) {
            if (visited_[w])
                continue;
            if (first_unvisited < 0)
                first_unvisited = w;
            int usable = free_degree_[w] + (head_mark_[w] == stamp_ ? 1 : 0);
            if (w == target_) {
                if (usable == 0 || (remaining > 1 && free_degree_[w] == 0))
                    return false;
                continue;
            }
            if (usable == 0)
                return false;
            if (usable == 1) {
                if (free_degree_[w] == 0 && remaining > 1)
                    return false; // only reachable from the head, yet not last
                if (target_ >= 0 || ++dead_ends > 1)
                    return false;
            }
        }
        if (first_unvisited < 0)
            return true;
        if (target_ >= 0 && !forced_edges_ok(head, forced_next))
            return false;
        // Connectivity of the unvisited region, entered from the head.
        ++stamp_seen_;
        std::vector<int>& stack = stack_;
        stack.clear();
        int reached = 0;
        for (int w : adj_[head])
            if (!visited_[w] && seen_[w] != stamp_seen_) {
                seen_[w] = stamp_seen_;
                stack.push_back(w);
                ++reached;
            }
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y : adj_[x])
                if (!visited_[y] && seen_[y] != stamp_seen_) {
                    seen_[y] = stamp_seen_;
                    stack.push_back(y);
                    ++reached;
                }
        }
        return reached == remaining;
    }

    bool forcing(int w) const
    {
        return !visited_[w] && w != target_ && free_degree_[w] + (head_mark_[w] == stamp_ ? 1 : 0) == 2;
    }

    bool forced_edges_ok(int head, int& forced_next)
    {
        int head_forced = 0;
        for (int w : adj_[head])
            if (forcing(w)) {
                ++head_forced;
                forced_next = w;
            }
        if (head_forced > 1)
            return false;
        const int remaining = n_ - static_cast<int>(path_.size());
        if (forced_next == target_ && remaining > 1)
            return false;
        for (int x = 0; x < n_; ++x) {
            if (visited_[x] || forcing(x))
                continue;
            int forced = 0;
            for (int y : adj_[x])
                if (forcing(y))
                    ++forced;
            if (forced > (x == target_ ? 1 : 2))
                return false;
        }
        return true;
    }

    void dfs(int head)
    {
        if (static_cast<int>(path_.size()) == n_) {
            if (target_ < 0 || head == target_)
                stop_ = !(*visit_)(path_);
            return;
        }
        budget_.tick();
        int forced_next = -1;
        if (!feasible(head, forced_next))
            return;
        const int remaining = n_ - static_cast<int>(path_.size());
        std::vector<int> next;
        if (forced_next >= 0)
            next.push_back(forced_next);
        else
            for (int w : adj_[head])
                if (!visited_[w] && (w != target_ || remaining == 1))
                    next.push_back(w);
        // Fewest remaining options first; ties by id for determinism.
        std::sort(next.begin(), next.end(), [&](int a, int b) {
            return free_degree_[a] != free_degree_[b] ? free_degree_[a] < free_degree_[b] : a < b;
        });
        for (int w : next) {
            enter(w);
            dfs(w);
            leave(w);
            if (stop_)
                return;
        }
    }

    const std::vector<std::vector<int>>& adj_;
    int n_;
    Budget& budget_;
    std::vector<char> visited_;
    std::vector<int> free_degree_;
    std::vector<unsigned> head_mark_;
    std::vector<unsigned> seen_;
    std::vector<int> stack_;
    unsigned stamp_ = 0;
    unsigned stamp_seen_ = 0;
    std::vector<int> path_;
    int target_ = -1;
    const Visit* visit_ = nullptr;
    bool stop_ = false;
};

// Bitmask DP: ends[mask] holds the possible last vertices of paths covering exactly mask.
std::optional<std::vector<int>> dp_path(const std::vector<std::vector<int>>& adj, int start, int end, bool cycle,
                                        Budget& budget)
{
    const int n = static_cast<int>(adj.size());
    std::vector<std::uint32_t> nb(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v)
        for (int w : adj[v])
            nb[v] |= std::uint32_t{1} << w;
    const std::uint32_t full = n == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1;
    std::vector<std::uint32_t> ends(std::size_t{1} << n, 0);
    if (start >= 0)
        ends[std::uint32_t{1} << start] = std::uint32_t{1} << start;
    else
        for (int v = 0; v < n; ++v)
            ends[std::uint32_t{1} << v] = std::uint32_t{1} << v;
    for (std::uint32_t mask = 1; mask < full; ++mask) {
        std::uint32_t e = ends[mask];
        if (!e)
            continue;
        budget.tick();
        for (std::uint32_t rest = e; rest; rest &= rest - 1) {
            int v = __builtin_ctz(rest);
            for (std::uint32_t grow = nb[v] & ~mask; grow; grow &= grow - 1) {
                int w = __builtin_ctz(grow);
                ends[mask | (std::uint32_t{1} << w)] |= std::uint32_t{1} << w;
            }
        }
    }
    std::uint32_t accept = ends[full];
    if (end >= 0)
        accept &= std::uint32_t{1} << end;
    if (cycle)
        accept &= nb[start];
    if (!accept)
        return std::nullopt;
    std::vector<int> path;
    std::uint32_t mask = full;
    int v = __builtin_ctz(accept);
    for (;;) {
        path.push_back(v);
        std::uint32_t prev_mask = mask & ~(std::uint32_t{1} << v);
        if (!prev_mask)
            break;
        std::uint32_t options = ends[prev_mask] & nb[v];
        v = __builtin_ctz(options);
        mask = prev_mask;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

void canonicalize(std::vector<int>& path)
{
    if (path.size() > 1 && path.back() < path.front())
        std::reverse(path.begin(), path.end());
}

// Calls visit for Hamiltonian paths, each once, in canonical orientation.
void each_path(const std::vector<std::vector<int>>& adj, const SearchOptions& opts, Budget& budget,
               const std::function<bool(std::vector<int>)>& visit)
{
    const int n = static_cast<int>(adj.size());
    if (n == 0)
        return;
    if (n == 1) {
        if (!opts.endpoints || opts.endpoints->first == opts.endpoints->second)
            visit({0});
        return;
    }
    Backtracker bt(adj, budget);
    auto emit = [&](const std::vector<int>& p) {
        std::vector<int> q = p;
        canonicalize(q);
        return visit(std::move(q));
    };
    if (opts.endpoints) {
        auto [a, b] = *opts.endpoints;
        if (a == b || a < 0 || b < 0 || a >= n || b >= n)
            return;
        bt.run(a, b, emit);
        return;
    }
    std::vector<int> leaves;
    for (int v = 0; v < n; ++v) {
        if (adj[v].empty())
            return;
        if (adj[v].size() == 1)
            leaves.push_back(v);
    }
    if (leaves.size() > 2)
        return;
    if (!leaves.empty()) {
        // Every Hamiltonian path ends at each degree-1 vertex.
        int target = leaves.size() == 2 ? leaves[1] : -1;
        bt.run(leaves[0], target, emit);
        return;
    }
    for (int v = 0; v < n; ++v) {
        bool more = bt.run(v, -1, [&](const std::vector<int>& p) { return p.back() < v ? true : visit(p); });
        if (!more)
            return;
    }
}

} // namespace

SearchResult find_ham_path(const Graph& g, const SearchOptions& opts)
{
    SearchResult result;
    Budget budget(opts);
    auto adj = working_adjacency(g, opts.forbid_dummy);
    const int n = g.vertex_count();
    try {
        bool use_dp = opts.engine == Engine::Dp || (opts.engine == Engine::Auto && n <= kDpMaxVertices && n > 0);
        if (use_dp && n <= kDpMaxVertices && n > 0) {
            int start = -1;
            int end = -1;
            if (opts.endpoints) {
                std::tie(start, end) = *opts.endpoints;
                if (start == end && n > 1) {
                    result.nodes = budget.nodes;
                    return result;
                }
            }
            if (auto p = dp_path(adj, start, end, false, budget)) {
                result.status = SearchStatus::Found;
                result.path = std::move(*p);
            }
        } else {
            each_path(adj, opts, budget, [&](std::vector<int> p) {
                result.status = SearchStatus::Found;
                result.path = std::move(p);
                return false;
            });
        }
    } catch (const BudgetHit&) {
        result.status = SearchStatus::BudgetExceeded;
        result.path.clear();
    }
    result.nodes = budget.nodes;
    return result;
}

SearchResult find_ham_cycle(const Graph& g, const SearchOptions& opts)
{
    SearchResult result;
    Budget budget(opts);
    auto adj = working_adjacency(g, opts.forbid_dummy);
    const int n = g.vertex_count();
    if (n < 3)
        return result;
    int root = 0;
    for (int v = 0; v < n; ++v) {
        if (adj[v].size() < 2)
            return result;
        if (adj[v].size() < adj[root].size())
            root = v;
    }
    try {
        bool use_dp = opts.engine == Engine::Dp || (opts.engine == Engine::Auto && n <= kDpMaxVertices);
        if (use_dp && n <= kDpMaxVertices) {
            if (auto p = dp_path(adj, root, -1, true, budget)) {
                result.status = SearchStatus::Found;
                result.path = std::move(*p);
            }
        } else {
            Backtracker bt(adj, budget);
            // A cycle through root leaves by one neighbour and returns by another, so
            // closing at every neighbour but the last covers all cycles.
            for (std::size_t idx = 0; idx + 1 < adj[root].size(); ++idx) {
                int u = adj[root][idx];
                bt.run(root, u, [&](const std::vector<int>& p) {
                    result.status = SearchStatus::Found;
                    result.path = p;
                    return false;
                });
                if (result.status == SearchStatus::Found)
                    break;
            }
        }
    } catch (const BudgetHit&) {
        result.status = SearchStatus::BudgetExceeded;
        result.path.clear();
    }
    result.nodes = budget.nodes;
    return result;
}

Enumeration enumerate_ham_paths(const Graph& g, const SearchOptions& opts)
{
    Enumeration out;
    Budget budget(opts);
    auto adj = working_adjacency(g, opts.forbid_dummy);
    bool stopped = false;
    try {
        each_path(adj, opts, budget, [&](std::vector<int> p) {
            if (out.paths.size() >= opts.enumerate_limit) {
                stopped = true;
                return false;
            }
            out.paths.push_back(std::move(p));
            return true;
        });
        out.complete = !stopped;
        out.status = out.paths.empty() ? SearchStatus::NotFound : SearchStatus::Found;
    } catch (const BudgetHit&) {
        out.status = SearchStatus::BudgetExceeded;
    }
    out.nodes = budget.nodes;
    return out;
}

std::string to_string(SearchStatus s)
{
    switch (s) {
    case SearchStatus::Found: return "found";
    case SearchStatus::NotFound: return "not found";
    case SearchStatus::BudgetExceeded: return "budget exceeded";
    }
    return "?";
}

} // namespace mimham
