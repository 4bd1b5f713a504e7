#include "mimham/graph.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace mimham {

Graph::Graph(int vertex_count) : adj_(static_cast<std::size_t>(vertex_count)) {}

int Graph::add_vertex()
{
    adj_.emplace_back();
    return vertex_count() - 1;
}

void Graph::check_vertex(int v) const
{
    if (v < 0 || v >= vertex_count())
        throw GraphError("vertex " + std::to_string(v) + " out of range [0, " + std::to_string(vertex_count()) + ")");
}

void Graph::add_edge(int u, int v, EdgeKind kind)
{
    check_vertex(u);
    check_vertex(v);
    if (u == v)
        throw GraphError("loop at vertex " + std::to_string(u));
    auto& au = adj_[u];
    auto it = std::lower_bound(au.begin(), au.end(), v);
    if (it != au.end() && *it == v)
        throw GraphError("parallel edge " + std::to_string(u) + "-" + std::to_string(v));
    au.insert(it, v);
    auto& av = adj_[v];
    av.insert(std::lower_bound(av.begin(), av.end(), u), u);
    ++edge_count_;
    if (kind == EdgeKind::Dummy)
        dummy_.insert(key(u, v));
}

void Graph::remove_edge(int u, int v)
{
    if (!has_edge(u, v))
        throw GraphError("no edge " + std::to_string(u) + "-" + std::to_string(v));
    auto erase = [](std::vector<int>& a, int x) { a.erase(std::lower_bound(a.begin(), a.end(), x)); };
    erase(adj_[u], v);
    erase(adj_[v], u);
    dummy_.erase(key(u, v));
    --edge_count_;
}

bool Graph::has_edge(int u, int v) const
{
    if (u < 0 || v < 0 || u >= vertex_count() || v >= vertex_count())
        return false;
    const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
    int other = adj_[u].size() <= adj_[v].size() ? v : u;
    return std::binary_search(a.begin(), a.end(), other);
}

EdgeKind Graph::edge_kind(int u, int v) const
{
    if (!has_edge(u, v))
        throw GraphError("no edge " + std::to_string(u) + "-" + std::to_string(v));
    return is_dummy(u, v) ? EdgeKind::Dummy : EdgeKind::Core;
}

std::vector<Edge> Graph::edges() const
{
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (int u = 0; u < vertex_count(); ++u)
        for (int v : adj_[u])
            if (u < v)
                out.push_back(Edge{u, v, is_dummy(u, v) ? EdgeKind::Dummy : EdgeKind::Core});
    return out;
}

LinearOrder::LinearOrder(std::vector<int> sequence) : sequence_(std::move(sequence)), position_(sequence_.size(), -1)
{
    for (std::size_t i = 0; i < sequence_.size(); ++i) {
        int v = sequence_[i];
        if (v < 0 || v >= static_cast<int>(sequence_.size()) || position_[v] != -1)
            throw NotAPermutation("order is not a permutation (bad entry " + std::to_string(v) + " at position " +
                             std::to_string(i) + ")");
        position_[v] = static_cast<int>(i);
    }
}

LinearOrder LinearOrder::identity(int n)
{
    std::vector<int> seq(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        seq[i] = i;
    return LinearOrder(std::move(seq));
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const int> vertices)
{
    InducedSubgraph out;
    out.to_new.assign(static_cast<std::size_t>(g.vertex_count()), -1);
    for (int v : vertices) {
        if (v < 0 || v >= g.vertex_count())
            throw GraphError("vertex " + std::to_string(v) + " out of range");
        if (out.to_new[v] != -1)
            continue;
        out.to_new[v] = static_cast<int>(out.to_old.size());
        out.to_old.push_back(v);
    }
    out.graph = Graph(static_cast<int>(out.to_old.size()));
    for (int nu = 0; nu < static_cast<int>(out.to_old.size()); ++nu) {
        int u = out.to_old[nu];
        for (int v : g.neighbors(u)) {
            int nv = out.to_new[v];
            if (nv > nu)
                out.graph.add_edge(nu, nv, g.is_dummy(u, v) ? EdgeKind::Dummy : EdgeKind::Core);
        }
    }
    return out;
}

bool is_connected(const Graph& g)
{
    if (g.vertex_count() == 0)
        return true;
    std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : g.neighbors(v))
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
    }
    return count == g.vertex_count();
}

std::vector<std::string_view> split_tokens(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    auto space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
    while (i < line.size()) {
        while (i < line.size() && space(line[i]))
            ++i;
        std::size_t j = i;
        while (j < line.size() && !space(line[j]))
            ++j;
        if (j > i)
            out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

std::vector<std::string_view> split_lines(std::string_view text)
{
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            out.push_back(text.substr(pos));
            break;
        }
        out.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    return out;
}

int parse_int(std::string_view token, std::string_view context)
{
    int value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size())
        throw GraphError(std::string(context) + ": expected integer, got '" + std::string(token) + "'");
    return value;
}

std::string write_graph(const Graph& g)
{
    std::ostringstream out;
    out << "graph " << g.vertex_count() << '\n';
    for (const auto& e : g.edges())
        out << "e " << e.u << ' ' << e.v << ' ' << (e.kind == EdgeKind::Dummy ? "dummy" : "core") << '\n';
    return out.str();
}

Graph read_graph(std::string_view text)
{
    Graph g;
    bool have_header = false;
    int line_no = 0;
    for (auto line : split_lines(text)) {
        ++line_no;
        auto tok = split_tokens(line);
        if (tok.empty() || tok[0] == "#")
            continue;
        auto where = "graph line " + std::to_string(line_no);
        if (tok[0] == "graph") {
            if (have_header || tok.size() != 2)
                throw GraphError(where + ": bad header");
            g = Graph(parse_int(tok[1], where));
            have_header = true;
        } else if (tok[0] == "e") {
            if (!have_header || tok.size() != 4)
                throw GraphError(where + ": bad edge line");
            EdgeKind kind;
            if (tok[3] == "core")
                kind = EdgeKind::Core;
            else if (tok[3] == "dummy")
                kind = EdgeKind::Dummy;
            else
                throw GraphError(where + ": unknown edge kind '" + std::string(tok[3]) + "'");
            g.add_edge(parse_int(tok[1], where), parse_int(tok[2], where), kind);
        }
        // Other line types belong to enclosing formats and are skipped here.
    }
    if (!have_header)
        throw GraphError("missing 'graph <n>' header");
    return g;
}

std::string write_order(const LinearOrder& order)
{
    std::ostringstream out;
    out << "order";
    for (int v : order.sequence())
        out << ' ' << v;
    out << '\n';
    return out.str();
}

LinearOrder read_order(std::string_view text)
{
    for (auto line : split_lines(text)) {
        auto tok = split_tokens(line);
        if (tok.empty() || tok[0] != "order")
            continue;
        std::vector<int> seq;
        for (std::size_t i = 1; i < tok.size(); ++i)
            seq.push_back(parse_int(tok[i], "order line"));
        return LinearOrder(std::move(seq));
    }
    throw GraphError("missing 'order' line");
}

std::string to_dot(const Graph& g, std::span<const std::string> labels, std::string_view name)
{
    std::ostringstream out;
    out << "graph " << name << " {\n";
    out << "  node [shape=circle, fontsize=10];\n";
    for (int v = 0; v < g.vertex_count(); ++v) {
        out << "  " << v;
        if (static_cast<std::size_t>(v) < labels.size())
            out << " [label=\"" << labels[v] << "\"]";
        out << ";\n";
    }
    for (const auto& e : g.edges()) {
        out << "  " << e.u << " -- " << e.v;
        if (e.kind == EdgeKind::Dummy)
            out << " [style=dashed, color=gray]";
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace mimham
