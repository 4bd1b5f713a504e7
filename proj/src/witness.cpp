#include "mimham/witness.hpp"

#include "mimham/ham.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace mimham {

IrregularTraversal::IrregularTraversal(int variable, int column) :
    WitnessError("variable " + std::to_string(variable) + " is traversed irregularly at column " +
                 std::to_string(column)),
    variable_(variable),
    column_(column)
{
}

PathCheck verify_path(const Graph& g, std::span<const int> p, bool require_hamiltonian, bool forbid_dummy)
{
    PathCheck out;
    auto fail = [&](int index, std::string message) {
        out.ok = false;
        out.index = index;
        out.message = std::move(message);
        return out;
    };
    std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        int v = p[i];
        if (v < 0 || v >= g.vertex_count())
            return fail(static_cast<int>(i), "vertex " + std::to_string(v) + " out of range");
        if (seen[v])
            return fail(static_cast<int>(i), "vertex " + std::to_string(v) + " repeated");
        seen[v] = 1;
        if (i > 0) {
            int u = p[i - 1];
            if (!g.has_edge(u, v))
                return fail(static_cast<int>(i), "no edge " + std::to_string(u) + "-" + std::to_string(v));
            if (forbid_dummy && g.is_dummy(u, v))
                return fail(static_cast<int>(i), "dummy edge " + std::to_string(u) + "-" + std::to_string(v));
        }
    }
    if (require_hamiltonian && static_cast<int>(p.size()) != g.vertex_count())
        return fail(static_cast<int>(p.size()), "path covers " + std::to_string(p.size()) + " of " +
                                                   std::to_string(g.vertex_count()) + " vertices");
    return out;
}

PathCheck verify_instance_path(const Instance& inst, std::span<const int> p, bool forbid_dummy)
{
    if (inst.apex < 0 || std::find(p.begin(), p.end(), inst.apex) != p.end())
        return verify_path(inst.graph, p, true, forbid_dummy);
    auto out = verify_path(inst.graph, p, false, forbid_dummy);
    if (out.ok && static_cast<int>(p.size()) + 1 != inst.graph.vertex_count()) {
        out.ok = false;
        out.index = static_cast<int>(p.size());
        out.message = "path covers " + std::to_string(p.size()) + " of " +
                      std::to_string(inst.graph.vertex_count() - 1) + " non-apex vertices";
    }
    return out;
}

namespace {

std::vector<int> positions(const Instance& inst, std::span<const int> p)
{
    std::vector<int> pos(static_cast<std::size_t>(inst.graph.vertex_count()), -1);
    for (std::size_t i = 0; i < p.size(); ++i)
        pos[p[i]] = static_cast<int>(i);
    return pos;
}

// p as a Hamiltonian s-t path, oriented from s.
HamPath oriented_st_path(const Instance& inst, std::span<const int> p)
{
    auto check = verify_instance_path(inst, p);
    if (!check.ok)
        throw NotAPath("not a Hamiltonian path: " + check.message + " at index " + std::to_string(check.index));
    HamPath q(p.begin(), p.end());
    if (!q.empty() && q.front() == inst.t && q.back() == inst.s)
        std::reverse(q.begin(), q.end());
    if (q.empty() || q.front() != inst.s || q.back() != inst.t)
        throw NotAPath("path does not run between s and t");
    return q;
}

bool follows(const std::vector<int>& pos, int a, int b) { return pos[a] >= 0 && pos[b] == pos[a] + 1; }

// Column j of variable i swept in true order (value = true) or false order.
bool column_in_order(const Instance& inst, const std::vector<int>& pos, int i, int j, bool value)
{
    const auto& c = inst.cycle[i][j];
    int first_in = value ? c[In1] : c[In0];
    int last_in = value ? c[In0] : c[In1];
    int first_out = value ? c[Out0] : c[Out1];
    int last_out = value ? c[Out1] : c[Out0];
    return follows(pos, first_in, c[DotIn]) && follows(pos, c[DotIn], last_in) && follows(pos, first_out, c[DotOut]) &&
           follows(pos, c[DotOut], last_out);
}

bool link_in_order(const Instance& inst, const std::vector<int>& pos, int i, int j, bool value)
{
    int slot_out = value ? Out1 : Out0;
    int slot_in = value ? In1 : In0;
    return follows(pos, inst.cycle[i][j][slot_out], inst.cycle[i][j + 1][slot_in]);
}

bool sweeps(const Instance& inst, const std::vector<int>& pos, int i, int b, bool value)
{
    for (int j = 1; j <= b; ++j) {
        if (!column_in_order(inst, pos, i, j, value))
            return false;
        if (j < b && !link_in_order(inst, pos, i, j, value))
            return false;
    }
    return true;
}

// max position in X < min position in Y.
bool precedes(const std::vector<int>& pos, std::span<const int> x, std::span<const int> y)
{
    if (x.empty() || y.empty())
        return true;
    int hi = -1;
    for (int v : x)
        hi = std::max(hi, pos[v]);
    int lo = static_cast<int>(pos.size());
    for (int v : y)
        lo = std::min(lo, pos[v]);
    return hi < lo;
}

} // namespace

HamPath path_from_assignment(const Instance& inst, const Assignment& a)
{
    if (!evaluate(inst.formula, a))
        throw NotSatisfying("assignment does not satisfy the formula");
    // Which clause gadget (if any) is collected at column j of variable i.
    std::vector<int> detour(static_cast<std::size_t>(inst.m + 1), 0);
    for (int j = 1; j <= inst.m; ++j)
        for (const auto& w : inst.wiring[j].literals)
            if (*a.get(w.variable) != w.negated) {
                detour[j] = w.pair;
                break;
            }

    auto gadget_route = [&](int j, int h) {
        const auto& copy = inst.gadgets[j];
        auto sub = induced_subgraph(inst.graph, copy.vertices);
        auto [sigma, tau] = copy.pairs[h - 1];
        SearchOptions opts;
        opts.endpoints = std::pair{sub.to_new[sigma], sub.to_new[tau]};
        auto found = find_ham_path(sub.graph, opts);
        if (found.status != SearchStatus::Found)
            throw GadgetRoutingFailure("clause gadget " + std::to_string(j) + " has no Hamiltonian path for pair " +
                                       std::to_string(h));
        std::vector<int> route;
        for (int v : found.path)
            route.push_back(sub.to_old[v]);
        if (route.front() != sigma)
            std::reverse(route.begin(), route.end());
        return route;
    };

    HamPath p{inst.s};
    for (int i = 1; i <= inst.n; ++i) {
        if (i > 1)
            p.push_back(inst.p_i[i]);
        p.push_back(inst.s_i[i]);
        bool value = *a.get(i);
        for (int j = 1; j <= inst.m; ++j) {
            const auto& c = inst.cycle[i][j];
            if (value)
                p.insert(p.end(), {c[In1], c[DotIn], c[In0]});
            else
                p.insert(p.end(), {c[In0], c[DotIn], c[In1]});
            int h = detour[j];
            if (h != 0 && inst.wiring[j].literals[h - 1].variable == i) {
                auto route = gadget_route(j, h);
                p.insert(p.end(), route.begin(), route.end());
            }
            if (value)
                p.insert(p.end(), {c[Out0], c[DotOut], c[Out1]});
            else
                p.insert(p.end(), {c[Out1], c[DotOut], c[Out0]});
        }
        p.push_back(inst.t_i[i]);
    }
    p.push_back(inst.t);
    return p;
}

Traversal traversal(const Instance& inst, std::span<const int> p, int i, int b)
{
    auto pos = positions(inst, p);
    if (sweeps(inst, pos, i, b, true))
        return Traversal::TrueOrder;
    if (sweeps(inst, pos, i, b, false))
        return Traversal::FalseOrder;
    return Traversal::Irregular;
}

Assignment assignment_from_path(const Instance& inst, std::span<const int> p)
{
    auto q = oriented_st_path(inst, p);
    auto pos = positions(inst, q);
    Assignment a;
    for (int i = 1; i <= inst.n; ++i) {
        if (sweeps(inst, pos, i, inst.m, true)) {
            a.set(i, true);
        } else if (sweeps(inst, pos, i, inst.m, false)) {
            a.set(i, false);
        } else {
            int j = 1;
            while (j < inst.m && (sweeps(inst, pos, i, j, true) || sweeps(inst, pos, i, j, false)))
                ++j;
            throw IrregularTraversal(i, j);
        }
    }
    return a;
}

Respectability check_respectable(const Instance& inst, std::span<const int> p, int a, int b)
{
    if (a < 1 || a > inst.n || b < 1 || b > inst.m)
        throw WitnessError("respectability indices out of range");
    auto q = oriented_st_path(inst, p);
    auto pos = positions(inst, q);
    Respectability r;
    auto fail = [&](int condition, std::string detail) {
        r.ok = false;
        r.condition = condition;
        r.detail = std::move(detail);
        return r;
    };
    auto column = [&](int i, int j) { return std::span<const int>(inst.cycle[i][j]); };

    for (int i = 1; i < a; ++i)
        for (int j = 1; j < inst.m; ++j)
            if (!precedes(pos, column(i, j), column(i, j + 1)))
                return fail(1, "D_" + std::to_string(i) + "^" + std::to_string(j) + " does not precede D_" +
                                   std::to_string(i) + "^" + std::to_string(j + 1));
    for (int j = 1; j < b; ++j)
        if (!precedes(pos, column(a, j), column(a, j + 1)))
            return fail(2, "D_" + std::to_string(a) + "^" + std::to_string(j) + " does not precede D_" +
                               std::to_string(a) + "^" + std::to_string(j + 1));
    for (int i = 1; i < a; ++i) {
        auto x = inst.variable_gadget_vertices(i);
        auto y = inst.variable_gadget_vertices(i + 1);
        if (!precedes(pos, x, y))
            return fail(3, "V_" + std::to_string(i) + " does not precede V_" + std::to_string(i + 1));
    }
    for (int i = 1; i < a; ++i)
        if (!sweeps(inst, pos, i, inst.m, true) && !sweeps(inst, pos, i, inst.m, false))
            return fail(4, "variable " + std::to_string(i) + " is not swept in true or false order");
    if (!sweeps(inst, pos, a, b, true) && !sweeps(inst, pos, a, b, false))
        return fail(5, "columns 1.." + std::to_string(b) + " of variable " + std::to_string(a) +
                           " are not swept in true or false order");
    return r;
}

bool consecutive_dt_check(const Instance& inst, std::span<const int> p)
{
    auto pos = positions(inst, p);
    auto contiguous = [&](int x, int dot, int y) {
        if (pos[x] < 0 || pos[dot] < 0 || pos[y] < 0)
            return false;
        return std::abs(pos[x] - pos[dot]) == 1 && std::abs(pos[y] - pos[dot]) == 1;
    };
    for (int i = 1; i <= inst.n; ++i)
        for (int j = 1; j <= inst.m; ++j) {
            const auto& c = inst.cycle[i][j];
            if (!contiguous(c[In0], c[DotIn], c[In1]) || !contiguous(c[Out0], c[DotOut], c[Out1]))
                return false;
        }
    return true;
}

HamPath path_from_cycle(const Instance& inst, std::span<const int> cycle)
{
    if (inst.apex < 0)
        throw WitnessError("instance has no apex");
    auto it = std::find(cycle.begin(), cycle.end(), inst.apex);
    if (it == cycle.end())
        throw NotAPath("cycle does not visit the apex");
    std::size_t at = static_cast<std::size_t>(it - cycle.begin());
    HamPath q;
    for (std::size_t k = 1; k < cycle.size(); ++k)
        q.push_back(cycle[(at + k) % cycle.size()]);
    if (!q.empty() && q.front() == inst.t)
        std::reverse(q.begin(), q.end());
    return q;
}

std::string write_path(std::span<const int> p)
{
    std::ostringstream out;
    out << "path";
    for (int v : p)
        out << ' ' << v;
    out << '\n';
    return out.str();
}

HamPath read_path(std::string_view text)
{
    for (auto line : split_lines(text)) {
        auto tok = split_tokens(line);
        if (tok.empty() || tok[0] != "path")
            continue;
        HamPath p;
        for (std::size_t i = 1; i < tok.size(); ++i)
            p.push_back(parse_int(tok[i], "path line"));
        return p;
    }
    throw WitnessError("missing 'path' line");
}

std::string write_assignment(const Assignment& a)
{
    std::ostringstream out;
    out << "assign";
    for (auto [v, value] : a.values())
        out << ' ' << v << '=' << (value ? 1 : 0);
    out << '\n';
    return out.str();
}

Assignment read_assignment(std::string_view text)
{
    for (auto line : split_lines(text)) {
        auto tok = split_tokens(line);
        if (tok.empty() || tok[0] != "assign")
            continue;
        Assignment a;
        for (std::size_t i = 1; i < tok.size(); ++i) {
            auto eq = tok[i].find('=');
            if (eq == std::string_view::npos)
                throw WitnessError("bad assignment token '" + std::string(tok[i]) + "'");
            int v = parse_int(tok[i].substr(0, eq), "assign line");
            auto value = tok[i].substr(eq + 1);
            if (value != "0" && value != "1")
                throw WitnessError("assignment values must be 0 or 1");
            if (v < 1 || a.contains(v))
                throw WitnessError("bad or repeated variable " + std::to_string(v));
            a.set(v, value == "1");
        }
        return a;
    }
    throw WitnessError("missing 'assign' line");
}

} // namespace mimham
