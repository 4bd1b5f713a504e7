#include "mimham/reduction.hpp"

#include <algorithm>
#include <iomanip>
#include <openssl/evp.h>
#include <sstream>

namespace mimham {

namespace {

const char* side_name(Side s)
{
    switch (s) {
    case Side::Zero: return "0";
    case Side::One: return "1";
    case Side::Dot: return "dot";
    }
    return "?";
}

int slot_of(Side side, bool out)
{
    switch (side) {
    case Side::Zero: return out ? Out0 : In0;
    case Side::One: return out ? Out1 : In1;
    case Side::Dot: return out ? DotOut : DotIn;
    }
    return -1;
}

std::pair<Side, bool> side_of_slot(int slot)
{
    switch (slot) {
    case In0: return {Side::Zero, false};
    case Out0: return {Side::Zero, true};
    case DotOut: return {Side::Dot, true};
    case Out1: return {Side::One, true};
    case In1: return {Side::One, false};
    default: return {Side::Dot, false};
    }
}

std::pair<int, int> ordered(int u, int v) { return u < v ? std::pair{u, v} : std::pair{v, u}; }

class Builder {
public:
    int add(const VertexLabel& label)
    {
        int id = inst.graph.add_vertex();
        inst.labels.push_back(label);
        return id;
    }

    Instance inst;
};

void allocate_tables(Instance& inst)
{
    inst.s_i.assign(static_cast<std::size_t>(inst.n + 1), -1);
    inst.t_i.assign(static_cast<std::size_t>(inst.n + 1), -1);
    inst.p_i.assign(static_cast<std::size_t>(inst.n + 1), -1);
    inst.cycle.assign(static_cast<std::size_t>(inst.n + 1),
                      std::vector<std::array<int, 6>>(static_cast<std::size_t>(inst.m + 1), {-1, -1, -1, -1, -1, -1}));
    inst.gadgets.assign(static_cast<std::size_t>(inst.m + 1), {});
    inst.wiring.assign(static_cast<std::size_t>(inst.m + 1), {});
}

void fill_wiring(Instance& inst)
{
    for (int j = 1; j <= inst.m; ++j) {
        const auto& clause = inst.formula.clauses[j - 1];
        auto& rec = inst.wiring[j];
        rec.clause = j;
        rec.literals.clear();
        for (int h = 1; h <= static_cast<int>(clause.size()); ++h) {
            auto lit = clause[h - 1];
            Side side = lit.negated ? Side::One : Side::Zero;
            const auto& d = inst.cycle[lit.variable][j];
            auto [sigma, tau] = inst.gadgets[j].pairs[h - 1];
            rec.literals.push_back(LiteralWiring{h, lit.variable, lit.negated, {sigma, d[slot_of(side, false)]},
                                                 {tau, d[slot_of(side, true)]}});
        }
    }
}

void check_reducible_shape(const Formula& f)
{
    if (f.clauses.empty())
        throw NotReducible("formula has no clauses");
    if (f.num_vars < 1)
        throw NotReducible("formula has no variables");
    for (std::size_t j = 0; j < f.clauses.size(); ++j) {
        const auto& c = f.clauses[j];
        if (c.size() < 2 || c.size() > 3)
            throw ClauseArityUnsupported("clause " + std::to_string(j + 1) + " has " + std::to_string(c.size()) +
                                         " literals; only 2 and 3 are wired");
        for (std::size_t a = 0; a < c.size(); ++a) {
            if (c[a].variable < 1 || c[a].variable > f.num_vars)
                throw NotReducible("clause " + std::to_string(j + 1) + " uses an undeclared variable");
            for (std::size_t b = a + 1; b < c.size(); ++b)
                if (c[a].variable == c[b].variable)
                    throw NotReducible("clause " + std::to_string(j + 1) + " repeats variable " +
                                       std::to_string(c[a].variable));
        }
    }
}

} // namespace

std::string to_string(const VertexLabel& l)
{
    switch (l.kind) {
    case LabelKind::S: return "s";
    case LabelKind::T: return "t";
    case LabelKind::Apex: return "apex";
    case LabelKind::SI: return "s_i:" + std::to_string(l.i);
    case LabelKind::TI: return "t_i:" + std::to_string(l.i);
    case LabelKind::PI: return "p_i:" + std::to_string(l.i);
    case LabelKind::Var:
        return "v:" + std::to_string(l.i) + ":" + std::to_string(l.j) + ":" + side_name(l.side) + ":" +
               (l.out ? "out" : "in");
    case LabelKind::Clause: return "cg:" + std::to_string(l.i) + ":" + std::to_string(l.local);
    }
    return "?";
}

VertexLabel parse_label(std::string_view text)
{
    auto bad = [&] { return InstanceFormatError("bad vertex label '" + std::string(text) + "'"); };
    if (text == "s")
        return {LabelKind::S};
    if (text == "t")
        return {LabelKind::T};
    if (text == "apex")
        return {LabelKind::Apex};
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    for (;;) {
        auto colon = text.find(':', pos);
        parts.push_back(text.substr(pos, colon == std::string_view::npos ? std::string_view::npos : colon - pos));
        if (colon == std::string_view::npos)
            break;
        pos = colon + 1;
    }
    try {
        if (parts.size() == 2 && (parts[0] == "s_i" || parts[0] == "t_i" || parts[0] == "p_i")) {
            VertexLabel l;
            l.kind = parts[0] == "s_i" ? LabelKind::SI : parts[0] == "t_i" ? LabelKind::TI : LabelKind::PI;
            l.i = parse_int(parts[1], "label");
            return l;
        }
        if (parts.size() == 3 && parts[0] == "cg")
            return VertexLabel::clause(parse_int(parts[1], "label"), parse_int(parts[2], "label"));
        if (parts.size() == 5 && parts[0] == "v") {
            Side side;
            if (parts[3] == "0")
                side = Side::Zero;
            else if (parts[3] == "1")
                side = Side::One;
            else if (parts[3] == "dot")
                side = Side::Dot;
            else
                throw bad();
            if (parts[4] != "in" && parts[4] != "out")
                throw bad();
            return VertexLabel::var(parse_int(parts[1], "label"), parse_int(parts[2], "label"), side, parts[4] == "out");
        }
    } catch (const GraphError&) {
        throw bad();
    }
    throw bad();
}

int Instance::vertex_of(const VertexLabel& l) const
{
    auto in_range = [](const auto& vec, int idx) { return idx >= 0 && idx < static_cast<int>(vec.size()); };
    switch (l.kind) {
    case LabelKind::S: return s;
    case LabelKind::T: return t;
    case LabelKind::Apex: return apex;
    case LabelKind::SI: return in_range(s_i, l.i) ? s_i[l.i] : -1;
    case LabelKind::TI: return in_range(t_i, l.i) ? t_i[l.i] : -1;
    case LabelKind::PI: return in_range(p_i, l.i) ? p_i[l.i] : -1;
    case LabelKind::Var:
        if (!in_range(cycle, l.i) || !in_range(cycle[l.i], l.j))
            return -1;
        return cycle[l.i][l.j][slot_of(l.side, l.out)];
    case LabelKind::Clause:
        if (!in_range(gadgets, l.i) || !in_range(gadgets[l.i].vertices, l.local))
            return -1;
        return gadgets[l.i].vertices[l.local];
    }
    return -1;
}

std::vector<int> Instance::variable_gadget_vertices(int i) const
{
    std::vector<int> out{s_i[i], t_i[i]};
    for (int j = 1; j <= m; ++j)
        out.insert(out.end(), cycle[i][j].begin(), cycle[i][j].end());
    return out;
}

const ClauseGadget& GadgetCatalog::for_arity(int k) const
{
    if (k == 2)
        return gamma2;
    if (k == 3)
        return gamma3;
    throw ClauseArityUnsupported("no gadget for clauses of size " + std::to_string(k));
}

Instance reduce(const NormalizedFormula& f, const GadgetCatalog& catalog, std::string source_digest)
{
    if (f.status != NormalStatus::Reducible)
        throw NotReducible("formula was decided by normalization (" + to_string(f.status) + ")");
    return reduce(f.formula, catalog, std::move(source_digest));
}

Instance reduce(const Formula& f, const GadgetCatalog& catalog, std::string source_digest)
{
    check_reducible_shape(f);
    Builder b;
    Instance& inst = b.inst;
    inst.formula = f;
    inst.source_digest = std::move(source_digest);
    inst.n = f.num_vars;
    inst.m = static_cast<int>(f.clauses.size());
    allocate_tables(inst);
    const int n = inst.n;
    const int m = inst.m;

    inst.s = b.add({LabelKind::S});
    inst.t = b.add({LabelKind::T});
    for (int i = 1; i <= n; ++i) {
        inst.s_i[i] = b.add({LabelKind::SI, i});
        inst.t_i[i] = b.add({LabelKind::TI, i});
        if (i >= 2)
            inst.p_i[i] = b.add({LabelKind::PI, i});
    }

    // Variable gadgets: a chain of 6-cycles per variable.
    for (int i = 1; i <= n; ++i) {
        auto layout = build_variable_gadget(i, m);
        std::vector<int> to_global(static_cast<std::size_t>(layout.graph.vertex_count()), -1);
        to_global[layout.s] = inst.s_i[i];
        to_global[layout.t] = inst.t_i[i];
        for (int j = 1; j <= m; ++j)
            for (int slot = 0; slot < 6; ++slot) {
                auto [side, out] = side_of_slot(slot);
                int id = b.add(VertexLabel::var(i, j, side, out));
                inst.cycle[i][j][slot] = id;
                to_global[layout.cycle[j - 1][slot]] = id;
            }
        for (const auto& e : layout.graph.edges())
            inst.graph.add_edge(to_global[e.u], to_global[e.v]);
    }

    // Clause gadgets.
    for (int j = 1; j <= m; ++j) {
        int k = static_cast<int>(f.clauses[j - 1].size());
        const auto& gadget = catalog.for_arity(k);
        if (gadget.k != k)
            throw ClauseArityUnsupported("catalog gadget for k=" + std::to_string(k) + " declares k=" +
                                         std::to_string(gadget.k));
        auto& copy = inst.gadgets[j];
        copy.k = k;
        for (int local = 0; local < gadget.graph.vertex_count(); ++local)
            copy.vertices.push_back(b.add(VertexLabel::clause(j, local)));
        for (const auto& e : gadget.graph.edges())
            inst.graph.add_edge(copy.vertices[e.u], copy.vertices[e.v]);
        for (auto [sigma, tau] : gadget.pairs)
            copy.pairs.emplace_back(copy.vertices[sigma], copy.vertices[tau]);
    }

    // Spine.
    inst.graph.add_edge(inst.s, inst.s_i[1]);
    inst.graph.add_edge(inst.t_i[n], inst.t);
    for (int i = 1; i < n; ++i) {
        inst.graph.add_edge(inst.t_i[i], inst.p_i[i + 1]);
        inst.graph.add_edge(inst.p_i[i + 1], inst.s_i[i + 1]);
    }

    fill_wiring(inst);
    for (int j = 1; j <= m; ++j)
        for (const auto& w : inst.wiring[j].literals) {
            inst.graph.add_edge(w.sigma_edge.first, w.sigma_edge.second);
            inst.graph.add_edge(w.tau_edge.first, w.tau_edge.second);
        }

    for (auto [u, v] : dummy_edges(inst))
        inst.graph.add_edge(u, v, EdgeKind::Dummy);

    inst.order = build_linear_order(inst);
    return std::move(b.inst);
}

std::vector<std::pair<int, int>> dummy_edges(const Instance& inst)
{
    std::vector<std::pair<int, int>> out;
    const int n = inst.n;
    const int m = inst.m;
    for (int j = 1; j < m; ++j)
        for (int i = 2; i <= n; ++i)
            for (int h = 1; h < i; ++h)
                for (int b1 : {Out0, Out1})
                    for (int b2 : {In0, In1})
                        out.push_back(ordered(inst.cycle[i][j][b1], inst.cycle[h][j + 1][b2]));
    for (int i = 1; i <= n; ++i)
        for (int j = std::max(i + 1, 2); j <= n; ++j) {
            if (j == i + 1)
                continue; // spine edge t_i p_{i+1}
            out.push_back(ordered(inst.t_i[i], inst.p_i[j]));
        }
    std::sort(out.begin(), out.end());
    return out;
}

LinearOrder build_linear_order(const Instance& inst)
{
    const int n = inst.n;
    const int m = inst.m;
    std::vector<int> seq;
    seq.reserve(static_cast<std::size_t>(inst.graph.vertex_count()));
    auto column = [&](int i, int j) {
        for (int slot = 0; slot < 6; ++slot)
            seq.push_back(inst.cycle[i][j][slot]);
    };
    auto gadget = [&](int j) {
        const auto& g = inst.gadgets[j];
        for (auto [sigma, tau] : g.pairs) {
            seq.push_back(sigma);
            seq.push_back(tau);
        }
        for (int v : g.vertices)
            if (std::none_of(g.pairs.begin(), g.pairs.end(),
                             [v](auto p) { return p.first == v || p.second == v; }))
                seq.push_back(v);
    };

    seq.push_back(inst.s);
    for (int i = 1; i <= n; ++i) {
        if (i >= 2)
            seq.push_back(inst.p_i[i]);
        seq.push_back(inst.s_i[i]);
        column(i, 1);
        if (m == 1)
            seq.push_back(inst.t_i[i]);
    }
    if (m == 1) {
        seq.push_back(inst.t);
        gadget(1);
    } else {
        gadget(1);
        for (int j = 2; j < m; ++j) {
            for (int i = 1; i <= n; ++i)
                column(i, j);
            gadget(j);
        }
        for (int i = 1; i <= n; ++i) {
            column(i, m);
            seq.push_back(inst.t_i[i]);
        }
        seq.push_back(inst.t);
        gadget(m);
    }
    if (inst.apex >= 0)
        seq.push_back(inst.apex);
    return LinearOrder(std::move(seq));
}

Instance to_cycle_instance(const Instance& inst)
{
    if (inst.kind == ProblemKind::Cycle)
        throw AlreadyCycleKind("instance is already a cycle instance");
    Instance out = inst;
    out.kind = ProblemKind::Cycle;
    out.apex = out.graph.add_vertex();
    out.labels.push_back({LabelKind::Apex});
    out.graph.add_edge(out.apex, out.s);
    out.graph.add_edge(out.apex, out.t);
    std::vector<int> seq(inst.order.sequence().begin(), inst.order.sequence().end());
    seq.push_back(out.apex);
    out.order = LinearOrder(std::move(seq));
    return out;
}

std::vector<std::string> check_structure(const Instance& inst)
{
    std::vector<std::string> problems;
    const auto& g = inst.graph;
    int endpoint_degree = inst.kind == ProblemKind::Path ? 1 : 2;
    if (g.degree(inst.s) != endpoint_degree)
        problems.push_back("s has degree " + std::to_string(g.degree(inst.s)));
    if (g.degree(inst.t) != endpoint_degree)
        problems.push_back("t has degree " + std::to_string(g.degree(inst.t)));
    if (inst.apex >= 0 && g.degree(inst.apex) != 2)
        problems.push_back("apex has degree " + std::to_string(g.degree(inst.apex)));
    for (int i = 1; i <= inst.n; ++i)
        for (int j = 1; j <= inst.m; ++j)
            for (int slot : {DotIn, DotOut})
                if (g.degree(inst.cycle[i][j][slot]) != 2)
                    problems.push_back(to_string(inst.labels[inst.cycle[i][j][slot]]) + " has degree " +
                                       std::to_string(g.degree(inst.cycle[i][j][slot])));
    for (int j = 1; j <= inst.m; ++j) {
        const auto& copy = inst.gadgets[j];
        std::vector<char> inside(static_cast<std::size_t>(g.vertex_count()), 0);
        for (int v : copy.vertices)
            inside[v] = 1;
        for (int v : copy.vertices) {
            int external = 0;
            for (int w : g.neighbors(v))
                external += inside[w] ? 0 : 1;
            bool distinguished = std::any_of(copy.pairs.begin(), copy.pairs.end(),
                                             [v](auto p) { return p.first == v || p.second == v; });
            if (external != (distinguished ? 1 : 0))
                problems.push_back(to_string(inst.labels[v]) + " has " + std::to_string(external) +
                                   " edges leaving its gadget");
        }
    }
    std::map<VertexLabel, int> seen;
    for (int v = 0; v < static_cast<int>(inst.labels.size()); ++v)
        if (!seen.emplace(inst.labels[v], v).second)
            problems.push_back("label " + to_string(inst.labels[v]) + " used twice");
    if (static_cast<int>(inst.labels.size()) != g.vertex_count())
        problems.push_back("label count differs from vertex count");
    return problems;
}

std::string sha256_hex(std::string_view bytes)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
    std::ostringstream out;
    for (unsigned int i = 0; i < len; ++i)
        out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    return out.str();
}

std::string write_instance(const Instance& inst)
{
    std::ostringstream out;
    out << "source " << (inst.source_digest.empty() ? "-" : inst.source_digest) << '\n';
    out << "kind " << (inst.kind == ProblemKind::Path ? "path" : "cycle") << '\n';
    out << "cnf " << inst.n << ' ' << inst.m << '\n';
    for (int j = 1; j <= inst.m; ++j) {
        out << "clause " << j;
        for (auto lit : inst.formula.clauses[j - 1])
            out << ' ' << lit.to_dimacs();
        out << '\n';
    }
    for (int j = 1; j <= inst.m; ++j)
        for (std::size_t h = 0; h < inst.gadgets[j].pairs.size(); ++h)
            out << "cpair " << j << ' ' << h + 1 << ' ' << inst.gadgets[j].pairs[h].first << ' '
                << inst.gadgets[j].pairs[h].second << '\n';
    out << write_graph(inst.graph);
    for (int v = 0; v < inst.graph.vertex_count(); ++v)
        out << "vlabel " << v << ' ' << to_string(inst.labels[v]) << '\n';
    out << write_order(inst.order);
    return out.str();
}

Instance read_instance(std::string_view text)
{
    Instance inst;
    Graph g;
    try {
        g = read_graph(text);
    } catch (const GraphError& e) {
        throw InstanceFormatError(e.what());
    }
    inst.graph = g;
    inst.labels.assign(static_cast<std::size_t>(g.vertex_count()), {});
    std::vector<char> labelled(static_cast<std::size_t>(g.vertex_count()), 0);
    bool have_kind = false;
    bool have_cnf = false;
    std::vector<std::tuple<int, int, int, int>> cpairs;
    int line_no = 0;
    try {
        for (auto line : split_lines(text)) {
            ++line_no;
            auto tok = split_tokens(line);
            if (tok.empty())
                continue;
            auto where = "instance line " + std::to_string(line_no);
            if (tok[0] == "source" && tok.size() == 2) {
                inst.source_digest = tok[1] == "-" ? "" : std::string(tok[1]);
            } else if (tok[0] == "kind" && tok.size() == 2) {
                if (tok[1] == "path")
                    inst.kind = ProblemKind::Path;
                else if (tok[1] == "cycle")
                    inst.kind = ProblemKind::Cycle;
                else
                    throw InstanceFormatError(where + ": unknown kind");
                have_kind = true;
            } else if (tok[0] == "cnf" && tok.size() == 3) {
                inst.n = parse_int(tok[1], where);
                inst.m = parse_int(tok[2], where);
                inst.formula.num_vars = inst.n;
                have_cnf = true;
            } else if (tok[0] == "clause") {
                if (tok.size() < 3 || parse_int(tok[1], where) != static_cast<int>(inst.formula.clauses.size()) + 1)
                    throw InstanceFormatError(where + ": clauses must be listed in order");
                Clause c;
                for (std::size_t x = 2; x < tok.size(); ++x)
                    c.push_back(Literal::from_dimacs(parse_int(tok[x], where)));
                inst.formula.clauses.push_back(std::move(c));
            } else if (tok[0] == "cpair" && tok.size() == 5) {
                cpairs.emplace_back(parse_int(tok[1], where), parse_int(tok[2], where), parse_int(tok[3], where),
                                    parse_int(tok[4], where));
            } else if (tok[0] == "vlabel" && tok.size() == 3) {
                int v = parse_int(tok[1], where);
                if (v < 0 || v >= g.vertex_count() || labelled[v])
                    throw InstanceFormatError(where + ": bad or repeated vertex id");
                inst.labels[v] = parse_label(tok[2]);
                labelled[v] = 1;
            }
        }
        inst.order = read_order(text);
    } catch (const GraphError& e) {
        throw InstanceFormatError(e.what());
    }
    if (!have_kind || !have_cnf)
        throw InstanceFormatError("missing 'kind' or 'cnf' line");
    if (static_cast<int>(inst.formula.clauses.size()) != inst.m)
        throw InstanceFormatError("clause count differs from 'cnf' line");
    if (std::find(labelled.begin(), labelled.end(), 0) != labelled.end())
        throw InstanceFormatError("some vertex has no label");
    if (inst.order.size() != g.vertex_count())
        throw InstanceFormatError("order length differs from vertex count");

    allocate_tables(inst);
    auto check_index = [&](int idx, int hi, const VertexLabel& l) {
        if (idx < 1 || idx > hi)
            throw InstanceFormatError("label " + to_string(l) + " out of range");
    };
    for (int v = 0; v < g.vertex_count(); ++v) {
        const auto& l = inst.labels[v];
        switch (l.kind) {
        case LabelKind::S: inst.s = v; break;
        case LabelKind::T: inst.t = v; break;
        case LabelKind::Apex: inst.apex = v; break;
        case LabelKind::SI: check_index(l.i, inst.n, l); inst.s_i[l.i] = v; break;
        case LabelKind::TI: check_index(l.i, inst.n, l); inst.t_i[l.i] = v; break;
        case LabelKind::PI: check_index(l.i, inst.n, l); inst.p_i[l.i] = v; break;
        case LabelKind::Var:
            check_index(l.i, inst.n, l);
            check_index(l.j, inst.m, l);
            inst.cycle[l.i][l.j][slot_of(l.side, l.out)] = v;
            break;
        case LabelKind::Clause: {
            check_index(l.i, inst.m, l);
            auto& verts = inst.gadgets[l.i].vertices;
            if (static_cast<int>(verts.size()) <= l.local)
                verts.resize(static_cast<std::size_t>(l.local + 1), -1);
            verts[l.local] = v;
            break;
        }
        }
    }
    if (inst.s < 0 || inst.t < 0)
        throw InstanceFormatError("missing s or t");
    for (int i = 1; i <= inst.n; ++i) {
        if (inst.s_i[i] < 0 || inst.t_i[i] < 0 || (i >= 2 && inst.p_i[i] < 0))
            throw InstanceFormatError("missing spine vertex for variable " + std::to_string(i));
        for (int j = 1; j <= inst.m; ++j)
            for (int slot = 0; slot < 6; ++slot)
                if (inst.cycle[i][j][slot] < 0)
                    throw InstanceFormatError("missing cycle vertex for variable " + std::to_string(i));
    }
    for (auto [j, h, sigma, tau] : cpairs) {
        if (j < 1 || j > inst.m)
            throw InstanceFormatError("cpair clause out of range");
        auto& pairs = inst.gadgets[j].pairs;
        if (h != static_cast<int>(pairs.size()) + 1)
            throw InstanceFormatError("cpair lines must be listed in order");
        pairs.emplace_back(sigma, tau);
    }
    for (int j = 1; j <= inst.m; ++j) {
        auto& copy = inst.gadgets[j];
        copy.k = static_cast<int>(inst.formula.clauses[j - 1].size());
        if (static_cast<int>(copy.pairs.size()) != copy.k ||
            std::find(copy.vertices.begin(), copy.vertices.end(), -1) != copy.vertices.end())
            throw InstanceFormatError("clause gadget " + std::to_string(j) + " is incomplete");
    }
    fill_wiring(inst);
    return inst;
}

std::string wiring_report(const Instance& inst)
{
    std::ostringstream out;
    out << "clause wiring for " << to_string(inst.formula) << '\n';
    for (int j = 1; j <= inst.m; ++j) {
        out << "C" << j << " (k=" << inst.gadgets[j].k << ")\n";
        for (const auto& w : inst.wiring[j].literals) {
            out << "  h=" << w.pair << " literal " << (w.negated ? "~x" : "x") << w.variable << ": "
                << to_string(inst.labels[w.sigma_edge.first]) << " -- " << to_string(inst.labels[w.sigma_edge.second])
                << ", " << to_string(inst.labels[w.tau_edge.first]) << " -- "
                << to_string(inst.labels[w.tau_edge.second]) << '\n';
        }
    }
    return out.str();
}

} // namespace mimham
