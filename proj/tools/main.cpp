// mimham: command-line front end for the reduction workbench.

#include "mimham/counterexample.hpp"
#include "mimham/formula.hpp"
#include "mimham/gadgets.hpp"
#include "mimham/graph.hpp"
#include "mimham/ham.hpp"
#include "mimham/mim.hpp"
#include "mimham/reduction.hpp"
#include "mimham/witness.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace mimham;

namespace {

constexpr const char* kVersion = "1.0.0";

enum Exit : int { Ok = 0, Negative = 1, BadInput = 2, DecidedByNormalization = 3, CapExceeded = 4, Budget = 5 };

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BudgetStop : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct VerifyFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Shared flags plus the manifest bookkeeping of one run.
struct Run {
    std::string subcommand;
    std::uint64_t seed = 1;
    std::uint64_t budget_nodes = 2'000'000'000;
    std::uint64_t budget_ms = 0;
    int cap = -1;
    bool cycle = false;
    std::string format = "text";
    bool slow_gadget_check = false;
    std::vector<std::pair<std::string, std::string>> inputs; // path, digest
    std::vector<std::string> outputs;

    std::string read(const std::string& path)
    {
        std::string text = slurp(path);
        inputs.emplace_back(path, sha256_hex(text));
        return text;
    }

    void write(const fs::path& path, const std::string& text)
    {
        if (path.has_parent_path())
            fs::create_directories(path.parent_path());
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw InputError("cannot write " + path.string());
        out << text;
        outputs.push_back(path.string());
    }

    SearchOptions search() const
    {
        SearchOptions o;
        o.node_budget = budget_nodes;
        o.time_budget_ms = budget_ms;
        return o;
    }

    // Written next to the outputs; nothing time-dependent goes in, so reruns match byte for byte.
    void manifest(const fs::path& path)
    {
        nlohmann::json j;
        j["tool"] = "mimham";
        j["version"] = kVersion;
        j["subcommand"] = subcommand;
        j["seed"] = seed;
        j["budgets"] = {{"nodes", budget_nodes}, {"ms", budget_ms}};
        if (cap >= 0)
            j["cap"] = cap;
        j["cycle"] = cycle;
        j["inputs"] = nlohmann::json::array();
        for (const auto& [p, d] : inputs)
            j["inputs"].push_back({{"path", p}, {"sha256", d}});
        j["outputs"] = outputs;
        std::ofstream out(path, std::ios::binary);
        out << j.dump(2) << '\n';
    }
};

fs::path manifest_path_for(const fs::path& out)
{
    if (fs::is_directory(out))
        return out / "manifest.json";
    return fs::path(out.string() + ".manifest.json");
}

GadgetCatalog load_catalog(Run& run, const std::string& path)
{
    GadgetCatalog cat;
    if (path.empty())
        return cat;
    for (auto& g : read_catalog(run.read(path))) {
        if (g.k == 2)
            cat.gamma2 = g;
        else if (g.k == 3)
            cat.gamma3 = g;
    }
    return cat;
}

bool looks_like_instance(const std::string& text) { return text.find("\nkind ") != std::string::npos || text.starts_with("kind "); }

Instance load_instance(Run& run, const std::string& path) { return read_instance(run.read(path)); }

std::vector<std::string> label_strings(const Instance& inst)
{
    std::vector<std::string> out;
    for (const auto& l : inst.labels)
        out.push_back(to_string(l));
    return out;
}

std::string describe_matching(const MatchingWitness& w, const std::vector<std::string>& labels)
{
    std::ostringstream os;
    for (auto [u, v] : w.edges) {
        auto name = [&](int x) { return labels.empty() ? std::to_string(x) : labels[x]; };
        os << "  " << name(u) << " -- " << name(v) << '\n';
    }
    return os.str();
}

int cmd_reduce(Run& run, const std::string& cnf, const std::string& out_dir, const std::string& catalog_path)
{
    std::string text = run.read(cnf);
    Formula f = parse_dimacs(text);
    NormalizedFormula nf = normalize(f);
    if (nf.status != NormalStatus::Reducible) {
        std::cout << to_string(nf.status) << " by propagation\n";
        return DecidedByNormalization;
    }
    GadgetCatalog cat = load_catalog(run, catalog_path);
    Instance inst = reduce(nf, cat, sha256_hex(text));
    if (run.cycle)
        inst = to_cycle_instance(inst);
    fs::path dir(out_dir);
    fs::create_directories(dir);
    run.write(dir / "instance.txt", write_instance(inst));
    run.write(dir / "order.txt", write_order(inst.order));
    run.write(dir / "wiring.txt", wiring_report(inst));
    run.manifest(dir / "manifest.json");
    std::cout << "n=" << inst.n << " m=" << inst.m << " vertices=" << inst.graph.vertex_count()
              << " edges=" << inst.graph.edge_count() << " dummy=" << inst.graph.dummy_count()
              << " kind=" << (inst.kind == ProblemKind::Cycle ? "cycle" : "path") << '\n';
    return Ok;
}

int cmd_certify(Run& run, const std::string& path)
{
    std::string text = run.read(path);
    Graph g;
    LinearOrder order;
    std::vector<std::string> labels;
    int default_cap = 25;
    if (looks_like_instance(text)) {
        Instance inst = read_instance(text);
        g = inst.graph;
        order = inst.order;
        labels = label_strings(inst);
        if (inst.kind == ProblemKind::Cycle)
            default_cap = 26;
    } else {
        g = read_graph(text);
        order = text.find("order") != std::string::npos ? read_order(text) : LinearOrder::identity(g.vertex_count());
        if (order.size() != g.vertex_count())
            throw InputError("order does not cover the graph");
    }
    const int cap = run.cap >= 0 ? run.cap : default_cap;
    run.cap = cap;
    WidthReport rep = mim_width(g, order, cap);
    std::map<int, int> histogram;
    for (int v : rep.per_prefix)
        ++histogram[v];
    std::cout << "prefixes=" << rep.per_prefix.size() << " histogram:";
    for (auto [v, c] : histogram)
        std::cout << ' ' << v << ':' << c;
    std::cout << '\n';
    if (rep.exceeded) {
        std::cout << "CAP EXCEEDED: width > " << cap << " at prefix " << rep.argmax_position << '\n'
                  << "induced matching of size " << rep.witness.size() << ":\n"
                  << describe_matching(rep.witness, labels);
        return CapExceeded;
    }
    std::cout << "width=" << rep.width << " cap=" << cap << " argmax_prefix=" << rep.argmax_position << '\n'
              << "witness matching:\n"
              << describe_matching(rep.witness, labels);
    return Ok;
}

int cmd_solve(Run& run, const std::string& path, const std::string& out)
{
    Instance inst = load_instance(run, path);
    SearchOptions so = run.search();
    const bool cycle = inst.kind == ProblemKind::Cycle;
    SearchResult r = cycle ? find_ham_cycle(inst.graph, so) : find_ham_path(inst.graph, so);
    const char* what = cycle ? "HAMILTONIAN CYCLE" : "HAMILTONIAN PATH";
    std::cout << "nodes=" << r.nodes << '\n';
    if (r.status == SearchStatus::BudgetExceeded) {
        std::cout << "BUDGET EXCEEDED\n";
        return Budget;
    }
    if (r.status == SearchStatus::NotFound) {
        std::cout << "NO " << what << '\n';
        return Negative;
    }
    std::cout << what << " FOUND\n";
    if (!out.empty()) {
        HamPath p = cycle ? path_from_cycle(inst, r.path) : r.path;
        run.write(out, write_path(p));
        run.manifest(manifest_path_for(out));
    }
    return Ok;
}

int cmd_witness(Run& run, const std::string& path, const std::string& assignment, const std::string& out)
{
    Instance inst = load_instance(run, path);
    Assignment a;
    if (assignment.empty()) {
        auto sat = sat_oracle(inst.formula);
        if (!sat) {
            std::cout << "UNSATISFIABLE\n";
            return Negative;
        }
        a = *sat;
    } else {
        a = read_assignment(run.read(assignment));
    }
    HamPath p = path_from_assignment(inst, a);
    PathCheck chk = verify_path(inst.graph, p, true, true);
    if (!chk.ok)
        throw WitnessError("built path fails verification: " + chk.message);
    std::cout << "path of " << p.size() << " vertices verified\n";
    if (!out.empty()) {
        run.write(out, write_path(p));
        run.manifest(manifest_path_for(out));
    } else {
        std::cout << write_path(p);
    }
    return Ok;
}

HamPath load_path_for(Run& run, const Instance& inst, const std::string& path_file)
{
    HamPath p = read_path(run.read(path_file));
    if (inst.kind == ProblemKind::Cycle && std::find(p.begin(), p.end(), inst.apex) != p.end())
        p = path_from_cycle(inst, p);
    return p;
}

int cmd_extract(Run& run, const std::string& path, const std::string& path_file, const std::string& out)
{
    Instance inst = load_instance(run, path);
    HamPath p = load_path_for(run, inst, path_file);
    Assignment a = assignment_from_path(inst, p);
    std::string text = write_assignment(a);
    std::cout << text;
    std::cout << (evaluate(inst.formula, a) ? "satisfies formula\n" : "does not satisfy formula\n");
    if (!out.empty()) {
        run.write(out, text);
        run.manifest(manifest_path_for(out));
    }
    return evaluate(inst.formula, a) ? Ok : Negative;
}

int cmd_respect(Run& run, const std::string& path, const std::string& path_file)
{
    Instance inst = load_instance(run, path);
    HamPath p = load_path_for(run, inst, path_file);
    PathCheck chk = verify_instance_path(inst, p);
    if (!chk.ok) {
        std::cout << "not a Hamiltonian path: " << chk.message << '\n';
        return Negative;
    }
    bool ok = true;
    PathCheck dummy = verify_instance_path(inst, p, true);
    std::cout << "dummy-free: " << (dummy.ok ? "yes" : "no") << '\n';
    ok &= dummy.ok;
    Respectability r = check_respectable(inst, p, inst.n, inst.m);
    std::cout << "respectable(" << inst.n << "," << inst.m << "): "
              << (r.ok ? "yes" : "no, condition " + std::to_string(r.condition) + ": " + r.detail) << '\n';
    ok &= r.ok;
    bool dt = consecutive_dt_check(inst, p);
    std::cout << "dt-triples consecutive: " << (dt ? "yes" : "no") << '\n';
    ok &= dt;
    return ok ? Ok : Negative;
}

int cmd_counterexample(Run& run, int min_n, int max_n, bool allow_disconnected, const std::string& out_dir)
{
    CounterexampleOptions o;
    o.min_n = min_n;
    o.max_n = max_n;
    o.require_connected = !allow_disconnected;
    o.h_node_budget = run.budget_nodes;
    CounterexampleStats st;
    std::optional<Counterexample> ce;
    try {
        ce = search_counterexample(o, &st);
    } catch (const BudgetExhausted& e) {
        throw BudgetStop(e.what());
    }
    std::cout << "non-Hamiltonian candidates=" << st.graphs << " orderings=" << st.orderings
              << " undecided=" << st.h_budget_exceeded << '\n';
    if (!ce) {
        std::cout << "NO COUNTEREXAMPLE for n in [" << min_n << ", " << max_n << "]\n";
        return st.h_budget_exceeded ? Budget : Negative;
    }
    Graph g = ce->g.graph();
    if (find_ham_cycle(g).status != SearchStatus::NotFound || !is_ham_cycle(ce->h.h, ce->cycle))
        throw VerifyFailure("counterexample failed re-verification");
    std::ostringstream report;
    report << "G: bipartite, n=" << ce->g.n << ", " << ce->g.edges.size() << " edges, no Hamiltonian cycle\n";
    for (auto [i, j] : ce->g.edges)
        report << "  a" << i << " -- b" << j << '\n';
    report << "H: " << ce->h.h.vertex_count() << " vertices, " << ce->h.h.edge_count() << " edges\n";
    report << "Hamiltonian cycle of H:";
    for (int v : ce->cycle)
        report << ' ' << ce->h.labels[v];
    report << '\n';
    std::cout << report.str();
    if (!out_dir.empty()) {
        fs::path dir(out_dir);
        fs::create_directories(dir);
        run.write(dir / "g.bip", write_bipartite(ce->g));
        run.write(dir / "g.graph", write_graph(g));
        run.write(dir / "h.graph", write_graph(ce->h.h));
        run.write(dir / "h.cycle", write_path(ce->cycle));
        run.write(dir / "report.txt", report.str());
        if (run.format == "dot") {
            std::vector<std::string> gl;
            for (int i = 1; i <= ce->g.n; ++i)
                gl.push_back("a" + std::to_string(i));
            for (int j = 1; j <= ce->g.n; ++j)
                gl.push_back("b" + std::to_string(j));
            run.write(dir / "g.dot", to_dot(g, gl, "G"));
            run.write(dir / "h.dot", pp08_dot(ce->h));
        }
        run.manifest(dir / "manifest.json");
    }
    return Ok;
}

int cmd_export(Run& run, const std::string& path, const std::string& out)
{
    std::string text = run.read(path);
    std::string result;
    if (looks_like_instance(text)) {
        Instance inst = read_instance(text);
        auto labels = label_strings(inst);
        result = run.format == "dot" ? to_dot(inst.graph, labels) : write_graph(inst.graph) + write_order(inst.order);
    } else if (text.find("bipartite") != std::string::npos) {
        BipartiteInstance b = read_bipartite(text);
        PP08Output h = pp08_reduce(b);
        result = run.format == "dot" ? pp08_dot(h) : write_graph(h.h);
    } else {
        Graph g = read_graph(text);
        result = run.format == "dot" ? to_dot(g) : write_graph(g);
    }
    if (out.empty()) {
        std::cout << result;
    } else {
        run.write(out, result);
        run.manifest(manifest_path_for(out));
    }
    return Ok;
}

bool report_contract(const ClauseGadget& g, bool slow)
{
    ContractReport r = verify_gadget_contract(g);
    bool ok = r.ok && g.graph.vertex_count() <= kGadgetVertexBound;
    std::cout << "gamma" << g.k << ": vertices=" << g.graph.vertex_count() << " edges=" << g.graph.edge_count()
              << " forests=" << r.forests << " contract=" << (r.ok ? "ok" : "FAILED " + r.reason) << '\n';
    if (slow) {
        ContractReport s = verify_gadget_contract_slow(g);
        std::cout << "gamma" << g.k << ": slow check forests=" << s.forests
                  << " contract=" << (s.ok ? "ok" : "FAILED " + s.reason) << '\n';
        ok = ok && s.ok && s.forests == r.forests;
    }
    return ok;
}

int cmd_gadgets(Run& run, const std::string& action, const std::string& catalog_path, const std::string& out,
                bool shipped)
{
    std::vector<ClauseGadget> gadgets;
    if (action == "build") {
        if (shipped) {
            gadgets = {build_clause_gadget(2), build_clause_gadget(3)};
        } else {
            GadgetSearchOptions o;
            o.seed = run.seed;
            for (int k : {2, 3}) {
                std::optional<ClauseGadget> g;
                try {
                    g = search_gadget(k, kGadgetVertexBound, o);
                } catch (const BudgetExhausted& e) {
                    throw BudgetStop(e.what());
                }
                if (!g) {
                    std::cout << "no gadget for k=" << k << " within " << kGadgetVertexBound << " vertices\n";
                    return Negative;
                }
                gadgets.push_back(*g);
            }
        }
    } else {
        gadgets = catalog_path.empty() ? std::vector{build_clause_gadget(2), build_clause_gadget(3)}
                                       : read_catalog(run.read(catalog_path));
    }
    bool ok = true;
    for (const auto& g : gadgets)
        ok &= report_contract(g, run.slow_gadget_check);
    if (action == "build" && ok && !out.empty()) {
        run.write(out, write_catalog(gadgets));
        run.manifest(manifest_path_for(out));
    }
    if (action == "show")
        std::cout << write_catalog(gadgets);
    return ok ? Ok : Negative;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Reduction workbench: 3-CNF to Hamiltonian path instances of bounded linear mim-width"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    Run run;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--seed", run.seed, "Seed for randomized searches");
        sub->add_option("--budget-nodes", run.budget_nodes, "Search node budget");
        sub->add_option("--budget-ms", run.budget_ms, "Search time budget in milliseconds (0: none)");
    };

    std::string in, out, extra, catalog;
    int min_n = 2, max_n = 6;
    bool allow_disconnected = false, shipped = false;
    std::string action;

    auto* reduce_cmd = app.add_subcommand("reduce", "Compile a DIMACS formula into an instance");
    reduce_cmd->add_option("cnf", in, "DIMACS CNF file")->required();
    reduce_cmd->add_option("-o,--out", out, "Output directory")->required();
    reduce_cmd->add_flag("--cycle", run.cycle, "Emit the Hamiltonian cycle variant");
    reduce_cmd->add_option("--catalog", catalog, "Gadget catalog file");
    common(reduce_cmd);

    auto* certify_cmd = app.add_subcommand("certify", "Certify the linear mim-width of an instance order");
    certify_cmd->add_option("instance", in, "Instance file, or graph file with an order line")->required();
    certify_cmd->add_option("--cap", run.cap, "Width cap (default 25 for paths, 26 for cycles)");

    auto* solve_cmd = app.add_subcommand("solve", "Search a Hamiltonian path (or cycle) of an instance");
    solve_cmd->add_option("instance", in)->required();
    solve_cmd->add_option("-o,--out", out, "Write the path here");
    common(solve_cmd);

    auto* witness_cmd = app.add_subcommand("witness", "Build the Hamiltonian path for an assignment");
    witness_cmd->add_option("instance", in)->required();
    witness_cmd->add_option("assignment", extra, "Assignment file (default: first satisfying assignment)");
    witness_cmd->add_option("-o,--out", out);

    auto* extract_cmd = app.add_subcommand("extract", "Read the assignment off a Hamiltonian path");
    extract_cmd->add_option("instance", in)->required();
    extract_cmd->add_option("path", extra)->required();
    extract_cmd->add_option("-o,--out", out);

    auto* respect_cmd = app.add_subcommand("respect", "Check respectability of a Hamiltonian path");
    respect_cmd->add_option("instance", in)->required();
    respect_cmd->add_option("path", extra)->required();

    auto* ce_cmd = app.add_subcommand("counterexample", "Search a counterexample to the PP08 reduction");
    ce_cmd->add_option("--min-n", min_n);
    ce_cmd->add_option("--max-n", max_n);
    ce_cmd->add_flag("--allow-disconnected", allow_disconnected);
    ce_cmd->add_option("-o,--out", out, "Output directory");
    ce_cmd->add_option("--format", run.format)->check(CLI::IsMember({"dot", "text"}));
    common(ce_cmd);

    auto* export_cmd = app.add_subcommand("export", "Export an instance, graph or bipartite file");
    export_cmd->add_option("input", in)->required();
    export_cmd->add_option("-o,--out", out);
    export_cmd->add_option("--format", run.format)->check(CLI::IsMember({"dot", "text"}));

    auto* gadgets_cmd = app.add_subcommand("gadgets", "Build, verify or show the clause gadget catalog");
    gadgets_cmd->add_option("action", action)->required()->check(CLI::IsMember({"build", "verify", "show"}));
    gadgets_cmd->add_option("--catalog", catalog, "Catalog to verify or show");
    gadgets_cmd->add_option("-o,--out", out, "Catalog file written by build");
    gadgets_cmd->add_flag("--shipped", shipped, "build: write the built-in gadgets instead of searching");
    gadgets_cmd->add_flag("--slow-gadget-check", run.slow_gadget_check, "Also run the edge-subset verifier");
    gadgets_cmd->add_option("--seed", run.seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? Ok : BadInput;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        run.subcommand = sub->get_name();
        if (sub == reduce_cmd)
            return cmd_reduce(run, in, out, catalog);
        if (sub == certify_cmd)
            return cmd_certify(run, in);
        if (sub == solve_cmd)
            return cmd_solve(run, in, out);
        if (sub == witness_cmd)
            return cmd_witness(run, in, extra, out);
        if (sub == extract_cmd)
            return cmd_extract(run, in, extra, out);
        if (sub == respect_cmd)
            return cmd_respect(run, in, extra);
        if (sub == ce_cmd)
            return cmd_counterexample(run, min_n, max_n, allow_disconnected, out);
        if (sub == export_cmd)
            return cmd_export(run, in, out);
        if (sub == gadgets_cmd)
            return cmd_gadgets(run, action, catalog, out, shipped);
    } catch (const BudgetStop& e) {
        std::cerr << "budget exhausted: " << e.what() << '\n';
        return Budget;
    } catch (const IrregularTraversal& e) {
        std::cerr << "irregular traversal of variable " << e.variable() << " at column " << e.column() << '\n';
        return Negative;
    } catch (const NotSatisfying& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Negative;
    } catch (const VerifyFailure& e) {
        std::cerr << "verification failed: " << e.what() << '\n';
        return Negative;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return BadInput;
    }
    return BadInput;
}
