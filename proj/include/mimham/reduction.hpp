#pragma once

#include "mimham/formula.hpp"
#include "mimham/gadgets.hpp"
#include "mimham/graph.hpp"

#include <array>
#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mimham {

enum class LabelKind : std::uint8_t { S, T, Apex, SI, TI, PI, Var, Clause };
enum class Side : std::uint8_t { Zero, One, Dot };

struct VertexLabel {
    LabelKind kind = LabelKind::S;
    int i = 0;          // variable index for SI/TI/PI/Var, clause index for Clause
    int j = 0;          // column for Var
    Side side = Side::Zero;
    bool out = false;   // Var: in/out
    int local = 0;      // Clause: catalog vertex id

    auto operator<=>(const VertexLabel&) const = default;

    static VertexLabel var(int i, int j, Side side, bool out) { return {LabelKind::Var, i, j, side, out, 0}; }
    static VertexLabel clause(int j, int local) { return {LabelKind::Clause, j, 0, Side::Zero, false, local}; }
};

/// Canonical strings: s, t, apex, s_i:<i>, t_i:<i>, p_i:<i>, v:<i>:<j>:<0|1|dot>:<in|out>, cg:<j>:<local>.
std::string to_string(const VertexLabel& label);
VertexLabel parse_label(std::string_view text);

enum class ProblemKind : std::uint8_t { Path, Cycle };

struct LiteralWiring {
    int pair = 0;          // h, 1-based
    int variable = 0;      // j_h
    bool negated = false;
    std::pair<int, int> sigma_edge; // (sigma_h, v^{b,in}_{j_h, j})
    std::pair<int, int> tau_edge;   // (tau_h, v^{b,out}_{j_h, j})
};

struct WiringRecord {
    int clause = 0;
    std::vector<LiteralWiring> literals;
};

struct ClauseCopy {
    int k = 0;
    std::vector<int> vertices;               // global id of each catalog vertex
    std::vector<std::pair<int, int>> pairs;  // global (sigma_h, tau_h)
};

struct Instance {
    Formula formula;          // the normalized formula the graph encodes
    std::string source_digest;
    ProblemKind kind = ProblemKind::Path;
    int n = 0;
    int m = 0;
    Graph graph;
    std::vector<VertexLabel> labels;
    LinearOrder order;

    // Index tables (1-based variable/clause/column indices; slot 0 unused).
    int s = -1;
    int t = -1;
    int apex = -1;
    std::vector<int> s_i;
    std::vector<int> t_i;
    std::vector<int> p_i;                               // p_i[1] = -1
    std::vector<std::vector<std::array<int, 6>>> cycle; // cycle[i][j][slot]
    std::vector<ClauseCopy> gadgets;                    // gadgets[j]
    std::vector<WiringRecord> wiring;                   // wiring[j]

    int vertex_of(const VertexLabel& label) const;
    /// Variable gadget V_i: s_i, t_i and all its cycle vertices.
    std::vector<int> variable_gadget_vertices(int i) const;
};

class ReductionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class NotReducible : public ReductionError {
public:
    using ReductionError::ReductionError;
};
class ClauseArityUnsupported : public ReductionError {
public:
    using ReductionError::ReductionError;
};
class AlreadyCycleKind : public ReductionError {
public:
    using ReductionError::ReductionError;
};
class InstanceFormatError : public ReductionError {
public:
    using ReductionError::ReductionError;
};

/// Gadgets used for clauses of size 2 and 3.
struct GadgetCatalog {
    ClauseGadget gamma2 = build_clause_gadget(2);
    ClauseGadget gamma3 = build_clause_gadget(3);

    const ClauseGadget& for_arity(int k) const;
};

/// Builds G for a normalized formula, including dummy edges and the linear order.
Instance reduce(const NormalizedFormula& f, const GadgetCatalog& catalog = {}, std::string source_digest = {});
/// Same, for a formula that already satisfies the Reducible shape.
Instance reduce(const Formula& f, const GadgetCatalog& catalog = {}, std::string source_digest = {});

/// Dummy edges for the core construction in `inst`, as (u, v) pairs with u < v.
std::vector<std::pair<int, int>> dummy_edges(const Instance& inst);

inline std::size_t dummy_count_between_columns(int n, int m) { return static_cast<std::size_t>(2 * n * (n - 1) * (m - 1)); }
inline std::size_t dummy_count_spine(int n) { return n < 3 ? 0 : static_cast<std::size_t>((n - 1) * (n - 2) / 2); }

LinearOrder build_linear_order(const Instance& inst);

/// Adds the apex adjacent to s and t, appended last in the order.
Instance to_cycle_instance(const Instance& inst);

/// Structural invariants (degrees of s, t, dot vertices, one external edge per sigma/tau).
/// Returns a list of violations; empty when the instance is well formed.
std::vector<std::string> check_structure(const Instance& inst);

/// Lowercase hex SHA-256 of `bytes`.
std::string sha256_hex(std::string_view bytes);

std::string write_instance(const Instance& inst);
Instance read_instance(std::string_view text);

/// Human-readable clause wiring report.
std::string wiring_report(const Instance& inst);

} // namespace mimham
