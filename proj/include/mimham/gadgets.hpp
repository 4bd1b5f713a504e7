#pragma once

#include "mimham/graph.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mimham {

// Positions inside one 6-cycle D_i^j, in cycle order.
enum CycleSlot : int { In0 = 0, Out0 = 1, DotOut = 2, Out1 = 3, In1 = 4, DotIn = 5 };

/// Variable gadget V_i as a standalone graph: s_i = 0, t_i = 1, then 6 vertices per column.
struct VariableGadgetLayout {
    int variable = 0;
    int columns = 0;
    int s = 0;
    int t = 1;
    std::vector<std::array<int, 6>> cycle; // cycle[j - 1][slot]
    Graph graph;
};

VariableGadgetLayout build_variable_gadget(int variable, int columns);

struct ClauseGadget {
    int k = 0;
    Graph graph;
    std::vector<std::pair<int, int>> pairs; // (sigma_i, tau_i), i = 1..k

    bool is_distinguished(int v) const;
};

class GadgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class GadgetTooLarge : public GadgetError {
public:
    using GadgetError::GadgetError;
};

inline constexpr int kGadgetCheckMaxVertices = 30;
inline constexpr int kGadgetVertexBound = 27;

/// The shipped gadget for k in {2, 3}.
ClauseGadget build_clause_gadget(int k);

struct ContractReport {
    bool ok = false;
    std::string reason;                             // empty when ok
    std::vector<std::vector<int>> counter_witness;  // violating path system
    std::vector<std::vector<int>> pair_paths;       // a Hamiltonian sigma_i-tau_i path per pair
    std::uint64_t forests = 0;                      // spanning linear forests enumerated
};

/// Feasibility of every pair plus rigidity: every spanning linear forest whose path
/// endpoints are distinguished vertices is a single sigma_i-tau_i path.
ContractReport verify_gadget_contract(const ClauseGadget& g);

/// Same contract checked independently by enumerating edge subsets that form spanning
/// linear forests. Much slower; used as a cross-check.
ContractReport verify_gadget_contract_slow(const ClauseGadget& g);

struct GadgetSearchOptions {
    std::uint64_t seed = 1;
    std::uint64_t budget = 5'000'000; // candidate graphs examined
    std::uint64_t samples_per_template = 200'000;
};

/// Searches gadgets that are invariant under rotating the pair indices. Returns nullopt when
/// the size range is exhausted; throws BudgetExhausted when the budget runs out first.
std::optional<ClauseGadget> search_gadget(int k, int max_vertices, const GadgetSearchOptions& opts = {});

// Catalog file: graph text format plus "pair <i> <sigma> <tau>" lines, one gadget per
// "gadget <k>" section.
std::string write_gadget(const ClauseGadget& g);
ClauseGadget read_gadget(std::string_view text);
std::string write_catalog(const std::vector<ClauseGadget>& gadgets);
std::vector<ClauseGadget> read_catalog(std::string_view text);

} // namespace mimham
