#pragma once

#include "mimham/formula.hpp"
#include "mimham/reduction.hpp"

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mimham {

using HamPath = std::vector<int>;

struct PathCheck {
    bool ok = true;
    int index = -1;      // position of the first violation
    std::string message;
};

PathCheck verify_path(const Graph& g, std::span<const int> p, bool require_hamiltonian = true,
                      bool forbid_dummy = false);

// Like verify_path, but on a cycle instance a path that skips only the apex also counts as spanning.
PathCheck verify_instance_path(const Instance& inst, std::span<const int> p, bool forbid_dummy = false);

class WitnessError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class NotSatisfying : public WitnessError {
public:
    using WitnessError::WitnessError;
};
class GadgetRoutingFailure : public WitnessError {
public:
    using WitnessError::WitnessError;
};
class NotAPath : public WitnessError {
public:
    using WitnessError::WitnessError;
};
class IrregularTraversal : public WitnessError {
public:
    IrregularTraversal(int variable, int column);
    int variable() const { return variable_; }
    int column() const { return column_; }

private:
    int variable_;
    int column_;
};

/// Hamiltonian s-t path for a satisfying assignment of inst.formula. Each clause gadget is
/// collected at the first literal position the assignment satisfies.
HamPath path_from_assignment(const Instance& inst, const Assignment& a);

enum class Traversal { TrueOrder, FalseOrder, Irregular };

/// How p sweeps columns 1..b of variable i (p oriented from s).
Traversal traversal(const Instance& inst, std::span<const int> p, int i, int b);

/// x_i = 1 for a true-order sweep, 0 for false-order. Throws IrregularTraversal otherwise.
Assignment assignment_from_path(const Instance& inst, std::span<const int> p);

struct Respectability {
    bool ok = true;
    int condition = 0; // 1..5, the first violated condition
    std::string detail;
};

/// The five conditions of (a, b)-respectability for a Hamiltonian s-t path.
Respectability check_respectable(const Instance& inst, std::span<const int> p, int a, int b);

/// Every (0, dot, 1) in-triple and out-triple occupies three consecutive positions of p.
bool consecutive_dt_check(const Instance& inst, std::span<const int> p);

/// Path on a cycle instance: rotate the cycle so it runs s ... t and drop the apex.
HamPath path_from_cycle(const Instance& inst, std::span<const int> cycle);

// Witness files: "path <v1> ... <vN>" and "assign <var>=<0|1> ..." sorted by variable.
std::string write_path(std::span<const int> p);
HamPath read_path(std::string_view text);
std::string write_assignment(const Assignment& a);
Assignment read_assignment(std::string_view text);

} // namespace mimham
