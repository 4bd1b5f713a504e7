#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mimham {

struct Literal {
    int variable = 0; // 1-based
    bool negated = false;

    auto operator<=>(const Literal&) const = default;

    static Literal from_dimacs(int value) { return Literal{value < 0 ? -value : value, value < 0}; }
    int to_dimacs() const { return negated ? -variable : variable; }
    Literal operator~() const { return Literal{variable, !negated}; }
};

using Clause = std::vector<Literal>;

struct Formula {
    int num_vars = 0;
    std::vector<Clause> clauses;

    bool operator==(const Formula&) const = default;
};

/// Truth assignment keyed by variable index.
class Assignment {
public:
    Assignment() = default;
    explicit Assignment(std::map<int, bool> values) : values_(std::move(values)) {}

    void set(int variable, bool value) { values_[variable] = value; }
    std::optional<bool> get(int variable) const;
    bool contains(int variable) const { return values_.count(variable) != 0; }
    const std::map<int, bool>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }

    /// Assignment over 1..num_vars from the low bits of `bits` (bit v-1 is variable v).
    static Assignment from_bits(int num_vars, std::uint64_t bits);

    bool operator==(const Assignment&) const = default;

private:
    std::map<int, bool> values_;
};

enum class DimacsErrorKind { MalformedHeader, LiteralOutOfRange, UnterminatedClause, ClauseTooLarge, EmptyClause };

class DimacsError : public std::runtime_error {
public:
    DimacsError(DimacsErrorKind kind, int line, const std::string& detail);
    DimacsErrorKind kind() const { return kind_; }
    int line() const { return line_; }

private:
    DimacsErrorKind kind_;
    int line_;
};

class IncompleteAssignment : public std::runtime_error {
public:
    explicit IncompleteAssignment(int variable);
    int variable() const { return variable_; }

private:
    int variable_;
};

class TooManyVariables : public std::runtime_error {
public:
    explicit TooManyVariables(int num_vars);
};

/// Parses DIMACS CNF. Clauses may span lines; at most three literals per clause.
Formula parse_dimacs(std::string_view text);

/// Byte-exact printer: header, one clause per line, '\n' endings.
std::string print_dimacs(const Formula& f);

/// Throws IncompleteAssignment when a clause variable is unassigned.
bool evaluate(const Formula& f, const Assignment& a);

inline constexpr int kSatOracleMaxVars = 24;

/// Truth-table search. Returns the lexicographically first satisfying assignment
/// (variable 1 is the least significant bit of the enumeration counter).
std::optional<Assignment> sat_oracle(const Formula& f);

/// Every satisfying assignment, in enumeration order.
std::vector<Assignment> all_satisfying(const Formula& f);

enum class NormalStatus { Reducible, DecidedSat, DecidedUnsat };

struct NormalizedFormula {
    NormalStatus status = NormalStatus::Reducible;
    Formula formula;                 // over renamed variables 1..formula.num_vars
    int original_num_vars = 0;
    std::vector<int> original_of;    // original_of[v] for renamed v (index 0 unused)
    std::map<int, bool> forced;      // original variable -> value fixed by propagation
    std::vector<int> free_vars;      // original variables absent after normalization

    /// Maps an assignment of the normalized formula to one of the original,
    /// filling forced values and setting free variables to 0.
    Assignment lift(const Assignment& renamed) const;
    /// Restricts an original assignment to the renamed variables.
    Assignment project(const Assignment& original) const;
};

/// Deduplicates literals, drops tautologies, unit-propagates, renames.
NormalizedFormula normalize(const Formula& f);

std::string to_string(NormalStatus s);
std::string to_string(const Formula& f);

} // namespace mimham
