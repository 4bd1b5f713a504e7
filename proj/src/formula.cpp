#include "mimham/formula.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace mimham {

namespace {

std::string describe(DimacsErrorKind kind)
{
    switch (kind) {
    case DimacsErrorKind::MalformedHeader: return "malformed header";
    case DimacsErrorKind::LiteralOutOfRange: return "literal out of range";
    case DimacsErrorKind::UnterminatedClause: return "unterminated clause";
    case DimacsErrorKind::ClauseTooLarge: return "clause has more than three literals";
    case DimacsErrorKind::EmptyClause: return "empty clause";
    }
    return "dimacs error";
}

std::vector<std::string_view> split_ws(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
            ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r')
            ++j;
        if (j > i)
            out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

std::optional<long long> to_int(std::string_view s)
{
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        return std::nullopt;
    return v;
}

struct ClauseMasks {
    std::uint32_t pos = 0;
    std::uint32_t neg = 0;
};

std::vector<ClauseMasks> clause_masks(const Formula& f)
{
    std::vector<ClauseMasks> out;
    out.reserve(f.clauses.size());
    for (const auto& c : f.clauses) {
        ClauseMasks m;
        for (auto lit : c) {
            auto bit = std::uint32_t{1} << (lit.variable - 1);
            (lit.negated ? m.neg : m.pos) |= bit;
        }
        out.push_back(m);
    }
    return out;
}

template <typename Visit>
void enumerate_models(const Formula& f, Visit&& visit)
{
    if (f.num_vars > kSatOracleMaxVars)
        throw TooManyVariables(f.num_vars);
    auto masks = clause_masks(f);
    std::uint64_t limit = std::uint64_t{1} << f.num_vars;
    for (std::uint64_t bits = 0; bits < limit; ++bits) {
        auto a = static_cast<std::uint32_t>(bits);
        bool ok = std::all_of(masks.begin(), masks.end(),
                              [a](const ClauseMasks& m) { return ((a & m.pos) | (~a & m.neg)) != 0; });
        if (ok && !visit(bits))
            return;
    }
}

} // namespace

std::optional<bool> Assignment::get(int variable) const
{
    auto it = values_.find(variable);
    if (it == values_.end())
        return std::nullopt;
    return it->second;
}

Assignment Assignment::from_bits(int num_vars, std::uint64_t bits)
{
    Assignment a;
    for (int v = 1; v <= num_vars; ++v)
        a.set(v, ((bits >> (v - 1)) & 1) != 0);
    return a;
}

DimacsError::DimacsError(DimacsErrorKind kind, int line, const std::string& detail) :
    std::runtime_error("line " + std::to_string(line) + ": " + describe(kind) + (detail.empty() ? "" : ": " + detail)),
    kind_(kind),
    line_(line)
{
}

IncompleteAssignment::IncompleteAssignment(int variable) :
    std::runtime_error("assignment has no value for variable " + std::to_string(variable)),
    variable_(variable)
{
}

TooManyVariables::TooManyVariables(int num_vars) :
    std::runtime_error("truth-table oracle supports at most " + std::to_string(kSatOracleMaxVars) +
                       " variables, got " + std::to_string(num_vars))
{
}

Formula parse_dimacs(std::string_view text)
{
    Formula f;
    bool have_header = false;
    int header_line = 0;
    long long declared_clauses = 0;
    Clause current;
    int clause_line = 0;
    int line_no = 0;

    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        auto tokens = split_ws(line);
        if (tokens.empty() || tokens[0][0] == 'c' || tokens[0] == "%")
            continue;
        if (tokens[0] == "p") {
            if (have_header || tokens.size() != 4 || tokens[1] != "cnf")
                throw DimacsError(DimacsErrorKind::MalformedHeader, line_no, std::string(line));
            auto n = to_int(tokens[2]);
            auto m = to_int(tokens[3]);
            if (!n || !m || *n < 0 || *m < 0 || *n > 1'000'000)
                throw DimacsError(DimacsErrorKind::MalformedHeader, line_no, std::string(line));
            f.num_vars = static_cast<int>(*n);
            declared_clauses = *m;
            have_header = true;
            header_line = line_no;
            continue;
        }
        if (!have_header)
            throw DimacsError(DimacsErrorKind::MalformedHeader, line_no, "clause before 'p cnf' header");
        for (auto tok : tokens) {
            auto value = to_int(tok);
            if (!value)
                throw DimacsError(DimacsErrorKind::MalformedHeader, line_no, "not an integer: " + std::string(tok));
            if (*value == 0) {
                if (current.empty())
                    throw DimacsError(DimacsErrorKind::EmptyClause, line_no, "");
                f.clauses.push_back(std::move(current));
                current.clear();
                continue;
            }
            if (*value > f.num_vars || *value < -f.num_vars)
                throw DimacsError(DimacsErrorKind::LiteralOutOfRange, line_no,
                                  std::to_string(*value) + " exceeds n=" + std::to_string(f.num_vars));
            if (current.empty())
                clause_line = line_no;
            if (current.size() == 3)
                throw DimacsError(DimacsErrorKind::ClauseTooLarge, clause_line, "");
            current.push_back(Literal::from_dimacs(static_cast<int>(*value)));
        }
    }
    if (!current.empty())
        throw DimacsError(DimacsErrorKind::UnterminatedClause, clause_line, "missing terminating 0");
    if (!have_header)
        throw DimacsError(DimacsErrorKind::MalformedHeader, line_no, "missing 'p cnf' header");
    if (static_cast<long long>(f.clauses.size()) != declared_clauses)
        throw DimacsError(DimacsErrorKind::MalformedHeader, header_line,
                          "declares " + std::to_string(declared_clauses) + " clauses, found " +
                              std::to_string(f.clauses.size()));
    return f;
}

std::string print_dimacs(const Formula& f)
{
    std::ostringstream out;
    out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
    for (const auto& c : f.clauses) {
        for (auto lit : c)
            out << lit.to_dimacs() << ' ';
        out << "0\n";
    }
    return out.str();
}

bool evaluate(const Formula& f, const Assignment& a)
{
    bool all = true;
    for (const auto& c : f.clauses) {
        bool sat = false;
        for (auto lit : c) {
            auto v = a.get(lit.variable);
            if (!v)
                throw IncompleteAssignment(lit.variable);
            if (*v != lit.negated)
                sat = true;
        }
        all = all && sat;
    }
    return all;
}

std::optional<Assignment> sat_oracle(const Formula& f)
{
    std::optional<Assignment> found;
    enumerate_models(f, [&](std::uint64_t bits) {
        found = Assignment::from_bits(f.num_vars, bits);
        return false;
    });
    return found;
}

std::vector<Assignment> all_satisfying(const Formula& f)
{
    std::vector<Assignment> out;
    enumerate_models(f, [&](std::uint64_t bits) {
        out.push_back(Assignment::from_bits(f.num_vars, bits));
        return true;
    });
    return out;
}

Assignment NormalizedFormula::lift(const Assignment& renamed) const
{
    Assignment out;
    for (int v = 1; v <= original_num_vars; ++v)
        out.set(v, false);
    for (auto [v, value] : forced)
        out.set(v, value);
    for (int v = 1; v < static_cast<int>(original_of.size()); ++v) {
        auto value = renamed.get(v);
        if (!value)
            throw IncompleteAssignment(v);
        out.set(original_of[v], *value);
    }
    return out;
}

Assignment NormalizedFormula::project(const Assignment& original) const
{
    Assignment out;
    for (int v = 1; v < static_cast<int>(original_of.size()); ++v) {
        auto value = original.get(original_of[v]);
        if (!value)
            throw IncompleteAssignment(original_of[v]);
        out.set(v, *value);
    }
    return out;
}

NormalizedFormula normalize(const Formula& f)
{
    NormalizedFormula out;
    out.original_num_vars = f.num_vars;

    std::vector<Clause> clauses;
    for (const auto& c : f.clauses) {
        Clause dedup;
        for (auto lit : c)
            if (std::find(dedup.begin(), dedup.end(), lit) == dedup.end())
                dedup.push_back(lit);
        bool tautology = std::any_of(dedup.begin(), dedup.end(), [&](Literal l) {
            return std::find(dedup.begin(), dedup.end(), ~l) != dedup.end();
        });
        if (!tautology)
            clauses.push_back(std::move(dedup));
    }

    for (;;) {
        auto unit = std::find_if(clauses.begin(), clauses.end(), [](const Clause& c) { return c.size() == 1; });
        if (unit == clauses.end())
            break;
        Literal lit = (*unit)[0];
        out.forced[lit.variable] = !lit.negated;
        std::vector<Clause> next;
        for (auto& c : clauses) {
            if (std::find(c.begin(), c.end(), lit) != c.end())
                continue;
            auto it = std::find(c.begin(), c.end(), ~lit);
            if (it != c.end()) {
                c.erase(it);
                if (c.empty()) {
                    out.status = NormalStatus::DecidedUnsat;
                    return out;
                }
            }
            next.push_back(std::move(c));
        }
        clauses = std::move(next);
    }

    if (clauses.empty()) {
        out.status = NormalStatus::DecidedSat;
        for (int v = 1; v <= f.num_vars; ++v)
            if (!out.forced.count(v))
                out.free_vars.push_back(v);
        out.original_of.assign(1, 0);
        return out;
    }

    std::vector<int> renamed(f.num_vars + 1, 0);
    out.original_of.assign(1, 0);
    for (const auto& c : clauses)
        for (auto lit : c)
            if (renamed[lit.variable] == 0) {
                out.original_of.push_back(lit.variable);
                renamed[lit.variable] = static_cast<int>(out.original_of.size()) - 1;
            }
    for (int v = 1; v <= f.num_vars; ++v)
        if (renamed[v] == 0 && !out.forced.count(v))
            out.free_vars.push_back(v);

    out.formula.num_vars = static_cast<int>(out.original_of.size()) - 1;
    for (const auto& c : clauses) {
        Clause rc;
        for (auto lit : c)
            rc.push_back(Literal{renamed[lit.variable], lit.negated});
        out.formula.clauses.push_back(std::move(rc));
    }
    out.status = NormalStatus::Reducible;
    return out;
}

std::string to_string(NormalStatus s)
{
    switch (s) {
    case NormalStatus::Reducible: return "reducible";
    case NormalStatus::DecidedSat: return "SAT";
    case NormalStatus::DecidedUnsat: return "UNSAT";
    }
    return "?";
}

std::string to_string(const Formula& f)
{
    std::ostringstream out;
    for (std::size_t j = 0; j < f.clauses.size(); ++j) {
        if (j)
            out << " & ";
        out << '(';
        for (std::size_t h = 0; h < f.clauses[j].size(); ++h) {
            if (h)
                out << " | ";
            auto lit = f.clauses[j][h];
            out << (lit.negated ? "~x" : "x") << lit.variable;
        }
        out << ')';
    }
    return out.str();
}

} // namespace mimham
