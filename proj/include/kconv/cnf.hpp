#pragma once

// 3-CNF formulas and a DIMACS reader.

#include <array>
#include <cstdint>
#include <cstdlib>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace kconv {

/// Signed variable index: +i is X_i, -i is not X_i (1-based).
using Literal = int;
using Clause = std::array<Literal, 3>;

struct CnfFormula {
    std::size_t num_vars = 0;
    std::vector<Clause> clauses;

    std::size_t num_clauses() const noexcept { return clauses.size(); }

    /// Occurrences of the literal +var (positive) or -var.
    std::size_t occurrences(Literal lit) const {
        std::size_t c = 0;
        for (const auto& cl : clauses)
            for (Literal l : cl)
                c += l == lit;
        return c;
    }

    /// assignment[i] is the value of X_{i+1}.
    bool satisfied_by(const std::vector<bool>& assignment) const {
        for (const auto& cl : clauses) {
            bool sat = false;
            for (Literal l : cl) {
                bool val = assignment.at(static_cast<std::size_t>(std::abs(l)) - 1);
                sat = sat || (l > 0 ? val : !val);
            }
            if (!sat)
                return false;
        }
        return true;
    }

    void validate() const {
        for (const auto& cl : clauses)
            for (Literal l : cl)
                if (l == 0 || static_cast<std::size_t>(std::abs(l)) > num_vars)
                    throw InvalidInput("literal " + std::to_string(l) + " outside variables 1.." +
                                       std::to_string(num_vars));
    }
};

/// Reads `p cnf n m` followed by zero-terminated clauses. Comment lines
/// start with `c`; a clause may span lines. Every clause must have
/// exactly three literals.
inline CnfFormula parse_dimacs(std::istream& in) {
    CnfFormula f;
    bool have_header = false;
    std::size_t declared_m = 0;
    std::vector<Literal> pending;
    std::size_t pending_line = 0;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok[0] == 'c' || tok[0] == '%')
            continue;
        if (tok == "p") {
            std::string fmt;
            long long n = -1, m = -1;
            std::string extra;
            if (have_header || !(ls >> fmt >> n >> m) || fmt != "cnf" || n < 0 || m < 0 || (ls >> extra))
                throw ParseError(ParseErrorKind::malformed_header, lineno, line);
            f.num_vars = static_cast<std::size_t>(n);
            declared_m = static_cast<std::size_t>(m);
            have_header = true;
            continue;
        }
        if (!have_header)
            throw ParseError(ParseErrorKind::malformed_header, lineno, "clause before `p cnf` header");
        do {
            long long lit = 0;
            std::size_t used = 0;
            try {
                lit = std::stoll(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.size())
                throw ParseError(ParseErrorKind::malformed_line, lineno, "bad literal `" + tok + "`");
            if (lit == 0) {
                if (pending.size() != 3)
                    throw ParseError(ParseErrorKind::wrong_arity, pending.empty() ? lineno : pending_line,
                                     std::to_string(pending.size()) + " literals");
                f.clauses.push_back({pending[0], pending[1], pending[2]});
                pending.clear();
                continue;
            }
            if (static_cast<unsigned long long>(std::llabs(lit)) > f.num_vars)
                throw ParseError(ParseErrorKind::variable_out_of_range, lineno, std::to_string(lit));
            if (pending.empty())
                pending_line = lineno;
            pending.push_back(static_cast<Literal>(lit));
        } while (ls >> tok);
    }
    if (!have_header)
        throw ParseError(ParseErrorKind::malformed_header, lineno, "missing `p cnf` header");
    if (!pending.empty())
        throw ParseError(ParseErrorKind::wrong_arity, pending_line, "unterminated clause");
    if (f.clauses.size() != declared_m)
        throw ParseError(ParseErrorKind::malformed_header, lineno,
                         "header declares " + std::to_string(declared_m) + " clauses, found " +
                             std::to_string(f.clauses.size()));
    return f;
}

inline CnfFormula parse_dimacs(const std::string& text) {
    std::istringstream in(text);
    return parse_dimacs(in);
}

inline std::string to_dimacs(const CnfFormula& f) {
    std::ostringstream out;
    out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
    for (const auto& cl : f.clauses)
        out << cl[0] << ' ' << cl[1] << ' ' << cl[2] << " 0\n";
    return out.str();
}

/// Plain enumeration of all 2^n assignments (n <= 30).
inline std::optional<std::vector<bool>> brute_force_sat(const CnfFormula& f) {
    if (f.num_vars > 30)
        throw InvalidInput("brute-force SAT limited to 30 variables");
    std::vector<bool> a(f.num_vars);
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << f.num_vars); ++bits) {
        for (std::size_t i = 0; i < f.num_vars; ++i)
            a[i] = bits >> i & 1;
        if (f.satisfied_by(a))
            return a;
    }
    return std::nullopt;
}

} // namespace kconv
