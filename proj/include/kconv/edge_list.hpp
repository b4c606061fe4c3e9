#pragma once

// Plain-text edge lists: one "u v" pair per line, optional "p <n> <m>"
// header fixing the vertex count, '#' or 'c' comment lines.

#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

#include "graph.hpp"

namespace kconv {

namespace detail {

inline bool parse_id(const std::string& token, std::uint64_t& out) {
    if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
        return false;
    // saturate; anything this long is an overflow for the caller to report
    out = token.size() > 19 ? std::numeric_limits<std::uint64_t>::max() : std::stoull(token);
    return true;
}

} // namespace detail

/// Vertex ids must stay below this bound.
inline constexpr std::uint64_t max_vertex_id = std::numeric_limits<std::int32_t>::max();

inline Graph parse_edge_list(std::istream& in) {
    std::optional<std::uint64_t> header_n;
    std::uint64_t max_id_plus_one = 0;
    std::vector<Edge> edges;
    std::set<Edge> seen;
    std::string line;
    std::size_t lineno = 0;
    bool any_edge = false;

    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        std::string first;
        if (!(ss >> first) || first[0] == '#' || first == "c")
            continue;

        if (first == "p") {
            if (header_n || any_edge)
                throw ParseError(ParseErrorKind::malformed_header, lineno,
                                 "header must appear once, before edges");
            std::string a, b, extra;
            ss >> a >> b;
            if (a == "edge" || a == "edges") {
                a = b;
                ss >> b;
            }
            std::uint64_t n = 0, m = 0;
            if (!detail::parse_id(a, n) || !detail::parse_id(b, m) || (ss >> extra))
                throw ParseError(ParseErrorKind::malformed_header, lineno, line);
            if (n > max_vertex_id)
                throw ParseError(ParseErrorKind::id_overflow, lineno, "vertex count " + a);
            header_n = n;
            continue;
        }

        std::string second, extra;
        if (first == "e" && !(ss >> first))
            throw ParseError(ParseErrorKind::malformed_line, lineno, line);
        std::uint64_t u = 0, v = 0;
        if (!(ss >> second) || (ss >> extra) || !detail::parse_id(first, u) ||
            !detail::parse_id(second, v))
            throw ParseError(ParseErrorKind::malformed_line, lineno, line);
        const std::uint64_t bound = header_n ? *header_n : max_vertex_id;
        if (u >= bound || v >= bound)
            throw ParseError(ParseErrorKind::id_overflow, lineno,
                             "id " + std::to_string(std::max(u, v)) + " >= " + std::to_string(bound));
        if (u == v)
            throw ParseError(ParseErrorKind::self_loop, lineno, "vertex " + std::to_string(u));
        Edge e(static_cast<Vertex>(u), static_cast<Vertex>(v));
        if (!seen.insert(e).second)
            throw ParseError(ParseErrorKind::duplicate_edge, lineno,
                             std::to_string(e.first) + " " + std::to_string(e.second));
        edges.push_back(e);
        any_edge = true;
        max_id_plus_one = std::max(max_id_plus_one, std::max(u, v) + 1);
    }
    const std::uint64_t n = header_n ? *header_n : max_id_plus_one;
    return Graph(static_cast<std::size_t>(n), edges);
}

inline Graph parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    return parse_edge_list(in);
}

/// Always writes the header so isolated vertices survive a round trip.
inline void write_edge_list(std::ostream& out, const Graph& g) {
    out << "p " << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (const Edge& e : g.edges())
        out << e.first << ' ' << e.second << '\n';
}

inline std::string to_edge_list(const Graph& g) {
    std::ostringstream out;
    write_edge_list(out, g);
    return out.str();
}

} // namespace kconv
