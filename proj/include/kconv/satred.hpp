#pragma once

// 3-SAT -> irreversible 2-conversion set of a prescribed size, on graphs
// of maximum degree 4. Every gadget is checked by simulation.

#include <array>
#include <cstdlib>
#include <string>
#include <vector>

#include "cnf.hpp"
#include "exact.hpp"
#include "graph.hpp"
#include "percolation.hpp"

namespace kconv {

enum class Role {
    leaf,
    x,
    y,
    z,
    antenna_output,
    one_way_internal,
    spine,
    a,
    u,
    v,
    external, // stub vertex of an isolated gadget
};

inline const char* to_string(Role r) {
    switch (r) {
    case Role::leaf: return "leaf";
    case Role::x: return "x";
    case Role::y: return "y";
    case Role::z: return "z";
    case Role::antenna_output: return "antenna_output";
    case Role::one_way_internal: return "one_way_internal";
    case Role::spine: return "spine";
    case Role::a: return "a";
    case Role::u: return "u";
    case Role::v: return "v";
    case Role::external: return "external";
    }
    return "unknown";
}

/// Role of a vertex plus the (1-based) variable or clause it belongs to;
/// index 0 for the collecting-path leaf and stubs.
struct RoleInfo {
    Role role = Role::external;
    std::size_t index = 0;
};

/// One-way gadget. `end` transmits: once it is black, `start` gets a black
/// neighbour (w1) three rounds later. Nothing flows from start to end.
struct OneWay {
    Vertex start;
    Vertex end;
    std::array<Vertex, 4> w;
    std::array<Vertex, 3> leaves; // on w2, w3, w4
};

namespace detail {

class GadgetBuilder {
public:
    GraphBuilder b;
    std::vector<RoleInfo> roles;

    Vertex add(Role r, std::size_t index) {
        roles.push_back({r, index});
        return b.add_vertex();
    }

    Vertex add_leaf(Vertex at, std::size_t index) {
        Vertex l = add(Role::leaf, index);
        b.add_edge(at, l);
        return l;
    }

    /// Diamond: w1 ~ start, w2, w3; w2, w3 ~ w4 and a leaf each; w4 ~ end and a leaf.
    OneWay add_one_way(Vertex end, Vertex start, std::size_t index) {
        OneWay ow{start, end, {}, {}};
        for (auto& w : ow.w)
            w = add(Role::one_way_internal, index);
        b.add_edge(ow.w[0], start);
        b.add_edge(ow.w[0], ow.w[1]);
        b.add_edge(ow.w[0], ow.w[2]);
        b.add_edge(ow.w[1], ow.w[3]);
        b.add_edge(ow.w[2], ow.w[3]);
        b.add_edge(ow.w[3], end);
        ow.leaves = {add_leaf(ow.w[1], index), add_leaf(ow.w[2], index), add_leaf(ow.w[3], index)};
        return ow;
    }

    struct Variable {
        Vertex x, y, z;
        std::vector<Vertex> positive, negative; // antenna outputs, nearest first
    };

    /// Triangle x y z with antennas of the given lengths on x and y. Each
    /// antenna output carries a leaf so the antenna fills from its root.
    Variable add_variable(std::size_t pos_len, std::size_t neg_len, std::size_t index) {
        Variable var;
        var.x = add(Role::x, index);
        var.y = add(Role::y, index);
        var.z = add(Role::z, index);
        b.add_edge(var.x, var.y);
        b.add_edge(var.y, var.z);
        b.add_edge(var.x, var.z);
        auto antenna = [&](Vertex root, std::size_t len, std::vector<Vertex>& out) {
            Vertex prev = root;
            for (std::size_t i = 0; i < len; ++i) {
                Vertex o = add(Role::antenna_output, index);
                b.add_edge(prev, o);
                add_leaf(o, index);
                out.push_back(o);
                prev = o;
            }
        };
        antenna(var.x, pos_len, var.positive);
        antenna(var.y, neg_len, var.negative);
        return var;
    }

    Graph build() const { return b.build(); }
};

inline VertexSet leaves_of(const Graph& g, const std::vector<RoleInfo>& roles) {
    VertexSet l(g.num_vertices());
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        if (roles[v].role == Role::leaf) {
            if (g.degree(v) != 1)
                throw ConsistencyError("leaf role on a vertex of degree " + std::to_string(g.degree(v)));
            l.insert(v);
        }
    return l;
}

} // namespace detail

/// The gadget on its own: start, end, w1..w4 and three leaves.
struct OneWayGadget {
    Graph graph;
    OneWay ports;
    VertexSet leaves;
};

inline OneWayGadget build_one_way() {
    detail::GadgetBuilder gb;
    Vertex start = gb.add(Role::external, 0);
    Vertex end = gb.add(Role::external, 0);
    OneWay ow = gb.add_one_way(end, start, 0);
    OneWayGadget out{gb.build(), ow, {}};
    out.leaves = detail::leaves_of(out.graph, gb.roles);
    return out;
}

struct OneWayCheck {
    bool forward = false;     // end black -> w1 black, after exactly three rounds
    std::size_t forward_rounds = 0;
    bool reverse_blocked = false; // start black -> w4 stays white
    bool ok() const { return forward && reverse_blocked; }
};

/// Both one-way properties by simulation, with all leaves black.
inline OneWayCheck check_one_way(const OneWayGadget& g) {
    OneWayCheck c;
    VertexSet fwd = g.leaves;
    fwd.insert(g.ports.end);
    auto t = run(g.graph, fwd, 2);
    auto r = t.round_of(g.ports.w[0]);
    c.forward = r.has_value();
    c.forward_rounds = r.value_or(0);

    VertexSet rev = g.leaves;
    rev.insert(g.ports.start);
    auto t2 = run(g.graph, rev, 2);
    c.reverse_blocked = !t2.final_black.contains(g.ports.w[3]) && !t2.final_black.contains(g.ports.end);
    return c;
}

/// A variable gadget with its outgoing one-ways, cut out of the full
/// construction: one external stub per clause port and one for u_i.
struct VariableGadget {
    Graph graph;
    std::vector<RoleInfo> roles;
    Vertex x, y, z, u;
    std::vector<Vertex> positive, negative;
    std::vector<Vertex> clause_ports;
    VertexSet leaves;
    VertexSet gadget; // triangle and antenna outputs
};

inline VariableGadget build_variable_gadget(std::size_t pos_len, std::size_t neg_len) {
    detail::GadgetBuilder gb;
    auto var = gb.add_variable(pos_len, neg_len, 1);
    Vertex u = gb.add(Role::external, 0);
    gb.b.add_edge(u, var.z);
    std::vector<Vertex> ports;
    for (const auto* side : {&var.positive, &var.negative})
        for (Vertex o : *side) {
            Vertex p = gb.add(Role::external, 0);
            gb.add_one_way(o, p, 1);
            ports.push_back(p);
        }
    VariableGadget out;
    out.graph = gb.build();
    out.roles = gb.roles;
    out.x = var.x;
    out.y = var.y;
    out.z = var.z;
    out.u = u;
    out.positive = var.positive;
    out.negative = var.negative;
    out.clause_ports = ports;
    out.leaves = detail::leaves_of(out.graph, out.roles);
    out.gadget = VertexSet(out.graph.num_vertices());
    for (Vertex v : {var.x, var.y, var.z})
        out.gadget.insert(v);
    for (Vertex v : var.positive)
        out.gadget.insert(v);
    for (Vertex v : var.negative)
        out.gadget.insert(v);
    return out;
}

struct VariableObservations {
    bool a = false; // x (resp. y) black -> all positive (negative) outputs black
    bool b = false; // any two of x, y, z black -> whole gadget black
    bool c = false; // triangle avoided -> triangle stays white, even with everything else black
    bool d = false; // z as the only non-leaf seed -> gadget never completes, even with every stub black
    bool e = false; // x or y as the only non-leaf seed -> z black iff u black
    bool ok() const { return a && b && c && d && e; }
};

inline VariableObservations check_variable_observations(const VariableGadget& g) {
    const std::size_t n = g.graph.num_vertices();
    auto black_after = [&](std::initializer_list<Vertex> extra, bool stubs, bool u_black) {
        VertexSet s = g.leaves;
        for (Vertex v : extra)
            s.insert(v);
        if (stubs)
            for (Vertex p : g.clause_ports)
                s.insert(p);
        if (u_black)
            s.insert(g.u);
        return run(g.graph, s, 2).final_black;
    };
    auto all_in = [](const VertexSet& black, const std::vector<Vertex>& vs) {
        for (Vertex v : vs)
            if (!black.contains(v))
                return false;
        return true;
    };
    auto covers_gadget = [&](const VertexSet& black) { return g.gadget.is_subset_of(black); };

    VariableObservations o;
    o.a = all_in(black_after({g.x}, false, false), g.positive) &&
          all_in(black_after({g.y}, false, false), g.negative);

    o.b = covers_gadget(black_after({g.x, g.y}, false, false)) &&
          covers_gadget(black_after({g.x, g.z}, false, false)) &&
          covers_gadget(black_after({g.y, g.z}, false, false));

    VertexSet outside = VertexSet::full(n);
    for (Vertex v : {g.x, g.y, g.z})
        outside.erase(v);
    auto fin = run(g.graph, outside, 2).final_black;
    o.c = !fin.contains(g.x) && !fin.contains(g.y) && !fin.contains(g.z);

    o.d = !covers_gadget(black_after({g.z}, true, true));

    bool e = true;
    for (Vertex lit : {g.x, g.y}) {
        e = e && !black_after({lit}, true, false).contains(g.z);
        e = e && black_after({lit}, true, true).contains(g.z);
        e = e && covers_gadget(black_after({lit}, true, true));
    }
    o.e = e;
    return o;
}

struct ReductionOutput {
    CnfFormula formula;
    Graph graph;
    std::size_t s = 0;
    std::vector<RoleInfo> roles;
    VertexSet leaves; // L
    std::vector<Vertex> x, y, z, u;          // per variable
    std::vector<Vertex> v, a;                // per clause
    std::vector<std::array<Vertex, 3>> spine; // per clause, a_i first
    std::vector<OneWay> one_ways;

    std::size_t n() const noexcept { return x.size(); }
    std::size_t m() const noexcept { return v.size(); }

    /// L plus x_i for true variables and y_i for false ones.
    VertexSet seed_for(const std::vector<bool>& assignment) const {
        if (assignment.size() != n())
            throw InvalidInput("assignment has the wrong number of variables");
        VertexSet s = leaves;
        for (std::size_t i = 0; i < n(); ++i)
            s.insert(assignment[i] ? x[i] : y[i]);
        return s;
    }
};

/// Builds G_F and s = |L| + n. Throws InvalidInput for m = 0 or a
/// variable that occurs in no clause, ConsistencyError if a structural
/// assertion fails.
inline ReductionOutput build_reduction(const CnfFormula& f) {
    f.validate();
    if (f.num_clauses() == 0 || f.num_vars == 0)
        throw InvalidInput("reduction needs at least one clause and one variable");
    for (std::size_t i = 1; i <= f.num_vars; ++i) {
        auto lit = static_cast<Literal>(i);
        if (f.occurrences(lit) + f.occurrences(-lit) == 0)
            throw InvalidInput("variable " + std::to_string(i) + " occurs in no clause");
    }

    ReductionOutput out;
    out.formula = f;
    detail::GadgetBuilder gb;
    std::vector<detail::GadgetBuilder::Variable> vars;
    for (std::size_t i = 1; i <= f.num_vars; ++i) {
        auto lit = static_cast<Literal>(i);
        vars.push_back(gb.add_variable(f.occurrences(lit), f.occurrences(-lit), i));
    }
    std::vector<std::size_t> next_pos(f.num_vars, 0), next_neg(f.num_vars, 0);

    for (std::size_t c = 0; c < f.num_clauses(); ++c) {
        std::array<Vertex, 3> sp{};
        for (std::size_t j = 0; j < 3; ++j) {
            sp[j] = gb.add(j == 0 ? Role::a : Role::spine, c + 1);
            if (j > 0)
                gb.b.add_edge(sp[j - 1], sp[j]);
            gb.add_leaf(sp[j], c + 1);
            Literal lit = f.clauses[c][j];
            auto var = static_cast<std::size_t>(std::abs(lit)) - 1;
            Vertex output = lit > 0 ? vars[var].positive.at(next_pos[var]++) : vars[var].negative.at(next_neg[var]++);
            out.one_ways.push_back(gb.add_one_way(output, sp[j], c + 1));
        }
        out.spine.push_back(sp);
        out.a.push_back(sp[0]);
    }

    for (std::size_t c = 0; c < f.num_clauses(); ++c) {
        Vertex vi = gb.add(Role::v, c + 1);
        gb.b.add_edge(vi, out.a[c]);
        if (c > 0)
            gb.b.add_edge(out.v.back(), vi);
        else
            gb.add_leaf(vi, 0);
        out.v.push_back(vi);
    }
    for (std::size_t i = 0; i < f.num_vars; ++i) {
        Vertex ui = gb.add(Role::u, i + 1);
        gb.b.add_edge(ui, vars[i].z);
        gb.b.add_edge(ui, i == 0 ? out.v.back() : out.u.back());
        gb.add_leaf(ui, i + 1);
        out.u.push_back(ui);
    }
    for (const auto& var : vars) {
        out.x.push_back(var.x);
        out.y.push_back(var.y);
        out.z.push_back(var.z);
    }

    out.graph = gb.build();
    out.roles = gb.roles;
    out.leaves = detail::leaves_of(out.graph, out.roles);
    out.s = out.leaves.size() + f.num_vars;

    // structural assertions
    const Graph& g = out.graph;
    const std::size_t n = f.num_vars, m = f.num_clauses();
    auto require = [](bool cond, const std::string& what) {
        if (!cond)
            throw ConsistencyError("reduction assertion failed: " + what);
    };
    require(g.max_degree() <= 4, "maximum degree exceeds 4");
    require(g.num_vertices() == 5 * n + 34 * m + 1, "vertex count");
    require(out.leaves.size() == 15 * m + n + 1, "|L| = 15m+n+1");
    require(out.s == out.leaves.size() + n, "s = |L| + n");
    for (std::size_t i = 0; i < n; ++i) {
        require(g.has_edge(out.x[i], out.y[i]) && g.has_edge(out.y[i], out.z[i]) && g.has_edge(out.x[i], out.z[i]),
                "variable triangle");
        auto lit = static_cast<Literal>(i + 1);
        require(vars[i].positive.size() == f.occurrences(lit) && vars[i].negative.size() == f.occurrences(-lit),
                "antenna length equals occurrence count");
        require(next_pos[i] == vars[i].positive.size() && next_neg[i] == vars[i].negative.size(),
                "every antenna output starts one one-way");
        require(g.has_edge(out.u[i], out.z[i]), "u_i ~ z_i");
    }
    for (std::size_t c = 0; c < m; ++c)
        require(g.has_edge(out.a[c], out.v[c]) && g.degree(out.a[c]) == 4, "a_i is an end of the spine joined to v_i");
    require(g.has_edge(out.v.back(), out.u.front()), "v_m ~ u_1");
    for (const auto& ow : out.one_ways)
        require(out.roles[ow.end].role == Role::antenna_output &&
                    (out.roles[ow.start].role == Role::spine || out.roles[ow.start].role == Role::a),
                "one-way from an antenna output to a spine vertex");
    return out;
}

/// Orderings forced along the collecting and distributing paths, read off
/// a trace: a_i before v_i, v_{i-1} before v_i, v_m before u_1, u_{i-1}
/// before u_i, u_i before z_i (for unseeded z_i). Returns violations.
inline std::vector<std::string> path_order_violations(const ReductionOutput& r, const PercolationTrace& t) {
    std::vector<std::string> bad;
    auto before = [&](Vertex p, Vertex q, const std::string& what) {
        auto rq = t.round_of(q);
        if (!rq || t.seed.contains(q))
            return;
        auto rp = t.round_of(p);
        if (!rp || *rp >= *rq)
            bad.push_back(what);
    };
    for (std::size_t i = 0; i < r.m(); ++i) {
        before(r.a[i], r.v[i], "a_" + std::to_string(i + 1) + " before v_" + std::to_string(i + 1));
        if (i > 0)
            before(r.v[i - 1], r.v[i], "v_" + std::to_string(i) + " before v_" + std::to_string(i + 1));
    }
    before(r.v.back(), r.u.front(), "v_m before u_1");
    for (std::size_t i = 0; i < r.n(); ++i) {
        if (i > 0)
            before(r.u[i - 1], r.u[i], "u_" + std::to_string(i) + " before u_" + std::to_string(i + 1));
        if (!t.seed.contains(r.x[i]) || !t.seed.contains(r.y[i]))
            before(r.u[i], r.z[i], "u_" + std::to_string(i + 1) + " before z_" + std::to_string(i + 1));
    }
    return bad;
}

struct EquivalenceReport {
    bool satisfiable = false;
    bool has_set_of_size_s = false;
    std::size_t s = 0;
    std::size_t leaves = 0;
    std::size_t vertices = 0;
    std::size_t max_degree = 0;
    bool witness_percolates = true; // vacuous for unsatisfiable formulas
    std::vector<bool> assignment;
    std::vector<std::string> order_violations;

    bool consistent() const {
        return satisfiable == has_set_of_size_s && witness_percolates && max_degree <= 4 &&
               order_violations.empty();
    }
};

/// Compares brute-force SAT with an exhaustive search for a conversion set
/// of size s on G_F. Also checks the assignment-derived seed and the path
/// orderings on every trace L + {one of x_i, y_i per variable}.
inline EquivalenceReport check_equivalence(const CnfFormula& f, std::uint64_t max_candidates = 50'000'000,
                                           unsigned workers = 1) {
    auto red = build_reduction(f);
    EquivalenceReport rep;
    rep.s = red.s;
    rep.leaves = red.leaves.size();
    rep.vertices = red.graph.num_vertices();
    rep.max_degree = red.graph.max_degree();

    auto sat = brute_force_sat(f);
    rep.satisfiable = sat.has_value();
    if (sat) {
        rep.assignment = *sat;
        rep.witness_percolates = is_conversion_set(red.graph, red.seed_for(*sat), 2);
    }
    SearchBudget budget;
    budget.max_vertices = red.graph.num_vertices();
    budget.max_candidates = max_candidates;
    budget.workers = workers;
    rep.has_set_of_size_s = has_conversion_set_of_size(red.graph, 2, red.s, budget);

    std::vector<bool> a(f.num_vars);
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << f.num_vars); ++bits) {
        for (std::size_t i = 0; i < f.num_vars; ++i)
            a[i] = bits >> i & 1;
        auto t = run(red.graph, red.seed_for(a), 2);
        for (auto& msg : path_order_violations(red, t))
            rep.order_violations.push_back(std::move(msg));
        if (t.converted_all != f.satisfied_by(a))
            rep.order_violations.push_back("assignment seed percolates iff the assignment satisfies F");
    }
    return rep;
}

} // namespace kconv
