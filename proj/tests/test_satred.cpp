#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include <kconv/cnf.hpp>
#include <kconv/satred.hpp>

#include "support/oracles.hpp"

using namespace kconv;

namespace {

ParseErrorKind dimacs_kind(const std::string& text) {
    try {
        parse_dimacs(text);
    } catch (const ParseError& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no parse error for: " << text;
    return ParseErrorKind::malformed_line;
}

CnfFormula fig5() { return parse_dimacs("p cnf 2 1\n1 -1 -2 0\n"); }

// n is capped at 3m so that every variable can occur
CnfFormula random_formula(std::size_t n, std::size_t m, std::mt19937_64& rng) {
    n = std::min(n, 3 * m);
    for (;;) {
        CnfFormula f;
        f.num_vars = n;
        std::uniform_int_distribution<int> var(1, static_cast<int>(n));
        std::bernoulli_distribution neg(0.5);
        for (std::size_t c = 0; c < m; ++c) {
            Clause cl{};
            for (auto& l : cl)
                l = neg(rng) ? -var(rng) : var(rng);
            f.clauses.push_back(cl);
        }
        bool all_used = true;
        for (std::size_t i = 1; i <= n; ++i)
            all_used = all_used && f.occurrences(static_cast<Literal>(i)) + f.occurrences(-static_cast<Literal>(i)) > 0;
        if (all_used)
            return f;
    }
}

std::vector<std::vector<int>> as_lists(const CnfFormula& f) {
    std::vector<std::vector<int>> out;
    for (const auto& c : f.clauses)
        out.emplace_back(c.begin(), c.end());
    return out;
}

} // namespace

TEST(Dimacs, ParsesExample) {
    auto f = fig5();
    EXPECT_EQ(f.num_vars, 2u);
    ASSERT_EQ(f.num_clauses(), 1u);
    EXPECT_EQ(f.clauses[0], (Clause{1, -1, -2}));
    EXPECT_EQ(f.occurrences(1), 1u);
    EXPECT_EQ(f.occurrences(-1), 1u);
}

TEST(Dimacs, CommentsAndSpanningClauses) {
    auto f = parse_dimacs("c hello\np cnf 3 2\n1 2\n3 0 -1 -2\n-3 0\n");
    ASSERT_EQ(f.num_clauses(), 2u);
    EXPECT_EQ(f.clauses[1], (Clause{-1, -2, -3}));
    EXPECT_EQ(parse_dimacs(to_dimacs(f)).clauses, f.clauses);
}

TEST(Dimacs, Errors) {
    EXPECT_EQ(dimacs_kind("p cnf 2 1\n1 2 0\n"), ParseErrorKind::wrong_arity);
    EXPECT_EQ(dimacs_kind("p cnf 2 1\n1 2 3 0\n"), ParseErrorKind::variable_out_of_range);
    EXPECT_EQ(dimacs_kind("p cnf 2\n1 2 -1 0\n"), ParseErrorKind::malformed_header);
    EXPECT_EQ(dimacs_kind("1 2 -1 0\n"), ParseErrorKind::malformed_header);
    EXPECT_EQ(dimacs_kind("p cnf 2 1\n1 x 2 0\n"), ParseErrorKind::malformed_line);
}

TEST(Dimacs, BruteForceSat) {
    EXPECT_TRUE(brute_force_sat(fig5()).has_value());
    EXPECT_FALSE(brute_force_sat(parse_dimacs("p cnf 1 2\n1 1 1 0\n-1 -1 -1 0\n")).has_value());
    std::mt19937_64 rng(61);
    for (int t = 0; t < 50; ++t) {
        auto f = random_formula(1 + t % 5, 1 + t % 7, rng);
        auto sol = brute_force_sat(f);
        EXPECT_EQ(sol.has_value(), kconv::testing::brute_satisfiable(f.num_vars, as_lists(f)));
        if (sol) {
            EXPECT_TRUE(f.satisfied_by(*sol));
        }
    }
}

TEST(OneWay, ForwardInThreeRoundsReverseBlocked) {
    auto g = build_one_way();
    EXPECT_EQ(g.leaves.size(), 3u);
    for (Vertex l : g.leaves.members())
        EXPECT_EQ(g.graph.degree(l), 1u);

    VertexSet fwd = g.leaves;
    fwd.insert(g.ports.end);
    auto t = run(g.graph, fwd, 2);
    auto r = t.round_of(g.ports.w[0]);
    ASSERT_TRUE(r.has_value());
    EXPECT_LE(*r, 3u);
    EXPECT_TRUE(g.graph.has_edge(g.ports.w[0], g.ports.start));

    VertexSet rev = g.leaves;
    rev.insert(g.ports.start);
    auto back = run(g.graph, rev, 2);
    EXPECT_FALSE(back.final_black.contains(g.ports.w[3]));
    EXPECT_FALSE(back.final_black.contains(g.ports.end));

    auto c = check_one_way(g);
    EXPECT_TRUE(c.ok());
    EXPECT_EQ(c.forward_rounds, 3u);
}

TEST(VariableGadget, Observations) {
    for (std::size_t p = 0; p <= 3; ++p)
        for (std::size_t q = 0; q <= 3; ++q) {
            if (p + q == 0)
                continue;
            auto g = build_variable_gadget(p, q);
            EXPECT_EQ(g.positive.size(), p);
            EXPECT_EQ(g.negative.size(), q);
            EXPECT_TRUE(check_variable_observations(g).ok()) << p << "," << q;
        }
}

TEST(VariableGadget, TrueLiteralReachesItsClausePorts) {
    auto g = build_variable_gadget(2, 1);
    VertexSet s = g.leaves;
    s.insert(g.x);
    auto t = run(g.graph, s, 2);
    // a port is a stub hanging off w1 of its one-way; w1 is what turns black
    auto w1_black = [&](Vertex port) { return t.final_black.contains(g.graph.neighbors(port)[0]); };
    EXPECT_TRUE(w1_black(g.clause_ports[0]));
    EXPECT_TRUE(w1_black(g.clause_ports[1]));
    EXPECT_FALSE(w1_black(g.clause_ports[2]));
}

TEST(Reduction, StructureOfExample) {
    auto r = build_reduction(fig5());
    EXPECT_EQ(r.n(), 2u);
    EXPECT_EQ(r.m(), 1u);
    EXPECT_EQ(r.graph.num_vertices(), 5 * 2 + 34 * 1 + 1u);
    EXPECT_EQ(r.leaves.size(), 15 * 1 + 2 + 1u);
    EXPECT_EQ(r.s, r.leaves.size() + r.n());
    EXPECT_LE(r.graph.max_degree(), 4u);
    EXPECT_EQ(r.roles.size(), r.graph.num_vertices());
    // L is exactly the set of degree-1 vertices
    for (Vertex v = 0; v < r.graph.num_vertices(); ++v)
        EXPECT_EQ(r.leaves.contains(v), r.graph.degree(v) == 1) << v;
    EXPECT_TRUE(is_connected(r.graph));
    EXPECT_EQ(r.spine[0][0], r.a[0]);
    EXPECT_TRUE(r.graph.has_edge(r.a[0], r.v[0]));
    EXPECT_TRUE(r.graph.has_edge(r.v.back(), r.u.front()));
    for (std::size_t i = 0; i < r.n(); ++i)
        EXPECT_TRUE(r.graph.has_edge(r.u[i], r.z[i]));
}

TEST(Reduction, SizesFollowFormula) {
    std::mt19937_64 rng(67);
    for (int t = 0; t < 20; ++t) {
        std::size_t n = 1 + t % 4, m = 1 + t % 5;
        auto f = random_formula(n, m, rng);
        auto r = build_reduction(f);
        n = f.num_vars;
        EXPECT_EQ(r.graph.num_vertices(), 5 * n + 34 * m + 1);
        EXPECT_EQ(r.leaves.size(), 15 * m + n + 1);
        EXPECT_LE(r.graph.max_degree(), 4u);
        EXPECT_EQ(r.one_ways.size(), 3 * m);
    }
}

TEST(Reduction, RejectsDegenerateFormulas) {
    CnfFormula empty;
    empty.num_vars = 1;
    EXPECT_THROW(build_reduction(empty), InvalidInput);
    EXPECT_THROW(build_reduction(parse_dimacs("p cnf 3 1\n1 2 2 0\n")), InvalidInput);
}

TEST(Reduction, AssignmentSeedsPercolateExactlyWhenSatisfying) {
    std::mt19937_64 rng(71);
    for (int t = 0; t < 15; ++t) {
        auto f = random_formula(2 + t % 3, 1 + t % 4, rng);
        auto r = build_reduction(f);
        std::vector<bool> a(f.num_vars);
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << f.num_vars); ++bits) {
            for (std::size_t i = 0; i < f.num_vars; ++i)
                a[i] = bits >> i & 1;
            auto tr = run(r.graph, r.seed_for(a), 2);
            EXPECT_EQ(tr.converted_all, f.satisfied_by(a));
            EXPECT_TRUE(path_order_violations(r, tr).empty());
        }
    }
}

TEST(Equivalence, Examples) {
    auto sat = check_equivalence(fig5());
    EXPECT_TRUE(sat.satisfiable);
    EXPECT_TRUE(sat.has_set_of_size_s);
    EXPECT_TRUE(sat.consistent());

    auto unsat = check_equivalence(parse_dimacs("p cnf 1 2\n1 1 1 0\n-1 -1 -1 0\n"));
    EXPECT_FALSE(unsat.satisfiable);
    EXPECT_FALSE(unsat.has_set_of_size_s);
    EXPECT_TRUE(unsat.consistent());
}

TEST(Equivalence, SmallRandomFormulas) {
    std::mt19937_64 rng(73);
    for (int t = 0; t < 6; ++t) {
        auto f = random_formula(2 + t % 2, 1 + t % 2, rng);
        auto rep = check_equivalence(f);
        EXPECT_EQ(rep.satisfiable, kconv::testing::brute_satisfiable(f.num_vars, as_lists(f)));
        EXPECT_TRUE(rep.consistent()) << to_dimacs(f);
    }
}
