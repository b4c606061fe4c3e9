#include <gtest/gtest.h>

#include <kconv/edge_list.hpp>
#include <kconv/graph.hpp>

#include "support/graph_enum.hpp"
#include "support/oracles.hpp"
#include "support/random_graphs.hpp"

using namespace kconv;

namespace {

Graph h5() {
    return parse_edge_list("p 5 7\n0 1\n1 2\n2 3\n3 4\n4 0\n1 3\n2 4\n");
}

ParseErrorKind parse_kind(const std::string& text) {
    try {
        parse_edge_list(text);
    } catch (const ParseError& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no parse error for: " << text;
    return ParseErrorKind::malformed_line;
}

// Independent acyclicity test: repeatedly strip vertices of degree <= 1.
bool acyclic_by_peeling(const Graph& g) {
    std::vector<std::size_t> deg(g.num_vertices());
    std::vector<bool> gone(g.num_vertices(), false);
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        deg[v] = g.degree(v);
    bool changed = true;
    while (changed) {
        changed = false;
        for (Vertex v = 0; v < g.num_vertices(); ++v)
            if (!gone[v] && deg[v] <= 1) {
                gone[v] = true;
                changed = true;
                for (Vertex w : g.neighbors(v))
                    if (!gone[w])
                        --deg[w];
            }
    }
    return std::all_of(gone.begin(), gone.end(), [](bool b) { return b; });
}

} // namespace

TEST(EdgeList, SmallestPath) {
    Graph g = parse_edge_list("0 1\n1 2");
    EXPECT_EQ(g.num_vertices(), 3u);
    EXPECT_EQ(g.num_edges(), 2u);
    EXPECT_TRUE(g.has_edge(0, 1));
    EXPECT_TRUE(g.has_edge(2, 1));
    EXPECT_FALSE(g.has_edge(0, 2));
}

TEST(EdgeList, H5HasFiveVerticesSevenEdges) {
    Graph g = h5();
    EXPECT_EQ(g.num_vertices(), 5u);
    EXPECT_EQ(g.num_edges(), 7u);
}

TEST(EdgeList, DistinctErrorsWithLineNumbers) {
    EXPECT_EQ(parse_kind("0 0"), ParseErrorKind::self_loop);
    EXPECT_EQ(parse_kind("0 1\n1 0\n"), ParseErrorKind::duplicate_edge);
    EXPECT_EQ(parse_kind("0 x\n"), ParseErrorKind::malformed_line);
    EXPECT_EQ(parse_kind("0 1 2\n"), ParseErrorKind::malformed_line);
    EXPECT_EQ(parse_kind("0 99999999999999999999\n"), ParseErrorKind::id_overflow);
    EXPECT_EQ(parse_kind("p 2 1\n0 2\n"), ParseErrorKind::id_overflow);
    EXPECT_EQ(parse_kind("p 2\n"), ParseErrorKind::malformed_header);
    try {
        parse_edge_list("# comment\n0 1\n\n3 3\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 4u);
    }
}

TEST(EdgeList, HeaderAndCommentsAccepted) {
    Graph g = parse_edge_list("c a comment\np edge 4 1\ne 0 1\n# another\n");
    EXPECT_EQ(g.num_vertices(), 4u);
    EXPECT_EQ(g.num_edges(), 1u);
}

TEST(EdgeList, RoundTrip) {
    kconv::testing::Rng rng(11);
    for (int t = 0; t < 20; ++t) {
        Graph g = kconv::testing::random_connected(12, 4, 0.3, rng);
        EXPECT_EQ(parse_edge_list(to_edge_list(g)), g);
    }
}

TEST(Graph, RejectsNonSimpleInput) {
    EXPECT_THROW(Graph(3, {Edge(0, 0)}), InvalidInput);
    EXPECT_THROW(Graph(3, {Edge(0, 1), Edge(1, 0)}), InvalidInput);
    EXPECT_THROW(Graph(2, {Edge(0, 2)}), InvalidInput);
}

TEST(Graph, AdjacencySortedAndSymmetric) {
    kconv::testing::Rng rng(3);
    Graph g = kconv::testing::random_connected(15, 4, 0.4, rng);
    std::size_t total = 0;
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        auto nb = g.neighbors(v);
        EXPECT_TRUE(std::is_sorted(nb.begin(), nb.end()));
        for (Vertex w : nb)
            EXPECT_TRUE(g.has_edge(w, v));
        total += nb.size();
    }
    EXPECT_EQ(total, 2 * g.num_edges());
}

TEST(DegreeProfile, Examples) {
    auto p = degree_profile(h5());
    EXPECT_EQ(p.degree, (std::vector<std::size_t>{2, 3, 3, 3, 3}));
    EXPECT_EQ(p.max_degree, 3u);
    auto single = degree_profile(Graph(1));
    EXPECT_EQ(single.degree, std::vector<std::size_t>{0});
    EXPECT_EQ(single.max_degree, 0u);
    auto k4 = degree_profile(graphs::complete(4));
    EXPECT_EQ(k4.count(3), 4u);
}

TEST(Components, Examples) {
    auto two = graphs::disjoint_union(graphs::cycle(3), graphs::cycle(3));
    EXPECT_EQ(components(two).count, 2u);
    EXPECT_EQ(components(graphs::petersen()).count, 1u);
    EXPECT_EQ(components(Graph(5)).count, 5u);
    auto groups = components(two).groups();
    ASSERT_EQ(groups.size(), 2u);
    EXPECT_EQ(groups[0], (std::vector<Vertex>{0, 1, 2}));
}

TEST(Cyclomatic, Examples) {
    EXPECT_EQ(cyclomatic(graphs::path(7)), 0u);
    EXPECT_EQ(cyclomatic(graphs::star(4)), 0u);
    EXPECT_EQ(cyclomatic(h5()), 3u);
    kconv::testing::Rng rng(5);
    for (std::size_t n : {4u, 6u, 10u, 16u}) {
        Graph g = kconv::testing::random_cubic(n, rng);
        // handshake: e = 3n/2, connected
        EXPECT_EQ(cyclomatic(g), n / 2 + 1);
    }
}

TEST(Cyclomatic, ZeroIffAcyclic) {
    kconv::testing::Rng rng(8);
    for (int t = 0; t < 200; ++t) {
        std::size_t n = 2 + t % 10;
        Graph g = kconv::testing::random_connected(n, 4, 0.15, rng);
        auto keep = VertexSet(n);
        for (Vertex v = 0; v < n; ++v)
            if (rng() % 3)
                keep.insert(v);
        Graph h = induced_subgraph(g, keep).graph;
        EXPECT_EQ(cyclomatic(h) == 0, acyclic_by_peeling(h));
    }
}

TEST(DeleteVertices, Examples) {
    auto tri = delete_vertices(graphs::cycle(3), VertexSet(3, {1}));
    EXPECT_EQ(tri.graph.num_vertices(), 2u);
    EXPECT_EQ(tri.graph.num_edges(), 1u);
    EXPECT_FALSE(tri.to_new[1].has_value());
    EXPECT_EQ(tri.to_old, (std::vector<Vertex>{0, 2}));

    Graph p = graphs::petersen();
    auto same = delete_vertices(p, VertexSet(p.num_vertices()));
    EXPECT_EQ(same.graph, p);
    for (Vertex v = 0; v < p.num_vertices(); ++v)
        EXPECT_EQ(same.to_new[v], v);

    Graph k4 = graphs::complete(4);
    EXPECT_EQ(cyclomatic(k4), 3u);
    EXPECT_EQ(cyclomatic(delete_vertices(k4, VertexSet(4, {0})).graph), 1u);
}

TEST(DeleteVertices, AgreesWithIndependentConstruction) {
    kconv::testing::Rng rng(21);
    for (int t = 0; t < 100; ++t) {
        Graph g = kconv::testing::random_connected(10, 4, 0.3, rng);
        VertexSet x(10);
        for (Vertex v = 0; v < 10; ++v)
            if (rng() % 2)
                x.insert(v);
        // build the induced subgraph by hand with a fresh numbering
        std::vector<int> id(10, -1);
        int next = 0;
        for (Vertex v = 0; v < 10; ++v)
            if (!x.contains(v))
                id[v] = next++;
        std::vector<Edge> es;
        for (const Edge& e : g.edges())
            if (id[e.first] >= 0 && id[e.second] >= 0)
                es.emplace_back(static_cast<Vertex>(id[e.first]), static_cast<Vertex>(id[e.second]));
        Graph manual(static_cast<std::size_t>(next), es);
        auto del = delete_vertices(g, x);
        EXPECT_EQ(del.graph, manual);
        EXPECT_EQ(cyclomatic(del.graph), cyclomatic(manual));
    }
}

TEST(SpanningForest, Examples) {
    Graph tri = graphs::cycle(3);
    auto f = spanning_forest(tri);
    EXPECT_EQ(f.tree_edges.size(), 2u);
    ASSERT_EQ(f.non_tree_edges.size(), 1u);
    EXPECT_EQ(fundamental_cycle(tri, f, f.non_tree_edges[0]).size(), 3u);

    EXPECT_TRUE(spanning_forest(graphs::star(5)).non_tree_edges.empty());

    Graph k4 = graphs::complete(4);
    auto fk = spanning_forest(k4);
    EXPECT_EQ(fk.tree_edges.size(), 3u);
    ASSERT_EQ(fk.non_tree_edges.size(), 3u);
    for (std::size_t e : fk.non_tree_edges)
        EXPECT_EQ(fundamental_cycle(k4, fk, e).size(), 3u);
}

TEST(SpanningForest, NonTreeEdgesEqualMuAndCyclesAreCycles) {
    kconv::testing::Rng rng(13);
    for (int t = 0; t < 100; ++t) {
        Graph g = graphs::disjoint_union(kconv::testing::random_connected(8, 3, 0.5, rng),
                                         kconv::testing::random_connected(5, 4, 0.5, rng));
        auto f = spanning_forest(g);
        EXPECT_EQ(f.non_tree_edges.size(), cyclomatic(g));
        EXPECT_EQ(f.tree_edges.size(), g.num_vertices() - components(g).count);
        for (std::size_t e : f.non_tree_edges) {
            auto cyc = fundamental_cycle(g, f, e);
            // every vertex on the cycle has even degree (exactly 2) in the edge set
            std::vector<int> d(g.num_vertices(), 0);
            for (std::size_t c : cyc) {
                ++d[g.edge(c).first];
                ++d[g.edge(c).second];
            }
            for (int x : d)
                EXPECT_TRUE(x == 0 || x == 2);
            EXPECT_NE(std::find(cyc.begin(), cyc.end(), e), cyc.end());
        }
    }
}

TEST(GraphEnumeration, KnownCounts) {
    // connected graphs on 1..7 vertices: OEIS A001349
    auto levels = kconv::testing::enumerate_graphs(7, 100);
    const std::size_t expected[] = {1, 1, 2, 6, 21, 112, 853};
    for (std::size_t n = 1; n <= 7; ++n) {
        std::size_t c = 0;
        for (const auto& g : levels[n])
            c += is_connected(g);
        EXPECT_EQ(c, expected[n - 1]) << "n = " << n;
    }
    // connected graphs of max degree <= 3 on 4 vertices
    auto cubic = kconv::testing::connected_graphs(4, 3, 4);
    EXPECT_EQ(cubic.size(), 6u);
}
