#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include <kconv/graph.hpp>
#include <kconv/polymatroid.hpp>

namespace kconv::testing {

using Rng = std::mt19937_64;

/// Connected graph on n vertices with maximum degree <= cap: a random
/// degree-capped tree plus each admissible extra edge with probability p.
inline Graph random_connected(std::size_t n, std::size_t cap, double p, Rng& rng) {
    std::vector<std::size_t> deg(n, 0);
    std::vector<Edge> edges;
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    auto link = [&](Vertex u, Vertex v) {
        edges.emplace_back(u, v);
        adj[u][v] = adj[v][u] = true;
        ++deg[u];
        ++deg[v];
    };
    for (Vertex v = 1; v < n; ++v) {
        std::vector<Vertex> open;
        for (Vertex u = 0; u < v; ++u)
            if (deg[u] < cap)
                open.push_back(u);
        std::uniform_int_distribution<std::size_t> pick(0, open.size() - 1);
        link(open[pick(rng)], v);
    }
    std::vector<Edge> candidates;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            candidates.emplace_back(u, v);
    std::shuffle(candidates.begin(), candidates.end(), rng);
    std::bernoulli_distribution coin(p);
    for (const Edge& e : candidates)
        if (!adj[e.first][e.second] && deg[e.first] < cap && deg[e.second] < cap && coin(rng))
            link(e.first, e.second);
    return Graph(n, edges);
}

/// Connected 3-regular graph on n (even, >= 4) vertices, by rejection
/// sampling of random pairings.
inline Graph random_cubic(std::size_t n, Rng& rng) {
    while (true) {
        std::vector<Vertex> points;
        for (Vertex v = 0; v < n; ++v)
            for (int i = 0; i < 3; ++i)
                points.push_back(v);
        std::shuffle(points.begin(), points.end(), rng);
        std::vector<Edge> edges;
        bool ok = true;
        for (std::size_t i = 0; i < points.size() && ok; i += 2) {
            Edge e(points[i], points[i + 1]);
            if (e.first == e.second || std::find(edges.begin(), edges.end(), e) != edges.end())
                ok = false;
            edges.push_back(e);
        }
        if (!ok)
            continue;
        Graph g(n, edges);
        if (is_connected(g))
            return g;
    }
}

/// Replaces edge (u,v) of g by the path u - x_1 - ... - x_count - v.
inline Graph subdivide(const Graph& g, Edge e, std::size_t count) {
    GraphBuilder b(g);
    b.remove_edge(e.first, e.second);
    Vertex prev = e.first;
    for (std::size_t i = 0; i < count; ++i) {
        Vertex x = b.add_vertex();
        b.add_edge(prev, x);
        prev = x;
    }
    b.add_edge(prev, e.second);
    return b.build();
}

/// Connected graph with degrees in {2,3} and at least `min_deg2`
/// degree-2 vertices, on at most max_n vertices.
inline Graph random_min_degree2(std::size_t max_n, std::size_t min_deg2, Rng& rng) {
    while (true) {
        std::uniform_int_distribution<std::size_t> size(4, max_n);
        std::size_t n = size(rng);
        Graph g = random_connected(n, 3, 0.6, rng);
        bool ok = true;
        std::size_t d2 = 0;
        for (Vertex v = 0; v < n; ++v) {
            ok = ok && g.degree(v) >= 2;
            d2 += g.degree(v) == 2;
        }
        if (ok && d2 >= min_deg2)
            return g;
    }
}

/// Random lines over GF(2^w) in dimension r with entries drawn from a
/// small alphabet (so dependencies are common).
template <class F>
PolymatroidInstance<F> random_instance(std::size_t lines, std::size_t r, Rng& rng, unsigned alphabet_bits = 1) {
    PolymatroidInstance<F> inst(r);
    std::uniform_int_distribution<std::uint64_t> entry(0, (std::uint64_t{1} << alphabet_bits) - 1);
    std::bernoulli_distribution sparse(0.5);
    for (std::size_t i = 0; i < lines; ++i) {
        Line<F> l;
        l.owner = i;
        l.a.resize(r);
        l.b.resize(r);
        for (std::size_t j = 0; j < r; ++j) {
            l.a[j] = sparse(rng) ? F(entry(rng)) : F::zero();
            l.b[j] = sparse(rng) ? F(entry(rng)) : F::zero();
        }
        inst.add_line(std::move(l));
    }
    return inst;
}

} // namespace kconv::testing
