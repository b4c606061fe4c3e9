#pragma once

// Exhaustive generation of small graphs up to isomorphism, with an
// optional maximum-degree cap. Graphs on n vertices are grown from those
// on n-1 by adding a vertex with every admissible neighbourhood, and
// deduplicated by a canonical certificate (individualization-refinement).

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include <kconv/graph.hpp>

namespace kconv::testing {

namespace detail {

using Adj = std::vector<std::uint32_t>; // neighbour bitmask per vertex, n <= 11

inline std::vector<std::uint32_t> refine(const Adj& adj, std::vector<std::uint32_t> color) {
    const std::size_t n = adj.size();
    std::size_t classes = std::set<std::uint32_t>(color.begin(), color.end()).size();
    while (true) {
        std::vector<std::vector<std::uint32_t>> key(n);
        for (std::size_t v = 0; v < n; ++v) {
            key[v].push_back(color[v]);
            std::vector<std::uint32_t> nb;
            for (std::size_t w = 0; w < n; ++w)
                if (adj[v] >> w & 1)
                    nb.push_back(color[w]);
            std::sort(nb.begin(), nb.end());
            key[v].insert(key[v].end(), nb.begin(), nb.end());
        }
        auto sorted = key;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (std::size_t v = 0; v < n; ++v)
            color[v] = static_cast<std::uint32_t>(std::lower_bound(sorted.begin(), sorted.end(), key[v]) - sorted.begin());
        if (sorted.size() == classes)
            return color;
        classes = sorted.size();
    }
}

inline std::uint64_t certificate(const Adj& adj, const std::vector<std::uint32_t>& label) {
    const std::size_t n = adj.size();
    std::vector<std::size_t> at(n);
    for (std::size_t v = 0; v < n; ++v)
        at[label[v]] = v;
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            bits = bits << 1 | (adj[at[i]] >> at[j] & 1);
    return bits;
}

inline void search(const Adj& adj, const std::vector<std::uint32_t>& color, std::uint64_t& best) {
    const std::size_t n = adj.size();
    std::vector<std::size_t> count(n, 0);
    for (auto c : color)
        ++count[c];
    std::uint32_t target = static_cast<std::uint32_t>(n);
    for (std::uint32_t c = 0; c < n; ++c)
        if (count[c] > 1) {
            target = c;
            break;
        }
    if (target == n) {
        best = std::min(best, certificate(adj, color));
        return;
    }
    for (std::size_t x = 0; x < n; ++x) {
        if (color[x] != target)
            continue;
        std::vector<std::uint32_t> next(n);
        for (std::size_t v = 0; v < n; ++v)
            next[v] = 2 * color[v] + (v == x ? 0 : 1);
        search(adj, refine(adj, next), best);
    }
}

} // namespace detail

/// Isomorphism-invariant certificate (n <= 11).
inline std::uint64_t canonical_certificate(const Graph& g) {
    const std::size_t n = g.num_vertices();
    detail::Adj adj(n, 0);
    for (const Edge& e : g.edges()) {
        adj[e.first] |= 1u << e.second;
        adj[e.second] |= 1u << e.first;
    }
    std::vector<std::uint32_t> color(n, 0);
    auto refined = detail::refine(adj, color);
    std::uint64_t best = ~std::uint64_t{0};
    detail::search(adj, refined, best);
    return best;
}

/// All graphs on exactly n vertices with maximum degree <= cap, one per
/// isomorphism class; `levels[i]` holds those on i vertices.
inline std::vector<std::vector<Graph>> enumerate_graphs(std::size_t max_n, std::size_t cap) {
    std::vector<std::vector<Graph>> levels(max_n + 1);
    levels[0].push_back(Graph(0));
    for (std::size_t n = 1; n <= max_n; ++n) {
        std::map<std::uint64_t, Graph> seen;
        for (const Graph& base : levels[n - 1]) {
            std::vector<Vertex> open;
            for (Vertex v = 0; v < base.num_vertices(); ++v)
                if (base.degree(v) < cap)
                    open.push_back(v);
            const std::size_t m = open.size();
            for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
                if (static_cast<std::size_t>(__builtin_popcount(mask)) > cap)
                    continue;
                GraphBuilder b(base);
                Vertex nv = b.add_vertex();
                for (std::size_t i = 0; i < m; ++i)
                    if (mask >> i & 1)
                        b.add_edge(open[i], nv);
                Graph g = b.build();
                seen.emplace(canonical_certificate(g), std::move(g));
            }
        }
        for (auto& [cert, g] : seen)
            levels[n].push_back(std::move(g));
    }
    return levels;
}

inline std::vector<Graph> connected_graphs(std::size_t max_n, std::size_t cap, std::size_t min_n = 1) {
    auto levels = enumerate_graphs(max_n, cap);
    std::vector<Graph> out;
    for (std::size_t n = min_n; n <= max_n; ++n)
        for (auto& g : levels[n])
            if (is_connected(g))
                out.push_back(std::move(g));
    return out;
}

} // namespace kconv::testing
