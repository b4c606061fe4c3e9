#pragma once

// Simple undirected graphs with dense vertex ids, plus the structural
// queries the solvers share: degrees, components, cyclomatic number,
// induced subgraphs and fundamental cycles.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace kconv {

using Vertex = std::uint32_t;

/// Unordered edge, stored with first < second.
struct Edge {
    Vertex first = 0;
    Vertex second = 0;

    Edge() = default;
    Edge(Vertex u, Vertex v) : first(std::min(u, v)), second(std::max(u, v)) {}

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

class Graph {
public:
    Graph() = default;

    explicit Graph(std::size_t n) : adjacency_(n), incident_(n) {}

    /// Throws InvalidInput on self-loops, parallel edges or ids >= n.
    Graph(std::size_t n, std::span<const Edge> edges) : Graph(n) {
        edges_.reserve(edges.size());
        for (const Edge& e : edges) {
            if (e.first == e.second)
                throw InvalidInput("self-loop at vertex " + std::to_string(e.first));
            if (e.second >= n)
                throw InvalidInput("edge endpoint " + std::to_string(e.second) +
                                   " out of range for " + std::to_string(n) + " vertices");
            adjacency_[e.first].push_back(e.second);
            adjacency_[e.second].push_back(e.first);
            edges_.push_back(e);
        }
        for (std::size_t v = 0; v < n; ++v) {
            auto& nb = adjacency_[v];
            std::sort(nb.begin(), nb.end());
            if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
                throw InvalidInput("parallel edge at vertex " + std::to_string(v));
        }
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            incident_[edges_[i].first].push_back(i);
            incident_[edges_[i].second].push_back(i);
        }
    }

    Graph(std::size_t n, std::initializer_list<Edge> edges)
        : Graph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

    std::size_t num_vertices() const noexcept { return adjacency_.size(); }
    std::size_t num_edges() const noexcept { return edges_.size(); }

    std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }
    std::size_t degree(Vertex v) const { return adjacency_[v].size(); }

    /// Edge indices incident to v, in insertion order.
    std::span<const std::size_t> incident_edges(Vertex v) const { return incident_[v]; }

    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const Edge& edge(std::size_t index) const { return edges_[index]; }

    bool has_edge(Vertex u, Vertex v) const {
        if (u >= num_vertices() || v >= num_vertices())
            return false;
        const auto& nb = adjacency_[u];
        return std::binary_search(nb.begin(), nb.end(), v);
    }

    std::size_t max_degree() const {
        std::size_t d = 0;
        for (const auto& nb : adjacency_)
            d = std::max(d, nb.size());
        return d;
    }

    /// Equal as labelled graphs (same n, same edge set).
    friend bool operator==(const Graph& a, const Graph& b) {
        return a.adjacency_ == b.adjacency_;
    }

private:
    std::vector<std::vector<Vertex>> adjacency_;
    std::vector<std::vector<std::size_t>> incident_;
    std::vector<Edge> edges_;
};

/// Incremental construction for the reduction gadgets.
class GraphBuilder {
public:
    GraphBuilder() = default;
    explicit GraphBuilder(std::size_t n) : n_(n) {}

    /// Starts from a copy of g; vertex ids are preserved.
    explicit GraphBuilder(const Graph& g) : n_(g.num_vertices()), edges_(g.edges()) {}

    Vertex add_vertex() { return static_cast<Vertex>(n_++); }

    Vertex add_vertices(std::size_t count) {
        auto first = static_cast<Vertex>(n_);
        n_ += count;
        return first;
    }

    void add_edge(Vertex u, Vertex v) { edges_.emplace_back(u, v); }

    bool remove_edge(Vertex u, Vertex v) {
        auto it = std::find(edges_.begin(), edges_.end(), Edge(u, v));
        if (it == edges_.end())
            return false;
        edges_.erase(it);
        return true;
    }

    std::size_t num_vertices() const noexcept { return n_; }

    Graph build() const { return Graph(n_, edges_); }

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
};

/// Membership bitmap over the vertices of a host graph.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::size_t host_size) : bits_(host_size, 0) {}

    VertexSet(std::size_t host_size, std::span<const Vertex> members) : VertexSet(host_size) {
        for (Vertex v : members)
            insert(v);
    }

    VertexSet(std::size_t host_size, std::initializer_list<Vertex> members)
        : VertexSet(host_size, std::span<const Vertex>(members.begin(), members.size())) {}

    static VertexSet full(std::size_t host_size) {
        VertexSet s(host_size);
        std::fill(s.bits_.begin(), s.bits_.end(), 1);
        s.count_ = host_size;
        return s;
    }

    std::size_t host_size() const noexcept { return bits_.size(); }
    std::size_t size() const noexcept { return count_; }
    bool empty() const noexcept { return count_ == 0; }

    bool contains(Vertex v) const { return v < bits_.size() && bits_[v] != 0; }

    void insert(Vertex v) {
        if (v >= bits_.size())
            throw InvalidInput("vertex " + std::to_string(v) + " outside host of size " +
                               std::to_string(bits_.size()));
        if (!bits_[v]) {
            bits_[v] = 1;
            ++count_;
        }
    }

    void erase(Vertex v) {
        if (contains(v)) {
            bits_[v] = 0;
            --count_;
        }
    }

    std::vector<Vertex> members() const {
        std::vector<Vertex> out;
        out.reserve(count_);
        for (std::size_t v = 0; v < bits_.size(); ++v)
            if (bits_[v])
                out.push_back(static_cast<Vertex>(v));
        return out;
    }

    bool is_subset_of(const VertexSet& other) const {
        for (std::size_t v = 0; v < bits_.size(); ++v)
            if (bits_[v] && !other.contains(static_cast<Vertex>(v)))
                return false;
        return true;
    }

    VertexSet complement() const {
        VertexSet out(bits_.size());
        for (std::size_t v = 0; v < bits_.size(); ++v)
            if (!bits_[v])
                out.insert(static_cast<Vertex>(v));
        return out;
    }

    void require_host(const Graph& g) const {
        if (host_size() != g.num_vertices())
            throw InvalidInput("vertex set indexes " + std::to_string(host_size()) +
                               " vertices but graph has " + std::to_string(g.num_vertices()));
    }

    friend bool operator==(const VertexSet& a, const VertexSet& b) { return a.bits_ == b.bits_; }

private:
    std::vector<std::uint8_t> bits_;
    std::size_t count_ = 0;
};

struct DegreeProfile {
    std::vector<std::size_t> degree;
    std::size_t max_degree = 0;

    std::size_t count(std::size_t d) const {
        return static_cast<std::size_t>(std::count(degree.begin(), degree.end(), d));
    }
};

inline DegreeProfile degree_profile(const Graph& g) {
    DegreeProfile p;
    p.degree.resize(g.num_vertices());
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        p.degree[v] = g.degree(v);
        p.max_degree = std::max(p.max_degree, p.degree[v]);
    }
    return p;
}

struct Components {
    std::vector<std::size_t> label; // component index per vertex
    std::size_t count = 0;

    std::vector<std::vector<Vertex>> groups() const {
        std::vector<std::vector<Vertex>> out(count);
        for (std::size_t v = 0; v < label.size(); ++v)
            out[label[v]].push_back(static_cast<Vertex>(v));
        return out;
    }
};

inline Components components(const Graph& g) {
    constexpr auto unset = static_cast<std::size_t>(-1);
    Components c;
    c.label.assign(g.num_vertices(), unset);
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < g.num_vertices(); ++s) {
        if (c.label[s] != unset)
            continue;
        c.label[s] = c.count;
        stack.push_back(s);
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (Vertex w : g.neighbors(v)) {
                if (c.label[w] == unset) {
                    c.label[w] = c.count;
                    stack.push_back(w);
                }
            }
        }
        ++c.count;
    }
    return c;
}

inline bool is_connected(const Graph& g) { return components(g).count <= 1; }

/// mu(G) = e - v + kappa: dimension of the cycle space.
inline std::size_t cyclomatic(const Graph& g) {
    return g.num_edges() + components(g).count - g.num_vertices();
}

struct InducedSubgraph {
    Graph graph;
    std::vector<std::optional<Vertex>> to_new; // old id -> new id
    std::vector<Vertex> to_old;                // new id -> old id
};

/// Subgraph induced by the vertices in keep; new ids follow old id order.
inline InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& keep) {
    keep.require_host(g);
    InducedSubgraph out;
    out.to_new.assign(g.num_vertices(), std::nullopt);
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        if (keep.contains(v)) {
            out.to_new[v] = static_cast<Vertex>(out.to_old.size());
            out.to_old.push_back(v);
        }
    }
    std::vector<Edge> edges;
    for (const Edge& e : g.edges())
        if (out.to_new[e.first] && out.to_new[e.second])
            edges.emplace_back(*out.to_new[e.first], *out.to_new[e.second]);
    out.graph = Graph(out.to_old.size(), edges);
    return out;
}

inline InducedSubgraph delete_vertices(const Graph& g, const VertexSet& removed) {
    removed.require_host(g);
    return induced_subgraph(g, removed.complement());
}

/// BFS spanning forest. Edges are referenced by their index in g.edges().
struct SpanningForest {
    std::vector<std::size_t> tree_edges;
    std::vector<std::size_t> non_tree_edges;
    std::vector<std::optional<std::size_t>> parent_edge; // per vertex; empty at roots
    std::vector<std::size_t> depth;
};

inline SpanningForest spanning_forest(const Graph& g) {
    const std::size_t n = g.num_vertices();
    SpanningForest f;
    f.parent_edge.assign(n, std::nullopt);
    f.depth.assign(n, 0);
    std::vector<std::uint8_t> seen(n, 0);
    std::vector<std::uint8_t> in_tree(g.num_edges(), 0);
    std::queue<Vertex> queue;
    for (Vertex root = 0; root < n; ++root) {
        if (seen[root])
            continue;
        seen[root] = 1;
        queue.push(root);
        while (!queue.empty()) {
            Vertex v = queue.front();
            queue.pop();
            for (std::size_t ei : g.incident_edges(v)) {
                const Edge& e = g.edge(ei);
                Vertex w = e.first == v ? e.second : e.first;
                if (seen[w])
                    continue;
                seen[w] = 1;
                f.parent_edge[w] = ei;
                f.depth[w] = f.depth[v] + 1;
                in_tree[ei] = 1;
                f.tree_edges.push_back(ei);
                queue.push(w);
            }
        }
    }
    for (std::size_t ei = 0; ei < g.num_edges(); ++ei)
        if (!in_tree[ei])
            f.non_tree_edges.push_back(ei);
    return f;
}

/// Edge indices of the unique cycle formed by a non-tree edge and the forest.
inline std::vector<std::size_t> fundamental_cycle(const Graph& g, const SpanningForest& f,
                                                  std::size_t non_tree_edge) {
    const Edge& e = g.edge(non_tree_edge);
    auto climb = [&](Vertex v) {
        const Edge& pe = g.edge(*f.parent_edge[v]);
        return std::pair{*f.parent_edge[v], pe.first == v ? pe.second : pe.first};
    };
    std::vector<std::size_t> left{non_tree_edge};
    std::vector<std::size_t> right;
    Vertex a = e.first;
    Vertex b = e.second;
    while (f.depth[a] > f.depth[b]) {
        auto [ei, up] = climb(a);
        left.push_back(ei);
        a = up;
    }
    while (f.depth[b] > f.depth[a]) {
        auto [ei, up] = climb(b);
        right.push_back(ei);
        b = up;
    }
    while (a != b) {
        auto [ea, ua] = climb(a);
        auto [eb, ub] = climb(b);
        left.push_back(ea);
        right.push_back(eb);
        a = ua;
        b = ub;
    }
    left.insert(left.end(), right.rbegin(), right.rend());
    return left;
}

namespace graphs {

inline Graph path(std::size_t n) {
    GraphBuilder b(n);
    for (std::size_t i = 1; i < n; ++i)
        b.add_edge(static_cast<Vertex>(i - 1), static_cast<Vertex>(i));
    return b.build();
}

inline Graph cycle(std::size_t n) {
    if (n < 3)
        throw InvalidInput("cycle needs at least 3 vertices");
    GraphBuilder b(n);
    for (std::size_t i = 0; i < n; ++i)
        b.add_edge(static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n));
    return b.build();
}

inline Graph complete(std::size_t n) {
    GraphBuilder b(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            b.add_edge(u, v);
    return b.build();
}

inline Graph star(std::size_t leaves) {
    GraphBuilder b(leaves + 1);
    for (std::size_t i = 1; i <= leaves; ++i)
        b.add_edge(0, static_cast<Vertex>(i));
    return b.build();
}

inline Graph petersen() {
    GraphBuilder b(10);
    for (Vertex i = 0; i < 5; ++i) {
        b.add_edge(i, (i + 1) % 5);
        b.add_edge(i, i + 5);
        b.add_edge(i + 5, (i + 2) % 5 + 5);
    }
    return b.build();
}

/// Disjoint union; vertices of b are shifted by a.num_vertices().
inline Graph disjoint_union(const Graph& a, const Graph& b) {
    GraphBuilder out(a);
    Vertex shift = out.add_vertices(b.num_vertices());
    for (const Edge& e : b.edges())
        out.add_edge(e.first + shift, e.second + shift);
    return out.build();
}

} // namespace graphs

} // namespace kconv
