#pragma once

// Minimum irreversible 2-conversion sets on graphs of maximum degree 3.
//
// Each connected component G is reduced to a 3-regular graph G3:
//   1. attach a copy of H5 at every degree-1 vertex (optimum +1 each),
//   2. depending on the number d2 of degree-2 vertices:
//        d2 = 0          nothing to do
//        d2 = 1          two disjoint copies joined at the degree-2 vertex (optimum x2)
//        d2 = 2, adjacent     subdivide uv by x, hang y on x, attach H5 at y (+2),
//                             then continue as the nonadjacent case
//        d2 = 2, nonadjacent  add the edge uv (optimum unchanged)
//        d2 >= 3         attach a caterpillar whose leaves are the degree-2 vertices
// The vertex set V2 of the graph just before the caterpillar is kept. In
// G3 the function f(X) = mu(G3) - mu(G3 - X) is the rank function of a
// linear 2-polymatroid (lines from the cycle space), and the spanning sets
// of its restriction to V2 are exactly the conversion sets of G3[V2]. A
// minimum spanning set is mapped back through the reduction steps and the
// result is re-verified by simulation.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "exact.hpp"
#include "graph.hpp"
#include "percolation.hpp"
#include "polymatroid.hpp"

namespace kconv {

/// Cycle v1 v2 v3 v4 v5 plus chords v2v4 and v3v5; v1 (id 0) has degree 2.
inline Graph h5_graph() {
    return Graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {1, 3}, {2, 4}});
}

enum class StepKind {
    attach_h5,
    split_adjacent_pair,
    add_edge_nonadjacent,
    duplicate_graph,
    attach_caterpillar,
};

inline const char* to_string(StepKind k) {
    switch (k) {
    case StepKind::attach_h5: return "attach_h5";
    case StepKind::split_adjacent_pair: return "split_adjacent_pair";
    case StepKind::add_edge_nonadjacent: return "add_edge_nonadjacent";
    case StepKind::duplicate_graph: return "duplicate_graph";
    case StepKind::attach_caterpillar: return "attach_caterpillar";
    }
    return "unknown";
}

/// C2(after) = scale * C2(before) + offset, when exact.
struct OptimumRelation {
    std::size_t scale = 1;
    std::size_t offset = 0;
    bool exact = true;

    std::optional<std::size_t> apply(std::size_t before) const {
        if (!exact)
            return std::nullopt;
        return scale * before + offset;
    }
};

struct ReductionStep {
    StepKind kind{};
    Graph before;
    Graph after;
    std::vector<Vertex> remap; // id in `before` -> id in `after`
    /// Named vertex groups, ids in `after`. attach_h5: "v1".."v5" (one entry
    /// per copy); split: "u","v","x","y"; add edge: "u","v"; duplicate: "v",
    /// "v_copy","copy"; caterpillar: "leaves","spine".
    std::map<std::string, std::vector<Vertex>> roles;
    OptimumRelation relation;

    const std::vector<Vertex>& role(const std::string& name) const { return roles.at(name); }
};

namespace detail {

inline std::vector<Vertex> identity_remap(std::size_t n) {
    std::vector<Vertex> r(n);
    for (std::size_t i = 0; i < n; ++i)
        r[i] = static_cast<Vertex>(i);
    return r;
}

inline void require_maxdeg3(const Graph& g) {
    if (g.max_degree() > 3)
        throw InvalidInput("graph has maximum degree " + std::to_string(g.max_degree()) +
                           "; at most 3 is supported");
}

inline std::vector<Vertex> vertices_of_degree(const Graph& g, std::size_t d) {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        if (g.degree(v) == d)
            out.push_back(v);
    return out;
}

} // namespace detail

/// Identifies v1 of a fresh H5 copy with each vertex in `at`.
inline ReductionStep attach_h5_at(const Graph& g, std::span<const Vertex> at) {
    ReductionStep step;
    step.kind = StepKind::attach_h5;
    step.before = g;
    step.remap = detail::identity_remap(g.num_vertices());
    GraphBuilder b(g);
    auto& v1 = step.roles["v1"];
    auto& v2 = step.roles["v2"];
    auto& v3 = step.roles["v3"];
    auto& v4 = step.roles["v4"];
    auto& v5 = step.roles["v5"];
    for (Vertex v : at) {
        Vertex first = b.add_vertices(4);
        Vertex w2 = first, w3 = first + 1, w4 = first + 2, w5 = first + 3;
        b.add_edge(v, w2);
        b.add_edge(w2, w3);
        b.add_edge(w3, w4);
        b.add_edge(w4, w5);
        b.add_edge(w5, v);
        b.add_edge(w2, w4);
        b.add_edge(w3, w5);
        v1.push_back(v);
        v2.push_back(w2);
        v3.push_back(w3);
        v4.push_back(w4);
        v5.push_back(w5);
    }
    step.after = b.build();
    step.relation = {1, at.size(), true};
    return step;
}

/// Attaches H5 at every degree-1 vertex; an identity step if there are none.
inline ReductionStep attach_h5_to_leaves(const Graph& g) {
    detail::require_maxdeg3(g);
    auto leaves = detail::vertices_of_degree(g, 1);
    return attach_h5_at(g, leaves);
}

/// Removes edge uv, adds x adjacent to u, v and a new pendant y.
inline ReductionStep split_adjacent_pair(const Graph& g, Vertex u, Vertex v) {
    if (!g.has_edge(u, v))
        throw InvalidInput("split_adjacent_pair needs an edge");
    ReductionStep step;
    step.kind = StepKind::split_adjacent_pair;
    step.before = g;
    step.remap = detail::identity_remap(g.num_vertices());
    GraphBuilder b(g);
    b.remove_edge(u, v);
    Vertex x = b.add_vertex();
    Vertex y = b.add_vertex();
    b.add_edge(u, x);
    b.add_edge(v, x);
    b.add_edge(x, y);
    step.after = b.build();
    step.roles = {{"u", {u}}, {"v", {v}}, {"x", {x}}, {"y", {y}}};
    step.relation = {1, 1, true};
    return step;
}

inline ReductionStep add_edge_nonadjacent(const Graph& g, Vertex u, Vertex v) {
    if (u == v || g.has_edge(u, v))
        throw InvalidInput("add_edge_nonadjacent needs two nonadjacent vertices");
    ReductionStep step;
    step.kind = StepKind::add_edge_nonadjacent;
    step.before = g;
    step.remap = detail::identity_remap(g.num_vertices());
    GraphBuilder b(g);
    b.add_edge(u, v);
    step.after = b.build();
    step.roles = {{"u", {u}}, {"v", {v}}};
    step.relation = {1, 0, true};
    return step;
}

/// Two disjoint copies of g, joined by an edge between the copies of v.
inline ReductionStep duplicate_graph(const Graph& g, Vertex v) {
    ReductionStep step;
    step.kind = StepKind::duplicate_graph;
    step.before = g;
    step.remap = detail::identity_remap(g.num_vertices());
    GraphBuilder b(g);
    const Vertex shift = b.add_vertices(g.num_vertices());
    for (const Edge& e : g.edges())
        b.add_edge(e.first + shift, e.second + shift);
    b.add_edge(v, v + shift);
    step.after = b.build();
    std::vector<Vertex> copy(g.num_vertices());
    for (Vertex i = 0; i < g.num_vertices(); ++i)
        copy[i] = i + shift;
    step.roles = {{"v", {v}}, {"v_copy", {v + shift}}, {"copy", std::move(copy)}};
    step.relation = {2, 0, true};
    return step;
}

/// Caterpillar with the given k >= 3 degree-2 vertices as leaves and a
/// spine path w1..w_{k-2} of new degree-3 vertices.
inline ReductionStep attach_caterpillar(const Graph& g, std::span<const Vertex> leaves) {
    const std::size_t k = leaves.size();
    if (k < 3)
        throw InvalidInput("caterpillar needs at least 3 leaves");
    ReductionStep step;
    step.kind = StepKind::attach_caterpillar;
    step.before = g;
    step.remap = detail::identity_remap(g.num_vertices());
    GraphBuilder b(g);
    const Vertex first = b.add_vertices(k - 2);
    std::vector<Vertex> spine(k - 2);
    for (std::size_t i = 0; i < k - 2; ++i)
        spine[i] = first + static_cast<Vertex>(i);
    for (std::size_t i = 0; i + 1 < spine.size(); ++i)
        b.add_edge(spine[i], spine[i + 1]);
    // w1 takes the first two leaves, the last spine vertex the last two,
    // every spine vertex in between one.
    if (spine.size() == 1) {
        for (Vertex leaf : leaves)
            b.add_edge(spine.front(), leaf);
    } else {
        b.add_edge(spine.front(), leaves[0]);
        b.add_edge(spine.front(), leaves[1]);
        for (std::size_t i = 1; i + 1 < spine.size(); ++i)
            b.add_edge(spine[i], leaves[i + 1]);
        b.add_edge(spine.back(), leaves[k - 2]);
        b.add_edge(spine.back(), leaves[k - 1]);
    }
    step.after = b.build();
    step.roles = {{"leaves", std::vector<Vertex>(leaves.begin(), leaves.end())}, {"spine", spine}};
    step.relation = {1, 0, false};
    return step;
}

/// Maps a conversion set of step.after to one of step.before that is no
/// larger than the optimum relation allows.
inline VertexSet map_back(const ReductionStep& step, const VertexSet& on_after) {
    on_after.require_host(step.after);
    const std::size_t n = step.before.num_vertices();
    VertexSet out(n);
    auto restrict_to_before = [&] {
        for (Vertex v = 0; v < n; ++v)
            if (on_after.contains(step.remap[v]))
                out.insert(v);
    };
    switch (step.kind) {
    case StepKind::attach_h5:
        // drop the H5 internals, seed the (degree-1 in `before`) attachment point
        restrict_to_before();
        for (Vertex v : step.role("v1"))
            out.insert(v);
        break;
    case StepKind::split_adjacent_pair: {
        restrict_to_before();
        const Vertex u = step.role("u")[0], v = step.role("v")[0], x = step.role("x")[0];
        if (on_after.contains(x)) {
            if (!out.contains(u))
                out.insert(u);
            else if (!out.contains(v))
                out.insert(v);
        }
        break;
    }
    case StepKind::add_edge_nonadjacent:
    case StepKind::attach_caterpillar:
        restrict_to_before();
        break;
    case StepKind::duplicate_graph: {
        const auto& copy = step.role("copy");
        VertexSet second(n);
        for (Vertex v = 0; v < n; ++v) {
            if (on_after.contains(v))
                out.insert(v);
            if (on_after.contains(copy[v]))
                second.insert(v);
        }
        if (second.size() < out.size())
            out = std::move(second);
        break;
    }
    }
    return out;
}

struct Pipeline {
    Graph original;
    std::vector<ReductionStep> steps;
    std::size_t leaf_attachments = 0;

    /// Min-degree-2 graph after the first H5 attachments.
    const Graph& g2() const { return steps.front().after; }
    /// The 3-regular end of the pipeline.
    const Graph& completed() const { return steps.back().after; }

    /// Vertices of G3 that existed before the caterpillar (all of G3 otherwise).
    VertexSet v2() const {
        const Graph& g3 = completed();
        if (steps.back().kind != StepKind::attach_caterpillar)
            return VertexSet::full(g3.num_vertices());
        VertexSet s(g3.num_vertices());
        for (Vertex v = 0; v < steps.back().before.num_vertices(); ++v)
            s.insert(v);
        return s;
    }

    /// G3 induced on V2: the graph whose conversion sets are the spanning
    /// sets of the V2 restriction.
    const Graph& pre_completion() const {
        return steps.back().kind == StepKind::attach_caterpillar ? steps.back().before : completed();
    }

    /// Predicted C2(G3) from C2(G), when no caterpillar is involved.
    std::optional<std::size_t> predicted_optimum(std::size_t original_optimum) const {
        std::optional<std::size_t> v = original_optimum;
        for (const auto& s : steps)
            if (v)
                v = s.relation.apply(*v);
        return v;
    }

    VertexSet map_back_all(VertexSet on_completed, bool verify = true) const {
        for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
            on_completed = map_back(*it, on_completed);
            if (verify && !is_conversion_set(it->before, on_completed, 2))
                throw ConsistencyError(std::string("back-mapped set fails to percolate before step ") +
                                       to_string(it->kind));
        }
        return on_completed;
    }
};

/// Reduction steps from a connected min-degree-2, max-degree-3 graph to a
/// 3-regular one.
inline std::vector<ReductionStep> normalize_degree2(const Graph& g2) {
    detail::require_maxdeg3(g2);
    for (Vertex v = 0; v < g2.num_vertices(); ++v)
        if (g2.degree(v) < 2)
            throw InvalidInput("normalize_degree2 needs minimum degree 2");
    if (!is_connected(g2))
        throw InvalidInput("normalize_degree2 needs a connected graph");

    std::vector<ReductionStep> steps;
    auto deg2 = detail::vertices_of_degree(g2, 2);
    if (deg2.size() == 1) {
        steps.push_back(duplicate_graph(g2, deg2[0]));
    } else if (deg2.size() == 2) {
        Vertex u = deg2[0], v = deg2[1];
        const Graph* current = &g2;
        if (g2.has_edge(u, v)) {
            steps.push_back(split_adjacent_pair(g2, u, v));
            Vertex y = steps.back().role("y")[0];
            steps.push_back(attach_h5_at(steps.back().after, std::span<const Vertex>(&y, 1)));
            current = &steps.back().after;
        }
        steps.push_back(add_edge_nonadjacent(*current, u, v));
    } else if (deg2.size() >= 3) {
        steps.push_back(attach_caterpillar(g2, deg2));
    }
    return steps;
}

/// Full pipeline for a connected graph of maximum degree 3 on >= 2 vertices.
inline Pipeline build_pipeline(const Graph& g) {
    detail::require_maxdeg3(g);
    if (g.num_vertices() < 2 || !is_connected(g))
        throw InvalidInput("build_pipeline needs a connected graph with at least 2 vertices");
    Pipeline p;
    p.original = g;
    p.steps.push_back(attach_h5_to_leaves(g));
    p.leaf_attachments = p.steps.front().role("v1").size();
    auto rest = normalize_degree2(p.steps.front().after);
    for (auto& s : rest)
        p.steps.push_back(std::move(s));
    return p;
}

/// One line per vertex of a 3-regular graph: h(v) is spanned by the
/// cycle-space columns of two of its edges (the third is their sum).
/// Ambient dimension is mu(G3), coordinates indexed by fundamental cycles.
template <class F = Gf32>
PolymatroidInstance<F> cographic_lines(const Graph& g3) {
    for (Vertex v = 0; v < g3.num_vertices(); ++v)
        if (g3.degree(v) != 3)
            throw InvalidInput("cographic_lines needs a 3-regular graph");
    const auto forest = spanning_forest(g3);
    const std::size_t r = forest.non_tree_edges.size();
    std::vector<std::vector<F>> column(g3.num_edges(), std::vector<F>(r));
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t e : fundamental_cycle(g3, forest, forest.non_tree_edges[j]))
            column[e][j] = F::one();
    PolymatroidInstance<F> inst(r);
    for (Vertex v = 0; v < g3.num_vertices(); ++v) {
        auto inc = g3.incident_edges(v);
        inst.add_line({column[inc[0]], column[inc[1]], v});
    }
    return inst;
}

/// f(X) = mu(G) - mu(G - X), computed directly on the graph.
inline std::size_t cycle_rank_drop(const Graph& g, const VertexSet& x) {
    return cyclomatic(g) - cyclomatic(delete_vertices(g, x).graph);
}

/// Checks the line representation against mu on every singleton and on
/// `samples` random subsets. Throws ConsistencyError on disagreement.
template <class F, class Rng>
void verify_cographic(const Graph& g3, const PolymatroidInstance<F>& inst, Rng& rng, std::size_t samples) {
    const std::size_t n = g3.num_vertices();
    auto check = [&](const std::vector<Vertex>& xs) {
        ElementSet elements(xs.begin(), xs.end());
        const std::size_t lhs = inst.rank(elements);
        const std::size_t rhs = cycle_rank_drop(g3, VertexSet(n, xs));
        if (lhs != rhs)
            throw ConsistencyError("cycle-space representation disagrees with mu on a set of " +
                                   std::to_string(xs.size()) + " vertices");
    };
    for (Vertex v = 0; v < n; ++v)
        check({v});
    std::bernoulli_distribution coin(0.5);
    for (std::size_t s = 0; s < samples; ++s) {
        std::vector<Vertex> xs;
        for (Vertex v = 0; v < n; ++v)
            if (coin(rng))
                xs.push_back(v);
        check(xs);
    }
}

struct Deg3Options {
    std::uint64_t seed = 0x5eed;
    ParityOptions parity{};
    unsigned retries = 4;
    std::size_t representation_samples = 16;
};

struct ComponentReport {
    std::vector<Vertex> vertices; // original ids
    std::string method;           // "closed_form" or "pipeline"
    std::size_t size = 0;
    std::vector<StepKind> steps;
    std::size_t completed_vertices = 0;
    std::size_t rank = 0; // f(V2)
    std::size_t nu = 0;
    unsigned attempts = 0;
};

struct Deg3Result {
    std::size_t size = 0;
    VertexSet witness;
    std::uint64_t seed = 0;
    std::vector<ComponentReport> components;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline VertexSet solve_pipeline_component(const Graph& comp, std::mt19937_64& rng, const Deg3Options& opt,
                                          ComponentReport& report) {
    Pipeline p = build_pipeline(comp);
    const Graph& g3 = p.completed();
    for (const auto& s : p.steps)
        report.steps.push_back(s.kind);
    report.completed_vertices = g3.num_vertices();

    auto inst = cographic_lines(g3);
    verify_cographic(g3, inst, rng, opt.representation_samples);

    const auto v2 = p.v2().members();
    ElementSet ground(v2.begin(), v2.end());
    std::string last_error;
    for (unsigned attempt = 0; attempt <= opt.retries; ++attempt) {
        report.attempts = attempt + 1;
        try {
            auto span_res = min_spanning_set(inst, std::span<const std::size_t>(ground), rng, opt.parity);
            VertexSet s3(g3.num_vertices());
            VertexSet s_pre(p.pre_completion().num_vertices());
            for (std::size_t e : span_res.spanning) {
                s3.insert(inst.line(e).owner);
                s_pre.insert(inst.line(e).owner);
            }
            if (!is_conversion_set(p.pre_completion(), s_pre, 2))
                throw ConsistencyError("spanning set of the V2 restriction does not percolate");
            VertexSet back = p.map_back_all(std::move(s3));
            report.rank = span_res.rank;
            report.nu = span_res.nu;
            return back;
        } catch (const ConsistencyError& e) {
            last_error = e.what();
        }
    }
    throw ConsistencyError("max-degree-3 solver failed after retries: " + last_error);
}

} // namespace detail

/// Minimum irreversible 2-conversion set of a graph with maximum degree 3.
inline Deg3Result min_i2cs_maxdeg3(const Graph& g, const Deg3Options& opt = {}) {
    detail::require_maxdeg3(g);
    Deg3Result result;
    result.seed = opt.seed;
    result.witness = VertexSet(g.num_vertices());
    auto groups = components(g).groups();
    for (std::size_t c = 0; c < groups.size(); ++c) {
        const auto& verts = groups[c];
        VertexSet keep(g.num_vertices(), verts);
        auto sub = induced_subgraph(g, keep);
        ComponentReport report;
        report.vertices = verts;
        VertexSet local;
        if (sub.graph.max_degree() <= 2) {
            report.method = "closed_form";
            local = closed_form_witness_maxdeg2(sub.graph);
        } else {
            report.method = "pipeline";
            std::mt19937_64 rng(detail::splitmix64(opt.seed ^ detail::splitmix64(c)));
            local = detail::solve_pipeline_component(sub.graph, rng, opt, report);
        }
        if (!is_conversion_set(sub.graph, local, 2))
            throw ConsistencyError("component witness fails to percolate");
        report.size = local.size();
        for (Vertex v : local.members())
            result.witness.insert(sub.to_old[v]);
        result.components.push_back(std::move(report));
    }
    if (!is_conversion_set(g, result.witness, 2))
        throw ConsistencyError("assembled witness fails to percolate");
    result.size = result.witness.size();
    return result;
}

} // namespace kconv
