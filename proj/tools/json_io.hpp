#pragma once

// JSON encodings used by the command-line front end.

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include <kconv/deg3.hpp>
#include <kconv/graph.hpp>
#include <kconv/percolation.hpp>
#include <kconv/polymatroid.hpp>
#include <kconv/satred.hpp>
#include <kconv/torus.hpp>

namespace kconv::io {

using nlohmann::json;

inline json to_json(const Graph& g) {
    json edges = json::array();
    for (const Edge& e : g.edges())
        edges.push_back({e.first, e.second});
    return {{"n", g.num_vertices()}, {"edges", std::move(edges)}};
}

inline Graph graph_from_json(const json& j) {
    try {
        auto n = j.at("n").get<std::size_t>();
        std::vector<Edge> edges;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2)
                throw InvalidInput("edge must be a pair");
            edges.emplace_back(e[0].get<Vertex>(), e[1].get<Vertex>());
        }
        return Graph(n, edges);
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("bad graph JSON: ") + e.what());
    }
}

inline json to_json(const VertexSet& s) { return s.members(); }

inline VertexSet seed_from_json(const json& j, std::size_t n) {
    try {
        return VertexSet(n, j.get<std::vector<Vertex>>());
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("bad seed JSON: ") + e.what());
    }
}

inline json to_json(const PercolationTrace& t) {
    json forced = t.forced_white;
    return {{"threshold", t.threshold},
            {"seed", to_json(t.seed)},
            {"rounds", t.rounds},
            {"num_rounds", t.rounds.size()},
            {"final_black", to_json(t.final_black)},
            {"converted_all", t.converted_all},
            {"hit_round_cap", t.hit_round_cap},
            {"forced_white", std::move(forced)}};
}

template <class F>
std::string hex(const F& x) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(x.value()));
    return buf;
}

template <class F>
json to_json(const PolymatroidInstance<F>& inst) {
    json lines = json::array();
    for (std::size_t i = 0; i < inst.size(); ++i) {
        const auto& l = inst.line(i);
        json a = json::array(), b = json::array();
        for (const auto& x : l.a)
            a.push_back(hex(x));
        for (const auto& x : l.b)
            b.push_back(hex(x));
        lines.push_back({{"element", i}, {"owner", l.owner}, {"a", std::move(a)}, {"b", std::move(b)}});
    }
    return {{"field_bits", F::bits}, {"dimension", inst.dimension()}, {"lines", std::move(lines)}};
}

inline json to_json(const ReductionOutput& r) {
    json roles = json::array();
    for (Vertex v = 0; v < r.graph.num_vertices(); ++v)
        roles.push_back({{"vertex", v}, {"role", to_string(r.roles[v].role)}, {"index", r.roles[v].index}});
    return {{"n", r.n()},
            {"m", r.m()},
            {"s", r.s},
            {"num_leaves", r.leaves.size()},
            {"leaves", to_json(r.leaves)},
            {"vertices", r.graph.num_vertices()},
            {"max_degree", r.graph.max_degree()},
            {"x", r.x},
            {"y", r.y},
            {"z", r.z},
            {"u", r.u},
            {"v", r.v},
            {"a", r.a},
            {"roles", std::move(roles)}};
}

inline json to_json(const EquivalenceReport& r) {
    return {{"satisfiable", r.satisfiable},
            {"has_conversion_set_of_size_s", r.has_set_of_size_s},
            {"s", r.s},
            {"num_leaves", r.leaves},
            {"vertices", r.vertices},
            {"max_degree", r.max_degree},
            {"assignment", r.assignment},
            {"witness_percolates", r.witness_percolates},
            {"order_violations", r.order_violations},
            {"consistent", r.consistent()}};
}

inline json to_json(const TorusConstruction& c) {
    json cells = json::array();
    for (auto [i, j] : c.grid.black_cells())
        cells.push_back({i, j});
    const auto& p = c.params;
    json out = {{"m", p.m},
                {"n", p.n},
                {"case", to_string(p.tag)},
                {"transposed", p.transposed},
                {"k", p.k},
                {"a", p.a},
                {"size", c.size},
                {"target", p.target_size()},
                {"target_is_bound", p.special()},
                {"verified", c.verified},
                {"cells", std::move(cells)}};
    if (!p.special()) {
        out["l"] = p.l;
        out["b"] = p.b;
        out["g"] = p.g;
    }
    if (c.extra)
        out["extra"] = {c.extra->first, c.extra->second};
    return out;
}

inline json to_json(const Deg3Result& r) {
    json comps = json::array();
    for (const auto& c : r.components) {
        json steps = json::array();
        for (auto s : c.steps)
            steps.push_back(to_string(s));
        comps.push_back({{"vertices", c.vertices},
                         {"method", c.method},
                         {"size", c.size},
                         {"steps", std::move(steps)},
                         {"completed_vertices", c.completed_vertices},
                         {"rank", c.rank},
                         {"nu", c.nu},
                         {"attempts", c.attempts}});
    }
    return {{"size", r.size}, {"witness", to_json(r.witness)}, {"rng_seed", r.seed}, {"components", std::move(comps)}};
}

} // namespace kconv::io
