#pragma once

// Irreversible k-threshold process (k-neighbour bootstrap percolation).
// A white vertex turns black in round t+1 when at least k of its
// neighbours are black after round t; black vertices never revert.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "graph.hpp"

namespace kconv {

struct PercolationTrace {
    VertexSet seed;
    std::size_t threshold = 0;
    std::vector<std::vector<Vertex>> rounds; // vertices turning black in each round
    VertexSet final_black;
    bool converted_all = false;
    bool hit_round_cap = false;
    std::vector<Vertex> forced_white; // unseeded vertices of degree < k

    /// Round in which v turned black: 0 for seeds, empty if never.
    std::optional<std::size_t> round_of(Vertex v) const {
        if (seed.contains(v))
            return 0;
        for (std::size_t r = 0; r < rounds.size(); ++r)
            for (Vertex w : rounds[r])
                if (w == v)
                    return r + 1;
        return std::nullopt;
    }
};

inline void require_threshold(std::size_t k) {
    if (k < 1)
        throw InvalidInput("threshold k must be at least 1");
}

/// One synchronous round: the white vertices with >= k black neighbours.
inline VertexSet step(const Graph& g, const VertexSet& black, std::size_t k) {
    require_threshold(k);
    black.require_host(g);
    VertexSet next(g.num_vertices());
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        if (black.contains(v))
            continue;
        std::size_t count = 0;
        for (Vertex w : g.neighbors(v))
            count += black.contains(w);
        if (count >= k)
            next.insert(v);
    }
    return next;
}

/// Runs synchronous rounds until nothing changes or max_rounds nonempty
/// rounds have happened (default n, which always suffices).
inline PercolationTrace run(const Graph& g, const VertexSet& seed, std::size_t k,
                            std::optional<std::size_t> max_rounds = std::nullopt) {
    require_threshold(k);
    seed.require_host(g);
    const std::size_t n = g.num_vertices();
    const std::size_t cap = max_rounds.value_or(n);

    PercolationTrace trace;
    trace.seed = seed;
    trace.threshold = k;
    trace.final_black = seed;
    for (Vertex v = 0; v < n; ++v)
        if (!seed.contains(v) && g.degree(v) < k)
            trace.forced_white.push_back(v);

    // black-neighbour counts, updated from each round's frontier
    std::vector<std::size_t> count(n, 0);
    std::vector<Vertex> frontier = seed.members();
    while (true) {
        std::vector<Vertex> candidates;
        for (Vertex v : frontier) {
            for (Vertex w : g.neighbors(v)) {
                if (trace.final_black.contains(w))
                    continue;
                if (++count[w] == k)
                    candidates.push_back(w);
            }
        }
        if (candidates.empty())
            break;
        if (trace.rounds.size() == cap) {
            trace.hit_round_cap = true;
            break;
        }
        std::sort(candidates.begin(), candidates.end());
        for (Vertex v : candidates)
            trace.final_black.insert(v);
        trace.rounds.push_back(candidates);
        frontier = std::move(candidates);
    }
    trace.converted_all = trace.final_black.size() == n;
    return trace;
}

/// Reusable scratch space for many closure computations on one graph.
/// Order of conversions is irrelevant for the fixpoint, so this uses a
/// plain work queue instead of synchronous rounds.
class Percolator {
public:
    Percolator(const Graph& g, std::size_t k)
        : g_(&g), k_(k), count_(g.num_vertices()), black_(g.num_vertices()) {
        require_threshold(k);
        queue_.reserve(g.num_vertices());
    }

    std::size_t threshold() const noexcept { return k_; }

    /// Number of black vertices at the fixpoint.
    std::size_t closure_size(std::span<const Vertex> seed) {
        const std::size_t n = g_->num_vertices();
        std::fill(count_.begin(), count_.end(), 0);
        std::fill(black_.begin(), black_.end(), 0);
        queue_.clear();
        for (Vertex v : seed) {
            if (!black_[v]) {
                black_[v] = 1;
                queue_.push_back(v);
            }
        }
        for (std::size_t head = 0; head < queue_.size() && queue_.size() < n; ++head) {
            for (Vertex w : g_->neighbors(queue_[head])) {
                if (!black_[w] && ++count_[w] >= k_) {
                    black_[w] = 1;
                    queue_.push_back(w);
                }
            }
        }
        return queue_.size();
    }

    bool percolates(std::span<const Vertex> seed) {
        return closure_size(seed) == g_->num_vertices();
    }

    /// Membership of the last closure computed.
    bool is_black(Vertex v) const { return black_[v] != 0; }

private:
    const Graph* g_;
    std::size_t k_;
    std::vector<std::size_t> count_;
    std::vector<std::uint8_t> black_;
    std::vector<Vertex> queue_;
};

inline bool is_conversion_set(const Graph& g, const VertexSet& seed, std::size_t k) {
    require_threshold(k);
    seed.require_host(g);
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        if (!seed.contains(v) && g.degree(v) < k)
            return false;
    Percolator p(g, k);
    auto members = seed.members();
    return p.percolates(members);
}

/// The residual white set W of a non-percolating seed. Every w in W keeps
/// at least deg(w) - k + 1 neighbours inside W, which is what blocks it.
inline VertexSet stuck_certificate(const Graph& g, const VertexSet& seed, std::size_t k) {
    PercolationTrace trace = run(g, seed, k);
    if (trace.converted_all)
        throw InvalidInput("seed percolates; there is no stuck certificate");
    return trace.final_black.complement();
}

/// Checks the certificate property independently of the simulation.
inline bool certifies_stuck(const Graph& g, const VertexSet& white, std::size_t k) {
    white.require_host(g);
    if (white.empty())
        return false;
    for (Vertex w : white.members()) {
        std::size_t inside = 0;
        for (Vertex x : g.neighbors(w))
            inside += white.contains(x);
        if (inside + k < g.degree(w) + 1)
            return false;
    }
    return true;
}

} // namespace kconv
