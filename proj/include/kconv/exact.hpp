#pragma once

// Exhaustive minimum irreversible k-conversion sets. This is the ground
// truth every other solver in the library is checked against.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

#include "graph.hpp"
#include "percolation.hpp"

namespace kconv {

struct SearchBudget {
    /// Refuse graphs larger than this (exhaustive search is exponential).
    std::size_t max_vertices = 30;
    /// Upper bound on candidate seeds examined; 0 means unlimited.
    std::uint64_t max_candidates = 0;
    unsigned workers = 1;
    /// Seed every vertex of degree < k up front. Disabling it is only
    /// useful for checking that the pruning is sound.
    bool forced_inclusion = true;
};

struct ExactResult {
    std::size_t size = 0;
    VertexSet witness;
    std::uint64_t candidates_checked = 0;
};

namespace detail {

inline std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t r) {
    if (r > n)
        return 0;
    r = std::min(r, n - r);
    long double acc = 1;
    for (std::uint64_t i = 1; i <= r; ++i) {
        acc = acc * static_cast<long double>(n - r + i) / static_cast<long double>(i);
        if (acc > 1e18L)
            return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(acc + 0.5L);
}

// On a 3-regular graph with k = 2 a seed percolates exactly when its
// complement is a forest, which union-find decides without simulation.
class ForestTest {
public:
    explicit ForestTest(const Graph& g) : g_(&g), parent_(g.num_vertices()), in_seed_(g.num_vertices()) {}

    bool complement_is_forest(std::span<const Vertex> seed) {
        std::iota(parent_.begin(), parent_.end(), Vertex{0});
        std::fill(in_seed_.begin(), in_seed_.end(), 0);
        for (Vertex v : seed)
            in_seed_[v] = 1;
        for (const Edge& e : g_->edges()) {
            if (in_seed_[e.first] || in_seed_[e.second])
                continue;
            Vertex a = find(e.first), b = find(e.second);
            if (a == b)
                return false;
            parent_[a] = b;
        }
        return true;
    }

private:
    Vertex find(Vertex v) {
        while (parent_[v] != v)
            v = parent_[v] = parent_[parent_[v]];
        return v;
    }

    const Graph* g_;
    std::vector<Vertex> parent_;
    std::vector<std::uint8_t> in_seed_;
};

class SeedChecker {
public:
    SeedChecker(const Graph& g, std::size_t k)
        : percolator_(g, k), cubic_fvs_(k == 2 && g.num_vertices() > 0 && is_cubic(g)), forest_(g) {}

    bool percolates(std::span<const Vertex> seed) {
        return cubic_fvs_ ? forest_.complement_is_forest(seed) : percolator_.percolates(seed);
    }

private:
    static bool is_cubic(const Graph& g) {
        for (Vertex v = 0; v < g.num_vertices(); ++v)
            if (g.degree(v) != 3)
                return false;
        return true;
    }

    Percolator percolator_;
    bool cubic_fvs_;
    ForestTest forest_;
};

struct SizeSearch {
    const Graph& g;
    std::size_t k;
    std::vector<Vertex> forced;
    std::vector<Vertex> free;
    const SearchBudget& budget;
    std::atomic<std::uint64_t>& checked;

    void charge() {
        auto c = ++checked;
        if (budget.max_candidates != 0 && c > budget.max_candidates)
            throw BudgetExceeded("exhaustive search exceeded " +
                                 std::to_string(budget.max_candidates) + " candidate seeds");
    }

    // First (lexicographically) combination of `picks` free vertices whose
    // first element is free[first], or empty when none percolates.
    std::optional<std::vector<Vertex>> search_prefix(SeedChecker& checker, std::size_t first,
                                                     std::size_t picks) {
        const std::size_t f = free.size();
        std::vector<std::size_t> idx(picks);
        idx[0] = first;
        for (std::size_t i = 1; i < picks; ++i)
            idx[i] = first + i;
        std::vector<Vertex> seed(forced);
        seed.resize(forced.size() + picks);
        while (true) {
            for (std::size_t i = 0; i < picks; ++i)
                seed[forced.size() + i] = free[idx[i]];
            charge();
            if (checker.percolates(seed))
                return seed;
            // advance positions 1..picks-1 only; position 0 is pinned
            std::size_t i = picks;
            while (i > 1 && idx[i - 1] == f - picks + (i - 1))
                --i;
            if (i <= 1)
                return std::nullopt;
            ++idx[i - 1];
            for (std::size_t j = i; j < picks; ++j)
                idx[j] = idx[j - 1] + 1;
        }
    }

    std::optional<std::vector<Vertex>> search(std::size_t picks) {
        if (picks > free.size())
            return std::nullopt;
        if (picks == 0) {
            SeedChecker checker(g, k);
            charge();
            if (checker.percolates(forced))
                return forced;
            return std::nullopt;
        }
        const std::size_t prefixes = free.size() - picks + 1;
        const unsigned workers = std::max(1u, budget.workers);
        if (workers == 1) {
            SeedChecker checker(g, k);
            for (std::size_t first = 0; first < prefixes; ++first)
                if (auto hit = search_prefix(checker, first, picks))
                    return hit;
            return std::nullopt;
        }

        // Workers claim prefixes in increasing order; the smallest prefix
        // with a hit wins, so the answer does not depend on scheduling.
        std::atomic<std::size_t> next{0};
        std::atomic<std::size_t> best{prefixes};
        std::vector<std::optional<std::vector<Vertex>>> hits(prefixes);
        std::exception_ptr error;
        std::mutex error_mutex;
        auto worker = [&] {
            try {
                SeedChecker checker(g, k);
                for (std::size_t first = next++; first < prefixes; first = next++) {
                    if (first > best.load())
                        break;
                    if (auto hit = search_prefix(checker, first, picks)) {
                        hits[first] = std::move(hit);
                        std::size_t cur = best.load();
                        while (first < cur && !best.compare_exchange_weak(cur, first)) {
                        }
                    }
                }
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                best = 0;
            }
        };
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
        if (error)
            std::rethrow_exception(error);
        if (best.load() < prefixes)
            return hits[best.load()];
        return std::nullopt;
    }
};

inline SizeSearch make_search(const Graph& g, std::size_t k, const SearchBudget& budget,
                              std::atomic<std::uint64_t>& checked) {
    require_threshold(k);
    if (g.num_vertices() > budget.max_vertices)
        throw BudgetExceeded("exact search refuses " + std::to_string(g.num_vertices()) +
                             " vertices (limit " + std::to_string(budget.max_vertices) + ")");
    SizeSearch s{g, k, {}, {}, budget, checked};
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        if (budget.forced_inclusion && g.degree(v) < k)
            s.forced.push_back(v);
        else
            s.free.push_back(v);
    }
    return s;
}

} // namespace detail

/// Smallest seed that percolates under threshold k, with the
/// lexicographically least witness of that size.
inline ExactResult min_conversion_set(const Graph& g, std::size_t k, const SearchBudget& budget = {}) {
    std::atomic<std::uint64_t> checked{0};
    auto search = detail::make_search(g, k, budget, checked);
    for (std::size_t picks = 0; picks <= search.free.size(); ++picks) {
        if (auto hit = search.search(picks)) {
            ExactResult r;
            r.size = hit->size();
            r.witness = VertexSet(g.num_vertices(), *hit);
            r.candidates_checked = checked.load();
            return r;
        }
    }
    // unreachable: the full vertex set always percolates
    throw ConsistencyError("no percolating seed found, not even V");
}

/// Whether some conversion set has exactly s vertices. Supersets of
/// conversion sets are conversion sets, so this is min <= s <= n.
inline bool has_conversion_set_of_size(const Graph& g, std::size_t k, std::size_t s,
                                       const SearchBudget& budget = {}) {
    if (s > g.num_vertices())
        return false;
    std::atomic<std::uint64_t> checked{0};
    auto search = detail::make_search(g, k, budget, checked);
    if (s < search.forced.size())
        return false;
    return search.search(s - search.forced.size()).has_value();
}

namespace detail {

// Vertices of a path or cycle component in walking order.
inline std::vector<Vertex> walk_component(const Graph& g, const std::vector<Vertex>& comp) {
    Vertex start = comp.front();
    for (Vertex v : comp)
        if (g.degree(v) < 2) {
            start = v;
            break;
        }
    std::vector<Vertex> order{start};
    Vertex prev = start, cur = start;
    while (order.size() < comp.size()) {
        Vertex next = cur;
        for (Vertex w : g.neighbors(cur))
            if (w != prev && (order.size() < 2 || w != order.front())) {
                next = w;
                break;
            }
        if (next == cur)
            break;
        prev = cur;
        cur = next;
        order.push_back(cur);
    }
    return order;
}

inline void require_maxdeg2(const Graph& g) {
    if (g.max_degree() > 2)
        throw InvalidInput("closed form needs maximum degree at most 2");
}

} // namespace detail

/// Minimum irreversible 2-conversion set size of a graph with maximum
/// degree at most 2: a path on l vertices needs ceil((l+1)/2) seeds, a
/// cycle on l vertices ceil(l/2).
inline std::size_t closed_form_maxdeg2(const Graph& g) {
    detail::require_maxdeg2(g);
    std::size_t total = 0;
    for (const auto& comp : components(g).groups()) {
        std::size_t edges = 0;
        for (Vertex v : comp)
            edges += g.degree(v);
        edges /= 2;
        const std::size_t l = comp.size();
        total += edges == l ? (l + 1) / 2 : l / 2 + 1;
    }
    return total;
}

/// A conversion set achieving closed_form_maxdeg2: alternate vertices
/// along each path or cycle, always including both path ends.
inline VertexSet closed_form_witness_maxdeg2(const Graph& g) {
    detail::require_maxdeg2(g);
    VertexSet seed(g.num_vertices());
    for (const auto& comp : components(g).groups()) {
        auto order = detail::walk_component(g, comp);
        for (std::size_t i = 0; i < order.size(); i += 2)
            seed.insert(order[i]);
        const bool is_cycle = order.size() >= 3 && g.has_edge(order.front(), order.back());
        if (!is_cycle)
            seed.insert(order.back());
    }
    return seed;
}

} // namespace kconv
