#pragma once

// Linear 2-polymatroids over GF(2^w). Each element is a line: the span of
// two vectors a, b. The rank of an element set is the dimension of the
// span of all its vectors.
//
// Maximum matchings (linear matroid parity) are found algebraically: for
// independent random scalars t_i, the alternating matrix
//     Y(t) = sum_i t_i (a_i b_i^T + b_i a_i^T)
// has rank 2*nu with high probability and never more. A matching is then
// extracted by deleting elements that do not lower nu, and a minimum
// spanning set is grown greedily from it (nu + rho = f(V)).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "gf2w.hpp"

namespace kconv {

using ElementSet = std::vector<std::size_t>;

template <class F>
struct Line {
    std::vector<F> a;
    std::vector<F> b;
    std::size_t owner = 0; // caller-defined id, e.g. the vertex it represents
};

/// Row-echelon basis with unit pivots, grown one vector at a time.
template <class F>
class EchelonBasis {
public:
    explicit EchelonBasis(std::size_t dimension) : dimension_(dimension) {}

    std::size_t rank() const noexcept { return rows_.size(); }
    std::size_t dimension() const noexcept { return dimension_; }

    /// Returns true when v was independent of the basis (and was added).
    bool add(std::vector<F> v) {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const F c = v[pivots_[r]];
            if (c.is_zero())
                continue;
            const auto& row = rows_[r];
            for (std::size_t j = pivots_[r]; j < dimension_; ++j)
                v[j] += c * row[j];
        }
        std::size_t p = 0;
        while (p < dimension_ && v[p].is_zero())
            ++p;
        if (p == dimension_)
            return false;
        const F inv = v[p].inverse();
        for (std::size_t j = p; j < dimension_; ++j)
            v[j] *= inv;
        // keep rows ordered by pivot so each reduction pass is one sweep
        auto pos = std::upper_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
        pivots_.insert(pivots_.begin() + pos, p);
        rows_.insert(rows_.begin() + pos, std::move(v));
        return true;
    }

private:
    std::size_t dimension_;
    std::vector<std::vector<F>> rows_;
    std::vector<std::size_t> pivots_;
};

/// Rank of a dense square or rectangular matrix by Gaussian elimination.
template <class F>
std::size_t matrix_rank(std::vector<std::vector<F>> m) {
    if (m.empty())
        return 0;
    const std::size_t rows = m.size();
    const std::size_t cols = m.front().size();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && m[piv][c].is_zero())
            ++piv;
        if (piv == rows)
            continue;
        std::swap(m[piv], m[rank]);
        const F inv = m[rank][c].inverse();
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (m[r][c].is_zero())
                continue;
            const F factor = m[r][c] * inv;
            for (std::size_t j = c; j < cols; ++j)
                m[r][j] += factor * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

template <class F = Gf32>
class PolymatroidInstance {
public:
    using field_type = F;
    using line_type = Line<F>;

    PolymatroidInstance() = default;

    explicit PolymatroidInstance(std::size_t dimension) : dimension_(dimension) {}

    PolymatroidInstance(std::size_t dimension, std::vector<Line<F>> lines)
        : dimension_(dimension), lines_(std::move(lines)) {
        for (const auto& l : lines_)
            check(l);
    }

    void add_line(Line<F> line) {
        check(line);
        lines_.push_back(std::move(line));
    }

    std::size_t dimension() const noexcept { return dimension_; }
    std::size_t size() const noexcept { return lines_.size(); }
    const Line<F>& line(std::size_t i) const { return lines_[i]; }
    const std::vector<Line<F>>& lines() const noexcept { return lines_; }

    ElementSet all() const {
        ElementSet s(lines_.size());
        for (std::size_t i = 0; i < s.size(); ++i)
            s[i] = i;
        return s;
    }

    /// f(X): dimension of the span of both vectors of every line in X.
    std::size_t rank(std::span<const std::size_t> elements) const {
        EchelonBasis<F> basis(dimension_);
        for (std::size_t e : elements) {
            basis.add(lines_.at(e).a);
            basis.add(lines_.at(e).b);
        }
        return basis.rank();
    }

    std::size_t rank(std::initializer_list<std::size_t> elements) const {
        return rank(std::span<const std::size_t>(elements.begin(), elements.size()));
    }

    bool is_matching(std::span<const std::size_t> elements) const {
        return rank(elements) == 2 * elements.size();
    }

private:
    void check(const Line<F>& l) const {
        if (l.a.size() != dimension_ || l.b.size() != dimension_)
            throw InvalidInput("line vectors must have the instance dimension " +
                               std::to_string(dimension_));
    }

    std::size_t dimension_ = 0;
    std::vector<Line<F>> lines_;
};

struct ParityOptions {
    unsigned trials = 3;
    unsigned retries = 8;
    /// nu_bruteforce refuses ground sets larger than this.
    std::size_t brute_force_limit = 18;
};

/// Maximum matching size by exhaustive search with incremental bases.
template <class F>
std::size_t nu_bruteforce(const PolymatroidInstance<F>& inst, std::span<const std::size_t> ground,
                          std::size_t limit = ParityOptions{}.brute_force_limit) {
    if (ground.size() > limit)
        throw BudgetExceeded("nu_bruteforce refuses " + std::to_string(ground.size()) +
                             " lines (limit " + std::to_string(limit) + ")");
    std::size_t best = 0;
    auto dfs = [&](auto&& self, std::size_t pos, const EchelonBasis<F>& basis, std::size_t taken) -> void {
        best = std::max(best, taken);
        if (taken + (ground.size() - pos) <= best || 2 * (taken + 1) > inst.dimension())
            return;
        for (std::size_t i = pos; i < ground.size(); ++i) {
            if (taken + (ground.size() - i) <= best)
                return;
            EchelonBasis<F> next = basis;
            const auto& l = inst.line(ground[i]);
            if (next.add(l.a) && next.add(l.b))
                self(self, i + 1, next, taken + 1);
        }
    };
    dfs(dfs, 0, EchelonBasis<F>(inst.dimension()), 0);
    return best;
}

template <class F>
std::size_t nu_bruteforce(const PolymatroidInstance<F>& inst) {
    auto all = inst.all();
    return nu_bruteforce(inst, std::span<const std::size_t>(all));
}

namespace detail {

// One evaluation of rank Y(t) / 2 at fresh random t.
template <class F, class Rng>
std::size_t algebraic_trial(const PolymatroidInstance<F>& inst, std::span<const std::size_t> ground,
                            Rng& rng) {
    const std::size_t r = inst.dimension();
    std::vector<std::vector<F>> y(r, std::vector<F>(r));
    for (std::size_t e : ground) {
        const auto& l = inst.line(e);
        const F t = F::random(rng);
        for (std::size_t i = 0; i < r; ++i) {
            const F ta = t * l.a[i];
            const F tb = t * l.b[i];
            if (ta.is_zero() && tb.is_zero())
                continue;
            for (std::size_t j = 0; j < r; ++j)
                y[i][j] += ta * l.b[j] + tb * l.a[j];
        }
    }
    return matrix_rank(std::move(y)) / 2;
}

} // namespace detail

/// Randomized nu: the best of `trials` evaluations. Never exceeds the true
/// value; stops early once `stop_at` is reached.
template <class F, class Rng>
std::size_t nu_algebraic(const PolymatroidInstance<F>& inst, std::span<const std::size_t> ground, Rng& rng,
                         unsigned trials = ParityOptions{}.trials,
                         std::size_t stop_at = static_cast<std::size_t>(-1)) {
    std::size_t best = 0;
    for (unsigned t = 0; t < std::max(1u, trials) && best < stop_at; ++t)
        best = std::max(best, detail::algebraic_trial(inst, ground, rng));
    return best;
}

template <class F, class Rng>
std::size_t nu_algebraic(const PolymatroidInstance<F>& inst, Rng& rng, unsigned trials = ParityOptions{}.trials) {
    auto all = inst.all();
    return nu_algebraic(inst, std::span<const std::size_t>(all), rng, trials);
}

/// Maximum matching inside `ground` by deletion-greedy in ground order.
/// Throws ConsistencyError if every retry yields a non-matching survivor set.
template <class F, class Rng>
ElementSet max_matching(const PolymatroidInstance<F>& inst, std::span<const std::size_t> ground, Rng& rng,
                        const ParityOptions& opt = {}) {
    for (unsigned attempt = 0; attempt <= opt.retries; ++attempt) {
        const std::size_t nu = nu_algebraic(inst, ground, rng, opt.trials);
        ElementSet current(ground.begin(), ground.end());
        for (std::size_t e : ElementSet(ground.begin(), ground.end())) {
            if (current.size() == nu)
                break;
            ElementSet without;
            without.reserve(current.size() - 1);
            for (std::size_t x : current)
                if (x != e)
                    without.push_back(x);
            if (nu_algebraic(inst, std::span<const std::size_t>(without), rng, opt.trials, nu) >= nu)
                current = std::move(without);
        }
        if (current.size() == nu && inst.is_matching(current))
            return current;
    }
    throw ConsistencyError("max_matching: survivor set is not a matching after " +
                           std::to_string(opt.retries + 1) + " attempts");
}

template <class F, class Rng>
ElementSet max_matching(const PolymatroidInstance<F>& inst, Rng& rng, const ParityOptions& opt = {}) {
    auto all = inst.all();
    return max_matching(inst, std::span<const std::size_t>(all), rng, opt);
}

struct SpanningResult {
    ElementSet spanning;  // minimum spanning set, in ground order of addition
    ElementSet matching;  // the maximum matching it was grown from
    std::size_t rank = 0; // f(ground)
    std::size_t nu = 0;
    std::size_t rho() const { return spanning.size(); }
};

/// Minimum spanning set of the restriction to `ground`: a maximum matching
/// M extended greedily by elements that raise the rank (each by exactly
/// one, else M was not maximum). |S| = f(ground) - nu.
template <class F, class Rng>
SpanningResult min_spanning_set(const PolymatroidInstance<F>& inst, std::span<const std::size_t> ground,
                                Rng& rng, const ParityOptions& opt = {}) {
    if (ground.empty())
        throw InvalidInput("min_spanning_set needs a nonempty ground set");
    const std::size_t target = inst.rank(ground);
    for (unsigned attempt = 0; attempt <= opt.retries; ++attempt) {
        SpanningResult res;
        res.rank = target;
        res.matching = max_matching(inst, ground, rng, opt);
        res.nu = res.matching.size();
        res.spanning = res.matching;

        EchelonBasis<F> basis(inst.dimension());
        for (std::size_t e : res.matching) {
            basis.add(inst.line(e).a);
            basis.add(inst.line(e).b);
        }
        std::vector<std::uint8_t> taken(inst.size(), 0);
        for (std::size_t e : res.matching)
            taken[e] = 1;

        bool consistent = true;
        for (std::size_t e : ground) {
            if (basis.rank() == target)
                break;
            if (taken[e])
                continue;
            EchelonBasis<F> next = basis;
            next.add(inst.line(e).a);
            next.add(inst.line(e).b);
            const std::size_t gain = next.rank() - basis.rank();
            if (gain == 2) {
                consistent = false; // M + e would be a larger matching
                break;
            }
            if (gain == 1) {
                basis = std::move(next);
                res.spanning.push_back(e);
                taken[e] = 1;
            }
        }
        if (consistent && basis.rank() == target && res.spanning.size() + res.nu == target)
            return res;
    }
    throw ConsistencyError("min_spanning_set: matching was not maximum after " +
                           std::to_string(opt.retries + 1) + " attempts");
}

template <class F, class Rng>
SpanningResult min_spanning_set(const PolymatroidInstance<F>& inst, Rng& rng, const ParityOptions& opt = {}) {
    auto all = inst.all();
    return min_spanning_set(inst, std::span<const std::size_t>(all), rng, opt);
}

} // namespace kconv
