#pragma once

// Exhaustive search for the tile patterns the torus recipe needs. Stages
// are filled in order (base/modified, then the strips and corners case by
// case, then the n = 4 family), backtracking when a later stage has no
// compatible candidate. Every candidate is judged by simulating the
// recipe on a battery of grid sizes.

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "torus.hpp"

namespace kconv {

/// Every w x h bitmap with exactly `blacks` black cells, in increasing
/// order of the bitmask (bit y*w+x).
inline std::vector<TorusPattern> enumerate_patterns(const std::string& name, std::size_t w, std::size_t h,
                                                    std::size_t blacks) {
    std::vector<TorusPattern> out;
    const std::size_t cells = w * h;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cells); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcountll(mask)) != blacks)
            continue;
        TorusPattern p(name, w, h);
        for (std::size_t c = 0; c < cells; ++c)
            p.cells[c] = mask >> c & 1;
        out.push_back(std::move(p));
    }
    return out;
}

struct PatternSearchOptions {
    std::size_t tile_blacks = 3;    // per 3x3 tile
    std::size_t n4_blacks = 3;      // per 2x4 tile of the n = 4 case
    std::size_t battery_max = 5;    // k, l range 1..battery_max in the general stages
    std::size_t n4_battery_max = 8; // k range for the n = 4 stages
};

struct PatternSearchResult {
    std::optional<PatternSet> patterns;
    std::string failed_stage; // first stage that ran out of candidates
    std::uint64_t candidates_tried = 0;
    std::vector<std::string> log;
};

namespace detail {

/// Filter (i): the base tile alone leaves exactly gcd(k,l) disjoint white
/// cycles on T(3k,3l).
inline bool base_tile_ok(const TorusPattern& base, std::size_t battery_max) {
    for (std::size_t k = 1; k <= battery_max; ++k)
        for (std::size_t l = 1; l <= battery_max; ++l) {
            GridState s(3 * k, 3 * l);
            tile(s, base, 0, 0, 3 * k, 3 * l);
            auto r = white_cycle_structure(s);
            if (!r.disjoint_cycles || r.count() != std::gcd(k, l))
                return false;
        }
    return true;
}

inline bool general_case_ok(const PatternSet& ps, std::size_t a, std::size_t b, std::size_t battery_max) {
    for (std::size_t k = 1; k <= battery_max; ++k)
        for (std::size_t l = 1; l <= battery_max; ++l) {
            auto p = case_params(3 * k + a, 3 * l + b);
            if (p.transposed)
                throw ConsistencyError("search battery must use oriented sizes");
            GridState s = oriented_construction(p, ps);
            if (s.count() != p.target_size() || !percolates(s))
                return false;
        }
    return true;
}

inline bool n4_case_ok(const PatternSet& ps, std::size_t a, std::size_t battery_max) {
    for (std::size_t k = 1; k <= battery_max; ++k) {
        auto p = case_params(2 * k + a, 4);
        GridState s = oriented_construction(p, ps);
        if (s.count() > p.target_size() || !percolates(s))
            return false;
    }
    return true;
}

struct Stage {
    std::string name;
    std::function<std::vector<std::vector<TorusPattern>>(const PatternSet&)> candidates;
    std::function<bool(const PatternSet&)> accept;
};

inline bool run_stages(const std::vector<Stage>& stages, std::size_t at, PatternSet& ps, PatternSearchResult& res) {
    if (at == stages.size())
        return true;
    const Stage& st = stages[at];
    bool any = false;
    for (auto& combo : st.candidates(ps)) {
        for (auto& p : combo)
            ps.get(p.name) = p;
        ++res.candidates_tried;
        if (!st.accept(ps))
            continue;
        any = true;
        if (run_stages(stages, at + 1, ps, res))
            return true;
    }
    if (!any && res.failed_stage.empty())
        res.failed_stage = st.name;
    res.log.push_back("stage " + st.name + ": backtrack");
    return false;
}

inline std::vector<std::vector<TorusPattern>> singles(std::vector<TorusPattern> v) {
    std::vector<std::vector<TorusPattern>> out;
    for (auto& p : v)
        out.push_back({std::move(p)});
    return out;
}

/// All bitmaps with at most `max_blacks` black cells, fewest first.
inline std::vector<TorusPattern> up_to(const std::string& name, std::size_t w, std::size_t h, std::size_t max_blacks) {
    std::vector<TorusPattern> out;
    for (std::size_t b = 0; b <= max_blacks && b <= w * h; ++b)
        for (auto& p : enumerate_patterns(name, w, h, b))
            out.push_back(std::move(p));
    return out;
}

} // namespace detail

/// Runs the whole search. On success every pattern of the returned set
/// has been validated on the battery; on exhaustion `failed_stage` names
/// the stage without candidates.
inline PatternSearchResult search_tile_patterns(const PatternSearchOptions& opt = {}) {
    using detail::Stage;
    const std::size_t tb = opt.tile_blacks;
    // Boundary pieces keep the tile density: 2 per 3x2, 4 per 3x4, and the
    // corner budgets fixed by the size formulas.
    const std::size_t per_row = tb; // blacks per 3x3 -> per 3x1 strip row scale
    auto strip_budget = [&](std::size_t rows) { return per_row * rows / 3; };
    const std::size_t bm = opt.battery_max;

    std::vector<Stage> stages;
    stages.push_back({"base",
                      [&](const PatternSet&) {
                          std::vector<TorusPattern> ok;
                          for (auto& p : enumerate_patterns("base", 3, 3, tb))
                              if (detail::base_tile_ok(p, bm))
                                  ok.push_back(std::move(p));
                          return detail::singles(std::move(ok));
                      },
                      [](const PatternSet&) { return true; }});
    stages.push_back({"modified",
                      [&](const PatternSet&) { return detail::singles(enumerate_patterns("modified", 3, 3, tb)); },
                      [&](const PatternSet& ps) { return detail::general_case_ok(ps, 0, 0, bm); }});
    stages.push_back({"strip_3x2",
                      [&](const PatternSet&) {
                          return detail::singles(enumerate_patterns("strip_3x2", 3, 2, strip_budget(2)));
                      },
                      [&](const PatternSet& ps) { return detail::general_case_ok(ps, 0, 2, bm); }});
    stages.push_back({"strip_3x4",
                      [&](const PatternSet&) {
                          return detail::singles(enumerate_patterns("strip_3x4", 3, 4, strip_budget(4)));
                      },
                      [&](const PatternSet& ps) { return detail::general_case_ok(ps, 0, 4, bm); }});
    // Corner budgets: whatever is left of the case size once tiles and strips are counted.
    stages.push_back({"strip_2x3+corner_2x2",
                      [&](const PatternSet& ps) {
                          std::vector<std::vector<TorusPattern>> out;
                          auto strips = enumerate_patterns("strip_2x3", 2, 3, strip_budget(2));
                          // prefer the transpose of the top strip
                          auto t = ps.strip_3x2.transposed("strip_2x3");
                          std::stable_partition(strips.begin(), strips.end(), [&](const TorusPattern& p) { return p == t; });
                          for (auto& s : strips)
                              for (auto& c : enumerate_patterns("corner_2x2", 2, 2, 2))
                                  out.push_back({s, c});
                          return out;
                      },
                      [&](const PatternSet& ps) { return detail::general_case_ok(ps, 2, 2, bm); }});
    stages.push_back({"corner_2x4",
                      [&](const PatternSet&) { return detail::singles(enumerate_patterns("corner_2x4", 2, 4, 4)); },
                      [&](const PatternSet& ps) { return detail::general_case_ok(ps, 2, 4, bm); }});
    stages.push_back({"strip_4x3+corner_4x4",
                      [&](const PatternSet& ps) {
                          std::vector<std::vector<TorusPattern>> out;
                          auto strips = enumerate_patterns("strip_4x3", 4, 3, strip_budget(4));
                          auto t = ps.strip_3x4.transposed("strip_4x3");
                          std::stable_partition(strips.begin(), strips.end(), [&](const TorusPattern& p) { return p == t; });
                          auto corners = enumerate_patterns("corner_4x4", 4, 4, 6);
                          for (auto& s : strips)
                              for (auto& c : corners)
                                  out.push_back({s, c});
                          return out;
                      },
                      [&](const PatternSet& ps) { return detail::general_case_ok(ps, 4, 4, std::min<std::size_t>(bm, 3)); }});
    std::vector<Stage> n4;
    n4.push_back({"n4_tile+n4_cap_a1",
                      [&](const PatternSet&) {
                          std::vector<std::vector<TorusPattern>> out;
                          auto caps = detail::up_to("n4_cap_a1", 2, 4, 8);
                          for (auto& t : enumerate_patterns("n4_tile", 2, 4, opt.n4_blacks))
                              for (auto& c : caps)
                                  out.push_back({t, c});
                          return out;
                      },
                      [&](const PatternSet& ps) { return detail::n4_case_ok(ps, 1, opt.n4_battery_max); }});
    n4.push_back({"n4_cap_a2",
                      [&](const PatternSet&) { return detail::singles(detail::up_to("n4_cap_a2", 2, 4, 8)); },
                      [&](const PatternSet& ps) { return detail::n4_case_ok(ps, 2, opt.n4_battery_max); }});

    PatternSearchResult res;
    PatternSet ps;
    if (detail::run_stages(stages, 0, ps, res) && detail::run_stages(n4, 0, ps, res)) {
        res.patterns = ps;
        res.failed_stage.clear();
    }
    return res;
}

} // namespace kconv
