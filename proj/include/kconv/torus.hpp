#pragma once

// Irreversible 3-conversion sets on toroidal grids T(m,n) built by tiling
// small black/white patterns. Cell [i,j] has 0 <= i < m (horizontal) and
// 0 <= j < n (vertical); [0,0] is the bottom-left corner.

#include <array>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"

#ifndef KCONV_PATTERN_DIR
#define KCONV_PATTERN_DIR "data/patterns"
#endif

namespace kconv {

class GridState {
public:
    GridState() = default;
    GridState(std::size_t m, std::size_t n) : m_(m), n_(n), black_(m * n, 0) {
        if (m < 3 || n < 3)
            throw InvalidInput("toroidal grid needs both dimensions >= 3");
    }

    std::size_t width() const noexcept { return m_; }
    std::size_t height() const noexcept { return n_; }
    std::size_t cells() const noexcept { return black_.size(); }

    /// Flat index j*m + i; coordinates wrap.
    std::size_t index(long i, long j) const noexcept {
        auto wrap = [](long x, std::size_t mod) {
            long r = x % static_cast<long>(mod);
            return static_cast<std::size_t>(r < 0 ? r + static_cast<long>(mod) : r);
        };
        return wrap(j, n_) * m_ + wrap(i, m_);
    }

    bool black(long i, long j) const noexcept { return black_[index(i, j)] != 0; }
    bool black_at(std::size_t idx) const noexcept { return black_[idx] != 0; }
    void set(long i, long j, bool b = true) noexcept { black_[index(i, j)] = b; }
    void set_at(std::size_t idx, bool b = true) noexcept { black_[idx] = b; }

    std::size_t count() const noexcept {
        std::size_t c = 0;
        for (auto b : black_)
            c += b;
        return c;
    }

    /// The four torus neighbours of a flat index.
    std::array<std::size_t, 4> neighbors(std::size_t idx) const noexcept {
        const long i = static_cast<long>(idx % m_), j = static_cast<long>(idx / m_);
        return {index(i + 1, j), index(i - 1, j), index(i, j + 1), index(i, j - 1)};
    }

    GridState transposed() const {
        GridState t(n_, m_);
        for (std::size_t i = 0; i < m_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                t.set(static_cast<long>(j), static_cast<long>(i), black(static_cast<long>(i), static_cast<long>(j)));
        return t;
    }

    std::vector<std::pair<std::size_t, std::size_t>> black_cells() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t idx = 0; idx < black_.size(); ++idx)
            if (black_[idx])
                out.emplace_back(idx % m_, idx / m_);
        return out;
    }

    /// ASCII art, top row (largest j) first.
    std::string to_ascii() const {
        std::string s;
        for (std::size_t r = 0; r < n_; ++r) {
            std::size_t j = n_ - 1 - r;
            for (std::size_t i = 0; i < m_; ++i)
                s += black(static_cast<long>(i), static_cast<long>(j)) ? '#' : '.';
            s += '\n';
        }
        return s;
    }

    bool operator==(const GridState&) const = default;

private:
    std::size_t m_ = 0, n_ = 0;
    std::vector<std::uint8_t> black_;
};

/// C_m x C_n as a Graph; vertex j*m + i is cell [i,j].
inline Graph torus_graph(std::size_t m, std::size_t n) {
    GridState shape(m, n);
    std::vector<Edge> edges;
    for (std::size_t idx = 0; idx < shape.cells(); ++idx) {
        auto nb = shape.neighbors(idx);
        for (std::size_t w : {nb[0], nb[2]})
            edges.emplace_back(static_cast<Vertex>(idx), static_cast<Vertex>(w));
    }
    return Graph(m * n, edges);
}

inline VertexSet to_vertex_set(const GridState& s) {
    VertexSet v(s.cells());
    for (std::size_t idx = 0; idx < s.cells(); ++idx)
        if (s.black_at(idx))
            v.insert(static_cast<Vertex>(idx));
    return v;
}

/// Fixpoint of the irreversible threshold process on the torus (default
/// threshold 3). Order of conversions does not affect the fixpoint.
inline GridState settle(GridState s, std::size_t k = 3) {
    std::vector<std::uint8_t> cnt(s.cells(), 0);
    std::vector<std::size_t> queue;
    for (std::size_t idx = 0; idx < s.cells(); ++idx)
        if (s.black_at(idx))
            queue.push_back(idx);
    for (std::size_t head = 0; head < queue.size(); ++head)
        for (std::size_t w : s.neighbors(queue[head]))
            if (!s.black_at(w) && ++cnt[w] >= k) {
                s.set_at(w);
                queue.push_back(w);
            }
    return s;
}

inline bool percolates(const GridState& s, std::size_t k = 3) { return settle(s, k).count() == s.cells(); }

struct WhiteCycleReport {
    std::vector<std::vector<std::size_t>> components; // flat indices
    bool disjoint_cycles = true; // every residual white cell has exactly two white neighbours
    std::size_t count() const noexcept { return components.size(); }
};

/// Components of the white cells left after the process settles. Each is
/// a white cycle in the broad sense (every cell keeps >= 2 white
/// neighbours); `disjoint_cycles` says whether they are simple cycles.
inline WhiteCycleReport white_cycle_structure(const GridState& state, std::size_t k = 3) {
    GridState s = settle(state, k);
    WhiteCycleReport r;
    std::vector<bool> seen(s.cells(), false);
    for (std::size_t start = 0; start < s.cells(); ++start) {
        if (s.black_at(start) || seen[start])
            continue;
        std::vector<std::size_t> comp{start};
        seen[start] = true;
        for (std::size_t h = 0; h < comp.size(); ++h) {
            std::size_t white_nb = 0;
            for (std::size_t w : s.neighbors(comp[h])) {
                if (s.black_at(w))
                    continue;
                ++white_nb;
                if (!seen[w]) {
                    seen[w] = true;
                    comp.push_back(w);
                }
            }
            r.disjoint_cycles = r.disjoint_cycles && white_nb == 2;
        }
        r.components.push_back(std::move(comp));
    }
    return r;
}

struct TorusPattern {
    std::string name;
    std::size_t width = 0, height = 0;
    std::vector<std::uint8_t> cells; // row-major from the bottom row

    TorusPattern() = default;
    TorusPattern(std::string nm, std::size_t w, std::size_t h)
        : name(std::move(nm)), width(w), height(h), cells(w * h, 0) {
        if (w == 0 || h == 0)
            throw InvalidInput("pattern dimensions must be positive");
    }

    bool black(std::size_t x, std::size_t y) const { return cells.at(y * width + x) != 0; }
    void set(std::size_t x, std::size_t y, bool b = true) { cells.at(y * width + x) = b; }

    std::size_t black_count() const {
        std::size_t c = 0;
        for (auto b : cells)
            c += b;
        return c;
    }

    TorusPattern transposed(std::string nm) const {
        TorusPattern t(std::move(nm), height, width);
        for (std::size_t x = 0; x < width; ++x)
            for (std::size_t y = 0; y < height; ++y)
                t.set(y, x, black(x, y));
        return t;
    }

    /// ASCII art, top row first.
    std::string to_ascii() const {
        std::string s;
        for (std::size_t r = 0; r < height; ++r) {
            for (std::size_t x = 0; x < width; ++x)
                s += black(x, height - 1 - r) ? '#' : '.';
            s += '\n';
        }
        return s;
    }

    bool operator==(const TorusPattern& o) const {
        return width == o.width && height == o.height && cells == o.cells;
    }
};

/// Rows of `#` and `.`, top row first; blank lines and lines starting
/// with `;` are ignored.
inline TorusPattern parse_pattern(const std::string& text, const std::string& name) {
    std::vector<std::string> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
            line.pop_back();
        if (line.empty() || line[0] == ';')
            continue;
        for (char c : line)
            if (c != '#' && c != '.')
                throw InvalidInput("pattern " + name + ": unexpected character '" + std::string(1, c) + "'");
        if (!rows.empty() && line.size() != rows.front().size())
            throw InvalidInput("pattern " + name + ": ragged rows");
        rows.push_back(line);
    }
    if (rows.empty())
        throw InvalidInput("pattern " + name + " is empty");
    TorusPattern p(name, rows.front().size(), rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t x = 0; x < p.width; ++x)
            p.set(x, rows.size() - 1 - r, rows[r][x] == '#');
    return p;
}

inline std::filesystem::path pattern_directory() {
    if (const char* env = std::getenv("KCONV_PATTERN_DIR"); env && *env)
        return env;
    return KCONV_PATTERN_DIR;
}

inline TorusPattern load_pattern(const std::filesystem::path& dir, const std::string& name) {
    auto path = dir / (name + ".pat");
    std::ifstream in(path);
    if (!in)
        throw InvalidInput("missing pattern file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_pattern(buf.str(), name);
}

inline void save_pattern(const std::filesystem::path& dir, const TorusPattern& p) {
    std::filesystem::create_directories(dir);
    std::ofstream out(dir / (p.name + ".pat"));
    out << p.to_ascii();
    if (!out)
        throw Error("cannot write pattern " + p.name);
}

/// Black-wins overlay of p with its bottom-left square at [i,j].
inline void place(GridState& s, const TorusPattern& p, long i, long j) {
    for (std::size_t x = 0; x < p.width; ++x)
        for (std::size_t y = 0; y < p.height; ++y)
            if (p.black(x, y))
                s.set(i + static_cast<long>(x), j + static_cast<long>(y));
}

/// Covers the w x h rectangle at [i,j] with non-overlapping copies of p.
inline void tile(GridState& s, const TorusPattern& p, long i, long j, std::size_t w, std::size_t h) {
    if (w % p.width != 0 || h % p.height != 0)
        throw InvalidInput("cannot tile " + std::to_string(w) + "x" + std::to_string(h) + " with " +
                           std::to_string(p.width) + "x" + std::to_string(p.height) + " pattern " + p.name);
    for (std::size_t x = 0; x < w; x += p.width)
        for (std::size_t y = 0; y < h; y += p.height)
            place(s, p, i + static_cast<long>(x), j + static_cast<long>(y));
}

enum class TorusCase { A, B, C, D, E, F, n4_a1, n4_a2 };

inline const char* to_string(TorusCase c) {
    switch (c) {
    case TorusCase::A: return "A";
    case TorusCase::B: return "B";
    case TorusCase::C: return "C";
    case TorusCase::D: return "D";
    case TorusCase::E: return "E";
    case TorusCase::F: return "F";
    case TorusCase::n4_a1: return "n4_a1";
    case TorusCase::n4_a2: return "n4_a2";
    }
    return "?";
}

/// Case selection for T(m,n). The construction runs on the oriented grid
/// (mm, nn) and is transposed back when `transposed` is set.
struct CaseParams {
    TorusCase tag = TorusCase::A;
    std::size_t m = 0, n = 0;   // requested
    std::size_t mm = 0, nn = 0; // oriented
    bool transposed = false;
    std::size_t k = 0, l = 0, a = 0, b = 0, g = 0;

    bool special() const noexcept { return tag == TorusCase::n4_a1 || tag == TorusCase::n4_a2; }

    /// Exact size for the general case; the upper bound floor((3mn+4)/8)
    /// for the special one.
    std::size_t target_size() const noexcept {
        const std::size_t mn = m * n;
        switch (tag) {
        case TorusCase::A:
        case TorusCase::B:
        case TorusCase::C: return (mn + 3) / 3;
        case TorusCase::D:
        case TorusCase::F: return (mn + 2) / 3;
        case TorusCase::E: return (mn + 4) / 3;
        default: return (3 * mn + 4) / 8;
        }
    }
};

inline CaseParams case_params(std::size_t m, std::size_t n) {
    if (m < 3 || n < 3)
        throw InvalidInput("toroidal grid needs both dimensions >= 3");
    CaseParams p;
    p.m = m;
    p.n = n;
    if (m == 4 || n == 4) {
        p.transposed = n != 4;
        p.mm = p.transposed ? n : m;
        p.nn = 4;
        p.a = p.mm % 2 == 1 ? 1 : 2;
        p.k = (p.mm - p.a) / 2;
        p.tag = p.a == 1 ? TorusCase::n4_a1 : TorusCase::n4_a2;
        return p;
    }
    auto split = [](std::size_t x, std::size_t& k, std::size_t& a) {
        static constexpr std::size_t rem_to_a[3] = {0, 4, 2};
        a = rem_to_a[x % 3];
        k = (x - a) / 3;
    };
    std::size_t k1, a1, k2, a2;
    split(m, k1, a1);
    split(n, k2, a2);
    p.transposed = a1 > a2;
    p.mm = p.transposed ? n : m;
    p.nn = p.transposed ? m : n;
    p.k = p.transposed ? k2 : k1;
    p.a = p.transposed ? a2 : a1;
    p.l = p.transposed ? k1 : k2;
    p.b = p.transposed ? a1 : a2;
    p.g = std::gcd(p.k, p.l);
    if (p.a == 0)
        p.tag = p.b == 0 ? TorusCase::A : p.b == 2 ? TorusCase::B : TorusCase::C;
    else if (p.a == 2)
        p.tag = p.b == 2 ? TorusCase::D : TorusCase::E;
    else
        p.tag = TorusCase::F;
    return p;
}

/// The twelve patterns the recipe uses. Widths run along i, heights along j.
struct PatternSet {
    TorusPattern base, modified;              // 3x3
    TorusPattern strip_3x2, strip_3x4;        // along the top: 3k x b
    TorusPattern strip_2x3, strip_4x3;        // along the right: a x 3l
    TorusPattern corner_2x2, corner_2x4, corner_4x4;
    TorusPattern n4_tile, n4_cap_a1, n4_cap_a2; // 2x4 each

    static const std::vector<std::string>& names() {
        static const std::vector<std::string> v = {"base", "modified", "strip_3x2", "strip_3x4",
                                                   "strip_2x3", "strip_4x3", "corner_2x2", "corner_2x4",
                                                   "corner_4x4", "n4_tile", "n4_cap_a1", "n4_cap_a2"};
        return v;
    }

    TorusPattern& get(const std::string& name) {
        TorusPattern* all[] = {&base, &modified, &strip_3x2, &strip_3x4, &strip_2x3, &strip_4x3,
                               &corner_2x2, &corner_2x4, &corner_4x4, &n4_tile, &n4_cap_a1, &n4_cap_a2};
        for (std::size_t i = 0; i < names().size(); ++i)
            if (names()[i] == name)
                return *all[i];
        throw InvalidInput("unknown pattern " + name);
    }
    const TorusPattern& get(const std::string& name) const { return const_cast<PatternSet*>(this)->get(name); }
};

inline PatternSet load_pattern_set(const std::filesystem::path& dir = pattern_directory()) {
    PatternSet ps;
    for (const auto& name : PatternSet::names())
        ps.get(name) = load_pattern(dir, name);
    const std::pair<const char*, std::pair<std::size_t, std::size_t>> dims[] = {
        {"base", {3, 3}},       {"modified", {3, 3}},   {"strip_3x2", {3, 2}},  {"strip_3x4", {3, 4}},
        {"strip_2x3", {2, 3}},  {"strip_4x3", {4, 3}},  {"corner_2x2", {2, 2}}, {"corner_2x4", {2, 4}},
        {"corner_4x4", {4, 4}}, {"n4_tile", {2, 4}},    {"n4_cap_a1", {2, 4}},  {"n4_cap_a2", {2, 4}}};
    for (const auto& [name, wh] : dims) {
        const auto& p = ps.get(name);
        if (p.width != wh.first || p.height != wh.second)
            throw InvalidInput(std::string("pattern ") + name + " has the wrong dimensions");
    }
    return ps;
}

/// The general-case layout on the oriented mm x nn grid, without the
/// extra black square of cases (A)-(C).
inline GridState general_layout(const CaseParams& p, const PatternSet& ps) {
    GridState s(p.mm, p.nn);
    const long K = static_cast<long>(3 * p.k), L = static_cast<long>(3 * p.l);
    for (std::size_t bi = 0; bi < p.k; ++bi)
        for (std::size_t bj = 0; bj < p.l; ++bj) {
            bool modified = bi == 0 && bj + 1 < p.g;
            place(s, modified ? ps.modified : ps.base, static_cast<long>(3 * bi), static_cast<long>(3 * bj));
        }
    if (p.b == 2)
        tile(s, ps.strip_3x2, 0, L, 3 * p.k, 2);
    else if (p.b == 4)
        tile(s, ps.strip_3x4, 0, L, 3 * p.k, 4);
    if (p.a == 2)
        tile(s, ps.strip_2x3, K, 0, 2, 3 * p.l);
    else if (p.a == 4)
        tile(s, ps.strip_4x3, K, 0, 4, 3 * p.l);
    if (p.a == 2 && p.b == 2)
        place(s, ps.corner_2x2, K, L);
    else if (p.a == 2 && p.b == 4)
        place(s, ps.corner_2x4, K, L);
    else if (p.a == 4 && p.b == 4)
        place(s, ps.corner_4x4, K, L);
    return s;
}

/// The n = 4 layout on the oriented mm x 4 grid.
inline GridState n4_layout(const CaseParams& p, const PatternSet& ps) {
    GridState s(p.mm, 4);
    tile(s, ps.n4_tile, 0, 0, 2 * p.k, 4);
    if (p.a == 1)
        place(s, ps.n4_cap_a1, static_cast<long>(2 * p.k) - 1, 0);
    else
        place(s, ps.n4_cap_a2, static_cast<long>(2 * p.k), 0);
    return s;
}

struct TorusConstruction {
    CaseParams params;
    GridState grid; // in the requested m x n orientation
    std::size_t size = 0;
    std::optional<std::pair<std::size_t, std::size_t>> extra; // oriented coordinates
    bool verified = false;
};

/// Oriented layout including the extra square: tries [0,0] then [1,1],
/// keeping the first that percolates (or [0,0] when neither does).
inline GridState oriented_construction(const CaseParams& p, const PatternSet& ps,
                                       std::optional<std::pair<std::size_t, std::size_t>>* extra = nullptr) {
    if (p.special())
        return n4_layout(p, ps);
    GridState s = general_layout(p, ps);
    if (p.a != 0)
        return s;
    std::optional<GridState> fallback;
    for (std::pair<std::size_t, std::size_t> at : {std::pair<std::size_t, std::size_t>{0, 0}, {1, 1}}) {
        if (s.black(static_cast<long>(at.first), static_cast<long>(at.second)))
            continue;
        GridState t = s;
        t.set(static_cast<long>(at.first), static_cast<long>(at.second));
        if (!fallback)
            fallback = t;
        if (percolates(t)) {
            if (extra)
                *extra = at;
            return t;
        }
    }
    if (!fallback)
        return s; // both squares already black: the size check will reject it
    if (extra)
        *extra = std::pair<std::size_t, std::size_t>{0, 0};
    return *fallback;
}

/// Seed for T(m,n) under threshold 3. With `verify`, throws
/// ConsistencyError unless it percolates and meets the case size.
inline TorusConstruction construct_3cs(std::size_t m, std::size_t n, const PatternSet& ps, bool verify = true) {
    TorusConstruction c;
    c.params = case_params(m, n);
    GridState s = oriented_construction(c.params, ps, &c.extra);
    c.grid = c.params.transposed ? s.transposed() : s;
    c.size = c.grid.count();
    if (verify) {
        if (!percolates(c.grid))
            throw ConsistencyError("constructed seed for T(" + std::to_string(m) + "," + std::to_string(n) +
                                   ") does not percolate");
        const std::size_t target = c.params.target_size();
        if (c.params.special() ? c.size > target : c.size != target)
            throw ConsistencyError("constructed seed for T(" + std::to_string(m) + "," + std::to_string(n) +
                                   ") has size " + std::to_string(c.size) + ", expected " +
                                   (c.params.special() ? "at most " : "") + std::to_string(target));
        c.verified = true;
    }
    return c;
}

inline TorusConstruction construct_3cs(std::size_t m, std::size_t n, bool verify = true) {
    return construct_3cs(m, n, load_pattern_set(), verify);
}

} // namespace kconv
