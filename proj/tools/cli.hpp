#pragma once

// Subcommand dispatcher for the `kconv` executable. JSON goes to `out`,
// human-readable notes to `err`. Exit status: 0 success, 1 negative
// answer, 2 usage or input error, 3 internal consistency failure.

#include <fstream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <kconv/cnf.hpp>
#include <kconv/deg3.hpp>
#include <kconv/edge_list.hpp>
#include <kconv/exact.hpp>
#include <kconv/percolation.hpp>
#include <kconv/satred.hpp>
#include <kconv/torus.hpp>

#include "json_io.hpp"

namespace kconv::cli {

enum Exit : int { ok = 0, negative = 1, usage = 2, internal = 3 };

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InvalidInput("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InvalidInput("cannot open " + path);
    return parse_edge_list(in);
}

inline std::vector<Vertex> parse_id_list(const std::string& text) {
    std::vector<Vertex> ids;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty())
            continue;
        std::size_t used = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size() || tok[0] == '-' || v > 0xffffffffULL)
            throw InvalidInput("bad vertex id `" + tok + "` in seed list");
        ids.push_back(static_cast<Vertex>(v));
    }
    return ids;
}

inline std::uint64_t resolve_seed(const std::optional<std::uint64_t>& requested) {
    if (requested)
        return *requested;
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

struct Options {
    // simulate
    std::size_t k = 2;
    std::string seed_list;
    std::string seed_file;
    std::optional<std::size_t> max_rounds;
    // shared
    std::string graph_path;
    std::string cnf_path;
    std::optional<std::uint64_t> rng_seed;
    unsigned workers = 1;
    // min-set
    std::string engine = "auto";
    std::size_t max_vertices = 30;
    std::size_t cross_check_limit = 24;
    // reduce-sat / check-sat-equiv
    std::string out_path;
    std::uint64_t max_candidates = 50'000'000;
    // torus
    std::size_t m = 0, n = 0;
    bool verify = false;
    bool emit_grid = false;
    std::string pattern_dir;
};

inline int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err) {
    Graph g = load_graph(o.graph_path);
    VertexSet seed(g.num_vertices());
    if (!o.seed_file.empty())
        seed = io::seed_from_json(io::json::parse(read_file(o.seed_file)), g.num_vertices());
    for (Vertex v : parse_id_list(o.seed_list))
        seed.insert(v);
    auto trace = run(g, seed, o.k, o.max_rounds);
    out << io::to_json(trace).dump(2) << '\n';
    err << "simulate: " << trace.final_black.size() << "/" << g.num_vertices() << " black after "
        << trace.rounds.size() << " rounds" << (trace.converted_all ? " (converted)" : "") << '\n';
    return trace.converted_all ? ok : negative;
}

inline int cmd_min_set(const Options& o, std::ostream& out, std::ostream& err) {
    Graph g = load_graph(o.graph_path);
    require_threshold(o.k);
    SearchBudget budget;
    budget.max_vertices = o.max_vertices;
    budget.workers = std::max(1u, o.workers);
    const bool deg3_ok = o.k == 2 && g.max_degree() <= 3;
    std::string engine = o.engine;
    if (engine == "auto")
        engine = deg3_ok ? "deg3" : "brute";
    io::json j{{"k", o.k}, {"engine", engine}, {"vertices", g.num_vertices()}};
    if (engine == "brute") {
        auto r = min_conversion_set(g, o.k, budget);
        j["size"] = r.size;
        j["witness"] = io::to_json(r.witness);
        j["candidates_checked"] = r.candidates_checked;
    } else if (engine == "deg3") {
        if (!deg3_ok)
            throw InvalidInput("engine deg3 needs k = 2 and maximum degree at most 3");
        Deg3Options opt;
        opt.seed = resolve_seed(o.rng_seed);
        err << "rng seed " << opt.seed << '\n';
        auto r = min_i2cs_maxdeg3(g, opt);
        j.update(io::to_json(r));
        if (o.engine == "auto" && g.num_vertices() <= o.cross_check_limit) {
            budget.max_vertices = g.num_vertices();
            auto b = min_conversion_set(g, 2, budget);
            j["cross_check"] = {{"brute_size", b.size}, {"agrees", b.size == r.size}};
            if (b.size != r.size)
                throw ConsistencyError("deg3 size " + std::to_string(r.size) + " disagrees with exhaustive size " +
                                       std::to_string(b.size));
        }
    } else {
        throw InvalidInput("unknown engine " + engine + " (expected brute, deg3 or auto)");
    }
    out << j.dump(2) << '\n';
    err << "min-set: size " << j["size"].get<std::size_t>() << " via " << engine << '\n';
    return ok;
}

inline int cmd_reduce_sat(const Options& o, std::ostream& out, std::ostream& err) {
    auto f = parse_dimacs(read_file(o.cnf_path));
    auto r = build_reduction(f);
    if (!o.out_path.empty()) {
        std::ofstream gf(o.out_path);
        if (!gf)
            throw InvalidInput("cannot write " + o.out_path);
        write_edge_list(gf, r.graph);
    }
    auto j = io::to_json(r);
    if (o.out_path.empty())
        j["graph"] = io::to_json(r.graph);
    else
        j["graph_file"] = o.out_path;
    out << j.dump(2) << '\n';
    err << "reduce-sat: " << r.graph.num_vertices() << " vertices, |L| = " << r.leaves.size() << ", s = " << r.s
        << '\n';
    return ok;
}

inline int cmd_check_sat_equiv(const Options& o, std::ostream& out, std::ostream& err) {
    auto f = parse_dimacs(read_file(o.cnf_path));
    auto rep = check_equivalence(f, o.max_candidates, std::max(1u, o.workers));
    out << io::to_json(rep).dump(2) << '\n';
    err << "check-sat-equiv: satisfiable=" << rep.satisfiable << " size-s set=" << rep.has_set_of_size_s
        << (rep.consistent() ? " (consistent)" : " (MISMATCH)") << '\n';
    if (!rep.consistent())
        return internal;
    return ok;
}

inline int cmd_torus(const Options& o, std::ostream& out, std::ostream& err) {
    auto dir = o.pattern_dir.empty() ? pattern_directory() : std::filesystem::path(o.pattern_dir);
    auto c = construct_3cs(o.m, o.n, load_pattern_set(dir), o.verify);
    auto j = io::to_json(c);
    j["percolates"] = percolates(c.grid);
    if (o.emit_grid) {
        j["grid"] = c.grid.to_ascii();
        err << c.grid.to_ascii();
    }
    out << j.dump(2) << '\n';
    err << "torus-construct: T(" << o.m << "," << o.n << ") case " << to_string(c.params.tag) << ", " << c.size
        << " cells" << (c.verified ? ", verified" : "") << '\n';
    return j["percolates"].get<bool>() ? ok : negative;
}

inline int cmd_polymatroid_debug(const Options& o, std::ostream& out, std::ostream& err) {
    Graph g = load_graph(o.graph_path);
    const std::uint64_t seed = resolve_seed(o.rng_seed);
    err << "rng seed " << seed << '\n';
    std::mt19937_64 rng(seed);
    Pipeline p = build_pipeline(g);
    const Graph& g3 = p.completed();
    auto inst = cographic_lines(g3);
    verify_cographic(g3, inst, rng, 16);
    auto v2 = p.v2().members();
    ElementSet ground(v2.begin(), v2.end());
    auto span = min_spanning_set(inst, std::span<const std::size_t>(ground), rng);

    io::json steps = io::json::array();
    for (const auto& s : p.steps)
        steps.push_back({{"kind", to_string(s.kind)},
                         {"vertices_before", s.before.num_vertices()},
                         {"vertices_after", s.after.num_vertices()},
                         {"exact_relation", s.relation.exact}});
    io::json j{{"rng_seed", seed},
               {"steps", std::move(steps)},
               {"completed_graph", io::to_json(g3)},
               {"cyclomatic", cyclomatic(g3)},
               {"v2", v2},
               {"polymatroid", io::to_json(inst)},
               {"rank_v2", span.rank},
               {"nu", span.nu},
               {"matching", span.matching},
               {"spanning_set", span.spanning}};
    out << j.dump(2) << '\n';
    err << "polymatroid-debug: " << inst.size() << " lines in dimension " << inst.dimension() << ", f(V2) = "
        << span.rank << ", nu = " << span.nu << ", rho = " << span.rho() << '\n';
    return ok;
}

inline int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Irreversible conversion set toolkit", "kconv"};
    app.require_subcommand(1);
    Options o;

    auto* sim = app.add_subcommand("simulate", "Run the threshold process from a seed set");
    sim->add_option("graph", o.graph_path, "Edge-list file")->required();
    sim->add_option("--k", o.k, "Threshold")->check(CLI::PositiveNumber);
    sim->add_option("--seed", o.seed_list, "Comma-separated seed vertices");
    sim->add_option("--seed-file", o.seed_file, "JSON array of seed vertices");
    sim->add_option("--max-rounds", o.max_rounds, "Round cap (default: number of vertices)");

    auto* ms = app.add_subcommand("min-set", "Minimum conversion set");
    ms->add_option("graph", o.graph_path, "Edge-list file")->required();
    ms->add_option("--k", o.k, "Threshold")->check(CLI::PositiveNumber);
    ms->add_option("--engine", o.engine, "brute, deg3 or auto")->check(CLI::IsMember({"brute", "deg3", "auto"}));
    ms->add_option("--workers", o.workers, "Threads for exhaustive search");
    ms->add_option("--rng-seed", o.rng_seed, "Seed for randomized parity computations");
    ms->add_option("--max-vertices", o.max_vertices, "Largest graph the exhaustive engine accepts");
    ms->add_option("--cross-check-limit", o.cross_check_limit, "auto: cross-check deg3 up to this many vertices");

    auto* rs = app.add_subcommand("reduce-sat", "Build the conversion-set instance of a 3-CNF formula");
    rs->add_option("cnf", o.cnf_path, "DIMACS file")->required();
    rs->add_option("--out", o.out_path, "Write the graph as an edge list here");

    auto* ce = app.add_subcommand("check-sat-equiv", "Compare satisfiability with a size-s conversion set");
    ce->add_option("cnf", o.cnf_path, "DIMACS file")->required();
    ce->add_option("--max-candidates", o.max_candidates, "Budget for the exhaustive search");
    ce->add_option("--workers", o.workers, "Threads for exhaustive search");

    auto* tc = app.add_subcommand("torus-construct", "3-conversion set of the toroidal grid T(m,n)");
    tc->add_option("m", o.m, "Width")->required()->check(CLI::Range(3, 100000));
    tc->add_option("n", o.n, "Height")->required()->check(CLI::Range(3, 100000));
    tc->add_flag("--verify", o.verify, "Check percolation and the case size before printing");
    tc->add_flag("--emit-grid", o.emit_grid, "Include ASCII art of the grid");
    tc->add_option("--patterns", o.pattern_dir, "Pattern directory (default: $KCONV_PATTERN_DIR or built-in)");

    auto* pd = app.add_subcommand("polymatroid-debug", "Dump the cycle-space polymatroid of a max-degree-3 graph");
    pd->add_option("graph", o.graph_path, "Edge-list file")->required();
    pd->add_option("--rng-seed", o.rng_seed, "Seed for randomized parity computations");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? ok : usage;
    }

    try {
        if (sim->parsed())
            return cmd_simulate(o, out, err);
        if (ms->parsed())
            return cmd_min_set(o, out, err);
        if (rs->parsed())
            return cmd_reduce_sat(o, out, err);
        if (ce->parsed())
            return cmd_check_sat_equiv(o, out, err);
        if (tc->parsed())
            return cmd_torus(o, out, err);
        if (pd->parsed())
            return cmd_polymatroid_debug(o, out, err);
    } catch (const ConsistencyError& e) {
        err << "internal consistency failure: " << e.what() << '\n';
        return internal;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    } catch (const io::json::exception& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    }
    err << app.help();
    return usage;
}

} // namespace kconv::cli
