// Regenerates the torus pattern files.
//
//   kconv-pattern-search [--out DIR] [--tile-blacks N] [--n4-blacks N] [--battery K]

#include <iostream>

#include <CLI11.hpp>

#include <kconv/torus_search.hpp>

int main(int argc, char** argv) {
    CLI::App app{"Search for torus tiling patterns", "kconv-pattern-search"};
    std::string out = kconv::pattern_directory().string();
    kconv::PatternSearchOptions opt;
    app.add_option("--out", out, "Directory for the .pat files");
    app.add_option("--tile-blacks", opt.tile_blacks, "Black squares per 3x3 tile");
    app.add_option("--n4-blacks", opt.n4_blacks, "Black squares per 2x4 tile (n = 4 case)");
    app.add_option("--battery", opt.battery_max, "Largest k, l tried for the general case");
    app.add_option("--n4-battery", opt.n4_battery_max, "Largest k tried for the n = 4 case");
    CLI11_PARSE(app, argc, argv);

    auto res = kconv::search_tile_patterns(opt);
    std::cerr << res.candidates_tried << " candidates tried\n";
    if (!res.patterns) {
        std::cerr << "search exhausted at stage " << res.failed_stage << '\n';
        return 1;
    }
    for (const auto& name : kconv::PatternSet::names()) {
        const auto& p = res.patterns->get(name);
        kconv::save_pattern(out, p);
        std::cout << name << " (" << p.width << "x" << p.height << ", " << p.black_count() << " black)\n"
                  << p.to_ascii();
    }
    return 0;
}
