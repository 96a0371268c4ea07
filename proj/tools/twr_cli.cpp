#include "twr/io.h"

#include "CLI11.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

/// Exit codes of the tool.
constexpr int kOk = 0;
constexpr int kBadPolygon = 2;
constexpr int kBadFlags = 3;
constexpr int kIo = 4;

struct RunConfig {
    std::string input;
    std::string mode = "floating";
    std::string variant = "fast";
    std::string heads;
    std::size_t samples = 10000;
    std::uint64_t seed = 1;
    std::string json_out;
    std::string svg_out;
    std::vector<std::string> vp_points;
    bool verbose = false;
};

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path);
    if (!in) return false;
    std::stringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return !in.bad();
}

bool write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) return false;
    out << text;
    return static_cast<bool>(out);
}

std::optional<twr::Point> parse_point(const std::string& s) {
    double x, y;
    char c;
    std::istringstream is(s);
    if (!(is >> x >> c >> y) || c != ',') return std::nullopt;
    return twr::Point{x, y};
}

std::optional<std::pair<twr::Point, twr::Point>> parse_heads(const std::string& s) {
    double x1, y1, x2, y2;
    char c1, sc, c2;
    std::istringstream is(s);
    if (!(is >> x1 >> c1 >> y1 >> sc >> x2 >> c2 >> y2) || c1 != ',' || sc != ';' || c2 != ',') return std::nullopt;
    return std::pair{twr::Point{x1, y1}, twr::Point{x2, y2}};
}

int run(const RunConfig& cfg) {
    if (cfg.samples < 100) {
        std::cerr << "error: --samples must be at least 100\n";
        return kBadFlags;
    }
    std::optional<std::pair<twr::Point, twr::Point>> heads;
    if (cfg.mode == "fixed") {
        if (cfg.heads.empty()) {
            std::cerr << "error: fixed mode needs --heads \"x1,y1;x2,y2\"\n";
            return kBadFlags;
        }
        heads = parse_heads(cfg.heads);
        if (!heads) {
            std::cerr << "error: cannot parse --heads \"" << cfg.heads << "\"\n";
            return kBadFlags;
        }
    }
    std::string text;
    if (!read_file(cfg.input, text)) {
        std::cerr << "error: cannot read " << cfg.input << "\n";
        return kIo;
    }
    twr::SimplePolygon P;
    try {
        std::vector<twr::PolygonWarning> warnings;
        P = twr::validate_polygon(twr::parse_polygon_json(text), &warnings);
        if (cfg.verbose && !warnings.empty()) std::cerr << "note: clockwise input reversed\n";
    } catch (const twr::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadPolygon;
    } catch (const twr::PolygonError& e) {
        std::cerr << "error: invalid polygon (" << twr::to_string(e.kind) << "): " << e.what() << "\n";
        return kBadPolygon;
    }

    twr::SolveOptions opt;
    opt.samples = cfg.samples;
    opt.seed = cfg.seed;
    auto t0 = std::chrono::steady_clock::now();
    twr::TwoWatchmanSolution sol;
    try {
        if (heads)
            sol = twr::solve_fixed(P, heads->first, heads->second, opt);
        else
            sol = twr::solve_floating(P, cfg.variant == "full" ? twr::BaseMode::Full : twr::BaseMode::Fast, opt);
    } catch (const twr::PointOutsidePolygon& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadFlags;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (cfg.verbose) {
        std::cerr << "solved in " << secs << " s\n";
        for (const auto& p : sol.provenance) std::cerr << "  " << p << "\n";
    }

    std::string js = twr::solution_to_json(sol);
    if (cfg.json_out.empty()) {
        std::cout << js << "\n";
    } else if (!write_file(cfg.json_out, js + "\n")) {
        std::cerr << "error: cannot write " << cfg.json_out << "\n";
        return kIo;
    }
    // debug overlays: visibility polygons of the requested points
    twr::SvgLayers layers;
    for (const auto& v : cfg.vp_points) {
        auto p = parse_point(v);
        if (!p || !twr::contains(P, *p)) {
            std::cerr << "error: --vp point \"" << v << "\" is not a point of the polygon\n";
            return kBadFlags;
        }
        layers.overlays.push_back(twr::visibility_from_point(P, *p));
    }
    if (!cfg.svg_out.empty() && !write_file(cfg.svg_out, twr::render_svg(P, &sol, layers))) {
        std::cerr << "error: cannot write " << cfg.svg_out << "\n";
        return kIo;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Approximate two-watchman routes in simple polygons"};
    app.require_subcommand(1);

    RunConfig cfg;
    auto* solve = app.add_subcommand("solve", "Compute two watchman routes for a polygon");
    solve->add_option("--input", cfg.input, "Polygon JSON {\"vertices\": [[x,y], ...]}")->required();
    solve->add_option("--mode", cfg.mode, "floating or fixed")->check(CLI::IsMember({"floating", "fixed"}));
    solve->add_option("--variant", cfg.variant, "fast or full")->check(CLI::IsMember({"fast", "full"}));
    solve->add_option("--heads", cfg.heads, "Fixed heads \"x1,y1;x2,y2\"");
    solve->add_option("--samples", cfg.samples, "Coverage samples per kind");
    solve->add_option("--seed", cfg.seed, "Random seed");
    solve->add_option("--json", cfg.json_out, "Write the solution JSON here (stdout otherwise)");
    solve->add_option("--svg", cfg.svg_out, "Write an SVG drawing here");
    solve->add_option("--vp", cfg.vp_points, "Draw the visibility polygon of \"x,y\" in the SVG (repeatable)");
    solve->add_flag("--verbose", cfg.verbose, "Print timing and provenance");

    std::string family = "comb";
    std::size_t n = 3;
    std::uint64_t seed = 1;
    std::string out;
    auto* gen = app.add_subcommand("generate", "Write a test polygon");
    gen->add_option("--family", family, "comb, spiral, staircase, random or star")
        ->check(CLI::IsMember({"comb", "spiral", "staircase", "random", "star"}));
    gen->add_option("-n", n, "Teeth, legs, steps or vertices");
    gen->add_option("--seed", seed, "Random seed");
    gen->add_option("--output", out, "Output path (stdout otherwise)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kBadFlags;
    }

    if (*gen) {
        std::string js = twr::polygon_to_json(twr::generate_corpus(family, n, seed));
        if (out.empty()) {
            std::cout << js << "\n";
        } else if (!write_file(out, js + "\n")) {
            std::cerr << "error: cannot write " << out << "\n";
            return kIo;
        }
        return kOk;
    }
    return run(cfg);
}
