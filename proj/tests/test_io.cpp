#include "doctest.h"
#include "fixtures.h"

#include "json.hpp"

#include <iomanip>
#include <regex>
#include <sstream>

using namespace twr;

namespace {

/// Minimal structural XML check: balanced tags, quoted attributes, one root.
bool well_formed(const std::string& s) {
    std::vector<std::string> stack;
    std::size_t i = 0, roots = 0;
    while ((i = s.find('<', i)) != std::string::npos) {
        std::size_t j = s.find('>', i);
        if (j == std::string::npos) return false;
        std::string tag = s.substr(i + 1, j - i - 1);
        i = j + 1;
        if (tag.empty()) return false;
        if (tag[0] == '?' || tag[0] == '!') continue;
        if (std::count(tag.begin(), tag.end(), '"') % 2) return false;
        if (tag[0] == '/') {
            if (stack.empty() || stack.back() != tag.substr(1)) return false;
            stack.pop_back();
            continue;
        }
        std::string name = tag.substr(0, tag.find_first_of(" /"));
        if (stack.empty()) ++roots;
        if (tag.back() != '/') stack.push_back(name);
    }
    return stack.empty() && roots == 1;
}

std::string num(double x) {
    std::ostringstream os;
    os << std::setprecision(12) << x;
    return os.str();
}

}  // namespace

TEST_CASE("polygon json round trip") {
    for (const auto& np : standard_corpus()) {
        std::string a = polygon_to_json(np.vertices);
        auto v = parse_polygon_json(a);
        CHECK(v == np.vertices);
        CHECK(polygon_to_json(v) == a);
    }
    CHECK(parse_polygon_json(R"({"vertices": [[0, 0], [1, 0], [0.5, 2]]})").size() == 3);
}

TEST_CASE("polygon json errors") {
    CHECK_THROWS_AS(parse_polygon_json("not json"), ParseError);
    CHECK_THROWS_AS(parse_polygon_json(R"({"verts": []})"), ParseError);
    CHECK_THROWS_AS(parse_polygon_json(R"({"vertices": [[0, 0, 1]]})"), ParseError);
    CHECK_THROWS_AS(parse_polygon_json(R"({"vertices": [["a", 0]]})"), ParseError);
}

TEST_CASE("solution json fields") {
    auto P = fx::comb(3);
    auto s = solve_fixed(P, {0.5, 0.5}, {4.5, 0.5});
    auto j = nlohmann::json::parse(solution_to_json(s));
    for (const char* k : {"mode", "maxlen", "sumlen", "lower_bound", "guarantee_factor", "tours", "bases",
                          "extension_pair", "coverage"})
        CHECK(j.contains(k));
    CHECK(j["tours"].size() == 2);
    CHECK(j["maxlen"].get<double>() == s.maxlen);
    CHECK(j["tours"][0]["waypoints"].size() == s.tour1.waypoints.size());
    CHECK(j["coverage"]["misses"].get<std::size_t>() == 0);
}

TEST_CASE("svg is well formed and carries every tour waypoint") {
    auto P = fx::comb(3);
    auto s = solve_fixed(P, {0.5, 0.5}, {4.5, 0.5});
    std::string svg = render_svg(P, &s);
    CHECK(well_formed(svg));
    std::regex tour_re("class=\"tour\" d=\"([^\"]*)\"");
    std::vector<std::string> paths;
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), tour_re); it != std::sregex_iterator(); ++it)
        paths.push_back((*it)[1]);
    REQUIRE(paths.size() == 2);
    for (std::size_t k = 0; k < 2; ++k) {
        const Tour& t = k == 0 ? s.tour1 : s.tour2;
        CHECK(paths[k].back() == 'Z');
        for (const auto& w : t.waypoints) CHECK(paths[k].find(num(w.x) + " " + num(w.y)) != std::string::npos);
    }
    CHECK(well_formed(render_svg(P, nullptr)));
}

TEST_CASE("corpus generation") {
    auto c = generate_corpus("comb", 3, 1);
    CHECK(c.size() == 12);
    auto P = validate_polygon(c);
    CHECK(kernel(P).empty());
    CHECK(generate_corpus("random", 30, 5) == generate_corpus("random", 30, 5));
    CHECK(generate_corpus("random", 30, 5) != generate_corpus("random", 30, 6));
    auto st = validate_polygon(generate_corpus("staircase", 4, 1));
    CHECK(st.reflex_indices().size() == 4);
    for (const char* f : {"comb", "spiral", "staircase", "star"}) CHECK_NOTHROW(validate_polygon(generate_corpus(f, 5, 2)));
    for (std::size_t n : {12, 25, 60}) CHECK(validate_polygon(generate_corpus("random", n, 2)).size() == n);
    CHECK_THROWS(generate_corpus("donut", 3, 1));
    auto corpus = standard_corpus();
    CHECK(corpus.size() == 12);
    for (const auto& np : corpus) CHECK(np.vertices.size() <= 60);
}
