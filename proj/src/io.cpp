#include "twr/io.h"

#include "twr/cuts.h"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

namespace twr {

using nlohmann::json;

std::vector<Point> parse_polygon_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("polygon json: ") + e.what());
    }
    if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array())
        throw ParseError("polygon json: expected {\"vertices\": [[x,y], ...]}");
    std::vector<Point> out;
    for (const auto& v : j["vertices"]) {
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
            throw ParseError("polygon json: each vertex must be [x, y]");
        out.push_back({v[0].get<double>(), v[1].get<double>()});
    }
    return out;
}

namespace {

json pt(const Point& p) { return json::array({p.x, p.y}); }

json pts(const std::vector<Point>& v) {
    json a = json::array();
    for (const auto& p : v) a.push_back(pt(p));
    return a;
}

}  // namespace

std::string polygon_to_json(const std::vector<Point>& vertices) {
    json j;
    j["vertices"] = pts(vertices);
    return j.dump();
}

std::string solution_to_json(const TwoWatchmanSolution& s) {
    json j;
    j["mode"] = s.mode;
    j["maxlen"] = s.maxlen;
    j["sumlen"] = s.sumlen;
    j["lower_bound"] = s.lower_bound;
    j["guarantee_factor"] = s.guarantee_factor;
    j["factor_kind"] = s.factor_kind;
    j["tours"] = json::array();
    for (const Tour* t : {&s.tour1, &s.tour2}) {
        json tj;
        tj["waypoints"] = pts(t->waypoints);
        tj["length"] = t->length;
        tj["back_and_forth"] = t->back_and_forth;
        j["tours"].push_back(tj);
    }
    j["bases"] = s.bases ? json::array({pt(s.bases->first), pt(s.bases->second)}) : json(nullptr);
    j["extension_pair"] =
        s.extension_pair ? json::array({s.extension_pair->first, s.extension_pair->second}) : json(nullptr);
    j["coverage"] = {{"samples", s.coverage.samples}, {"misses", s.coverage.misses}};
    j["provenance"] = s.provenance;
    return j.dump(2);
}

// ---- svg ----

namespace {

std::string num(double x) {
    std::ostringstream os;
    os << std::setprecision(12) << x;
    return os.str();
}

std::string path_data(const std::vector<Point>& p, bool close) {
    std::string d;
    for (std::size_t i = 0; i < p.size(); ++i) d += (i ? " L " : "M ") + num(p[i].x) + " " + num(p[i].y);
    if (close) d += " Z";
    return d;
}

}  // namespace

std::string render_svg(const SimplePolygon& P, const TwoWatchmanSolution* s, const SvgLayers& layers) {
    double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
    for (const auto& v : P.vertices()) {
        x0 = std::min(x0, v.x), y0 = std::min(y0, v.y);
        x1 = std::max(x1, v.x), y1 = std::max(y1, v.y);
    }
    const double pad = 0.05 * std::max(x1 - x0, y1 - y0);
    const double w = x1 - x0 + 2 * pad, h = y1 - y0 + 2 * pad;
    const double sw = 0.004 * std::max(w, h);
    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(x0 - pad) << ' ' << num(y0 - pad) << ' '
      << num(w) << ' ' << num(h) << "\" width=\"800\" height=\"" << num(800.0 * h / w) << "\">\n";
    // flip so y points up
    o << "<g transform=\"translate(0," << num(y0 + y1) << ") scale(1,-1)\">\n";
    o << "<path class=\"polygon\" d=\"" << path_data(P.vertices(), true) << "\" fill=\"#f4f1e8\" stroke=\"#333333\""
      << " stroke-width=\"" << num(sw) << "\"/>\n";
    for (const auto& vp : layers.overlays)
        o << "<path class=\"overlay\" d=\"" << path_data(vp.region.vertices, true)
          << "\" fill=\"#f1c40f\" fill-opacity=\"0.3\" stroke=\"none\"/>\n";
    if (layers.extensions)
        for (const auto& e : extensions(P))
            o << "<path class=\"extension\" d=\"" << path_data({e.cut.start, e.cut.end}, false)
              << "\" stroke=\"#999999\" stroke-width=\"" << num(sw * 0.6) << "\" stroke-dasharray=\"" << num(sw * 3)
              << ' ' << num(sw * 2) << "\" fill=\"none\"/>\n";
    if (s && layers.tentacles)
        for (const auto& t : s->tentacles) {
            if (t.zero()) continue;
            bool first = !s->bases || t.head == s->bases->first;
            o << "<path class=\"tentacle\" d=\"" << path_data(t.path.waypoints, false) << "\" stroke=\""
              << (first ? "#2a7ab0" : "#c0392b") << "\" stroke-width=\"" << num(sw * 0.7) << "\" fill=\"none\"/>\n";
        }
    if (s && layers.tours) {
        const char* colors[2] = {"#1b6ca8", "#d35400"};
        int k = 0;
        for (const Tour* t : {&s->tour1, &s->tour2}) {
            if (t->waypoints.empty()) continue;
            std::vector<Point> poly = t->closed_polyline();
            poly.pop_back();
            o << "<path class=\"tour\" d=\"" << path_data(poly, true) << "\" stroke=\"" << colors[k]
              << "\" stroke-width=\"" << num(sw * 2.5) << "\" stroke-linejoin=\"round\" stroke-linecap=\"round\""
              << " fill=\"none\"/>\n";
            if (t->is_point())
                o << "<circle class=\"tour-point\" cx=\"" << num(t->waypoints[0].x) << "\" cy=\""
                  << num(t->waypoints[0].y) << "\" r=\"" << num(sw * 3) << "\" fill=\"" << colors[k] << "\"/>\n";
            ++k;
        }
    }
    o << "</g>\n</svg>\n";
    return o.str();
}

// ---- corpus ----

namespace {

std::vector<Point> comb(std::size_t k) {
    if (k < 2) k = 2;
    const double right = 2.0 * k - 1.0;
    auto top = [](std::size_t i) { return 4.0 + 0.1 * static_cast<double>(i); };
    auto floor = [](std::size_t j) { return 1.0 + 0.1 * static_cast<double>(j); };
    std::vector<Point> v{{0, 0}, {right, 0}};
    for (std::size_t i = k; i-- > 0;) {
        double xl = 2.0 * i, xr = xl + 1.0;
        v.push_back({xr, top(i)});
        v.push_back({xl, top(i)});
        if (i > 0) {
            v.push_back({xl, floor(i - 1)});
            v.push_back({xl - 1.0, floor(i - 1)});
        }
    }
    return v;
}

/// Corridor of width 1 around an inward left-turning axis-aligned centerline.
std::vector<Point> spiral(std::size_t legs) {
    static const double len[] = {10.0, 9.1, 8.3, 6.9, 6.1, 4.7, 3.9, 2.4};
    legs = std::clamp<std::size_t>(legs, 3, 8);
    const Point dir[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    std::vector<Point> c{{0, 0}};
    for (std::size_t i = 0; i < legs; ++i) c.push_back(c.back() + dir[i % 4] * len[i]);
    auto normal = [&](std::size_t seg) { return Point{-dir[seg % 4].y, dir[seg % 4].x}; };
    std::vector<Point> left, right;
    for (std::size_t i = 0; i < c.size(); ++i) {
        Point n = i == 0 ? normal(0) : i + 1 == c.size() ? normal(i - 1) : normal(i - 1) + normal(i);
        left.push_back(c[i] + n * 0.5);
        right.push_back(c[i] - n * 0.5);
    }
    std::vector<Point> v = right;
    for (std::size_t i = left.size(); i-- > 0;) v.push_back(left[i]);
    return v;
}

std::vector<Point> staircase(std::size_t steps) {
    if (steps < 1) steps = 1;
    const double m = static_cast<double>(steps) + 1.0;
    std::vector<Point> v{{0, 0}, {m, 0}};
    for (std::size_t i = 0; i < steps; ++i) {
        double x = m - static_cast<double>(i);
        double y = static_cast<double>(i) + 1.0;
        v.push_back({x, y});
        v.push_back({x - 1.0, y});
    }
    v.push_back({1.0, m});
    v.push_back({0.0, m});
    return v;
}

bool valid(const std::vector<Point>& v) {
    try {
        validate_polygon(v);
        return true;
    } catch (const PolygonError&) {
        return false;
    }
}

std::vector<Point> random_polygon(std::size_t n, std::uint64_t seed) {
    if (n < 3) n = 3;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, 10.0);
    for (;;) {
        std::vector<Point> v(n);
        for (auto& p : v) p = {std::round(U(rng) * 1000.0) / 1000.0, std::round(U(rng) * 1000.0) / 1000.0};
        // untangle by 2-opt moves until no two edges cross
        bool again = true;
        for (std::size_t guard = 0; again && guard < 100000; ++guard) {
            again = false;
            for (std::size_t i = 0; i < n && !again; ++i)
                for (std::size_t j = i + 2; j < n && !again; ++j) {
                    if (i == 0 && j == n - 1) continue;
                    if (segments_intersect({v[i], v[i + 1]}, {v[j], v[(j + 1) % n]})) {
                        std::reverse(v.begin() + static_cast<std::ptrdiff_t>(i + 1),
                                     v.begin() + static_cast<std::ptrdiff_t>(j + 1));
                        again = true;
                    }
                }
        }
        if (!again && valid(v)) {
            if (signed_area(v) < 0) std::reverse(v.begin(), v.end());
            return v;
        }
    }
}

std::vector<Point> star(std::size_t k) {
    std::vector<Point> v;
    const double pi = 3.14159265358979323846;
    for (std::size_t i = 0; i < 2 * k; ++i) {
        double a = pi * static_cast<double>(i) / static_cast<double>(k) + 0.1;
        double r = i % 2 == 0 ? 4.0 : 1.8;
        v.push_back({std::round(r * std::cos(a) * 1000.0) / 1000.0, std::round(r * std::sin(a) * 1000.0) / 1000.0});
    }
    return v;
}

}  // namespace

std::vector<Point> generate_corpus(const std::string& family, std::size_t n, std::uint64_t seed) {
    if (family == "comb") return comb(n);
    if (family == "spiral") return spiral(n);
    if (family == "staircase") return staircase(n);
    if (family == "random") return random_polygon(n, seed);
    if (family == "star") return star(n);
    throw std::invalid_argument("unknown corpus family: " + family);
}

std::vector<NamedPolygon> standard_corpus() {
    std::vector<NamedPolygon> c;
    c.push_back({"square", {{0, 0}, {1, 0}, {1, 1}, {0, 1}}});
    c.push_back({"lshape", {{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}});
    for (std::size_t k = 2; k <= 5; ++k) c.push_back({"comb" + std::to_string(k), comb(k)});
    c.push_back({"spiral", spiral(8)});
    c.push_back({"staircase", staircase(4)});
    c.push_back({"random20", random_polygon(20, 20)});
    c.push_back({"random40", random_polygon(40, 40)});
    c.push_back({"random60", random_polygon(60, 60)});
    c.push_back({"star", star(5)});
    return c;
}

}  // namespace twr
