#include "doctest.h"
#include "fixtures.h"

#include "twr/cuts.h"

#include <random>

using namespace twr;

namespace {

bool in_box(const Region& R, double x0, double y0, double x1, double y1) {
    for (const auto& v : R.vertices)
        if (v.x < x0 - 1e-12 || v.x > x1 + 1e-12 || v.y < y0 - 1e-12 || v.y > y1 + 1e-12) return false;
    return true;
}

}  // namespace

TEST_CASE("no extensions in convex polygons") {
    CHECK(extensions(fx::sq()).empty());
    CHECK(extensions(validate_polygon({{0, 0}, {3, 0}, {1, 2}})).empty());
}

TEST_CASE("extensions of the L") {
    auto L = fx::lshape();
    const auto& E = extensions(L);
    REQUIRE(E.size() == 2);
    CHECK(E[0].cut.start == Point{1, 1});
    CHECK(E[0].cut.end == Point{0, 1});
    CHECK(L.vertex(E[0].source_edge) == Point{2, 1});
    CHECK(E[1].cut.start == Point{1, 0});
    CHECK(E[1].cut.end == Point{1, 1});
    CHECK(L.vertex(E[1].source_edge) == Point{1, 1});
    for (const auto& e : E) CHECK(L.vertex(e.reflex_vertex) == Point{1, 1});
}

TEST_CASE("extensions are empty exactly for convex polygons") {
    for (const auto& np : standard_corpus()) {
        auto P = validate_polygon(np.vertices);
        CHECK((extensions(P).empty() == P.reflex_indices().empty()));
    }
    CHECK(extensions(validate_polygon(generate_corpus("staircase", 4, 1))).size() == 8);
}

TEST_CASE("extensions follow their source edge") {
    for (const auto& np : standard_corpus()) {
        auto P = validate_polygon(np.vertices);
        for (const auto& e : extensions(P)) {
            Segment s = P.edge(e.source_edge);
            Point d = s.b - s.a, c = e.cut.end - e.cut.start;
            CHECK(std::abs(cross(d, c)) <= 1e-9 * norm(d) * norm(c));
            CHECK(dot(d, c) > 0);
            Point v = P.vertex(e.reflex_vertex);
            CHECK((e.cut.start == v || e.cut.end == v));
            CHECK(locate(P, e.cut.segment().at(0.5), 1e-12) == Location::Inside);
        }
    }
}

TEST_CASE("left polygons of the L extensions") {
    auto L = fx::lshape();
    const auto& E = extensions(L);
    Region a = left_polygon(L, E[0].cut);
    CHECK(a.area() == doctest::Approx(2.0));
    CHECK(in_box(a, 0, 0, 2, 1));
    Region b = left_polygon(L, E[1].cut);
    CHECK(b.area() == doctest::Approx(2.0));
    CHECK(in_box(b, 0, 0, 1, 2));
    // sidedness oracle
    std::mt19937_64 rng(1);
    for (int k = 0; k < 500; ++k) {
        Point p = fx::random_inside(L, rng);
        Segment s = E[0].cut.segment();
        if (std::abs(p.y - 1.0) < 1e-9) continue;
        CHECK(a.contains(p, 0.0) == (orient(s.a, s.b, p) > 0));
    }
}

TEST_CASE("left and right polygons partition P") {
    for (const auto& np : standard_corpus()) {
        auto P = validate_polygon(np.vertices);
        for (const auto& e : extensions(P)) {
            double l = left_polygon(P, e.cut).area(), r = left_polygon(P, e.cut.reversed()).area();
            CHECK(l + r == doctest::Approx(P.area()).epsilon(1e-9));
            CHECK(l > 0);
            CHECK(r > 0);
        }
    }
}

TEST_CASE("make_cut rejects non-chords") {
    auto L = fx::lshape();
    CHECK_THROWS_AS(make_cut(L, {2, 0.5}, {0.5, 2}), InvalidCut);
    CHECK_THROWS_AS(make_cut(L, {0.5, 0.5}, {0, 1}), InvalidCut);
    auto c = make_cut(L, {2, 0.5}, {0, 0.5});
    CHECK(left_polygon(L, c).area() == doctest::Approx(1.0));
}

TEST_CASE("cover relation examples") {
    auto L = fx::lshape();
    const Cut c = extensions(L)[0].cut;
    CHECK(cover_relation(L, {{0.5, 0.5}}, c) == CoverRelation::ProperlyCoversWithoutTouching);
    CHECK(cover_relation(L, {{0.5, 1.0}}, c) == CoverRelation::Reflects);
    CHECK(cover_relation(L, {{0.5, 0.5}, {0.5, 1.5}}, c) == CoverRelation::Crosses);
    CHECK(cover_relation(L, {{0.5, 1.5}}, c) == CoverRelation::None);
    CHECK(cover_relation(L, {{0.2, 1.2}, {0.8, 1.8}, {0.2, 1.2}}, c) == CoverRelation::None);
    CHECK(cover_relation(L, {{0.2, 1.5}, {0.6, 1.0}, {0.9, 1.5}}, c) == CoverRelation::Reflects);
    CHECK(cover_relation(L, {}, c) == CoverRelation::None);
}

TEST_CASE("cover relation agrees with a sampling oracle") {
    auto P = fx::comb(3);
    std::mt19937_64 rng(6);
    for (const auto& e : extensions(P)) {
        Region Lc = left_polygon(P, e.cut);
        for (int k = 0; k < 30; ++k) {
            Point a = fx::random_inside(P, rng), b = fx::random_inside(P, rng);
            if (!sees(P, a, b)) continue;
            bool meets = false;
            for (int i = 0; i <= 4000 && !meets; ++i) meets = Lc.contains(lerp(a, b, i / 4000.0), 0.0);
            bool got = covers(cover_relation(P, {a, b}, e.cut));
            // sampling can only miss tiny overlaps
            if (meets) CHECK(got);
        }
    }
}
