#include "doctest.h"
#include "fixtures.h"

#include "twr/solver.h"

#include <algorithm>
#include <random>

using namespace twr;

TEST_CASE("hull of points in a convex polygon is the convex hull") {
    auto S = fx::sq();
    auto t = relative_convex_hull(S, std::vector<Point>{{0.2, 0.2}, {0.8, 0.2}, {0.5, 0.5}, {0.8, 0.8}, {0.2, 0.8}});
    CHECK(t.waypoints.size() == 4);
    CHECK(t.length == doctest::Approx(2.4));
    CHECK(!t.back_and_forth);
    CHECK(t.waypoints[0] == Point{0.2, 0.2});
    CHECK(signed_area(t.waypoints) > 0);
}

TEST_CASE("degenerate hull around the L corner") {
    auto L = fx::lshape();
    auto t = relative_convex_hull(L, std::vector<Point>{{0.5, 1.75}, {1.75, 0.5}});
    CHECK(t.back_and_forth);
    CHECK(t.length == doctest::Approx(4 * std::sqrt(0.8125)).epsilon(1e-12));
    CHECK(t.length == doctest::Approx(2 * shortest_path(L, Point{0.5, 1.75}, Point{1.75, 0.5}).length));
    CHECK(std::find(t.waypoints.begin(), t.waypoints.end(), Point{1, 1}) != t.waypoints.end());
}

TEST_CASE("point and empty inputs") {
    auto L = fx::lshape();
    auto t = relative_convex_hull(L, std::vector<Point>{{0.3, 0.4}});
    CHECK(t.is_point());
    CHECK(t.length == 0.0);
    CHECK_THROWS_AS(relative_convex_hull(L, std::vector<Point>{}), EmptyInput);
    CHECK_THROWS_AS(classify_chains(L, t), DegenerateTour);
}

TEST_CASE("tours from jellyfish") {
    auto L = fx::lshape();
    Jellyfish zero{{0.5, 0.5}, {tentacle(L, {0.5, 0.5}, {2, 0.5}), tentacle(L, {0.5, 0.5}, {0.5, 2})}};
    auto t0 = tour_from_jellyfish(L, zero);
    CHECK(t0.is_point());
    CHECK(t0.length == 0.0);
    auto z = tentacle(L, {1.9, 0.5}, {0, 1.9});
    Jellyfish one{{1.9, 0.5}, {z}};
    auto t1 = tour_from_jellyfish(L, one);
    CHECK(t1.back_and_forth);
    CHECK(t1.length == doctest::Approx(2 * z.length()).epsilon(1e-12));
}

TEST_CASE("comb jellyfish hull contains every tip") {
    auto P = fx::comb(3);
    std::mt19937_64 rng(14);
    for (int k = 0; k < 5; ++k) {
        Point q1 = fx::random_inside(P, rng), q2 = fx::random_inside(P, rng);
        auto red = reduce(P, jellyfish_pair(P, q1, q2));
        for (const Jellyfish* jf : {&red.jf1, &red.jf2}) {
            if (jf->tentacles.empty()) continue;
            auto t = tour_from_jellyfish(P, *jf);
            CHECK(tour_contains(P, t, jf->head));
            for (const auto& tt : jf->tentacles)
                for (const auto& w : tt.path.waypoints) CHECK(tour_contains(P, t, w));
        }
    }
}

TEST_CASE("hull idempotence, containment, minimality") {
    for (const char* name : {"comb3", "spiral", "random40"}) {
        auto P = fx::corpus(name);
        std::mt19937_64 rng(23);
        for (int k = 0; k < 6; ++k) {
            std::vector<Point> pts;
            for (int i = 0; i < 5; ++i) pts.push_back(fx::random_inside(P, rng));
            auto t = relative_convex_hull(P, pts);
            for (const auto& p : pts) CHECK(tour_contains(P, t, p));
            for (std::size_t i = 0; i < t.waypoints.size(); ++i) CHECK(contains(P, t.waypoints[i], 1e-9));
            auto again = relative_convex_hull(P, t.waypoints);
            CHECK(again.length == doctest::Approx(t.length).epsilon(1e-9));
            CHECK(again.waypoints.size() == t.waypoints.size());
            // closed geodesic curves through all points in random orders
            for (int c = 0; c < 20; ++c) {
                std::shuffle(pts.begin(), pts.end(), rng);
                double len = 0;
                for (std::size_t i = 0; i < pts.size(); ++i)
                    len += shortest_path(P, pts[i], pts[(i + 1) % pts.size()]).length;
                CHECK(t.length <= len + 1e-9);
            }
        }
    }
}

TEST_CASE("chains: convex hull is one chain, comb tours alternate") {
    auto S = fx::sq();
    auto t = relative_convex_hull(S, std::vector<Point>{{0.2, 0.2}, {0.8, 0.3}, {0.6, 0.9}});
    auto ch = classify_chains(S, t);
    REQUIRE(ch.size() == 1);
    CHECK(ch[0].type == ChainType::Convex);
    auto P = fx::comb(3);
    auto h = relative_convex_hull(P, std::vector<Point>{{0.5, 3.5}, {4.5, 3.5}, {2.5, 0.5}});
    REQUIRE(!h.degenerate());
    auto c = classify_chains(P, h);
    REQUIRE(c.size() >= 2);
    for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i].type != c[(i + 1) % c.size()].type);
    // reflex tour vertices sit on reflex polygon vertices
    for (const auto& x : c)
        if (x.type == ChainType::Reflex)
            for (std::size_t i = x.first;; i = (i + 1) % h.waypoints.size()) {
                auto v = P.vertex_at(h.waypoints[i], 1e-9);
                REQUIRE(v);
                CHECK(P.is_reflex(*v));
                if (i == x.last) break;
            }
}
