#include "doctest.h"
#include "fixtures.h"
#include "oracles.h"

#include "twr/geodesics.h"

#include <random>

using namespace twr;

TEST_CASE("straight geodesic in a convex polygon") {
    auto S = fx::sq();
    auto g = shortest_path(S, Point{0.1, 0.2}, Point{0.7, 0.9});
    CHECK(g.waypoints.size() == 2);
    CHECK(g.length == doctest::Approx(std::hypot(0.6, 0.7)));
    CHECK(shortest_path(S, Point{0.3, 0.3}, Point{0.3, 0.3}).length == 0.0);
}

TEST_CASE("geodesic around the L corner") {
    auto L = fx::lshape();
    // grazes (1,1)
    auto g = shortest_path(L, Point{1.9, 0.1}, Point{0.1, 1.9});
    CHECK(g.length == doctest::Approx(1.8 * std::sqrt(2.0)).epsilon(1e-12));
    auto h = shortest_path(L, Point{1.9, 0.5}, Point{0.1, 1.9});
    REQUIRE(h.waypoints.size() == 3);
    CHECK(h.waypoints[1] == Point{1, 1});
    CHECK(h.length == doctest::Approx(std::hypot(0.9, 0.5) + std::hypot(0.9, 0.9)).epsilon(1e-12));
    REQUIRE(h.vertex_ids.size() == 1);
    CHECK(L.vertex(h.vertex_ids[0]) == Point{1, 1});
}

TEST_CASE("grid oracle agrees on the L") {
    auto L = fx::lshape();
    oracle::GridGeodesic G(L, 100);
    double d = G.distance({1.9, 0.5}, {0.1, 1.9});
    CHECK(std::abs(d - std::hypot(0.9, 0.5) - std::hypot(0.9, 0.9)) / d < 0.01);
}

TEST_CASE("triangle inequality and symmetry") {
    for (const char* name : {"comb3", "spiral", "random40"}) {
        auto P = fx::corpus(name);
        std::mt19937_64 rng(21);
        for (int k = 0; k < 40; ++k) {
            Point a = fx::random_inside(P, rng), b = fx::random_inside(P, rng), c = fx::random_inside(P, rng);
            double ab = shortest_path(P, a, b).length, bc = shortest_path(P, b, c).length;
            double ac = shortest_path(P, a, c).length;
            CHECK(ac <= ab + bc + 1e-9);
            CHECK(shortest_path(P, b, a).length == doctest::Approx(ab).epsilon(1e-12));
        }
    }
}

TEST_CASE("consecutive waypoints see each other, interior ones are reflex") {
    auto P = fx::corpus("random40");
    std::mt19937_64 rng(8);
    for (int k = 0; k < 50; ++k) {
        Point a = fx::random_inside(P, rng), b = fx::random_inside(P, rng);
        auto g = shortest_path(P, a, b);
        for (std::size_t i = 0; i + 1 < g.waypoints.size(); ++i) CHECK(sees(P, g.waypoints[i], g.waypoints[i + 1], 1e-9));
        for (std::size_t id : g.vertex_ids) CHECK(P.is_reflex(id));
        CHECK(g.length == doctest::Approx(path_length(g.waypoints)).epsilon(1e-12));
    }
}

TEST_CASE("segment sources against sampling") {
    auto P = fx::comb(3);
    std::mt19937_64 rng(9);
    for (int k = 0; k < 20; ++k) {
        Point a = fx::random_inside(P, rng), b = fx::random_inside(P, rng), x = fx::random_inside(P, rng);
        if (!sees(P, a, b)) continue;
        Segment s{a, b};
        double sampled = INFINITY;
        for (int i = 0; i <= 2000; ++i) sampled = std::min(sampled, shortest_path(P, s.at(i / 2000.0), x).length);
        double got = shortest_path(P, s, x).length;
        CHECK(got <= sampled + 1e-9);
        CHECK(got >= sampled - 1e-2);
        CHECK(shortest_path(P, x, s).length == doctest::Approx(got).epsilon(1e-12));
    }
}

TEST_CASE("segment to segment and point to region") {
    auto L = fx::lshape();
    auto g = shortest_path(L, Segment{{1.5, 0.2}, {1.9, 0.2}}, Segment{{0.2, 1.5}, {0.2, 1.9}});
    CHECK(g.length == doctest::Approx(1.3 * std::sqrt(2.0)).epsilon(1e-9));
    auto k = shortest_path(L, Segment{{1.8, 0.2}, {1.9, 0.2}}, Segment{{0.2, 1.8}, {0.2, 1.9}});
    CHECK(k.length == doctest::Approx(2.0 * std::hypot(0.8, 0.8)).epsilon(1e-9));
    Region R{{{0.1, 1.2}, {0.9, 1.2}, {0.9, 1.9}, {0.1, 1.9}}};
    auto h = shortest_path(L, Point{1.9, 0.1}, R);
    CHECK(h.length == doctest::Approx(std::hypot(0.9, 0.9) + std::hypot(0.1, 0.2)).epsilon(1e-9));
    CHECK_THROWS_AS(shortest_path(L, Point{0.5, 0.5}, Region{}), EmptyTarget);
}

TEST_CASE("shortest path tree matches the geodesics") {
    for (const char* name : {"lshape", "comb3", "random20"}) {
        auto P = fx::corpus(name);
        Point root = P.vertex(0);
        auto T = build_spt(P, root);
        for (std::size_t i = 1; i < P.size(); ++i) {
            auto g = shortest_path(P, root, P.vertex(i));
            CHECK(T.dist[i] == doctest::Approx(g.length).epsilon(1e-12));
            auto tp = tree_path(T, i);
            REQUIRE(!tp.empty());
            CHECK(tp.back() == i);
            std::vector<std::size_t> inner(tp.begin(), tp.end() - 1);
            CHECK(inner == g.vertex_ids);
        }
    }
}

TEST_CASE("convex tree is a star") {
    auto S = fx::sq();
    auto T = build_spt(S, S.vertex(0));
    for (std::size_t i = 1; i < 4; ++i) CHECK(T.parent[i] == -1);
}

TEST_CASE("lca in the L tree") {
    auto L = fx::lshape();
    auto T = build_spt(L, {0, 2});
    // (2,1) hangs below (1,1)
    REQUIRE(T.parent[2] == 3);
    CHECK(lca(T, 2, 3) == 3);
    CHECK(lca(T, 0, 4) == -1);
    CHECK(lca(T, 0, 2) == -1);
    for (std::size_t i = 0; i < L.size(); ++i)
        if (T.augmentation[i]) CHECK(L.boundary_pos(T.augmentation[i]->b, 1e-9).has_value());
}
