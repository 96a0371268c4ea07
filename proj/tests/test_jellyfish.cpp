#include "doctest.h"
#include "fixtures.h"

#include "twr/solver.h"

#include <random>

using namespace twr;

namespace {

bool seen_by_paths(const SimplePolygon& P, const std::vector<Tentacle>& ts, const Point& x) {
    for (const auto& t : ts)
        if (tour_sees(P, path_tour(t.path.waypoints), x)) return true;
    return false;
}

std::vector<Tentacle> all_tentacles(const JellyfishPair& p) {
    std::vector<Tentacle> out = p.jf1.tentacles;
    out.insert(out.end(), p.jf2.tentacles.begin(), p.jf2.tentacles.end());
    return out;
}

}  // namespace

TEST_CASE("square pair: everything zero and assigned to the first head") {
    auto S = fx::sq();
    auto jp = jellyfish_pair(S, {0.25, 0.5}, {0.75, 0.5});
    CHECK(jp.length == 0.0);
    CHECK(jp.jf2.tentacles.empty());
    CHECK(!jp.jf1.tentacles.empty());
    for (const auto& t : jp.jf1.tentacles) CHECK(t.zero());
}

TEST_CASE("L pair with a kernel head") {
    auto L = fx::lshape();
    for (Point q2 : {Point{1.5, 0.5}, Point{0.5, 1.9}, Point{1.9, 0.9}}) {
        auto jp = jellyfish_pair(L, {0.5, 0.5}, q2);
        CHECK(jp.length == 0.0);
        for (const auto& t : jp.jf1.tentacles) CHECK(t.length() == 0.0);
    }
}

TEST_CASE("comb pair splits an edge at equal length") {
    auto P = fx::comb(3);
    Point q1{0.5, 0.5}, q2{4.5, 0.5};
    auto jp = jellyfish_pair(P, q1, q2);
    REQUIRE(!jp.splits.empty());
    for (const auto& s : jp.splits) {
        CHECK(std::abs(s.len1 - s.len2) <= 1e-9);
        Segment e = P.edge(s.edge);
        auto diff = [&](double t) {
            return edge_restricted_tentacle(P, q1, e.at(t), s.edge).length() -
                   edge_restricted_tentacle(P, q2, e.at(t), s.edge).length();
        };
        // dense scan brackets a sign change around r*
        bool bracket = false;
        for (int i = 0; i < 10000 && !bracket; ++i) {
            double a = i * 1e-4, b = (i + 1) * 1e-4;
            if (a > s.t + 1e-4 || b < s.t - 1e-4) continue;
            double da = diff(a), db = diff(b);
            bracket = (da <= 1e-9 && db >= -1e-9) || (da >= -1e-9 && db <= 1e-9);
        }
        CHECK(bracket);
    }
    CHECK(jp.length == doctest::Approx(std::max(jp.jf1.length(), jp.jf2.length())));
}

TEST_CASE("every endpoint lands in exactly one jellyfish") {
    auto P = fx::corpus("random20");
    std::mt19937_64 rng(4);
    Point q1 = fx::random_inside(P, rng), q2 = fx::random_inside(P, rng);
    auto jp = jellyfish_pair(P, q1, q2);
    for (std::size_t b = 0; b < P.size(); ++b)
        for (Point v : {P.edge(b).a, P.edge(b).b}) {
            double l1 = edge_restricted_tentacle(P, q1, v, b).length();
            double l2 = edge_restricted_tentacle(P, q2, v, b).length();
            int in1 = 0, in2 = 0;
            for (const auto& t : jp.jf1.tentacles) in1 += t.target == v && t.target_edge == b;
            for (const auto& t : jp.jf2.tentacles) in2 += t.target == v && t.target_edge == b;
            CHECK(in1 + in2 == 1);
            if (l1 <= l2) CHECK(in1 == 1);
        }
}

TEST_CASE("pair tentacles jointly see the boundary") {
    for (const char* name : {"comb3", "spiral", "random40"}) {
        auto P = fx::corpus(name);
        std::mt19937_64 rng(9);
        Point q1 = fx::random_inside(P, rng), q2 = fx::random_inside(P, rng);
        auto jp = jellyfish_pair(P, q1, q2);
        auto red = reduce(P, jp);
        for (std::size_t b = 0; b < P.size(); ++b) {
            std::size_t miss = 0;
            for (int i = 0; i <= 200; ++i)
                if (!seen_by_paths(P, red.retained, P.edge(b).at(i / 200.0))) ++miss;
            CHECK_MESSAGE(miss == 0, name << " edge " << b);
        }
    }
}

TEST_CASE("reduce: trivial cases") {
    auto L = fx::lshape();
    auto t = tentacle(L, {1.9, 0.5}, {0, 1.9});
    JellyfishPair one;
    one.jf1 = {{1.9, 0.5}, {t}};
    one.jf2 = {{0.5, 0.5}, {}};
    one.length = t.length();
    auto r1 = reduce(L, one);
    CHECK(r1.retained.size() == 1);
    CHECK(r1.log.empty());
    JellyfishPair two = one;
    two.jf1.tentacles.push_back(t);
    auto r2 = reduce(L, two);
    CHECK(r2.retained.size() == 1);
    CHECK(r2.log.size() == 1);
}

TEST_CASE("reduce on the comb keeps coverage of every removed cut") {
    auto P = fx::comb(3);
    std::mt19937_64 rng(1);
    for (int k = 0; k < 5; ++k) {
        Point q1 = fx::random_inside(P, rng), q2 = fx::random_inside(P, rng);
        auto jp = jellyfish_pair(P, q1, q2);
        auto red = reduce(P, jp);
        CHECK(red.length <= jp.length + 1e-12);
        double mx = 0;
        for (const auto& t : red.retained) mx = std::max(mx, t.length());
        CHECK(red.length == doctest::Approx(mx));
        for (std::size_t i = 1; i < red.retained.size(); ++i)
            CHECK(red.retained[i - 1].length() >= red.retained[i].length());
        for (const auto& rm : red.log) {
            if (!rm.removed.cut) continue;
            bool covered = false;
            for (const auto& t : red.retained)
                covered = covered || covers(cover_relation(P, t.path.waypoints, *rm.removed.cut));
            CHECK(covered);
        }
        CHECK(red.log.size() + red.retained.size() == all_tentacles(jp).size());
    }
}

TEST_CASE("bases of the L extensions lie in the kernel") {
    auto L = fx::lshape();
    for (BaseMode m : {BaseMode::Fast, BaseMode::Full}) {
        auto mjf = bases(L, 0, 1, m);
        CHECK(mjf.length() == 0.0);
        for (Point q : {mjf.q1, mjf.q2}) {
            CHECK(q.x >= -1e-12);
            CHECK(q.x <= 1 + 1e-12);
            CHECK(q.y >= -1e-12);
            CHECK(q.y <= 1 + 1e-12);
        }
    }
    CHECK_THROWS(bases(L, 1, 1, BaseMode::Fast));
}

TEST_CASE("comb bases: mode trade-off, lower bound, probe heads") {
    auto P = fx::comb(3);
    const auto& E = extensions(P);
    REQUIRE(E.size() == 8);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(0, 1);
    for (auto [a, b] : {std::pair<std::size_t, std::size_t>{1, 6}, {0, 7}, {2, 5}}) {
        auto fast = bases(P, a, b, BaseMode::Fast);
        auto full = bases(P, a, b, BaseMode::Full);
        CHECK(fast.length() >= full.length() - 1e-9);
        CHECK(fast.length() <= 2 * full.length() + 1e-6);
        CHECK(case1_bound(P, a, b) <= full.length() + 1e-9);
        for (int k = 0; k < 25; ++k) {
            Point u1 = E[a].cut.segment().at(U(rng)), u2 = E[b].cut.segment().at(U(rng));
            CHECK(full.length() <= jellyfish_pair(P, u1, u2).length + 1e-9);
        }
    }
}

TEST_CASE("fast bases balance the head between far feet") {
    // comb4 extensions 6 and 9: the longest forced tentacle's foot sits at the far end of extension 6
    auto P = fx::comb(4);
    auto fast = bases(P, 6, 9, BaseMode::Fast);
    auto full = bases(P, 6, 9, BaseMode::Full);
    CHECK(full.length() == doctest::Approx(1.1).epsilon(1e-6));
    CHECK(fast.length() <= 2 * full.length() + 1e-6);
    CHECK(fast.length() >= full.length() - 1e-9);
}
