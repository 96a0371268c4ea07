#include "twr/jellyfish.h"

#include "caches.h"

#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace twr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTie = 1e-9;

/// r* on an edge: root of t -> len ZT(q1, b(t)) - len ZT(q2, b(t)) with the limit values at the ends.
double find_split(const SimplePolygon& P, const SourceField& F1, const SourceField& F2, std::size_t b, double f0,
                  double f1) {
    Segment e = P.edge(b);
    auto f = [&](double t) {
        if (t <= 0.0) return f0;
        if (t >= 1.0) return f1;
        Point r = e.at(t);
        return tentacle_on_edge(P, F1, r, b).length() - tentacle_on_edge(P, F2, r, b).length();
    };
    if (f0 == 0.0) return 0.0;
    if (f1 == 0.0) return 1.0;
    if (f0 * f1 > 0) return f0 > 0 ? 0.0 : 1.0;
    boost::uintmax_t iters = 100;
    auto tol = [](double a, double c) { return std::abs(c - a) <= 1e-12; };
    auto r = boost::math::tools::toms748_solve(f, 0.0, 1.0, f0, f1, tol, iters);
    double lo = r.first, hi = r.second;
    double flo = f(lo), fhi = f(hi);
    return std::abs(flo) <= std::abs(fhi) ? lo : hi;
}

}  // namespace

double Jellyfish::length() const {
    double m = 0.0;
    for (const auto& t : tentacles) m = std::max(m, t.length());
    return m;
}

namespace {

JellyfishPair pair_from_fields(const SimplePolygon& P, const SourceField& F1, const SourceField& F2) {
    const std::size_t n = P.size();
    JellyfishPair out;
    out.jf1.head = F1.source().a;
    out.jf2.head = F2.source().a;
    for (std::size_t b = 0; b < n; ++b) {
        std::size_t ends[2] = {b, P.next(b)};
        bool to1[2];
        double diff[2];
        for (int k = 0; k < 2; ++k) {
            Tentacle t1 = vertex_tentacle(P, F1, ends[k], b);
            Tentacle t2 = vertex_tentacle(P, F2, ends[k], b);
            diff[k] = t1.length() - t2.length();
            to1[k] = t1.length() <= t2.length() + kTie;
            if (to1[k])
                out.jf1.tentacles.push_back(std::move(t1));
            else
                out.jf2.tentacles.push_back(std::move(t2));
        }
        if (to1[0] == to1[1]) continue;
        // the assignment changes along the edge: equal-length point
        double f0 = to1[0] ? std::min(diff[0], 0.0) : std::max(diff[0], 0.0);
        double f1 = to1[1] ? std::min(diff[1], 0.0) : std::max(diff[1], 0.0);
        double t = find_split(P, F1, F2, b, f0, f1);
        Point r = P.edge(b).at(t);
        Tentacle s1 = t <= 0.0 || t >= 1.0 ? vertex_tentacle(P, F1, t <= 0.0 ? b : P.next(b), b)
                                           : tentacle_on_edge(P, F1, r, b);
        Tentacle s2 = t <= 0.0 || t >= 1.0 ? vertex_tentacle(P, F2, t <= 0.0 ? b : P.next(b), b)
                                           : tentacle_on_edge(P, F2, r, b);
        out.splits.push_back({b, r, t, s1.length(), s2.length()});
        out.jf1.tentacles.push_back(std::move(s1));
        out.jf2.tentacles.push_back(std::move(s2));
    }
    out.length = std::max(out.jf1.length(), out.jf2.length());
    return out;
}

}  // namespace

JellyfishPair jellyfish_pair(const SimplePolygon& P, const Point& q1, const Point& q2) {
    if (!contains(P, q1, P.tol()) || !contains(P, q2, P.tol()))
        throw PointOutsidePolygon("jellyfish_pair: head outside polygon");
    SourceField F1(P, Source::point(q1)), F2(P, Source::point(q2));
    return pair_from_fields(P, F1, F2);
}

// ---- bases ----

namespace {

using Caches = detail::Caches;

std::size_t region_index(std::size_t v, std::size_t b) { return 2 * v + (b == v ? 0 : 1); }

std::shared_ptr<SourceField> ext_field(const SimplePolygon& P, std::size_t e) {
    auto& c = P.caches();
    {
        std::lock_guard<std::mutex> lk(c.base_mx);
        auto it = c.ext_field.find(e);
        if (it != c.ext_field.end()) return it->second;
    }
    auto F = std::make_shared<SourceField>(P, Source::segment(extensions(P)[e].cut.segment()));
    std::lock_guard<std::mutex> lk(c.base_mx);
    return c.ext_field.emplace(e, F).first->second;
}

ChordTarget region_target(const SimplePolygon& P, const RestrictedRegion& R) {
    ChordTarget T;
    for (const auto& c : R.chords) T.chords.push_back(c.segment());
    T.contains = [&P, &R](const Point& x) { return R.contains(P, x); };
    return T;
}

std::shared_ptr<Caches::ExtTable> ext_table(const SimplePolygon& P, std::size_t e) {
    auto& c = P.caches();
    {
        std::lock_guard<std::mutex> lk(c.base_mx);
        auto it = c.ext_table.find(e);
        if (it != c.ext_table.end()) return it->second;
    }
    auto F = ext_field(P, e);
    auto T = std::make_shared<Caches::ExtTable>();
    const std::size_t n = P.size();
    T->m.assign(2 * n, 0.0);
    T->foot.assign(2 * n, Point{});
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t b : {v, P.prev(v)}) {
            const RestrictedRegion& R = restricted_region(P, v, b);
            GeodesicPath g = F->to_region(region_target(P, R));
            std::size_t i = region_index(v, b);
            T->m[i] = g.length;
            T->foot[i] = g.waypoints.empty() ? F->source().a : g.waypoints.front();
        }
    std::lock_guard<std::mutex> lk(c.base_mx);
    return c.ext_table.emplace(e, T).first->second;
}

/// Distance from extension e to VP(r) for r inside edge b, with the foot on e.
std::pair<double, Point> ext_to_target(const SimplePolygon& P, std::size_t e, const VisibilityPolygon& vp,
                                       const Point& r) {
    auto F = ext_field(P, e);
    ChordTarget T;
    for (const auto& w : vp.windows) T.chords.push_back(w.seg);
    const double tol = P.tol();
    T.contains = [&P, r, tol](const Point& x) { return sees(P, x, r, tol); };
    GeodesicPath g = F->to_region(T);
    return {g.length, g.waypoints.empty() ? F->source().a : g.waypoints.front()};
}

constexpr std::size_t kGrid = 16;

std::pair<double, Point> grid_value(const SimplePolygon& P, std::size_t e, std::size_t b, std::size_t k) {
    if (k == 0 || k == kGrid) {
        auto T = ext_table(P, e);
        std::size_t v = k == 0 ? b : P.next(b);
        std::size_t i = region_index(v, b);
        return {T->m[i], T->foot[i]};
    }
    auto& c = P.caches();
    auto key = std::make_tuple(e, b, k);
    std::shared_ptr<VisibilityPolygon> vp;
    {
        std::lock_guard<std::mutex> lk(c.base_mx);
        auto it = c.grid_m.find(key);
        if (it != c.grid_m.end()) return it->second;
        auto jt = c.grid_vp.find({b, k});
        if (jt != c.grid_vp.end()) vp = jt->second;
    }
    Point r = P.edge(b).at(static_cast<double>(k) / kGrid);
    if (!vp) {
        vp = std::make_shared<VisibilityPolygon>(visibility_from_point_tol(P, r));
        std::lock_guard<std::mutex> lk(c.base_mx);
        c.grid_vp.emplace(std::make_pair(b, k), vp);
    }
    auto val = ext_to_target(P, e, *vp, r);
    std::lock_guard<std::mutex> lk(c.base_mx);
    c.grid_m.emplace(key, val);
    return val;
}

std::pair<double, Point> value_at(const SimplePolygon& P, std::size_t e, std::size_t b, double t) {
    double kt = t * kGrid;
    double kr = std::round(kt);
    if (std::abs(kt - kr) < 1e-12) return grid_value(P, e, b, static_cast<std::size_t>(kr));
    Point r = P.edge(b).at(t);
    VisibilityPolygon vp = visibility_from_point_tol(P, r);
    return ext_to_target(P, e, vp, r);
}

}  // namespace

double case1_bound(const SimplePolygon& P, std::size_t e1, std::size_t e2) {
    auto T1 = ext_table(P, e1), T2 = ext_table(P, e2);
    double L = 0.0;
    for (std::size_t i = 0; i < T1->m.size(); ++i) L = std::max(L, std::min(T1->m[i], T2->m[i]));
    return L;
}

std::vector<BaseCandidate> base_candidates(const SimplePolygon& P, std::size_t e1, std::size_t e2, BaseMode mode) {
    (void)mode;
    const auto& E = extensions(P);
    auto T1 = ext_table(P, e1), T2 = ext_table(P, e2);
    std::vector<BaseCandidate> out;

    // Case 1: each extension takes the foot of its longest forced tentacle
    Point q1 = E[e1].cut.start, q2 = E[e2].cut.start;
    double best1 = -1, best2 = -1;
    for (std::size_t i = 0; i < T1->m.size(); ++i) {
        if (T1->m[i] <= T2->m[i]) {
            if (T1->m[i] > best1) {
                best1 = T1->m[i];
                q1 = T1->foot[i];
            }
        } else if (T2->m[i] > best2) {
            best2 = T2->m[i];
            q2 = T2->foot[i];
        }
    }
    out.push_back({q1, q2, 1});

    // Case 1, balanced: each head minimizes max_i m_i + L |s - s_i| over its assigned regions,
    // the length bound from walking along the extension to each foot
    auto balanced = [&](std::size_t e, bool first, const Point& fallback) {
        Segment S = E[e].cut.segment();
        const double L = S.length();
        const auto& T = first ? *T1 : *T2;
        double a = -kInf, b = -kInf;
        for (std::size_t i = 0; i < T1->m.size(); ++i) {
            if ((T1->m[i] <= T2->m[i]) != first) continue;
            double s = project_param(S, T.foot[i]);
            a = std::max(a, T.m[i] + L * s);
            b = std::max(b, T.m[i] - L * s);
        }
        if (L <= 0 || a == -kInf) return fallback;
        return S.at(std::clamp((a - b) / (2 * L), 0.0, 1.0));
    };
    Point p1 = balanced(e1, true, q1), p2 = balanced(e2, false, q2);
    out.push_back({p1, p2, 1});
    out.push_back({p1, q2, 1});
    out.push_back({q1, p2, 1});

    // Case 2: both extensions equally far from a point r* of an edge
    for (std::size_t b = 0; b < P.size(); ++b) {
        std::vector<std::pair<double, Point>> g1, g2;
        for (std::size_t k = 0; k <= kGrid; ++k) {
            g1.push_back(grid_value(P, e1, b, k));
            g2.push_back(grid_value(P, e2, b, k));
        }
        auto diff = [&](std::size_t k) { return g1[k].first - g2[k].first; };
        for (std::size_t k = 0; k < kGrid; ++k) {
            double d0 = diff(k), d1 = diff(k + 1);
            if (d0 == 0.0 && g1[k].first > 1e-12) out.push_back({g1[k].second, g2[k].second, 2});
            if (d0 * d1 >= 0) continue;
            double ta = static_cast<double>(k) / kGrid, tb = static_cast<double>(k + 1) / kGrid;
            auto f = [&](double t) {
                if (t <= ta) return d0;
                if (t >= tb) return d1;
                return value_at(P, e1, b, t).first - value_at(P, e2, b, t).first;
            };
            boost::uintmax_t iters = 60;
            auto tol = [](double a, double c) { return std::abs(c - a) <= 1e-10; };
            auto r = boost::math::tools::toms748_solve(f, ta, tb, d0, d1, tol, iters);
            double t = 0.5 * (r.first + r.second);
            auto v1 = value_at(P, e1, b, t), v2 = value_at(P, e2, b, t);
            if (v1.first <= 1e-12 && v2.first <= 1e-12) continue;
            out.push_back({v1.second, v2.second, 2});
        }
    }
    return out;
}

namespace {

int tag_from_active(const JellyfishPair& jp) {
    int count = 0;
    for (const auto* jf : {&jp.jf1, &jp.jf2})
        for (const auto& t : jf->tentacles)
            if (t.length() >= jp.length - 1e-6) ++count;
    return std::clamp(count + 1, 3, 5);
}

}  // namespace

MinimumJellyfishPair bases(const SimplePolygon& P, std::size_t e1, std::size_t e2, BaseMode mode) {
    const auto& E = extensions(P);
    if (e1 == e2 || e1 >= E.size() || e2 >= E.size()) throw std::invalid_argument("bases: need two distinct extensions");
    std::vector<BaseCandidate> cands = base_candidates(P, e1, e2, mode);
    MinimumJellyfishPair best;
    best.e1 = e1;
    best.e2 = e2;
    best.mode = mode;
    best.pair.length = kInf;
    std::vector<BaseCandidate> seen;
    auto try_pair = [&](const Point& a, const Point& b, int tag) {
        for (const auto& s : seen)
            if (dist(s.q1, a) <= 1e-12 && dist(s.q2, b) <= 1e-12) return false;
        seen.push_back({a, b, tag});
        SourceField F1(P, Source::point(a)), F2(P, Source::point(b));
        JellyfishPair jp = pair_from_fields(P, F1, F2);
        if (jp.length < best.pair.length - 1e-12) {
            best.pair = std::move(jp);
            best.q1 = a;
            best.q2 = b;
            best.case_tag = tag;
            return true;
        }
        return false;
    };
    for (const auto& c : cands) try_pair(c.q1, c.q2, c.case_tag);
    if (mode == BaseMode::Fast || best.pair.length <= 1e-12) return best;

    // full mode: local search over both head positions on their extensions
    Segment S1 = E[e1].cut.segment(), S2 = E[e2].cut.segment();
    auto J = [&](double s1, double s2) {
        SourceField F1(P, Source::point(S1.at(s1))), F2(P, Source::point(S2.at(s2)));
        return pair_from_fields(P, F1, F2);
    };
    double bs1 = project_param(S1, best.q1), bs2 = project_param(S2, best.q2);
    double bv = best.pair.length;
    const int g = 4;
    for (int i = 0; i <= g; ++i)
        for (int j = 0; j <= g; ++j) {
            double s1 = static_cast<double>(i) / g, s2 = static_cast<double>(j) / g;
            double v = J(s1, s2).length;
            if (v < bv - 1e-12) {
                bv = v;
                bs1 = s1;
                bs2 = s2;
            }
        }
    double step = 0.125;
    int evals = 0;
    const double dirs[8][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}, {1, -1}, {-1, 1}};
    while (step > 1e-5 && evals < 160) {
        bool moved = false;
        for (const auto& d : dirs) {
            double s1 = std::clamp(bs1 + d[0] * step, 0.0, 1.0), s2 = std::clamp(bs2 + d[1] * step, 0.0, 1.0);
            if (s1 == bs1 && s2 == bs2) continue;
            ++evals;
            double v = J(s1, s2).length;
            if (v < bv - 1e-12) {
                bv = v;
                bs1 = s1;
                bs2 = s2;
                moved = true;
                break;
            }
        }
        if (!moved) step *= 0.5;
    }
    if (bv < best.pair.length - 1e-12) {
        best.pair = J(bs1, bs2);
        best.q1 = S1.at(bs1);
        best.q2 = S2.at(bs2);
        best.case_tag = tag_from_active(best.pair);
    }
    return best;
}

// ---- reduction ----

namespace {

bool path_meets(const Tentacle& t, const Segment& c, double tol) {
    const auto& w = t.path.waypoints;
    if (w.size() == 1) return point_segment_distance(w[0], c) <= tol;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (segments_intersect({w[i], w[i + 1]}, c, tol)) return true;
    return false;
}

}  // namespace

ReducedJellyfishPair reduce(const SimplePolygon& P, const JellyfishPair& pair) {
    struct Item {
        const Tentacle* t;
        int jf;
    };
    std::vector<Item> all;
    for (const auto& t : pair.jf1.tentacles) all.push_back({&t, 1});
    for (const auto& t : pair.jf2.tentacles) all.push_back({&t, 2});
    std::stable_sort(all.begin(), all.end(),
                     [](const Item& a, const Item& b) { return a.t->length() > b.t->length(); });
    const double tol = 10 * P.tol();
    ReducedJellyfishPair out;
    out.jf1.head = pair.jf1.head;
    out.jf2.head = pair.jf2.head;
    std::vector<Item> kept;
    for (const auto& it : all) {
        const Tentacle& t = *it.t;
        const Tentacle* cover = nullptr;
        if (t.cut && !t.zero()) {
            Segment c = t.cut->segment();
            for (const auto& k : kept)
                if (!k.t->zero() && path_meets(*k.t, c, tol)) {
                    cover = k.t;
                    break;
                }
        }
        if (cover) {
            out.log.push_back({t, *cover, it.jf});
            continue;
        }
        kept.push_back(it);
        out.retained.push_back(t);
        (it.jf == 1 ? out.jf1 : out.jf2).tentacles.push_back(t);
    }
    out.length = std::max(out.jf1.length(), out.jf2.length());
    return out;
}

}  // namespace twr
