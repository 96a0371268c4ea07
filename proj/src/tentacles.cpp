#include "twr/tentacles.h"

#include "caches.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace twr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Tentacle zero_tentacle(const Point& q, const Point& r, std::size_t b) {
    Tentacle t;
    t.head = q;
    t.target = r;
    t.target_edge = b;
    t.path.waypoints = {q};
    t.path.length = 0.0;
    t.tip = q;
    return t;
}

/// First polygon vertex met going from r toward the tip, r itself excluded.
std::optional<std::size_t> first_vertex(const SimplePolygon& P, const Point& r, const Point& tip,
                                        std::optional<std::size_t> fallback) {
    const double tol = P.tol();
    Segment s{r, tip};
    double best = kInf;
    std::optional<std::size_t> out;
    for (std::size_t i = 0; i < P.size(); ++i) {
        const Point& v = P.vertex(i);
        double d = dist(v, r);
        if (d <= tol) continue;
        if (point_segment_distance(v, s) > tol) continue;
        if (d < best) {
            best = d;
            out = i;
        }
    }
    return out ? out : fallback;
}

struct ChordChoice {
    GeodesicPath path;
    std::size_t index = 0;
    double param = kInf;
};

/// Shortest path from the field's source to one of the chords; ties to the point closest to the anchor.
ChordChoice pick_chord(const SourceField& F, const std::vector<Segment>& chords, const std::vector<Point>& anchors) {
    ChordChoice best;
    best.path.length = kInf;
    // straight-line distance bounds the geodesic one, so visit chords nearest first
    const Segment src{F.source().a, F.source().b};
    std::vector<std::pair<double, std::size_t>> order;
    for (std::size_t i = 0; i < chords.size(); ++i) {
        const Segment& c = chords[i];
        double lb = segments_intersect(src, c) ? 0.0
                                               : std::min({point_segment_distance(src.a, c), point_segment_distance(src.b, c),
                                                           point_segment_distance(c.a, src), point_segment_distance(c.b, src)});
        order.push_back({lb, i});
    }
    std::sort(order.begin(), order.end());
    for (const auto& [lb, i] : order) {
        if (lb > best.path.length + 1e-12) break;
        GeodesicPath g = F.to_segment(chords[i]);
        if (g.length == kInf || g.waypoints.empty()) continue;
        double len = chords[i].length();
        double param = len > 0 ? dist(anchors[i], g.waypoints.back()) / len : 0.0;
        if (g.length < best.path.length - 1e-12 || (g.length <= best.path.length + 1e-12 && param < best.param)) {
            best.path = std::move(g);
            best.index = i;
            best.param = param;
        }
    }
    return best;
}

void finish(const SimplePolygon& P, Tentacle& t, const Cut& cut, std::size_t anchor, const Point& anchor_pt,
            const Point& far_pt) {
    const double tol = std::max(P.tol(), 1e-9 * std::max(1.0, P.diameter()));
    t.tip = t.path.waypoints.back();
    t.cut = cut;
    t.anchor = anchor;
    if (dist(t.tip, anchor_pt) <= tol) {
        t.tip_kind = TipKind::AtAnchor;
    } else if (dist(t.tip, far_pt) <= tol) {
        t.tip_kind = TipKind::OnBoundary;
        auto bp = P.boundary_pos(far_pt, P.tol());
        if (bp) t.tip_edge = bp->t >= 1.0 ? P.next(bp->edge) : bp->edge;
    } else {
        t.tip_kind = TipKind::Free;
    }
    t.hiding_vertex = first_vertex(P, t.target, t.tip, anchor);
}

}  // namespace

Tentacle tentacle_on_edge(const SimplePolygon& P, const Point& q, const Point& r, std::size_t b) {
    if (sees(P, q, r, P.tol())) return zero_tentacle(q, r, b);
    return tentacle_on_edge(P, SourceField(P, Source::point(q)), r, b);
}

Tentacle tentacle_on_edge(const SimplePolygon& P, const SourceField& F, const Point& r, std::size_t b) {
    const Point q = F.source().a;
    if (sees(P, q, r, P.tol())) return zero_tentacle(q, r, b);
    VisibilityPolygon vp = visibility_from_point_tol(P, r);
    std::vector<Segment> chords;
    std::vector<Point> anchors;
    for (const auto& w : vp.windows) {
        chords.push_back(w.seg);
        anchors.push_back(w.anchor_point());
    }
    ChordChoice c = pick_chord(F, chords, anchors);
    if (c.path.length == kInf) return zero_tentacle(q, r, b);
    Tentacle t;
    t.head = q;
    t.target = r;
    t.target_edge = b;
    t.path = c.path;
    const Window& w = vp.windows[c.index];
    BoundaryPos apos{w.anchor, 0.0};
    Cut cut = w.anchor_first ? Cut{w.seg.a, w.seg.b, apos, w.far_pos} : Cut{w.seg.a, w.seg.b, w.far_pos, apos};
    finish(P, t, cut, w.anchor, w.anchor_point(), w.far_point());
    return t;
}

Tentacle tentacle(const SimplePolygon& P, const Point& q, const Point& r) {
    if (!contains(P, q)) throw PointOutsidePolygon("tentacle: head outside polygon");
    auto bp = P.boundary_pos(r, P.tol());
    if (!bp) throw PointOutsidePolygon("tentacle: target not on the boundary");
    return tentacle_on_edge(P, q, r, bp->edge);
}

bool RestrictedRegion::contains(const SimplePolygon& P, const Point& x) const {
    const double tol = P.tol();
    Segment b = P.edge(edge);
    return side(b.a, b.b, x, tol) >= 0 && sees(P, P.vertex(vertex), x, tol);
}

namespace {

RestrictedRegion build_region(const SimplePolygon& P, std::size_t v, std::size_t b) {
    RestrictedRegion R;
    R.vertex = v;
    R.edge = b;
    const double tol = P.tol();
    Segment e = P.edge(b);
    const auto& vp = vertex_visibility(P, v);
    for (const auto& w : vp.windows) {
        if (side(e.a, e.b, w.seg.at(0.5), tol) < 0) continue;
        BoundaryPos apos{w.anchor, 0.0};
        R.chords.push_back(w.anchor_first ? Cut{w.seg.a, w.seg.b, apos, w.far_pos}
                                          : Cut{w.seg.a, w.seg.b, w.far_pos, apos});
        R.chord_anchor.push_back(w.anchor);
    }
    if (P.is_reflex(v)) {
        const Point& V = P.vertex(v);
        Point d = e.b - e.a;
        bool at_end = v == P.next(b);
        auto hit = ray_shoot(P, V, at_end ? d : d * -1.0, tol);
        if (hit) {
            BoundaryPos vp0{v, 0.0};
            R.chords.push_back(at_end ? Cut{V, hit->first, vp0, hit->second} : Cut{hit->first, V, hit->second, vp0});
            R.chord_anchor.push_back(v);
        }
    }
    return R;
}

}  // namespace

const RestrictedRegion& restricted_region(const SimplePolygon& P, std::size_t v, std::size_t b) {
    auto& c = P.caches();
    std::call_once(c.rr_once, [&] {
        c.restricted.resize(2 * P.size());
        for (std::size_t k = 0; k < P.size(); ++k) {
            c.restricted[2 * k] = build_region(P, k, k);
            c.restricted[2 * k + 1] = build_region(P, k, P.prev(k));
        }
    });
    if (b == v) return c.restricted[2 * v];
    if (b == P.prev(v)) return c.restricted[2 * v + 1];
    throw TargetNotOnEdge("restricted_region: vertex is not an end of the edge");
}

Tentacle vertex_tentacle(const SimplePolygon& P, const SourceField& F, std::size_t v, std::size_t b) {
    const RestrictedRegion& R = restricted_region(P, v, b);
    const Point q = F.source().a;
    const Point r = P.vertex(v);
    if (R.contains(P, q)) return zero_tentacle(q, r, b);
    std::vector<Segment> chords;
    std::vector<Point> anchors;
    for (std::size_t i = 0; i < R.chords.size(); ++i) {
        chords.push_back(R.chords[i].segment());
        anchors.push_back(P.vertex(R.chord_anchor[i]));
    }
    ChordChoice c = pick_chord(F, chords, anchors);
    if (c.path.length == kInf) return zero_tentacle(q, r, b);
    Tentacle t;
    t.head = q;
    t.target = r;
    t.target_edge = b;
    t.path = c.path;
    const Cut& cut = R.chords[c.index];
    std::size_t anchor = R.chord_anchor[c.index];
    Point apt = P.vertex(anchor);
    Point far = dist(cut.start, apt) <= P.tol() ? cut.end : cut.start;
    finish(P, t, cut, anchor, apt, far);
    return t;
}

Tentacle edge_restricted_tentacle(const SimplePolygon& P, const Point& q, const Point& r, std::size_t b) {
    if (b >= P.size()) throw TargetNotOnEdge("edge index out of range");
    if (!contains(P, q)) throw PointOutsidePolygon("edge_restricted_tentacle: head outside polygon");
    Segment e = P.edge(b);
    const double tol = P.tol();
    if (point_segment_distance(r, e) > tol) throw TargetNotOnEdge("target does not lie on the edge");
    SourceField F(P, Source::point(q));
    if (dist(r, e.a) <= tol) return vertex_tentacle(P, F, b, b);
    if (dist(r, e.b) <= tol) return vertex_tentacle(P, F, P.next(b), b);
    return tentacle_on_edge(P, q, r, b);
}

// ---- event points ----

namespace {

struct Signature {
    bool zero = true;
    std::vector<std::size_t> ids;
    long hiding = -1;
    long anchor = -1;
    int tip = -1;
    long tip_edge = -1;
    int rival = 0;
};

Signature signature_of(const Tentacle& t, const std::optional<double>& rival_len) {
    Signature s;
    s.zero = t.zero();
    if (!s.zero) {
        s.ids = t.path.vertex_ids;
        s.hiding = t.hiding_vertex ? static_cast<long>(*t.hiding_vertex) : -1;
        s.anchor = t.anchor ? static_cast<long>(*t.anchor) : -1;
        s.tip = static_cast<int>(t.tip_kind);
        s.tip_edge = t.tip_edge ? static_cast<long>(*t.tip_edge) : -1;
    }
    if (rival_len) {
        double d = t.length() - *rival_len;
        s.rival = d > 1e-12 ? 1 : (d < -1e-12 ? -1 : 0);
    }
    return s;
}

/// Smallest structural change type between two signatures, 0 if equal.
int change_type(const Signature& a, const Signature& b, std::string& what) {
    if (a.zero != b.zero) {
        what = "tentacle becomes zero-length or leaves the head";
        return 4;
    }
    if (!a.zero) {
        auto first = [](const Signature& s) { return s.ids.empty() ? -1L : static_cast<long>(s.ids.front()); };
        auto last = [](const Signature& s) { return s.ids.empty() ? -1L : static_cast<long>(s.ids.back()); };
        if (first(a) != first(b)) {
            what = "first segment gains or loses a vertex";
            return 1;
        }
        if (last(a) != last(b) || a.ids != b.ids) {
            what = "last segment gains or loses a vertex";
            return 2;
        }
        if (a.hiding != b.hiding || a.anchor != b.anchor) {
            what = "tentacle cut meets another vertex";
            return 3;
        }
        if (a.tip != b.tip || a.tip_edge != b.tip_edge) {
            what = "tip reaches or leaves the boundary";
            return 4;
        }
    }
    if (a.rival != b.rival) {
        what = "length crosses the rival tentacle";
        return 5;
    }
    return 0;
}

}  // namespace

std::vector<EventPoint> event_points(const SimplePolygon& P, const Sweep& sw) {
    Segment path = sw.kind == Sweep::TargetOnEdge ? P.edge(sw.edge) : sw.s;
    std::size_t target_edge = sw.edge;
    if (sw.kind == Sweep::HeadOnSegment) {
        auto bp = P.boundary_pos(sw.fixed, P.tol());
        if (bp) target_edge = bp->edge;
    }
    auto eval = [&](double t) {
        Point head = sw.kind == Sweep::TargetOnEdge ? sw.fixed : path.at(t);
        Point r = sw.kind == Sweep::TargetOnEdge ? path.at(t) : sw.fixed;
        Tentacle tt = tentacle_on_edge(P, head, r, target_edge);
        std::optional<double> rl;
        if (sw.rival) rl = tentacle_on_edge(P, *sw.rival, r, target_edge).length();
        return signature_of(tt, rl);
    };
    const std::size_t N = std::max<std::size_t>(sw.grid, 4);
    std::vector<EventPoint> out;
    double t0 = 1.0 / static_cast<double>(N);
    Signature s0 = eval(t0);
    for (std::size_t i = 2; i < N; ++i) {
        double t1 = static_cast<double>(i) / static_cast<double>(N);
        Signature s1 = eval(t1);
        std::string what;
        if (change_type(s0, s1, what) != 0) {
            double lo = t0, hi = t1;
            Signature slo = s0;
            while (hi - lo > 1e-9) {
                double mid = 0.5 * (lo + hi);
                Signature sm = eval(mid);
                std::string w2;
                if (change_type(slo, sm, w2) != 0)
                    hi = mid;
                else {
                    lo = mid;
                    slo = sm;
                }
            }
            Signature shi = eval(hi);
            int type = change_type(slo, shi, what);
            if (type == 0) type = change_type(s0, s1, what);
            double t = 0.5 * (lo + hi);
            if (out.empty() || t - out.back().t > 1e-9) out.push_back({t, type, what});
        }
        t0 = t1;
        s0 = std::move(s1);
    }
    return out;
}

}  // namespace twr
