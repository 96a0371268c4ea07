#include "twr/geodesics.h"

#include "caches.h"
#include "twr/cuts.h"
#include "twr/visibility.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace twr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Attach {
    double d = kInf;
    Point on_src;     /// point of the source
    Point on_tgt;     /// point of the target
};

/// Closest visible candidates from point x to segment t: the foot and the two ends.
Attach point_to_segment(const SimplePolygon& P, const Point& x, const Segment& t, double tol) {
    Attach best;
    double tf = project_param(t, x);
    std::pair<double, Point> cands[3] = {{tf, t.at(tf)}, {0.0, t.a}, {1.0, t.b}};
    double best_t = kInf;
    for (const auto& [tp, y] : cands) {
        double d = dist(x, y);
        if (d > best.d + 1e-12) continue;
        if (std::abs(d - best.d) <= 1e-12 && tp >= best_t) continue;
        if (!sees(P, x, y, tol)) continue;
        best = {d, x, y};
        best_t = tp;
    }
    return best;
}

/// Direct connection between a source and a target segment.
Attach segment_to_segment(const SimplePolygon& P, const Segment& s, const Segment& t, double tol) {
    Attach best;
    auto consider = [&](const Point& a, const Point& b) {
        double d = dist(a, b);
        if (d >= best.d) return;
        if (!sees(P, a, b, tol)) return;
        best = {d, a, b};
    };
    if (segments_intersect(s, t, tol)) {
        Point x = s.a;
        if (auto li = line_intersection(s.a, s.b, t.a, t.b)) {
            x = *li;
        } else {
            // overlapping collinear segments: take the first point of s on t
            for (const Point& c : {s.a, s.b, t.a, t.b})
                if (point_segment_distance(c, s) <= tol && point_segment_distance(c, t) <= tol) {
                    x = c;
                    break;
                }
        }
        return {0.0, x, x};
    }
    for (const Point& a : {s.a, s.b}) {
        Attach r = point_to_segment(P, a, t, tol);
        if (r.d < best.d) best = r;
    }
    for (const Point& b : {t.a, t.b}) {
        double f = project_param(s, b);
        consider(s.at(f), b);
    }
    return best;
}

Attach direct(const SimplePolygon& P, const Source& src, const Point& z, double tol) {
    if (src.is_point()) {
        if (sees(P, src.a, z, tol)) return {dist(src.a, z), src.a, z};
        return {};
    }
    Attach r = point_to_segment(P, z, {src.a, src.b}, tol);
    return {r.d, r.on_tgt, z};
}

Attach direct_seg(const SimplePolygon& P, const Source& src, const Segment& t, double tol) {
    if (src.is_point()) return point_to_segment(P, src.a, t, tol);
    return segment_to_segment(P, {src.a, src.b}, t, tol);
}

}  // namespace

double path_length(const std::vector<Point>& pts) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) s += dist(pts[i], pts[i + 1]);
    return s;
}

GeodesicIndex::GeodesicIndex(const SimplePolygon& P) : nodes_(P.reflex_indices()) {
    const std::size_t m = nodes_.size();
    d_.assign(m * m, kInf);
    next_.assign(m * m, -1);
    for (std::size_t i = 0; i < m; ++i) {
        d_[i * m + i] = 0.0;
        next_[i * m + i] = static_cast<long>(i);
        for (std::size_t j = i + 1; j < m; ++j) {
            const Point& a = P.vertex(nodes_[i]);
            const Point& b = P.vertex(nodes_[j]);
            if (!sees(P, a, b, 0.0)) continue;
            d_[i * m + j] = d_[j * m + i] = twr::dist(a, b);
            next_[i * m + j] = static_cast<long>(j);
            next_[j * m + i] = static_cast<long>(i);
        }
    }
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t i = 0; i < m; ++i) {
            double dik = d_[i * m + k];
            if (dik == kInf) continue;
            for (std::size_t j = 0; j < m; ++j) {
                double nd = dik + d_[k * m + j];
                if (nd < d_[i * m + j] - 1e-12) {
                    d_[i * m + j] = nd;
                    next_[i * m + j] = next_[i * m + k];
                }
            }
        }
}

std::vector<std::size_t> GeodesicIndex::node_path(std::size_t i, std::size_t j) const {
    const std::size_t m = nodes_.size();
    std::vector<std::size_t> out{i};
    if (next_[i * m + j] < 0) return out;
    while (i != j) {
        i = static_cast<std::size_t>(next_[i * m + j]);
        out.push_back(i);
    }
    return out;
}

const GeodesicIndex& geodesic_index(const SimplePolygon& P) {
    auto& c = P.caches();
    std::call_once(c.geo_once, [&] { c.geo = GeodesicIndex(P); });
    return c.geo;
}

SourceField::SourceField(const SimplePolygon& P, const Source& src)
    : P_(&P), G_(&geodesic_index(P)), src_(src) {
    const auto& nodes = G_->nodes();
    const std::size_t m = nodes.size();
    const double tol = P.tol();
    std::vector<Attach> dir(m);
    for (std::size_t i = 0; i < m; ++i) dir[i] = direct(P, src, P.vertex(nodes[i]), tol);
    d_.assign(m, kInf);
    first_.assign(m, -1);
    attach_.assign(m, src.a);
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t i = 0; i < m; ++i) {
            if (dir[i].d == kInf) continue;
            double v = dir[i].d + G_->dist(i, k);
            if (v < d_[k] - 1e-12) {
                d_[k] = v;
                first_[k] = static_cast<long>(i);
                attach_[k] = dir[i].on_src;
            }
        }
}

namespace {

GeodesicPath assemble(const SimplePolygon& P, const GeodesicIndex& G, const Point& start,
                      const std::vector<std::size_t>& node_seq, const Point& end) {
    GeodesicPath out;
    out.waypoints.push_back(start);
    for (std::size_t k : node_seq) {
        out.waypoints.push_back(P.vertex(G.nodes()[k]));
        out.vertex_ids.push_back(G.nodes()[k]);
    }
    out.waypoints.push_back(end);
    // drop zero-length hops at the ends
    std::vector<Point> w;
    std::vector<std::size_t> ids;
    for (std::size_t i = 0; i < out.waypoints.size(); ++i) {
        if (!w.empty() && w.back() == out.waypoints[i]) continue;
        w.push_back(out.waypoints[i]);
    }
    for (std::size_t id : out.vertex_ids) {
        const Point& v = P.vertex(id);
        if (v != start && v != end) ids.push_back(id);
    }
    out.waypoints = w;
    out.vertex_ids = ids;
    out.length = path_length(out.waypoints);
    return out;
}

}  // namespace

double SourceField::dist_to_point(const Point& z) const { return to_point(z).length; }

GeodesicPath SourceField::to_point(const Point& z) const {
    const SimplePolygon& P = *P_;
    const double tol = P.tol();
    Attach d0 = direct(P, src_, z, tol);
    double best = d0.d;
    long bk = -1;
    const auto& nodes = G_->nodes();
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        if (d_[k] == kInf) continue;
        const Point& v = P.vertex(nodes[k]);
        double c = d_[k] + dist(v, z);
        if (c >= best - 1e-12) continue;
        if (!sees(P, v, z, tol)) continue;
        best = c;
        bk = static_cast<long>(k);
    }
    if (bk < 0) {
        if (d0.d == kInf) return GeodesicPath{{}, kInf, {}};
        return assemble(P, *G_, d0.on_src, {}, z);
    }
    auto seq = G_->node_path(static_cast<std::size_t>(first_[bk]), static_cast<std::size_t>(bk));
    return assemble(P, *G_, attach_[bk], seq, z);
}

double SourceField::dist_to_segment(const Segment& t) const { return to_segment(t).length; }

GeodesicPath SourceField::to_segment(const Segment& t) const {
    const SimplePolygon& P = *P_;
    const double tol = P.tol();
    Attach d0 = direct_seg(P, src_, t, tol);
    double best = d0.d;
    double best_t = d0.d == kInf ? kInf : project_param(t, d0.on_tgt);
    long bk = -1;
    Point btgt = d0.on_tgt;
    const auto& nodes = G_->nodes();
    std::vector<std::pair<double, std::size_t>> order;
    order.reserve(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k)
        if (d_[k] != kInf) order.push_back({d_[k] + point_segment_distance(P.vertex(nodes[k]), t), k});
    std::sort(order.begin(), order.end());
    for (const auto& [lb, k] : order) {
        if (lb > best + 1e-12) break;
        const Point& v = P.vertex(nodes[k]);
        Attach a = point_to_segment(P, v, t, tol);
        if (a.d == kInf) continue;
        double c = d_[k] + a.d;
        double tp = project_param(t, a.on_tgt);
        if (c < best - 1e-12 || (c <= best + 1e-12 && (tp < best_t || (tp == best_t && static_cast<long>(k) < bk)))) {
            best = c;
            best_t = tp;
            bk = static_cast<long>(k);
            btgt = a.on_tgt;
        }
    }
    if (best == kInf) return GeodesicPath{{}, kInf, {}};
    if (bk < 0) return assemble(P, *G_, d0.on_src, {}, d0.on_tgt);
    auto seq = G_->node_path(static_cast<std::size_t>(first_[bk]), static_cast<std::size_t>(bk));
    return assemble(P, *G_, attach_[bk], seq, btgt);
}

GeodesicPath SourceField::to_region(const ChordTarget& T) const {
    const double tol = P_->tol();
    if (src_.is_point()) {
        if (T.contains(src_.a)) return assemble(*P_, *G_, src_.a, {}, src_.a);
    } else {
        Segment s{src_.a, src_.b};
        double best_t = kInf;
        if (T.contains(s.a)) best_t = 0.0;
        for (const auto& c : T.chords) {
            if (!segments_intersect(s, c, tol)) continue;
            double t = 1.0;
            if (auto x = line_intersection(s.a, s.b, c.a, c.b)) t = project_param(s, *x);
            else t = std::min(project_param(s, c.a), project_param(s, c.b));
            best_t = std::min(best_t, t);
        }
        if (best_t == kInf && T.contains(s.b)) best_t = 1.0;
        if (best_t != kInf) {
            Point x = s.at(best_t);
            return assemble(*P_, *G_, x, {}, x);
        }
    }
    GeodesicPath best{{}, kInf, {}};
    for (const auto& c : T.chords) {
        GeodesicPath g = to_segment(c);
        if (g.length < best.length - 1e-12) best = g;
    }
    return best;
}

GeodesicPath shortest_path(const SimplePolygon& P, const Point& x, const Point& y) {
    if (!contains(P, x, P.tol()) || !contains(P, y, P.tol())) throw PointOutsidePolygon("shortest_path: point outside polygon");
    return SourceField(P, Source::point(x)).to_point(y);
}

GeodesicPath shortest_path(const SimplePolygon& P, const Point& x, const Segment& y) {
    return SourceField(P, Source::point(x)).to_segment(y);
}

GeodesicPath shortest_path(const SimplePolygon& P, const Segment& x, const Point& y) {
    GeodesicPath g = SourceField(P, Source::point(y)).to_segment(x);
    std::reverse(g.waypoints.begin(), g.waypoints.end());
    std::reverse(g.vertex_ids.begin(), g.vertex_ids.end());
    return g;
}

GeodesicPath shortest_path(const SimplePolygon& P, const Segment& x, const Segment& y) {
    return SourceField(P, Source::segment(x)).to_segment(y);
}

GeodesicPath shortest_path(const SimplePolygon& P, const Point& x, const Region& y) {
    if (y.empty()) throw EmptyTarget("shortest_path: empty target region");
    const double tol = P.tol();
    ChordTarget T;
    T.contains = [&](const Point& p) { return y.contains(p, tol); };
    const auto& v = y.vertices;
    if (v.size() == 1) return shortest_path(P, x, v[0]);
    for (std::size_t i = 0; i < v.size(); ++i) {
        Segment s{v[i], v[(i + 1) % v.size()]};
        if (s.length() <= tol) continue;
        if (P.boundary_pos(s.at(0.5), tol)) continue;
        T.chords.push_back(s);
    }
    if (T.chords.empty()) {
        // region boundary runs along the polygon boundary only: the region is all of P
        for (std::size_t i = 0; i < v.size(); ++i) T.chords.push_back({v[i], v[(i + 1) % v.size()]});
    }
    return SourceField(P, Source::point(x)).to_region(T);
}

ShortestPathTree build_spt(const SimplePolygon& P, const Point& root) {
    const std::size_t n = P.size();
    ShortestPathTree T;
    T.root = root;
    T.parent.assign(n, -2);
    T.dist.assign(n, kInf);
    T.augmentation.assign(n, std::nullopt);
    SourceField F(P, Source::point(root));
    const double tol = P.tol();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& z = P.vertex(i);
        if (z == root) {
            T.parent[i] = -1;
            T.dist[i] = 0.0;
            continue;
        }
        GeodesicPath g = F.to_point(z);
        if (g.length == kInf) continue;
        T.dist[i] = g.length;
        T.parent[i] = g.vertex_ids.empty() ? -1 : static_cast<long>(g.vertex_ids.back());
        if (!P.is_reflex(i)) continue;
        Point from = g.waypoints[g.waypoints.size() - 2];
        Point d = z - from;
        const Point& u = P.vertex(P.prev(i));
        const Point& w = P.vertex(P.next(i));
        int su = side(from, z, u, tol), sw = side(from, z, w, tol);
        bool goes_on = su * sw > 0 || (su == 0 && dot(u - z, d) < 0 && sw != 0) ||
                       (sw == 0 && dot(w - z, d) < 0 && su != 0);
        if (!goes_on) continue;
        if (auto hit = ray_shoot(P, z, d, tol)) T.augmentation[i] = Segment{z, hit->first};
    }
    // parents with a root-vertex parent are re-pointed at the root
    for (std::size_t i = 0; i < n; ++i)
        if (T.parent[i] >= 0 && P.vertex(static_cast<std::size_t>(T.parent[i])) == root) T.parent[i] = -1;
    T.depth.assign(n, 0);
    std::vector<char> done(n, 0);
    std::function<int(std::size_t)> depth_of = [&](std::size_t i) -> int {
        if (done[i]) return T.depth[i];
        done[i] = 1;
        long p = T.parent[i];
        T.depth[i] = p < 0 ? 1 : depth_of(static_cast<std::size_t>(p)) + 1;
        return T.depth[i];
    };
    for (std::size_t i = 0; i < n; ++i) depth_of(i);
    int levels = 1;
    while ((1 << levels) <= static_cast<int>(n) + 1) ++levels;
    T.up.assign(static_cast<std::size_t>(levels), std::vector<long>(n, -1));
    for (std::size_t i = 0; i < n; ++i) T.up[0][i] = T.parent[i] < 0 ? -1 : T.parent[i];
    for (std::size_t k = 1; k < T.up.size(); ++k)
        for (std::size_t i = 0; i < n; ++i) {
            long m = T.up[k - 1][i];
            T.up[k][i] = m < 0 ? -1 : T.up[k - 1][static_cast<std::size_t>(m)];
        }
    return T;
}

long lca(const ShortestPathTree& T, std::size_t a, std::size_t b) {
    if (T.parent[a] == -2 || T.parent[b] == -2) return -1;
    long x = static_cast<long>(a), y = static_cast<long>(b);
    if (T.depth[a] < T.depth[b]) std::swap(x, y);
    int diff = T.depth[static_cast<std::size_t>(x)] - T.depth[static_cast<std::size_t>(y)];
    for (std::size_t k = 0; diff > 0 && x >= 0; ++k, diff >>= 1)
        if (diff & 1) x = T.up[k][static_cast<std::size_t>(x)];
    if (x == y) return x;
    for (std::size_t k = T.up.size(); k-- > 0;) {
        long nx = T.up[k][static_cast<std::size_t>(x)], ny = T.up[k][static_cast<std::size_t>(y)];
        if (nx != ny) {
            x = nx;
            y = ny;
        }
    }
    return T.up[0][static_cast<std::size_t>(x)];
}

std::vector<std::size_t> tree_path(const ShortestPathTree& T, std::size_t i) {
    std::vector<std::size_t> out;
    long x = static_cast<long>(i);
    while (x >= 0) {
        out.push_back(static_cast<std::size_t>(x));
        x = T.parent[static_cast<std::size_t>(x)];
    }
    std::reverse(out.begin(), out.end());
    return out;
}

}  // namespace twr
