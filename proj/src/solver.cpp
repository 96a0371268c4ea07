#include "twr/solver.h"

#include "twr/cuts.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

namespace twr {

namespace {

constexpr double kTie = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

bool waypoint_sees(const SimplePolygon& P, const Tour& t, const Point& x) {
    for (const auto& w : t.waypoints)
        if (sees(P, w, x, P.tol())) return true;
    return false;
}

bool crosses_window(const Tour& t, const VisibilityPolygon& vp, double tol) {
    auto poly = t.closed_polyline();
    for (std::size_t i = 0; i + 1 < poly.size(); ++i)
        for (const auto& w : vp.windows)
            if (segments_intersect({poly[i], poly[i + 1]}, w.seg, tol)) return true;
    return false;
}

}  // namespace

bool tour_sees(const SimplePolygon& P, const Tour& t, const Point& x) {
    if (t.waypoints.empty()) return false;
    if (waypoint_sees(P, t, x)) return true;
    if (t.is_point()) return false;
    // a tour that enters VP(x) without a visible waypoint has to cross one of its windows
    return crosses_window(t, visibility_from_point_tol(P, x), P.tol());
}

CoverageReport verify_coverage(const SimplePolygon& P, const std::vector<Tour>& tours, std::size_t n_samples,
                               std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Point> pts = sample_boundary(P, n_samples, rng);
    std::vector<Point> in = sample_interior(P, n_samples, rng);
    pts.insert(pts.end(), in.begin(), in.end());
    CoverageReport rep;
    rep.samples = pts.size();
    for (const auto& x : pts) {
        bool seen = false;
        for (const auto& t : tours)
            if (!t.waypoints.empty() && waypoint_sees(P, t, x)) {
                seen = true;
                break;
            }
        if (!seen) {
            std::optional<VisibilityPolygon> vp;
            for (const auto& t : tours) {
                if (t.waypoints.size() < 2) continue;
                if (!vp) vp = visibility_from_point_tol(P, x);
                if (crosses_window(t, *vp, P.tol())) {
                    seen = true;
                    break;
                }
            }
        }
        if (!seen) {
            ++rep.misses;
            rep.missed.push_back(x);
        }
    }
    return rep;
}

bool guard_condition(const SimplePolygon& P, const std::vector<Tour>& tours) {
    std::vector<std::vector<Point>> polys;
    for (const auto& t : tours)
        if (!t.waypoints.empty()) polys.push_back(t.closed_polyline());
    for (const auto& e : extensions(P)) {
        bool ok = false;
        for (const auto& g : polys)
            if (covers(cover_relation(P, g, e.cut))) {
                ok = true;
                break;
            }
        if (!ok) return false;
    }
    return true;
}

GuardabilityReport guardability(const SimplePolygon& P, std::uint64_t seed) {
    GuardabilityReport rep;
    Region K = kernel(P);
    if (!K.empty() && K.area() > 0) {
        rep.star_shaped = true;
        rep.kernel_witness = K.centroid();
        rep.method = "kernel";
        return rep;
    }
    if (!K.empty()) {
        rep.star_shaped = true;
        rep.kernel_witness = K.vertices.front();
        rep.method = "kernel (degenerate)";
        return rep;
    }
    rep.method = "grid 32x32 plus vertices, boundary bitsets, sampled check";

    constexpr std::size_t kGrid = 32;
    constexpr std::size_t kBoundary = 2048;
    std::vector<Point> cand;
    double x0 = kInf, y0 = kInf, x1 = -kInf, y1 = -kInf;
    for (const auto& v : P.vertices()) {
        x0 = std::min(x0, v.x), y0 = std::min(y0, v.y);
        x1 = std::max(x1, v.x), y1 = std::max(y1, v.y);
    }
    for (std::size_t i = 0; i < kGrid; ++i)
        for (std::size_t j = 0; j < kGrid; ++j) {
            Point p{x0 + (x1 - x0) * (i + 0.5) / kGrid, y0 + (y1 - y0) * (j + 0.5) / kGrid};
            if (locate(P, p, P.tol()) == Location::Inside) cand.push_back(p);
        }
    const std::size_t n_grid = cand.size();
    for (const auto& v : P.vertices()) cand.push_back(v);

    const double L = P.perimeter();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, L);
    std::vector<double> arcs(kBoundary);
    for (auto& s : arcs) s = U(rng);
    const std::size_t words = (kBoundary + 63) / 64;
    std::vector<std::vector<std::uint64_t>> bits(cand.size(), std::vector<std::uint64_t>(words, 0));
    for (std::size_t c = 0; c < cand.size(); ++c) {
        const VisibilityPolygon& vp =
            c < n_grid ? visibility_from_point_tol(P, cand[c]) : vertex_visibility(P, c - n_grid);
        for (std::size_t k = 0; k < kBoundary; ++k)
            if (arc_visible(P, vp, arcs[k], P.tol())) bits[c][k / 64] |= std::uint64_t{1} << (k % 64);
    }
    auto full = [&](std::size_t a, std::size_t b) {
        for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t want = w + 1 < words || kBoundary % 64 == 0 ? ~std::uint64_t{0}
                                                                       : (std::uint64_t{1} << (kBoundary % 64)) - 1;
            if ((bits[a][w] | bits[b][w]) != want) return false;
        }
        return true;
    };
    for (std::size_t a = 0; a < cand.size(); ++a)
        for (std::size_t b = a + 1; b < cand.size(); ++b) {
            if (!full(a, b)) continue;
            auto r = verify_coverage(P, {point_tour(cand[a]), point_tour(cand[b])}, 10000, seed);
            if (r.misses == 0) {
                rep.two_point_guards = {cand[a], cand[b]};
                return rep;
            }
        }
    return rep;
}

double guarantee_factor(const std::string& kind) {
    const double pi = std::numbers::pi;
    const double floating = 7.0 * pi / 6.0 + 3.0 - std::sqrt(3.0) + std::sqrt(5.0) * std::asin(1.0 / std::sqrt(5.0));
    const double fixed = 2.0 * std::sqrt(2.0) + 2.0 + 2.0 * pi / 3.0;
    const double fixed_boundary = 2.0 * std::sqrt(2.0) + 1.0 + 2.0 * pi / 3.0;
    if (kind == "minmax-floating-full") return floating;
    if (kind == "minsum-floating-full") return 2.0 * floating;
    if (kind == "minmax-floating-fast") return 2.0 * floating;
    if (kind == "minsum-floating-fast") return 4.0 * floating;
    if (kind == "minmax-fixed") return fixed;
    if (kind == "minsum-fixed") return 2.0 * fixed;
    if (kind == "minmax-fixed-boundary") return fixed_boundary;
    if (kind == "minsum-fixed-boundary") return 2.0 * fixed_boundary;
    throw UnknownKind("unknown guarantee kind: " + kind);
}

// ---- halving ----

namespace {

/// Closed polyline cut at arc length s: the part before s and the part after, both holding the cut point.
std::pair<std::vector<Point>, std::vector<Point>> split_at(const std::vector<Point>& poly, double s) {
    std::vector<Point> head{poly.front()}, tail;
    double acc = 0.0;
    std::size_t i = 0;
    for (; i + 1 < poly.size(); ++i) {
        double l = dist(poly[i], poly[i + 1]);
        if (acc + l >= s) break;
        acc += l;
        head.push_back(poly[i + 1]);
    }
    if (i + 1 >= poly.size()) return {head, {poly.back()}};
    double l = dist(poly[i], poly[i + 1]);
    Point q = l > 0 ? lerp(poly[i], poly[i + 1], (s - acc) / l) : poly[i];
    if (head.back() != q) head.push_back(q);
    tail.push_back(q);
    for (std::size_t k = i + 1; k < poly.size(); ++k)
        if (tail.back() != poly[k]) tail.push_back(poly[k]);
    return {head, tail};
}

}  // namespace

std::pair<Tour, Tour> halve_tour_at(const SimplePolygon& P, const Tour& W, std::size_t start) {
    if (W.waypoints.empty()) throw NotAWatchmanRoute("halve_tour: empty tour");
    if (!guard_condition(P, {W})) throw NotAWatchmanRoute("halve_tour: tour misses an extension");
    if (W.is_point()) return {W, W};
    std::vector<Point> closed = W.closed_polyline();
    closed.pop_back();
    start %= closed.size();
    std::rotate(closed.begin(), closed.begin() + static_cast<std::ptrdiff_t>(start), closed.end());
    closed.push_back(closed.front());
    const double L = path_length(closed);
    auto [to_q, from_q] = split_at(closed, 0.5 * L);
    const Point p = closed.front();
    const Point q = to_q.back();
    GeodesicPath pq = SourceField(P, Source::point(p)).to_point(q);
    if (pq.length < 0.5 * L - kTie) {
        std::vector<Point> c1 = to_q;
        for (std::size_t k = pq.waypoints.size() - 1; k-- > 1;) c1.push_back(pq.waypoints[k]);
        std::vector<Point> c2 = pq.waypoints;
        for (std::size_t k = 1; k + 1 < from_q.size(); ++k) c2.push_back(from_q[k]);
        return {cycle_tour(P, c1), cycle_tour(P, c2)};
    }
    // the half point is as far from p as it can be: meet in the middle of SP(p, q)
    auto [a, b] = split_at(pq.waypoints, 0.5 * pq.length);
    return {path_tour(a), path_tour(b)};
}

std::pair<Tour, Tour> halve_tour(const SimplePolygon& P, const Tour& W) { return halve_tour_at(P, W, 0); }

// ---- initializer ----

namespace {

Tour boundary_tour(const SimplePolygon& P) { return cycle_tour(P, P.vertices()); }

std::vector<std::size_t> uncovered(const SimplePolygon& P, const std::optional<Tour>& T) {
    std::vector<std::size_t> out;
    const auto& ext = extensions(P);
    std::vector<Point> g;
    if (T) g = T->closed_polyline();
    for (std::size_t e = 0; e < ext.size(); ++e)
        if (!T || !covers(cover_relation(P, g, ext[e].cut))) out.push_back(e);
    return out;
}

/// Farthest-first insertion of cut points, then a local slide of each point along its cut.
std::optional<Tour> greedy_route(const SimplePolygon& P) {
    const auto& ext = extensions(P);
    if (ext.empty()) return std::nullopt;
    std::vector<Point> pts;
    std::vector<std::size_t> owner;
    std::vector<double> best(ext.size(), kInf);
    std::vector<Point> foot(ext.size());
    auto absorb = [&](const Point& x) {
        SourceField F(P, Source::point(x));
        for (std::size_t e = 0; e < ext.size(); ++e) {
            GeodesicPath g = F.to_segment(ext[e].cut.segment());
            if (g.length < best[e]) {
                best[e] = g.length;
                foot[e] = g.waypoints.back();
            }
        }
    };
    std::optional<Tour> T;
    {
        Point x = lerp(ext[0].cut.start, ext[0].cut.end, 0.5);
        pts.push_back(x);
        owner.push_back(0);
        absorb(x);
        T = relative_convex_hull(P, pts);
    }
    for (std::size_t guard = 0; guard < ext.size(); ++guard) {
        auto un = uncovered(P, T);
        if (un.empty()) break;
        std::size_t pick = un[0];
        for (std::size_t e : un)
            if (best[e] > best[pick] + kTie) pick = e;
        pts.push_back(foot[pick]);
        owner.push_back(pick);
        absorb(foot[pick]);
        T = relative_convex_hull(P, pts);
    }
    if (!uncovered(P, T).empty()) return std::nullopt;

    if (pts.size() <= 24) {
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const Cut& c = ext[owner[i]].cut;
            for (int k = 0; k <= 8; ++k) {
                std::vector<Point> trial = pts;
                trial[i] = lerp(c.start, c.end, k / 8.0);
                Tour t2 = relative_convex_hull(P, trial);
                if (t2.length < T->length - kTie && uncovered(P, t2).empty()) {
                    pts = std::move(trial);
                    T = std::move(t2);
                }
            }
        }
    }
    return T;
}

}  // namespace

Tour initial_watchman_route(const SimplePolygon& P) {
    Region K = kernel(P);
    if (!K.empty()) return point_tour(K.area() > 0 ? K.centroid() : K.vertices.front());
    Tour fallback = boundary_tour(P);
    auto g = greedy_route(P);
    if (g && g->length < fallback.length && verify_coverage(P, {*g}, 2000, 1).misses == 0) return *g;
    return fallback;
}

// ---- solvers ----

namespace {

struct Candidate {
    Tour t1, t2;
    double maxlen = 0.0;
    std::string note;
    std::optional<std::pair<Point, Point>> bases;
    std::optional<std::pair<std::size_t, std::size_t>> pair;
    std::vector<Tentacle> tentacles;
};

Candidate make_candidate(Tour a, Tour b, std::string note) {
    Candidate c;
    c.maxlen = std::max(a.length, b.length);
    c.t1 = std::move(a);
    c.t2 = std::move(b);
    c.note = std::move(note);
    return c;
}

void fill(TwoWatchmanSolution& s, Candidate c) {
    s.tour1 = std::move(c.t1);
    s.tour2 = std::move(c.t2);
    s.maxlen = std::max(s.tour1.length, s.tour2.length);
    s.sumlen = s.tour1.length + s.tour2.length;
    s.bases = c.bases;
    s.extension_pair = c.pair;
    s.tentacles = std::move(c.tentacles);
    s.provenance.push_back("winner: " + c.note);
}

/// Cheapest candidate that passes the checks; ties go to the earliest enrolled.
void select(const SimplePolygon& P, std::vector<Candidate>& cands, const SolveOptions& opt, TwoWatchmanSolution& s) {
    std::vector<char> dead(cands.size(), 0);
    for (;;) {
        double m = kInf;
        for (std::size_t i = 0; i < cands.size(); ++i)
            if (!dead[i]) m = std::min(m, cands[i].maxlen);
        if (m == kInf) break;
        std::size_t pick = 0;
        while (dead[pick] || cands[pick].maxlen > m + kTie) ++pick;
        Candidate& c = cands[pick];
        if (!guard_condition(P, {c.t1, c.t2})) {
            s.provenance.push_back("rejected " + c.note + ": extension not covered");
            dead[pick] = 1;
            continue;
        }
        if (opt.verify) {
            CoverageReport r = verify_coverage(P, {c.t1, c.t2}, opt.samples, opt.seed);
            if (r.misses > 0) {
                s.provenance.push_back("rejected " + c.note + ": " + std::to_string(r.misses) + " sample misses");
                dead[pick] = 1;
                continue;
            }
            s.coverage = r;
        }
        fill(s, std::move(c));
        return;
    }
    throw CoverageVerificationFailed("no candidate covers the polygon");
}

/// Makes `head` a waypoint of the tour, through an out-and-back detour if needed.
Tour through_head(const SimplePolygon& P, const Tour& t, const Point& head) {
    for (const auto& w : t.waypoints)
        if (w == head) return t;
    std::vector<Point> cyc = t.closed_polyline();
    cyc.pop_back();
    if (cyc.size() == 1) {
        GeodesicPath g = shortest_path(P, cyc[0], head);
        Tour out = path_tour(g.waypoints);
        if (out.waypoints.front() != head && out.waypoints.back() != head) std::reverse(out.waypoints.begin(), out.waypoints.end());
        return out;
    }
    SourceField F(P, Source::point(head));
    double best = kInf;
    std::size_t at = 0;
    GeodesicPath bp;
    for (std::size_t i = 0; i < cyc.size(); ++i) {
        GeodesicPath g = F.to_segment({cyc[i], cyc[(i + 1) % cyc.size()]});
        if (g.length < best) {
            best = g.length;
            at = i;
            bp = g;
        }
    }
    // bp runs head -> x on segment (at, at+1)
    std::vector<Point> w(cyc.begin(), cyc.begin() + static_cast<std::ptrdiff_t>(at + 1));
    const Point x = bp.waypoints.back();
    if (w.back() != x) w.push_back(x);
    for (std::size_t k = bp.waypoints.size() - 1; k-- > 0;) w.push_back(bp.waypoints[k]);
    for (std::size_t k = 1; k < bp.waypoints.size(); ++k) w.push_back(bp.waypoints[k]);
    for (std::size_t k = at + 1; k < cyc.size(); ++k)
        if (w.back() != cyc[k]) w.push_back(cyc[k]);
    while (w.size() > 1 && w.back() == w.front()) w.pop_back();
    Tour out;
    out.waypoints = std::move(w);
    for (std::size_t i = 0; i < out.waypoints.size(); ++i)
        out.length += dist(out.waypoints[i], out.waypoints[(i + 1) % out.waypoints.size()]);
    return out;
}

std::string pair_note(std::size_t a, std::size_t b, int tag) {
    return "extension pair (" + std::to_string(a) + "," + std::to_string(b) + ") case " + std::to_string(tag);
}

}  // namespace

TwoWatchmanSolution solve_floating(const SimplePolygon& P, BaseMode variant, const SolveOptions& opt) {
    TwoWatchmanSolution s;
    s.mode = variant == BaseMode::Fast ? "floating-fast" : "floating-full";
    s.factor_kind = variant == BaseMode::Fast ? "minmax-floating-fast" : "minmax-floating-full";
    s.guarantee_factor = guarantee_factor(s.factor_kind);

    GuardabilityReport g = guardability(P, opt.seed);
    std::vector<Candidate> cands;
    if (g.star_shaped || g.two_point_guards) {
        Point a = g.star_shaped ? *g.kernel_witness : g.two_point_guards->first;
        Point b = g.star_shaped ? *g.kernel_witness : g.two_point_guards->second;
        s.provenance.push_back(g.star_shaped ? "star-shaped: kernel witness" : "two point guards: " + g.method);
        cands.push_back(make_candidate(point_tour(a), point_tour(b), g.star_shaped ? "kernel point" : "point guards"));
        s.lower_bound = 0.0;
        select(P, cands, opt, s);
        return s;
    }

    Tour W0 = initial_watchman_route(P);
    s.provenance.push_back("initializer length " + std::to_string(W0.length));
    double best = W0.length;
    {
        cands.push_back(make_candidate(W0, point_tour(W0.waypoints.front()), "initializer"));
        auto h = halve_tour(P, W0);
        cands.push_back(make_candidate(h.first, h.second, "halve_tour(initializer)"));
        best = std::min(best, cands.back().maxlen);
        std::vector<Point> closed = W0.closed_polyline();
        for (std::size_t k = 1; k + 1 < closed.size() && k <= 16; ++k) {
            auto hk = halve_tour_at(P, W0, k);
            cands.push_back(make_candidate(hk.first, hk.second, "halve_tour(initializer) at " + std::to_string(k)));
            best = std::min(best, cands.back().maxlen);
        }
    }

    const auto& ext = extensions(P);
    struct Job {
        double bound;
        std::size_t a, b;
    };
    std::vector<Job> jobs;
    for (std::size_t a = 0; a < ext.size(); ++a)
        for (std::size_t b = a + 1; b < ext.size(); ++b) jobs.push_back({case1_bound(P, a, b), a, b});
    std::stable_sort(jobs.begin(), jobs.end(), [](const Job& x, const Job& y) { return x.bound < y.bound; });

    double min_mjf = kInf;
    std::vector<Candidate> pair_cands;
    const std::size_t batch = std::max<std::size_t>(1, opt.threads);
    std::size_t evaluated = 0;
    for (std::size_t j0 = 0; j0 < jobs.size(); j0 += batch) {
        const double cb = jobs[j0].bound;
        if (cb >= min_mjf - kTie && 2.0 * cb >= best - kTie) break;
        const std::size_t j1 = std::min(jobs.size(), j0 + batch);
        std::vector<std::optional<Candidate>> out(j1 - j0);
        std::vector<double> mjf(j1 - j0, kInf);
        auto work = [&](std::size_t k) {
            const Job& jb = jobs[j0 + k];
            MinimumJellyfishPair m = bases(P, jb.a, jb.b, variant);
            mjf[k] = m.length();
            ReducedJellyfishPair r = reduce(P, m.pair);
            Candidate c = make_candidate(tour_from_jellyfish(P, r.jf1), tour_from_jellyfish(P, r.jf2),
                                         pair_note(jb.a, jb.b, m.case_tag));
            c.bases = std::pair{m.q1, m.q2};
            c.pair = std::pair{jb.a, jb.b};
            c.tentacles = r.retained;
            out[k] = std::move(c);
        };
        if (j1 - j0 == 1) {
            work(0);
        } else {
            std::vector<std::jthread> pool;
            for (std::size_t k = 0; k < j1 - j0; ++k) pool.emplace_back(work, k);
        }
        for (std::size_t k = 0; k < out.size(); ++k) {
            ++evaluated;
            min_mjf = std::min(min_mjf, mjf[k]);
            best = std::min(best, out[k]->maxlen);
            pair_cands.push_back(std::move(*out[k]));
        }
    }
    s.provenance.push_back("extension pairs evaluated " + std::to_string(evaluated) + " of " +
                           std::to_string(jobs.size()));
    s.lower_bound = min_mjf == kInf ? 0.0 : 2.0 * min_mjf;
    // pair candidates first so ties go to the smallest pair index
    std::stable_sort(pair_cands.begin(), pair_cands.end(), [](const Candidate& x, const Candidate& y) {
        return *x.pair < *y.pair;
    });
    pair_cands.insert(pair_cands.end(), cands.begin(), cands.end());
    select(P, pair_cands, opt, s);
    return s;
}

TwoWatchmanSolution solve_fixed(const SimplePolygon& P, const Point& q1, const Point& q2, const SolveOptions& opt) {
    if (!contains(P, q1, P.tol()) || !contains(P, q2, P.tol()))
        throw PointOutsidePolygon("solve_fixed: head outside polygon");
    TwoWatchmanSolution s;
    s.mode = "fixed";
    bool on_boundary = P.boundary_pos(q1, P.tol()) && P.boundary_pos(q2, P.tol());
    s.factor_kind = on_boundary ? "minmax-fixed-boundary" : "minmax-fixed";
    s.guarantee_factor = guarantee_factor(s.factor_kind);

    JellyfishPair jp = jellyfish_pair(P, q1, q2);
    s.lower_bound = 2.0 * jp.length;
    ReducedJellyfishPair r = reduce(P, jp);
    std::vector<Candidate> cands;
    {
        Candidate c = make_candidate(through_head(P, tour_from_jellyfish(P, r.jf1), q1),
                                     through_head(P, tour_from_jellyfish(P, r.jf2), q2), "jellyfish hulls");
        c.bases = std::pair{q1, q2};
        c.tentacles = r.retained;
        cands.push_back(std::move(c));
    }
    Tour W0 = initial_watchman_route(P);
    cands.push_back(make_candidate(through_head(P, W0, q1), point_tour(q2), "initializer through head 1"));
    cands.push_back(make_candidate(point_tour(q1), through_head(P, W0, q2), "initializer through head 2"));
    select(P, cands, opt, s);
    s.bases = std::pair{q1, q2};
    return s;
}

}  // namespace twr
