#include "twr/tentacles.h"

#include <cmath>

namespace twr {

const char* to_string(MotionFamily f) {
    switch (f) {
        case MotionFamily::A: return "A";
        case MotionFamily::B: return "B";
        case MotionFamily::C: return "C";
        case MotionFamily::D: return "D";
        case MotionFamily::E: return "E";
        case MotionFamily::F: return "F";
    }
    return "F";
}

double eps_prime(double a, double c, double eps) { return a * eps / (1.0 - c * eps); }

namespace {

Point unit(const Point& d) {
    double l = norm(d);
    return l > 0 ? d * (1.0 / l) : Point{1, 0};
}

}  // namespace

MotionAnchors motion_anchors(const SimplePolygon& P, const Tentacle& t, const Point& ds) {
    MotionAnchors m;
    m.q = t.head;
    m.r = t.target;
    m.ds = unit(ds);
    Segment b = P.edge(t.target_edge);
    m.db = unit(b.b - b.a);
    if (t.zero()) {
        m.zero = true;
        m.p = m.u = m.u1 = m.uh = t.head;
        return m;
    }
    const auto& w = t.path.waypoints;
    m.p = t.tip;
    m.single_segment = w.size() == 2;
    m.u = w[w.size() - 2];
    m.u1 = w[1];
    m.uh = t.hiding_vertex ? P.vertex(*t.hiding_vertex) : P.vertex(*t.anchor);
    m.tip = t.tip_kind;
    if (m.tip == TipKind::OnBoundary && t.tip_edge) {
        Segment e = P.edge(*t.tip_edge);
        m.dp = unit(e.b - e.a);
        Point wp = m.p - m.uh, wr = m.r - m.uh;
        double den = cross(m.dp, wr);
        m.a = -cross(wp, m.db) / den;
        m.c = -cross(m.dp, m.db) / den;
        Point up = m.u - m.p;
        double l = norm(up);
        m.phi = l > 0 ? std::acos(std::clamp(dot(up, m.dp) / l, -1.0, 1.0)) : 0.0;
    }
    return m;
}

namespace {

void require(bool ok, const char* fam) {
    if (!ok) throw WrongCase(std::string("motion family ") + fam + " does not match the configuration");
}

}  // namespace

MotionCoeffs coeffs_A(const MotionAnchors& m) {
    require(!m.zero && !m.single_segment && m.tip == TipKind::OnBoundary, "A");
    double A0 = dist(m.u, m.p);
    double cphi = std::cos(m.phi);
    double a = m.a, c = m.c;
    return {MotionFamily::A,
            {A0, -2 * A0 * A0 * c - 2 * A0 * a * cphi, A0 * A0 * c * c + 2 * A0 * a * c * cphi + a * a, -c},
            m};
}

MotionCoeffs coeffs_B(const MotionAnchors& m) {
    require(!m.zero && !m.single_segment && m.tip == TipKind::Free, "B");
    Point w = m.r - m.uh;
    double lw = norm(w);
    Point uu = m.u - m.uh;
    double sg = cross(w, uu) >= 0 ? 1.0 : -1.0;
    return {MotionFamily::B,
            {sg * cross(w, uu) / lw, sg * cross(m.db, uu) / lw, 2 * dot(w, m.db) / (lw * lw), 1.0 / (lw * lw)},
            m};
}

MotionCoeffs coeffs_C(const MotionAnchors& m) {
    require(!m.zero && (!m.single_segment || m.tip == TipKind::AtAnchor), "C");
    Point g = m.q - m.u1;
    return {MotionFamily::C, {norm(g), 2 * dot(g, m.ds), 1.0}, m};
}

MotionCoeffs coeffs_D(const MotionAnchors& m) {
    require(!m.zero && m.single_segment && m.tip == TipKind::Free, "D");
    Point w = m.r - m.uh;
    double lw = norm(w);
    Point g = m.q - m.uh;
    double sg = cross(w, g) >= 0 ? 1.0 : -1.0;
    double k = sg / lw;
    return {MotionFamily::D,
            {k * cross(w, g), k * cross(m.db, g), k * cross(w, m.ds), k * cross(m.db, m.ds), 0.0, 0.0,
             2 * dot(w, m.db) / (lw * lw), 1.0 / (lw * lw), 0.0, 0.0},
            m};
}

MotionCoeffs coeffs_E(const MotionAnchors& m) {
    require(!m.zero && m.single_segment && m.tip == TipKind::OnBoundary, "E");
    Point g = m.q - m.p;
    double G = dot(g, g);
    double k1 = 2 * dot(g, m.ds), k2 = dot(g, m.dp), k3 = dot(m.ds, m.dp);
    double a = m.a, c = m.c;
    return {MotionFamily::E,
            {std::sqrt(G), -2 * c * G - 2 * a * k2, k1, -2 * c * k1 - 2 * a * k3, c * c * G + 2 * a * c * k2 + a * a, 1.0,
             c * c * k1 + 2 * a * c * k3, -2 * c, c * c, -2 * c, c * c},
            m};
}

namespace {

std::vector<double> to_F(const MotionCoeffs& c) {
    if (c.family == MotionFamily::F) return c.k;
    std::vector<double> F(24, 0.0);
    const auto& k = c.k;
    switch (c.family) {
        case MotionFamily::A:
            F[13] = k[0];
            F[14] = k[1];
            F[17] = k[2];
            F[22] = 2 * k[3];
            F[23] = k[3] * k[3];
            break;
        case MotionFamily::B:
            F[3] = k[0];
            F[4] = k[1];
            F[9] = k[2];
            F[10] = k[3];
            break;
        case MotionFamily::C:
            F[0] = k[0];
            F[1] = k[1];
            F[2] = k[2];
            break;
        case MotionFamily::D:
            for (int i = 0; i < 10; ++i) F[3 + i] = k[i];
            break;
        case MotionFamily::E:
            for (int i = 0; i < 11; ++i) F[13 + i] = k[i];
            break;
        case MotionFamily::F: break;
    }
    return F;
}

void add_into(std::vector<double>& F, const std::vector<double>& G) {
    for (std::size_t i = 0; i < 24; ++i) F[i] += G[i];
}

}  // namespace

MotionCoeffs motion_coeffs(const MotionAnchors& m) {
    MotionCoeffs out{MotionFamily::F, std::vector<double>(24, 0.0), m};
    if (m.zero) return out;
    if (!m.single_segment) {
        add_into(out.k, to_F(coeffs_C(m)));
        if (m.tip == TipKind::Free) add_into(out.k, to_F(coeffs_B(m)));
        if (m.tip == TipKind::OnBoundary) add_into(out.k, to_F(coeffs_A(m)));
        return out;
    }
    if (m.tip == TipKind::Free) add_into(out.k, to_F(coeffs_D(m)));
    if (m.tip == TipKind::OnBoundary) add_into(out.k, to_F(coeffs_E(m)));
    if (m.tip == TipKind::AtAnchor) add_into(out.k, to_F(coeffs_C(m)));
    return out;
}

namespace {

struct Eval {
    double v, dd, de;
};

Eval eval_F(const std::vector<double>& F, double d, double e) {
    Eval out{0, 0, 0};
    // head term
    double S1 = F[0] * F[0] + F[1] * d + F[2] * d * d;
    if (S1 > 0) {
        double r = std::sqrt(S1);
        out.v += r - F[0];
        out.dd += (F[1] + 2 * F[2] * d) / (2 * r);
    }
    // free-tip term
    double N = F[3] + F[4] * e + F[5] * d + F[6] * e * d + F[7] * e * e + F[8] * e * e * d;
    double M = 1 + F[9] * e + F[10] * e * e + F[11] * e * e * e + F[12] * e * e * e * e;
    double Ne = F[4] + F[6] * d + 2 * F[7] * e + 2 * F[8] * e * d;
    double Nd = F[5] + F[6] * e + F[8] * e * e;
    double Me = F[9] + 2 * F[10] * e + 3 * F[11] * e * e + 4 * F[12] * e * e * e;
    double sM = std::sqrt(M);
    out.v += N / sM - F[3];
    out.dd += Nd / sM;
    out.de += Ne / sM - N * Me / (2 * M * sM);
    // boundary-tip term
    double Q = F[13] * F[13] + F[14] * e + F[15] * d + F[16] * e * d + F[17] * e * e + F[18] * d * d +
               F[19] * e * e * d + F[20] * e * d * d + F[21] * e * e * d * d;
    double R = 1 + F[22] * e + F[23] * e * e;
    double Qe = F[14] + F[16] * d + 2 * F[17] * e + 2 * F[19] * e * d + F[20] * d * d + 2 * F[21] * e * d * d;
    double Qd = F[15] + F[16] * e + 2 * F[18] * d + F[19] * e * e + 2 * F[20] * e * d + 2 * F[21] * e * e * d;
    double Re = F[22] + 2 * F[23] * e;
    double ratio = Q / R;
    if (ratio > 0) {
        double s = std::sqrt(ratio);
        out.v += s - F[13];
        out.dd += Qd / R / (2 * s);
        out.de += (Qe * R - Q * Re) / (R * R) / (2 * s);
    }
    return out;
}

}  // namespace

double evaluate_motion(const MotionCoeffs& c, double delta, double eps) {
    return eval_F(to_F(c), delta, eps).v;
}

std::array<double, 2> motion_gradient(const MotionCoeffs& c, double delta, double eps) {
    Eval e = eval_F(to_F(c), delta, eps);
    return {e.dd, e.de};
}

}  // namespace twr
