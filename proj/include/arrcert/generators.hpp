#pragma once

#include <string>
#include <utility>
#include <vector>

#include "arrcert/arrangement.hpp"
#include "arrcert/linear_system.hpp"

namespace arrcert::arr {

using geom::Rational;

// Ceva arrangement of 3m lines: the m-th roots of unity pencils between the
// three coordinate vertices, over Q(zeta_m).
inline Arrangement gen_ceva(unsigned m) {
    if (m < 3) throw invalid_parameter("ceva parameter must be >= 3");
    const Cyclotomic zero = Cyclotomic::zero(m);
    const Cyclotomic one = Cyclotomic::one(m);
    std::vector<ProjLine> lines;
    lines.reserve(3 * m);
    for (unsigned j = 0; j < m; ++j) {
        Cyclotomic zj = Cyclotomic::zeta_pow(m, j);
        lines.emplace_back(one, -zj, zero);  // x - zeta^j y
    }
    for (unsigned j = 0; j < m; ++j) {
        Cyclotomic zj = Cyclotomic::zeta_pow(m, j);
        lines.emplace_back(zero, one, -zj);  // y - zeta^j z
    }
    for (unsigned j = 0; j < m; ++j) {
        Cyclotomic zj = Cyclotomic::zeta_pow(m, j);
        lines.emplace_back(one, zero, -zj);  // x - zeta^j z
    }
    return Arrangement(std::move(lines), "ceva:" + std::to_string(m));
}

namespace detail {

inline Cyclotomic gauss(long re, long im) {
    return Cyclotomic::from_coeffs(4, {Rational(re), Rational(im)});
}

inline LinForm4 int_form(long a, long b, long c, long d) {
    return {gauss(a, 0), gauss(b, 0), gauss(c, 0), gauss(d, 0)};
}

}  // namespace detail

// The 60 linear factors of the degree-60 invariant
//   xyzt (x^4-y^4)(x^4-z^4)(x^4-t^4)(y^4-z^4)(y^4-t^4)(z^4-t^4)
//   * the sixteen quadratic factors (A^2 -+ B^2),
// split over Q(i): u^4 - v^4 = (u-v)(u+v)(u-iv)(u+iv) and
// A^2 + B^2 = (A+iB)(A-iB). Order is fixed so downstream output is stable.
inline std::vector<LinForm4> g31_forms() {
    using detail::gauss;
    using detail::int_form;
    std::vector<LinForm4> fs;
    fs.reserve(60);
    // coordinate forms x, y, z, t
    fs.push_back(int_form(1, 0, 0, 0));
    fs.push_back(int_form(0, 1, 0, 0));
    fs.push_back(int_form(0, 0, 1, 0));
    fs.push_back(int_form(0, 0, 0, 1));
    // quartic differences
    const int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    for (const auto& uv : pairs) {
        for (const auto& [re, im] : std::vector<std::pair<long, long>>{{-1, 0}, {1, 0}, {0, -1}, {0, 1}}) {
            LinForm4 f = int_form(0, 0, 0, 0);
            f[uv[0]] = gauss(1, 0);
            f[uv[1]] = gauss(re, im);
            fs.push_back(std::move(f));
        }
    }
    // (x -+ y)^2 - (z -+ t)^2, rational split (A - B)(A + B)
    const int real_quads[4][4] = {{1, -1, 1, 1}, {1, -1, 1, -1}, {1, 1, 1, 1}, {1, 1, 1, -1}};
    for (const auto& q : real_quads) {
        // A = x + q1*y over slots (0,1), B = z + q3*t over slots (2,3)
        fs.push_back(int_form(q[0], q[1], -q[2], -q[3]));
        fs.push_back(int_form(q[0], q[1], q[2], q[3]));
    }
    // A^2 + B^2 factors, Gaussian split (A + iB)(A - iB)
    const int imag_quads[12][2][4] = {
        {{1, -1, 0, 0}, {0, 0, 1, 1}},   // (x-y)^2 + (z+t)^2
        {{1, -1, 0, 0}, {0, 0, 1, -1}},  // (x-y)^2 + (z-t)^2
        {{1, 1, 0, 0}, {0, 0, 1, 1}},    // (x+y)^2 + (z+t)^2
        {{1, 1, 0, 0}, {0, 0, 1, -1}},   // (x+y)^2 + (z-t)^2
        {{1, 0, -1, 0}, {0, 1, 0, 1}},   // (x-z)^2 + (y+t)^2
        {{1, 0, -1, 0}, {0, 1, 0, -1}},  // (x-z)^2 + (y-t)^2
        {{1, 0, 1, 0}, {0, 1, 0, 1}},    // (x+z)^2 + (y+t)^2
        {{1, 0, 1, 0}, {0, 1, 0, -1}},   // (x+z)^2 + (y-t)^2
        {{1, 0, 0, -1}, {0, 1, 1, 0}},   // (x-t)^2 + (y+z)^2
        {{1, 0, 0, -1}, {0, 1, -1, 0}},  // (x-t)^2 + (y-z)^2
        {{1, 0, 0, 1}, {0, 1, 1, 0}},    // (x+t)^2 + (y+z)^2
        {{1, 0, 0, 1}, {0, 1, -1, 0}},   // (x+t)^2 + (y-z)^2
    };
    for (const auto& q : imag_quads) {
        LinForm4 plus, minus;
        for (int j = 0; j < 4; ++j) {
            plus[j] = gauss(q[0][j], q[1][j]);
            minus[j] = gauss(q[0][j], -q[1][j]);
        }
        fs.push_back(std::move(plus));
        fs.push_back(std::move(minus));
    }
    return fs;
}

// The fixed generic section plane 2x + 5y - 9z - t = 0.
inline LinForm4 g31_section_plane() {
    return detail::int_form(2, 5, -9, -1);
}

std::vector<ProjPoint> g31_published_points();

// Section of the 60-plane reflection arrangement by the plane above; the
// result is a 60-line arrangement over Q(i) whose points of multiplicity 6
// match the published table below (verified at construction).
//
// The fixed plane is not flat-injective: it meets three rank-3 points of the
// plane arrangement, so the section carries three points of multiplicity 4
// (at (0:2:1), (2:-1:0), (2:1:1)) and 351 nodes / 317 triples instead of the
// generic 360 / 320. The multiplicity-6 structure is unaffected.
inline Arrangement gen_g31_section() {
    Arrangement A(restrict_forms(g31_forms(), g31_section_plane()), "g31-section");
    IntersectionLattice lat = intersection_lattice(A);
    std::vector<ProjPoint> sixes;
    for (int t : lat.t_points)
        if (lat.points[t].multiplicity == 6) sixes.push_back(lat.points[t].point);
    auto table = g31_published_points();
    if (sixes.size() != table.size()) throw error("g31 section: sextuple count mismatch");
    for (const ProjPoint& p : table) {
        auto idx = lat.find(p);
        if (!idx || lat.points[*idx].multiplicity != 6)
            throw error("g31 section: published point missing: " + p.str());
    }
    return A;
}

// The 30 points of multiplicity 6 of the section arrangement, in the index
// order all incidence tables refer to.
inline std::vector<ProjPoint> g31_published_points() {
    using detail::gauss;
    auto P = [](Cyclotomic a, Cyclotomic b, Cyclotomic c) {
        return ProjPoint(std::move(a), std::move(b), std::move(c));
    };
    std::vector<ProjPoint> pts;
    pts.reserve(30);
    pts.push_back(P(gauss(0, 0), gauss(0, 0), gauss(1, 0)));    // p1
    pts.push_back(P(gauss(0, 0), gauss(1, 0), gauss(0, 0)));    // p2
    pts.push_back(P(gauss(0, 0), gauss(9, 0), gauss(5, 0)));    // p3
    pts.push_back(P(gauss(1, 0), gauss(0, 0), gauss(0, 0)));    // p4
    pts.push_back(P(gauss(9, 0), gauss(0, 0), gauss(2, 0)));    // p5
    pts.push_back(P(gauss(5, 0), gauss(-2, 0), gauss(0, 0)));   // p6
    pts.push_back(P(gauss(10, 0), gauss(10, 0), gauss(7, 0)));  // p7
    pts.push_back(P(gauss(8, 0), gauss(8, 0), gauss(7, 0)));    // p8
    pts.push_back(P(gauss(-10, 0), gauss(10, 0), gauss(3, 0))); // p9
    pts.push_back(P(gauss(-8, 0), gauss(8, 0), gauss(3, 0)));   // p10
    pts.push_back(P(gauss(4, 0), gauss(7, 0), gauss(4, 0)));    // p11
    pts.push_back(P(gauss(6, 0), gauss(7, 0), gauss(6, 0)));    // p12
    pts.push_back(P(gauss(-4, 0), gauss(11, 0), gauss(4, 0)));  // p13
    pts.push_back(P(gauss(-6, 0), gauss(11, 0), gauss(6, 0)));  // p14
    pts.push_back(P(gauss(4, 0), gauss(1, 0), gauss(1, 0)));    // p15
    pts.push_back(P(gauss(14, 0), gauss(-1, 0), gauss(1, 0)));  // p16
    pts.push_back(P(gauss(4, 0), gauss(3, 0), gauss(3, 0)));    // p17
    pts.push_back(P(gauss(14, 0), gauss(-3, 0), gauss(3, 0)));  // p18
    pts.push_back(P(gauss(9, -1), gauss(1, 9), gauss(2, 5)));   // p19
    pts.push_back(P(gauss(9, 1), gauss(-1, 9), gauss(2, 5)));   // p20
    pts.push_back(P(gauss(9, -1), gauss(-1, -9), gauss(2, -5)));// p21
    pts.push_back(P(gauss(9, 1), gauss(1, -9), gauss(2, -5)));  // p22
    pts.push_back(P(gauss(5, 1), gauss(-2, 9), gauss(-1, 5)));  // p23
    pts.push_back(P(gauss(5, -1), gauss(-2, 9), gauss(1, 5)));  // p24
    pts.push_back(P(gauss(5, 1), gauss(-2, -9), gauss(1, -5))); // p25
    pts.push_back(P(gauss(5, -1), gauss(-2, -9), gauss(-1, -5)));// p26
    pts.push_back(P(gauss(-5, 9), gauss(2, -1), gauss(1, 2)));  // p27
    pts.push_back(P(gauss(5, -9), gauss(-2, -1), gauss(1, -2)));// p28
    pts.push_back(P(gauss(5, 9), gauss(-2, 1), gauss(1, 2)));   // p29
    pts.push_back(P(gauss(-5, -9), gauss(2, 1), gauss(1, -2))); // p30
    return pts;
}

// Lattice indices of the 30 sextuple points in the published order; fails
// loudly if the computed points do not match the table as a set.
inline std::vector<int> g31_sextuple_indices(const IntersectionLattice& lat) {
    std::vector<int> idx;
    for (const ProjPoint& p : g31_published_points()) {
        auto found = lat.find(p);
        if (!found || lat.points[*found].multiplicity != 6)
            throw error("published sextuple point not found in lattice: " + p.str());
        idx.push_back(*found);
    }
    std::vector<int> sixes;
    for (int t : lat.t_points)
        if (lat.points[t].multiplicity == 6) sixes.push_back(t);
    if (sixes.size() != idx.size())
        throw error("sextuple point count mismatch");
    return idx;
}

enum class HexagonVariant { on_conic, off_conic };

namespace detail {

inline ProjPoint conic_param(long t) {
    // (1 : t : t^2) lies on y^2 = xz.
    return ProjPoint(Cyclotomic(1), Cyclotomic(t), Cyclotomic(t * t));
}

inline std::vector<ProjLine> hexagon_lines(const std::vector<ProjPoint>& v) {
    const int edges[9][2] = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0},
                             {0, 3}, {1, 4}, {2, 5}};
    std::vector<ProjLine> lines;
    for (const auto& e : edges) lines.push_back(geom::join(v[e[0]], v[e[1]]));
    return lines;
}

// Every line must carry exactly 2 triple points and 4 nodes, and the triple
// points must be exactly the six vertices.
inline bool hexagon_profile_ok(const Arrangement& A, const std::vector<ProjPoint>& v) {
    IntersectionLattice lat = intersection_lattice(A);
    if (lat.t_points.size() != 6) return false;
    for (int t : lat.t_points) {
        if (lat.points[t].multiplicity != 3) return false;
        bool is_vertex = false;
        for (const ProjPoint& p : v)
            if (p == lat.points[t].point) is_vertex = true;
        if (!is_vertex) return false;
    }
    for (const PerLine& pl : lat.per_line)
        if (pl.k != 2 || pl.d != 4) return false;
    return true;
}

}  // namespace detail

inline std::vector<ProjPoint> hexagon_vertices(HexagonVariant variant) {
    // Vertex order matters: chords of y^2 = xz through parameters (a, b) have
    // line (ab : -(a+b) : 1), so three chords with equal parameter sums are
    // concurrent. The cyclic order below keeps all nine lines generic.
    std::vector<ProjPoint> v;
    for (long t : {0L, 1L, 3L, 2L, -2L, -1L}) v.push_back(detail::conic_param(t));
    if (variant == HexagonVariant::on_conic) return v;
    // Deterministic search for a replacement of the t = 3 vertex off the
    // conic that keeps the hexagon profile intact.
    for (long c : {8L, 10L, 7L, 11L, 13L}) {
        std::vector<ProjPoint> cand = v;
        cand[2] = ProjPoint(Cyclotomic(1), Cyclotomic(3), Cyclotomic(c));
        std::vector<geom::PointCondition> conds;
        for (const ProjPoint& p : cand) conds.push_back({p, 1});
        if (geom::curve_system(2, conds).dimension != 0) continue;
        try {
            Arrangement A(detail::hexagon_lines(cand), "probe");
            if (detail::hexagon_profile_ok(A, cand)) return cand;
        } catch (const error&) {
        }
    }
    throw error("no off-conic vertex candidate verified");
}

// Hexagon with three main diagonals: nine lines, each carrying exactly two
// triple points (the vertices) and four nodes. The on_conic variant puts the
// six vertices on y^2 = xz; off_conic moves one vertex off every conic
// through the other five.
inline Arrangement gen_hexagonal(HexagonVariant variant) {
    std::vector<ProjPoint> v = hexagon_vertices(variant);
    Arrangement A(detail::hexagon_lines(v),
                  variant == HexagonVariant::on_conic ? "hexagon:on-conic"
                                                      : "hexagon:off-conic");
    if (!detail::hexagon_profile_ok(A, v))
        throw error("hexagon incidence profile failed verification");
    std::vector<geom::PointCondition> conds;
    for (const ProjPoint& p : v) conds.push_back({p, 1});
    const std::size_t dim = geom::curve_system(2, conds).dimension;
    if (variant == HexagonVariant::on_conic ? dim == 0 : dim != 0)
        throw error("hexagon conic condition failed verification");
    return A;
}

// l pencils of c_i >= 2 lines through collinear points p_1..p_l, with every
// other intersection a node. The transversal carrying the p_i is NOT part of
// the arrangement. Lines are chosen greedily over increasing integer
// parameters, rejecting any choice that would create an extra multiple point.
inline Arrangement gen_near_pencils(const std::vector<int>& cs) {
    if (cs.size() < 2) throw invalid_parameter("need at least 2 pencils");
    for (int c : cs)
        if (c < 2) throw invalid_parameter("each pencil needs at least 2 lines");

    std::vector<ProjPoint> centers;
    for (std::size_t i = 0; i < cs.size(); ++i)
        centers.emplace_back(Cyclotomic(1), Cyclotomic(static_cast<long>(i)), Cyclotomic(0));

    std::vector<ProjLine> lines;
    std::vector<int> pencil_of;
    std::vector<ProjPoint> crossings;  // meets between lines of distinct pencils
    for (std::size_t i = 0; i < cs.size(); ++i) {
        long v = 0;
        for (int j = 0; j < cs[i]; ++j) {
            for (++v;; ++v) {
                ProjLine cand(Cyclotomic(-static_cast<long>(i)), Cyclotomic(1), Cyclotomic(v));
                bool ok = true;
                for (const ProjPoint& q : crossings)
                    if (geom::on_line(q, cand)) {
                        ok = false;
                        break;
                    }
                if (!ok) continue;
                for (std::size_t m = 0; m < lines.size(); ++m)
                    if (pencil_of[m] != static_cast<int>(i))
                        crossings.push_back(geom::meet(cand, lines[m]));
                lines.push_back(std::move(cand));
                pencil_of.push_back(static_cast<int>(i));
                break;
            }
        }
    }

    std::string label = "near-pencil:" + std::to_string(cs.size());
    bool uniform = true;
    for (int c : cs)
        if (c != cs[0]) uniform = false;
    if (uniform) label += ":" + std::to_string(cs[0]);
    Arrangement A(std::move(lines), std::move(label));

    IntersectionLattice lat = intersection_lattice(A);
    for (const LatticePoint& lp : lat.points) {
        bool is_center = false;
        for (std::size_t i = 0; i < centers.size(); ++i)
            if (lp.point == centers[i]) {
                is_center = true;
                if (lp.multiplicity != cs[i]) throw error("near-pencil center multiplicity wrong");
            }
        if (!is_center && lp.multiplicity != 2)
            throw error("near-pencil construction produced a stray multiple point");
    }
    return A;
}

// The collinear pencil centers of gen_near_pencils, in pencil order.
inline std::vector<ProjPoint> near_pencil_centers(std::size_t l) {
    std::vector<ProjPoint> centers;
    for (std::size_t i = 0; i < l; ++i)
        centers.emplace_back(Cyclotomic(1), Cyclotomic(static_cast<long>(i)), Cyclotomic(0));
    return centers;
}

}  // namespace arrcert::arr
