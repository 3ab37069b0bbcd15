#pragma once

#include <array>
#include <string>

#include "arrcert/cyclotomic.hpp"

namespace arrcert::geom {

namespace detail {

// All three coordinates moved into one field. Rationals embed; genuinely
// mixed orders are rejected by the scalar arithmetic itself.
inline unsigned common_order(const std::array<Cyclotomic, 3>& c) {
    unsigned o = 1;
    for (const Cyclotomic& x : c)
        if (x.order() != 1) {
            if (o != 1 && o != x.order())
                throw field_mismatch("coordinates from distinct fields");
            o = x.order();
        }
    return o;
}

inline std::array<Cyclotomic, 3> canonical_triple(std::array<Cyclotomic, 3> c,
                                                  const char* what) {
    unsigned o = common_order(c);
    for (Cyclotomic& x : c)
        if (x.order() != o) x = Cyclotomic::from_rational(x.rational_part(), o);
    int lead = -1;
    for (int i = 0; i < 3; ++i)
        if (!c[i].is_zero()) {
            lead = i;
            break;
        }
    if (lead < 0) throw degenerate_input(std::string(what) + ": zero coordinate vector");
    Cyclotomic inv = c[lead].inverse();
    for (int i = 0; i < 3; ++i) c[i] = c[i] * inv;
    return c;
}

}  // namespace detail

// Point of P^2 in canonical form: the first nonzero coordinate equals 1, so
// equality of points is coordinate-wise equality.
struct ProjPoint {
    std::array<Cyclotomic, 3> c;

    ProjPoint(Cyclotomic c0, Cyclotomic c1, Cyclotomic c2)
        : c(detail::canonical_triple({std::move(c0), std::move(c1), std::move(c2)}, "point")) {}

    friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.c == b.c; }
    friend bool operator!=(const ProjPoint& a, const ProjPoint& b) { return !(a == b); }
    friend bool operator<(const ProjPoint& a, const ProjPoint& b) {
        for (int i = 0; i < 3; ++i) {
            if (a.c[i] < b.c[i]) return true;
            if (b.c[i] < a.c[i]) return false;
        }
        return false;
    }

    std::string str() const {
        return "(" + c[0].str() + " : " + c[1].str() + " : " + c[2].str() + ")";
    }
};

// Line of P^2 in dual coordinates, canonicalized the same way.
struct ProjLine {
    std::array<Cyclotomic, 3> c;

    ProjLine(Cyclotomic c0, Cyclotomic c1, Cyclotomic c2)
        : c(detail::canonical_triple({std::move(c0), std::move(c1), std::move(c2)}, "line")) {}

    friend bool operator==(const ProjLine& a, const ProjLine& b) { return a.c == b.c; }
    friend bool operator!=(const ProjLine& a, const ProjLine& b) { return !(a == b); }
    friend bool operator<(const ProjLine& a, const ProjLine& b) {
        for (int i = 0; i < 3; ++i) {
            if (a.c[i] < b.c[i]) return true;
            if (b.c[i] < a.c[i]) return false;
        }
        return false;
    }

    std::string str() const {
        return "[" + c[0].str() + " : " + c[1].str() + " : " + c[2].str() + "]";
    }
};

inline std::array<Cyclotomic, 3> cross(const std::array<Cyclotomic, 3>& a,
                                       const std::array<Cyclotomic, 3>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// The unique line through two distinct points.
inline ProjLine join(const ProjPoint& p, const ProjPoint& q) {
    if (p == q) throw degenerate_input("join of equal points");
    auto c = cross(p.c, q.c);
    return ProjLine(std::move(c[0]), std::move(c[1]), std::move(c[2]));
}

// The unique common point of two distinct lines.
inline ProjPoint meet(const ProjLine& l, const ProjLine& m) {
    if (l == m) throw degenerate_input("meet of equal lines");
    auto c = cross(l.c, m.c);
    return ProjPoint(std::move(c[0]), std::move(c[1]), std::move(c[2]));
}

inline bool on_line(const ProjPoint& p, const ProjLine& l) {
    Cyclotomic s = l.c[0] * p.c[0] + l.c[1] * p.c[1] + l.c[2] * p.c[2];
    return s.is_zero();
}

inline Cyclotomic det3(const std::array<Cyclotomic, 3>& a, const std::array<Cyclotomic, 3>& b,
                       const std::array<Cyclotomic, 3>& c) {
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
           a[2] * (b[0] * c[1] - b[1] * c[0]);
}

inline bool collinear(const ProjPoint& p, const ProjPoint& q, const ProjPoint& r) {
    if (p == q || p == r || q == r) throw degenerate_input("collinearity of repeated points");
    return det3(p.c, q.c, r.c).is_zero();
}

}  // namespace arrcert::geom
