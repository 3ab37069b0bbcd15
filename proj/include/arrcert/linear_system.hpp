#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "arrcert/matrix.hpp"
#include "arrcert/projective.hpp"

namespace arrcert::geom {

// Exponent triples (a, b, c) with a + b + c = d, in the fixed lexicographic
// order that all curve coefficient vectors in the library use. For d = 2 this
// is x^2, xy, xz, y^2, yz, z^2.
inline std::vector<std::array<unsigned, 3>> monomials(unsigned d) {
    std::vector<std::array<unsigned, 3>> out;
    out.reserve((d + 1) * (d + 2) / 2);
    for (unsigned a = d + 1; a-- > 0;)
        for (unsigned b = d - a + 1; b-- > 0;) out.push_back({a, b, d - a - b});
    return out;
}

using PointCondition = std::pair<ProjPoint, unsigned>;  // point, multiplicity >= 1

// Curves of degree d through a set of points with multiplicities. dimension
// is the dimension of the vector space of degree-d forms satisfying the
// conditions; 0 means no nonzero curve exists.
struct LinearSystem {
    unsigned degree = 0;
    std::vector<PointCondition> conditions;
    std::size_t dimension = 0;
    std::size_t rank = 0;
    unsigned field_order = 1;
    // Basis of the solution space, one coefficient vector per dimension, in
    // the monomial order above.
    std::vector<std::vector<Cyclotomic>> basis;
};

namespace detail {

inline unsigned common_order_points(const std::vector<PointCondition>& conds) {
    unsigned o = 1;
    for (const auto& [p, m] : conds)
        for (const Cyclotomic& x : p.c)
            if (x.order() != 1) {
                if (o != 1 && o != x.order())
                    throw field_mismatch("condition points from distinct fields");
                o = x.order();
            }
    return o;
}

// Coordinate powers up to d for one point, embedded in the target field.
inline std::array<std::vector<Cyclotomic>, 3> power_table(const ProjPoint& p, unsigned d,
                                                          unsigned order) {
    std::array<std::vector<Cyclotomic>, 3> pw;
    for (int i = 0; i < 3; ++i) {
        pw[i].reserve(d + 1);
        pw[i].push_back(Cyclotomic::one(order));
        Cyclotomic base = p.c[i].order() == order
                              ? p.c[i]
                              : Cyclotomic::from_rational(p.c[i].rational_part(), order);
        for (unsigned e = 1; e <= d; ++e) pw[i].push_back(pw[i].back() * base);
    }
    return pw;
}

inline Integer falling(unsigned n, unsigned k) {
    Integer r = 1;
    for (unsigned i = 0; i < k; ++i) r *= static_cast<long>(n - i);
    return r;
}

}  // namespace detail

// One condition row per partial derivative of order exactly m - 1: a point of
// multiplicity >= m on a degree-d curve is equivalent to the vanishing of all
// those partials (Euler's relation recovers the lower orders in char 0).
inline std::vector<std::vector<Cyclotomic>> condition_rows(const ProjPoint& p, unsigned mult,
                                                           unsigned d, unsigned order) {
    const auto monos = monomials(d);
    const auto pw = detail::power_table(p, d, order);
    std::vector<std::vector<Cyclotomic>> rows;
    const unsigned t = mult - 1;  // derivative order
    for (unsigned da = t + 1; da-- > 0;)
        for (unsigned db = t - da + 1; db-- > 0;) {
            const unsigned dc = t - da - db;
            std::vector<Cyclotomic> row;
            row.reserve(monos.size());
            for (const auto& [a, b, c] : monos) {
                if (da > a || db > b || dc > c) {
                    row.push_back(Cyclotomic::zero(order));
                    continue;
                }
                Integer coeff = detail::falling(a, da) * detail::falling(b, db) *
                                detail::falling(c, dc);
                Cyclotomic v = Cyclotomic::from_rational(Rational(coeff), order);
                v *= pw[0][a - da];
                v *= pw[1][b - db];
                v *= pw[2][c - dc];
                row.push_back(std::move(v));
            }
            rows.push_back(std::move(row));
        }
    return rows;
}

inline LinearSystem curve_system(unsigned d, const std::vector<PointCondition>& conditions) {
    if (d < 1) throw invalid_parameter("curve degree must be >= 1");
    for (std::size_t i = 0; i < conditions.size(); ++i) {
        if (conditions[i].second < 1) throw invalid_parameter("multiplicity must be >= 1");
        for (std::size_t j = i + 1; j < conditions.size(); ++j)
            if (conditions[i].first == conditions[j].first)
                throw degenerate_input("repeated condition point");
    }
    const unsigned order = detail::common_order_points(conditions);
    const std::size_t ncols = (d + 1) * (d + 2) / 2;

    std::vector<std::vector<Cyclotomic>> rows;
    for (const auto& [p, m] : conditions) {
        auto r = condition_rows(p, m, d, order);
        for (auto& row : r) rows.push_back(std::move(row));
    }
    Mat m(rows.size(), ncols, order);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < ncols; ++c) m.at(r, c) = rows[r][c];

    LinearSystem sys;
    sys.degree = d;
    sys.conditions = conditions;
    sys.field_order = order;
    sys.basis = nullspace(std::move(m), order);
    sys.dimension = sys.basis.size();
    sys.rank = ncols - sys.dimension;
    return sys;
}

// Conic through five points: unique when the 5x6 evaluation matrix has rank
// 5. Lower rank is reported with the system dimension instead of a guess.
struct ConicResult {
    bool unique = false;
    std::vector<Cyclotomic> conic;  // canonical: first nonzero coefficient 1
    std::size_t dimension = 0;      // of the full system, = 6 - rank
};

inline std::vector<Cyclotomic> canonical_coeffs(std::vector<Cyclotomic> v) {
    std::size_t lead = 0;
    while (lead < v.size() && v[lead].is_zero()) ++lead;
    if (lead == v.size()) throw degenerate_input("zero coefficient vector");
    Cyclotomic inv = v[lead].inverse();
    for (Cyclotomic& x : v) x = x * inv;
    return v;
}

inline std::vector<Cyclotomic> conic_row(const ProjPoint& p, unsigned order) {
    const auto pw = detail::power_table(p, 2, order);
    return {pw[0][2],
            pw[0][1] * pw[1][1],
            pw[0][1] * pw[2][1],
            pw[1][2],
            pw[1][1] * pw[2][1],
            pw[2][2]};
}

inline ConicResult conic_through_five(const std::vector<ProjPoint>& pts) {
    if (pts.size() != 5) throw invalid_parameter("conic_through_five needs 5 points");
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = i + 1; j < 5; ++j)
            if (pts[i] == pts[j]) throw degenerate_input("repeated point");
    unsigned order = 1;
    for (const ProjPoint& p : pts)
        for (const Cyclotomic& x : p.c)
            if (x.order() != 1) order = x.order();
    Eliminator elim(6, order);
    for (const ProjPoint& p : pts) elim.add_row(conic_row(p, order));
    ConicResult res;
    res.dimension = 6 - elim.rank();
    if (elim.rank() == 5) {
        res.unique = true;
        res.conic = canonical_coeffs(elim.null_vector());
    }
    return res;
}

inline Cyclotomic eval_conic(const std::vector<Cyclotomic>& conic, const ProjPoint& p,
                             unsigned order) {
    auto row = conic_row(p, order);
    Cyclotomic s = Cyclotomic::zero(order);
    for (int i = 0; i < 6; ++i) s += conic[i] * row[i];
    return s;
}

}  // namespace arrcert::geom
