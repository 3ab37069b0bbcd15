#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "arrcert/linear_system.hpp"
#include "arrcert/projective.hpp"

namespace arrcert::arr {

using geom::Cyclotomic;
using geom::ProjLine;
using geom::ProjPoint;

// A finite set of distinct lines in P^2 over one cyclotomic field.
struct Arrangement {
    unsigned field_order = 1;
    std::vector<ProjLine> lines;
    std::string label;

    Arrangement(std::vector<ProjLine> ls, std::string lbl) : lines(std::move(ls)), label(std::move(lbl)) {
        if (lines.size() < 3) throw invalid_parameter("arrangement needs at least 3 lines");
        for (const ProjLine& l : lines)
            for (const Cyclotomic& x : l.c)
                if (x.order() != 1) {
                    if (field_order != 1 && field_order != x.order())
                        throw field_mismatch("arrangement lines from distinct fields");
                    field_order = x.order();
                }
        if (field_order != 1)
            for (ProjLine& l : lines)
                l = ProjLine(embed(l.c[0]), embed(l.c[1]), embed(l.c[2]));
        for (std::size_t i = 0; i < lines.size(); ++i)
            for (std::size_t j = i + 1; j < lines.size(); ++j)
                if (lines[i] == lines[j])
                    throw degenerate_input("repeated line (indices " + std::to_string(i) +
                                           ", " + std::to_string(j) + ")");
    }

    std::size_t size() const { return lines.size(); }

  private:
    Cyclotomic embed(const Cyclotomic& x) const {
        return x.order() == field_order ? x
                                        : Cyclotomic::from_rational(x.rational_part(), field_order);
    }
};

// An intersection point with its incident line indices.
struct LatticePoint {
    ProjPoint point;
    std::vector<int> incident;  // ascending
    int multiplicity = 0;       // n_p = incident.size() >= 2
};

// Per-line statistics: k = # points of multiplicity >= 3 on the line,
// d = # nodes on the line.
struct PerLine {
    int k = 0;
    int d = 0;
    std::vector<int> points;           // lattice indices on this line, ascending
    std::vector<int> multiple_points;  // the multiplicity >= 3 subset
};

struct LatticeChecks {
    bool pair_identity = false;      // sum_p C(n_p,2) = C(n,2)
    bool per_line_identity = false;  // sum_{p in H_i} (n_p - 1) = n - 1 for all i
};

struct IntersectionLattice {
    std::vector<LatticePoint> points;  // in the deterministic point order
    std::vector<PerLine> per_line;
    std::vector<int> t_points;  // indices of points with multiplicity >= 3
    int node_count = 0;
    LatticeChecks checks;

    std::optional<int> find(const ProjPoint& p) const {
        auto it = std::lower_bound(points.begin(), points.end(), p,
                                   [](const LatticePoint& lp, const ProjPoint& q) {
                                       return lp.point < q;
                                   });
        if (it == points.end() || !(it->point == p)) return std::nullopt;
        return static_cast<int>(it - points.begin());
    }
};

// All pairwise meets grouped by canonical point; the two counting identities
// are recomputed and reported rather than assumed.
inline IntersectionLattice intersection_lattice(const Arrangement& A) {
    const int n = static_cast<int>(A.size());
    std::map<ProjPoint, std::set<int>> groups;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            ProjPoint p = geom::meet(A.lines[i], A.lines[j]);
            auto& g = groups[p];
            g.insert(i);
            g.insert(j);
        }

    IntersectionLattice lat;
    lat.points.reserve(groups.size());
    for (auto& [p, inc] : groups) {
        std::vector<int> incident(inc.begin(), inc.end());
        const int mult = static_cast<int>(incident.size());
        lat.points.push_back(LatticePoint{p, std::move(incident), mult});
    }

    lat.per_line.assign(n, PerLine{});
    long pair_sum = 0;
    for (int idx = 0; idx < static_cast<int>(lat.points.size()); ++idx) {
        const LatticePoint& lp = lat.points[idx];
        const long np = lp.multiplicity;
        pair_sum += np * (np - 1) / 2;
        if (np >= 3)
            lat.t_points.push_back(idx);
        else
            ++lat.node_count;
        for (int i : lp.incident) {
            lat.per_line[i].points.push_back(idx);
            if (np >= 3) {
                ++lat.per_line[i].k;
                lat.per_line[i].multiple_points.push_back(idx);
            } else {
                ++lat.per_line[i].d;
            }
        }
    }

    lat.checks.pair_identity = pair_sum == static_cast<long>(n) * (n - 1) / 2;
    lat.checks.per_line_identity = true;
    for (int i = 0; i < n; ++i) {
        long s = 0;
        for (int idx : lat.per_line[i].points) s += lat.points[idx].multiplicity - 1;
        if (s != n - 1) lat.checks.per_line_identity = false;
    }
    return lat;
}

// True when all lines pass through one common point.
inline bool is_pencil(const Arrangement& A) {
    ProjPoint p = geom::meet(A.lines[0], A.lines[1]);
    for (std::size_t i = 2; i < A.size(); ++i)
        if (!geom::on_line(p, A.lines[i])) return false;
    return true;
}

// Linear form in four variables, used as a plane of P^3.
using LinForm4 = std::array<Cyclotomic, 4>;

namespace detail {

inline bool proportional4(const LinForm4& a, const LinForm4& b) {
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (!(a[i] * b[j] - a[j] * b[i]).is_zero()) return false;
    return true;
}

// Canonical basis of the row space of a 2x4 matrix, flattened. Two pairs of
// planes span the same pencil (meet in the same line of P^3) exactly when
// their keys agree.
inline std::vector<Cyclotomic> flat_key(const LinForm4& a, const LinForm4& b) {
    std::array<std::vector<Cyclotomic>, 2> rows = {
        std::vector<Cyclotomic>(a.begin(), a.end()),
        std::vector<Cyclotomic>(b.begin(), b.end())};
    int r = 0;
    for (int col = 0; col < 4 && r < 2; ++col) {
        int sel = -1;
        for (int i = r; i < 2; ++i)
            if (!rows[i][col].is_zero()) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        std::swap(rows[sel], rows[r]);
        Cyclotomic inv = rows[r][col].inverse();
        for (int c = 0; c < 4; ++c) rows[r][c] = rows[r][c] * inv;
        for (int i = 0; i < 2; ++i) {
            if (i == r || rows[i][col].is_zero()) continue;
            Cyclotomic f = rows[i][col];
            for (int c = 0; c < 4; ++c) rows[i][c] -= f * rows[r][c];
        }
        ++r;
    }
    std::vector<Cyclotomic> key = rows[0];
    key.insert(key.end(), rows[1].begin(), rows[1].end());
    return key;
}

}  // namespace detail

// Restriction of forms to the plane, without genericity checks. The variable
// eliminated by the plane equation is the last one with a nonzero plane
// coefficient unless specified.
inline std::vector<ProjLine> restrict_forms(const std::vector<LinForm4>& forms,
                                            const LinForm4& plane,
                                            std::optional<int> eliminate = {}) {
    int e = -1;
    if (eliminate) {
        e = *eliminate;
        if (e < 0 || e > 3 || plane[e].is_zero())
            throw invalid_parameter("cannot eliminate a variable with zero plane coefficient");
    } else {
        for (int i = 3; i >= 0; --i)
            if (!plane[i].is_zero()) {
                e = i;
                break;
            }
        if (e < 0) throw invalid_parameter("zero plane");
    }
    for (std::size_t i = 0; i < forms.size(); ++i) {
        if (detail::proportional4(forms[i], plane))
            throw invalid_parameter("plane is proportional to form " + std::to_string(i));
        for (std::size_t j = i + 1; j < forms.size(); ++j)
            if (detail::proportional4(forms[i], forms[j]))
                throw degenerate_input("proportional forms " + std::to_string(i) + ", " +
                                       std::to_string(j));
    }
    std::vector<ProjLine> lines;
    lines.reserve(forms.size());
    for (const LinForm4& f : forms) {
        std::array<Cyclotomic, 3> g;
        int k = 0;
        for (int j = 0; j < 4; ++j) {
            if (j == e) continue;
            g[k++] = f[j] * plane[e] - f[e] * plane[j];
        }
        lines.emplace_back(std::move(g[0]), std::move(g[1]), std::move(g[2]));
    }
    return lines;
}

// Section of a plane arrangement in P^3 by a plane, with genericity verified:
// distinct rank-2 flats of the plane arrangement must restrict to distinct
// lattice points.
inline Arrangement restrict_to_plane(const std::vector<LinForm4>& forms, const LinForm4& plane,
                                     std::string label, std::optional<int> eliminate = {}) {
    if (forms.size() < 3) throw invalid_parameter("need at least 3 forms");
    Arrangement A(restrict_forms(forms, plane, eliminate), std::move(label));

    // The flat partition of the line pairs refines the point partition, so
    // equal class counts prove the partitions coincide.
    std::set<std::vector<Cyclotomic>> flats;
    for (std::size_t i = 0; i < forms.size(); ++i)
        for (std::size_t j = i + 1; j < forms.size(); ++j)
            flats.insert(detail::flat_key(forms[i], forms[j]));
    IntersectionLattice lat = intersection_lattice(A);
    if (flats.size() != lat.points.size())
        throw genericity_failure("section plane collapses " +
                                 std::to_string(flats.size()) + " flats onto " +
                                 std::to_string(lat.points.size()) + " points");
    return A;
}

}  // namespace arrcert::arr
