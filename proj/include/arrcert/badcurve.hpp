#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <thread>
#include <vector>

#include "arrcert/linear_system.hpp"
#include "arrcert/localsys.hpp"

namespace arrcert::badcurve {

using arr::IntersectionLattice;
using geom::Cyclotomic;
using geom::ProjPoint;
using geom::Rational;
using lsys::Partition;

// Candidate multiplicity profile of a curve whose strict transform avoids
// the divisor: degree d, multiplicity m_p at each T_{=1} point, constrained
// by per-line sums, the global incidence identity, and the genus bounds.
struct MultiplicityVector {
    unsigned degree = 0;
    std::vector<unsigned> mults;  // parallel to the partition's eq1 list

    long sum() const {
        long s = 0;
        for (unsigned m : mults) s += m;
        return s;
    }
};

namespace detail {

struct EnumContext {
    const IntersectionLattice* lat;
    std::vector<int> eq1;                      // absolute lattice indices
    std::vector<std::vector<int>> lines_of;    // eq1 position -> incident lines
    std::vector<std::vector<int>> points_on;   // line -> eq1 positions
};

inline EnumContext make_context(const IntersectionLattice& lat, const Partition& part) {
    EnumContext ctx;
    ctx.lat = &lat;
    ctx.eq1 = part.eq1;
    std::map<int, int> pos;
    for (std::size_t i = 0; i < ctx.eq1.size(); ++i) pos[ctx.eq1[i]] = static_cast<int>(i);
    ctx.lines_of.resize(ctx.eq1.size());
    ctx.points_on.resize(lat.per_line.size());
    for (std::size_t i = 0; i < ctx.eq1.size(); ++i) {
        for (int line : lat.points[ctx.eq1[i]].incident) {
            ctx.lines_of[i].push_back(line);
            ctx.points_on[line].push_back(static_cast<int>(i));
        }
    }
    return ctx;
}

}  // namespace detail

// Enumerates assignments satisfying the per-line equalities with the Milnor
// genus prune (d-1)(d-2) >= sum (m_p - 1)^2 applied on the fly; the visitor
// receives each vector together with the verdict of the stronger delta prune
// (d-1)(d-2) >= sum m_p (m_p - 1). Deterministic order (points in canonical
// order, multiplicities descending from the largest admissible).
inline void enumerate_with_prunes(const IntersectionLattice& lat, const Partition& part,
                                  unsigned d,
                                  const std::function<bool(const MultiplicityVector&, bool)>& visit) {
    const auto ctx = detail::make_context(lat, part);
    const std::size_t npoints = ctx.eq1.size();
    // Any line without a T_{=1} point forces an empty per-line sum = d > 0.
    for (const auto& pts : ctx.points_on)
        if (pts.empty()) return;
    const long genus_bound = static_cast<long>(d - 1) * (static_cast<long>(d) - 2);

    std::vector<long> remaining(lat.per_line.size(), d);
    std::vector<int> unassigned(lat.per_line.size(), 0);
    for (std::size_t line = 0; line < ctx.points_on.size(); ++line)
        unassigned[line] = static_cast<int>(ctx.points_on[line].size());

    MultiplicityVector vec;
    vec.degree = d;
    vec.mults.assign(npoints, 0);
    long milnor_sum = 0;
    long delta_sum = 0;
    bool keep_going = true;

    std::function<void(std::size_t)> rec = [&](std::size_t pos) {
        if (!keep_going) return;
        if (pos == npoints) {
            keep_going = visit(vec, delta_sum <= genus_bound);
            return;
        }
        long cap = d;
        for (int line : ctx.lines_of[pos]) cap = std::min(cap, remaining[line]);
        for (long m = cap; m >= 0; --m) {
            const long milnor_add = m >= 1 ? (m - 1) * (m - 1) : 0;
            const long delta_add = m * (m - 1);
            if (milnor_sum + milnor_add > genus_bound) continue;
            bool feasible = true;
            for (int line : ctx.lines_of[pos]) {
                remaining[line] -= m;
                --unassigned[line];
                if (remaining[line] < 0 ||
                    (unassigned[line] == 0 && remaining[line] != 0) ||
                    remaining[line] > static_cast<long>(d) * unassigned[line])
                    feasible = false;
            }
            if (feasible) {
                vec.mults[pos] = static_cast<unsigned>(m);
                milnor_sum += milnor_add;
                delta_sum += delta_add;
                rec(pos + 1);
                milnor_sum -= milnor_add;
                delta_sum -= delta_add;
                vec.mults[pos] = 0;
            }
            for (int line : ctx.lines_of[pos]) {
                remaining[line] += m;
                ++unassigned[line];
            }
            if (!keep_going) return;
        }
    };
    rec(0);
}

// All vectors passing every constraint, including both genus prunes.
inline std::vector<MultiplicityVector> enumerate_mult_vectors(const IntersectionLattice& lat,
                                                              const Partition& part,
                                                              unsigned d) {
    if (d < 1) throw invalid_parameter("degree must be >= 1");
    if (!part.strict) throw hypothesis_violation("requires a strict local system");
    std::vector<MultiplicityVector> out;
    enumerate_with_prunes(lat, part, d, [&](const MultiplicityVector& v, bool delta_ok) {
        if (delta_ok) out.push_back(v);
        return true;
    });
    // The global identity sum n_p m_p = n d follows from the per-line sums;
    // verify rather than assume.
    const long n = static_cast<long>(lat.per_line.size());
    for (const auto& v : out) {
        long s = 0;
        for (std::size_t i = 0; i < v.mults.size(); ++i)
            s += static_cast<long>(lat.points[part.eq1[i]].multiplicity) * v.mults[i];
        if (s != n * static_cast<long>(d)) throw error("internal: global identity violated");
    }
    return out;
}

// Degree bound from the two-case analysis available for the uniform
// profiles: c = 1 (a single T_{=1} point per line forces lines) and c = 3
// with all T_{=1} points of one multiplicity nu.
struct DegreeBound {
    unsigned d_max = 0;
    unsigned c = 0;   // T_{=1} points per line
    unsigned nu = 0;  // common multiplicity
    std::vector<unsigned> case1_degrees;  // full support
    std::vector<unsigned> case2_degrees;  // some T_{=1} point off the curve
};

inline std::optional<DegreeBound> auto_degree_bound(const IntersectionLattice& lat,
                                                    const Partition& part) {
    DegreeBound b;
    if (part.eq1.empty()) {
        // No T_{=1} point at all: a curve avoiding the divisor would have to
        // meet every line inside the empty set.
        return DegreeBound{0, 0, 0, {}, {}};
    }
    b.nu = lat.points[part.eq1.front()].multiplicity;
    for (int p : part.eq1)
        if (lat.points[p].multiplicity != static_cast<int>(b.nu)) return std::nullopt;
    int c = -1;
    for (std::size_t line = 0; line < lat.per_line.size(); ++line) {
        int cnt = 0;
        for (int idx : lat.per_line[line].multiple_points)
            if (part.in_eq1(idx)) ++cnt;
        if (c < 0) c = cnt;
        if (cnt != c) return std::nullopt;
    }
    b.c = static_cast<unsigned>(c);
    if (b.c == 1) {
        // A line meeting the curve in a single point of T_{=1} forces the
        // curve to be a line.
        b.d_max = 1;
        return b;
    }
    if (b.c != 3) return std::nullopt;

    const long n = static_cast<long>(lat.per_line.size());
    const long T = static_cast<long>(part.eq1.size());
    const long nu = b.nu;
    auto genus = [](long d) { return (d - 1) * (d - 2); };
    // Case 1 (all T_{=1} points on the curve): s = n d / nu, s >= |T|, and
    // genus(d) >= s^2/|T| - 2 s + |T| by Cauchy-Schwarz.
    auto case1 = [&](long d) {
        if ((n * d) % nu != 0) return false;
        const long s = n * d / nu;
        if (s < T) return false;
        return Rational(genus(d)) >= Rational(s * s, T) - Rational(2 * s) + Rational(T);
    };
    // Case 2 (some T_{=1} point off the curve): the nu lines through it pair
    // the curve's multiplicities, d >= 2, and genus(d) >= nu d^2/2 - 2 nu d
    // + 2 nu by the paired Cauchy-Schwarz.
    auto case2 = [&](long d) {
        if (d < 2) return false;
        return Rational(genus(d)) >= Rational(nu * d * d, 2) - Rational(2 * nu * d) +
                                         Rational(2 * nu);
    };
    // Both right-hand sides grow quadratically; without a positive gap the
    // inequalities never close and no bound is proven. With negative leading
    // coefficients each Q is decreasing past its vertex, so the scan stops
    // at the first failing integer beyond both vertices.
    // Q1(d) = (1 - n/(3 nu)) d^2 + (2n/nu - 3) d + (2 - T)
    // Q2(d) = (1 - nu/2)    d^2 + (2 nu - 3) d + (2 - 2 nu)
    const Rational lead1 = Rational(1) - Rational(n, 3 * nu);
    const Rational lead2 = Rational(1) - Rational(nu, 2);
    if (lead1 >= 0 || lead2 >= 0) return std::nullopt;
    const Rational vertex1 = -(Rational(2 * n, nu) - 3) / (2 * lead1);
    const Rational vertex2 = -(Rational(2 * nu) - 3) / (2 * lead2);
    const Rational vmax = std::max(std::max(vertex1, vertex2), Rational(1));
    auto q1_nonneg = [&](long d) {
        return Rational(genus(d)) >= Rational(n * d, nu) * Rational(n * d, nu) / Rational(T) -
                                          Rational(2 * n * d, nu) + Rational(T);
    };
    b.d_max = 1;  // degree 1 is always a priori possible
    for (long d = 1;; ++d) {
        if (case1(d)) {
            b.case1_degrees.push_back(static_cast<unsigned>(d));
            b.d_max = std::max<unsigned>(b.d_max, static_cast<unsigned>(d));
        }
        if (case2(d)) {
            b.case2_degrees.push_back(static_cast<unsigned>(d));
            b.d_max = std::max<unsigned>(b.d_max, static_cast<unsigned>(d));
        }
        if (!q1_nonneg(d) && !case2(d) && Rational(d) > vmax) break;
    }
    return b;
}

// Existence test for a curve with the vector's support and multiplicities;
// stops as soon as the rank fills up. Returns the dimension, and the basis
// when the dimension is positive.
inline std::size_t vector_system_dimension(const IntersectionLattice& lat,
                                           const Partition& part,
                                           const MultiplicityVector& v, unsigned field_order,
                                           std::vector<std::vector<Cyclotomic>>* basis_out) {
    const std::size_t ncols = (v.degree + 1) * (v.degree + 2) / 2;
    geom::Eliminator elim(ncols, field_order);
    std::vector<geom::PointCondition> conds;
    for (std::size_t i = 0; i < v.mults.size(); ++i) {
        if (v.mults[i] == 0) continue;
        conds.push_back({lat.points[part.eq1[i]].point, v.mults[i]});
        auto rows = geom::condition_rows(lat.points[part.eq1[i]].point, v.mults[i], v.degree,
                                         field_order);
        for (auto& r : rows) {
            elim.add_row(std::move(r));
            if (elim.rank() == ncols) return 0;
        }
    }
    const std::size_t dim = ncols - elim.rank();
    if (dim > 0 && basis_out) {
        auto sys = geom::curve_system(v.degree, conds);
        *basis_out = sys.basis;
    }
    return dim;
}

enum class DegreeStatus { excluded_no_vector, excluded_empty_system, candidate };

struct VectorEntry {
    std::map<int, unsigned> mults;  // absolute lattice index -> multiplicity
    bool delta_pruned = false;
    long delta_sum = 0;     // sum m_p (m_p - 1)
    long genus_bound = 0;   // (d-1)(d-2)
    std::size_t system_dimension = 0;
    std::vector<std::vector<Cyclotomic>> basis;  // attached to candidates
};

struct DegreeEntry {
    unsigned d = 0;
    DegreeStatus status = DegreeStatus::excluded_no_vector;
    std::size_t vectors_total = 0;        // passing the Milnor prune
    std::size_t vectors_feasible = 0;     // passing both prunes
    std::size_t vectors_candidates = 0;   // feasible with nonzero system
    std::size_t entries_capped_at = 0;    // 0 when every vector is listed
    std::vector<VectorEntry> entries;
};

struct DegreePolicy {
    std::optional<unsigned> user_d_max;  // fallback when no bound is proven
};

struct CurveExclusionReport {
    bool bound_proven = false;
    unsigned d_max = 0;
    std::optional<DegreeBound> bound;
    std::vector<DegreeEntry> degrees;

    bool complete() const {
        for (const auto& e : degrees)
            if (e.status == DegreeStatus::candidate) return false;
        return true;
    }
};

// Runs the enumeration for every degree up to the proven (or user) bound and
// tests each vector's linear system. A vector killed by the delta prune is
// infeasible for an irreducible curve regardless of its system; its system
// is still computed (within the listing cap) so the evidence shows both.
inline CurveExclusionReport exclude_bad_curves(const IntersectionLattice& lat,
                                               const Partition& part,
                                               const DegreePolicy& policy,
                                               std::size_t listing_cap = 64) {
    if (!part.strict) throw hypothesis_violation("requires a strict local system");
    CurveExclusionReport rep;
    rep.bound = auto_degree_bound(lat, part);
    if (rep.bound) {
        rep.bound_proven = true;
        rep.d_max = rep.bound->d_max;
    } else if (policy.user_d_max) {
        rep.d_max = *policy.user_d_max;
    } else {
        throw invalid_parameter("no proven degree bound for this profile; supply d_max");
    }
    unsigned field_order = 1;
    for (const auto& lp : lat.points)
        for (const auto& x : lp.point.c)
            if (x.order() != 1) field_order = x.order();

    for (unsigned d = 1; d <= rep.d_max; ++d) {
        DegreeEntry entry;
        entry.d = d;
        const long genus_bound = static_cast<long>(d - 1) * (static_cast<long>(d) - 2);
        enumerate_with_prunes(lat, part, d, [&](const MultiplicityVector& v, bool delta_ok) {
            ++entry.vectors_total;
            if (delta_ok) ++entry.vectors_feasible;
            const bool listed = entry.entries.size() < listing_cap;
            std::size_t dim = 0;
            std::vector<std::vector<Cyclotomic>> basis;
            if (delta_ok || listed)
                dim = vector_system_dimension(lat, part, v, field_order,
                                              delta_ok || listed ? &basis : nullptr);
            if (delta_ok && dim > 0) ++entry.vectors_candidates;
            if (listed) {
                VectorEntry ve;
                for (std::size_t i = 0; i < v.mults.size(); ++i)
                    if (v.mults[i] > 0) ve.mults[part.eq1[i]] = v.mults[i];
                ve.delta_pruned = !delta_ok;
                long ds = 0;
                for (unsigned m : v.mults) ds += static_cast<long>(m) * (m - 1);
                ve.delta_sum = ds;
                ve.genus_bound = genus_bound;
                ve.system_dimension = dim;
                if (delta_ok && dim > 0) ve.basis = std::move(basis);
                entry.entries.push_back(std::move(ve));
            } else {
                entry.entries_capped_at = listing_cap;
            }
            return true;
        });
        if (entry.vectors_feasible == 0)
            entry.status = DegreeStatus::excluded_no_vector;
        else if (entry.vectors_candidates == 0)
            entry.status = DegreeStatus::excluded_empty_system;
        else
            entry.status = DegreeStatus::candidate;
        rep.degrees.push_back(std::move(entry));
    }
    return rep;
}

// All k-subsets of the points lying on one line; k = 3 by exhaustive
// determinant tests, k = 4 by extending collinear triples.
inline std::vector<std::vector<int>> collinear_subsets(const std::vector<ProjPoint>& pts,
                                                       int k) {
    if (k != 3 && k != 4) throw invalid_parameter("collinear subsets support k = 3 or 4");
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (pts[i] == pts[j]) throw degenerate_input("repeated point");
    const int n = static_cast<int>(pts.size());
    std::vector<std::vector<int>> triples;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int l = j + 1; l < n; ++l)
                if (geom::collinear(pts[i], pts[j], pts[l])) triples.push_back({i, j, l});
    if (k == 3) return triples;
    std::vector<std::vector<int>> quads;
    for (const auto& t : triples)
        for (int m = t[2] + 1; m < n; ++m)
            if (geom::collinear(pts[t[0]], pts[t[1]], pts[m]))
                quads.push_back({t[0], t[1], t[2], m});
    return quads;
}

struct ConicHit {
    std::vector<Cyclotomic> conic;  // canonical coefficients
    std::vector<int> indices;       // sorted incidence set
};

namespace detail {

inline unsigned points_field_order(const std::vector<ProjPoint>& pts) {
    unsigned o = 1;
    for (const ProjPoint& p : pts)
        for (const Cyclotomic& x : p.c)
            if (x.order() != 1) o = x.order();
    return o;
}

struct ConicScanShared {
    const std::vector<std::vector<Cyclotomic>>* rows;
    // Numeric images of the rows and their magnitudes, for the incidence
    // filter: only near-zero numeric dots go through the exact test.
    std::vector<std::array<std::complex<double>, 6>> drows;
    std::vector<std::array<double, 6>> arows;
    unsigned order;
    int n;
    std::size_t threshold;
};

inline void conic_scan_range(const ConicScanShared& sh, int i_begin, int i_end,
                             std::map<std::vector<Cyclotomic>, std::vector<int>>& hits) {
    const auto& rows = *sh.rows;
    std::vector<std::uint64_t> hit_masks;
    for (int i = i_begin; i < i_end; ++i)
        for (int j = i + 1; j < sh.n; ++j)
            for (int k = j + 1; k < sh.n; ++k) {
                geom::Eliminator base(6, sh.order);
                base.add_row(rows[i]);
                base.add_row(rows[j]);
                base.add_row(rows[k]);
                for (int l = k + 1; l < sh.n; ++l) {
                    geom::Eliminator four = base;
                    four.add_row(rows[l]);
                    if (four.rank() < 4) continue;  // no 5-subset through here is unique
                    const auto& piv = four.pivots();
                    const auto& rref = four.basis_rows();
                    std::vector<Cyclotomic> scratch(6, Cyclotomic::zero(sh.order));
                    for (int m = l + 1; m < sh.n; ++m) {
                        const std::uint64_t mask = (1ULL << i) | (1ULL << j) | (1ULL << k) |
                                                   (1ULL << l) | (1ULL << m);
                        bool covered = false;
                        for (std::uint64_t hm : hit_masks)
                            if ((mask & hm) == mask) {
                                covered = true;
                                break;
                            }
                        if (covered) continue;
                        // Reduce the fifth row against the 4-row reduced
                        // basis instead of copying eliminator state.
                        for (int c = 0; c < 6; ++c) scratch[c] = rows[m][c];
                        for (std::size_t t = 0; t < 4; ++t) {
                            Cyclotomic f = scratch[piv[t]];
                            if (f.is_zero()) continue;
                            for (int c = 0; c < 6; ++c) scratch[c] -= f * rref[t][c];
                        }
                        int p5 = -1;
                        for (int c = 0; c < 6; ++c)
                            if (!scratch[c].is_zero()) {
                                p5 = c;
                                break;
                            }
                        if (p5 < 0) continue;  // rank stays 4: no unique conic
                        Cyclotomic inv5 = scratch[p5].inverse();
                        for (int c = 0; c < 6; ++c) scratch[c] = scratch[c] * inv5;
                        int f = -1;
                        for (int c = 0; c < 6; ++c) {
                            if (c == p5) continue;
                            bool is_piv = false;
                            for (std::size_t t = 0; t < 4; ++t) is_piv |= piv[t] == (std::size_t)c;
                            if (!is_piv) {
                                f = c;
                                break;
                            }
                        }
                        std::vector<Cyclotomic> conic(6, Cyclotomic::zero(sh.order));
                        conic[f] = Cyclotomic::one(sh.order);
                        conic[p5] = -scratch[f];
                        for (std::size_t t = 0; t < 4; ++t)
                            conic[piv[t]] = -(rref[t][f] - rref[t][p5] * scratch[f]);
                        conic = geom::canonical_coeffs(std::move(conic));
                        std::array<std::complex<double>, 6> dconic;
                        std::array<double, 6> aconic;
                        for (int c = 0; c < 6; ++c) {
                            dconic[c] = geom::to_complex(conic[c]);
                            aconic[c] = std::abs(dconic[c]);
                        }
                        std::vector<int> inc;
                        for (int q = 0; q < sh.n; ++q) {
                            if (static_cast<std::size_t>(sh.n - q) + inc.size() <
                                sh.threshold)
                                break;
                            std::complex<double> ds(0.0, 0.0);
                            double mag = 0.0;
                            for (int c = 0; c < 6; ++c) {
                                ds += dconic[c] * sh.drows[q][c];
                                mag += aconic[c] * sh.arows[q][c];
                            }
                            if (std::abs(ds) > 1e-9 * mag) continue;  // provably nonzero
                            Cyclotomic s = Cyclotomic::zero(sh.order);
                            for (int c = 0; c < 6; ++c) s += conic[c] * rows[q][c];
                            if (s.is_zero()) inc.push_back(q);
                        }
                        if (inc.size() < sh.threshold) continue;
                        std::uint64_t hm = 0;
                        for (int q : inc) hm |= 1ULL << q;
                        hit_masks.push_back(hm);
                        hits.emplace(std::move(conic), std::move(inc));
                    }
                }
            }
}

// Fast path over Gaussian integers: when the field is Q or Q(i) and the
// points admit small integral representatives, the whole scan runs on
// __int128 with a priori overflow bounds. The kernel vector of the 5x6
// system is the vector of signed maximal minors; the 4x4 minors are shared
// across the innermost loop.
namespace gauss_fast {

struct G2 {
    __int128 re = 0, im = 0;

    friend G2 operator+(const G2& a, const G2& b) { return {a.re + b.re, a.im + b.im}; }
    friend G2 operator-(const G2& a, const G2& b) { return {a.re - b.re, a.im - b.im}; }
    friend G2 operator*(const G2& a, const G2& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    bool zero() const { return re == 0 && im == 0; }
};

inline long long round_div(long long a, long long b) {
    // nearest integer, ties toward zero are fine for the Euclidean descent
    const long long q = a / b, r = a % b;
    if (2 * (r > 0 ? r : -r) > (b > 0 ? b : -b)) return q + (((a > 0) == (b > 0)) ? 1 : -1);
    return q;
}

// Euclidean gcd in Z[i] on small values; returns any associate.
inline std::pair<long long, long long> ggcd(std::pair<long long, long long> a,
                                            std::pair<long long, long long> b) {
    while (b.first != 0 || b.second != 0) {
        const long long n = b.first * b.first + b.second * b.second;
        // a / b = a * conj(b) / |b|^2, rounded per component
        const long long xre = a.first * b.first + a.second * b.second;
        const long long xim = a.second * b.first - a.first * b.second;
        const long long qre = round_div(xre, n), qim = round_div(xim, n);
        const std::pair<long long, long long> r{a.first - (qre * b.first - qim * b.second),
                                                a.second - (qre * b.second + qim * b.first)};
        a = b;
        b = r;
    }
    return a;
}

struct FastPoint {
    std::array<std::pair<long long, long long>, 3> c;  // reduced Gaussian coords
};

// Small integral representative of a canonical point, or failure when the
// field is not Gaussian or values get large.
inline bool reduce_point(const ProjPoint& p, FastPoint& out) {
    geom::Integer lcm(1);
    for (int i = 0; i < 3; ++i) {
        const auto& coeffs = p.c[i].coeffs();
        if (coeffs.size() > 2) return false;
        for (const Rational& q : coeffs)
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
    }
    for (int i = 0; i < 3; ++i) {
        const auto& coeffs = p.c[i].coeffs();
        geom::Rational re = coeffs[0] * geom::Rational(lcm);
        geom::Rational im = coeffs.size() == 2 ? coeffs[1] * geom::Rational(lcm)
                                               : geom::Rational(0);
        if (!geom::is_integer(re) || !geom::is_integer(im)) return false;
        if (!re.get_num().fits_slong_p() || !im.get_num().fits_slong_p()) return false;
        out.c[i] = {re.get_num().get_si(), im.get_num().get_si()};
        if (std::llabs(out.c[i].first) > (1LL << 40) || std::llabs(out.c[i].second) > (1LL << 40))
            return false;
    }
    std::pair<long long, long long> g{0, 0};
    for (int i = 0; i < 3; ++i) g = ggcd(g, out.c[i]);
    if (g.first == 0 && g.second == 0) return false;
    const long long n = g.first * g.first + g.second * g.second;
    for (int i = 0; i < 3; ++i) {
        const long long xre = out.c[i].first * g.first + out.c[i].second * g.second;
        const long long xim = out.c[i].second * g.first - out.c[i].first * g.second;
        if (xre % n || xim % n) return false;
        out.c[i] = {xre / n, xim / n};
    }
    return true;
}

// Incidence sets of all conics meeting >= threshold points. Requires that no
// five points are collinear, so distinct conics have distinct incidence sets
// of size >= 6 and the bitmask is a sound dedup key.
inline bool scan(const std::vector<ProjPoint>& pts, std::size_t threshold,
                 std::vector<std::vector<int>>& hit_sets) {
    const int n = static_cast<int>(pts.size());
    std::vector<FastPoint> fp(n);
    long double maxmag = 0;
    for (int q = 0; q < n; ++q) {
        if (!reduce_point(pts[q], fp[q])) return false;
        for (const auto& [re, im] : fp[q].c)
            maxmag = std::max(maxmag, sqrtl((long double)re * re + (long double)im * im));
    }
    // Row entries are coordinate products; Bareiss-free minor expansions stay
    // within |.| <= 2592 M^8 and evaluations within 528 M^7 for M the max
    // row-entry magnitude. Require headroom under 2^124.
    const long double M = maxmag * maxmag;
    if (powl(M, 8) * 2592.0L > powl(2.0L, 124)) return false;

    std::vector<std::array<G2, 6>> rows(n);
    for (int q = 0; q < n; ++q) {
        auto m = [&](int a, int b) {
            G2 x{fp[q].c[a].first, fp[q].c[a].second};
            G2 y{fp[q].c[b].first, fp[q].c[b].second};
            return x * y;
        };
        rows[q] = {m(0, 0), m(0, 1), m(0, 2), m(1, 1), m(1, 2), m(2, 2)};
    }

    // No five collinear: the 5-subset method and incidence-set dedup need it.
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            int on = 2;
            auto cr = [&](int a, int b, int c) {
                // 3x3 determinant over the reduced coordinates
                const auto& A = fp[a].c;
                const auto& B = fp[b].c;
                const auto& C = fp[c].c;
                auto g = [](const std::pair<long long, long long>& v) {
                    return G2{v.first, v.second};
                };
                G2 d = g(A[0]) * (g(B[1]) * g(C[2]) - g(B[2]) * g(C[1])) -
                       g(A[1]) * (g(B[0]) * g(C[2]) - g(B[2]) * g(C[0])) +
                       g(A[2]) * (g(B[0]) * g(C[1]) - g(B[1]) * g(C[0]));
                return d.zero();
            };
            for (int k = 0; k < n; ++k)
                if (k != i && k != j && cr(i, j, k)) ++on;
            if (on >= 5) return false;
        }

    std::vector<std::uint64_t> hit_masks;
    const int col_pairs[15][2] = {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {1, 2}, {1, 3},
                                  {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}, {3, 4}, {3, 5},
                                  {4, 5}};
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                for (int l = k + 1; l < n; ++l) {
                    // 4x4 minors of the 4x6 submatrix, keyed by the removed
                    // column pair.
                    G2 M4[6][6];
                    const std::array<G2, 6>* R[4] = {&rows[i], &rows[j], &rows[k], &rows[l]};
                    for (const auto& cp : col_pairs) {
                        int cols[4];
                        int t = 0;
                        for (int c = 0; c < 6; ++c)
                            if (c != cp[0] && c != cp[1]) cols[t++] = c;
                        // direct 4x4 determinant via 2x2 Laplace down the
                        // first two rows
                        G2 det{0, 0};
                        const int two[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
                        const int sgn[6] = {1, -1, 1, 1, -1, 1};
                        for (int s = 0; s < 6; ++s) {
                            const int a = two[s][0], b = two[s][1];
                            int rest[2];
                            int u = 0;
                            for (int c = 0; c < 4; ++c)
                                if (c != a && c != b) rest[u++] = c;
                            G2 top = (*R[0])[cols[a]] * (*R[1])[cols[b]] -
                                     (*R[0])[cols[b]] * (*R[1])[cols[a]];
                            G2 bot = (*R[2])[cols[rest[0]]] * (*R[3])[cols[rest[1]]] -
                                     (*R[2])[cols[rest[1]]] * (*R[3])[cols[rest[0]]];
                            G2 term = top * bot;
                            if (sgn[s] < 0) term = G2{0, 0} - term;
                            det = det + term;
                        }
                        M4[cp[0]][cp[1]] = det;
                    }
                    for (int m = l + 1; m < n; ++m) {
                        const std::uint64_t mask = (1ULL << i) | (1ULL << j) | (1ULL << k) |
                                                   (1ULL << l) | (1ULL << m);
                        bool covered = false;
                        for (std::uint64_t hm : hit_masks)
                            if ((mask & hm) == mask) {
                                covered = true;
                                break;
                            }
                        if (covered) continue;
                        // v_c = (-1)^c det(columns without c), expanded along
                        // the fifth row.
                        G2 v[6];
                        bool nonzero = false;
                        for (int c = 0; c < 6; ++c) {
                            G2 acc{0, 0};
                            for (int t2 = 0; t2 < 6; ++t2) {
                                if (t2 == c) continue;
                                const int pos = t2 < c ? t2 : t2 - 1;  // index among cols != c
                                const int lo = std::min(c, t2), hi = std::max(c, t2);
                                G2 term = rows[m][t2] * M4[lo][hi];
                                if ((4 + pos) % 2) term = G2{0, 0} - term;
                                acc = acc + term;
                            }
                            if (c % 2) acc = G2{0, 0} - acc;
                            v[c] = acc;
                            if (!acc.zero()) nonzero = true;
                        }
                        if (!nonzero) continue;  // rank < 5, no unique conic
                        std::vector<int> inc;
                        for (int q = 0; q < n; ++q) {
                            if (static_cast<std::size_t>(n - q) + inc.size() < threshold)
                                break;
                            G2 s{0, 0};
                            for (int c = 0; c < 6; ++c) s = s + v[c] * rows[q][c];
                            if (s.zero()) inc.push_back(q);
                        }
                        if (inc.size() < threshold) continue;
                        std::uint64_t hm = 0;
                        for (int q : inc) hm |= 1ULL << q;
                        hit_masks.push_back(hm);
                        hit_sets.push_back(std::move(inc));
                    }
                }
    std::sort(hit_sets.begin(), hit_sets.end());
    hit_sets.erase(std::unique(hit_sets.begin(), hit_sets.end()), hit_sets.end());
    return true;
}

}  // namespace gauss_fast

}  // namespace detail

// All conics through at least `threshold` of the points, found through the
// 5-subset scan: every 5-subset with a unique conic is tried and incidences
// are counted; results deduplicate by the canonical conic. Equivalent to the
// brute subset scan whenever no `threshold`-subset is collinear-degenerate.
inline std::vector<ConicHit> conics_with_min_incidence(const std::vector<ProjPoint>& pts,
                                                       std::size_t threshold,
                                                       unsigned threads = 1,
                                                       bool allow_fast = true) {
    if (pts.size() < 5) throw invalid_parameter("need at least 5 points");
    if (threshold < 6) throw invalid_parameter("threshold must be >= 6");
    if (pts.size() > 64) throw invalid_parameter("more than 64 points unsupported");
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (pts[i] == pts[j]) throw degenerate_input("repeated point");
    const unsigned order = detail::points_field_order(pts);

    // Machine-integer fast path for Gaussian input; identical output, just
    // computed as shared integer minors.
    if (allow_fast) {
        std::vector<std::vector<int>> hit_sets;
        if (detail::gauss_fast::scan(pts, threshold, hit_sets)) {
            std::vector<ConicHit> out;
            for (const auto& inc : hit_sets) {
                // Exact canonical coefficients from the first 5-subset of the
                // incidence set carrying a unique conic.
                ConicHit hit;
                hit.indices = inc;
                std::vector<std::size_t> sel = {0, 1, 2, 3, 4};
                bool made = false;
                while (!made) {
                    std::vector<ProjPoint> five;
                    for (std::size_t s : sel) five.push_back(pts[inc[s]]);
                    auto res = geom::conic_through_five(five);
                    if (res.unique) {
                        hit.conic = res.conic;
                        made = true;
                        break;
                    }
                    // next lexicographic 5-combination
                    int pos = 4;
                    while (pos >= 0 && sel[pos] == inc.size() - 5 + pos) --pos;
                    if (pos < 0) break;
                    ++sel[pos];
                    for (int t = pos + 1; t < 5; ++t) sel[t] = sel[t - 1] + 1;
                }
                if (!made) throw error("internal: no unique conic inside a hit set");
                out.push_back(std::move(hit));
            }
            std::sort(out.begin(), out.end(), [](const ConicHit& a, const ConicHit& b) {
                return a.indices < b.indices;
            });
            return out;
        }
    }

    const int n = static_cast<int>(pts.size());
    std::vector<std::vector<Cyclotomic>> rows;
    for (const ProjPoint& p : pts) rows.push_back(geom::conic_row(p, order));
    detail::ConicScanShared sh{&rows, {}, {}, order, n, threshold};
    for (const auto& row : rows) {
        std::array<std::complex<double>, 6> d;
        std::array<double, 6> a;
        for (int c = 0; c < 6; ++c) {
            d[c] = geom::to_complex(row[c]);
            a[c] = std::abs(d[c]);
        }
        sh.drows.push_back(d);
        sh.arows.push_back(a);
    }

    std::vector<std::map<std::vector<Cyclotomic>, std::vector<int>>> partial(
        std::max(1u, threads));
    if (threads <= 1) {
        detail::conic_scan_range(sh, 0, n, partial[0]);
    } else {
        // Cyclic first-index slices; results are merged by canonical conic,
        // so the output is independent of the split.
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&, t]() {
                for (int i = static_cast<int>(t); i < n; i += static_cast<int>(threads)) {
                    detail::conic_scan_range(sh, i, i + 1, partial[t]);
                }
            });
        for (auto& th : pool) th.join();
    }
    std::map<std::vector<Cyclotomic>, std::vector<int>> merged;
    for (auto& part : partial)
        for (auto& [conic, inc] : part) merged.emplace(std::move(conic), std::move(inc));
    std::vector<ConicHit> out;
    for (auto& [conic, inc] : merged) out.push_back({conic, inc});
    std::sort(out.begin(), out.end(),
              [](const ConicHit& a, const ConicHit& b) { return a.indices < b.indices; });
    return out;
}

// Reference scan over all `threshold`-subsets; exponential, only sensible at
// small point counts. Deduplicates by incidence set.
inline std::vector<ConicHit> conics_brute_scan(const std::vector<ProjPoint>& pts,
                                               std::size_t threshold) {
    if (pts.size() < threshold) return {};
    const unsigned order = detail::points_field_order(pts);
    std::vector<int> subset(threshold);
    std::set<std::vector<int>> seen;
    std::vector<ConicHit> out;
    std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int start) {
        if (pos == threshold) {
            std::vector<geom::PointCondition> conds;
            for (int idx : subset) conds.push_back({pts[idx], 1});
            auto sys = geom::curve_system(2, conds);
            if (sys.dimension == 0) return;
            auto conic = geom::canonical_coeffs(sys.basis[0]);
            std::vector<int> inc;
            for (int q = 0; q < static_cast<int>(pts.size()); ++q)
                if (geom::eval_conic(conic, pts[q], order).is_zero()) inc.push_back(q);
            if (inc.size() >= threshold && seen.insert(inc).second)
                out.push_back({std::move(conic), std::move(inc)});
            return;
        }
        for (int i = start; i < static_cast<int>(pts.size()); ++i) {
            subset[pos] = i;
            rec(pos + 1, i + 1);
        }
    };
    rec(0, 0);
    std::sort(out.begin(), out.end(),
              [](const ConicHit& a, const ConicHit& b) { return a.indices < b.indices; });
    return out;
}

// Star configurations: 12 marked points split into 6 pairs whose joins are
// arrangement lines through one multiplicity-6 center.
struct StarTraceStep {
    int partner = -1;        // pair is (first element, partner)
    int forced_center = -1;  // lattice index, the remaining mult-6 point on the join
    int first_uncovered = -1;  // a marked point on no line through the center, or -1
};

struct StarVerdict {
    bool is_star = false;
    int center = -1;  // lattice index when is_star
    std::vector<StarTraceStep> trace;
};

namespace detail {

// Perfect matching by backtracking on the lowest unmatched vertex; the graphs
// here have 12 vertices.
inline bool perfect_matching(const std::vector<std::vector<char>>& adj,
                             std::vector<char>& used, std::size_t n) {
    std::size_t a = n;
    for (std::size_t i = 0; i < n; ++i)
        if (!used[i]) {
            a = i;
            break;
        }
    if (a == n) return true;
    used[a] = 1;
    for (std::size_t b = a + 1; b < n; ++b) {
        if (used[b] || !adj[a][b]) continue;
        used[b] = 1;
        if (perfect_matching(adj, used, n)) return true;
        used[b] = 0;
    }
    used[a] = 0;
    return false;
}

}  // namespace detail

inline StarVerdict star_configuration_check(const IntersectionLattice& lat,
                                            const Partition& part,
                                            const std::vector<int>& twelve) {
    if (twelve.size() != 12) throw invalid_parameter("star check needs 12 points");
    std::set<int> marked(twelve.begin(), twelve.end());
    if (marked.size() != 12) throw invalid_parameter("repeated marked point");
    for (int p : twelve)
        if (!part.in_eq1(p)) throw invalid_parameter("marked point not in T_{=1}");

    auto common_line = [&](int p, int q) -> int {
        const auto& a = lat.points[p].incident;
        const auto& b = lat.points[q].incident;
        std::vector<int> inter;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                              std::back_inserter(inter));
        return inter.empty() ? -1 : inter.front();
    };

    // Points are processed in the order given, so traces are stated in the
    // caller's labeling.
    const std::vector<int>& pts = twelve;
    StarVerdict verdict;
    const int a = pts.front();
    for (int b : pts) {
        if (b == a) continue;
        const int line = common_line(a, b);
        if (line < 0) continue;
        // Candidate centers: the other multiplicity-6 lattice points on the
        // join, outside the marked set.
        for (int t : lat.per_line[line].multiple_points) {
            if (t == a || t == b || marked.count(t)) continue;
            if (lat.points[t].multiplicity != 6) continue;
            StarTraceStep step{b, t, -1};
            // Every marked point must sit on a line through the center.
            for (int q : pts) {
                const int l = common_line(q, t);
                if (l < 0) {
                    step.first_uncovered = q;
                    break;
                }
            }
            if (step.first_uncovered < 0) {
                // Matching feasibility with pair joins through the center.
                std::vector<std::vector<char>> adj(12, std::vector<char>(12, 0));
                for (int i = 0; i < 12; ++i)
                    for (int j = i + 1; j < 12; ++j) {
                        const int l = common_line(pts[i], pts[j]);
                        if (l >= 0 && lat.points[t].incident.end() !=
                                          std::find(lat.points[t].incident.begin(),
                                                    lat.points[t].incident.end(), l)) {
                            adj[i][j] = adj[j][i] = 1;
                        }
                    }
                std::vector<char> used(12, 0);
                if (detail::perfect_matching(adj, used, 12)) {
                    verdict.is_star = true;
                    verdict.center = t;
                    verdict.trace.push_back(step);
                    return verdict;
                }
            }
            verdict.trace.push_back(step);
        }
    }
    verdict.is_star = false;
    return verdict;
}

// Overlap sizes of index sets.
inline std::vector<std::vector<std::size_t>> pairwise_overlap_table(
    const std::vector<std::vector<int>>& sets) {
    if (sets.size() < 2) throw invalid_parameter("need at least 2 sets");
    std::vector<std::set<int>> ss;
    for (const auto& s : sets) ss.emplace_back(s.begin(), s.end());
    std::vector<std::vector<std::size_t>> table(sets.size(),
                                                std::vector<std::size_t>(sets.size(), 0));
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = 0; j < sets.size(); ++j) {
            std::size_t c = 0;
            for (int x : ss[i]) c += ss[j].count(x);
            table[i][j] = c;
        }
    return table;
}

}  // namespace arrcert::badcurve
