#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arrcert/arrangement.hpp"
#include "arrcert/fourier_motzkin.hpp"
#include "arrcert/localsys.hpp"

namespace arrcert::blowup {

using arr::Arrangement;
using arr::IntersectionLattice;
using geom::Rational;

// A component of the total transform on the blow-up: the strict transform of
// an arrangement line, or the exceptional curve over a blown-up point.
struct ComponentId {
    enum class Kind { strict_line, exceptional };
    Kind kind = Kind::strict_line;
    int index = 0;  // line index, or lattice point index

    static ComponentId line(int i) { return {Kind::strict_line, i}; }
    static ComponentId exceptional(int p) { return {Kind::exceptional, p}; }

    friend bool operator==(const ComponentId&, const ComponentId&) = default;
    friend auto operator<=>(const ComponentId&, const ComponentId&) = default;

    std::string str() const {
        return (kind == Kind::strict_line ? "H" : "E") + std::to_string(index);
    }
};

// The surface obtained from P^2 by blowing up a chosen set of lattice
// points, together with precomputed incidence data for the intersection
// form on strict transforms and exceptionals.
struct DivisorModel {
    Arrangement arrangement;
    IntersectionLattice lattice;
    std::vector<char> blown;        // per lattice point
    std::vector<int> blown_on_line; // # blown points on each line
    std::vector<std::vector<int>> meet_index;  // lattice point of meet(i, j)

    std::vector<ComponentId> components() const {
        std::vector<ComponentId> out;
        for (int i = 0; i < static_cast<int>(arrangement.size()); ++i)
            out.push_back(ComponentId::line(i));
        for (int p = 0; p < static_cast<int>(lattice.points.size()); ++p)
            if (blown[p]) out.push_back(ComponentId::exceptional(p));
        return out;
    }

    bool line_through(int point_idx, int line) const {
        const auto& inc = lattice.points[point_idx].incident;
        return std::binary_search(inc.begin(), inc.end(), line);
    }
};

inline DivisorModel make_model(const Arrangement& A, const IntersectionLattice& lat,
                               const std::vector<int>& blow_points) {
    DivisorModel m{A, lat, std::vector<char>(lat.points.size(), 0),
                   std::vector<int>(A.size(), 0), {}};
    for (int p : blow_points) {
        if (p < 0 || p >= static_cast<int>(lat.points.size()))
            throw invalid_parameter("blow-up point index out of range");
        m.blown[p] = 1;
    }
    for (int p = 0; p < static_cast<int>(lat.points.size()); ++p)
        if (m.blown[p])
            for (int i : lat.points[p].incident) ++m.blown_on_line[i];
    const int n = static_cast<int>(A.size());
    m.meet_index.assign(n, std::vector<int>(n, -1));
    for (int p = 0; p < static_cast<int>(lat.points.size()); ++p) {
        const auto& inc = lat.points[p].incident;
        for (std::size_t a = 0; a < inc.size(); ++a)
            for (std::size_t b = a + 1; b < inc.size(); ++b)
                m.meet_index[inc[a]][inc[b]] = m.meet_index[inc[b]][inc[a]] = p;
    }
    return m;
}

// Blow up every point of multiplicity >= 3.
inline DivisorModel make_model_all_t(const Arrangement& A, const IntersectionLattice& lat) {
    return make_model(A, lat, lat.t_points);
}

// The intersection form: H_i.H_j = 1 unless the meet is blown; H_i^2 = 1 -
// #(blown points on H_i); E_p^2 = -1; E_p.H_i = [p on H_i]; E_p.E_q = 0.
inline long pairing(const DivisorModel& m, const ComponentId& a, const ComponentId& b) {
    using K = ComponentId::Kind;
    if (a.kind == K::strict_line && b.kind == K::strict_line) {
        if (a.index == b.index) return 1 - m.blown_on_line[a.index];
        const int p = m.meet_index[a.index][b.index];
        return m.blown[p] ? 0 : 1;
    }
    if (a.kind == K::exceptional && b.kind == K::exceptional)
        return a.index == b.index ? -1 : 0;
    const ComponentId& e = a.kind == K::exceptional ? a : b;
    const ComponentId& h = a.kind == K::exceptional ? b : a;
    if (!m.blown[e.index]) throw invalid_parameter("component over a point that is not blown");
    return m.line_through(e.index, h.index) ? 1 : 0;
}

// Effective divisor with positive rational coefficients on a subset of the
// model's components.
struct QDivisor {
    std::map<ComponentId, Rational> coeff;

    void set(const ComponentId& c, const Rational& a) {
        if (a <= 0) throw invalid_parameter("divisor coefficients must be positive");
        coeff[c] = a;
    }
    std::vector<ComponentId> support() const {
        std::vector<ComponentId> s;
        for (const auto& [c, a] : coeff) s.push_back(c);
        return s;
    }
};

inline QDivisor unit_divisor(const std::vector<ComponentId>& support) {
    QDivisor d;
    for (const ComponentId& c : support) d.set(c, Rational(1));
    return d;
}

inline Rational qdiv_dot(const DivisorModel& m, const QDivisor& d, const ComponentId& c) {
    Rational s(0);
    for (const auto& [c2, a] : d.coeff) s += a * Rational(pairing(m, c2, c));
    return s;
}

inline Rational qdiv_self(const DivisorModel& m, const QDivisor& d) {
    Rational s(0);
    for (const auto& [c, a] : d.coeff) s += a * qdiv_dot(m, d, c);
    return s;
}

// Verified data of Def.-2.2 type: positive coefficients whose pairing with
// every support component is positive. Re-verifiable from the divisor alone.
struct NMCertificate {
    QDivisor divisor;
    std::map<ComponentId, Rational> slacks;
    Rational self_intersection;
};

struct NmVerification {
    bool ok = false;
    std::optional<NMCertificate> certificate;
    std::map<ComponentId, Rational> slacks;
    std::vector<ComponentId> violated;
};

inline NmVerification verify_nm(const DivisorModel& m, const QDivisor& d) {
    NmVerification v;
    for (const auto& [c, a] : d.coeff) {
        Rational s = qdiv_dot(m, d, c);
        v.slacks[c] = s;
        if (s <= 0) v.violated.push_back(c);
    }
    v.ok = v.violated.empty() && !d.coeff.empty();
    if (v.ok) {
        Rational self(0);
        for (const auto& [c, a] : d.coeff) self += a * v.slacks[c];
        v.certificate = NMCertificate{d, v.slacks, self};
    }
    return v;
}

// Positive combination of the slack/positivity rows that vanishes: proof
// that no positive coefficients make all slacks positive.
struct NmInfeasibility {
    // label is "slack(<component>)" or "positive(<component>)"
    std::vector<std::pair<std::string, Rational>> combination;
};

struct NmSearchResult {
    std::optional<QDivisor> divisor;
    std::optional<NmInfeasibility> infeasible;
};

// Strictly positive coefficients with all slacks positive, or an exact
// infeasibility certificate. The all-ones vector is tried first; otherwise
// the homogeneous strict system {M a > 0, a > 0} goes through
// Fourier-Motzkin elimination.
inline NmSearchResult nm_search(const DivisorModel& m, const std::vector<ComponentId>& support) {
    if (support.empty()) throw invalid_parameter("empty support");
    {
        QDivisor unit = unit_divisor(support);
        if (verify_nm(m, unit).ok) return {unit, std::nullopt};
    }
    const std::size_t n = support.size();
    fm::StrictSystem sys;
    sys.vars = n;
    for (std::size_t r = 0; r < n; ++r) {
        std::vector<Rational> row(n, Rational(0));
        for (std::size_t c = 0; c < n; ++c)
            row[c] = Rational(pairing(m, support[c], support[r]));
        sys.rows.push_back(std::move(row));
    }
    for (std::size_t r = 0; r < n; ++r) {
        std::vector<Rational> row(n, Rational(0));
        row[r] = 1;
        sys.rows.push_back(std::move(row));
    }
    fm::FmResult res = fm::solve_strict(sys);
    if (res.point) {
        QDivisor d;
        for (std::size_t i = 0; i < n; ++i) d.set(support[i], (*res.point)[i]);
        NmVerification check = verify_nm(m, d);
        if (!check.ok) throw error("internal: search result failed verification");
        return {std::move(d), std::nullopt};
    }
    NmInfeasibility inf;
    for (const auto& [row_idx, mult] : res.infeasible->combination) {
        const bool is_slack = row_idx < n;
        const ComponentId& c = support[is_slack ? row_idx : row_idx - n];
        inf.combination.push_back({(is_slack ? "slack(" : "positive(") + c.str() + ")", mult});
    }
    return {std::nullopt, std::move(inf)};
}

// The explicit divisor from the single-bad-point construction: coefficient 1
// on the strict transform of h0, chosen weights on the lines through each
// T_{!=1} point of h0 and on the exceptionals over them. Requires
// h0 to carry exactly one T_{=1} point and all its T_{!=1} points blown.
inline QDivisor certificate_from_single_bad_point(const DivisorModel& m, int h0, int p,
                                                  const lsys::Partition& part) {
    std::vector<int> eq1_on_h0, neq1_on_h0;
    for (int idx : m.lattice.per_line.at(h0).multiple_points) {
        if (part.in_eq1(idx)) eq1_on_h0.push_back(idx);
        if (part.in_neq1(idx)) neq1_on_h0.push_back(idx);
    }
    if (eq1_on_h0.size() != 1 || eq1_on_h0[0] != p)
        throw hypothesis_violation("line " + std::to_string(h0) +
                                   " does not meet T_{=1} in exactly the given point");
    QDivisor d;
    d.set(ComponentId::line(h0), Rational(1));
    if (neq1_on_h0.empty()) {
        // No T_{!=1} point on h0: take a small multiple of any line missing p.
        int h1 = -1;
        for (int i = 0; i < static_cast<int>(m.arrangement.size()); ++i)
            if (i != h0 && !m.line_through(p, i)) {
                h1 = i;
                break;
            }
        if (h1 < 0) throw hypothesis_violation("arrangement is a pencil through the bad point");
        const long sq = pairing(m, ComponentId::line(h1), ComponentId::line(h1));
        Rational eps = sq < 0 ? Rational(1, 2 * (-sq)) : Rational(1);
        d.set(ComponentId::line(h1), eps);
    } else {
        for (int q : neq1_on_h0) {
            if (!m.blown[q]) throw hypothesis_violation("T_{!=1} point on the line is not blown");
            Rational sum(0);
            for (int c : m.lattice.points[q].incident) {
                if (c == h0) continue;
                const long sq = pairing(m, ComponentId::line(c), ComponentId::line(c));
                Rational a = sq < 0 ? Rational(1, 2 * (-sq)) : Rational(1);
                d.set(ComponentId::line(c), a);
                sum += a;
            }
            d.set(ComponentId::exceptional(q), Rational(1) + sum / 2);
        }
    }
    if (!verify_nm(m, d).ok) throw error("internal: single-bad-point divisor failed verification");
    return d;
}

// Extends a verified divisor by extra components, one at a time in an order
// where each new component meets the support built so far; each gets an
// exact coefficient of half the largest value keeping every slack positive.
inline QDivisor extend_nm(const DivisorModel& m, const NMCertificate& cert,
                          std::vector<ComponentId> extras) {
    QDivisor d = cert.divisor;
    for (const ComponentId& e : extras)
        if (d.coeff.count(e)) throw invalid_parameter("extension component already in support");
    std::sort(extras.begin(), extras.end());
    while (!extras.empty()) {
        std::size_t pick = extras.size();
        Rational base(0);
        for (std::size_t i = 0; i < extras.size(); ++i) {
            Rational b = qdiv_dot(m, d, extras[i]);
            if (b > 0) {
                pick = i;
                base = b;
                break;
            }
        }
        if (pick == extras.size())
            throw disconnected_extension("remaining components never meet the support");
        const ComponentId e = extras[pick];
        extras.erase(extras.begin() + pick);
        const long sq = pairing(m, e, e);
        Rational eps = sq < 0 ? base / (2 * Rational(-sq)) : Rational(1);
        d.set(e, eps);
    }
    if (!verify_nm(m, d).ok) throw error("internal: extension failed verification");
    return d;
}

// Connectivity of the support graph, edges where the pairing is positive.
inline bool divisor_connected(const DivisorModel& m, const std::vector<ComponentId>& support) {
    if (support.empty()) throw invalid_parameter("empty support");
    std::vector<char> seen(support.size(), 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t visited = 1;
    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t w = 0; w < support.size(); ++w) {
            if (seen[w] || pairing(m, support[v], support[w]) <= 0) continue;
            seen[w] = 1;
            ++visited;
            stack.push_back(w);
        }
    }
    return visited == support.size();
}

// The support of the paper's divisor D': all strict lines plus the
// exceptionals over T_{!=1}.
inline std::vector<ComponentId> dprime_support(const DivisorModel& m,
                                               const lsys::Partition& part) {
    std::vector<ComponentId> s;
    for (int i = 0; i < static_cast<int>(m.arrangement.size()); ++i)
        s.push_back(ComponentId::line(i));
    for (int p : part.neq1) {
        if (!m.blown[p]) throw invalid_parameter("T_{!=1} point not blown in this model");
        s.push_back(ComponentId::exceptional(p));
    }
    return s;
}

}  // namespace arrcert::blowup
