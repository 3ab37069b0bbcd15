#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "arrcert/errors.hpp"
#include "arrcert/rational.hpp"

namespace arrcert::fm {

using geom::Rational;

// System of strict inequalities row . x > 0 over the rationals.
struct StrictSystem {
    std::size_t vars = 0;
    std::vector<std::vector<Rational>> rows;
};

// Infeasibility witness: nonnegative multipliers, not all zero, whose
// combination of the original rows is the zero vector — a positive
// combination of strict inequalities summing to "0 > 0".
struct Infeasibility {
    std::vector<std::pair<std::size_t, Rational>> combination;  // (row index, multiplier)
};

struct FmResult {
    std::optional<std::vector<Rational>> point;  // strict solution when feasible
    std::optional<Infeasibility> infeasible;
};

namespace detail {

struct Row {
    std::vector<Rational> a;
    std::vector<Rational> mult;  // combination over the original rows
};

// Scale so the first nonzero coefficient is +-1; rows equal after scaling
// are duplicates (the inequalities are homogeneous and strict).
inline void normalize(Row& r) {
    const Rational* lead = nullptr;
    for (const Rational& q : r.a)
        if (q != 0) {
            lead = &q;
            break;
        }
    if (!lead) return;
    Rational s = *lead > 0 ? *lead : Rational(-*lead);
    if (s == 1) return;
    for (Rational& q : r.a) q /= s;
    for (Rational& q : r.mult) q /= s;
}

inline bool all_zero(const std::vector<Rational>& v) {
    for (const Rational& q : v)
        if (q != 0) return false;
    return true;
}

inline Infeasibility make_certificate(const Row& r) {
    Infeasibility inf;
    for (std::size_t i = 0; i < r.mult.size(); ++i)
        if (r.mult[i] != 0) inf.combination.push_back({i, r.mult[i]});
    return inf;
}

}  // namespace detail

// Exact Fourier-Motzkin elimination. Feasibility of a strict homogeneous
// system is decided with a witness in both directions: a rational interior
// point, or a vanishing positive combination of the rows. Variables are
// eliminated smallest-fill first; a derived all-zero row is a contradiction.
inline FmResult solve_strict(const StrictSystem& sys, std::size_t max_rows = 200000) {
    using detail::Row;
    const std::size_t n = sys.vars;
    std::vector<Row> rows;
    for (std::size_t i = 0; i < sys.rows.size(); ++i) {
        if (sys.rows[i].size() != n) throw invalid_parameter("row width mismatch");
        Row r{sys.rows[i], std::vector<Rational>(sys.rows.size(), Rational(0))};
        r.mult[i] = 1;
        if (detail::all_zero(r.a)) return {std::nullopt, detail::make_certificate(r)};
        detail::normalize(r);
        rows.push_back(std::move(r));
    }

    // stages[k] = the system right before the k-th elimination.
    std::vector<std::vector<Row>> stages;
    std::vector<std::size_t> elim_order;
    std::vector<char> eliminated(n, 0);

    for (std::size_t step = 0; step < n; ++step) {
        // Deduplicate.
        std::map<std::vector<Rational>, std::size_t> seen;
        std::vector<Row> unique_rows;
        for (Row& r : rows) {
            auto [it, inserted] = seen.emplace(r.a, unique_rows.size());
            if (inserted) unique_rows.push_back(std::move(r));
        }
        rows = std::move(unique_rows);

        // Pick the variable minimizing the pos*neg fill.
        std::size_t best = n;
        long best_fill = -1;
        for (std::size_t v = 0; v < n; ++v) {
            if (eliminated[v]) continue;
            long pos = 0, neg = 0;
            for (const Row& r : rows) {
                if (r.a[v] > 0) ++pos;
                if (r.a[v] < 0) ++neg;
            }
            const long fill = pos * neg;
            if (best == n || fill < best_fill) {
                best = v;
                best_fill = fill;
            }
        }
        stages.push_back(rows);
        elim_order.push_back(best);
        eliminated[best] = 1;

        std::vector<Row> next;
        std::vector<const Row*> pos, neg;
        for (const Row& r : rows) {
            if (r.a[best] > 0)
                pos.push_back(&r);
            else if (r.a[best] < 0)
                neg.push_back(&r);
            else
                next.push_back(r);
        }
        for (const Row* p : pos)
            for (const Row* q : neg) {
                Row combo;
                combo.a.resize(n, Rational(0));
                combo.mult.resize(sys.rows.size(), Rational(0));
                const Rational cp = p->a[best];   // > 0
                const Rational cq = -q->a[best];  // > 0
                for (std::size_t j = 0; j < n; ++j) combo.a[j] = cq * p->a[j] + cp * q->a[j];
                for (std::size_t j = 0; j < sys.rows.size(); ++j)
                    combo.mult[j] = cq * p->mult[j] + cp * q->mult[j];
                if (detail::all_zero(combo.a))
                    return {std::nullopt, detail::make_certificate(combo)};
                detail::normalize(combo);
                next.push_back(std::move(combo));
                if (next.size() > max_rows)
                    throw error("fourier-motzkin row limit exceeded");
            }
        rows = std::move(next);
    }

    // Feasible: back-substitute through the stages in reverse.
    std::vector<Rational> x(n, Rational(0));
    for (std::size_t k = stages.size(); k-- > 0;) {
        const std::size_t v = elim_order[k];
        std::optional<Rational> lower, upper;  // open bounds for x[v]
        for (const Row& r : stages[k]) {
            if (r.a[v] == 0) continue;
            Rational rest(0);
            for (std::size_t j = 0; j < n; ++j)
                if (j != v) rest += r.a[j] * x[j];
            Rational bound = -rest / r.a[v];
            if (r.a[v] > 0) {
                if (!lower || bound > *lower) lower = bound;
            } else {
                if (!upper || bound < *upper) upper = bound;
            }
        }
        if (lower && upper)
            x[v] = (*lower + *upper) / 2;
        else if (lower)
            x[v] = *lower + 1;
        else if (upper)
            x[v] = *upper - 1;
        else
            x[v] = 1;
    }
    return {std::move(x), std::nullopt};
}

}  // namespace arrcert::fm
