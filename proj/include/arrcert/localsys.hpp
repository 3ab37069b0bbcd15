#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "arrcert/arrangement.hpp"

namespace arrcert::lsys {

using arr::IntersectionLattice;
using geom::Rational;

// Rank-one local system given by monodromy exponents a_i in [0,1), one per
// line; the monodromy around H_i is exp(2 pi i a_i). Only "is the sum an
// integer" questions are ever asked, so no root-of-unity arithmetic is
// needed here.
class LocalSystem {
  public:
    explicit LocalSystem(std::vector<Rational> exps) : a_(std::move(exps)) {
        if (a_.empty()) throw invalid_parameter("empty exponent list");
        Rational sum(0);
        for (Rational& q : a_) {
            q = geom::frac_mod1(q);
            sum += q;
        }
        if (!geom::is_integer(sum))
            throw invalid_parameter("exponent sum " + geom::to_string(sum) +
                                    " is not an integer");
        strict_ = std::all_of(a_.begin(), a_.end(), [](const Rational& q) { return q != 0; });
    }

    const std::vector<Rational>& exponents() const { return a_; }
    std::size_t size() const { return a_.size(); }
    // True when every t_i differs from 1; certification requires it.
    bool strict() const { return strict_; }

  private:
    std::vector<Rational> a_;
    bool strict_ = false;
};

// The local system of a Milnor-fiber eigenvalue of order k: all exponents
// 1/k. Requires k | n, otherwise the exponent sum is not an integer.
inline LocalSystem milnor_system(unsigned n, unsigned k) {
    if (k < 2) throw invalid_parameter("milnor order must be >= 2");
    if (n % k != 0)
        throw invalid_parameter("order " + std::to_string(k) + " does not divide line count " +
                                std::to_string(n));
    return LocalSystem(std::vector<Rational>(n, Rational(1, k)));
}

// (sum of exponents over the lines through the point) mod 1; zero means the
// total turn monodromy t_p equals 1.
inline Rational total_turn_exponent(const IntersectionLattice& lat, int point_index,
                                    const LocalSystem& L) {
    const auto& lp = lat.points.at(point_index);
    Rational s(0);
    for (int i : lp.incident) s += L.exponents().at(i);
    return geom::frac_mod1(s);
}

// The T_{=1} / T_{!=1} split of the multiplicity >= 3 points. Nodes are
// never classified. Indices are absolute lattice point indices, ascending.
struct Partition {
    std::vector<int> eq1;
    std::vector<int> neq1;
    bool strict = false;

    bool in_eq1(int idx) const {
        return std::binary_search(eq1.begin(), eq1.end(), idx);
    }
    bool in_neq1(int idx) const {
        return std::binary_search(neq1.begin(), neq1.end(), idx);
    }
};

inline Partition partition(const IntersectionLattice& lat, const LocalSystem& L) {
    Partition part;
    part.strict = L.strict();
    for (int t : lat.t_points) {
        if (total_turn_exponent(lat, t, L) == 0)
            part.eq1.push_back(t);
        else
            part.neq1.push_back(t);
    }
    return part;
}

// Symbolic mode for non-torsion monodromy: the caller states which vertex
// sums are forced integral. Indices are 1-based positions in the lattice's
// multiplicity >= 3 point list.
inline Partition partition_symbolic(const IntersectionLattice& lat,
                                    const std::vector<int>& eq1_t_indices) {
    Partition part;
    part.strict = true;
    std::vector<char> mark(lat.t_points.size(), 0);
    for (int one_based : eq1_t_indices) {
        if (one_based < 1 || one_based > static_cast<int>(lat.t_points.size()))
            throw invalid_parameter("partition index " + std::to_string(one_based) +
                                    " out of range 1.." + std::to_string(lat.t_points.size()));
        if (mark[one_based - 1])
            throw invalid_parameter("repeated partition index " + std::to_string(one_based));
        mark[one_based - 1] = 1;
    }
    for (std::size_t i = 0; i < lat.t_points.size(); ++i) {
        if (mark[i])
            part.eq1.push_back(lat.t_points[i]);
        else
            part.neq1.push_back(lat.t_points[i]);
    }
    return part;
}

// # of T_{!=1} points on line i.
inline int k_prime(const IntersectionLattice& lat, const Partition& part, int line) {
    int c = 0;
    for (int idx : lat.per_line.at(line).multiple_points)
        if (part.in_neq1(idx)) ++c;
    return c;
}

// Orders k > 1 dividing n such that every line carries a point whose
// multiplicity is divisible by k. Eigenvalues whose order falls outside this
// set cannot contribute to H^1 of the Milnor fiber, so only these orders
// need certification.
inline std::vector<unsigned> milnor_order_filter(const IntersectionLattice& lat) {
    const unsigned n = static_cast<unsigned>(lat.per_line.size());
    std::vector<unsigned> out;
    for (unsigned k = 2; k <= n; ++k) {
        if (n % k != 0) continue;
        bool all_lines = true;
        for (const auto& pl : lat.per_line) {
            bool has = false;
            for (int idx : pl.points)
                if (lat.points[idx].multiplicity % static_cast<int>(k) == 0) {
                    has = true;
                    break;
                }
            if (!has) {
                all_lines = false;
                break;
            }
        }
        if (all_lines) out.push_back(k);
    }
    return out;
}

// How a local system is specified from the outside: explicit exponents, a
// Milnor order, or a symbolic partition.
struct SystemSpec {
    enum class Kind { exponents, milnor, symbolic };
    Kind kind = Kind::milnor;
    std::optional<LocalSystem> system;  // exponents / milnor
    unsigned milnor_order = 0;          // milnor
    std::vector<int> eq1_indices;       // symbolic, 1-based T-list positions

    static SystemSpec from_exponents(LocalSystem ls) {
        SystemSpec s;
        s.kind = Kind::exponents;
        s.system = std::move(ls);
        return s;
    }
    static SystemSpec from_milnor(unsigned n, unsigned k) {
        SystemSpec s;
        s.kind = Kind::milnor;
        s.milnor_order = k;
        s.system = milnor_system(n, k);
        return s;
    }
    static SystemSpec from_partition(std::vector<int> eq1) {
        SystemSpec s;
        s.kind = Kind::symbolic;
        s.eq1_indices = std::move(eq1);
        return s;
    }

    bool strict() const {
        return kind == Kind::symbolic ? true : system->strict();
    }

    Partition make_partition(const IntersectionLattice& lat) const {
        if (kind == Kind::symbolic) return partition_symbolic(lat, eq1_indices);
        return partition(lat, *system);
    }

    std::string describe() const {
        switch (kind) {
            case Kind::milnor:
                return "milnor:" + std::to_string(milnor_order);
            case Kind::exponents: {
                std::string s = "exponents:";
                for (const Rational& q : system->exponents()) s += " " + geom::to_string(q);
                return s;
            }
            case Kind::symbolic: {
                std::string s = "partition: eq1={";
                for (std::size_t i = 0; i < eq1_indices.size(); ++i) {
                    if (i) s += ",";
                    s += std::to_string(eq1_indices[i]);
                }
                return s + "}";
            }
        }
        return "";
    }
};

}  // namespace arrcert::lsys
