#pragma once

#include <gmpxx.h>

#include <string>

#include "arrcert/errors.hpp"

namespace arrcert::geom {

// All rational data in the library is exact. GMP keeps values canonical
// (positive denominator, coprime numerator/denominator) through arithmetic.
using Integer = mpz_class;
using Rational = mpq_class;

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

// Largest integer <= q.
inline Integer floor_int(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

// q - floor(q), always in [0, 1).
inline Rational frac_mod1(const Rational& q) {
    Rational f = q - Rational(floor_int(q));
    f.canonicalize();
    return f;
}

inline std::string to_string(const Rational& q) {
    return q.get_str();
}

// Accepts "p", "-p", "p/q" with q > 0 after canonicalization.
inline Rational parse_rational(const std::string& text) {
    Rational q;
    if (q.set_str(text, 10) != 0)
        throw parse_error("malformed rational '" + text + "'");
    if (q.get_den() == 0) throw parse_error("zero denominator in '" + text + "'");
    q.canonicalize();
    return q;
}

}  // namespace arrcert::geom
