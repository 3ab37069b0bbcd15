#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "arrcert/errors.hpp"
#include "arrcert/rational.hpp"

namespace arrcert::geom {

namespace detail {

// Dense univariate polynomials, index = degree.

inline void trim(std::vector<Rational>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int degree_of(const std::vector<Rational>& p) {
    return static_cast<int>(p.size()) - 1;  // -1 for the zero polynomial
}

// Quotient and remainder over Q[x]; divisor must be nonzero.
inline std::pair<std::vector<Rational>, std::vector<Rational>> divmod(
    std::vector<Rational> num, const std::vector<Rational>& den) {
    trim(num);
    if (den.empty()) throw division_by_zero("polynomial division by zero");
    const int dd = degree_of(den);
    std::vector<Rational> quot;
    if (degree_of(num) >= dd) quot.assign(num.size() - den.size() + 1, Rational(0));
    const Rational& lead = den.back();
    while (degree_of(num) >= dd) {
        const int shift = degree_of(num) - dd;
        Rational factor = num.back() / lead;
        quot[shift] = factor;
        for (int i = 0; i <= dd; ++i) num[shift + i] -= factor * den[i];
        trim(num);
    }
    return {std::move(quot), std::move(num)};
}

// Exact division of integer polynomials by a monic divisor.
inline std::vector<Integer> exact_div_monic(std::vector<Integer> num,
                                            const std::vector<Integer>& den) {
    const int dd = static_cast<int>(den.size()) - 1;
    const int dn = static_cast<int>(num.size()) - 1;
    std::vector<Integer> quot(dn - dd + 1);
    for (int shift = dn - dd; shift >= 0; --shift) {
        Integer factor = num[shift + dd];
        quot[shift] = factor;
        if (factor == 0) continue;
        for (int i = 0; i <= dd; ++i) num[shift + i] -= factor * den[i];
    }
    for (const Integer& c : num)
        if (c != 0) throw error("non-exact polynomial division");
    return quot;
}

}  // namespace detail

// Coefficients of the k-th cyclotomic polynomial, index = degree, monic.
// Computed by dividing x^k - 1 by the cyclotomic polynomials of the proper
// divisors of k.
inline std::vector<Integer> cyclotomic_polynomial(unsigned k) {
    if (k < 1) throw invalid_parameter("cyclotomic order must be >= 1");
    std::vector<Integer> p(k + 1);
    p[k] = 1;
    p[0] = -1;
    for (unsigned d = 1; d < k; ++d)
        if (k % d == 0) p = detail::exact_div_monic(std::move(p), cyclotomic_polynomial(d));
    return p;
}

// Shared per-order data: Phi_k and the reduction rows used to fold products
// back below deg Phi_k.
struct FieldData {
    unsigned order = 1;
    std::size_t degree = 1;                 // deg Phi_k
    std::vector<Integer> phi;               // monic, length degree + 1
    std::vector<std::vector<Rational>> red; // red[j] = x^(degree+j) mod Phi_k
};

// Field data is built on demand and cached for the lifetime of the process,
// so raw pointers into the cache stay valid.
inline const FieldData* field_data(unsigned order) {
    static std::map<unsigned, std::unique_ptr<FieldData>> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second.get();

    auto data = std::make_unique<FieldData>();
    data->order = order;
    data->phi = cyclotomic_polynomial(order);
    data->degree = data->phi.size() - 1;
    const std::size_t n = data->degree;
    // x^n = -(phi_0 + phi_1 x + ... + phi_{n-1} x^{n-1}); shifting by x gives
    // the rest. Products of two reduced elements need exponents up to 2n - 2.
    if (n >= 2) {
        std::vector<Rational> rem(n);
        for (std::size_t i = 0; i < n; ++i) rem[i] = Rational(-data->phi[i]);
        data->red.reserve(n - 1);
        data->red.push_back(rem);
        for (std::size_t j = 1; j + 1 < n; ++j) {
            std::vector<Rational> next(n, Rational(0));
            Rational top = rem[n - 1];
            for (std::size_t i = n - 1; i >= 1; --i) next[i] = rem[i - 1];
            if (top != 0)
                for (std::size_t i = 0; i < n; ++i) next[i] -= top * Rational(data->phi[i]);
            rem = std::move(next);
            data->red.push_back(rem);
        }
    }
    const FieldData* raw = data.get();
    cache.emplace(order, std::move(data));
    return raw;
}

// An element of Q(zeta_k), stored as the unique residue mod Phi_k. Equality
// is coefficient-wise; the zero test is exact. Mixing distinct orders is an
// error, except that plain rationals (order 1) embed into any field.
class Cyclotomic {
  public:
    Cyclotomic() : f_(field_data(1)), c_(1, Rational(0)) {}

    explicit Cyclotomic(const Rational& q) : f_(field_data(1)), c_(1, q) {}
    explicit Cyclotomic(long v) : Cyclotomic(Rational(v)) {}

    static Cyclotomic zero(unsigned order) {
        return Cyclotomic(field_data(order), std::vector<Rational>(field_data(order)->degree, Rational(0)));
    }
    static Cyclotomic one(unsigned order) {
        Cyclotomic r = zero(order);
        r.c_[0] = 1;
        return r;
    }
    static Cyclotomic from_rational(const Rational& q, unsigned order) {
        Cyclotomic r = zero(order);
        r.c_[0] = q;
        return r;
    }
    static Cyclotomic from_coeffs(unsigned order, std::vector<Rational> coeffs) {
        const FieldData* f = field_data(order);
        if (coeffs.size() != f->degree)
            throw invalid_parameter("coefficient vector length must equal deg Phi_k");
        return Cyclotomic(f, std::move(coeffs));
    }
    // zeta_k as a field element (i.e. x reduced mod Phi_k).
    static Cyclotomic zeta(unsigned order) {
        const FieldData* f = field_data(order);
        std::vector<Rational> c(f->degree, Rational(0));
        if (f->degree >= 2) {
            c[1] = 1;
        } else {
            // deg Phi_k = 1: x = -phi_0.
            c[0] = Rational(-f->phi[0]);
        }
        return Cyclotomic(f, std::move(c));
    }
    static Cyclotomic zeta_pow(unsigned order, long e) {
        Cyclotomic z = zeta(order);
        long k = ((e % static_cast<long>(order)) + order) % order;
        Cyclotomic r = one(order);
        for (long i = 0; i < k; ++i) r *= z;
        return r;
    }

    unsigned order() const { return f_->order; }
    std::size_t degree() const { return f_->degree; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const Rational& q : c_)
            if (q != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }
    // Only valid when is_rational().
    const Rational& rational_part() const { return c_[0]; }

    Cyclotomic operator-() const {
        Cyclotomic r = *this;
        for (Rational& q : r.c_) q = -q;
        return r;
    }

    Cyclotomic& operator+=(const Cyclotomic& rhs) {
        auto [a, b] = unify(*this, rhs);
        for (std::size_t i = 0; i < b.c_.size(); ++i) a.c_[i] += b.c_[i];
        *this = std::move(a);
        return *this;
    }
    Cyclotomic& operator-=(const Cyclotomic& rhs) {
        auto [a, b] = unify(*this, rhs);
        for (std::size_t i = 0; i < b.c_.size(); ++i) a.c_[i] -= b.c_[i];
        *this = std::move(a);
        return *this;
    }
    Cyclotomic& operator*=(const Cyclotomic& rhs) {
        auto [a, b] = unify(*this, rhs);
        const std::size_t n = a.f_->degree;
        if (n == 1) {
            a.c_[0] *= b.c_[0];
            *this = std::move(a);
            return *this;
        }
        std::vector<Rational> conv(2 * n - 1, Rational(0));
        for (std::size_t i = 0; i < n; ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (b.c_[j] == 0) continue;
                conv[i + j] += a.c_[i] * b.c_[j];
            }
        }
        std::vector<Rational> out(conv.begin(), conv.begin() + n);
        for (std::size_t j = 0; j + 1 < n; ++j) {
            const Rational& top = conv[n + j];
            if (top == 0) continue;
            const std::vector<Rational>& row = a.f_->red[j];
            for (std::size_t i = 0; i < n; ++i)
                if (row[i] != 0) out[i] += top * row[i];
        }
        a.c_ = std::move(out);
        *this = std::move(a);
        return *this;
    }
    Cyclotomic& operator/=(const Cyclotomic& rhs) { return *this *= rhs.inverse(); }

    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
    friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }

    // Multiplicative inverse via the extended Euclidean algorithm on
    // (element, Phi_k) in Q[x].
    Cyclotomic inverse() const {
        if (is_zero()) throw division_by_zero("inverse of zero field element");
        const std::size_t n = f_->degree;
        if (n == 1) return Cyclotomic(f_, {Rational(1) / c_[0]});
        std::vector<Rational> r0(f_->phi.size());
        for (std::size_t i = 0; i < r0.size(); ++i) r0[i] = Rational(f_->phi[i]);
        std::vector<Rational> r1 = c_;
        detail::trim(r1);
        std::vector<Rational> t0, t1{Rational(1)};
        while (detail::degree_of(r1) > 0) {
            auto [q, r] = detail::divmod(std::move(r0), r1);
            r0 = std::move(r1);
            r1 = std::move(r);
            // t2 = t0 - q * t1
            std::vector<Rational> qt(q.empty() || t1.empty() ? 0 : q.size() + t1.size() - 1,
                                     Rational(0));
            for (std::size_t i = 0; i < q.size(); ++i)
                for (std::size_t j = 0; j < t1.size(); ++j) qt[i + j] += q[i] * t1[j];
            std::vector<Rational> t2 = t0;
            if (t2.size() < qt.size()) t2.resize(qt.size(), Rational(0));
            for (std::size_t i = 0; i < qt.size(); ++i) t2[i] -= qt[i];
            detail::trim(t2);
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        if (r1.empty()) throw error("element shares a factor with Phi_k");
        const Rational g = r1[0];
        std::vector<Rational> inv(n, Rational(0));
        for (std::size_t i = 0; i < t1.size() && i < n; ++i) inv[i] = t1[i] / g;
        return Cyclotomic(f_, std::move(inv));
    }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.f_ == b.f_) return a.c_ == b.c_;
        auto [x, y] = unify(a, b);
        return x.c_ == y.c_;
    }
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

    // Deterministic total order: by field order, then lexicographic on the
    // coefficient sequence. Used only to fix output orderings.
    friend bool operator<(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.f_->order != b.f_->order) return a.f_->order < b.f_->order;
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            int c = cmp(a.c_[i], b.c_[i]);
            if (c != 0) return c < 0;
        }
        return false;
    }

    // Comma-joined rational coefficients; also the scalar syntax of the
    // arrangement file format.
    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) s += ',';
            s += c_[i].get_str();
        }
        return s;
    }

  private:
    Cyclotomic(const FieldData* f, std::vector<Rational> c) : f_(f), c_(std::move(c)) {}

    static std::pair<Cyclotomic, Cyclotomic> unify(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.f_ == b.f_) return {a, b};
        if (a.f_->order == 1) return {from_rational(a.c_[0], b.f_->order), b};
        if (b.f_->order == 1) return {a, from_rational(b.c_[0], a.f_->order)};
        throw field_mismatch("mixed cyclotomic orders " + std::to_string(a.f_->order) +
                             " and " + std::to_string(b.f_->order));
    }

    const FieldData* f_;
    std::vector<Rational> c_;
};

inline Cyclotomic field_inverse(const Cyclotomic& a) { return a.inverse(); }

// Numeric image under the standard embedding zeta_k -> exp(2 pi i / k).
// Only safe as a filter: a nonzero image proves the element nonzero; a tiny
// image proves nothing and needs the exact test.
inline std::complex<double> to_complex(const Cyclotomic& x) {
    const double two_pi = 6.283185307179586476925286766559;
    std::complex<double> zeta = std::polar(1.0, two_pi / static_cast<double>(x.order()));
    std::complex<double> s(0.0, 0.0);
    std::complex<double> pw(1.0, 0.0);
    for (const Rational& q : x.coeffs()) {
        s += q.get_d() * pw;
        pw *= zeta;
    }
    return s;
}

}  // namespace arrcert::geom
