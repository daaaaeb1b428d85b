#pragma once

#include "deform/numbers.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace deform {

/// Dense univariate polynomial over a field K, coefficients stored by
/// ascending degree with no trailing zeros (empty vector = zero polynomial).
template <class K>
class Poly {
public:
    Poly() = default;
    explicit Poly(K constant) {
        if (!(constant == K(0))) coeffs_.push_back(std::move(constant));
    }
    explicit Poly(std::vector<K> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<K> coeffs) : coeffs_(coeffs) { trim(); }

    static Poly monomial(K c, std::size_t degree) {
        if (c == K(0)) return Poly();
        std::vector<K> v(degree + 1, K(0));
        v[degree] = std::move(c);
        return Poly(std::move(v));
    }

    bool is_zero() const { return coeffs_.empty(); }
    /// Degree; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    const K& leading() const {
        if (is_zero()) throw std::logic_error("leading coefficient of zero polynomial");
        return coeffs_.back();
    }

    K coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : K(0); }
    const std::vector<K>& coeffs() const { return coeffs_; }

    /// Index of the lowest nonzero coefficient; -1 for zero.
    int low_order() const {
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            if (!(coeffs_[i] == K(0))) return static_cast<int>(i);
        return -1;
    }

    bool operator==(const Poly& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly operator-() const {
        Poly r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    Poly& operator+=(const Poly& o) {
        if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), K(0));
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), K(0));
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        trim();
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<K> v(a.coeffs_.size() + b.coeffs_.size() - 1, K(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == K(0)) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                v[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return Poly(std::move(v));
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly scaled(const K& c) const {
        if (c == K(0)) return Poly();
        Poly r = *this;
        for (auto& x : r.coeffs_) x *= c;
        return r;
    }

    /// Multiplication by X^k.
    Poly shifted(std::size_t k) const {
        if (is_zero()) return Poly();
        std::vector<K> v(coeffs_.size() + k, K(0));
        std::copy(coeffs_.begin(), coeffs_.end(), v.begin() + static_cast<long>(k));
        return Poly(std::move(v));
    }

    K evaluate(const K& x) const {
        K acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Poly derivative() const {
        if (coeffs_.size() <= 1) return Poly();
        std::vector<K> v(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * K(static_cast<int>(i));
        return Poly(std::move(v));
    }

    Poly monic() const {
        if (is_zero()) return Poly();
        K inv = K(1) / leading();
        return scaled(inv);
    }

    /// Euclidean division; requires an invertible leading coefficient.
    std::pair<Poly, Poly> divmod(const Poly& d) const {
        if (d.is_zero()) throw std::invalid_argument("polynomial division by zero");
        Poly rem = *this;
        if (rem.degree() < d.degree()) return {Poly(), rem};
        std::vector<K> quot(static_cast<std::size_t>(rem.degree() - d.degree()) + 1, K(0));
        K lead_inv = K(1) / d.leading();
        while (!rem.is_zero() && rem.degree() >= d.degree()) {
            std::size_t shift = static_cast<std::size_t>(rem.degree() - d.degree());
            K factor = rem.leading() * lead_inv;
            quot[shift] = factor;
            rem -= d.scaled(factor).shifted(shift);
        }
        return {Poly(std::move(quot)), rem};
    }

    /// Exact division; throws if the remainder is nonzero.
    Poly divide_exact(const Poly& d) const {
        auto [q, r] = divmod(d);
        if (!r.is_zero()) throw std::logic_error("inexact polynomial division");
        return q;
    }

    /// Drops all terms of degree > bound.
    Poly truncated(int bound) const {
        if (degree() <= bound) return *this;
        if (bound < 0) return Poly();
        std::vector<K> v(coeffs_.begin(), coeffs_.begin() + bound + 1);
        return Poly(std::move(v));
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == K(0)) coeffs_.pop_back();
    }

    std::vector<K> coeffs_;
};

template <class K>
Poly<K> euclid_gcd(Poly<K> a, Poly<K> b) {
    while (!b.is_zero()) {
        auto r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

using RatPoly = Poly<Rational>;

namespace detail {

/// Integer-primitive rescaling with a positive factor: returns c > 0 and an
/// integer-coefficient polynomial equal to c * p. Sign pattern is preserved.
inline std::pair<Rational, std::vector<Int>> integer_primitive(const RatPoly& p) {
    if (p.is_zero()) return {Rational(1), {}};
    Int den_lcm = 1;
    for (const auto& c : p.coeffs()) {
        Int d = rational_den(c);
        den_lcm = lcm(den_lcm, d);
    }
    std::vector<Int> v;
    v.reserve(p.coeffs().size());
    Int num_gcd = 0;
    for (const auto& c : p.coeffs()) {
        Int x = rational_num(c) * (den_lcm / rational_den(c));
        num_gcd = gcd(num_gcd, x);
        v.push_back(std::move(x));
    }
    if (num_gcd > 1)
        for (auto& x : v) x /= num_gcd;
    return {Rational(den_lcm, num_gcd), std::move(v)};
}

inline int int_poly_degree(const std::vector<Int>& p) { return static_cast<int>(p.size()) - 1; }

inline void int_poly_trim(std::vector<Int>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

/// Pseudo-remainder of a by b (b nonzero). The result equals
/// lc(b)^(deg a - deg b + 1) * a mod b up to the iterated scalings.
inline std::vector<Int> pseudo_remainder(std::vector<Int> a, const std::vector<Int>& b) {
    int db = int_poly_degree(b);
    const Int& lead = b.back();
    while (int_poly_degree(a) >= db) {
        int shift = int_poly_degree(a) - db;
        Int top = a.back();
        for (auto& c : a) c *= lead;
        for (int i = 0; i <= db; ++i) a[static_cast<std::size_t>(i + shift)] -= top * b[static_cast<std::size_t>(i)];
        int_poly_trim(a);
        if (a.empty()) break;
    }
    return a;
}

inline void make_primitive(std::vector<Int>& p) {
    Int g = 0;
    for (const auto& c : p) g = gcd(g, c);
    if (g > 1)
        for (auto& c : p) c /= g;
}

inline RatPoly from_int_poly(const std::vector<Int>& p) {
    std::vector<Rational> v(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) v[i] = Rational(p[i]);
    return RatPoly(std::move(v));
}

} // namespace detail

/// Monic gcd over Q via a primitive pseudo-remainder sequence.
inline RatPoly rat_poly_gcd(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    auto g = detail::integer_primitive(a).second;
    auto h = detail::integer_primitive(b).second;
    if (detail::int_poly_degree(g) < detail::int_poly_degree(h)) std::swap(g, h);
    while (!h.empty()) {
        auto r = detail::pseudo_remainder(g, h);
        detail::make_primitive(r);
        g = std::move(h);
        h = std::move(r);
    }
    return detail::from_int_poly(g).monic();
}

/// Variable tag: the arithmetic tower only uses t (deformation parameter)
/// and u (quotient-ring generator).
enum class Var : unsigned char { t, u };

inline char var_letter(Var v) { return v == Var::t ? 't' : 'u'; }

/// Univariate polynomial over Q carrying its variable tag.
class UniPolynomial {
public:
    UniPolynomial() : var_(Var::t) {}
    explicit UniPolynomial(Var v) : var_(v) {}
    UniPolynomial(Var v, RatPoly p) : var_(v), poly_(std::move(p)) {}
    UniPolynomial(Var v, std::vector<Rational> coeffs) : var_(v), poly_(std::move(coeffs)) {}
    UniPolynomial(Var v, std::initializer_list<Rational> coeffs) : var_(v), poly_(coeffs) {}

    static UniPolynomial constant(Var v, Rational c) { return {v, RatPoly(std::move(c))}; }
    static UniPolynomial variable(Var v) { return {v, RatPoly({Rational(0), Rational(1)})}; }
    static UniPolynomial monomial(Var v, Rational c, std::size_t deg) {
        return {v, RatPoly::monomial(std::move(c), deg)};
    }

    Var var() const { return var_; }
    const RatPoly& poly() const { return poly_; }
    bool is_zero() const { return poly_.is_zero(); }
    int degree() const { return poly_.degree(); }
    Rational coeff(std::size_t i) const { return poly_.coeff(i); }
    const Rational& leading() const { return poly_.leading(); }

    bool operator==(const UniPolynomial& o) const { return var_ == o.var_ && poly_ == o.poly_; }
    bool operator!=(const UniPolynomial& o) const { return !(*this == o); }

    UniPolynomial operator-() const { return {var_, -poly_}; }
    friend UniPolynomial operator+(const UniPolynomial& a, const UniPolynomial& b) {
        a.check_var(b);
        return {a.var_, a.poly_ + b.poly_};
    }
    friend UniPolynomial operator-(const UniPolynomial& a, const UniPolynomial& b) {
        a.check_var(b);
        return {a.var_, a.poly_ - b.poly_};
    }
    friend UniPolynomial operator*(const UniPolynomial& a, const UniPolynomial& b) {
        a.check_var(b);
        return {a.var_, a.poly_ * b.poly_};
    }
    UniPolynomial scaled(const Rational& c) const { return {var_, poly_.scaled(c)}; }
    UniPolynomial monic() const { return {var_, poly_.monic()}; }
    UniPolynomial derivative() const { return {var_, poly_.derivative()}; }
    Rational evaluate(const Rational& x) const { return poly_.evaluate(x); }

    std::pair<UniPolynomial, UniPolynomial> divmod(const UniPolynomial& d) const {
        check_var(d);
        auto [q, r] = poly_.divmod(d.poly_);
        return {UniPolynomial(var_, std::move(q)), UniPolynomial(var_, std::move(r))};
    }

    void check_var(const UniPolynomial& o) const {
        if (var_ != o.var_)
            throw std::invalid_argument("mismatched polynomial variable tags");
    }

private:
    Var var_;
    RatPoly poly_;
};

inline UniPolynomial poly_gcd(const UniPolynomial& a, const UniPolynomial& b) {
    a.check_var(b);
    return {a.var(), rat_poly_gcd(a.poly(), b.poly())};
}

struct BezoutResult {
    UniPolynomial p; ///< cofactor of a
    UniPolynomial q; ///< cofactor of b
    UniPolynomial r; ///< monic gcd, p*a + q*b = r
};

/// Extended Euclid over Q: p*a + q*b = monic gcd(a, b).
inline BezoutResult bezout(const UniPolynomial& a, const UniPolynomial& b) {
    a.check_var(b);
    if (a.is_zero() && b.is_zero()) throw std::invalid_argument("bezout of two zero polynomials");
    Var v = a.var();
    RatPoly r0 = a.poly(), r1 = b.poly();
    RatPoly s0(Rational(1)), s1;
    RatPoly t0, t1(Rational(1));
    while (!r1.is_zero()) {
        auto [q, r2] = r0.divmod(r1);
        RatPoly s2 = s0 - q * s1;
        RatPoly t2 = t0 - q * t1;
        r0 = std::move(r1); r1 = std::move(r2);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    Rational inv = Rational(1) / r0.leading();
    return {UniPolynomial(v, s0.scaled(inv)), UniPolynomial(v, t0.scaled(inv)),
            UniPolynomial(v, r0.scaled(inv))};
}

/// True iff g has no repeated roots, i.e. gcd(g, g') = 1.
inline bool is_squarefree(const UniPolynomial& g) {
    if (g.is_zero()) throw std::invalid_argument("squarefreeness of the zero polynomial");
    if (g.degree() == 0) return true;
    return poly_gcd(g, g.derivative()).degree() == 0;
}

namespace detail {

/// Sturm chain over Q, each element rescaled to an integer-primitive
/// representative by a positive factor (signs preserved).
inline std::vector<RatPoly> sturm_chain(const RatPoly& p) {
    std::vector<RatPoly> chain;
    chain.push_back(from_int_poly(integer_primitive(p).second));
    RatPoly d = p.derivative();
    if (d.is_zero()) return chain;
    chain.push_back(from_int_poly(integer_primitive(d).second));
    while (true) {
        const RatPoly& a = chain[chain.size() - 2];
        const RatPoly& b = chain.back();
        RatPoly rem = a.divmod(b).second;
        if (rem.is_zero()) break;
        rem = from_int_poly(integer_primitive(rem).second);
        chain.push_back(-rem);
    }
    return chain;
}

inline int sturm_variations(const std::vector<RatPoly>& chain, const Rational& x) {
    int variations = 0;
    int prev = 0;
    for (const auto& q : chain) {
        int s = sign_of(q.evaluate(x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++variations;
        prev = s;
    }
    return variations;
}

} // namespace detail

/// Number of distinct real roots of p in the open interval (lo, hi).
/// Requires p nonzero, lo < hi and neither endpoint a root.
inline int sturm_roots_in_interval(const UniPolynomial& p, const Rational& lo, const Rational& hi) {
    if (p.is_zero()) throw std::invalid_argument("Sturm count of the zero polynomial");
    if (!(lo < hi)) throw std::invalid_argument("Sturm interval is empty");
    if (p.evaluate(lo) == 0 || p.evaluate(hi) == 0)
        throw std::invalid_argument("Sturm interval endpoint is a root");
    auto chain = detail::sturm_chain(p.poly());
    return detail::sturm_variations(chain, lo) - detail::sturm_variations(chain, hi);
}

inline std::string to_string(const UniPolynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    char letter = var_letter(p.var());
    for (int i = p.degree(); i >= 0; --i) {
        Rational c = p.coeff(static_cast<std::size_t>(i));
        if (c == 0) continue;
        bool first = out.empty();
        if (!first) out += c > 0 ? " + " : " - ";
        else if (c < 0) out += "-";
        Rational a = abs(c);
        if (i == 0) {
            out += to_string(a);
        } else {
            if (a != 1) {
                out += to_string(a);
                out += "*";
            }
            out += letter;
            if (i != 1) {
                out += "^";
                out += std::to_string(i);
            }
        }
    }
    return out;
}

} // namespace deform
