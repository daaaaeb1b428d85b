#pragma once

#include "deform/errors.hpp"
#include "deform/numbers.hpp"
#include "deform/polynomial.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace deform {

/// Element of Q(t) in canonical form: denominator monic, gcd(num, den) = 1,
/// zero represented as 0/1. This is the exact stand-in for power-series
/// coefficients: a value is series-like at t=0 iff it has no pole there.
class RationalFunction {
public:
    RationalFunction() : num_(), den_(Rational(1)) {}
    RationalFunction(int c) : num_(Rational(c)), den_(Rational(1)) {}
    RationalFunction(Rational c) : num_(std::move(c)), den_(Rational(1)) {}
    explicit RationalFunction(RatPoly num) : num_(std::move(num)), den_(Rational(1)) {}
    RationalFunction(RatPoly num, RatPoly den) : num_(std::move(num)), den_(std::move(den)) {
        normalize();
    }

    static RationalFunction t_power(int k) {
        if (k >= 0) return RationalFunction(RatPoly::monomial(Rational(1), static_cast<std::size_t>(k)));
        return RationalFunction(RatPoly(Rational(1)),
                                RatPoly::monomial(Rational(1), static_cast<std::size_t>(-k)));
    }

    const RatPoly& num() const { return num_; }
    const RatPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

    Rational constant_value() const {
        if (!is_constant()) throw std::logic_error("rational function is not a constant");
        return num_.coeff(0);
    }

    bool operator==(const RationalFunction& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RationalFunction& o) const { return !(*this == o); }

    RationalFunction operator-() const {
        RationalFunction r = *this;
        r.num_ = -r.num_;
        return r;
    }
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        return a + (-b);
    }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        if (a.is_zero() || b.is_zero()) return RationalFunction();
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) throw std::domain_error("division by the zero rational function");
        if (a.is_zero()) return RationalFunction();
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }
    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
    RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

private:
    void normalize() {
        if (den_.is_zero()) throw std::invalid_argument("rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = RatPoly(Rational(1));
            return;
        }
        RatPoly g = rat_poly_gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = num_.divide_exact(g);
            den_ = den_.divide_exact(g);
        }
        Rational lead = den_.leading();
        if (lead != 1) {
            Rational inv = Rational(1) / lead;
            num_ = num_.scaled(inv);
            den_ = den_.scaled(inv);
        }
    }

    RatPoly num_;
    RatPoly den_;
};

/// Order of vanishing at t=0; nullopt encodes +infinity (the zero function).
inline std::optional<int> valuation_at_zero(const RationalFunction& f) {
    if (f.is_zero()) return std::nullopt;
    return f.num().low_order() - f.den().low_order();
}

/// Coefficient of t^k in the power-series expansion at 0. Requires no pole at 0.
inline Rational taylor_coefficient(const RationalFunction& f, int k) {
    if (k < 0) throw std::invalid_argument("negative Taylor index");
    if (f.is_zero()) return Rational(0);
    auto val = valuation_at_zero(f);
    if (val && *val < 0) throw PoleError("Taylor expansion at a pole of the function");
    // den(0) != 0 after removing common t powers; here val >= 0 forces den(0) != 0
    // because the fraction is reduced.
    Rational d0 = f.den().coeff(0);
    if (d0 == 0) throw PoleError("Taylor expansion at a pole of the function");
    std::vector<Rational> series(static_cast<std::size_t>(k) + 1);
    for (int i = 0; i <= k; ++i) {
        Rational acc = f.num().coeff(static_cast<std::size_t>(i));
        for (int j = 1; j <= i; ++j)
            acc -= f.den().coeff(static_cast<std::size_t>(j)) * series[static_cast<std::size_t>(i - j)];
        series[static_cast<std::size_t>(i)] = acc / d0;
    }
    return series[static_cast<std::size_t>(k)];
}

/// Exact value f(s); throws PoleError at poles ("s outside the certified
/// interval" for callers).
inline Rational evaluate(const RationalFunction& f, const Rational& s) {
    Rational d = f.den().evaluate(s);
    if (d == 0) throw PoleError("evaluation at a pole of the function");
    return f.num().evaluate(s) / d;
}

/// True if f has no pole at t=0 (zero counts as pole-free).
inline bool pole_free_at_zero(const RationalFunction& f) {
    auto v = valuation_at_zero(f);
    return !v || *v >= 0;
}

inline std::string to_string(const RationalFunction& f) {
    UniPolynomial num(Var::t, f.num());
    if (f.is_polynomial()) return to_string(num);
    return "(" + to_string(num) + ")/(" + to_string(UniPolynomial(Var::t, f.den())) + ")";
}

} // namespace deform
