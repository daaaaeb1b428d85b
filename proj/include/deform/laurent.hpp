#pragma once

#include "deform/numbers.hpp"
#include "deform/polynomial.hpp"
#include "deform/rational_function.hpp"

#include <optional>
#include <stdexcept>
#include <utility>

namespace deform {

/// Finite Laurent polynomial in t: coeffs * t^low with the first and last
/// stored coefficients nonzero (zero = empty coefficients, low 0).
class LaurentPolynomial {
public:
    LaurentPolynomial() : low_(0) {}
    LaurentPolynomial(int low, RatPoly coeffs) : low_(low), coeffs_(std::move(coeffs)) { normalize(); }
    explicit LaurentPolynomial(Rational c) : low_(0), coeffs_(std::move(c)) {}

    static LaurentPolynomial t_power(int k) { return {k, RatPoly(Rational(1))}; }

    bool is_zero() const { return coeffs_.is_zero(); }
    int lowest_exponent() const { return low_; }
    int highest_exponent() const { return low_ + coeffs_.degree(); }
    const RatPoly& coeffs() const { return coeffs_; }

    Rational coeff(int exponent) const {
        int i = exponent - low_;
        if (i < 0) return Rational(0);
        return coeffs_.coeff(static_cast<std::size_t>(i));
    }

    bool operator==(const LaurentPolynomial& o) const {
        return low_ == o.low_ && coeffs_ == o.coeffs_;
    }
    bool operator!=(const LaurentPolynomial& o) const { return !(*this == o); }

    LaurentPolynomial operator-() const { return {low_, -coeffs_}; }
    friend LaurentPolynomial operator+(const LaurentPolynomial& a, const LaurentPolynomial& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        int low = std::min(a.low_, b.low_);
        RatPoly sum = a.coeffs_.shifted(static_cast<std::size_t>(a.low_ - low)) +
                      b.coeffs_.shifted(static_cast<std::size_t>(b.low_ - low));
        return {low, std::move(sum)};
    }
    friend LaurentPolynomial operator-(const LaurentPolynomial& a, const LaurentPolynomial& b) {
        return a + (-b);
    }
    friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        return {a.low_ + b.low_, a.coeffs_ * b.coeffs_};
    }

    RationalFunction to_rational_function() const {
        if (is_zero()) return {};
        if (low_ >= 0) return RationalFunction(coeffs_.shifted(static_cast<std::size_t>(low_)));
        return RationalFunction(coeffs_, RatPoly::monomial(Rational(1), static_cast<std::size_t>(-low_)));
    }

private:
    void normalize() {
        if (coeffs_.is_zero()) {
            low_ = 0;
            return;
        }
        int lo = coeffs_.low_order();
        if (lo > 0) {
            std::vector<Rational> v(coeffs_.coeffs().begin() + lo, coeffs_.coeffs().end());
            coeffs_ = RatPoly(std::move(v));
            low_ += lo;
        }
    }

    int low_;
    RatPoly coeffs_;
};

/// Valuation at t=0 (nullopt = +infinity for zero).
inline std::optional<int> valuation_at_zero(const LaurentPolynomial& p) {
    if (p.is_zero()) return std::nullopt;
    return p.lowest_exponent();
}

/// True if f is a Laurent polynomial, i.e. its reduced denominator is a
/// power of t.
inline bool is_laurent(const RationalFunction& f) {
    const RatPoly& d = f.den();
    return d.low_order() == d.degree();
}

/// Conversion from Q(t); throws if the denominator is not a power of t.
inline LaurentPolynomial to_laurent(const RationalFunction& f) {
    if (f.is_zero()) return {};
    if (!is_laurent(f))
        throw std::invalid_argument("rational function is not a Laurent polynomial");
    return {-f.den().degree(), f.num()};
}

} // namespace deform
