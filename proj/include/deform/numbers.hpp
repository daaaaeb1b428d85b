#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <sstream>
#include <string>

namespace deform {

using Int = boost::multiprecision::cpp_int;

/// Exact rational number. boost keeps the canonical form for us:
/// gcd(|num|, den) = 1 and den > 0.
using Rational = boost::multiprecision::cpp_rational;

inline Int rational_num(const Rational& r) { return numerator(r); }
inline Int rational_den(const Rational& r) { return denominator(r); }

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

inline int sign_of(const Rational& r) { return r.sign(); }

inline Rational rational_pow(const Rational& base, long exp) {
    if (exp == 0) return Rational(1);
    Rational b = exp > 0 ? base : Rational(1) / base;
    long e = exp > 0 ? exp : -exp;
    Rational acc(1);
    while (e > 0) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

inline std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

/// Parses "p" or "p/q" with optional leading sign. Returns nullopt on junk.
inline std::optional<Rational> parse_rational(const std::string& text) {
    if (text.empty()) return std::nullopt;
    std::size_t pos = 0;
    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') {
        negative = text[pos] == '-';
        ++pos;
    }
    auto read_digits = [&](Int& out) -> bool {
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) return false;
        out = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            out = out * 10 + (text[pos] - '0');
            ++pos;
        }
        return true;
    };
    Int num;
    if (!read_digits(num)) return std::nullopt;
    Int den = 1;
    if (pos < text.size() && text[pos] == '/') {
        ++pos;
        if (!read_digits(den) || den == 0) return std::nullopt;
    }
    if (pos != text.size()) return std::nullopt;
    Rational r(num, den);
    return negative ? -r : r;
}

} // namespace deform
