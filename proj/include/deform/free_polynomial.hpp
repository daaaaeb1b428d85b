#pragma once

#include "deform/rational_function.hpp"
#include "deform/words.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace deform {

/// Finite Q(t)-linear combination of words in the free algebra on {x, y}.
/// No zero coefficients are stored; terms are kept in shortlex order.
class FreePolynomial {
public:
    using TermMap = std::map<Word, RationalFunction, ShortlexLess>;

    FreePolynomial() = default;

    static FreePolynomial word(Word w) {
        if (!is_valid_word(w)) throw std::invalid_argument("word over alphabet {x,y} expected");
        FreePolynomial p;
        p.terms_[std::move(w)] = RationalFunction(1);
        return p;
    }
    static FreePolynomial one() { return word(Word()); }
    static FreePolynomial scalar(RationalFunction c) {
        FreePolynomial p;
        if (!c.is_zero()) p.terms_[Word()] = std::move(c);
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    RationalFunction coeff(const Word& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? RationalFunction() : it->second;
    }

    void add_term(const Word& w, const RationalFunction& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            terms_.emplace(w, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    bool operator==(const FreePolynomial& o) const { return terms_ == o.terms_; }
    bool operator!=(const FreePolynomial& o) const { return !(*this == o); }

    FreePolynomial operator-() const {
        FreePolynomial r = *this;
        for (auto& [w, c] : r.terms_) c = -c;
        return r;
    }
    friend FreePolynomial operator+(FreePolynomial a, const FreePolynomial& b) {
        for (const auto& [w, c] : b.terms_) a.add_term(w, c);
        return a;
    }
    friend FreePolynomial operator-(FreePolynomial a, const FreePolynomial& b) {
        for (const auto& [w, c] : b.terms_) a.add_term(w, -c);
        return a;
    }
    FreePolynomial& operator+=(const FreePolynomial& o) { return *this = *this + o; }
    FreePolynomial& operator-=(const FreePolynomial& o) { return *this = *this - o; }

    FreePolynomial scaled(const RationalFunction& c) const {
        FreePolynomial r;
        if (c.is_zero()) return r;
        for (const auto& [w, x] : terms_) r.terms_[w] = x * c;
        return r;
    }

    /// Noncommutative product: words concatenate.
    friend FreePolynomial operator*(const FreePolynomial& a, const FreePolynomial& b) {
        FreePolynomial r;
        for (const auto& [wa, ca] : a.terms_)
            for (const auto& [wb, cb] : b.terms_) r.add_term(wa + wb, ca * cb);
        return r;
    }

    bool has_constant_coefficients() const {
        for (const auto& [w, c] : terms_)
            if (!c.is_constant()) return false;
        return true;
    }
    bool has_polynomial_coefficients() const {
        for (const auto& [w, c] : terms_)
            if (!c.is_polynomial()) return false;
        return true;
    }

    /// Drops coefficient terms of t-degree above `cut`; requires polynomial
    /// coefficients.
    FreePolynomial truncated_t_degree(int cut) const {
        FreePolynomial r;
        for (const auto& [w, c] : terms_) {
            if (!c.is_polynomial())
                throw std::logic_error("truncation requires polynomial coefficients");
            RatPoly p = c.num().truncated(cut);
            if (!p.is_zero()) r.terms_[w] = RationalFunction(std::move(p));
        }
        return r;
    }

    std::size_t max_word_length() const {
        std::size_t m = 0;
        for (const auto& [w, c] : terms_) m = std::max(m, w.size());
        return m;
    }

    int max_weighted_degree(const WeightedGrading& g) const {
        int m = 0;
        for (const auto& [w, c] : terms_) m = std::max(m, weighted_degree(w, g));
        return m;
    }

private:
    TermMap terms_;
};

inline std::string to_string(const FreePolynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : p.terms()) {
        std::string cs = to_string(c);
        // pull a single leading minus out of one-term coefficients
        bool neg = !cs.empty() && cs[0] == '-' && cs.find_first_of("+-", 1) == std::string::npos;
        if (neg) cs = cs.substr(1);
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        if (w.empty()) {
            out += cs;
            continue;
        }
        if (cs == "1") {
            out += w;
            continue;
        }
        bool compound = cs.find_first_of("+- ") != std::string::npos;
        out += compound ? "(" + cs + ")" : cs;
        out += "*";
        out += w;
    }
    return out;
}

/// A finite list of defining relations with rational (t-constant)
/// coefficients.
class Presentation {
public:
    Presentation() = default;
    explicit Presentation(std::vector<FreePolynomial> relations) : relations_(std::move(relations)) {
        for (const auto& r : relations_) {
            if (r.is_zero()) throw std::invalid_argument("zero relation in presentation");
            if (!r.has_constant_coefficients())
                throw std::invalid_argument("presentation relations must have constant coefficients");
        }
    }

    const std::vector<FreePolynomial>& relations() const { return relations_; }
    bool empty() const { return relations_.empty(); }
    std::size_t size() const { return relations_.size(); }

private:
    std::vector<FreePolynomial> relations_;
};

} // namespace deform
