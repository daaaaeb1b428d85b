#pragma once

#include "deform/free_polynomial.hpp"
#include "deform/numbers.hpp"
#include "deform/words.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace deform {

namespace detail {

/// Term order used for quotient pivots: weighted degree first, then shortlex,
/// largest first.
struct TermGreater {
    WeightedGrading grading;
    bool operator()(const Word& a, const Word& b) const {
        int da = weighted_degree(a, grading), db = weighted_degree(b, grading);
        if (da != db) return da > db;
        return shortlex_compare(a, b) == std::strong_ordering::greater;
    }
};

} // namespace detail

/// Span of words of weighted degree <= bound modulo the two-sided ideal
/// generated by a relation list, computed by sparse linear algebra: every
/// product word*relation*word inside the bound becomes a row; rows are
/// reduced to a triangular basis keyed by leading word.
///
/// The answer is certified exact when
///   (a) two consecutive degree classes contribute no new basis words,
///   (b) every product of two retained basis words stays inside the bound
///       and reduces into the retained span, and
///   (c) the multiplication table induced on the retained words is
///       associative.
/// (a)+(b) make the retained words a spanning set of the full quotient;
/// (b)+(c) make the induced table a genuine algebra the quotient maps onto,
/// so the count is exact. Without the certificate the count is reported as
/// a bound only.
class BoundedQuotient {
public:
    using Row = std::map<Word, Rational, detail::TermGreater>;

    BoundedQuotient(const Presentation& pres, WeightedGrading grading, int degree_bound)
        : grading_(grading), bound_(degree_bound), order_{grading}, pivot_rows_(order_compare()) {
        for (const auto& r : pres.relations())
            if (r.max_weighted_degree(grading_) > bound_)
                throw std::invalid_argument(
                    "degree bound is smaller than the largest relation degree");
        build_words();
        build_rows(pres);
        certify();
    }

    int dimension() const { return static_cast<int>(basis_words_.size()); }
    bool exact() const { return exact_; }

    /// Retained (normal) words, sorted by (weighted degree, shortlex).
    const std::vector<Word>& basis_words() const { return basis_words_; }

    int degree_bound() const { return bound_; }
    const WeightedGrading& grading() const { return grading_; }

    /// Unique representative supported on the retained words. Throws when p
    /// involves words above the bound (those cannot be reduced here).
    FreePolynomial normal_form(const FreePolynomial& p) const {
        // Reduction is Q(t)-linear; rows have rational entries.
        for (const auto& [w, c] : p.terms())
            if (weighted_degree(w, grading_) > bound_)
                throw std::invalid_argument("normal_form: word above the degree bound");
        FreePolynomial result;
        std::map<Word, RationalFunction, ShortlexLess> pending(p.terms().begin(), p.terms().end());
        while (!pending.empty()) {
            // take the largest term in pivot order
            auto it = pending.begin();
            for (auto j = pending.begin(); j != pending.end(); ++j)
                if (order_(j->first, it->first)) it = j;
            Word w = it->first;
            RationalFunction c = it->second;
            pending.erase(it);
            if (c.is_zero()) continue;
            auto pivot = pivot_rows_.find(w);
            if (pivot == pivot_rows_.end()) {
                result.add_term(w, c);
                continue;
            }
            for (const auto& [pw, pc] : pivot->second) {
                if (pw == w) continue;
                auto [jt, inserted] = pending.emplace(pw, RationalFunction());
                jt->second -= c * RationalFunction(pc);
                if (jt->second.is_zero()) pending.erase(jt);
            }
        }
        return result;
    }

private:
    detail::TermGreater order_compare() const { return detail::TermGreater{grading_}; }

    void build_words() {
        // all words of weighted degree <= bound, grouped by degree
        words_by_degree_.assign(static_cast<std::size_t>(bound_) + 1, {});
        grow_word(Word(), 0);
        for (auto& bucket : words_by_degree_) std::sort(bucket.begin(), bucket.end(), ShortlexLess{});
    }

    void grow_word(const Word& w, int degree) {
        words_by_degree_[static_cast<std::size_t>(degree)].push_back(w);
        if (degree + grading_.weight_x <= bound_) grow_word(w + 'x', degree + grading_.weight_x);
        if (degree + grading_.weight_y <= bound_) grow_word(w + 'y', degree + grading_.weight_y);
    }

    Row to_row(const FreePolynomial& p) const {
        Row row(order_compare());
        for (const auto& [w, c] : p.terms()) row[w] = c.constant_value();
        return row;
    }

    void insert_row(Row row) {
        // eliminate pivot-word terms largest-first
        while (!row.empty()) {
            auto lead = row.begin();
            auto pivot = pivot_rows_.find(lead->first);
            if (pivot == pivot_rows_.end()) break;
            Rational f = lead->second;
            row.erase(lead);
            for (const auto& [pw, pc] : pivot->second) {
                if (pw == pivot->first) continue;
                auto [it, inserted] = row.emplace(pw, Rational(0));
                it->second -= f * pc;
                if (it->second == 0) row.erase(it);
            }
        }
        if (row.empty()) return;
        // normalize leading coefficient to 1 and store
        Rational inv = Rational(1) / row.begin()->second;
        if (inv != 1)
            for (auto& [w, c] : row) c *= inv;
        Word lead = row.begin()->first;
        pivot_rows_.emplace(std::move(lead), std::move(row));
    }

    void build_rows(const Presentation& pres) {
        for (const auto& rel : pres.relations()) {
            int rd = rel.max_weighted_degree(grading_);
            for (int dl = 0; dl + rd <= bound_; ++dl) {
                for (const auto& left : words_by_degree_[static_cast<std::size_t>(dl)]) {
                    for (int dr = 0; dl + rd + dr <= bound_; ++dr) {
                        for (const auto& right : words_by_degree_[static_cast<std::size_t>(dr)]) {
                            Row row(order_compare());
                            for (const auto& [w, c] : rel.terms())
                                row[left + w + right] = c.constant_value();
                            insert_row(std::move(row));
                        }
                    }
                }
            }
        }
    }

    void certify() {
        // retained words grouped by degree; (a) needs two consecutive empty
        // classes
        std::vector<int> normal_per_degree(static_cast<std::size_t>(bound_) + 1, 0);
        for (int d = 0; d <= bound_; ++d)
            for (const auto& w : words_by_degree_[static_cast<std::size_t>(d)])
                if (!pivot_rows_.count(w)) {
                    basis_words_.push_back(w);
                    ++normal_per_degree[static_cast<std::size_t>(d)];
                }
        std::stable_sort(basis_words_.begin(), basis_words_.end(), [&](const Word& a, const Word& b) {
            int da = weighted_degree(a, grading_), db = weighted_degree(b, grading_);
            if (da != db) return da < db;
            return shortlex_compare(a, b) == std::strong_ordering::less;
        });

        bool stabilized = false;
        for (int d = 0; d + 1 <= bound_; ++d)
            if (normal_per_degree[static_cast<std::size_t>(d)] == 0 &&
                normal_per_degree[static_cast<std::size_t>(d + 1)] == 0) {
                stabilized = true;
                break;
            }
        if (!stabilized) {
            exact_ = false;
            return;
        }

        // (b): pairwise products of retained words reduce inside the span
        const std::size_t n = basis_words_.size();
        std::map<Word, std::size_t, ShortlexLess> index;
        for (std::size_t i = 0; i < n; ++i) index[basis_words_[i]] = i;
        std::vector<std::vector<std::map<std::size_t, Rational>>> table(
            n, std::vector<std::map<std::size_t, Rational>>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Word prod = basis_words_[i] + basis_words_[j];
                if (weighted_degree(prod, grading_) > bound_) {
                    exact_ = false;
                    return;
                }
                FreePolynomial nf = normal_form(FreePolynomial::word(prod));
                for (const auto& [w, c] : nf.terms())
                    table[i][j][index.at(w)] = c.constant_value();
            }

        // (c): the induced table is associative
        for (std::size_t a = 0; a < n && exact_; ++a)
            for (std::size_t b = 0; b < n && exact_; ++b)
                for (std::size_t c = 0; c < n && exact_; ++c) {
                    std::map<std::size_t, Rational> lhs, rhs;
                    for (const auto& [m, cm] : table[a][b])
                        for (const auto& [i, ci] : table[m][c]) {
                            lhs[i] += cm * ci;
                            if (lhs[i] == 0) lhs.erase(i);
                        }
                    for (const auto& [m, cm] : table[b][c])
                        for (const auto& [i, ci] : table[a][m]) {
                            rhs[i] += cm * ci;
                            if (rhs[i] == 0) rhs.erase(i);
                        }
                    if (lhs != rhs) exact_ = false;
                }
    }

    WeightedGrading grading_;
    int bound_;
    detail::TermGreater order_;
    std::vector<std::vector<Word>> words_by_degree_;
    std::map<Word, Row, detail::TermGreater> pivot_rows_;
    std::vector<Word> basis_words_;
    bool exact_ = true;
};

struct QuotientDimension {
    int dimension;
    bool exact; ///< false: count at the bound only, no closure certificate
};

/// Dimension of words of weighted degree <= degree_bound modulo the two-sided
/// ideal generated by the relations.
inline QuotientDimension quotient_dimension(const Presentation& pres, const WeightedGrading& g,
                                            int degree_bound) {
    BoundedQuotient q(pres, g, degree_bound);
    return {q.dimension(), q.exact()};
}

/// Unique representative of p in the retained-word span of the quotient.
inline FreePolynomial normal_form(const FreePolynomial& p, const Presentation& pres,
                                  const WeightedGrading& g, int degree_bound) {
    BoundedQuotient q(pres, g, degree_bound);
    return q.normal_form(p);
}

} // namespace deform
