#pragma once

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace deform {

/// Word in the free monoid on {x, y}; the empty word is the identity
/// monomial 1.
using Word = std::string;

inline bool is_valid_word(const Word& w) {
    for (char c : w)
        if (c != 'x' && c != 'y') return false;
    return true;
}

/// Shortlex: shorter first, equal lengths letterwise with x < y.
inline std::strong_ordering shortlex_compare(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    return a.compare(b) <=> 0;
}

struct ShortlexLess {
    bool operator()(const Word& a, const Word& b) const {
        return shortlex_compare(a, b) == std::strong_ordering::less;
    }
};

/// The index-th word in shortlex order (0 -> 1, 1 -> x, 2 -> y, 3 -> xx, ...).
inline Word word_at(std::size_t index) {
    std::size_t len = 0, block = 1, base = 0;
    while (index >= base + block) {
        base += block;
        block <<= 1;
        ++len;
    }
    std::size_t offset = index - base;
    Word w(len, 'x');
    for (std::size_t i = 0; i < len; ++i)
        if (offset >> (len - 1 - i) & 1) w[i] = 'y';
    return w;
}

inline std::vector<Word> shortlex_enumerate(std::size_t count) {
    std::vector<Word> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(word_at(i));
    return out;
}

/// Positive letter weights; the grading of a word is the sum of its letter
/// weights.
struct WeightedGrading {
    int weight_x = 1;
    int weight_y = 1;

    WeightedGrading() = default;
    WeightedGrading(int wx, int wy) : weight_x(wx), weight_y(wy) {
        if (wx < 1 || wy < 1) throw std::invalid_argument("letter weights must be >= 1");
    }
};

inline int weighted_degree(const Word& w, const WeightedGrading& g) {
    int d = 0;
    for (char c : w) d += c == 'x' ? g.weight_x : g.weight_y;
    return d;
}

/// Display form: "1" for the empty word.
inline std::string word_display(const Word& w) { return w.empty() ? "1" : w; }

} // namespace deform
