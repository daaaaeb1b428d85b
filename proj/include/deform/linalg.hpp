#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace deform {

/// Dense matrix over an exact field K, row-major.
template <class K>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, K(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = K(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    K& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const K& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
        Matrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a.at(i, k) == K(0)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    r.at(i, j) += a.at(i, k) * b.at(k, j);
            }
        return r;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("matrix sum shape mismatch");
        for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] += b.a_[i];
        return a;
    }
    Matrix scaled(const K& c) const {
        Matrix r = *this;
        for (auto& x : r.a_) x *= c;
        return r;
    }

    std::vector<K> row(std::size_t i) const {
        return std::vector<K>(a_.begin() + static_cast<long>(i * cols_),
                              a_.begin() + static_cast<long>((i + 1) * cols_));
    }

private:
    std::size_t rows_, cols_;
    std::vector<K> a_;
};

/// In-place reduced row echelon form on the first `limit` columns (pivots 1,
/// cleared above and below). Pivot choice is the first nonzero row in column
/// order, so the result is deterministic. Returns the pivot columns.
template <class K>
std::vector<std::size_t> rref_in_place(Matrix<K>& m, std::size_t limit) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < limit && r < m.rows(); ++c) {
        std::size_t sel = m.rows();
        for (std::size_t i = r; i < m.rows(); ++i)
            if (!(m.at(i, c) == K(0))) { sel = i; break; }
        if (sel == m.rows()) continue;
        if (sel != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(r, j));
        K inv = K(1) / m.at(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m.at(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r) continue;
            K f = m.at(i, c);
            if (f == K(0)) continue;
            for (std::size_t j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class K>
std::size_t rank(Matrix<K> m) {
    return rref_in_place(m, m.cols()).size();
}

/// Solves A*x = b for a matrix with independent columns. Returns nullopt when
/// the system is inconsistent; throws if the columns turn out dependent.
template <class K>
std::optional<std::vector<K>> solve_full_column_rank(const Matrix<K>& a, const std::vector<K>& b) {
    if (a.rows() != b.size()) throw std::invalid_argument("solve shape mismatch");
    Matrix<K> aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols()) = b[i];
    }
    auto pivots = rref_in_place(aug, aug.cols());
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
    if (pivots.size() != a.cols())
        throw std::logic_error("solve_full_column_rank: dependent columns");
    std::vector<K> x(a.cols(), K(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, a.cols());
    return x;
}

/// Basis of the right kernel of A, deterministic free-column order.
template <class K>
std::vector<std::vector<K>> kernel_basis(Matrix<K> a) {
    std::size_t n = a.cols();
    auto pivots = rref_in_place(a, n);
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<K>> basis;
    for (std::size_t fc = 0; fc < n; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<K> v(n, K(0));
        v[fc] = K(1);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            if (pivots[r] < fc) v[pivots[r]] = -a.at(r, fc);
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class K>
K determinant(Matrix<K> m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    std::size_t n = m.rows();
    K det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t sel = n;
        for (std::size_t i = c; i < n; ++i)
            if (!(m.at(i, c) == K(0))) { sel = i; break; }
        if (sel == n) return K(0);
        if (sel != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(sel, j), m.at(c, j));
            det = -det;
        }
        det *= m.at(c, c);
        K inv = K(1) / m.at(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            K f = m.at(i, c) * inv;
            if (f == K(0)) continue;
            for (std::size_t j = c; j < n; ++j) m.at(i, j) -= f * m.at(c, j);
        }
    }
    return det;
}

/// Incrementally maintained row space in reduced echelon form. Used for
/// span-closure ranks.
template <class K>
class Echelon {
public:
    explicit Echelon(std::size_t width) : width_(width) {}

    std::size_t rank() const { return rows_.size(); }
    std::size_t width() const { return width_; }

    /// Fully reduces v against the stored rows.
    std::vector<K> reduce(std::vector<K> v) const {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const K& c = v[pivots_[r]];
            if (c == K(0)) continue;
            K f = c;
            for (std::size_t j = 0; j < width_; ++j) v[j] -= f * rows_[r][j];
        }
        return v;
    }

    /// Inserts v if it enlarges the span; returns whether the rank grew.
    bool insert(std::vector<K> v) {
        if (v.size() != width_) throw std::invalid_argument("echelon row width mismatch");
        v = reduce(std::move(v));
        std::size_t p = width_;
        for (std::size_t j = 0; j < width_; ++j)
            if (!(v[j] == K(0))) { p = j; break; }
        if (p == width_) return false;
        K inv = K(1) / v[p];
        for (auto& x : v) x *= inv;
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            K f = rows_[r][p];
            if (f == K(0)) continue;
            for (std::size_t j = 0; j < width_; ++j) rows_[r][j] -= f * v[j];
        }
        std::size_t pos = 0;
        while (pos < pivots_.size() && pivots_[pos] < p) ++pos;
        rows_.insert(rows_.begin() + static_cast<long>(pos), std::move(v));
        pivots_.insert(pivots_.begin() + static_cast<long>(pos), p);
        return true;
    }

    bool contains(std::vector<K> v) const {
        v = reduce(std::move(v));
        for (const auto& x : v)
            if (!(x == K(0))) return false;
        return true;
    }

    const std::vector<std::vector<K>>& rows() const { return rows_; }

private:
    std::size_t width_;
    std::vector<std::vector<K>> rows_;
    std::vector<std::size_t> pivots_;
};

} // namespace deform
