#pragma once

#include "deform/linalg.hpp"
#include "deform/numbers.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace deform {

/// Finite-dimensional algebra over Q given by structure constants:
/// d_k * d_m = sum_i constant(k, m, i) * d_i. The representation itself does
/// not force associativity so that defective tables can be loaded and
/// checked.
class FinAlgebra {
public:
    FinAlgebra(int dim, std::vector<Rational> constants, std::vector<Rational> identity)
        : dim_(dim), c_(std::move(constants)), identity_(std::move(identity)) {
        if (dim_ < 1) throw std::invalid_argument("algebra dimension must be positive");
        std::size_t n = static_cast<std::size_t>(dim_);
        if (c_.size() != n * n * n) throw std::invalid_argument("structure constant array size mismatch");
        if (identity_.size() != n) throw std::invalid_argument("identity vector size mismatch");
    }

    static FinAlgebra with_identity_index(int dim, std::vector<Rational> constants, int index) {
        std::vector<Rational> id(static_cast<std::size_t>(dim), Rational(0));
        if (index < 0 || index >= dim) throw std::invalid_argument("identity index out of range");
        id[static_cast<std::size_t>(index)] = 1;
        return FinAlgebra(dim, std::move(constants), std::move(id));
    }

    int dim() const { return dim_; }
    const std::vector<Rational>& identity() const { return identity_; }
    const std::vector<Rational>& constants() const { return c_; }

    const Rational& constant(int k, int m, int i) const {
        return c_[idx(k, m, i)];
    }

    std::vector<Rational> product(const std::vector<Rational>& a, const std::vector<Rational>& b) const {
        std::size_t n = static_cast<std::size_t>(dim_);
        std::vector<Rational> out(n, Rational(0));
        for (std::size_t k = 0; k < n; ++k) {
            if (a[k] == 0) continue;
            for (std::size_t m = 0; m < n; ++m) {
                if (b[m] == 0) continue;
                Rational f = a[k] * b[m];
                for (std::size_t i = 0; i < n; ++i) {
                    const Rational& s = c_[(k * n + m) * n + i];
                    if (s != 0) out[i] += f * s;
                }
            }
        }
        return out;
    }

    std::vector<Rational> basis_vector(int k) const {
        std::vector<Rational> v(static_cast<std::size_t>(dim_), Rational(0));
        v[static_cast<std::size_t>(k)] = 1;
        return v;
    }

    /// Matrix of left multiplication by the element v in the regular
    /// representation.
    Matrix<Rational> left_mult_matrix(const std::vector<Rational>& v) const {
        std::size_t n = static_cast<std::size_t>(dim_);
        Matrix<Rational> L(n, n);
        for (std::size_t k = 0; k < n; ++k) {
            if (v[k] == 0) continue;
            for (std::size_t m = 0; m < n; ++m)
                for (std::size_t i = 0; i < n; ++i)
                    L.at(i, m) += v[k] * c_[(k * n + m) * n + i];
        }
        return L;
    }

    bool identity_is_two_sided() const {
        for (int k = 0; k < dim_; ++k) {
            auto e = basis_vector(k);
            if (product(identity_, e) != e || product(e, identity_) != e) return false;
        }
        return true;
    }

private:
    std::size_t idx(int k, int m, int i) const {
        std::size_t n = static_cast<std::size_t>(dim_);
        return (static_cast<std::size_t>(k) * n + static_cast<std::size_t>(m)) * n +
               static_cast<std::size_t>(i);
    }

    int dim_;
    std::vector<Rational> c_;
    std::vector<Rational> identity_;
};

struct AssociativityCheck {
    bool ok = true;
    int a = -1, b = -1, c = -1; ///< first failing triple when !ok

    explicit operator bool() const { return ok; }
};

/// Exhaustive (a*b)*c = a*(b*c) scan over basis triples; bilinearity extends
/// the identity to the whole algebra.
inline AssociativityCheck check_associative(const FinAlgebra& A) {
    int n = A.dim();
    for (int a = 0; a < n; ++a) {
        auto ea = A.basis_vector(a);
        for (int b = 0; b < n; ++b) {
            auto ab = A.product(ea, A.basis_vector(b));
            for (int c = 0; c < n; ++c) {
                auto lhs = A.product(ab, A.basis_vector(c));
                auto rhs = A.product(ea, A.product(A.basis_vector(b), A.basis_vector(c)));
                if (lhs != rhs) return {false, a, b, c};
            }
        }
    }
    return {};
}

/// Gram matrix T_ij = trace of left multiplication by d_i * d_j.
inline Matrix<Rational> trace_form(const FinAlgebra& A) {
    std::size_t n = static_cast<std::size_t>(A.dim());
    std::vector<Rational> tr(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a = 0; a < n; ++a)
            tr[i] += A.constant(static_cast<int>(i), static_cast<int>(a), static_cast<int>(a));
    Matrix<Rational> T(n, n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t m = 0; m < n; ++m)
            for (std::size_t i = 0; i < n; ++i)
                T.at(k, m) += A.constant(static_cast<int>(k), static_cast<int>(m), static_cast<int>(i)) * tr[i];
    return T;
}

/// Kernel of the trace form = Jacobson radical (characteristic zero). The
/// result is verified to be a two-sided nilpotent ideal; failure of that
/// verification would contradict the criterion and raises logic_error.
inline std::vector<std::vector<Rational>> radical(const FinAlgebra& A) {
    auto basis = kernel_basis(trace_form(A));
    std::size_t n = static_cast<std::size_t>(A.dim());
    Echelon<Rational> span(n);
    for (const auto& v : basis) span.insert(v);
    for (const auto& v : basis)
        for (int k = 0; k < A.dim(); ++k) {
            auto e = A.basis_vector(k);
            if (!span.contains(A.product(v, e)) || !span.contains(A.product(e, v)))
                throw std::logic_error("radical candidate is not a two-sided ideal");
        }
    // nilpotency: powers of the span must vanish within dim steps
    std::vector<std::vector<Rational>> power = basis;
    for (int step = 0; step < A.dim() && !power.empty(); ++step) {
        Echelon<Rational> next(n);
        std::vector<std::vector<Rational>> next_basis;
        for (const auto& a : power)
            for (const auto& b : basis) {
                auto p = A.product(a, b);
                if (next.insert(p)) next_basis.push_back(p);
            }
        power = std::move(next_basis);
    }
    if (!power.empty()) throw std::logic_error("radical candidate is not nilpotent");
    return basis;
}

/// Solution space of [z, d_k] = 0 for all k.
inline std::vector<std::vector<Rational>> center(const FinAlgebra& A) {
    std::size_t n = static_cast<std::size_t>(A.dim());
    Matrix<Rational> sys(n * n, n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t m = 0; m < n; ++m)
                sys.at(k * n + i, m) = A.constant(static_cast<int>(m), static_cast<int>(k), static_cast<int>(i)) -
                                       A.constant(static_cast<int>(k), static_cast<int>(m), static_cast<int>(i));
    return kernel_basis(sys);
}

struct StructureReport {
    int dim = 0;
    int radical_dim = 0;
    int center_dim = 0;
    bool semisimple = false;
    /// Candidate multisets of matrix-block sizes over an algebraically closed
    /// field, descending within each candidate; meaningful when semisimple.
    std::vector<std::vector<int>> complex_shapes;

    bool shape_unique() const { return complex_shapes.size() == 1; }
};

namespace detail {

inline void enumerate_square_partitions(int remaining, int parts_left, int max_part,
                                        std::vector<int>& current,
                                        std::vector<std::vector<int>>& out) {
    if (parts_left == 0) {
        if (remaining == 0) out.push_back(current);
        return;
    }
    for (int m = max_part; m >= 1; --m) {
        int sq = m * m;
        if (sq > remaining) continue;
        if (remaining - sq > (parts_left - 1) * sq) continue; // remaining parts are <= m
        if (remaining - sq < parts_left - 1) continue;        // each part contributes >= 1
        current.push_back(m);
        enumerate_square_partitions(remaining - sq, parts_left - 1, m, current, out);
        current.pop_back();
    }
}

} // namespace detail

/// All multisets {m_1 >= ... >= m_c} with sum of squares = dim and exactly
/// c = blocks parts.
inline std::vector<std::vector<int>> square_partitions(int dim, int blocks) {
    std::vector<std::vector<int>> out;
    std::vector<int> current;
    int max_part = 1;
    while ((max_part + 1) * (max_part + 1) <= dim) ++max_part;
    detail::enumerate_square_partitions(dim, blocks, max_part, current, out);
    return out;
}

/// Dimension, radical, center, semisimplicity, and the block shapes over an
/// algebraically closed field consistent with (dim, center_dim). For a
/// semisimple algebra in characteristic zero the center is etale, so its
/// dimension equals the number of blocks after extending scalars.
inline StructureReport structure_report(const FinAlgebra& A) {
    StructureReport r;
    r.dim = A.dim();
    r.radical_dim = static_cast<int>(radical(A).size());
    r.center_dim = static_cast<int>(center(A).size());
    r.semisimple = r.radical_dim == 0;
    if (r.semisimple) r.complex_shapes = square_partitions(r.dim, r.center_dim);
    return r;
}

/// Dimension of the smallest unital subalgebra containing gens: closure of
/// {1} under right multiplication by the generators.
inline int generated_subalgebra_dim(const FinAlgebra& A,
                                    const std::vector<std::vector<Rational>>& gens) {
    std::size_t n = static_cast<std::size_t>(A.dim());
    Echelon<Rational> span(n);
    std::vector<std::vector<Rational>> worklist;
    if (span.insert(A.identity())) worklist.push_back(A.identity());
    for (const auto& g : gens)
        if (span.insert(g)) worklist.push_back(g);
    while (!worklist.empty()) {
        auto v = std::move(worklist.back());
        worklist.pop_back();
        for (const auto& g : gens) {
            auto p = A.product(v, g);
            if (span.insert(p)) worklist.push_back(std::move(p));
        }
    }
    return static_cast<int>(span.rank());
}

/// Structure constants of the full matrix algebra M_m(Q) in the matrix-unit
/// basis E_{rc}, basis index r*m + c.
inline FinAlgebra matrix_algebra_table(int m) {
    int n = m * m;
    std::size_t ns = static_cast<std::size_t>(n);
    std::vector<Rational> c(ns * ns * ns, Rational(0));
    for (int r1 = 0; r1 < m; ++r1)
        for (int c1 = 0; c1 < m; ++c1)
            for (int r2 = 0; r2 < m; ++r2)
                for (int c2 = 0; c2 < m; ++c2) {
                    if (c1 != r2) continue;
                    int k = r1 * m + c1, l = r2 * m + c2, i = r1 * m + c2;
                    c[(static_cast<std::size_t>(k) * ns + static_cast<std::size_t>(l)) * ns +
                      static_cast<std::size_t>(i)] = 1;
                }
    std::vector<Rational> id(ns, Rational(0));
    for (int r = 0; r < m; ++r) id[static_cast<std::size_t>(r * m + r)] = 1;
    return FinAlgebra(n, std::move(c), std::move(id));
}

} // namespace deform
