#pragma once

#include "deform/errors.hpp"
#include "deform/fin_algebra.hpp"
#include "deform/laurent.hpp"
#include "deform/linalg.hpp"
#include "deform/polynomial.hpp"
#include "deform/rational_function.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace deform {

/// Polynomial in the quotient-ring generator u with Q(t) coefficients.
using UPoly = Poly<RationalFunction>;

/// Coefficient algebra of one block: a full matrix algebra M_m or an
/// arbitrary structure-constant algebra over Q.
class BlockAlgebra {
public:
    enum class Kind { matrix, table };

    static BlockAlgebra matrix(int size) {
        if (size < 1) throw std::invalid_argument("matrix block size must be positive");
        BlockAlgebra b;
        b.kind_ = Kind::matrix;
        b.matrix_size_ = size;
        b.dim_ = size * size;
        return b;
    }

    static BlockAlgebra table(FinAlgebra algebra) {
        if (!check_associative(algebra).ok)
            throw std::invalid_argument("table block algebra is not associative");
        if (!algebra.identity_is_two_sided())
            throw std::invalid_argument("table block algebra identity is not two-sided");
        BlockAlgebra b;
        b.kind_ = Kind::table;
        b.dim_ = algebra.dim();
        b.table_.emplace(std::move(algebra));
        return b;
    }

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }
    int matrix_size() const { return matrix_size_; }
    const FinAlgebra& table_algebra() const { return *table_; }

    std::vector<Rational> identity_coords() const {
        if (kind_ == Kind::table) return table_->identity();
        std::vector<Rational> id(static_cast<std::size_t>(dim_), Rational(0));
        for (int r = 0; r < matrix_size_; ++r)
            id[static_cast<std::size_t>(r * matrix_size_ + r)] = 1;
        return id;
    }

    /// out += a * b as coordinate vectors of u-polynomials (u-reduction is
    /// the caller's job).
    void accumulate_product(const std::vector<UPoly>& a, const std::vector<UPoly>& b,
                            std::vector<UPoly>& out) const {
        if (kind_ == Kind::matrix) {
            int m = matrix_size_;
            for (int r = 0; r < m; ++r)
                for (int k = 0; k < m; ++k) {
                    const UPoly& left = a[static_cast<std::size_t>(r * m + k)];
                    if (left.is_zero()) continue;
                    for (int c = 0; c < m; ++c) {
                        const UPoly& right = b[static_cast<std::size_t>(k * m + c)];
                        if (right.is_zero()) continue;
                        out[static_cast<std::size_t>(r * m + c)] += left * right;
                    }
                }
            return;
        }
        int n = dim_;
        for (int k = 0; k < n; ++k) {
            if (a[static_cast<std::size_t>(k)].is_zero()) continue;
            for (int m = 0; m < n; ++m) {
                if (b[static_cast<std::size_t>(m)].is_zero()) continue;
                UPoly prod = a[static_cast<std::size_t>(k)] * b[static_cast<std::size_t>(m)];
                for (int i = 0; i < n; ++i) {
                    const Rational& s = table_->constant(k, m, i);
                    if (s != 0) out[static_cast<std::size_t>(i)] += prod.scaled(RationalFunction(s));
                }
            }
        }
    }

    /// Faithful representation of basis element `coord` as a matrix over Q:
    /// the defining matrix unit for matrix blocks, left regular
    /// multiplication for table blocks.
    Matrix<Rational> rep_matrix(int coord) const {
        if (kind_ == Kind::matrix) {
            std::size_t m = static_cast<std::size_t>(matrix_size_);
            Matrix<Rational> e(m, m);
            e.at(static_cast<std::size_t>(coord) / m, static_cast<std::size_t>(coord) % m) = 1;
            return e;
        }
        return table_->left_mult_matrix(table_->basis_vector(coord));
    }

    int rep_size() const { return kind_ == Kind::matrix ? matrix_size_ : dim_; }

private:
    BlockAlgebra() = default;

    Kind kind_ = Kind::matrix;
    int matrix_size_ = 0;
    int dim_ = 0;
    std::optional<FinAlgebra> table_;
};

/// One summand of the ambient algebra: a block algebra tensored with
/// Q(t)[u]/(g). g is monic in u with leading coefficient exactly 1, has
/// Q[t] coefficients, is not divisible by u, and is squarefree over Q(t).
class BlockSpec {
public:
    BlockSpec(BlockAlgebra algebra, UPoly min_poly)
        : algebra_(std::move(algebra)), min_poly_(std::move(min_poly)) {
        if (min_poly_.degree() < 1)
            throw std::invalid_argument("block min_poly must have positive u-degree");
        if (!(min_poly_.leading() == RationalFunction(1)))
            throw std::invalid_argument("block min_poly must have leading u-coefficient 1");
        for (const auto& c : min_poly_.coeffs())
            if (!c.is_polynomial())
                throw std::invalid_argument("block min_poly coefficients must lie in Q[t]");
        if (min_poly_.coeff(0).is_zero())
            throw std::invalid_argument("block min_poly must not be divisible by u");
        if (euclid_gcd(min_poly_, min_poly_.derivative()).degree() != 0)
            throw std::invalid_argument("block min_poly must be squarefree over Q(t)");
        degree_ = min_poly_.degree();
    }

    const BlockAlgebra& algebra() const { return algebra_; }
    const UPoly& min_poly() const { return min_poly_; }
    int quotient_degree() const { return degree_; }
    int flat_dim() const { return algebra_.dim() * degree_; }

    /// g with t evaluated at s, as a u-polynomial over Q. Monic of the same
    /// degree by construction.
    UniPolynomial min_poly_at(const Rational& s) const {
        std::vector<Rational> c;
        c.reserve(min_poly_.coeffs().size());
        for (const auto& coeff : min_poly_.coeffs()) c.push_back(evaluate(coeff, s));
        return UniPolynomial(Var::u, std::move(c));
    }

private:
    BlockAlgebra algebra_;
    UPoly min_poly_;
    int degree_;
};

/// True iff g specialized at t=s is squarefree over Q.
inline bool squarefree_at(const BlockSpec& spec, const Rational& s) {
    return is_squarefree(spec.min_poly_at(s));
}

class AmbientElement;

/// The target algebra: a direct sum of blocks. Cross-block products vanish
/// by construction.
class AmbientAlgebra {
public:
    static std::shared_ptr<const AmbientAlgebra> create(std::vector<BlockSpec> blocks) {
        if (blocks.empty()) throw std::invalid_argument("ambient algebra needs at least one block");
        return std::shared_ptr<const AmbientAlgebra>(new AmbientAlgebra(std::move(blocks)));
    }

    const std::vector<BlockSpec>& blocks() const { return blocks_; }
    std::size_t block_count() const { return blocks_.size(); }

    /// Total dimension n = sum over blocks of dim(B_i) * deg(g_i).
    int dim() const { return n_; }

    int flat_offset(std::size_t block) const { return offsets_[block]; }

private:
    explicit AmbientAlgebra(std::vector<BlockSpec> blocks) : blocks_(std::move(blocks)) {
        n_ = 0;
        for (const auto& b : blocks_) {
            offsets_.push_back(n_);
            n_ += b.flat_dim();
        }
    }

    std::vector<BlockSpec> blocks_;
    std::vector<int> offsets_;
    int n_ = 0;
};

using AmbientAlgebraPtr = std::shared_ptr<const AmbientAlgebra>;

/// Length-n coordinate vector over Q(t): block-major, within a block
/// basis-element-major, within that u-power-major.
using FlatVector = std::vector<RationalFunction>;

/// Element of the ambient algebra: per block, a coordinate vector of
/// u-polynomials reduced mod g.
class AmbientElement {
public:
    AmbientElement(AmbientAlgebraPtr alg, std::vector<std::vector<UPoly>> coords)
        : alg_(std::move(alg)), coords_(std::move(coords)) {
        reduce();
    }

    static AmbientElement zero(const AmbientAlgebraPtr& alg) {
        std::vector<std::vector<UPoly>> c;
        for (const auto& b : alg->blocks())
            c.emplace_back(static_cast<std::size_t>(b.algebra().dim()));
        return AmbientElement(alg, std::move(c));
    }

    static AmbientElement identity(const AmbientAlgebraPtr& alg) {
        AmbientElement e = zero(alg);
        for (std::size_t bi = 0; bi < alg->block_count(); ++bi) {
            auto id = alg->blocks()[bi].algebra().identity_coords();
            for (std::size_t k = 0; k < id.size(); ++k)
                if (id[k] != 0) e.coords_[bi][k] = UPoly(RationalFunction(id[k]));
        }
        return e;
    }

    const AmbientAlgebraPtr& algebra() const { return alg_; }
    const std::vector<std::vector<UPoly>>& coords() const { return coords_; }

    bool is_zero() const {
        for (const auto& block : coords_)
            for (const auto& p : block)
                if (!p.is_zero()) return false;
        return true;
    }

    bool operator==(const AmbientElement& o) const {
        check_same(o);
        return coords_ == o.coords_;
    }
    bool operator!=(const AmbientElement& o) const { return !(*this == o); }

    AmbientElement operator-() const {
        AmbientElement r = *this;
        for (auto& block : r.coords_)
            for (auto& p : block) p = -p;
        return r;
    }
    friend AmbientElement operator+(AmbientElement a, const AmbientElement& b) {
        a.check_same(b);
        for (std::size_t bi = 0; bi < a.coords_.size(); ++bi)
            for (std::size_t k = 0; k < a.coords_[bi].size(); ++k)
                a.coords_[bi][k] += b.coords_[bi][k];
        return a;
    }
    friend AmbientElement operator-(AmbientElement a, const AmbientElement& b) {
        return a + (-b);
    }
    AmbientElement& operator+=(const AmbientElement& o) { return *this = *this + o; }
    AmbientElement& operator-=(const AmbientElement& o) { return *this = *this - o; }

    AmbientElement scaled(const RationalFunction& c) const {
        AmbientElement r = *this;
        for (auto& block : r.coords_)
            for (auto& p : block) p = p.scaled(c);
        return r;
    }

private:
    void check_same(const AmbientElement& o) const {
        if (alg_ != o.alg_) throw std::invalid_argument("mismatched ambient algebras");
    }

    void reduce() {
        if (coords_.size() != alg_->block_count())
            throw std::invalid_argument("ambient element block count mismatch");
        for (std::size_t bi = 0; bi < coords_.size(); ++bi) {
            const BlockSpec& spec = alg_->blocks()[bi];
            if (coords_[bi].size() != static_cast<std::size_t>(spec.algebra().dim()))
                throw std::invalid_argument("ambient element coordinate count mismatch");
            for (auto& p : coords_[bi])
                if (p.degree() >= spec.quotient_degree()) p = p.divmod(spec.min_poly()).second;
        }
    }

    friend AmbientElement ambient_mul(const AmbientElement&, const AmbientElement&);

    AmbientAlgebraPtr alg_;
    std::vector<std::vector<UPoly>> coords_;
};

/// Blockwise product with u-powers reduced mod g; cross-block terms never
/// arise.
inline AmbientElement ambient_mul(const AmbientElement& a, const AmbientElement& b) {
    a.check_same(b);
    AmbientElement out = AmbientElement::zero(a.alg_);
    for (std::size_t bi = 0; bi < a.coords_.size(); ++bi) {
        const BlockSpec& spec = a.alg_->blocks()[bi];
        spec.algebra().accumulate_product(a.coords_[bi], b.coords_[bi], out.coords_[bi]);
        for (auto& p : out.coords_[bi])
            if (p.degree() >= spec.quotient_degree()) p = p.divmod(spec.min_poly()).second;
    }
    return out;
}

/// Linear bijection onto length-n coordinate vectors.
inline FlatVector flatten(const AmbientElement& a) {
    const auto& alg = *a.algebra();
    FlatVector v(static_cast<std::size_t>(alg.dim()));
    std::size_t pos = 0;
    for (std::size_t bi = 0; bi < alg.block_count(); ++bi) {
        int d = alg.blocks()[bi].quotient_degree();
        for (const auto& p : a.coords()[bi])
            for (int k = 0; k < d; ++k) v[pos++] = p.coeff(static_cast<std::size_t>(k));
    }
    return v;
}

inline AmbientElement unflatten(const AmbientAlgebraPtr& alg, const FlatVector& v) {
    if (v.size() != static_cast<std::size_t>(alg->dim()))
        throw std::invalid_argument("flat vector length mismatch");
    std::vector<std::vector<UPoly>> coords;
    std::size_t pos = 0;
    for (const auto& spec : alg->blocks()) {
        std::vector<UPoly> block;
        int d = spec.quotient_degree();
        for (int c = 0; c < spec.algebra().dim(); ++c) {
            std::vector<RationalFunction> coeffs(v.begin() + static_cast<long>(pos),
                                                 v.begin() + static_cast<long>(pos + static_cast<std::size_t>(d)));
            pos += static_cast<std::size_t>(d);
            block.emplace_back(std::move(coeffs));
        }
        coords.push_back(std::move(block));
    }
    return AmbientElement(alg, std::move(coords));
}

/// Companion matrix of a monic polynomial over Q; multiplication by u on
/// Q[u]/(g) in the power basis.
inline Matrix<Rational> companion_matrix(const UniPolynomial& g) {
    if (g.is_zero() || g.leading() != 1)
        throw std::invalid_argument("companion matrix needs a monic polynomial");
    std::size_t d = static_cast<std::size_t>(g.degree());
    Matrix<Rational> c(d, d);
    for (std::size_t i = 0; i + 1 < d; ++i) c.at(i + 1, i) = 1;
    for (std::size_t i = 0; i < d; ++i) c.at(i, d - 1) = -g.coeff(i);
    return c;
}

namespace detail {

inline Matrix<Rational> kronecker(const Matrix<Rational>& a, const Matrix<Rational>& b) {
    Matrix<Rational> k(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a.at(i, j) == 0) continue;
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q)
                    k.at(i * b.rows() + p, j * b.cols() + q) = a.at(i, j) * b.at(p, q);
        }
    return k;
}

} // namespace detail

/// Exact specialization at t=s: per block, a matrix over Q obtained by
/// evaluating coordinates and replacing u with the companion matrix of g_s.
struct SpecializedElement {
    std::vector<Matrix<Rational>> blocks;

    friend SpecializedElement operator*(const SpecializedElement& a, const SpecializedElement& b) {
        SpecializedElement r;
        r.blocks.reserve(a.blocks.size());
        for (std::size_t i = 0; i < a.blocks.size(); ++i) r.blocks.push_back(a.blocks[i] * b.blocks[i]);
        return r;
    }

    std::vector<Rational> flatten_entries() const {
        std::vector<Rational> v;
        for (const auto& m : blocks)
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m.at(i, j));
        return v;
    }
};

inline SpecializedElement specialize(const AmbientElement& a, const Rational& s) {
    const auto& alg = *a.algebra();
    SpecializedElement out;
    for (std::size_t bi = 0; bi < alg.block_count(); ++bi) {
        const BlockSpec& spec = alg.blocks()[bi];
        UniPolynomial gs = spec.min_poly_at(s);
        if (!is_squarefree(gs))
            throw std::domain_error("specialized min_poly has multiple roots at this point");
        Matrix<Rational> comp = companion_matrix(gs);
        std::size_t d = static_cast<std::size_t>(spec.quotient_degree());
        std::size_t size = static_cast<std::size_t>(spec.algebra().rep_size()) * d;
        Matrix<Rational> acc(size, size);
        // powers of the companion matrix, u^0 .. u^(d-1)
        std::vector<Matrix<Rational>> upow;
        upow.push_back(Matrix<Rational>::identity(d));
        for (std::size_t p = 1; p < d; ++p) upow.push_back(upow.back() * comp);
        for (int coord = 0; coord < spec.algebra().dim(); ++coord) {
            const UPoly& poly = a.coords()[bi][static_cast<std::size_t>(coord)];
            if (poly.is_zero()) continue;
            Matrix<Rational> rep = spec.algebra().rep_matrix(coord);
            for (int p = 0; p <= poly.degree(); ++p) {
                Rational value = evaluate(poly.coeff(static_cast<std::size_t>(p)), s);
                if (value == 0) continue;
                acc = acc + detail::kronecker(rep, upow[static_cast<std::size_t>(p)]).scaled(value);
            }
        }
        out.blocks.push_back(std::move(acc));
    }
    return out;
}

} // namespace deform
