#pragma once

#include "deform/errors.hpp"
#include "deform/fin_algebra.hpp"
#include "deform/image_basis.hpp"

#include <array>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace deform {

/// The t-parametrized multiplication table: d_k * d_m = sum_i c(k,m,i) d_i
/// with every c pole-free at t=0. The constant part at t=0 is the special
/// fiber; the tail is the deformation direction.
class DeformationTable {
public:
    /// Validated construction: entries pole-free at 0 and the identity laws
    /// c(0,m,i) = delta, c(k,0,i) = delta hold as rational functions.
    static DeformationTable checked(int n, std::vector<RationalFunction> c) {
        DeformationTable t(n, std::move(c));
        auto bad = t.poles_at_zero();
        if (!bad.empty()) {
            std::ostringstream msg;
            msg << "table entry (" << bad[0][0] << "," << bad[0][1] << "," << bad[0][2]
                << ") has a pole at t=0";
            throw std::invalid_argument(msg.str());
        }
        if (!t.identity_laws_hold())
            throw std::invalid_argument("table violates the identity-row laws");
        return t;
    }

    /// Raw construction for externally loaded tables; verification is the
    /// caller's job.
    static DeformationTable unchecked(int n, std::vector<RationalFunction> c) {
        return DeformationTable(n, std::move(c));
    }

    int n() const { return n_; }

    const RationalFunction& entry(int k, int m, int i) const { return c_[idx(k, m, i)]; }

    /// Constant part at t=0 (the special-fiber coefficient).
    Rational constant_part(int k, int m, int i) const {
        return taylor_coefficient(entry(k, m, i), 0);
    }

    /// Tail part: (c - c(0)) / t, pole-free at 0.
    RationalFunction tail_part(int k, int m, int i) const {
        RationalFunction diff = entry(k, m, i) - RationalFunction(constant_part(k, m, i));
        return diff / RationalFunction::t_power(1);
    }

    std::vector<std::array<int, 3>> poles_at_zero() const {
        std::vector<std::array<int, 3>> bad;
        for (int k = 0; k < n_; ++k)
            for (int m = 0; m < n_; ++m)
                for (int i = 0; i < n_; ++i)
                    if (!pole_free_at_zero(entry(k, m, i))) bad.push_back({k, m, i});
        return bad;
    }

    bool identity_laws_hold() const {
        for (int k = 0; k < n_; ++k)
            for (int i = 0; i < n_; ++i) {
                RationalFunction expect((Rational(k == i ? 1 : 0)));
                if (entry(0, k, i) != expect || entry(k, 0, i) != expect) return false;
            }
        return true;
    }

private:
    DeformationTable(int n, std::vector<RationalFunction> c) : n_(n), c_(std::move(c)) {
        if (n_ < 1) throw std::invalid_argument("table dimension must be positive");
        std::size_t ns = static_cast<std::size_t>(n_);
        if (c_.size() != ns * ns * ns)
            throw std::invalid_argument("table entry array size mismatch");
    }

    std::size_t idx(int k, int m, int i) const {
        std::size_t ns = static_cast<std::size_t>(n_);
        return (static_cast<std::size_t>(k) * ns + static_cast<std::size_t>(m)) * ns +
               static_cast<std::size_t>(i);
    }

    int n_;
    std::vector<RationalFunction> c_;
};

/// Structure constants of the deformation: express every product of basis
/// images back in the basis. Every coefficient must be pole-free at 0; a
/// pole would contradict the closure certificate and is reported with its
/// triple.
inline DeformationTable structure_constants(const ImageBasis& basis) {
    const int n = static_cast<int>(basis.size());
    std::size_t ns = static_cast<std::size_t>(n);
    std::vector<RationalFunction> c(ns * ns * ns);
    for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m) {
            AmbientElement prod = ambient_mul(basis.entry(static_cast<std::size_t>(k)).element,
                                              basis.entry(static_cast<std::size_t>(m)).element);
            auto ex = basis.express(flatten(prod));
            if (!ex.in_span) {
                std::ostringstream msg;
                msg << "product (" << k << "," << m << ") escaped the image basis span";
                throw std::logic_error(msg.str());
            }
            for (int i = 0; i < n; ++i) {
                if (!pole_free_at_zero(ex.coeffs[static_cast<std::size_t>(i)])) {
                    std::ostringstream msg;
                    msg << "structure constant (" << k << "," << m << "," << i
                        << ") has a pole at t=0";
                    throw std::logic_error(msg.str());
                }
                c[(static_cast<std::size_t>(k) * ns + static_cast<std::size_t>(m)) * ns +
                  static_cast<std::size_t>(i)] = ex.coeffs[static_cast<std::size_t>(i)];
            }
        }
    return DeformationTable::checked(n, std::move(c));
}

/// The algebra at t=0: products use only the constant parts.
inline FinAlgebra special_fiber(const DeformationTable& table) {
    int n = table.n();
    std::size_t ns = static_cast<std::size_t>(n);
    std::vector<Rational> c(ns * ns * ns);
    for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m)
            for (int i = 0; i < n; ++i)
                c[(static_cast<std::size_t>(k) * ns + static_cast<std::size_t>(m)) * ns +
                  static_cast<std::size_t>(i)] = table.constant_part(k, m, i);
    return FinAlgebra::with_identity_index(n, std::move(c), 0);
}

struct FormalAssociativity {
    bool ok = true;
    int a = -1, b = -1, c = -1;

    explicit operator bool() const { return ok; }
};

/// Associativity as an identity in Q(t): for all triples and all output
/// indices, sum_j c(a,b,j) c(j,c,i) = sum_j c(b,c,j) c(a,j,i).
inline FormalAssociativity check_associativity_formal(const DeformationTable& table) {
    int n = table.n();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int i = 0; i < n; ++i) {
                    RationalFunction lhs, rhs;
                    for (int j = 0; j < n; ++j) {
                        if (!table.entry(a, b, j).is_zero())
                            lhs += table.entry(a, b, j) * table.entry(j, c, i);
                        if (!table.entry(b, c, j).is_zero())
                            rhs += table.entry(b, c, j) * table.entry(a, j, i);
                    }
                    if (lhs != rhs) return {false, a, b, c};
                }
    return {};
}

/// The member of the family at t=s; throws PoleError when any entry has a
/// pole there.
inline FinAlgebra specialize_family(const DeformationTable& table, const Rational& s) {
    int n = table.n();
    std::size_t ns = static_cast<std::size_t>(n);
    std::vector<Rational> c(ns * ns * ns);
    for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m)
            for (int i = 0; i < n; ++i)
                c[(static_cast<std::size_t>(k) * ns + static_cast<std::size_t>(m)) * ns +
                  static_cast<std::size_t>(i)] = evaluate(table.entry(k, m, i), s);
    return FinAlgebra::with_identity_index(n, std::move(c), 0);
}

/// Denominator-free form of the table: entry * h is a polynomial for the
/// common denominator h, normalized so h(0) = 1.
class PolyTypeTable {
public:
    PolyTypeTable(int n, UniPolynomial h, std::vector<UniPolynomial> sigma)
        : n_(n), h_(std::move(h)), sigma_(std::move(sigma)) {}

    int n() const { return n_; }
    const UniPolynomial& common_denominator() const { return h_; }
    const UniPolynomial& entry(int k, int m, int i) const {
        std::size_t ns = static_cast<std::size_t>(n_);
        return sigma_[(static_cast<std::size_t>(k) * ns + static_cast<std::size_t>(m)) * ns +
                      static_cast<std::size_t>(i)];
    }

private:
    int n_;
    UniPolynomial h_;
    std::vector<UniPolynomial> sigma_;
};

/// Clears denominators: h = lcm of all entry denominators scaled so that
/// h(0) = 1 (possible because no denominator vanishes at 0), and
/// sigma = h * c entrywise, polynomial with sigma(0) equal to the fiber
/// constants.
inline PolyTypeTable to_polynomial_type(const DeformationTable& table) {
    int n = table.n();
    RatPoly h(Rational(1));
    for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m)
            for (int i = 0; i < n; ++i) {
                const RatPoly& den = table.entry(k, m, i).den();
                if (den.degree() == 0) continue;
                RatPoly g = rat_poly_gcd(h, den); // monic, divides den
                h = h * den.divide_exact(g);
            }
    // normalize h(0) = 1
    Rational h0 = h.coeff(0);
    if (h0 == 0) throw std::logic_error("common denominator vanishes at 0");
    h = h.scaled(Rational(1) / h0);
    RationalFunction hf(h);
    std::size_t ns = static_cast<std::size_t>(n);
    std::vector<UniPolynomial> sigma(ns * ns * ns, UniPolynomial(Var::t));
    for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m)
            for (int i = 0; i < n; ++i) {
                RationalFunction scaled = table.entry(k, m, i) * hf;
                if (!scaled.is_polynomial())
                    throw std::logic_error("denominator clearing left a non-polynomial entry");
                sigma[(static_cast<std::size_t>(k) * ns + static_cast<std::size_t>(m)) * ns +
                      static_cast<std::size_t>(i)] = UniPolynomial(Var::t, scaled.num());
            }
    return PolyTypeTable(n, UniPolynomial(Var::t, std::move(h)), std::move(sigma));
}

} // namespace deform
