#pragma once

#include "deform/deformation.hpp"
#include "deform/linalg.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace deform {

/// Exact certificate that the family is a flat deformation on (0, s_max]:
/// both master polynomials are root-free there, so every member is defined
/// (no denominator vanishes) and semisimple (trace form nondegenerate,
/// specialized quotient polynomials squarefree).
struct FlatnessCertificate {
    Rational s_max;
    UniPolynomial denominator_master;  ///< t-power factors stripped
    UniPolynomial semisimple_master;   ///< t-power factors stripped
    int denominator_roots = 0;         ///< Sturm count in (0, s_max)
    int semisimple_roots = 0;          ///< Sturm count in (0, s_max)
    int stripped_t_order_denominator = 0;
    int stripped_t_order_semisimple = 0;
};

namespace detail {

/// Resultant of two u-polynomials over Q(t) via the Sylvester matrix.
inline RationalFunction sylvester_resultant(const UPoly& a, const UPoly& b) {
    int da = a.degree(), db = b.degree();
    if (da < 0 || db < 0) return RationalFunction();
    if (da == 0) {
        RationalFunction r(1);
        for (int i = 0; i < db; ++i) r *= a.coeff(0);
        return r;
    }
    if (db == 0) {
        RationalFunction r(1);
        for (int i = 0; i < da; ++i) r *= b.coeff(0);
        return r;
    }
    std::size_t n = static_cast<std::size_t>(da + db);
    Matrix<RationalFunction> s(n, n);
    for (int row = 0; row < db; ++row)
        for (int k = 0; k <= da; ++k)
            s.at(static_cast<std::size_t>(row), static_cast<std::size_t>(row + k)) =
                a.coeff(static_cast<std::size_t>(da - k));
    for (int row = 0; row < da; ++row)
        for (int k = 0; k <= db; ++k)
            s.at(static_cast<std::size_t>(db + row), static_cast<std::size_t>(row + k)) =
                b.coeff(static_cast<std::size_t>(db - k));
    return determinant(s);
}

/// Discriminant of a monic u-polynomial over Q(t): vanishes at exactly the
/// t-values where the specialized polynomial has multiple roots.
inline RationalFunction discriminant(const UPoly& g) {
    return sylvester_resultant(g, g.derivative());
}

inline RatPoly strip_t_power(const RatPoly& p, int& order) {
    order = std::max(p.low_order(), 0);
    if (order == 0 || p.is_zero()) return p;
    std::vector<Rational> v(p.coeffs().begin() + order, p.coeffs().end());
    return RatPoly(std::move(v));
}

} // namespace detail

/// Trace form of the t-family in the regular representation, an n x n matrix
/// over Q(t).
inline Matrix<RationalFunction> family_trace_form(const DeformationTable& table) {
    int n = table.n();
    std::size_t ns = static_cast<std::size_t>(n);
    std::vector<RationalFunction> tr(ns);
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < n; ++a) tr[static_cast<std::size_t>(i)] += table.entry(i, a, a);
    Matrix<RationalFunction> T(ns, ns);
    for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m)
            for (int i = 0; i < n; ++i)
                if (!table.entry(k, m, i).is_zero())
                    T.at(static_cast<std::size_t>(k), static_cast<std::size_t>(m)) +=
                        table.entry(k, m, i) * tr[static_cast<std::size_t>(i)];
    return T;
}

/// Builds the two master polynomials and searches s = 1/2, 1/4, ... for the
/// largest halving with both masters root-free on (0, s]. The masters are:
/// the product of the distinct denominators of all table entries and image
/// coordinates (poles), and the numerator of det(trace form) times the
/// discriminant numerators of the quotient polynomials (semisimplicity
/// obstructions). Pure t-power factors vanish only at 0 and are stripped.
inline FlatnessCertificate flatness_certificate(const DeformationTable& table,
                                                const HomomorphismSpec& f, int search_depth = 20) {
    // denominator master: distinct denominators of table entries and of the
    // generator-image coordinates (t-power parts excluded)
    std::set<std::vector<Rational>> seen;
    RatPoly den_master(Rational(1));
    auto add_denominator = [&](const RatPoly& den) {
        int stripped = 0;
        RatPoly core = detail::strip_t_power(den, stripped);
        if (core.degree() == 0) return;
        if (seen.insert(core.coeffs()).second) den_master = den_master * core;
    };
    for (int k = 0; k < table.n(); ++k)
        for (int m = 0; m < table.n(); ++m)
            for (int i = 0; i < table.n(); ++i) add_denominator(table.entry(k, m, i).den());
    for (const AmbientElement* img : {&f.image_x(), &f.image_y()})
        for (const auto& block : img->coords())
            for (const auto& p : block)
                for (const auto& c : p.coeffs())
                    if (!c.is_zero()) add_denominator(c.den());

    // semisimplicity master: numerator of det(trace form) times the
    // discriminant numerators of all block quotient polynomials
    RationalFunction det_trace = determinant(family_trace_form(table));
    if (det_trace.is_zero())
        throw BudgetError("family trace form is identically degenerate; no semisimple interval");
    RatPoly ss_master = det_trace.num();
    for (const auto& spec : f.ambient()->blocks()) {
        RationalFunction disc = detail::discriminant(spec.min_poly());
        if (disc.is_zero())
            throw std::logic_error("quotient polynomial discriminant vanished identically");
        ss_master = ss_master * disc.num();
    }

    FlatnessCertificate cert;
    RatPoly den_core = detail::strip_t_power(den_master, cert.stripped_t_order_denominator);
    RatPoly ss_core = detail::strip_t_power(ss_master, cert.stripped_t_order_semisimple);
    cert.denominator_master = UniPolynomial(Var::t, den_core);
    cert.semisimple_master = UniPolynomial(Var::t, ss_core);

    UniPolynomial den_poly = cert.denominator_master;
    UniPolynomial ss_poly = cert.semisimple_master;
    Rational s(1, 2);
    for (int depth = 1; depth <= search_depth; ++depth, s /= 2) {
        if (den_poly.evaluate(s) == 0 || ss_poly.evaluate(s) == 0) continue;
        int den_roots = den_poly.degree() > 0 ? sturm_roots_in_interval(den_poly, Rational(0), s)
                                              : 0;
        int ss_roots = ss_poly.degree() > 0 ? sturm_roots_in_interval(ss_poly, Rational(0), s) : 0;
        if (den_roots == 0 && ss_roots == 0) {
            cert.s_max = s;
            cert.denominator_roots = den_roots;
            cert.semisimple_roots = ss_roots;
            return cert;
        }
    }
    std::ostringstream msg;
    msg << "no pole-free semisimple interval found down to 2^-" << search_depth
        << "; roots in (0,1): denominators "
        << (den_poly.degree() > 0 && den_poly.evaluate(Rational(1)) != 0 &&
                    den_poly.evaluate(Rational(0)) != 0
                ? sturm_roots_in_interval(den_poly, Rational(0), Rational(1))
                : -1)
        << ", semisimplicity "
        << (ss_poly.degree() > 0 && ss_poly.evaluate(Rational(1)) != 0 &&
                    ss_poly.evaluate(Rational(0)) != 0
                ? sturm_roots_in_interval(ss_poly, Rational(0), Rational(1))
                : -1);
    throw BudgetError(msg.str());
}

/// Dimension over Q of the unital algebra generated by the specialized
/// generator images at t=s, by product closure with rank tracking.
inline int generation_dimension_at(const HomomorphismSpec& f, const Rational& s) {
    SpecializedElement a = specialize(f.image_x(), s);
    SpecializedElement b = specialize(f.image_y(), s);
    SpecializedElement one = specialize(AmbientElement::identity(f.ambient()), s);
    std::size_t width = one.flatten_entries().size();
    Echelon<Rational> span(width);
    std::vector<SpecializedElement> worklist;
    if (span.insert(one.flatten_entries())) worklist.push_back(one);
    for (const auto& g : {a, b})
        if (span.insert(g.flatten_entries())) worklist.push_back(g);
    while (!worklist.empty()) {
        SpecializedElement v = std::move(worklist.back());
        worklist.pop_back();
        for (const auto& g : {a, b}) {
            SpecializedElement p = v * g;
            if (span.insert(p.flatten_entries())) worklist.push_back(std::move(p));
        }
    }
    return static_cast<int>(span.rank());
}

} // namespace deform
