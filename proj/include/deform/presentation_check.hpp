#pragma once

#include "deform/deformation.hpp"
#include "deform/quotient.hpp"

#include <string>
#include <vector>

namespace deform {

/// True iff f(r) lies in t * Im(f): every coefficient of f(r) in the image
/// basis has valuation >= 1 at t=0. Requires r to have rational (t-constant)
/// coefficients.
inline bool relation_in_Jprime(const HomomorphismSpec& f, const ImageBasis& basis,
                               const FreePolynomial& r) {
    if (!r.has_constant_coefficients())
        throw std::invalid_argument("membership is defined for relations with constant coefficients");
    auto ex = basis.express(flatten(apply(f, r)));
    if (!ex.in_span)
        throw std::logic_error("relation image escaped the basis span despite closure");
    for (const auto& c : ex.coeffs) {
        auto v = valuation_at_zero(c);
        if (v && *v < 1) return false;
        if (!v) continue; // zero coefficient
    }
    return true;
}

enum class PresentationVerdict {
    isomorphic,   ///< memberships hold and the quotient dimension is exactly n
    inconclusive, ///< dimension computation gave a count without certificate
    failed        ///< some relation is not in J'
};

struct PresentationCheck {
    PresentationVerdict verdict;
    int quotient_dim = 0;
    bool quotient_exact = false;
    std::vector<std::size_t> failed_relations; ///< indices of relations outside J'

    explicit operator bool() const { return verdict == PresentationVerdict::isomorphic; }
};

/// Decides whether the relations present the special fiber: all relations
/// must lie in J' and the bounded quotient must certify dimension exactly n.
inline PresentationCheck verify_presentation(const HomomorphismSpec& f, const ImageBasis& basis,
                                             const Presentation& rels, const WeightedGrading& g,
                                             int degree_bound) {
    PresentationCheck out;
    for (std::size_t i = 0; i < rels.relations().size(); ++i)
        if (!relation_in_Jprime(f, basis, rels.relations()[i])) out.failed_relations.push_back(i);
    if (!out.failed_relations.empty()) {
        out.verdict = PresentationVerdict::failed;
        return out;
    }
    BoundedQuotient q(rels, g, degree_bound);
    out.quotient_dim = q.dimension();
    out.quotient_exact = q.exact();
    out.verdict = (q.exact() && q.dimension() == static_cast<int>(basis.size()))
                      ? PresentationVerdict::isomorphic
                      : PresentationVerdict::inconclusive;
    return out;
}

} // namespace deform
