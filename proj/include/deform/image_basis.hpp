#pragma once

#include "deform/errors.hpp"
#include "deform/homomorphism.hpp"
#include "deform/linalg.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace deform {

/// One basis entry: a free-algebra element q with Q[t] coefficients, its
/// image f(q), and the leading pseudoterm data of the image after reduction
/// by earlier entries: the image's t-valuation attains its minimum
/// pivot_order exactly along pivot_direction.
struct BasisEntry {
    FreePolynomial preimage;
    AmbientElement element;
    FlatVector vec;
    int pivot_order = 0;
    std::vector<Rational> pivot_direction;
};

struct ExpressResult {
    bool in_span = false;
    std::vector<RationalFunction> coeffs;
    bool pole_free = false; ///< all coefficients have no pole at t=0
};

class ImageBasis;
struct ImageBasisOptions;
namespace detail {
class ImageBasisBuilder;
}
inline ImageBasis compute_image_basis(const HomomorphismSpec& f, int expected_n,
                                      const ImageBasisOptions& options);

namespace detail {

inline std::optional<int> flat_valuation(const FlatVector& v) {
    std::optional<int> best;
    for (const auto& c : v) {
        auto val = valuation_at_zero(c);
        if (val && (!best || *val < *best)) best = val;
    }
    return best;
}

/// Coefficient vector of t^k, assuming every coordinate has valuation >= k.
inline std::vector<Rational> flat_lead(const FlatVector& v, int k) {
    std::vector<Rational> out(v.size(), Rational(0));
    for (std::size_t i = 0; i < v.size(); ++i) {
        auto val = valuation_at_zero(v[i]);
        if (val && *val == k) {
            const auto& f = v[i];
            out[i] = f.num().coeff(static_cast<std::size_t>(f.num().low_order())) /
                     f.den().coeff(static_cast<std::size_t>(f.den().low_order()));
        }
    }
    return out;
}

inline bool flat_is_zero(const FlatVector& v) {
    for (const auto& c : v)
        if (!c.is_zero()) return false;
    return true;
}

} // namespace detail

/// The image module basis produced by the elimination: entries sorted by
/// nondecreasing pivot order, pivot directions jointly independent over Q,
/// images independent over Q(t).
class ImageBasis {
public:
    explicit ImageBasis(int ambient_dim) : ambient_dim_(ambient_dim) {}

    const std::vector<BasisEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    int ambient_dim() const { return ambient_dim_; }
    const BasisEntry& entry(std::size_t i) const { return entries_.at(i); }

    /// Number of shortlex words consumed while building the basis.
    std::size_t words_scanned() const { return words_scanned_; }

    /// Solves v = sum_i coeffs[i] * entry(i).vec over Q(t).
    ExpressResult express(const FlatVector& v) const {
        ExpressResult r;
        if (entries_.empty()) {
            r.in_span = detail::flat_is_zero(v);
            r.pole_free = r.in_span;
            return r;
        }
        Matrix<RationalFunction> B(v.size(), entries_.size());
        for (std::size_t j = 0; j < entries_.size(); ++j)
            for (std::size_t i = 0; i < v.size(); ++i) B.at(i, j) = entries_[j].vec[i];
        auto sol = solve_full_column_rank(B, v);
        if (!sol) return r;
        r.in_span = true;
        r.coeffs = std::move(*sol);
        r.pole_free = true;
        for (const auto& c : r.coeffs) r.pole_free = r.pole_free && pole_free_at_zero(c);
        return r;
    }

    bool in_local_span(const FlatVector& v) const {
        auto e = express(v);
        return e.in_span && e.pole_free;
    }

    /// Determinant of the n x n matrix whose columns are the basis images;
    /// nonzero exactly when the images are Q(t)-independent.
    RationalFunction elimination_determinant() const {
        if (entries_.size() != static_cast<std::size_t>(ambient_dim_))
            throw std::logic_error("elimination determinant needs a full basis");
        Matrix<RationalFunction> B(entries_.size(), entries_.size());
        for (std::size_t j = 0; j < entries_.size(); ++j)
            for (std::size_t i = 0; i < entries_.size(); ++i) B.at(i, j) = entries_[j].vec[i];
        return determinant(B);
    }

private:
    friend class detail::ImageBasisBuilder;
    friend ImageBasis compute_image_basis(const HomomorphismSpec&, int, const ImageBasisOptions&);

    std::vector<BasisEntry> entries_;
    int ambient_dim_;
    std::size_t words_scanned_ = 0;
};

/// Unique Q(t) solution expressing v in the basis images. Throws when v is
/// outside the span; the flag reports whether all coefficients are pole-free
/// at 0.
struct BasisCoefficients {
    std::vector<RationalFunction> coeffs;
    bool pole_free;
};

inline BasisCoefficients express_in_basis(const FlatVector& v, const ImageBasis& basis) {
    auto e = basis.express(v);
    if (!e.in_span)
        throw std::invalid_argument("vector is outside the span of the image basis");
    return {std::move(e.coeffs), e.pole_free};
}

namespace detail {

/// Incremental elimination over the local ring at t=0 (the subring of Q(t)
/// with no pole at 0). Maintains a generating set of the module spanned by
/// everything inserted so far, in valuation-echelon form: pivot orders
/// nondecreasing, each pivot direction independent of the directions
/// available at its order.
class ImageBasisBuilder {
public:
    explicit ImageBasisBuilder(int ambient_dim) : basis_(ambient_dim) {}

    std::size_t rank() const { return basis_.size(); }
    ImageBasis take(std::size_t words_scanned) {
        basis_.words_scanned_ = words_scanned;
        return std::move(basis_);
    }
    const ImageBasis& basis() const { return basis_; }

    /// True iff the leading direction d at order k can be cancelled by
    /// entries with pivot order <= k.
    bool lead_killable(const std::vector<Rational>& d, int k) const {
        return static_cast<bool>(solve_lead(d, k));
    }

    /// Inserts f(q) into the module; returns whether the module grew.
    bool add(FlatVector vec, AmbientElement elem, FreePolynomial q) {
        if (!insert_raw(std::move(vec), std::move(elem), std::move(q))) return false;
        settle();
        return true;
    }

private:
    std::vector<BasisEntry>& entries() { return basis_.entries_; }
    const std::vector<BasisEntry>& entries() const { return basis_.entries_; }

    /// Solves d = sum c_i * pivot_direction_i over the entries with pivot
    /// order <= k, optionally excluding one entry.
    std::optional<std::vector<std::pair<std::size_t, Rational>>>
    solve_lead(const std::vector<Rational>& d, int k, std::size_t exclude = SIZE_MAX) const {
        std::vector<std::size_t> eligible;
        for (std::size_t i = 0; i < entries().size(); ++i)
            if (i != exclude && entries()[i].pivot_order <= k) eligible.push_back(i);
        bool d_zero = true;
        for (const auto& c : d) d_zero = d_zero && c == 0;
        if (d_zero) return std::vector<std::pair<std::size_t, Rational>>{};
        if (eligible.empty()) return std::nullopt;
        Matrix<Rational> M(d.size(), eligible.size());
        for (std::size_t j = 0; j < eligible.size(); ++j)
            for (std::size_t i = 0; i < d.size(); ++i)
                M.at(i, j) = entries()[eligible[j]].pivot_direction[i];
        auto sol = solve_full_column_rank(M, d);
        if (!sol) return std::nullopt;
        std::vector<std::pair<std::size_t, Rational>> out;
        for (std::size_t j = 0; j < eligible.size(); ++j)
            if ((*sol)[j] != 0) out.emplace_back(eligible[j], (*sol)[j]);
        return out;
    }

    bool insert_raw(FlatVector vec, AmbientElement elem, FreePolynomial q) {
        if (flat_is_zero(vec)) return false;

        ExpressResult ex = basis_.express(vec);
        if (ex.in_span && ex.pole_free) return false;

        // chase: cancel the leading pseudoterm against available pivots until
        // it becomes unkillable; each step raises the valuation, and the
        // valuation of the coset is bounded, so this terminates
        int guard = 0;
        for (;;) {
            if (++guard > chase_guard_)
                throw std::logic_error("image elimination failed to terminate");
            auto val = flat_valuation(vec);
            if (!val) throw std::logic_error("reduction vanished outside the local span");
            int k = *val;
            auto d = flat_lead(vec, k);
            auto combo = solve_lead(d, k);
            if (!combo) {
                place_entry(std::move(vec), std::move(elem), std::move(q), k, std::move(d));
                break;
            }
            for (const auto& [i, c] : *combo) {
                RationalFunction mult =
                    RationalFunction::t_power(k - entries()[i].pivot_order) * RationalFunction(c);
                for (std::size_t coord = 0; coord < vec.size(); ++coord)
                    vec[coord] -= mult * entries()[i].vec[coord];
                elem -= entries()[i].element.scaled(mult);
                q -= entries()[i].preimage.scaled(mult);
            }
        }

        if (ex.in_span) {
            // the new vector lies in the Q(t)-span, so one existing entry is
            // now redundant: evict the one with the deepest pole coefficient,
            // which stays generated by the others plus the new entry
            std::size_t evict = entries().size();
            int evict_val = std::numeric_limits<int>::max();
            for (std::size_t j = 0; j < ex.coeffs.size(); ++j) {
                auto v = valuation_at_zero(ex.coeffs[j]);
                if (v && *v <= evict_val) {
                    evict_val = *v;
                    evict = j;
                }
            }
            if (evict == entries().size() || evict_val >= 0)
                throw std::logic_error("in-span insertion without a pole coefficient");
            entries().erase(entries().begin() + static_cast<long>(evict));
        }
        return true;
    }

    void place_entry(FlatVector vec, AmbientElement elem, FreePolynomial q, int k,
                     std::vector<Rational> d) {
        BasisEntry e{std::move(q), std::move(elem), std::move(vec), k, std::move(d)};
        std::size_t pos = 0;
        while (pos < entries().size() && entries()[pos].pivot_order <= k) ++pos;
        entries().insert(entries().begin() + static_cast<long>(pos), std::move(e));
    }

    /// Re-reduces entries whose pivot claim was invalidated by an insertion
    /// at a lower order.
    void settle() {
        int guard = 0;
        for (;;) {
            if (++guard > settle_guard_)
                throw std::logic_error("image elimination cascade failed to terminate");
            std::size_t invalid = entries().size();
            for (std::size_t j = 0; j < entries().size(); ++j) {
                if (solve_lead(entries()[j].pivot_direction, entries()[j].pivot_order, j)) {
                    invalid = j;
                    break;
                }
            }
            if (invalid == entries().size()) return;
            BasisEntry moved = std::move(entries()[invalid]);
            entries().erase(entries().begin() + static_cast<long>(invalid));
            insert_raw(std::move(moved.vec), std::move(moved.element), std::move(moved.preimage));
        }
    }

    ImageBasis basis_;
    static constexpr int chase_guard_ = 100000;
    static constexpr int settle_guard_ = 100000;
};

} // namespace detail

struct ImageBasisOptions {
    std::size_t word_budget = 4096;
    bool truncate_preimages = true;
};

/// Builds the image basis: scan words in shortlex order, keep those whose
/// leading pseudoterm direction is new at its order, then repair by a
/// closure fixpoint that inserts any product of a basis image with a
/// generator image failing to lie in the local-ring span. At the fixpoint
/// the module is exactly the local-ring span of all word images (every word
/// is reachable from the identity by one-letter products), so the closure
/// certificate doubles as the termination proof.
inline ImageBasis compute_image_basis(const HomomorphismSpec& f, int expected_n,
                                      const ImageBasisOptions& options = {}) {
    const int n = f.ambient()->dim();
    if (expected_n < 1) throw std::invalid_argument("expected dimension must be positive");
    if (expected_n > n)
        throw std::invalid_argument("expected dimension exceeds the ambient dimension");
    if (options.word_budget < 1)
        throw std::invalid_argument("word budget must cover at least the identity word");

    detail::ImageBasisBuilder builder(n);

    // incremental word images: image(prefix + letter) = image(prefix) * image(letter)
    std::vector<AmbientElement> images;
    images.reserve(options.word_budget);
    std::size_t scanned = 0;
    for (std::size_t idx = 0; idx < options.word_budget; ++idx) {
        Word w = word_at(idx);
        AmbientElement img = AmbientElement::identity(f.ambient());
        if (!w.empty()) {
            // index arithmetic: the length-(L-1) prefix of the word at index
            // i sits at index (i-1)/2
            img = ambient_mul(images[(idx - 1) >> 1], f.image_of_letter(w.back()));
        }
        images.push_back(img);
        scanned = idx + 1;

        FlatVector vec = flatten(img);
        auto val = detail::flat_valuation(vec);
        if (!val) continue;
        auto lead = detail::flat_lead(vec, *val);
        if (builder.lead_killable(lead, *val)) continue;
        builder.add(std::move(vec), std::move(img), FreePolynomial::word(w));
        if (builder.rank() == static_cast<std::size_t>(expected_n)) break;
    }

    // closure fixpoint: also the deeper-reduction repair for pivots missed by
    // the word-lead filter
    const int fixpoint_guard = 100000;
    int rounds = 0;
    for (;;) {
        if (++rounds > fixpoint_guard)
            throw std::logic_error("closure fixpoint failed to terminate");
        bool failed = false;
        for (std::size_t i = 0; i < builder.rank() && !failed; ++i) {
            for (char g : {'x', 'y'}) {
                const BasisEntry& e = builder.basis().entry(i);
                AmbientElement right = ambient_mul(e.element, f.image_of_letter(g));
                FlatVector right_vec = flatten(right);
                if (!builder.basis().in_local_span(right_vec)) {
                    FreePolynomial q = e.preimage * FreePolynomial::word(Word(1, g));
                    builder.add(std::move(right_vec), std::move(right), std::move(q));
                    failed = true;
                    break;
                }
                AmbientElement left = ambient_mul(f.image_of_letter(g), e.element);
                FlatVector left_vec = flatten(left);
                if (!builder.basis().in_local_span(left_vec)) {
                    FreePolynomial q = FreePolynomial::word(Word(1, g)) * e.preimage;
                    builder.add(std::move(left_vec), std::move(left), std::move(q));
                    failed = true;
                    break;
                }
            }
        }
        if (!failed) break;
    }

    if (builder.rank() != static_cast<std::size_t>(expected_n)) {
        // the closure fixpoint proves the module already contains every word
        // image, so a short rank cannot be cured by a larger word budget
        std::ostringstream msg;
        msg << "image basis closed at rank " << builder.rank() << ", expected " << expected_n
            << "; pivot orders:";
        for (const auto& e : builder.basis().entries()) msg << ' ' << e.pivot_order;
        throw std::invalid_argument(msg.str());
    }

    ImageBasis basis = builder.take(scanned);

    if (options.truncate_preimages) {
        // preimage coefficients can be cut above max pivot order + gamma + 1
        // without touching any leading pseudoterm
        int maxk = 0;
        for (const auto& e : basis.entries()) maxk = std::max(maxk, e.pivot_order);
        int cut = maxk + f.pole_bound() + 1;
        bool changed = false;
        std::vector<BasisEntry> truncated;
        for (const auto& e : basis.entries()) {
            FreePolynomial q = e.preimage.truncated_t_degree(cut);
            if (q == e.preimage) {
                truncated.push_back(e);
                continue;
            }
            changed = true;
            AmbientElement elem = apply(f, q);
            FlatVector vec = flatten(elem);
            truncated.push_back(BasisEntry{std::move(q), std::move(elem), std::move(vec),
                                           e.pivot_order, e.pivot_direction});
        }
        if (changed) {
            ImageBasis candidate(basis.ambient_dim());
            candidate.entries_ = std::move(truncated);
            candidate.words_scanned_ = basis.words_scanned();
            // accept only if the leading data survived and closure still holds
            bool ok = true;
            for (const auto& e : candidate.entries()) {
                auto val = detail::flat_valuation(e.vec);
                ok = ok && val && *val == e.pivot_order &&
                     detail::flat_lead(e.vec, e.pivot_order) == e.pivot_direction;
            }
            for (std::size_t i = 0; ok && i < candidate.size(); ++i)
                for (char g : {'x', 'y'}) {
                    const BasisEntry& e = candidate.entry(i);
                    ok = ok &&
                         candidate.in_local_span(
                             flatten(ambient_mul(e.element, f.image_of_letter(g)))) &&
                         candidate.in_local_span(
                             flatten(ambient_mul(f.image_of_letter(g), e.element)));
                }
            if (ok) basis = std::move(candidate);
        }
    }

    return basis;
}

} // namespace deform
