#pragma once

#include "deform/block_algebra.hpp"
#include "deform/free_polynomial.hpp"
#include "deform/laurent.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

namespace deform {

/// The algebra homomorphism from the free algebra on {x, y} into the ambient
/// algebra, determined by the images of the two generators. The identity
/// word maps to the ambient identity. All image coordinates must be Laurent
/// polynomials in t (denominators are powers of t).
class HomomorphismSpec {
public:
    HomomorphismSpec(AmbientAlgebraPtr ambient, AmbientElement image_x, AmbientElement image_y)
        : ambient_(std::move(ambient)), image_x_(std::move(image_x)), image_y_(std::move(image_y)) {
        if (image_x_.algebra() != ambient_ || image_y_.algebra() != ambient_)
            throw std::invalid_argument("generator images live in a different ambient algebra");
        check_laurent(image_x_);
        check_laurent(image_y_);
        pole_bound_ = compute_pole_bound();
    }

    const AmbientAlgebraPtr& ambient() const { return ambient_; }
    const AmbientElement& image_x() const { return image_x_; }
    const AmbientElement& image_y() const { return image_y_; }

    /// gamma: every coordinate of the generator images and of their pairwise
    /// products has t-valuation >= -gamma.
    int pole_bound() const { return pole_bound_; }

    AmbientElement image_of_letter(char c) const {
        if (c == 'x') return image_x_;
        if (c == 'y') return image_y_;
        throw std::invalid_argument("letter outside the alphabet {x,y}");
    }

    AmbientElement apply_word(const Word& w) const {
        AmbientElement acc = AmbientElement::identity(ambient_);
        for (char c : w) acc = ambient_mul(acc, image_of_letter(c));
        return acc;
    }

private:
    static void check_laurent(const AmbientElement& e) {
        for (const auto& block : e.coords())
            for (const auto& p : block)
                for (const auto& c : p.coeffs())
                    if (!c.is_zero() && !is_laurent(c))
                        throw std::invalid_argument(
                            "generator image coordinates must be Laurent polynomials in t");
    }

    int compute_pole_bound() const {
        int min_val = 0;
        auto scan = [&min_val](const AmbientElement& e) {
            for (const auto& block : e.coords())
                for (const auto& p : block)
                    for (const auto& c : p.coeffs()) {
                        auto v = valuation_at_zero(c);
                        if (v) min_val = std::min(min_val, *v);
                    }
        };
        scan(image_x_);
        scan(image_y_);
        scan(ambient_mul(image_x_, image_x_));
        scan(ambient_mul(image_x_, image_y_));
        scan(ambient_mul(image_y_, image_x_));
        scan(ambient_mul(image_y_, image_y_));
        return -min_val;
    }

    AmbientAlgebraPtr ambient_;
    AmbientElement image_x_;
    AmbientElement image_y_;
    int pole_bound_ = 0;
};

/// Ring-homomorphism extension of f to a free polynomial: words map to
/// ordered products of the generator images, Q(t)-linearly.
inline AmbientElement apply(const HomomorphismSpec& f, const FreePolynomial& p) {
    AmbientElement acc = AmbientElement::zero(f.ambient());
    std::map<Word, AmbientElement, ShortlexLess> cache;
    for (const auto& [w, c] : p.terms()) {
        // reuse the longest cached prefix; terms arrive in shortlex order
        AmbientElement img = AmbientElement::identity(f.ambient());
        std::size_t start = 0;
        for (std::size_t len = w.size(); len > 0; --len) {
            auto it = cache.find(w.substr(0, len));
            if (it != cache.end()) {
                img = it->second;
                start = len;
                break;
            }
        }
        for (std::size_t i = start; i < w.size(); ++i) {
            img = ambient_mul(img, f.image_of_letter(w[i]));
            cache.emplace(w.substr(0, i + 1), img);
        }
        acc += img.scaled(c);
    }
    return acc;
}

} // namespace deform
