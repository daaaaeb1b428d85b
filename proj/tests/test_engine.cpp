#include <catch2/catch_amalgamated.hpp>

#include "deform/deformation.hpp"
#include "deform/flatness.hpp"
#include "deform/image_basis.hpp"
#include "deform/presentation_check.hpp"

#include <random>

using namespace deform;

namespace {

std::mt19937 rng(61409);

Rational q(long n, long d = 1) { return Rational(n, d); }

RationalFunction tpow(int k, Rational c = Rational(1)) {
    return RationalFunction::t_power(k) * RationalFunction(std::move(c));
}

UPoly u_minus_one() { return UPoly({RationalFunction(-1), RationalFunction(1)}); }

// Method-2 toy: f(x) = E11, f(y) = E12 + t E21 into 2x2 matrices.
HomomorphismSpec toy_hom() {
    auto alg = AmbientAlgebra::create({BlockSpec(BlockAlgebra::matrix(2), u_minus_one())});
    auto zero = AmbientElement::zero(alg);
    auto cx = zero.coords();
    cx[0][0] = UPoly(RationalFunction(1)); // E11
    auto cy = zero.coords();
    cy[0][1] = UPoly(RationalFunction(1)); // E12
    cy[0][2] = UPoly(tpow(1));             // t E21
    return HomomorphismSpec(alg, AmbientElement(alg, cx), AmbientElement(alg, cy));
}

Word random_word(int max_len) {
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<int> bit(0, 1);
    int l = len(rng);
    Word w;
    for (int i = 0; i < l; ++i) w += bit(rng) ? 'y' : 'x';
    return w;
}

FreePolynomial rel(std::initializer_list<std::pair<Word, long>> terms) {
    FreePolynomial p;
    for (const auto& [w, c] : terms) p.add_term(w, RationalFunction(Rational(c)));
    return p;
}

// Frozen hand-derived table of the toy deformation, basis (1, x, y, yx):
//   y*y = t*1,  x*y = y - yx,  y*x = yx,  x*yx = 0,  yx*x = yx,
//   y*yx = t*x, yx*y = t*1 - t*x, yx*yx = 0, x*x = x.
std::vector<RationalFunction> toy_oracle_table() {
    std::vector<RationalFunction> c(64);
    auto put = [&](int k, int m, int i, RationalFunction v) { c[static_cast<std::size_t>((k * 4 + m) * 4 + i)] = std::move(v); };
    for (int j = 0; j < 4; ++j) {
        put(0, j, j, RationalFunction(1)); // 1 * d_j
        put(j, 0, j, RationalFunction(1)); // d_j * 1
    }
    put(1, 1, 1, RationalFunction(1));  // x x = x
    put(1, 2, 2, RationalFunction(1));  // x y = y - yx
    put(1, 2, 3, RationalFunction(-1));
    put(2, 1, 3, RationalFunction(1));  // y x = yx
    put(3, 1, 3, RationalFunction(1));  // yx x = yx
    put(2, 2, 0, tpow(1));              // y y = t 1
    put(2, 3, 1, tpow(1));              // y yx = t x
    put(3, 2, 0, tpow(1));              // yx y = t 1 - t x
    put(3, 2, 1, tpow(1, q(-1)));
    return c;
}

} // namespace

TEST_CASE("apply is a homomorphism") {
    auto f = toy_hom();
    CHECK(apply(f, FreePolynomial::one()) == AmbientElement::identity(f.ambient()));
    for (int trial = 0; trial < 100; ++trial) {
        Word p = random_word(5), r = random_word(5);
        auto lhs = apply(f, FreePolynomial::word(p + r));
        auto rhs = ambient_mul(apply(f, FreePolynomial::word(p)), apply(f, FreePolynomial::word(r)));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("toy image basis") {
    auto f = toy_hom();
    CHECK(f.pole_bound() == 0);
    auto basis = compute_image_basis(f, 4);
    REQUIRE(basis.size() == 4);

    CHECK(basis.entry(0).preimage == FreePolynomial::one());
    CHECK(basis.entry(1).preimage == FreePolynomial::word("x"));
    CHECK(basis.entry(2).preimage == FreePolynomial::word("y"));
    CHECK(basis.entry(3).preimage == FreePolynomial::word("yx"));

    CHECK(basis.entry(0).pivot_order == 0);
    CHECK(basis.entry(1).pivot_order == 0);
    CHECK(basis.entry(2).pivot_order == 0);
    CHECK(basis.entry(3).pivot_order == 1);

    // pivot directions: I, E11, E12, E21 in the matrix-unit coordinates
    CHECK(basis.entry(0).pivot_direction == std::vector<Rational>{q(1), q(0), q(0), q(1)});
    CHECK(basis.entry(1).pivot_direction == std::vector<Rational>{q(1), q(0), q(0), q(0)});
    CHECK(basis.entry(2).pivot_direction == std::vector<Rational>{q(0), q(1), q(0), q(0)});
    CHECK(basis.entry(3).pivot_direction == std::vector<Rational>{q(0), q(0), q(1), q(0)});

    // soundness: the images are Q(t)-independent
    CHECK_FALSE(basis.elimination_determinant().is_zero());

    // pivot monotonicity
    for (std::size_t i = 0; i + 1 < basis.size(); ++i)
        CHECK(basis.entry(i).pivot_order <= basis.entry(i + 1).pivot_order);
}

TEST_CASE("express in basis") {
    auto f = toy_hom();
    auto basis = compute_image_basis(f, 4);

    auto e = express_in_basis(basis.entry(0).vec, basis);
    CHECK(e.coeffs == std::vector<RationalFunction>{RationalFunction(1), RationalFunction(),
                                                    RationalFunction(), RationalFunction()});
    CHECK(e.pole_free);

    // f(y^2) = t * identity
    auto yy = flatten(apply(f, FreePolynomial::word("yy")));
    auto ey = express_in_basis(yy, basis);
    CHECK(ey.coeffs == std::vector<RationalFunction>{tpow(1), RationalFunction(),
                                                     RationalFunction(), RationalFunction()});

    auto ez = express_in_basis(FlatVector(4, RationalFunction()), basis);
    for (const auto& c : ez.coeffs) CHECK(c.is_zero());

    // something outside the span: the ambient E21 direction alone with no t
    FlatVector outside(4, RationalFunction());
    outside[2] = RationalFunction(1);
    CHECK(basis.express(outside).in_span); // E21 = (1/t) * image(yx): in span...
    CHECK_FALSE(basis.express(outside).pole_free); // ...but only with a pole

    // closure re-check at doubled word bound
    std::size_t doubled = 2 * basis.words_scanned();
    for (std::size_t i = 0; i < doubled; ++i) {
        auto v = flatten(apply(f, FreePolynomial::word(word_at(i))));
        CHECK(basis.in_local_span(v));
    }
}

TEST_CASE("toy structure constants match the hand-derived oracle") {
    auto f = toy_hom();
    auto basis = compute_image_basis(f, 4);
    auto table = structure_constants(basis);
    auto oracle = toy_oracle_table();
    REQUIRE(table.n() == 4);
    for (int k = 0; k < 4; ++k)
        for (int m = 0; m < 4; ++m)
            for (int i = 0; i < 4; ++i)
                CHECK(table.entry(k, m, i) == oracle[static_cast<std::size_t>((k * 4 + m) * 4 + i)]);

    // structure-constant correctness: image_k * image_m - sum_i c image_i = 0
    for (int k = 0; k < 4; ++k)
        for (int m = 0; m < 4; ++m) {
            auto prod = flatten(ambient_mul(basis.entry(static_cast<std::size_t>(k)).element,
                                            basis.entry(static_cast<std::size_t>(m)).element));
            for (int i = 0; i < 4; ++i)
                for (std::size_t coord = 0; coord < 4; ++coord)
                    prod[coord] -= table.entry(k, m, i) * basis.entry(static_cast<std::size_t>(i)).vec[coord];
            for (const auto& c : prod) CHECK(c.is_zero());
        }
}

TEST_CASE("toy special fiber") {
    auto f = toy_hom();
    auto table = structure_constants(compute_image_basis(f, 4));
    auto fiber = special_fiber(table);
    REQUIRE(fiber.dim() == 4);
    CHECK(fiber.identity_is_two_sided());
    // a = d_x, b = d_y, c = d_yx: a^2=a, ab=b-c, ba=c, b^2=0, ca=c, ac=0, cb=0, bc=0
    auto a = fiber.basis_vector(1), b = fiber.basis_vector(2), c = fiber.basis_vector(3);
    CHECK(fiber.product(a, a) == a);
    auto b_minus_c = b;
    b_minus_c[3] = q(-1);
    CHECK(fiber.product(a, b) == b_minus_c);
    CHECK(fiber.product(b, a) == c);
    CHECK(fiber.product(b, b) == std::vector<Rational>(4, q(0)));
    CHECK(fiber.product(c, a) == c);
    CHECK(fiber.product(a, c) == std::vector<Rational>(4, q(0)));
    CHECK(fiber.product(c, b) == std::vector<Rational>(4, q(0)));
    CHECK(fiber.product(b, c) == std::vector<Rational>(4, q(0)));

    // fiber radical: span of the images of y and yx
    auto rad = radical(fiber);
    CHECK(rad.size() == 2);

    // wherever a product is t-proportional the fiber value is zero
    CHECK(fiber.constant(2, 2, 0) == 0);
}

TEST_CASE("formal associativity") {
    auto f = toy_hom();
    auto table = structure_constants(compute_image_basis(f, 4));
    CHECK(check_associativity_formal(table).ok);

    // corrupting one constant part breaks it
    auto oracle = toy_oracle_table();
    oracle[(1 * 4 + 2) * 4 + 2] += RationalFunction(1);
    auto bad = DeformationTable::unchecked(4, oracle);
    auto res = check_associativity_formal(bad);
    CHECK_FALSE(res.ok);
    CHECK(res.a >= 0);
}

TEST_CASE("specialize family") {
    auto f = toy_hom();
    auto table = structure_constants(compute_image_basis(f, 4));

    // s=0 equals the special fiber
    auto at0 = specialize_family(table, q(0));
    auto fiber = special_fiber(table);
    for (int k = 0; k < 4; ++k)
        for (int m = 0; m < 4; ++m)
            for (int i = 0; i < 4; ++i) CHECK(at0.constant(k, m, i) == fiber.constant(k, m, i));

    // s=1 is the full matrix algebra: semisimple, dim 4, center 1
    auto at1 = specialize_family(table, q(1));
    CHECK(check_associative(at1).ok);
    auto report = structure_report(at1);
    CHECK(report.dim == 4);
    CHECK(report.radical_dim == 0);
    CHECK(report.center_dim == 1);
    CHECK(report.semisimple);
    REQUIRE(report.shape_unique());
    CHECK(report.complex_shapes[0] == std::vector<int>{2});
}

TEST_CASE("polynomial type of the toy table") {
    auto f = toy_hom();
    auto table = structure_constants(compute_image_basis(f, 4));
    auto pt = to_polynomial_type(table);
    CHECK(pt.common_denominator() == UniPolynomial::constant(Var::t, q(1)));
    for (int k = 0; k < 4; ++k)
        for (int m = 0; m < 4; ++m)
            for (int i = 0; i < 4; ++i) {
                CHECK(RationalFunction(pt.entry(k, m, i).poly()) == table.entry(k, m, i));
                CHECK(pt.entry(k, m, i).evaluate(q(0)) == table.constant_part(k, m, i));
            }
}

TEST_CASE("denominator clearing") {
    // a table with c containing 1/(1+t): h = 1+t
    std::vector<RationalFunction> c(1, RationalFunction(RatPoly(q(1)), RatPoly({q(1), q(1)})));
    auto t1 = DeformationTable::unchecked(1, c);
    auto pt = to_polynomial_type(t1);
    CHECK(pt.common_denominator() == UniPolynomial(Var::t, {q(1), q(1)}));
    CHECK(pt.entry(0, 0, 0) == UniPolynomial::constant(Var::t, q(1)));
}

TEST_CASE("relation membership") {
    auto f = toy_hom();
    auto basis = compute_image_basis(f, 4);

    // generators of the toy fiber presentation
    CHECK(relation_in_Jprime(f, basis, rel({{"xx", 1}, {"x", -1}})));
    CHECK(relation_in_Jprime(f, basis, rel({{"yy", 1}})));
    CHECK(relation_in_Jprime(f, basis, rel({{"xy", 1}, {"yx", 1}, {"y", -1}})));

    // x - y is not in J'
    CHECK_FALSE(relation_in_Jprime(f, basis, rel({{"x", 1}, {"y", -1}})));
    // the word 1 is not in J'
    CHECK_FALSE(relation_in_Jprime(f, basis, rel({{"", 1}})));
}

TEST_CASE("verify presentation of the toy fiber") {
    auto f = toy_hom();
    auto basis = compute_image_basis(f, 4);
    Presentation pres({rel({{"xx", 1}, {"x", -1}}), rel({{"yy", 1}}),
                       rel({{"xy", 1}, {"yx", 1}, {"y", -1}})});
    auto check = verify_presentation(f, basis, pres, WeightedGrading(1, 1), 6);
    CHECK(check.verdict == PresentationVerdict::isomorphic);
    CHECK(check.quotient_dim == 4);

    // a failing relation is reported individually
    Presentation bad({rel({{"x", 1}, {"y", -1}}), rel({{"yy", 1}})});
    auto fail = verify_presentation(f, basis, bad, WeightedGrading(1, 1), 6);
    CHECK(fail.verdict == PresentationVerdict::failed);
    REQUIRE(fail.failed_relations.size() == 1);
    CHECK(fail.failed_relations[0] == 0);

    // empty relation list: no certificate possible
    auto open = verify_presentation(f, basis, Presentation(), WeightedGrading(1, 1), 6);
    CHECK(open.verdict == PresentationVerdict::inconclusive);
}

TEST_CASE("toy flatness certificate") {
    auto f = toy_hom();
    auto table = structure_constants(compute_image_basis(f, 4));
    auto cert = flatness_certificate(table, f);
    CHECK(cert.s_max == q(1, 2));
    CHECK(cert.denominator_roots == 0);
    CHECK(cert.semisimple_roots == 0);
    // the semisimplicity master has no roots in the whole of (0, 1]
    CHECK(sturm_roots_in_interval(cert.semisimple_master, q(0), q(1)) == 0);
    CHECK(cert.semisimple_master.evaluate(q(1)) != 0);

    // structure reports agree across the certified interval
    auto r1 = structure_report(specialize_family(table, cert.s_max));
    auto r2 = structure_report(specialize_family(table, cert.s_max / 2));
    auto r3 = structure_report(specialize_family(table, cert.s_max / 4));
    CHECK(r1.dim == r2.dim);
    CHECK(r1.radical_dim == r2.radical_dim);
    CHECK(r1.center_dim == r2.center_dim);
    CHECK(r1.complex_shapes == r2.complex_shapes);
    CHECK(r1.dim == r3.dim);
    CHECK(r1.radical_dim == r3.radical_dim);
    CHECK(r1.center_dim == r3.center_dim);
    CHECK(r1.complex_shapes == r3.complex_shapes);
}

TEST_CASE("generation dimension") {
    auto f = toy_hom();
    CHECK(generation_dimension_at(f, q(1)) == 4);
    CHECK(generation_dimension_at(f, q(0)) == 3); // span of I, E11, E12
    CHECK(generation_dimension_at(f, q(1, 2)) == 4);
}

TEST_CASE("engine edge cases") {
    // scalar images: rank 1 with q = (1)
    auto alg = AmbientAlgebra::create({BlockSpec(BlockAlgebra::matrix(1), u_minus_one())});
    auto one = AmbientElement::identity(alg);
    HomomorphismSpec f(alg, one, one);
    auto basis = compute_image_basis(f, 1);
    REQUIRE(basis.size() == 1);
    CHECK(basis.entry(0).preimage == FreePolynomial::one());

    // a tiny word budget is repaired by the closure fixpoint: the basis may
    // differ but is still certified of full rank with a sound table
    auto g = toy_hom();
    ImageBasisOptions tight;
    tight.word_budget = 1;
    auto repaired = compute_image_basis(g, 4, tight);
    REQUIRE(repaired.size() == 4);
    CHECK_FALSE(repaired.elimination_determinant().is_zero());
    auto repaired_table = structure_constants(repaired);
    CHECK(check_associativity_formal(repaired_table).ok);
    CHECK(radical(special_fiber(repaired_table)).size() == 2);

    // expected dimension above the ambient dimension is rejected
    CHECK_THROWS_AS(compute_image_basis(g, 5), std::invalid_argument);
    ImageBasisOptions none;
    none.word_budget = 0;
    CHECK_THROWS_AS(compute_image_basis(g, 4, none), std::invalid_argument);

    // scalar images into a bigger ambient close at rank 1
    auto big = toy_hom();
    HomomorphismSpec degenerate(big.ambient(), AmbientElement::identity(big.ambient()),
                                AmbientElement::identity(big.ambient()));
    CHECK_THROWS_WITH(compute_image_basis(degenerate, 4),
                      Catch::Matchers::ContainsSubstring("closed at rank 1"));
}

TEST_CASE("pole pivot repair") {
    // f(x) = t*E11, f(y) = E12 + t*E21: the word x has pivot order 1, but the
    // product x*y exposes E11-direction content at order... exercise the
    // evict/cascade path with images whose leading orders interleave.
    auto alg = AmbientAlgebra::create({BlockSpec(BlockAlgebra::matrix(2), u_minus_one())});
    auto zero = AmbientElement::zero(alg);
    auto cx = zero.coords();
    cx[0][0] = UPoly(tpow(1)); // t E11
    auto cy = zero.coords();
    cy[0][1] = UPoly(RationalFunction(1));
    cy[0][2] = UPoly(tpow(1));
    HomomorphismSpec f(alg, AmbientElement(alg, cx), AmbientElement(alg, cy));
    auto basis = compute_image_basis(f, 4);
    REQUIRE(basis.size() == 4);
    for (std::size_t i = 0; i + 1 < basis.size(); ++i)
        CHECK(basis.entry(i).pivot_order <= basis.entry(i + 1).pivot_order);
    // closure holds and structure constants are pole-free
    auto table = structure_constants(basis);
    CHECK(check_associativity_formal(table).ok);
    CHECK(special_fiber(table).dim() == 4);
}
