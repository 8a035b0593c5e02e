#include "doctest.h"

#include "fixtures.hpp"
#include "pcurv/errors.hpp"
#include "pcurv/operator.hpp"

using namespace pcurv;
using fixtures::P;

TEST_CASE("validate_algebroid examples") {
    auto r = PolyRing::make(3, {"x", "y"});
    CHECK(validate_algebroid(tangent_algebroid(r)).passed());
    CHECK(validate_algebroid(higgs_algebroid(r, 1)).passed());

    Poly zero(r), one = Poly::constant(r, 1);
    AlgebroidPresentation::BracketTable br(2, std::vector<std::vector<Poly>>(2, {zero, zero}));
    br[0][1] = {one, zero};
    br[1][0] = {one, zero};
    auto broken = std::make_shared<const AlgebroidPresentation>(
        r, 2, br, std::vector<Derivation>(2, Derivation(r)), std::vector<FirstOrder>(2, FirstOrder::zero(r, 2)));
    auto report = validate_algebroid(broken);
    CHECK_FALSE(report.passed());
    REQUIRE(report.find("antisymmetry"));
    CHECK(report.find("antisymmetry")->status == CheckStatus::Fail);

    CHECK(validate_algebroid(fixtures::affine_algebroid(5)).passed());
}

TEST_CASE("presentation dimension errors") {
    auto r = PolyRing::make(3, {"x"});
    AlgebroidPresentation::BracketTable bad(1, std::vector<std::vector<Poly>>(2));
    CHECK_THROWS_AS(AlgebroidPresentation(r, 1, bad, {Derivation(r)}, {FirstOrder::zero(r, 1)}), DimensionError);
    AlgebroidPresentation::BracketTable ok(1, std::vector<std::vector<Poly>>(1));
    CHECK_THROWS_AS(AlgebroidPresentation(r, 1, ok, {}, {FirstOrder::zero(r, 1)}), DimensionError);
    CHECK_THROWS_AS(AlgebroidPresentation(r, 1, ok, {Derivation(r)}, {FirstOrder::zero(r, 2)}), DimensionError);
    auto other = PolyRing::make(5, {"x"});
    CHECK_THROWS_AS(AlgebroidPresentation(r, 1, ok, {Derivation(other)}, {FirstOrder::zero(r, 1)}), MismatchError);
}

TEST_CASE("validate_p_structure examples") {
    for (std::uint64_t p : {2, 3, 5}) {
        auto r = PolyRing::make(p, {"x", "y"});
        CHECK(validate_p_structure(tangent_algebroid(r)).passed());
    }
    auto r = PolyRing::make(3, {"x"});
    PolyMatrix alpha(r, 1, 1, {P(r, "x")});
    CHECK(validate_p_structure(higgs_algebroid(r, 1, alpha)).passed());
    PolyMatrix beta(r, 1, 1, {P(r, "x^2 + 2")});
    CHECK(validate_p_structure(higgs_algebroid(r, 1, beta)).passed());

    // e^[3] := d, but [d, x] = 1 while ad(d)^3 (x) = 0
    auto bad = fixtures::tangent_line_with(3, FirstOrder::generator(r, 1, 0));
    auto report = validate_p_structure(bad);
    REQUIRE(report.find("ad-axiom"));
    CHECK(report.find("ad-axiom")->status == CheckStatus::Fail);
    CHECK(report.find("anchor-restricted")->status == CheckStatus::Fail);

    CHECK(validate_p_structure(fixtures::affine_algebroid(3)).passed());
    CHECK(validate_p_structure(fixtures::affine_algebroid(5)).passed());
}

TEST_CASE("tangent_algebroid") {
    auto r1 = PolyRing::make(3, {"x"});
    auto t1 = tangent_algebroid(r1);
    CHECK(t1->rank() == 1);
    CHECK(t1->anchor(0) == Derivation::coordinate(r1, 0));
    CHECK(t1->p_op(0).is_zero());

    auto r2 = PolyRing::make(3, {"x", "y"});
    auto t2 = tangent_algebroid(r2);
    CHECK(t2->rank() == 2);
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
            for (const auto& c : t2->bracket(a, b)) CHECK(c.is_zero());

    auto rr = PolyRing::make(3, {"x"}, true);
    auto tr = tangent_algebroid(rr);
    CHECK(tr->rank() == 1);
    CHECK(tr->anchor(0).components().size() == 1);
    CHECK(validate_algebroid(tr).passed());
}

TEST_CASE("higgs_algebroid") {
    auto r = PolyRing::make(3, {"x"});
    auto h0 = higgs_algebroid(r, 2);
    for (std::size_t a = 0; a < 2; ++a) {
        CHECK(h0->p_op(a).is_zero());
        CHECK(h0->anchor(a).is_zero());
    }
    auto hx = higgs_algebroid(r, 1, PolyMatrix(r, 1, 1, {P(r, "x")}));
    CHECK(hx->p_op(0).components[0] == P(r, "x"));
    auto hid = higgs_algebroid(r, 2, PolyMatrix::identity(r, 2));
    CHECK(hid->p_op(0) == FirstOrder::generator(r, 2, 0));
    CHECK(hid->p_op(1) == FirstOrder::generator(r, 2, 1));
}

TEST_CASE("rees_algebroid and specialize_t") {
    auto r = PolyRing::make(3, {"x"});
    auto t = tangent_algebroid(r);
    auto rees = rees_algebroid(*t);
    const RingPtr& rr = rees->ring();
    REQUIRE(rr->has_rees());
    Poly tv = Poly::variable(rr, *rr->rees_index());
    CHECK(rees->anchor(0) == Derivation::coordinate(rr, 0).scaled(tv));
    CHECK(rees->p_op(0).is_zero());
    CHECK_THROWS_AS(rees_algebroid(*rees), InputError);

    CHECK(*specialize_t(*rees, 1) == *t);
    CHECK(*specialize_t(*rees, 0) == *higgs_algebroid(r, 1));
    CHECK_THROWS_AS(specialize_t(*t, 0), InputError);

    for (std::uint64_t p : {3, 5}) {
        auto aff = fixtures::affine_algebroid(p);
        auto ra = rees_algebroid(*aff);
        Poly tp = Poly::variable(ra->ring(), *ra->ring()->rees_index());
        CHECK(ra->p_op(1).components[1] == tp.pow(p - 1));
        CHECK(ra->bracket(0, 1)[0] == tp);
        CHECK(validate_algebroid(ra).passed());
        CHECK(validate_p_structure(ra).passed());
        CHECK(*specialize_t(*ra, 1) == *aff);
        auto zero_fiber = specialize_t(*ra, 0);
        CHECK(zero_fiber->p_op(1).is_zero());
        CHECK(zero_fiber->anchor(0).is_zero());
    }
}

TEST_CASE("shift_p_structure") {
    auto r = PolyRing::make(3, {"x"});
    auto t = tangent_algebroid(r);
    auto shifted = shift_p_structure(t, {{FirstOrder::of_function(P(r, "x^3"), 1)}});
    CHECK(shifted->p_op(0).function == P(r, "x^3"));
    CHECK(validate_p_structure(shifted).passed());
    CHECK(check_enveloping_p_structure(shifted).passed());

    auto same = shift_p_structure(t, {{FirstOrder::zero(r, 1)}});
    CHECK(*same == *t);

    CHECK_THROWS_AS(shift_p_structure(t, {{FirstOrder::of_function(P(r, "x"), 1)}}), MathError);

    // the constant 1 is central, so it is an admissible shift as well
    auto by_one = shift_p_structure(t, {{FirstOrder::of_function(P(r, "1"), 1)}});
    CHECK(validate_p_structure(by_one).passed());

    // in an abelian Higgs algebroid the generator itself is central
    auto h = higgs_algebroid(r, 1);
    auto hs = shift_p_structure(h, {{FirstOrder::generator(r, 1, 0)}});
    CHECK(hs->p_op(0) == FirstOrder::generator(r, 1, 0));
}

TEST_CASE("anchor_generic_surjectivity") {
    auto r = PolyRing::make(3, {"x", "y"});
    auto tan = anchor_generic_surjectivity(*tangent_algebroid(r));
    CHECK(tan.generically_surjective);
    CHECK(tan.minor == Poly::constant(r, 1));

    CHECK_FALSE(anchor_generic_surjectivity(*higgs_algebroid(r, 2)).generically_surjective);
    CHECK_FALSE(anchor_generic_surjectivity(*higgs_algebroid(r, 1)).generically_surjective);

    auto rees = rees_algebroid(*tangent_algebroid(r));
    auto rs = anchor_generic_surjectivity(*rees);
    CHECK(rs.generically_surjective);
    Poly tv = Poly::variable(rees->ring(), *rees->ring()->rees_index());
    CHECK(rs.minor == tv.pow(2));

    auto aff = anchor_generic_surjectivity(*fixtures::affine_algebroid(3));
    CHECK(aff.generically_surjective);
    CHECK(aff.columns == std::vector<std::size_t>{0});
}

TEST_CASE("round trip through the enveloping algebra") {
    auto r = PolyRing::make(5, {"x", "y"});
    CHECK(check_round_trip(tangent_algebroid(r)).passed());
    CHECK(check_round_trip(fixtures::affine_algebroid(5)).passed());
    CHECK(check_round_trip(rees_algebroid(*fixtures::affine_algebroid(3))).passed());
    CHECK(check_round_trip(higgs_algebroid(r, 2, PolyMatrix::identity(r, 2))).passed());
}
