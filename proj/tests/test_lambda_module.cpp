#include "doctest.h"

#include "fixtures.hpp"
#include "pcurv/errors.hpp"
#include "pcurv/lambda_module.hpp"
#include "pcurv/samples.hpp"

using namespace pcurv;
using fixtures::P;

namespace {

ModulePtr scalar_module(const AlgebroidPtr& alg, std::vector<const char*> entries) {
    std::vector<PolyMatrix> mats;
    for (const char* e : entries) mats.emplace_back(alg->ring(), 1, 1, std::vector<Poly>{P(alg->ring(), e)});
    return std::make_shared<const LambdaModule>(alg, 1, std::move(mats));
}

PolyMatrix scalar(const RingPtr& r, const char* s) { return PolyMatrix(r, 1, 1, {P(r, s)}); }

/// Classical rank-one formula: (d + a)^p acts on O as a^p + d^(p-1)(a).
Poly scalar_p_curvature(const Poly& a) {
    const auto p = a.ring()->characteristic();
    Poly d = a;
    for (std::uint32_t i = 0; i + 1 < p; ++i) d = poly_derive(d, 0);
    return a.pow(p) + d;
}

void check_all(const PCurvature& c) {
    CHECK(check_iota_equivalence(c).passed());
    CHECK(check_p_linearity(c, {2, 2, 3, 5}).passed());
    CHECK(check_higgs_commutativity(c).passed());
    CHECK(check_flat_commutation(c).passed());
}

}  // namespace

TEST_CASE("nabla_of examples") {
    auto r = PolyRing::make(3, {"x"});
    auto t = tangent_algebroid(r);
    auto m = scalar_module(t, {"x^2"});
    auto weyl = weyl_algebroid(*m);
    CHECK(nabla_of(*m, FirstOrder::of_function(Poly::constant(r, 1), 1)) == MatrixDiffOp::identity(weyl, 1));
    MatrixDiffOp d = nabla_of(*m, FirstOrder::generator(r, 1, 0));
    CHECK(d(0, 0).to_string() == "d_x + x^2");
    FirstOrder xe = FirstOrder::of_components(r, {P(r, "x")});
    CHECK(nabla_of(*m, xe)(0, 0).to_string() == "x*d_x + x^3");
    CHECK(d.apply({P(r, "x")}) == std::vector<Poly>{P(r, "x^3 + 1")});
    CHECK_THROWS_AS(LambdaModule(t, 2, {scalar(r, "x")}), DimensionError);
}

TEST_CASE("validate_flatness examples") {
    auto r = PolyRing::make(3, {"x", "y"});
    auto t = tangent_algebroid(r);
    CHECK(validate_flatness(*scalar_module(t, {"0", "0"})).passed());
    auto curved = scalar_module(t, {"y", "0"});
    auto report = validate_flatness(*curved);
    CHECK_FALSE(report.passed());
    CHECK_THROWS_AS(p_curvature(curved), MathError);
    CHECK_NOTHROW(p_curvature(curved, true));

    auto h = higgs_algebroid(r, 2);
    PolyMatrix a1(r, 2, 2, {P(r, "x"), P(r, "1"), P(r, "0"), P(r, "y")});
    PolyMatrix a2 = a1.scaled(P(r, "x + y")) + PolyMatrix::identity(r, 2);
    CHECK(validate_flatness(LambdaModule(h, 2, {a1, a2})).passed());
    PolyMatrix b2(r, 2, 2, {P(r, "0"), P(r, "0"), P(r, "1"), P(r, "0")});
    CHECK_FALSE(validate_flatness(LambdaModule(h, 2, {a1, b2})).passed());
}

TEST_CASE("p_curvature examples") {
    auto r = PolyRing::make(3, {"x"});
    auto t = tangent_algebroid(r);
    auto c = p_curvature(scalar_module(t, {"x^2"}));
    CHECK(c.psi[0] == scalar(r, "x^6 + 2"));
    check_all(c);
    CHECK(p_curvature(scalar_module(t, {"0"})).psi[0].is_zero());

    PolyMatrix a(r, 2, 2, {P(r, "0"), P(r, "1"), P(r, "x"), P(r, "0")});
    auto h = higgs_algebroid(r, 1);
    auto ch = p_curvature(std::make_shared<const LambdaModule>(h, 2, std::vector<PolyMatrix>{a}));
    CHECK(ch.psi[0] == a.pow(3));
    CHECK(ch.psi[0] == PolyMatrix(r, 2, 2, {P(r, "0"), P(r, "x"), P(r, "x^2"), P(r, "0")}));
    check_all(ch);

    auto counter = higgs_algebroid(r, 1, scalar(r, "x"));
    auto cc = p_curvature(scalar_module(counter, {"x"}));
    CHECK(cc.psi[0] == scalar(r, "x^3 - x^2"));
    check_all(cc);

    auto shifted = shift_p_structure(t, {{FirstOrder::of_function(P(r, "x^3"), 1)}});
    auto cs = p_curvature(scalar_module(shifted, {"x^2"}));
    CHECK(cs.psi[0] == scalar(r, "x^6 + 2 - x^3"));
    check_all(cs);
}

TEST_CASE("rank-one tangent p-curvature matches the classical formula") {
    for (std::uint64_t p : {2, 3, 5, 7}) {
        auto r = PolyRing::make(p, {"x"});
        auto t = tangent_algebroid(r);
        Rng rng(p);
        for (int trial = 0; trial < 8; ++trial) {
            Poly a = random_poly(r, rng, {4, 3, false});
            auto m = std::make_shared<const LambdaModule>(t, 1, std::vector<PolyMatrix>{PolyMatrix(r, 1, 1, {a})});
            CHECK(p_curvature(m).psi[0](0, 0) == scalar_p_curvature(a));
        }
    }
}

TEST_CASE("p_linearity examples") {
    auto r = PolyRing::make(3, {"x"});
    auto m = scalar_module(tangent_algebroid(r), {"x^2"});
    auto c = p_curvature(m);
    CHECK(p_curvature_of(*m, FirstOrder::of_components(r, {P(r, "1")})) == c.psi[0]);
    CHECK(p_curvature_of(*m, FirstOrder::of_components(r, {P(r, "2")})) == c.psi[0].scaled(P(r, "2")));
    CHECK(p_curvature_of(*m, FirstOrder::of_components(r, {P(r, "x")})) == c.psi[0].scaled(P(r, "x^3")));
}

TEST_CASE("random flat modules") {
    for (std::uint64_t p : {3, 5}) {
        Rng rng(p * 11);
        auto r2 = PolyRing::make(p, {"x", "y"});
        auto t2 = tangent_algebroid(r2);
        for (std::size_t rank : {1, 2}) {
            auto m = pullback_module(t2, random_flat_connection(r2, rank, rng));
            REQUIRE(validate_flatness(*m).passed());
            check_all(p_curvature(m));
        }

        auto aff = fixtures::affine_algebroid(p);
        auto ma = pullback_module(aff, random_flat_connection(aff->ring(), 2, rng));
        REQUIRE(validate_flatness(*ma).passed());
        check_all(p_curvature(ma));

        auto ra = rees_algebroid(*aff);
        auto mr = pullback_module(ra, random_flat_connection(ra->ring(), 2, rng));
        REQUIRE(validate_flatness(*mr).passed());
        check_all(p_curvature(mr));

        auto r1 = PolyRing::make(p, {"x"});
        auto h = higgs_algebroid(r1, 2);
        auto mh = random_commuting_higgs_module(h, 2, rng);
        REQUIRE(validate_flatness(*mh).passed());
        auto ch = p_curvature(mh);
        for (std::size_t a = 0; a < 2; ++a) CHECK(ch.psi[a] == mh->matrix(a).pow(p));
        check_all(ch);
    }
}

TEST_CASE("horizontality balances the derivative of psi against a commutator") {
    // psi commutes with nabla_b, so delta_b(psi) = [psi, A_b]; neither side vanishes here
    auto r = PolyRing::make(3, {"x", "y"});
    auto t = tangent_algebroid(r);
    Rng rng(4);
    bool seen_nonzero = false;
    for (int trial = 0; trial < 10; ++trial) {
        auto m = pullback_module(t, random_flat_connection(r, 2, rng));
        auto c = p_curvature(m);
        for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t b = 0; b < 2; ++b) {
                PolyMatrix lhs = c.psi[a].derived(t->anchor(b));
                CHECK(lhs == c.psi[a].commutator(m->matrix(b)));
                seen_nonzero = seen_nonzero || !lhs.is_zero();
            }
    }
    CHECK(seen_nonzero);
}
