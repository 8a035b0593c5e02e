#include "doctest.h"

#include "fixtures.hpp"
#include "pcurv/errors.hpp"
#include "pcurv/hitchin.hpp"
#include "pcurv/samples.hpp"

using namespace pcurv;
using fixtures::P;

namespace {

ModulePtr scalar_module(const AlgebroidPtr& alg, const char* entry) {
    return std::make_shared<const LambdaModule>(
        alg, 1, std::vector<PolyMatrix>{PolyMatrix(alg->ring(), 1, 1, {P(alg->ring(), entry)})});
}

/// e_k as the sum of principal k x k minors of sum_a y_a psi_a.
Poly principal_minor_sum(const PCurvature& c, const HitchinInvariants& inv, std::size_t k) {
    const std::size_t r = c.module->rank();
    PolyMatrix psi(inv.ring, r, r);
    for (std::size_t a = 0; a < c.psi.size(); ++a)
        psi = psi + c.psi[a].lift(inv.ring).scaled(Poly::variable(inv.ring, inv.duals[a]));
    Poly sum(inv.ring);
    for (std::uint32_t mask = 0; mask < (1u << r); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < r; ++i)
            if (mask & (1u << i)) idx.push_back(i);
        PolyMatrix minor(inv.ring, k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) minor(i, j) = psi(idx[i], idx[j]);
        sum += minor.determinant();
    }
    return sum;
}

}  // namespace

TEST_CASE("universal_char_poly examples") {
    auto r = PolyRing::make(3, {"x"});
    auto c = p_curvature(scalar_module(tangent_algebroid(r), "x^2"));
    auto chi = universal_char_poly(c);
    CHECK(chi.value == parse_poly("lambda - (x^6 + 2)*y", chi.ring));

    PolyMatrix a(r, 2, 2, {P(r, "0"), P(r, "1"), P(r, "x"), P(r, "0")});
    auto ch = p_curvature(std::make_shared<const LambdaModule>(higgs_algebroid(r, 1), 2, std::vector<PolyMatrix>{a}));
    auto chi2 = universal_char_poly(ch);
    CHECK(chi2.value == parse_poly("lambda^2 + 2*x^3*y^2", chi2.ring));

    auto zero = p_curvature(std::make_shared<const LambdaModule>(
        higgs_algebroid(r, 1), 3, std::vector<PolyMatrix>{PolyMatrix(r, 3, 3)}));
    auto chi0 = universal_char_poly(zero);
    CHECK(chi0.value == parse_poly("lambda^3", chi0.ring));

    PCurvature bad{ch.module, {}};
    auto h2 = higgs_algebroid(r, 2);
    PolyMatrix n1(r, 2, 2, {P(r, "0"), P(r, "1"), P(r, "0"), P(r, "0")});
    PolyMatrix n2(r, 2, 2, {P(r, "0"), P(r, "0"), P(r, "1"), P(r, "0")});
    PCurvature noncommuting{std::make_shared<const LambdaModule>(h2, 2, std::vector<PolyMatrix>{n1, n2}), {n1, n2}};
    CHECK_THROWS_AS(universal_char_poly(noncommuting), MathError);
}

TEST_CASE("dual variable names avoid coordinates") {
    auto r = PolyRing::make(3, {"y", "lambda"});
    auto t = tangent_algebroid(r);
    auto c = p_curvature(std::make_shared<const LambdaModule>(
        t, 1, std::vector<PolyMatrix>{PolyMatrix(r, 1, 1, {P(r, "y")}), PolyMatrix(r, 1, 1)}));
    auto chi = universal_char_poly(c);
    CHECK(chi.ring->variable(chi.duals[0]).name == "y1");
    CHECK(chi.ring->variable(chi.duals[1]).name == "y2");
    CHECK(chi.ring->variable(chi.lambda).name == "lambda_");
}

TEST_CASE("hitchin_invariants examples") {
    auto r = PolyRing::make(3, {"x"});
    PolyMatrix a(r, 2, 2, {P(r, "0"), P(r, "1"), P(r, "x"), P(r, "0")});
    auto ch = p_curvature(std::make_shared<const LambdaModule>(higgs_algebroid(r, 1), 2, std::vector<PolyMatrix>{a}));
    auto inv = hitchin_invariants(ch);
    CHECK(inv.e(1).is_zero());
    CHECK(inv.e(2) == parse_poly("2*x^3*y^2", inv.ring));

    auto c = p_curvature(scalar_module(tangent_algebroid(r), "x^2"));
    auto inv1 = hitchin_invariants(c);
    CHECK(inv1.e(1) == parse_poly("(x^6 + 2)*y", inv1.ring));

    auto counter = higgs_algebroid(r, 1, PolyMatrix(r, 1, 1, {P(r, "x")}));
    auto inv2 = hitchin_invariants(p_curvature(scalar_module(counter, "x")));
    CHECK(inv2.e(1) == parse_poly("(x^3 - x^2)*y", inv2.ring));
}

TEST_CASE("hitchin coefficients equal principal minor sums") {
    for (std::uint64_t p : {3, 5}) {
        Rng rng(p + 3);
        auto r2 = PolyRing::make(p, {"x", "y"});
        auto t2 = tangent_algebroid(r2);
        auto h = higgs_algebroid(PolyRing::make(p, {"x"}), 2);
        for (int trial = 0; trial < 3; ++trial) {
            for (auto m : {pullback_module(t2, random_flat_connection(r2, 2, rng)),
                           random_commuting_higgs_module(h, 3, rng, 1)}) {
                auto c = p_curvature(m);
                auto inv = hitchin_invariants(c);
                for (std::size_t k = 1; k <= m->rank(); ++k) CHECK(inv.e(k) == principal_minor_sum(c, inv, k));
            }
        }
    }
}

TEST_CASE("canonical connection and Cartier descent") {
    auto r = PolyRing::make(3, {"x"});
    auto d = Derivation::coordinate(r, 0);
    CHECK(canonical_connection_apply({P(r, "x^3")}, d)[0].is_zero());
    CHECK(canonical_connection_apply({P(r, "x")}, d)[0] == P(r, "1"));
    CHECK(canonical_connection_apply({P(r, "2")}, d)[0].is_zero());

    auto ok = cartier_descend_section({P(r, "x^3"), P(r, "x^6 + 2")});
    REQUIRE(std::holds_alternative<std::vector<Poly>>(ok));
    CHECK(std::get<std::vector<Poly>>(ok) == std::vector<Poly>{P(r, "x"), P(r, "x^2 + 2")});
    auto bad = cartier_descend_section({P(r, "x"), P(r, "0")});
    REQUIRE(std::holds_alternative<SectionNotDescendable>(bad));
    CHECK(std::get<SectionNotDescendable>(bad).component == 0);
    auto zero = cartier_descend_section({Poly(r), Poly(r)});
    CHECK(std::get<std::vector<Poly>>(zero) == std::vector<Poly>{Poly(r), Poly(r)});
}

TEST_CASE("trace_flatness_check") {
    auto r = PolyRing::make(3, {"x"});
    auto c = p_curvature(scalar_module(tangent_algebroid(r), "x^2"));
    CHECK(trace_flatness_check(c).passed());

    auto counter = higgs_algebroid(r, 1, PolyMatrix(r, 1, 1, {P(r, "x")}));
    auto rc = trace_flatness_check(p_curvature(scalar_module(counter, "x")));
    CHECK(rc.passed());
    CHECK(rc.find("trace-flatness")->note == "anchor degenerate");

    auto r2 = PolyRing::make(2, {"x"});
    CHECK_THROWS_AS(trace_flatness_check(p_curvature(scalar_module(tangent_algebroid(r2), "x"))), InputError);

    // Higgs field under the Rees anchor t d at t != 0
    for (std::uint64_t p : {3, 5}) {
        Rng rng(p);
        auto rr = rees_algebroid(*tangent_algebroid(PolyRing::make(p, {"x"})));
        auto m = std::make_shared<const LambdaModule>(
            rr, 2, std::vector<PolyMatrix>{random_matrix(rr->ring(), 2, rng, {2, 2, true})});
        CHECK(trace_flatness_check(p_curvature(m)).passed());
    }
}

TEST_CASE("descend_invariants examples") {
    auto r = PolyRing::make(3, {"x"});
    auto t = tangent_algebroid(r);
    auto inv = hitchin_invariants(p_curvature(scalar_module(t, "x^2")));
    auto rep = descend_invariants(inv, *t);
    REQUIRE(rep.entries.size() == 1);
    CHECK(rep.all_descended());
    CHECK(*rep.entries[0].descended == P(r, "x^2 + 2"));
    CHECK(rep.entries[0].descended->pow(3) == P(r, "x^6 + 2"));
    CHECK(y_monomial_string(rep.entries[0].y_monomial, rep.dual_names) == "y");

    auto counter = higgs_algebroid(r, 1, PolyMatrix(r, 1, 1, {P(r, "x")}));
    auto cinv = hitchin_invariants(p_curvature(scalar_module(counter, "x")));
    auto crep = descend_invariants(cinv, *counter);
    CHECK_FALSE(crep.all_descended());
    CHECK_FALSE(crep.contradicts_theorem());
    REQUIRE(crep.first_failure());
    REQUIRE(crep.first_failure()->witness.offending.size() == 1);
    CHECK(Poly::from_terms(r, crep.first_failure()->witness.offending) == P(r, "-x^2"));

    auto rees = rees_algebroid(*t);
    auto rm = rees_module(*scalar_module(t, "x^2"), rees);
    auto rc = p_curvature(rm);
    const RingPtr& rr = rees->ring();
    CHECK(rc.psi[0](0, 0) == parse_poly("x^6 + 2*t^2", rr));
    auto rrep = descend_invariants(hitchin_invariants(rc), *rees);
    REQUIRE(rrep.all_descended());
    const Poly& down = *rrep.entries[0].descended;
    CHECK(down == parse_poly("x^2 + 2*t^2", rr));
    CHECK(down.specialize(*rr->rees_index(), 1, r) == P(r, "x^2 + 2"));
    CHECK(down.specialize(*rr->rees_index(), 0, r) == P(r, "x^2"));

    CHECK_THROWS_AS(descend_invariants(inv, *tangent_algebroid(PolyRing::make(2, {"x"}))), InputError);
}

TEST_CASE("descent theorem on random flat modules") {
    for (std::uint64_t p : {3, 5}) {
        Rng rng(p * 5);
        std::vector<ModulePtr> modules;
        auto r2 = PolyRing::make(p, {"x", "y"});
        modules.push_back(pullback_module(tangent_algebroid(r2), random_flat_connection(r2, 2, rng)));
        auto aff = fixtures::affine_algebroid(p);
        modules.push_back(pullback_module(aff, random_flat_connection(aff->ring(), 2, rng)));
        auto ra = rees_algebroid(*aff);
        modules.push_back(pullback_module(ra, random_flat_connection(ra->ring(), 2, rng)));
        for (const auto& m : modules) {
            REQUIRE(anchor_generic_surjectivity(*m->algebroid()).generically_surjective);
            auto c = p_curvature(m);
            auto rep = descend_invariants(hitchin_invariants(c), *m->algebroid());
            CHECK(rep.all_descended());
            for (const auto& e : rep.entries)
                if (e.descended) CHECK(e.descended->frobenius_pullback() == e.original);
            CHECK(trace_flatness_check(c).passed());
        }
    }
}

TEST_CASE("Rees module fibres") {
    auto r = PolyRing::make(3, {"x"});
    auto t = tangent_algebroid(r);
    auto m = scalar_module(t, "x^2");
    auto rm = rees_module(*m, rees_algebroid(*t));
    auto one = specialize_t(*rm, 1);
    CHECK(*one->algebroid() == *t);
    CHECK(p_curvature(one).psi == p_curvature(m).psi);
    auto zero = specialize_t(*rm, 0);
    CHECK(p_curvature(zero).psi[0] == PolyMatrix(r, 1, 1, {P(r, "x^6")}));

    // a flat rank-2 connection whose matrices do not commute has a non-flat unscaled lift
    auto r2 = PolyRing::make(3, {"x", "y"});
    auto t2 = tangent_algebroid(r2);
    auto rees2 = rees_algebroid(*t2);
    Rng rng(9);
    bool rejected = false;
    for (int trial = 0; trial < 20 && !rejected; ++trial) {
        auto conn = random_flat_connection(r2, 2, rng);
        if (conn[0].commutator(conn[1]).is_zero()) continue;
        auto flat = pullback_module(t2, conn);
        REQUIRE(validate_flatness(*flat).passed());
        CHECK_THROWS_AS(rees_module(*flat, rees2), MathError);
        rejected = true;
    }
    CHECK(rejected);
}
