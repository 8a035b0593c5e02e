#include "doctest.h"

#include "fixtures.hpp"
#include "pcurv/errors.hpp"
#include "pcurv/operator.hpp"
#include "pcurv/random.hpp"

using namespace pcurv;
using fixtures::P;
using Op = OperatorElement;

namespace {

struct Line {
    RingPtr ring;
    AlgebroidPtr alg;
    Op d, x;
    explicit Line(std::uint64_t p)
        : ring(PolyRing::make(p, {"x"})), alg(tangent_algebroid(ring)), d(Op::generator(alg, 0)),
          x(Op::function(alg, P(ring, "x"))) {}
    Op f(const char* s) const { return Op::function(alg, P(ring, s)); }
    Op mono(std::uint32_t k, const char* coeff) const { return Op::monomial(alg, {k}, P(ring, coeff)); }
};

/// s_i(x1, x2) = -(1/i) sum over words sigma in {1,2}^(p-1) with i ones of
/// ad(x_sigma(1)) ... ad(x_sigma(p-1)) (x2)
std::vector<Op> lie_polynomials_by_words(const Op& x1, const Op& x2) {
    const auto& field = x1.algebroid()->ring()->field();
    const std::uint32_t p = field.characteristic();
    std::vector<Op> s(p - 1, Op(x1.algebroid()));
    for (std::uint32_t mask = 0; mask < (1u << (p - 1)); ++mask) {
        Op acc = x2;
        std::uint32_t ones = 0;
        for (int pos = static_cast<int>(p) - 2; pos >= 0; --pos) {
            bool one = (mask >> pos) & 1;
            ones += one;
            acc = commutator(one ? x1 : x2, acc);
        }
        if (ones >= 1 && ones <= p - 1) s[ones - 1] += acc;
    }
    for (std::uint32_t i = 1; i < p; ++i) s[i - 1] = s[i - 1].scaled(field.neg(field.inv(i)));
    return s;
}

}  // namespace

TEST_CASE("op_mul examples") {
    Line l(3);
    CHECK(l.d * l.x == l.x * l.d + l.f("1"));
    CHECK((l.d * l.x).to_string() == "x*d_x + 1");
    Op xd = l.x * l.d;
    CHECK(xd * xd == l.mono(2, "x^2") + xd);

    auto r = PolyRing::make(3, {"x"});
    auto h = higgs_algebroid(r, 2);
    Op e1 = Op::generator(h, 0), e2 = Op::generator(h, 1);
    CHECK(e1 * e2 == Op::monomial(h, {1, 1}, Poly::constant(r, 1)));
    CHECK(e2 * e1 == e1 * e2);

    auto other = tangent_algebroid(PolyRing::make(5, {"x"}));
    CHECK_THROWS_AS(l.d * Op::generator(other, 0), MismatchError);
}

TEST_CASE("commutator examples") {
    Line l(3);
    CHECK(commutator(l.d, l.x) == l.f("1"));
    CHECK(commutator(l.d, l.f("x^2")) == l.f("2*x"));
    auto r = PolyRing::make(3, {"x"});
    auto h = higgs_algebroid(r, 2);
    CHECK(commutator(Op::generator(h, 0), Op::generator(h, 1)).is_zero());
    auto aff = fixtures::affine_algebroid(5);
    CHECK(commutator(Op::generator(aff, 0), Op::generator(aff, 1)) == Op::generator(aff, 0));
    CHECK(commutator(Op::generator(aff, 1), Op::generator(aff, 0)) == -Op::generator(aff, 0));
}

TEST_CASE("op_pow examples") {
    Line l(3);
    Op xd = l.x * l.d;
    CHECK(op_pow(xd, 3) == l.mono(3, "x^3") + xd);
    CHECK(op_pow(l.d + l.x, 3) == l.mono(3, "1") + l.f("x^3"));
    CHECK(op_pow(xd, 0) == Op::one(l.alg));
    CHECK(op_pow(xd * xd, 2) == op_pow(xd, 4));
    CHECK_THROWS_AS(op_pow(l.d + l.x, 50, 10), ResourceError);
}

TEST_CASE("lie_polynomials examples") {
    Line l(3);
    auto s = lie_polynomials(l.d, l.f("x^4 + x"));
    REQUIRE(s.size() == 2);
    CHECK(s[0].is_zero());
    CHECK(s[1] == l.f("12*x^2"));  // f'' for f = x^4 + x
    auto s2 = lie_polynomials(l.d, l.f("x^2"));
    CHECK(s2[1] == l.f("2"));
    for (const auto& si : lie_polynomials(l.d, Op(l.alg))) CHECK(si.is_zero());
    CHECK_THROWS_AS(lie_polynomials(l.d * l.d, l.x), MathError);

    auto r2 = PolyRing::make(2, {"x"});
    auto t2 = tangent_algebroid(r2);
    CHECK(lie_polynomials(Op::generator(t2, 0), Op::function(t2, P(r2, "x"))).size() == 1);
}

TEST_CASE("lie_polynomials agree with the word expansion") {
    for (std::uint64_t p : {3, 5, 7}) {
        for (auto alg : {fixtures::affine_algebroid(p), tangent_algebroid(PolyRing::make(p, {"x", "y"}))}) {
            Rng rng(p * 31);
            for (int trial = 0; trial < 4; ++trial) {
                Op a = Op::from_first_order(alg, random_first_order(alg, rng, 2));
                Op b = Op::from_first_order(alg, random_first_order(alg, rng, 2));
                auto s = lie_polynomials(a, b);
                auto oracle = lie_polynomials_by_words(a, b);
                REQUIRE(s.size() == oracle.size());
                for (std::size_t i = 0; i < s.size(); ++i) {
                    CHECK(s[i] == oracle[i]);
                    CHECK(s[i].degree() <= 1);
                }
                // Jacobson's formula
                Op total(alg);
                for (const auto& si : s) total += si;
                CHECK(op_pow(a + b, p) == op_pow(a, p) + op_pow(b, p) + total);
            }
        }
    }
}

TEST_CASE("iota examples") {
    for (std::uint64_t p : {3, 5}) {
        Line l(p);
        CHECK(iota(l.x).is_zero());
        CHECK(iota(l.f("x^2 + 1")).is_zero());
        CHECK(iota(l.d) == op_pow(l.d, p));
        auto r = PolyRing::make(p, {"x"});
        auto h = higgs_algebroid(r, 1);
        Op e = Op::generator(h, 0);
        CHECK(iota(e) == op_pow(e, p));
    }
    Line l(3);
    CHECK_THROWS_AS(iota(l.d * l.d), MathError);

    auto bad = fixtures::tangent_line_with(3, FirstOrder::generator(PolyRing::make(3, {"x"}), 1, 0));
    CHECK_THROWS_AS(iota(Op::generator(bad, 0)), MathError);
    CHECK_FALSE(is_central(iota(Op::generator(bad, 0), false)));
}

TEST_CASE("is_central examples") {
    Line l(3);
    CHECK(is_central(op_pow(l.d, 3)));
    CHECK_FALSE(is_central(l.x));
    CHECK(is_central(l.f("x^3 + 2")));
    auto r = PolyRing::make(3, {"x"});
    auto h = higgs_algebroid(r, 2);
    CHECK(is_central(Op::generator(h, 0) * Op::generator(h, 1) + Op::function(h, P(r, "x"))));
}

TEST_CASE("symbol_top examples") {
    Line l(3);
    SymbolElement s = symbol_top(l.x * l.d + l.f("1"));
    CHECK(s.degree() == 1);
    CHECK(s == symbol_of(l.alg, FirstOrder::of_components(l.ring, {P(l.ring, "x")})));
    SymbolElement si = symbol_top(iota(l.d));
    CHECK(si.degree() == 3);
    CHECK(si.coefficient({3}) == Poly::constant(l.ring, 1));
    SymbolElement sf = symbol_top(l.f("x^2"));
    CHECK(sf.degree() == 0);
    CHECK(sf.coefficient({0}) == P(l.ring, "x^2"));
}

TEST_CASE("check_enveloping_p_structure examples") {
    auto r = PolyRing::make(3, {"x"});
    CHECK(check_enveloping_p_structure(tangent_algebroid(r)).passed());
    CHECK(check_enveloping_p_structure(higgs_algebroid(r, 2)).passed());
    CHECK(check_enveloping_p_structure(fixtures::affine_algebroid(3)).passed());

    // d^[3] := 1 is a central shift and therefore still a p-structure
    auto one = fixtures::tangent_line_with(3, FirstOrder::of_function(Poly::constant(r, 1), 1));
    CHECK(check_enveloping_p_structure(one).passed());

    auto bad = fixtures::tangent_line_with(3, FirstOrder::generator(r, 1, 0));
    auto report = check_enveloping_p_structure(bad);
    CHECK(report.find("ad-axiom")->status == CheckStatus::Fail);
    CHECK(report.find("jacobson")->ok());
    CHECK(report.find("deligne")->ok());
}

TEST_CASE("normal form properties") {
    for (std::uint64_t p : {2, 3, 5}) {
        std::vector<AlgebroidPtr> algs{fixtures::affine_algebroid(p), tangent_algebroid(PolyRing::make(p, {"x", "y"})),
                                       rees_algebroid(*fixtures::affine_algebroid(p))};
        for (const auto& alg : algs) {
            Rng rng(p + 100);
            auto rand_op = [&] {
                Op a = Op::from_first_order(alg, random_first_order(alg, rng, 2));
                Op b = Op::from_first_order(alg, random_first_order(alg, rng, 2));
                return a * b + a;
            };
            for (int trial = 0; trial < 5; ++trial) {
                Op a = rand_op(), b = rand_op(), c = rand_op();
                CHECK((a * b) * c == a * (b * c));
                Op ab = a * b;
                CHECK(ab.degree() <= a.degree() + b.degree());
                SymbolElement prod = symbol_top(a) * symbol_top(b);
                if (!prod.is_zero()) CHECK(symbol_top(ab) == prod);
            }
        }
    }
}

TEST_CASE("iota is p-linear, central, and has symbol D^p") {
    for (std::uint64_t p : {2, 3, 5}) {
        std::vector<AlgebroidPtr> algs{fixtures::affine_algebroid(p), tangent_algebroid(PolyRing::make(p, {"x", "y"})),
                                       higgs_algebroid(PolyRing::make(p, {"x"}), 2,
                                                       PolyMatrix::identity(PolyRing::make(p, {"x"}), 2))};
        for (const auto& alg : algs) {
            Rng rng(7 * p);
            for (int trial = 0; trial < 4; ++trial) {
                FirstOrder d1 = random_first_order(alg, rng, 2), d2 = random_first_order(alg, rng, 2);
                Poly f = random_poly(alg->ring(), rng, {2, 2, true});
                Op o1 = Op::from_first_order(alg, d1), o2 = Op::from_first_order(alg, d2);
                Op i1 = iota(o1), i2 = iota(o2);
                CHECK(iota(o1 + o2) == i1 + i2);
                CHECK(iota(Op::from_first_order(alg, d1.scaled(f))) == i1.scaled(f.pow(p)));
                CHECK(is_central(i1));
                FirstOrder h = d1.symbol_part();
                if (!h.is_zero()) CHECK(symbol_top(iota(Op::from_first_order(alg, h))) == symbol_of(alg, h).pow(p));
            }
        }
    }
}
