#pragma once

#include "pcurv/algebroid.hpp"
#include "pcurv/parse.hpp"

namespace fixtures {

using namespace pcurv;

inline Poly P(const RingPtr& r, const char* s) { return parse_poly(s, r); }

/// Action algebroid of span{d, x d} on the line: [e1, e2] = e1,
/// delta(e1) = d/dx, delta(e2) = x d/dx, e1^[p] = 0, e2^[p] = e2.
inline AlgebroidPtr affine_algebroid(std::uint64_t p) {
    auto r = PolyRing::make(p, {"x"});
    Poly zero(r), one = Poly::constant(r, 1);
    AlgebroidPresentation::BracketTable br(2, std::vector<std::vector<Poly>>(2));
    br[0][0] = {zero, zero};
    br[1][1] = {zero, zero};
    br[0][1] = {one, zero};
    br[1][0] = {-one, zero};
    std::vector<Derivation> anchor{Derivation(r, {one}), Derivation(r, {P(r, "x")})};
    std::vector<FirstOrder> p_op{FirstOrder::zero(r, 2), FirstOrder::generator(r, 2, 1)};
    return std::make_shared<const AlgebroidPresentation>(r, 2, br, anchor, p_op);
}

/// Tangent algebroid of the line with a replaced p-operation value.
inline AlgebroidPtr tangent_line_with(std::uint64_t p, FirstOrder value) {
    auto r = PolyRing::make(p, {"x"});
    auto t = tangent_algebroid(r);
    return std::make_shared<const AlgebroidPresentation>(t->with_p_op({std::move(value)}));
}

}  // namespace fixtures
