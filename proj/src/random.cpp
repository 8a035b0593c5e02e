#include "pcurv/random.hpp"

namespace pcurv {

namespace {

std::vector<std::size_t> active_variables(const PolyRing& ring, bool include_rees) {
    std::vector<std::size_t> vars = ring.coordinates();
    if (include_rees && ring.rees_index()) vars.push_back(*ring.rees_index());
    return vars;
}

void monomials_rec(const RingPtr& ring, const std::vector<std::size_t>& vars, std::size_t pos,
                   std::uint32_t remaining, Exponents& current, std::vector<Poly>& out) {
    if (pos == vars.size()) {
        out.push_back(Poly::monomial(ring, current, 1));
        return;
    }
    for (std::uint32_t e = 0; e <= remaining; ++e) {
        current[vars[pos]] = e;
        monomials_rec(ring, vars, pos + 1, remaining - e, current, out);
    }
    current[vars[pos]] = 0;
}

}  // namespace

Poly random_poly(const RingPtr& ring, Rng& rng, const PolyShape& shape) {
    const auto vars = active_variables(*ring, shape.include_rees);
    const auto p = ring->characteristic();
    std::vector<Term> terms;
    std::size_t count = 1 + rng.below(shape.max_terms);
    for (std::size_t k = 0; k < count; ++k) {
        Exponents e(ring->num_vars(), 0);
        std::uint32_t budget = static_cast<std::uint32_t>(rng.below(shape.max_degree + 1));
        for (std::uint32_t d = 0; d < budget; ++d) e[vars[rng.below(vars.size())]] += 1;
        terms.push_back({std::move(e), static_cast<Coeff>(rng.below(p))});
    }
    return Poly::from_terms(ring, std::move(terms));
}

Poly random_nonzero_poly(const RingPtr& ring, Rng& rng, const PolyShape& shape) {
    for (;;) {
        Poly f = random_poly(ring, rng, shape);
        if (!f.is_zero()) return f;
    }
}

std::vector<Poly> monomial_panel(const RingPtr& ring, std::uint32_t degree) {
    const auto vars = active_variables(*ring, false);
    std::vector<Poly> out;
    Exponents current(ring->num_vars(), 0);
    monomials_rec(ring, vars, 0, degree, current, out);
    return out;
}

std::vector<Poly> function_panel(const RingPtr& ring, std::uint32_t degree, std::size_t random_count,
                                 std::uint64_t seed) {
    auto out = monomial_panel(ring, degree);
    Rng rng(seed);
    for (std::size_t i = 0; i < random_count; ++i)
        out.push_back(random_nonzero_poly(ring, rng, {degree, 4, true}));
    return out;
}

}  // namespace pcurv
