#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pcurv/poly.hpp"

namespace pcurv {

/// Seeded generator. Draws use the raw engine output only, so streams are
/// identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }
    bool chance(unsigned percent) { return below(100) < percent; }

private:
    std::mt19937_64 engine_;
};

struct PolyShape {
    std::uint32_t max_degree = 3;
    std::size_t max_terms = 3;
    bool include_rees = true;  // let the Rees variable appear when the ring has one
};

/// Random polynomial in the coordinate (and optionally Rees) variables.
/// May return zero.
Poly random_poly(const RingPtr& ring, Rng& rng, const PolyShape& shape = {});
Poly random_nonzero_poly(const RingPtr& ring, Rng& rng, const PolyShape& shape = {});

/// Every monomial of total degree <= degree in the coordinate variables.
std::vector<Poly> monomial_panel(const RingPtr& ring, std::uint32_t degree);

/// Deterministic monomial panel followed by `random_count` seeded random polynomials.
std::vector<Poly> function_panel(const RingPtr& ring, std::uint32_t degree, std::size_t random_count,
                                 std::uint64_t seed);

}  // namespace pcurv
