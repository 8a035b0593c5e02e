#include "pcurv/samples.hpp"

#include "pcurv/errors.hpp"

namespace pcurv {

PolyMatrix random_matrix(const RingPtr& ring, std::size_t rank, Rng& rng, const PolyShape& shape) {
    PolyMatrix m(ring, rank, rank);
    for (std::size_t i = 0; i < rank; ++i)
        for (std::size_t j = 0; j < rank; ++j) m(i, j) = random_poly(ring, rng, shape);
    return m;
}

std::vector<PolyMatrix> random_flat_connection(const RingPtr& ring, std::size_t rank, Rng& rng,
                                               std::uint32_t degree) {
    const auto p = ring->characteristic();
    PolyShape shape{degree, 2, false};
    PolyMatrix nil(ring, rank, rank);
    for (std::size_t i = 0; i < rank; ++i)
        for (std::size_t j = i + 1; j < rank; ++j) nil(i, j) = random_poly(ring, rng, shape);
    PolyMatrix id = PolyMatrix::identity(ring, rank);
    PolyMatrix g = id + nil;
    // (1 + N)^-1 = sum_k (-N)^k, N nilpotent
    PolyMatrix ginv = id;
    PolyMatrix term = id;
    const Poly minus_one = Poly::from_int(ring, -1);
    for (std::size_t k = 1; k < rank; ++k) {
        term = term * nil.scaled(minus_one);
        ginv = ginv + term;
    }
    PolyMatrix c0(ring, rank, rank);
    for (std::size_t i = 0; i < rank; ++i)
        for (std::size_t j = 0; j < rank; ++j) c0(i, j) = Poly::constant(ring, static_cast<Coeff>(rng.below(p)));

    std::vector<PolyMatrix> out;
    for (std::size_t j = 0; j < ring->num_coordinates(); ++j) {
        PolyMatrix cj = id.scaled(Poly::constant(ring, static_cast<Coeff>(rng.below(p)))) +
                        c0.scaled(Poly::constant(ring, static_cast<Coeff>(rng.below(p))));
        out.push_back(ginv * cj * g + ginv * g.derived(Derivation::coordinate(ring, j)));
    }
    return out;
}

ModulePtr pullback_module(const AlgebroidPtr& algebroid, const std::vector<PolyMatrix>& connection) {
    const RingPtr& ring = algebroid->ring();
    if (connection.size() != ring->num_coordinates()) throw DimensionError("one connection matrix per coordinate");
    const std::size_t r = connection.front().rows();
    std::vector<PolyMatrix> mats;
    for (std::size_t a = 0; a < algebroid->rank(); ++a) {
        PolyMatrix m(ring, r, r);
        for (std::size_t j = 0; j < connection.size(); ++j) {
            const Poly& c = algebroid->anchor(a).component(j);
            if (!c.is_zero()) m = m + connection[j].scaled(c);
        }
        mats.push_back(std::move(m));
    }
    return std::make_shared<const LambdaModule>(algebroid, r, std::move(mats));
}

ModulePtr random_commuting_higgs_module(const AlgebroidPtr& algebroid, std::size_t rank, Rng& rng,
                                        std::uint32_t degree) {
    const RingPtr& ring = algebroid->ring();
    PolyShape shape{degree, 2, true};
    PolyMatrix first = random_matrix(ring, rank, rng, shape);
    std::vector<PolyMatrix> mats{first};
    for (std::size_t a = 1; a < algebroid->rank(); ++a) {
        Poly u = random_poly(ring, rng, {1, 2, true});
        Poly v = random_poly(ring, rng, {1, 2, true});
        mats.push_back(first.scaled(u) + PolyMatrix::identity(ring, rank).scaled(v));
    }
    return std::make_shared<const LambdaModule>(algebroid, rank, std::move(mats));
}

}  // namespace pcurv
