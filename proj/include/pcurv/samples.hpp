#pragma once

#include <cstddef>
#include <vector>

#include "pcurv/lambda_module.hpp"
#include "pcurv/random.hpp"

namespace pcurv {

PolyMatrix random_matrix(const RingPtr& ring, std::size_t rank, Rng& rng, const PolyShape& shape = {});

/// Flat relative connection d_j + B_j on O^r: the gauge transform by a
/// random unipotent g of the constant commuting connection d_j + C_j,
/// B_j = g^-1 C_j g + g^-1 d_j(g). One matrix per coordinate.
std::vector<PolyMatrix> random_flat_connection(const RingPtr& ring, std::size_t rank, Rng& rng,
                                               std::uint32_t degree = 2);

/// Module over an algebroid obtained by composing the anchor with a flat
/// relative connection: A_a = sum_j delta_a^j B_j.
ModulePtr pullback_module(const AlgebroidPtr& algebroid, const std::vector<PolyMatrix>& connection);

/// For an abelian algebroid with zero anchor: A_1 random and
/// A_a = u_a A_1 + v_a Id, so the A_a commute.
ModulePtr random_commuting_higgs_module(const AlgebroidPtr& algebroid, std::size_t rank, Rng& rng,
                                        std::uint32_t degree = 2);

}  // namespace pcurv
