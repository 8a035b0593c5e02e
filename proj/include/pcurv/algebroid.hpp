#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "pcurv/derivation.hpp"
#include "pcurv/matrix.hpp"
#include "pcurv/poly.hpp"
#include "pcurv/report.hpp"

namespace pcurv {

/// An element f + sum_a g_a e_a of the split first filtration piece O_X (+) H.
struct FirstOrder {
    Poly function;
    std::vector<Poly> components;

    static FirstOrder zero(const RingPtr& ring, std::size_t rank);
    static FirstOrder of_function(const Poly& f, std::size_t rank);
    static FirstOrder generator(const RingPtr& ring, std::size_t rank, std::size_t a);
    static FirstOrder of_components(const RingPtr& ring, std::vector<Poly> components);

    std::size_t rank() const noexcept { return components.size(); }
    const RingPtr& ring() const noexcept { return function.ring(); }
    bool is_zero() const noexcept;
    /// True when the H-part vanishes.
    bool is_function() const noexcept;
    /// The H-part alone (the symbol sb(D)).
    FirstOrder symbol_part() const;

    FirstOrder operator+(const FirstOrder& other) const;
    FirstOrder operator-(const FirstOrder& other) const;
    FirstOrder operator-() const;
    /// Left multiplication by a function.
    FirstOrder scaled(const Poly& g) const;
    FirstOrder lift(const RingPtr& target) const;

    bool operator==(const FirstOrder& other) const;
};

/// A restricted Lie algebroid (H, [-,-], delta, [p]) on a free module of
/// rank m, given by structure constants on a basis e_1..e_m:
///   [e_a, e_b] = sum_k bracket(a,b)[k] e_k,  delta(e_a) = anchor(a),
///   e_a^[p]    = p_op(a)  (an element of O_X (+) H).
/// An O_X-part in p_op only arises from central shifts of the p-structure.
class AlgebroidPresentation {
public:
    using BracketTable = std::vector<std::vector<std::vector<Poly>>>;  // [a][b][k]

    AlgebroidPresentation(RingPtr ring, std::size_t rank, BracketTable bracket, std::vector<Derivation> anchor,
                          std::vector<FirstOrder> p_op, std::vector<std::string> generator_names = {});

    const RingPtr& ring() const noexcept { return ring_; }
    std::size_t rank() const noexcept { return rank_; }
    const std::vector<Poly>& bracket(std::size_t a, std::size_t b) const { return bracket_.at(a).at(b); }
    const BracketTable& bracket_table() const noexcept { return bracket_; }
    const Derivation& anchor(std::size_t a) const { return anchor_.at(a); }
    const std::vector<Derivation>& anchors() const noexcept { return anchor_; }
    const FirstOrder& p_op(std::size_t a) const { return p_op_.at(a); }
    const std::vector<FirstOrder>& p_ops() const noexcept { return p_op_; }
    const std::string& generator_name(std::size_t a) const { return names_.at(a); }

    /// delta(sum g_a e_a) = sum g_a delta(e_a)
    Derivation anchor_of(const std::vector<Poly>& components) const;
    /// Bracket of two H-elements, extended from the basis by antisymmetry and the Leibniz rule.
    std::vector<Poly> bracket_of(const std::vector<Poly>& left, const std::vector<Poly>& right) const;

    /// Same data with the p-operation replaced.
    AlgebroidPresentation with_p_op(std::vector<FirstOrder> p_op) const;

    /// Structural equality (ring, tables, p-operation); generator names ignored.
    bool operator==(const AlgebroidPresentation& other) const;

private:
    RingPtr ring_;
    std::size_t rank_;
    BracketTable bracket_;
    std::vector<Derivation> anchor_;
    std::vector<FirstOrder> p_op_;
    std::vector<std::string> names_;
};

using AlgebroidPtr = std::shared_ptr<const AlgebroidPresentation>;

/// Panel configuration for checks of identities in an arbitrary function f.
struct PanelOptions {
    std::uint32_t degree = 3;   // all monomials up to this degree, and random polys of this degree
    std::size_t random = 6;     // seeded random functions appended to the monomial panel
    std::size_t trials = 12;    // random first-order elements / pairs
    std::uint64_t seed = 1;
};

/// Relative tangent algebroid: basis d/dx_j, zero brackets, identity anchor,
/// p-operation the p-th power of vector fields.
AlgebroidPtr tangent_algebroid(const RingPtr& ring);

/// Zero bracket and anchor; e_a^[p] = sum_k alpha(a,k) e_k. alpha = 0 is
/// the trivial p-structure of Sym(H).
AlgebroidPtr higgs_algebroid(const RingPtr& ring, std::size_t rank, const PolyMatrix& alpha);
AlgebroidPtr higgs_algebroid(const RingPtr& ring, std::size_t rank);

/// Rees deformation over R[t]: bracket and anchor times t, p-operation times
/// t^(p-1) on H (and t^p on a central O_X-part).
AlgebroidPtr rees_algebroid(const AlgebroidPresentation& algebroid);
/// Substitute t = value and drop t from the ring.
AlgebroidPtr specialize_t(const AlgebroidPresentation& algebroid, Coeff value);

/// Shift of the p-structure by a p-linear map phi into the centralizer of
/// the first filtration piece: e_a^[p]' = e_a^[p] + phi(e_a). Throws
/// MathError when some phi(e_a) is not central or the result fails
/// validate_p_structure.
struct PStructureShift {
    std::vector<FirstOrder> phi;  // phi(e_a), extended p-linearly
};
AlgebroidPtr shift_p_structure(const AlgebroidPtr& algebroid, const PStructureShift& shift,
                               const PanelOptions& options = {});

struct SurjectivityResult {
    bool generically_surjective = false;
    Poly minor;                        // a nonzero maximal minor when surjective
    std::vector<std::size_t> columns;  // generators used by that minor
};

/// True iff the n x m anchor matrix has a nonzero n x n minor.
SurjectivityResult anchor_generic_surjectivity(const AlgebroidPresentation& algebroid);

/// Antisymmetry, Jacobi (with anchor terms), Leibniz on a function panel,
/// and compatibility of the anchor with brackets.
ValidationReport validate_algebroid(const AlgebroidPtr& algebroid, const PanelOptions& options = {});

/// The restricted axioms: ad(D^[p]) = ad(D)^p, additivity through the Lie
/// polynomials, the (fD)^[p] rule and f^[p] = f^p; the Hochschild-type
/// identity; and, in a separate section, delta(D^[p]) = delta(D)^p.
ValidationReport validate_p_structure(const AlgebroidPtr& algebroid, const PanelOptions& options = {});

std::string to_string(const FirstOrder& d, const AlgebroidPresentation& algebroid);

}  // namespace pcurv
