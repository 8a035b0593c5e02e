#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pcurv/field.hpp"

namespace pcurv {

enum class VariableKind {
    Coordinate,  // x_1..x_n of the affine chart; Frobenius raises these to the p-th power
    Rees,        // the deformation parameter t; fixed by F x id
    Auxiliary,   // formal variables (dual coordinates y_a, lambda) untouched by Frobenius
};

struct Variable {
    std::string name;
    VariableKind kind = VariableKind::Coordinate;

    bool operator==(const Variable&) const = default;
};

class PolyRing;
using RingPtr = std::shared_ptr<const PolyRing>;

inline constexpr std::uint32_t kDefaultDegreeBound = 1'000'000;

/// F_p[variables]. Immutable once built and always handled through RingPtr.
class PolyRing {
public:
    PolyRing(PrimeField field, std::vector<Variable> variables,
             std::uint32_t degree_bound = kDefaultDegreeBound);

    /// Coordinate ring F_p[x_1..x_n], optionally with a trailing Rees variable named "t".
    static RingPtr make(std::uint64_t p, const std::vector<std::string>& coordinates, bool rees = false);

    const PrimeField& field() const noexcept { return field_; }
    std::uint32_t characteristic() const noexcept { return field_.characteristic(); }
    std::size_t num_vars() const noexcept { return variables_.size(); }
    const Variable& variable(std::size_t i) const { return variables_.at(i); }
    const std::vector<Variable>& variables() const noexcept { return variables_; }
    std::optional<std::size_t> index_of(const std::string& name) const;

    /// Indices of the coordinate variables, in order. Derivations are indexed by position here.
    const std::vector<std::size_t>& coordinates() const noexcept { return coordinates_; }
    std::size_t num_coordinates() const noexcept { return coordinates_.size(); }
    std::optional<std::size_t> rees_index() const noexcept { return rees_; }
    bool has_rees() const noexcept { return rees_.has_value(); }

    std::uint32_t degree_bound() const noexcept { return degree_bound_; }

    /// A fresh ring with extra variables appended (names must stay unique).
    RingPtr extended(const std::vector<Variable>& extra) const;
    /// A fresh ring with variable i removed.
    RingPtr without(std::size_t i) const;
    /// A name not yet used by any variable, derived from `stem`.
    std::string fresh_name(const std::string& stem) const;

    bool operator==(const PolyRing& other) const noexcept {
        return field_ == other.field_ && variables_ == other.variables_;
    }

private:
    PrimeField field_;
    std::vector<Variable> variables_;
    std::vector<std::size_t> coordinates_;
    std::optional<std::size_t> rees_;
    std::uint32_t degree_bound_;
};

/// Pointer-or-structural equality.
inline bool same_ring(const RingPtr& a, const RingPtr& b) noexcept {
    return a == b || (a && b && *a == *b);
}

}  // namespace pcurv
