#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "pcurv/ring.hpp"

namespace pcurv {

using Exponents = boost::container::small_vector<std::uint32_t, 6>;

struct Term {
    Exponents exps;
    Coeff coeff;

    bool operator==(const Term&) const = default;
};

/// Graded lexicographic order; variable 0 is the most significant.
bool monomial_less(const Exponents& a, const Exponents& b) noexcept;
std::uint64_t total_degree(const Exponents& e) noexcept;

class Poly;

/// Witness returned when a polynomial is not a Frobenius pullback: the
/// terms whose coordinate exponents are not all divisible by p.
struct NotDescendable {
    std::vector<Term> offending;
};

using DescentResult = std::variant<Poly, NotDescendable>;

/// Sparse polynomial over a PolyRing. Terms are stored without zero
/// coefficients, sorted from the largest monomial down, so equality is
/// structural.
class Poly {
public:
    Poly() = default;  // detached zero; only useful as a placeholder
    explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}

    static Poly constant(RingPtr ring, Coeff c);
    static Poly from_int(RingPtr ring, std::int64_t value);
    static Poly variable(RingPtr ring, std::size_t index);
    static Poly monomial(RingPtr ring, Exponents exps, Coeff c = 1);
    /// Build from arbitrary (possibly repeated, unsorted, zero) terms.
    static Poly from_terms(RingPtr ring, std::vector<Term> terms);

    const RingPtr& ring() const noexcept { return ring_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept;
    /// Constant term (0 when absent).
    Coeff constant_term() const noexcept;
    Coeff coefficient(const Exponents& e) const noexcept;
    std::uint64_t total_degree() const noexcept;
    std::uint32_t degree_in(std::size_t var) const noexcept;

    Poly operator-() const;
    Poly& operator+=(const Poly& other);
    Poly& operator-=(const Poly& other);
    Poly& operator*=(const Poly& other) { return *this = *this * other; }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);

    Poly scaled(Coeff c) const;
    Poly times_monomial(const Exponents& e, Coeff c) const;
    Poly pow(std::uint64_t k) const;

    /// Formal partial derivative in ring variable `var`.
    Poly derivative(std::size_t var) const;
    /// Raise every coordinate exponent to p times itself; Rees and auxiliary exponents stay.
    Poly frobenius_pullback() const;
    /// Inverse of frobenius_pullback when every coordinate exponent is divisible by p.
    DescentResult pth_root_descend() const;

    /// Substitute variable `var` := value; result lives in ring()->without(var).
    Poly specialize(std::size_t var, Coeff value) const;
    Poly specialize(std::size_t var, Coeff value, const RingPtr& target) const;
    /// Embed into a ring containing all of this ring's variables (matched by name).
    Poly lift(const RingPtr& target) const;

    std::string to_string() const;

    friend bool operator==(const Poly& a, const Poly& b);

private:
    void check_ring(const Poly& other) const;
    void check_bound(const Exponents& e) const;

    RingPtr ring_;
    std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const Poly& f);

/// poly_derive: partial derivative in the j-th coordinate (0-based).
Poly poly_derive(const Poly& f, std::size_t j);

/// True when every coordinate exponent of `e` is divisible by p.
bool coordinates_divisible(const PolyRing& ring, const Exponents& e) noexcept;

}  // namespace pcurv
