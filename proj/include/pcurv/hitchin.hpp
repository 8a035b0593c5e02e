#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pcurv/algebroid.hpp"
#include "pcurv/lambda_module.hpp"
#include "pcurv/poly.hpp"
#include "pcurv/report.hpp"

namespace pcurv {

/// det(lambda Id - sum_a y_a psi_a) over the module ring extended by the
/// dual variables y_a and then lambda (the last variable).
struct CharacteristicPolynomial {
    RingPtr ring;
    std::size_t lambda = 0;          // variable index of lambda
    std::vector<std::size_t> duals;  // variable indices of y_1..y_m
    Poly value;
};

/// Throws MathError when the psi_a do not commute.
CharacteristicPolynomial universal_char_poly(const PCurvature& c);

/// e_k(sum y_a psi_a) for k = 1..r, read from
/// det(lambda Id - Psi) = sum_k (-1)^k e_k lambda^(r-k).
struct HitchinInvariants {
    RingPtr ring;                    // module ring extended by y_1..y_m
    std::size_t base_vars = 0;       // variables of the module ring come first
    std::vector<std::size_t> duals;  // indices of y_1..y_m in ring
    std::size_t rank = 0;
    std::vector<Poly> coefficients;  // coefficients[k-1] is homogeneous of degree k in y

    const Poly& e(std::size_t k) const { return coefficients.at(k - 1); }
    /// Coefficient of a y-monomial in e_k, as a polynomial over the module ring.
    Poly coefficient(std::size_t k, const Exponents& y_monomial, const RingPtr& base) const;
};

HitchinInvariants hitchin_invariants(const PCurvature& c);
HitchinInvariants hitchin_invariants(const CharacteristicPolynomial& chi, std::size_t rank);

/// nabla^can_nu on F*G trivialized: nu applied to each coefficient.
std::vector<Poly> canonical_connection_apply(const std::vector<Poly>& section, const Derivation& nu);

struct SectionNotDescendable {
    std::size_t component = 0;
    NotDescendable witness;
};
using SectionDescent = std::variant<std::vector<Poly>, SectionNotDescendable>;

/// s' with F*s' = s when every coefficient is a Frobenius pullback.
SectionDescent cartier_descend_section(const std::vector<Poly>& section);

/// delta_b(tr psi_a) = 0 and delta_b of every Hitchin coefficient vanishes.
/// Throws InputError for p = 2.
ValidationReport trace_flatness_check(const PCurvature& c);

struct DescentEntry {
    std::size_t k = 0;
    Exponents y_monomial;  // exponents of y_1..y_m
    Poly original;
    std::optional<Poly> descended;
    NotDescendable witness;  // offending terms when descended is empty
};

struct DescentReport {
    std::vector<DescentEntry> entries;
    bool generically_surjective = false;
    Poly surjectivity_minor;
    std::vector<std::string> dual_names;

    bool all_descended() const noexcept;
    /// Generically surjective anchor but some coefficient fails to descend.
    bool contradicts_theorem() const noexcept { return generically_surjective && !all_descended(); }
    const DescentEntry* first_failure() const noexcept;
};

/// Frobenius descent of each (k, y-monomial) coefficient in the coordinate
/// exponents; Rees exponents are left alone. Throws InputError for p = 2.
DescentReport descend_invariants(const HitchinInvariants& invariants, const AlgebroidPresentation& algebroid);

/// Renders a y-monomial such as "y1^2*y2" ("1" for the empty monomial).
std::string y_monomial_string(const Exponents& y, const std::vector<std::string>& names);

}  // namespace pcurv
