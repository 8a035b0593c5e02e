#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pcurv/algebroid.hpp"
#include "pcurv/poly.hpp"
#include "pcurv/random.hpp"
#include "pcurv/report.hpp"

namespace pcurv {

/// Exponents of e_1..e_m in a PBW monomial e_1^b1 ... e_m^bm.
using MultiIndex = Exponents;

/// Orders PBW monomials from the highest filtration degree down.
struct MultiIndexGreater {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const noexcept { return monomial_less(b, a); }
};

/// An element sum_beta f_beta * e^beta of the enveloping algebra, in PBW
/// normal form: coefficients on the left, generators in ascending order.
class OperatorElement {
public:
    using TermMap = std::map<MultiIndex, Poly, MultiIndexGreater>;

    OperatorElement() = default;
    explicit OperatorElement(AlgebroidPtr algebroid) : algebroid_(std::move(algebroid)) {}

    static OperatorElement zero(const AlgebroidPtr& algebroid) { return OperatorElement(algebroid); }
    static OperatorElement one(const AlgebroidPtr& algebroid);
    static OperatorElement function(const AlgebroidPtr& algebroid, const Poly& f);
    static OperatorElement generator(const AlgebroidPtr& algebroid, std::size_t a);
    static OperatorElement monomial(const AlgebroidPtr& algebroid, MultiIndex beta, const Poly& f);
    static OperatorElement from_first_order(const AlgebroidPtr& algebroid, const FirstOrder& d);

    const AlgebroidPtr& algebroid() const noexcept { return algebroid_; }
    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    /// Filtration degree; 0 for the zero element.
    std::size_t degree() const noexcept;
    /// Total number of polynomial terms over all PBW monomials.
    std::size_t size() const noexcept;
    Poly coefficient(const MultiIndex& beta) const;

    /// Adds f * e^beta.
    void add_term(const MultiIndex& beta, const Poly& f);

    OperatorElement& operator+=(const OperatorElement& other);
    OperatorElement& operator-=(const OperatorElement& other);
    friend OperatorElement operator+(OperatorElement a, const OperatorElement& b) { return a += b; }
    friend OperatorElement operator-(OperatorElement a, const OperatorElement& b) { return a -= b; }
    OperatorElement operator-() const;
    /// Left multiplication by a function.
    OperatorElement scaled(const Poly& f) const;
    OperatorElement scaled(Coeff c) const;

    /// Rendered as `poly * e1^a1*...*em^am + ...`.
    std::string to_string() const;
    bool operator==(const OperatorElement& other) const;

private:
    void check(const OperatorElement& other) const;
    AlgebroidPtr algebroid_;
    TermMap terms_;
};

/// Normal-form size above which products abort with ResourceError.
inline constexpr std::size_t kDefaultTermLimit = 1'000'000;

OperatorElement op_mul(const OperatorElement& a, const OperatorElement& b, std::size_t term_limit = kDefaultTermLimit);
inline OperatorElement operator*(const OperatorElement& a, const OperatorElement& b) { return op_mul(a, b); }
OperatorElement commutator(const OperatorElement& a, const OperatorElement& b);
OperatorElement op_pow(const OperatorElement& a, std::uint64_t k, std::size_t term_limit = kDefaultTermLimit);

/// s_1..s_{p-1} from ad(tau*x + y)^(p-1)(x) = sum_i i*s_i(x,y) tau^(i-1).
/// Both inputs must lie in the first filtration piece.
std::vector<OperatorElement> lie_polynomials(const OperatorElement& x, const OperatorElement& y);

/// Back to O_X (+) H; throws MathError above filtration degree 1.
FirstOrder to_first_order(const OperatorElement& d);

/// The p-structure of the enveloping algebra on its first filtration piece:
/// extended from the basis by the (fD)^[p] rule and additivity through the
/// Lie polynomials, then (f+D)^[p] = f^p + D^[p] + delta_D^(p-1)(f).
FirstOrder restricted_power(const AlgebroidPtr& algebroid, const FirstOrder& d);

/// True iff z commutes with every coordinate function and every generator.
bool is_central(const OperatorElement& z);

/// iota(D) = D^p - D^[p]. Throws MathError when the result is not central
/// and `check` is set.
OperatorElement iota(const OperatorElement& d, bool check = true);

/// Homogeneous element of Sym^k(H): degree-k multi-indices to coefficients.
class SymbolElement {
public:
    using TermMap = std::map<MultiIndex, Poly, MultiIndexGreater>;

    SymbolElement() = default;
    SymbolElement(RingPtr ring, std::size_t rank, std::size_t degree)
        : ring_(std::move(ring)), rank_(rank), degree_(degree) {}

    const RingPtr& ring() const noexcept { return ring_; }
    std::size_t rank() const noexcept { return rank_; }
    std::size_t degree() const noexcept { return degree_; }
    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    Poly coefficient(const MultiIndex& beta) const;
    void add_term(const MultiIndex& beta, const Poly& f);

    SymbolElement operator*(const SymbolElement& other) const;
    SymbolElement pow(std::uint64_t k) const;
    std::string to_string(const AlgebroidPresentation& algebroid) const;
    bool operator==(const SymbolElement& other) const;

private:
    RingPtr ring_;
    std::size_t rank_ = 0;
    std::size_t degree_ = 0;
    TermMap terms_;
};

/// Top filtration-degree part as an element of Sym^k(H).
SymbolElement symbol_top(const OperatorElement& a);
/// The symbol of an element of H, in degree 1.
SymbolElement symbol_of(const AlgebroidPtr& algebroid, const FirstOrder& d);

/// Checks inside the normal-form algebra: the four p-structure axioms for
/// [p] on the first filtration piece, Jacobson's and Deligne's identities,
/// the s_i(D, f) reduction, the induced-additivity and iterated-delta
/// identities.
ValidationReport check_enveloping_p_structure(const AlgebroidPtr& algebroid, const PanelOptions& options = {});

/// Reads bracket, anchor and [p] back from the enveloping algebra through
/// symbols and compares them with the presentation.
ValidationReport check_round_trip(const AlgebroidPtr& algebroid);

/// Random element of the first filtration piece (O-part optional).
FirstOrder random_first_order(const AlgebroidPtr& algebroid, Rng& rng, std::uint32_t degree,
                              bool with_function = true);

}  // namespace pcurv
