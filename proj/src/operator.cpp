#include "pcurv/operator.hpp"

#include <sstream>
#include <utility>

#include "pcurv/errors.hpp"

namespace pcurv {

namespace {

MultiIndex unit_index(std::size_t m, std::size_t a) {
    MultiIndex beta(m, 0);
    beta[a] = 1;
    return beta;
}

std::size_t index_degree(const MultiIndex& beta) {
    std::size_t d = 0;
    for (auto e : beta) d += e;
    return d;
}

}  // namespace

OperatorElement OperatorElement::one(const AlgebroidPtr& algebroid) {
    return function(algebroid, Poly::constant(algebroid->ring(), 1));
}

OperatorElement OperatorElement::function(const AlgebroidPtr& algebroid, const Poly& f) {
    return monomial(algebroid, MultiIndex(algebroid->rank(), 0), f);
}

OperatorElement OperatorElement::generator(const AlgebroidPtr& algebroid, std::size_t a) {
    if (a >= algebroid->rank()) throw DimensionError("generator index out of range");
    return monomial(algebroid, unit_index(algebroid->rank(), a), Poly::constant(algebroid->ring(), 1));
}

OperatorElement OperatorElement::monomial(const AlgebroidPtr& algebroid, MultiIndex beta, const Poly& f) {
    if (beta.size() != algebroid->rank()) throw DimensionError("multi-index length must equal the rank");
    OperatorElement r(algebroid);
    r.add_term(beta, f);
    return r;
}

OperatorElement OperatorElement::from_first_order(const AlgebroidPtr& algebroid, const FirstOrder& d) {
    if (d.rank() != algebroid->rank()) throw DimensionError("element rank does not match algebroid");
    OperatorElement r(algebroid);
    r.add_term(MultiIndex(algebroid->rank(), 0), d.function);
    for (std::size_t a = 0; a < d.rank(); ++a) r.add_term(unit_index(d.rank(), a), d.components[a]);
    return r;
}

std::size_t OperatorElement::degree() const noexcept {
    return terms_.empty() ? 0 : index_degree(terms_.begin()->first);
}

std::size_t OperatorElement::size() const noexcept {
    std::size_t n = 0;
    for (const auto& [beta, f] : terms_) n += f.size();
    return n;
}

Poly OperatorElement::coefficient(const MultiIndex& beta) const {
    auto it = terms_.find(beta);
    return it == terms_.end() ? Poly(algebroid_->ring()) : it->second;
}

void OperatorElement::add_term(const MultiIndex& beta, const Poly& f) {
    if (f.is_zero()) return;
    if (!same_ring(f.ring(), algebroid_->ring())) throw MismatchError("operator coefficient over a different ring");
    auto [it, inserted] = terms_.try_emplace(beta, f);
    if (!inserted) {
        it->second += f;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void OperatorElement::check(const OperatorElement& other) const {
    if (algebroid_ != other.algebroid_ && !(algebroid_ && other.algebroid_ && *algebroid_ == *other.algebroid_))
        throw MismatchError("operators over different algebroids");
}

OperatorElement& OperatorElement::operator+=(const OperatorElement& other) {
    if (!algebroid_) algebroid_ = other.algebroid_;
    check(other);
    for (const auto& [beta, f] : other.terms_) add_term(beta, f);
    return *this;
}

OperatorElement& OperatorElement::operator-=(const OperatorElement& other) {
    if (!algebroid_) algebroid_ = other.algebroid_;
    check(other);
    for (const auto& [beta, f] : other.terms_) add_term(beta, -f);
    return *this;
}

OperatorElement OperatorElement::operator-() const {
    OperatorElement r(algebroid_);
    for (const auto& [beta, f] : terms_) r.terms_.emplace(beta, -f);
    return r;
}

OperatorElement OperatorElement::scaled(const Poly& f) const {
    OperatorElement r(algebroid_);
    if (f.is_zero()) return r;
    for (const auto& [beta, g] : terms_) r.add_term(beta, f * g);
    return r;
}

OperatorElement OperatorElement::scaled(Coeff c) const {
    OperatorElement r(algebroid_);
    for (const auto& [beta, g] : terms_) r.add_term(beta, g.scaled(c));
    return r;
}

std::string OperatorElement::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [beta, f] : terms_) {
        if (!first) os << " + ";
        first = false;
        std::ostringstream word;
        bool any = false;
        for (std::size_t a = 0; a < beta.size(); ++a) {
            if (beta[a] == 0) continue;
            if (any) word << "*";
            any = true;
            word << algebroid_->generator_name(a);
            if (beta[a] > 1) word << "^" << beta[a];
        }
        if (!any) {
            os << f.to_string();
        } else if (f.is_constant() && f.constant_term() == 1) {
            os << word.str();
        } else if (f.size() == 1 && !f.is_constant()) {
            os << f.to_string() << "*" << word.str();
        } else {
            os << "(" << f.to_string() << ")*" << word.str();
        }
    }
    return os.str();
}

bool OperatorElement::operator==(const OperatorElement& other) const {
    if (terms_.empty() && other.terms_.empty()) return true;
    check(other);
    return terms_ == other.terms_;
}

namespace {

/// Rewrites products into PBW normal form. Memo tables live only as long
/// as one top-level product.
class Rewriter {
public:
    Rewriter(const AlgebroidPtr& algebroid, std::size_t limit)
        : alg_(algebroid), m_(algebroid->rank()), limit_(limit) {}

    /// e_a * e^gamma
    const OperatorElement& pure(std::size_t a, const MultiIndex& gamma) {
        auto key = std::make_pair(a, gamma);
        if (auto it = pure_.find(key); it != pure_.end()) return it->second;
        std::size_t b = 0;
        while (b < m_ && gamma[b] == 0) ++b;
        OperatorElement result(alg_);
        if (b == m_ || a <= b) {
            MultiIndex next = gamma;
            ++next[a];
            result.add_term(next, Poly::constant(alg_->ring(), 1));
        } else {
            // e_a e_b e^rest = e_b (e_a e^rest) + sum_k c_ab^k e_k e^rest
            MultiIndex rest = gamma;
            --rest[b];
            OperatorElement inner = pure(a, rest);
            result = leftmul(b, inner);
            const auto& c = alg_->bracket(a, b);
            for (std::size_t k = 0; k < m_; ++k)
                if (!c[k].is_zero()) result += pure(k, rest).scaled(c[k]);
        }
        guard(result);
        return pure_.emplace(std::move(key), std::move(result)).first->second;
    }

    /// e_a * x
    OperatorElement leftmul(std::size_t a, const OperatorElement& x) {
        OperatorElement result(alg_);
        const Derivation& delta = alg_->anchor(a);
        for (const auto& [gamma, h] : x.terms()) {
            result += pure(a, gamma).scaled(h);
            result.add_term(gamma, delta.apply(h));
        }
        guard(result);
        return result;
    }

    /// e^beta * right
    const OperatorElement& word(const MultiIndex& beta, const OperatorElement& right) {
        if (auto it = words_.find(beta); it != words_.end()) return it->second;
        std::size_t first = 0;
        while (first < m_ && beta[first] == 0) ++first;
        OperatorElement result;
        if (first == m_) {
            result = right;
        } else {
            MultiIndex rest = beta;
            --rest[first];
            result = leftmul(first, word(rest, right));
        }
        return words_.emplace(beta, std::move(result)).first->second;
    }

    void guard(const OperatorElement& x) const {
        if (x.size() > limit_) throw ResourceError("normal form exceeds " + std::to_string(limit_) + " terms");
    }

private:
    AlgebroidPtr alg_;
    std::size_t m_;
    std::size_t limit_;
    std::map<std::pair<std::size_t, MultiIndex>, OperatorElement> pure_;
    std::map<MultiIndex, OperatorElement> words_;
};

}  // namespace

OperatorElement op_mul(const OperatorElement& a, const OperatorElement& b, std::size_t term_limit) {
    if (a.is_zero() || b.is_zero()) return OperatorElement(a.algebroid() ? a.algebroid() : b.algebroid());
    if (a.algebroid() != b.algebroid() && !(*a.algebroid() == *b.algebroid()))
        throw MismatchError("operators over different algebroids");
    Rewriter rw(a.algebroid(), term_limit);
    OperatorElement result(a.algebroid());
    for (const auto& [beta, f] : a.terms()) result += rw.word(beta, b).scaled(f);
    rw.guard(result);
    return result;
}

OperatorElement commutator(const OperatorElement& a, const OperatorElement& b) { return a * b - b * a; }

OperatorElement op_pow(const OperatorElement& a, std::uint64_t k, std::size_t term_limit) {
    if (!a.algebroid()) throw InputError("operator without algebroid");
    OperatorElement result = OperatorElement::one(a.algebroid());
    if (k == 0) return result;
    if (a.degree() <= 1) {
        result = a;
        for (std::uint64_t i = 1; i < k; ++i) result = op_mul(a, result, term_limit);
        return result;
    }
    OperatorElement base = a;
    while (k > 0) {
        if (k & 1) result = op_mul(result, base, term_limit);
        k >>= 1;
        if (k > 0) base = op_mul(base, base, term_limit);
    }
    return result;
}

std::vector<OperatorElement> lie_polynomials(const OperatorElement& x, const OperatorElement& y) {
    if (x.degree() > 1 || y.degree() > 1) throw MathError("Lie polynomials need first-order inputs");
    const AlgebroidPtr& alg = x.algebroid() ? x.algebroid() : y.algebroid();
    const PrimeField& field = alg->ring()->field();
    const std::uint32_t p = field.characteristic();
    // z[k] is the coefficient of tau^k in ad(tau x + y)^step (x)
    std::vector<OperatorElement> z(p, OperatorElement(alg));
    z[0] = x;
    for (std::uint32_t step = 1; step < p; ++step) {
        std::vector<OperatorElement> next(p, OperatorElement(alg));
        for (std::uint32_t k = 0; k < step; ++k) {
            if (z[k].is_zero()) continue;
            next[k + 1] += commutator(x, z[k]);
            next[k] += commutator(y, z[k]);
        }
        z = std::move(next);
    }
    std::vector<OperatorElement> s;
    for (std::uint32_t i = 1; i < p; ++i) s.push_back(z[i - 1].scaled(field.inv(i)));
    return s;
}

FirstOrder to_first_order(const OperatorElement& d) {
    if (d.degree() > 1) throw MathError("element is not of filtration degree <= 1");
    const AlgebroidPtr& alg = d.algebroid();
    const std::size_t m = alg->rank();
    FirstOrder r{d.coefficient(MultiIndex(m, 0)), {}};
    for (std::size_t a = 0; a < m; ++a) r.components.push_back(d.coefficient(unit_index(m, a)));
    return r;
}

FirstOrder restricted_power(const AlgebroidPtr& alg, const FirstOrder& d) {
    const RingPtr& ring = alg->ring();
    const std::size_t m = alg->rank();
    const std::uint32_t p = ring->characteristic();
    if (d.rank() != m) throw DimensionError("element rank does not match algebroid");

    FirstOrder acc = FirstOrder::zero(ring, m);
    FirstOrder power = FirstOrder::zero(ring, m);
    for (std::size_t a = 0; a < m; ++a) {
        const Poly& g = d.components[a];
        if (g.is_zero()) continue;
        FirstOrder term = FirstOrder::zero(ring, m);
        term.components[a] = g;
        // (g e_a)^[p] = g^p e_a^[p] + delta_{g e_a}^(p-1)(g) e_a
        FirstOrder term_power = alg->p_op(a).scaled(g.pow(p));
        term_power.components[a] += alg->anchor(a).scaled(g).iterate(g, p - 1);
        FirstOrder next = power + term_power;
        if (!acc.is_zero()) {
            auto s = lie_polynomials(OperatorElement::from_first_order(alg, acc),
                                     OperatorElement::from_first_order(alg, term));
            for (const auto& si : s) next = next + to_first_order(si);
        }
        power = std::move(next);
        acc = acc + term;
    }
    power.function += d.function.pow(p);
    if (!d.function.is_zero()) power.function += alg->anchor_of(d.components).iterate(d.function, p - 1);
    return power;
}

bool is_central(const OperatorElement& z) {
    const AlgebroidPtr& alg = z.algebroid();
    if (!alg || z.is_zero()) return true;
    const RingPtr& ring = alg->ring();
    for (std::size_t var : ring->coordinates())
        if (!commutator(z, OperatorElement::function(alg, Poly::variable(ring, var))).is_zero()) return false;
    for (std::size_t a = 0; a < alg->rank(); ++a)
        if (!commutator(z, OperatorElement::generator(alg, a)).is_zero()) return false;
    return true;
}

OperatorElement iota(const OperatorElement& d, bool check) {
    const AlgebroidPtr& alg = d.algebroid();
    if (!alg) throw InputError("operator without algebroid");
    if (d.degree() > 1) throw MathError("iota is defined on the first filtration piece");
    const std::uint32_t p = alg->ring()->characteristic();
    OperatorElement result =
        op_pow(d, p) - OperatorElement::from_first_order(alg, restricted_power(alg, to_first_order(d)));
    if (check && !is_central(result))
        throw MathError("iota(" + d.to_string() + ") = " + result.to_string() +
                        " is not central; the p-structure is invalid");
    return result;
}

Poly SymbolElement::coefficient(const MultiIndex& beta) const {
    auto it = terms_.find(beta);
    return it == terms_.end() ? Poly(ring_) : it->second;
}

void SymbolElement::add_term(const MultiIndex& beta, const Poly& f) {
    if (f.is_zero()) return;
    if (beta.size() != rank_ || index_degree(beta) != degree_) throw DimensionError("symbol term of wrong degree");
    auto [it, inserted] = terms_.try_emplace(beta, f);
    if (!inserted) {
        it->second += f;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

SymbolElement SymbolElement::operator*(const SymbolElement& other) const {
    if (rank_ != other.rank_) throw DimensionError("symbols of different rank");
    SymbolElement r(ring_, rank_, degree_ + other.degree_);
    for (const auto& [a, f] : terms_)
        for (const auto& [b, g] : other.terms_) {
            MultiIndex c = a;
            for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
            r.add_term(c, f * g);
        }
    return r;
}

SymbolElement SymbolElement::pow(std::uint64_t k) const {
    SymbolElement r(ring_, rank_, 0);
    r.add_term(MultiIndex(rank_, 0), Poly::constant(ring_, 1));
    for (std::uint64_t i = 0; i < k; ++i) r = r * *this;
    return r;
}

std::string SymbolElement::to_string(const AlgebroidPresentation& algebroid) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [beta, f] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << f.to_string() << ")";
        for (std::size_t a = 0; a < beta.size(); ++a) {
            if (beta[a] == 0) continue;
            os << "*" << algebroid.generator_name(a);
            if (beta[a] > 1) os << "^" << beta[a];
        }
    }
    return os.str();
}

bool SymbolElement::operator==(const SymbolElement& other) const {
    if (terms_.empty() && other.terms_.empty()) return true;
    return degree_ == other.degree_ && terms_ == other.terms_;
}

SymbolElement symbol_top(const OperatorElement& a) {
    const AlgebroidPtr& alg = a.algebroid();
    SymbolElement s(alg->ring(), alg->rank(), a.degree());
    for (const auto& [beta, f] : a.terms())
        if (index_degree(beta) == a.degree()) s.add_term(beta, f);
    return s;
}

SymbolElement symbol_of(const AlgebroidPtr& algebroid, const FirstOrder& d) {
    SymbolElement s(algebroid->ring(), algebroid->rank(), 1);
    for (std::size_t a = 0; a < d.rank(); ++a) s.add_term(unit_index(d.rank(), a), d.components[a]);
    return s;
}

FirstOrder random_first_order(const AlgebroidPtr& algebroid, Rng& rng, std::uint32_t degree, bool with_function) {
    PolyShape shape;
    shape.max_degree = degree;
    FirstOrder d = FirstOrder::zero(algebroid->ring(), algebroid->rank());
    if (with_function) d.function = random_poly(algebroid->ring(), rng, shape);
    for (auto& c : d.components) c = random_poly(algebroid->ring(), rng, shape);
    return d;
}

}  // namespace pcurv
