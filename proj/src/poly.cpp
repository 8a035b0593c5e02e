#include "pcurv/poly.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "pcurv/errors.hpp"

namespace pcurv {

std::uint64_t total_degree(const Exponents& e) noexcept {
    std::uint64_t d = 0;
    for (auto x : e) d += x;
    return d;
}

bool monomial_less(const Exponents& a, const Exponents& b) noexcept {
    auto da = total_degree(a);
    auto db = total_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool coordinates_divisible(const PolyRing& ring, const Exponents& e) noexcept {
    const auto p = ring.characteristic();
    for (auto i : ring.coordinates())
        if (e[i] % p != 0) return false;
    return true;
}

namespace {

bool term_greater(const Term& a, const Term& b) { return monomial_less(b.exps, a.exps); }

// Sort descending and merge equal monomials, dropping zeros.
void normalize(const PrimeField& field, std::vector<Term>& terms) {
    std::sort(terms.begin(), terms.end(), term_greater);
    std::size_t out = 0;
    for (std::size_t i = 0; i < terms.size();) {
        Coeff c = terms[i].coeff;
        std::size_t j = i + 1;
        while (j < terms.size() && terms[j].exps == terms[i].exps) c = field.add(c, terms[j++].coeff);
        if (c != 0) {
            if (out != i) terms[out].exps = std::move(terms[i].exps);
            terms[out].coeff = c;
            ++out;
        }
        i = j;
    }
    terms.resize(out);
}

}  // namespace

Poly Poly::constant(RingPtr ring, Coeff c) {
    Poly r(std::move(ring));
    c = r.ring_->field().reduce_unsigned(c);
    if (c != 0) r.terms_.push_back({Exponents(r.ring_->num_vars(), 0), c});
    return r;
}

Poly Poly::from_int(RingPtr ring, std::int64_t value) {
    Coeff c = ring->field().reduce(value);
    return constant(std::move(ring), c);
}

Poly Poly::variable(RingPtr ring, std::size_t index) {
    if (index >= ring->num_vars()) throw DimensionError("variable index out of range");
    Exponents e(ring->num_vars(), 0);
    e[index] = 1;
    return monomial(std::move(ring), std::move(e), 1);
}

Poly Poly::monomial(RingPtr ring, Exponents exps, Coeff c) {
    if (exps.size() != ring->num_vars()) throw DimensionError("exponent vector has wrong length");
    Poly r(std::move(ring));
    r.check_bound(exps);
    c = r.ring_->field().reduce_unsigned(c);
    if (c != 0) r.terms_.push_back({std::move(exps), c});
    return r;
}

Poly Poly::from_terms(RingPtr ring, std::vector<Term> terms) {
    Poly r(std::move(ring));
    for (auto& t : terms) {
        if (t.exps.size() != r.ring_->num_vars()) throw DimensionError("exponent vector has wrong length");
        r.check_bound(t.exps);
        t.coeff = r.ring_->field().reduce_unsigned(t.coeff);
    }
    r.terms_ = std::move(terms);
    normalize(r.ring_->field(), r.terms_);
    return r;
}

void Poly::check_ring(const Poly& other) const {
    if (!same_ring(ring_, other.ring_)) throw MismatchError("polynomials belong to different rings");
}

void Poly::check_bound(const Exponents& e) const {
    for (auto x : e)
        if (x > ring_->degree_bound())
            throw ResourceError("exponent " + std::to_string(x) + " exceeds the degree bound " +
                                std::to_string(ring_->degree_bound()));
}

bool Poly::is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && pcurv::total_degree(terms_.front().exps) == 0);
}

Coeff Poly::constant_term() const noexcept {
    if (terms_.empty()) return 0;
    const auto& last = terms_.back();
    return pcurv::total_degree(last.exps) == 0 ? last.coeff : 0;
}

Coeff Poly::coefficient(const Exponents& e) const noexcept {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [](const Term& t, const Exponents& x) { return monomial_less(x, t.exps); });
    return (it != terms_.end() && it->exps == e) ? it->coeff : 0;
}

std::uint64_t Poly::total_degree() const noexcept {
    return terms_.empty() ? 0 : pcurv::total_degree(terms_.front().exps);
}

std::uint32_t Poly::degree_in(std::size_t var) const noexcept {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.exps[var]);
    return d;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.coeff = ring_->field().neg(t.coeff);
    return r;
}

Poly& Poly::operator+=(const Poly& other) {
    if (other.terms_.empty()) return *this;
    if (terms_.empty()) {
        if (ring_ && !same_ring(ring_, other.ring_)) check_ring(other);
        ring_ = other.ring_;
        terms_ = other.terms_;
        return *this;
    }
    check_ring(other);
    const auto& field = ring_->field();
    std::vector<Term> merged;
    merged.reserve(terms_.size() + other.terms_.size());
    auto a = terms_.begin();
    auto b = other.terms_.begin();
    while (a != terms_.end() || b != other.terms_.end()) {
        if (b == other.terms_.end() || (a != terms_.end() && term_greater(*a, *b))) {
            merged.push_back(std::move(*a++));
        } else if (a == terms_.end() || term_greater(*b, *a)) {
            merged.push_back(*b++);
        } else {
            Coeff c = field.add(a->coeff, b->coeff);
            if (c != 0) merged.push_back({std::move(a->exps), c});
            ++a;
            ++b;
        }
    }
    terms_ = std::move(merged);
    return *this;
}

Poly& Poly::operator-=(const Poly& other) { return *this += -other; }

Poly operator*(const Poly& a, const Poly& b) {
    if (a.terms_.empty() || b.terms_.empty()) {
        if (a.ring_ && b.ring_) a.check_ring(b);
        return Poly(a.ring_ ? a.ring_ : b.ring_);
    }
    a.check_ring(b);
    const auto& field = a.ring_->field();
    const std::size_t n = a.ring_->num_vars();
    std::vector<Term> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& s : a.terms_) {
        for (const auto& t : b.terms_) {
            Exponents e(n);
            for (std::size_t i = 0; i < n; ++i) e[i] = s.exps[i] + t.exps[i];
            out.push_back({std::move(e), field.mul(s.coeff, t.coeff)});
        }
    }
    for (const auto& t : out) a.check_bound(t.exps);
    Poly r(a.ring_);
    r.terms_ = std::move(out);
    normalize(field, r.terms_);
    return r;
}

Poly Poly::scaled(Coeff c) const {
    c = ring_ ? ring_->field().reduce_unsigned(c) : 0;
    if (c == 0) return Poly(ring_);
    Poly r = *this;
    for (auto& t : r.terms_) t.coeff = ring_->field().mul(t.coeff, c);
    return r;
}

Poly Poly::times_monomial(const Exponents& e, Coeff c) const {
    c = ring_->field().reduce_unsigned(c);
    if (c == 0) return Poly(ring_);
    Poly r = *this;
    for (auto& t : r.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) t.exps[i] += e[i];
        check_bound(t.exps);
        t.coeff = ring_->field().mul(t.coeff, c);
    }
    return r;  // multiplying by a monomial preserves the order
}

Poly Poly::pow(std::uint64_t k) const {
    Poly result = constant(ring_, 1);
    Poly base = *this;
    while (k != 0) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k != 0) base = base * base;
    }
    return result;
}

Poly Poly::derivative(std::size_t var) const {
    if (!ring_) return *this;
    if (var >= ring_->num_vars()) throw DimensionError("variable index out of range");
    const auto& field = ring_->field();
    std::vector<Term> out;
    for (const auto& t : terms_) {
        if (t.exps[var] == 0) continue;
        Coeff c = field.mul(t.coeff, field.reduce_unsigned(t.exps[var]));
        if (c == 0) continue;
        Exponents e = t.exps;
        e[var] -= 1;
        out.push_back({std::move(e), c});
    }
    Poly r(ring_);
    r.terms_ = std::move(out);
    normalize(field, r.terms_);
    return r;
}

Poly Poly::frobenius_pullback() const {
    if (!ring_) return *this;
    const auto p = ring_->characteristic();
    std::vector<Term> out = terms_;
    for (auto& t : out) {
        for (auto i : ring_->coordinates()) {
            std::uint64_t scaled = std::uint64_t{t.exps[i]} * p;
            if (scaled > ring_->degree_bound())
                throw ResourceError("Frobenius pullback exceeds the degree bound");
            t.exps[i] = static_cast<std::uint32_t>(scaled);
        }
    }
    Poly r(ring_);
    r.terms_ = std::move(out);
    normalize(ring_->field(), r.terms_);
    return r;
}

DescentResult Poly::pth_root_descend() const {
    if (!ring_) return *this;
    const auto p = ring_->characteristic();
    NotDescendable failure;
    for (const auto& t : terms_)
        if (!coordinates_divisible(*ring_, t.exps)) failure.offending.push_back(t);
    if (!failure.offending.empty()) return failure;
    std::vector<Term> out = terms_;
    for (auto& t : out)
        for (auto i : ring_->coordinates()) t.exps[i] /= p;
    Poly r(ring_);
    r.terms_ = std::move(out);
    normalize(ring_->field(), r.terms_);
    return r;
}

Poly Poly::specialize(std::size_t var, Coeff value) const {
    return specialize(var, value, ring_->without(var));
}

Poly Poly::specialize(std::size_t var, Coeff value, const RingPtr& target) const {
    const auto& field = ring_->field();
    if (target->num_vars() + 1 != ring_->num_vars()) throw DimensionError("specialization target has wrong arity");
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        Coeff c = field.mul(t.coeff, field.pow(value, t.exps[var]));
        if (c == 0) continue;
        Exponents e;
        for (std::size_t i = 0; i < t.exps.size(); ++i)
            if (i != var) e.push_back(t.exps[i]);
        out.push_back({std::move(e), c});
    }
    Poly r(target);
    r.terms_ = std::move(out);
    normalize(field, r.terms_);
    return r;
}

Poly Poly::lift(const RingPtr& target) const {
    if (same_ring(ring_, target)) return *this;
    if (!(target->field() == ring_->field())) throw MismatchError("cannot lift across characteristics");
    std::vector<std::size_t> map(ring_->num_vars());
    for (std::size_t i = 0; i < ring_->num_vars(); ++i) {
        auto j = target->index_of(ring_->variable(i).name);
        if (!j) throw MismatchError("target ring lacks variable '" + ring_->variable(i).name + "'");
        map[i] = *j;
    }
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        Exponents e(target->num_vars(), 0);
        for (std::size_t i = 0; i < map.size(); ++i) e[map[i]] = t.exps[i];
        out.push_back({std::move(e), t.coeff});
    }
    Poly r(target);
    r.terms_ = std::move(out);
    normalize(target->field(), r.terms_);
    return r;
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) os << " + ";
        first = false;
        bool wrote = false;
        if (t.coeff != 1 || pcurv::total_degree(t.exps) == 0) {
            os << t.coeff;
            wrote = true;
        }
        for (std::size_t i = 0; i < t.exps.size(); ++i) {
            if (t.exps[i] == 0) continue;
            if (wrote) os << '*';
            os << ring_->variable(i).name;
            if (t.exps[i] > 1) os << '^' << t.exps[i];
            wrote = true;
        }
    }
    return os.str();
}

bool operator==(const Poly& a, const Poly& b) {
    if (a.terms_.empty() && b.terms_.empty()) return true;
    return same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_;
}

std::ostream& operator<<(std::ostream& os, const Poly& f) { return os << f.to_string(); }

Poly poly_derive(const Poly& f, std::size_t j) {
    const auto& coords = f.ring()->coordinates();
    if (j >= coords.size()) throw DimensionError("coordinate index out of range");
    return f.derivative(coords[j]);
}

}  // namespace pcurv
