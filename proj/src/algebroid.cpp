#include "pcurv/algebroid.hpp"

#include <sstream>

#include "pcurv/errors.hpp"

namespace pcurv {

FirstOrder FirstOrder::zero(const RingPtr& ring, std::size_t rank) {
    return FirstOrder{Poly(ring), std::vector<Poly>(rank, Poly(ring))};
}

FirstOrder FirstOrder::of_function(const Poly& f, std::size_t rank) {
    return FirstOrder{f, std::vector<Poly>(rank, Poly(f.ring()))};
}

FirstOrder FirstOrder::generator(const RingPtr& ring, std::size_t rank, std::size_t a) {
    if (a >= rank) throw DimensionError("generator index out of range");
    FirstOrder d = zero(ring, rank);
    d.components[a] = Poly::constant(ring, 1);
    return d;
}

FirstOrder FirstOrder::of_components(const RingPtr& ring, std::vector<Poly> components) {
    for (auto& c : components)
        if (!c.ring()) c = Poly(ring);
    return FirstOrder{Poly(ring), std::move(components)};
}

bool FirstOrder::is_zero() const noexcept { return function.is_zero() && is_function(); }

bool FirstOrder::is_function() const noexcept {
    for (const auto& c : components)
        if (!c.is_zero()) return false;
    return true;
}

FirstOrder FirstOrder::symbol_part() const { return FirstOrder{Poly(ring()), components}; }

FirstOrder FirstOrder::operator+(const FirstOrder& other) const {
    if (rank() != other.rank()) throw DimensionError("first-order elements of different rank");
    FirstOrder r = *this;
    r.function += other.function;
    for (std::size_t a = 0; a < rank(); ++a) r.components[a] += other.components[a];
    return r;
}

FirstOrder FirstOrder::operator-(const FirstOrder& other) const { return *this + (-other); }

FirstOrder FirstOrder::operator-() const {
    FirstOrder r = *this;
    r.function = -r.function;
    for (auto& c : r.components) c = -c;
    return r;
}

FirstOrder FirstOrder::scaled(const Poly& g) const {
    FirstOrder r{g * function, {}};
    r.components.reserve(rank());
    for (const auto& c : components) r.components.push_back(g * c);
    return r;
}

FirstOrder FirstOrder::lift(const RingPtr& target) const {
    FirstOrder r{function.lift(target), {}};
    for (const auto& c : components) r.components.push_back(c.lift(target));
    return r;
}

bool FirstOrder::operator==(const FirstOrder& other) const {
    return function == other.function && components == other.components;
}

AlgebroidPresentation::AlgebroidPresentation(RingPtr ring, std::size_t rank, BracketTable bracket,
                                             std::vector<Derivation> anchor, std::vector<FirstOrder> p_op,
                                             std::vector<std::string> generator_names)
    : ring_(std::move(ring)), rank_(rank), bracket_(std::move(bracket)), anchor_(std::move(anchor)),
      p_op_(std::move(p_op)), names_(std::move(generator_names)) {
    if (!ring_) throw InputError("algebroid needs a ring");
    if (rank_ == 0) throw DimensionError("algebroid rank must be positive");
    if (bracket_.size() != rank_) throw DimensionError("bracket table must have one row per generator");
    for (auto& row : bracket_) {
        if (row.size() != rank_) throw DimensionError("bracket table must be square");
        for (auto& entry : row) {
            if (entry.empty()) entry.assign(rank_, Poly(ring_));
            if (entry.size() != rank_) throw DimensionError("each bracket must have one coefficient per generator");
            for (auto& c : entry) {
                if (!c.ring()) c = Poly(ring_);
                if (!same_ring(c.ring(), ring_)) throw MismatchError("bracket coefficient over a different ring");
            }
        }
    }
    if (anchor_.size() != rank_) throw DimensionError("anchor must have one derivation per generator");
    for (auto& d : anchor_) {
        if (!d.ring()) d = Derivation(ring_);
        if (!same_ring(d.ring(), ring_)) throw MismatchError("anchor over a different ring");
    }
    if (p_op_.size() != rank_) throw DimensionError("p-operation must have one value per generator");
    for (auto& v : p_op_) {
        if (!v.function.ring()) v.function = Poly(ring_);
        if (v.components.empty()) v.components.assign(rank_, Poly(ring_));
        if (v.rank() != rank_) throw DimensionError("p-operation value must have one coefficient per generator");
        for (auto& c : v.components)
            if (!c.ring()) c = Poly(ring_);
        if (!same_ring(v.function.ring(), ring_)) throw MismatchError("p-operation over a different ring");
        for (const auto& c : v.components)
            if (!same_ring(c.ring(), ring_)) throw MismatchError("p-operation over a different ring");
    }
    if (names_.empty()) {
        for (std::size_t a = 0; a < rank_; ++a) names_.push_back("e" + std::to_string(a + 1));
    }
    if (names_.size() != rank_) throw DimensionError("one generator name per generator");
}

Derivation AlgebroidPresentation::anchor_of(const std::vector<Poly>& components) const {
    if (components.size() != rank_) throw DimensionError("element rank does not match algebroid");
    Derivation d(ring_);
    for (std::size_t a = 0; a < rank_; ++a)
        if (!components[a].is_zero()) d = d + anchor_[a].scaled(components[a]);
    return d;
}

std::vector<Poly> AlgebroidPresentation::bracket_of(const std::vector<Poly>& left,
                                                    const std::vector<Poly>& right) const {
    if (left.size() != rank_ || right.size() != rank_) throw DimensionError("element rank does not match algebroid");
    std::vector<Poly> out(rank_, Poly(ring_));
    for (std::size_t a = 0; a < rank_; ++a) {
        if (left[a].is_zero()) continue;
        for (std::size_t b = 0; b < rank_; ++b) {
            if (right[b].is_zero()) continue;
            Poly gh = left[a] * right[b];
            for (std::size_t k = 0; k < rank_; ++k)
                if (!bracket_[a][b][k].is_zero()) out[k] += gh * bracket_[a][b][k];
            out[b] += left[a] * anchor_[a].apply(right[b]);
            out[a] -= right[b] * anchor_[b].apply(left[a]);
        }
    }
    return out;
}

AlgebroidPresentation AlgebroidPresentation::with_p_op(std::vector<FirstOrder> p_op) const {
    return AlgebroidPresentation(ring_, rank_, bracket_, anchor_, std::move(p_op), names_);
}

bool AlgebroidPresentation::operator==(const AlgebroidPresentation& other) const {
    return same_ring(ring_, other.ring_) && rank_ == other.rank_ && bracket_ == other.bracket_ &&
           anchor_ == other.anchor_ && p_op_ == other.p_op_;
}

namespace {

AlgebroidPresentation::BracketTable zero_brackets(const RingPtr& ring, std::size_t m) {
    return AlgebroidPresentation::BracketTable(m, std::vector<std::vector<Poly>>(m, std::vector<Poly>(m, Poly(ring))));
}

}  // namespace

AlgebroidPtr tangent_algebroid(const RingPtr& ring) {
    const std::size_t n = ring->num_coordinates();
    std::vector<Derivation> anchor;
    std::vector<FirstOrder> p_op;
    std::vector<std::string> names;
    for (std::size_t j = 0; j < n; ++j) {
        Derivation d = Derivation::coordinate(ring, j);
        Derivation dp = derivation_pth_power(d);
        p_op.push_back(FirstOrder::of_components(ring, dp.components()));
        anchor.push_back(std::move(d));
        names.push_back("d_" + ring->variable(ring->coordinates()[j]).name);
    }
    return std::make_shared<const AlgebroidPresentation>(ring, n, zero_brackets(ring, n), std::move(anchor),
                                                         std::move(p_op), std::move(names));
}

AlgebroidPtr higgs_algebroid(const RingPtr& ring, std::size_t rank, const PolyMatrix& alpha) {
    if (alpha.rows() != rank || alpha.cols() != rank) throw DimensionError("alpha must be rank x rank");
    if (!same_ring(alpha.ring(), ring)) throw MismatchError("alpha over a different ring");
    std::vector<FirstOrder> p_op;
    for (std::size_t a = 0; a < rank; ++a) {
        std::vector<Poly> row;
        for (std::size_t k = 0; k < rank; ++k) row.push_back(alpha(a, k));
        p_op.push_back(FirstOrder::of_components(ring, std::move(row)));
    }
    return std::make_shared<const AlgebroidPresentation>(ring, rank, zero_brackets(ring, rank),
                                                         std::vector<Derivation>(rank, Derivation(ring)),
                                                         std::move(p_op));
}

AlgebroidPtr higgs_algebroid(const RingPtr& ring, std::size_t rank) {
    return higgs_algebroid(ring, rank, PolyMatrix(ring, rank, rank));
}

AlgebroidPtr rees_algebroid(const AlgebroidPresentation& algebroid) {
    const RingPtr& base = algebroid.ring();
    if (base->has_rees()) throw InputError("algebroid already has a Rees variable");
    RingPtr ring = base->extended({Variable{base->fresh_name("t"), VariableKind::Rees}});
    const std::uint32_t p = ring->characteristic();
    const Poly t = Poly::variable(ring, *ring->rees_index());
    const Poly tp1 = t.pow(p - 1);
    const Poly tp = t.pow(p);
    const std::size_t m = algebroid.rank();

    auto bracket = zero_brackets(ring, m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            for (std::size_t k = 0; k < m; ++k) bracket[a][b][k] = t * algebroid.bracket(a, b)[k].lift(ring);
    std::vector<Derivation> anchor;
    std::vector<FirstOrder> p_op;
    std::vector<std::string> names;
    for (std::size_t a = 0; a < m; ++a) {
        anchor.push_back(algebroid.anchor(a).lift(ring).scaled(t));
        FirstOrder v = algebroid.p_op(a).lift(ring);
        FirstOrder scaled = v.symbol_part().scaled(tp1);
        scaled.function = tp * v.function;
        p_op.push_back(std::move(scaled));
        names.push_back(algebroid.generator_name(a));
    }
    return std::make_shared<const AlgebroidPresentation>(ring, m, std::move(bracket), std::move(anchor),
                                                         std::move(p_op), std::move(names));
}

AlgebroidPtr specialize_t(const AlgebroidPresentation& algebroid, Coeff value) {
    const RingPtr& source = algebroid.ring();
    if (!source->has_rees()) throw InputError("algebroid has no Rees variable");
    const std::size_t var = *source->rees_index();
    RingPtr ring = source->without(var);
    auto sp = [&](const Poly& f) { return f.specialize(var, value, ring); };
    const std::size_t m = algebroid.rank();

    auto bracket = zero_brackets(ring, m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            for (std::size_t k = 0; k < m; ++k) bracket[a][b][k] = sp(algebroid.bracket(a, b)[k]);
    std::vector<Derivation> anchor;
    std::vector<FirstOrder> p_op;
    std::vector<std::string> names;
    for (std::size_t a = 0; a < m; ++a) {
        std::vector<Poly> comps;
        for (const auto& c : algebroid.anchor(a).components()) comps.push_back(sp(c));
        anchor.emplace_back(ring, std::move(comps));
        FirstOrder v{sp(algebroid.p_op(a).function), {}};
        for (const auto& c : algebroid.p_op(a).components) v.components.push_back(sp(c));
        p_op.push_back(std::move(v));
        names.push_back(algebroid.generator_name(a));
    }
    return std::make_shared<const AlgebroidPresentation>(ring, m, std::move(bracket), std::move(anchor),
                                                         std::move(p_op), std::move(names));
}

SurjectivityResult anchor_generic_surjectivity(const AlgebroidPresentation& algebroid) {
    const RingPtr& ring = algebroid.ring();
    const std::size_t n = ring->num_coordinates();
    const std::size_t m = algebroid.rank();
    SurjectivityResult result;
    result.minor = Poly(ring);
    if (m < n) return result;

    std::vector<std::size_t> cols(n);
    for (std::size_t i = 0; i < n; ++i) cols[i] = i;
    while (true) {
        PolyMatrix block(ring, n, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) block(j, i) = algebroid.anchor(cols[i]).component(j);
        Poly det = block.determinant();
        if (!det.is_zero()) {
            result.generically_surjective = true;
            result.minor = std::move(det);
            result.columns = cols;
            return result;
        }
        // next n-subset of {0..m-1} in lexicographic order
        std::size_t i = n;
        while (i > 0 && cols[i - 1] == m - n + i - 1) --i;
        if (i == 0) return result;
        ++cols[i - 1];
        for (std::size_t k = i; k < n; ++k) cols[k] = cols[k - 1] + 1;
    }
}

std::string to_string(const FirstOrder& d, const AlgebroidPresentation& algebroid) {
    std::ostringstream os;
    bool first = true;
    if (!d.function.is_zero()) {
        os << d.function.to_string();
        first = false;
    }
    for (std::size_t a = 0; a < d.rank(); ++a) {
        if (d.components[a].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << d.components[a].to_string() << ")*" << algebroid.generator_name(a);
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace pcurv
