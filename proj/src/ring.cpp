#include "pcurv/ring.hpp"

#include <algorithm>

#include "pcurv/errors.hpp"

namespace pcurv {

namespace {

bool valid_identifier(const std::string& name) {
    if (name.empty()) return false;
    auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
    if (!alpha(name.front())) return false;
    return std::all_of(name.begin(), name.end(), [&](char c) { return alpha(c) || (c >= '0' && c <= '9'); });
}

}  // namespace

PolyRing::PolyRing(PrimeField field, std::vector<Variable> variables, std::uint32_t degree_bound)
    : field_(field), variables_(std::move(variables)), degree_bound_(degree_bound) {
    for (std::size_t i = 0; i < variables_.size(); ++i) {
        const auto& v = variables_[i];
        if (!valid_identifier(v.name)) throw InputError("invalid variable name '" + v.name + "'");
        for (std::size_t j = 0; j < i; ++j)
            if (variables_[j].name == v.name) throw InputError("duplicate variable name '" + v.name + "'");
        if (v.kind == VariableKind::Coordinate) coordinates_.push_back(i);
        if (v.kind == VariableKind::Rees) {
            if (rees_) throw InputError("a ring carries at most one Rees variable");
            rees_ = i;
        }
    }
    if (coordinates_.empty()) throw InputError("a coordinate ring needs at least one coordinate");
}

RingPtr PolyRing::make(std::uint64_t p, const std::vector<std::string>& coordinates, bool rees) {
    std::vector<Variable> vars;
    for (const auto& name : coordinates) vars.push_back({name, VariableKind::Coordinate});
    if (rees) vars.push_back({"t", VariableKind::Rees});
    return std::make_shared<const PolyRing>(PrimeField(p), std::move(vars));
}

std::optional<std::size_t> PolyRing::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < variables_.size(); ++i)
        if (variables_[i].name == name) return i;
    return std::nullopt;
}

RingPtr PolyRing::extended(const std::vector<Variable>& extra) const {
    auto vars = variables_;
    vars.insert(vars.end(), extra.begin(), extra.end());
    return std::make_shared<const PolyRing>(field_, std::move(vars), degree_bound_);
}

RingPtr PolyRing::without(std::size_t i) const {
    if (i >= variables_.size()) throw DimensionError("variable index out of range");
    auto vars = variables_;
    vars.erase(vars.begin() + static_cast<std::ptrdiff_t>(i));
    return std::make_shared<const PolyRing>(field_, std::move(vars), degree_bound_);
}

std::string PolyRing::fresh_name(const std::string& stem) const {
    std::string name = stem;
    while (index_of(name)) name += "_";
    return name;
}

}  // namespace pcurv
