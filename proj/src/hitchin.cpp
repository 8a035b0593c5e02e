#include "pcurv/hitchin.hpp"

#include <algorithm>

#include "pcurv/errors.hpp"

namespace pcurv {

namespace {

std::vector<Variable> dual_variables(const PolyRing& ring, std::size_t m) {
    std::vector<Variable> out;
    RingPtr probe = std::make_shared<const PolyRing>(ring);
    for (std::size_t a = 0; a < m; ++a) {
        std::string stem = m == 1 ? "y" : "y" + std::to_string(a + 1);
        Variable v{probe->fresh_name(stem), VariableKind::Auxiliary};
        probe = probe->extended({v});
        out.push_back(v);
    }
    return out;
}

void require_odd(const PolyRing& ring) {
    if (ring.characteristic() == 2) throw InputError("descent checks need p > 2");
}

}  // namespace

CharacteristicPolynomial universal_char_poly(const PCurvature& c) {
    const RingPtr& base = c.module->ring();
    const std::size_t m = c.psi.size();
    const std::size_t r = c.module->rank();
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b)
            if (!c.psi[a].commutator(c.psi[b]).is_zero())
                throw MathError("p-curvature components " + std::to_string(a + 1) + " and " + std::to_string(b + 1) +
                                " do not commute");
    RingPtr with_y = base->extended(dual_variables(*base, m));
    RingPtr ring = with_y->extended({Variable{with_y->fresh_name("lambda"), VariableKind::Auxiliary}});
    CharacteristicPolynomial chi;
    chi.ring = ring;
    chi.lambda = ring->num_vars() - 1;
    for (std::size_t a = 0; a < m; ++a) chi.duals.push_back(base->num_vars() + a);

    PolyMatrix psi(ring, r, r);
    for (std::size_t a = 0; a < m; ++a) psi = psi + c.psi[a].lift(ring).scaled(Poly::variable(ring, chi.duals[a]));
    PolyMatrix lambda_id = PolyMatrix::identity(ring, r).scaled(Poly::variable(ring, chi.lambda));
    chi.value = (lambda_id - psi).determinant();
    return chi;
}

HitchinInvariants hitchin_invariants(const CharacteristicPolynomial& chi, std::size_t rank) {
    HitchinInvariants inv;
    inv.ring = chi.ring->without(chi.lambda);
    inv.duals = chi.duals;
    inv.base_vars = chi.duals.empty() ? inv.ring->num_vars() : chi.duals.front();
    inv.rank = rank;
    std::vector<std::vector<Term>> buckets(rank);
    for (const auto& term : chi.value.terms()) {
        const std::uint32_t power = term.exps[chi.lambda];
        if (power >= rank) continue;
        Exponents e = term.exps;
        e.erase(e.begin() + static_cast<std::ptrdiff_t>(chi.lambda));
        buckets[rank - power - 1].push_back({std::move(e), term.coeff});
    }
    const PrimeField& field = chi.ring->field();
    for (std::size_t k = 1; k <= rank; ++k) {
        Poly ek = Poly::from_terms(inv.ring, std::move(buckets[k - 1]));
        inv.coefficients.push_back(k % 2 == 1 ? ek.scaled(field.neg(1)) : ek);
    }
    return inv;
}

HitchinInvariants hitchin_invariants(const PCurvature& c) {
    return hitchin_invariants(universal_char_poly(c), c.module->rank());
}

Poly HitchinInvariants::coefficient(std::size_t k, const Exponents& y_monomial, const RingPtr& base) const {
    std::vector<Term> terms;
    for (const auto& term : e(k).terms()) {
        bool match = true;
        for (std::size_t a = 0; a < duals.size(); ++a) match = match && term.exps[duals[a]] == y_monomial[a];
        if (!match) continue;
        Exponents x(term.exps.begin(), term.exps.begin() + static_cast<std::ptrdiff_t>(base_vars));
        terms.push_back({std::move(x), term.coeff});
    }
    return Poly::from_terms(base, std::move(terms));
}

std::vector<Poly> canonical_connection_apply(const std::vector<Poly>& section, const Derivation& nu) {
    std::vector<Poly> out;
    out.reserve(section.size());
    for (const auto& s : section) out.push_back(nu.apply(s));
    return out;
}

SectionDescent cartier_descend_section(const std::vector<Poly>& section) {
    std::vector<Poly> out;
    for (std::size_t i = 0; i < section.size(); ++i) {
        DescentResult r = section[i].pth_root_descend();
        if (auto* bad = std::get_if<NotDescendable>(&r)) return SectionNotDescendable{i, std::move(*bad)};
        out.push_back(std::get<Poly>(std::move(r)));
    }
    return out;
}

ValidationReport trace_flatness_check(const PCurvature& c) {
    const auto& alg = c.module->algebroid();
    require_odd(*alg->ring());
    ValidationReport report;
    report.title = "trace flatness";
    bool degenerate = true;
    for (const auto& d : alg->anchors()) degenerate = degenerate && d.is_zero();

    CheckBuilder trace("trace-flatness", "hitchin");
    for (std::size_t a = 0; a < c.psi.size(); ++a)
        for (std::size_t b = 0; b < alg->rank(); ++b) {
            Poly d = alg->anchor(b).apply(c.psi[a].trace());
            trace.record(d.is_zero(), [&] {
                return "delta(" + alg->generator_name(b) + ")(tr psi(" + alg->generator_name(a) + ")) = " + d.to_string();
            });
        }
    if (degenerate) trace.note("anchor degenerate");
    report.checks.push_back(trace.finish());

    HitchinInvariants inv = hitchin_invariants(c);
    CheckBuilder coeffs("hitchin-flatness", "hitchin");
    for (std::size_t k = 1; k <= inv.rank; ++k)
        for (std::size_t b = 0; b < alg->rank(); ++b) {
            Poly d = alg->anchor(b).lift(inv.ring).apply(inv.e(k));
            coeffs.record(d.is_zero(), [&] {
                return "delta(" + alg->generator_name(b) + ")(e_" + std::to_string(k) + ") = " + d.to_string();
            });
        }
    if (degenerate) coeffs.note("anchor degenerate");
    report.checks.push_back(coeffs.finish());
    return report;
}

bool DescentReport::all_descended() const noexcept { return first_failure() == nullptr; }

const DescentEntry* DescentReport::first_failure() const noexcept {
    for (const auto& e : entries)
        if (!e.descended) return &e;
    return nullptr;
}

DescentReport descend_invariants(const HitchinInvariants& inv, const AlgebroidPresentation& algebroid) {
    require_odd(*algebroid.ring());
    const RingPtr& base = algebroid.ring();
    DescentReport report;
    SurjectivityResult s = anchor_generic_surjectivity(algebroid);
    report.generically_surjective = s.generically_surjective;
    report.surjectivity_minor = s.minor;
    for (std::size_t d : inv.duals) report.dual_names.push_back(inv.ring->variable(d).name);

    for (std::size_t k = 1; k <= inv.rank; ++k) {
        // distinct y-monomials, in the order they appear in e_k
        std::vector<Exponents> monomials;
        for (const auto& term : inv.e(k).terms()) {
            Exponents y;
            for (std::size_t d : inv.duals) y.push_back(term.exps[d]);
            if (std::find(monomials.begin(), monomials.end(), y) == monomials.end()) monomials.push_back(y);
        }
        for (const auto& y : monomials) {
            DescentEntry entry;
            entry.k = k;
            entry.y_monomial = y;
            entry.original = inv.coefficient(k, y, base);
            DescentResult r = entry.original.pth_root_descend();
            if (auto* ok = std::get_if<Poly>(&r))
                entry.descended = *ok;
            else
                entry.witness = std::get<NotDescendable>(r);
            report.entries.push_back(std::move(entry));
        }
    }
    return report;
}

std::string y_monomial_string(const Exponents& y, const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t a = 0; a < y.size(); ++a) {
        if (y[a] == 0) continue;
        if (!out.empty()) out += "*";
        out += names.at(a);
        if (y[a] > 1) out += "^" + std::to_string(y[a]);
    }
    return out.empty() ? "1" : out;
}

}  // namespace pcurv
